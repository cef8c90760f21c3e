"""Graded local cohomology of Stanley-Reisner and toric face rings.

The engine reads local cohomology off reduced cohomology of intervals in the
face poset of a fan; ``hochster.cech`` recomputes the Stanley-Reisner case
from graded Cech complexes so that the two can be compared.
"""

from .cech import cech_cohomology, cech_cohomology_dim, cech_module_dim, cech_piece, reisner_oracle
from .facering import (
    LocalCohomologyTable,
    StanleyCheck,
    buchsbaum_test,
    cm_test,
    hilbert_value,
    krull_dimension,
    local_cohomology_by_cone,
    local_cohomology_dim,
    monomial_product,
    stanley_check,
)
from .fan import (
    Cone,
    ConeError,
    Fan,
    FanError,
    NotPointedError,
    cone_faces,
    embed_degree,
    fan_of_complex,
    validate_fan,
)
from .kpmod import (
    FlasqueResult,
    FunctorialityError,
    KPModule,
    constant_module,
    degree_sheaf,
    interval_module,
    is_flasque,
    limit,
    limit_on_open,
    poset_cohomology,
    skyscraper,
)
from .linalg import GF2, QQ, Betti, CochainComplex, Field, cohomology_dims, rank
from .poset import Poset, PosetError
from .simplicial import ComplexError, SimplicialComplex
from .verdict import Verdict

__version__ = "0.1.0"

__all__ = [
    "GF2",
    "QQ",
    "Betti",
    "CochainComplex",
    "ComplexError",
    "Cone",
    "ConeError",
    "Fan",
    "FanError",
    "Field",
    "FlasqueResult",
    "FunctorialityError",
    "KPModule",
    "LocalCohomologyTable",
    "NotPointedError",
    "Poset",
    "PosetError",
    "SimplicialComplex",
    "StanleyCheck",
    "Verdict",
    "buchsbaum_test",
    "cech_cohomology",
    "cech_cohomology_dim",
    "cech_module_dim",
    "cech_piece",
    "cm_test",
    "cohomology_dims",
    "cone_faces",
    "constant_module",
    "degree_sheaf",
    "embed_degree",
    "fan_of_complex",
    "hilbert_value",
    "interval_module",
    "is_flasque",
    "krull_dimension",
    "limit",
    "limit_on_open",
    "local_cohomology_by_cone",
    "local_cohomology_dim",
    "monomial_product",
    "poset_cohomology",
    "rank",
    "reisner_oracle",
    "skyscraper",
    "stanley_check",
    "validate_fan",
]
