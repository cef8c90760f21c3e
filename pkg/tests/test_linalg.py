from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hochster.linalg import (
    GF2,
    QQ,
    Betti,
    CochainComplex,
    Field,
    as_matrix,
    cohomology_dims,
    euler_audit,
    matmul,
    nullspace,
    random_invertible,
    rank,
)
from hochster.simplicial import boundary_of_simplex

from oracles import rank_by_minors

small_int = st.integers(-4, 4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def test_rank_identity():
    assert rank(np.eye(2, dtype=np.int64), QQ) == 2


def test_rank_zero():
    assert rank(np.zeros((3, 4), dtype=np.int64), QQ) == 0


def test_rank_singular_2x2():
    m = [[1, 2], [2, 4]]
    assert rank_by_minors(m) == 1
    assert rank(m, QQ) == 1


def test_rank_depends_on_characteristic():
    m = [[2, 0], [0, 1]]
    assert rank(m, QQ) == 2
    assert rank(m, GF2) == 1


def test_rank_fraction_entries():
    m = as_matrix([[Fraction(1, 2), 1], [1, 2]])
    assert m.dtype == object
    assert rank(m, QQ) == 1
    assert rank(m, Field(3)) == 1


def test_float_entries_rejected():
    with pytest.raises(TypeError):
        as_matrix([[1.0, 2]])
    with pytest.raises(TypeError):
        rank(np.eye(2), QQ)


def test_big_integers_are_exact():
    big = 2**70
    m = as_matrix([[big, big + 1], [big, big + 1]])
    assert m.dtype == object
    assert rank(m, QQ) == 1


@given(matrices())
def test_rank_matches_minor_oracle(rows):
    assert rank(rows, QQ) == rank_by_minors(rows)


@given(matrices(), st.sampled_from([2, 3, 7]))
def test_rank_mod_p_matches_minor_oracle(rows, p):
    assert rank(rows, Field(p)) == rank_by_minors(rows, p)


@given(matrices(5, 5))
def test_rank_of_transpose(rows):
    m = as_matrix(rows)
    for f in (QQ, GF2, Field(5)):
        assert rank(m, f) == rank(m.T.copy(), f)


@given(matrices(4, 5), st.sampled_from([QQ, GF2, Field(7)]))
def test_nullspace_is_kernel_of_full_dimension(rows, f):
    m = as_matrix(rows)
    k = nullspace(m, f)
    assert k.shape == (m.shape[1], m.shape[1] - rank(m, f))
    prod = matmul(m, k, f)
    assert all(f.reduce(x) == 0 for x in prod.flat)
    assert rank(k.T.copy(), f) == k.shape[1]


def test_field_parsing():
    assert Field.parse("q") == QQ
    assert Field.parse("gf2") == GF2
    assert Field.parse("gf:5") == Field(5)
    assert Field.parse(str(Field(7))) == Field(7)
    with pytest.raises(ValueError):
        Field.parse("gf:4")
    with pytest.raises(ValueError):
        Field.parse("reals")


def test_default_prime():
    assert Field.parse("gf").p == 32003


def test_betti_ignores_zeros():
    assert Betti({0: 1, 1: 0}) == Betti({0: 1})
    assert Betti()[5] == 0


def test_single_degree_complex():
    c = CochainComplex(0, (1,))
    assert cohomology_dims(c) == {0: 1}


def test_identity_complex_is_exact():
    c = CochainComplex(0, (1, 1), (np.array([[1]]),))
    assert cohomology_dims(c).nonzero() == {}


def test_hollow_triangle_cochains():
    # degree -1 is the empty face; the matrices are written out by hand
    d0 = np.array([[1], [1], [1]])
    d1 = np.array([[-1, 1, 0], [-1, 0, 1], [0, -1, 1]])
    c = CochainComplex(-1, (1, 3, 3), (d0, d1))
    assert rank_by_minors(d1.tolist()) == 2
    assert cohomology_dims(c) == {-1: 0, 0: 0, 1: 1}
    assert cohomology_dims(boundary_of_simplex([1, 2, 3]).cochain_complex()) == {1: 1}


def test_noncomposing_complex_rejected():
    c = CochainComplex(0, (1, 1, 1), (np.array([[1]]), np.array([[1]])))
    with pytest.raises(ValueError):
        cohomology_dims(c)


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        CochainComplex(0, (2, 1), (np.zeros((2, 2), dtype=np.int64),))


def test_euler_audit_records():
    with euler_audit() as log:
        cohomology_dims(boundary_of_simplex([1, 2, 3, 4]).cochain_complex())
    assert log and all(a == b for a, b in log)


@st.composite
def random_complex_data(draw):
    # a random chain complex built as a product of random matrices with d^2 = 0:
    # take d1 arbitrary and d2 a matrix whose rows lie in the left kernel of d1
    n0 = draw(st.integers(0, 4))
    n1 = draw(st.integers(1, 5))
    n2 = draw(st.integers(0, 4))
    d1 = np.array(draw(st.lists(st.lists(small_int, min_size=n0, max_size=n0), min_size=n1, max_size=n1)),
                  dtype=np.int64).reshape(n1, n0)
    ker = nullspace(d1.T.copy(), QQ)  # vectors y with y^T d1 = 0
    coeffs = draw(st.lists(st.lists(small_int, min_size=ker.shape[1], max_size=ker.shape[1]),
                           min_size=n2, max_size=n2))
    d2 = (np.array(coeffs, dtype=object).reshape(n2, ker.shape[1]) @ ker.T).reshape(n2, n1)
    den = 1
    for x in d2.flat:
        den = den * Fraction(x).denominator // np.gcd(den, Fraction(x).denominator)
    d2 = np.array([[int(Fraction(x) * den) for x in row] for row in d2], dtype=np.int64).reshape(n2, n1)
    return CochainComplex(0, (n0, n1, n2), (d1, d2))


@given(random_complex_data())
def test_euler_characteristic(c):
    h = cohomology_dims(c, QQ)
    assert sum((-1) ** n * v for n, v in h.items()) == c.euler_characteristic()


@given(random_complex_data(), st.integers(0, 2**31))
def test_cohomology_invariant_under_change_of_basis(c, seed):
    rng = np.random.default_rng(seed)
    g = [random_invertible(n, rng) for n in c.dims]
    ginv = [nullspace_inverse(x) for x in g]
    mats = tuple(
        matmul(matmul(g[k + 1], m, QQ), ginv[k], QQ) for k, m in enumerate(c.matrices)
    )
    conj = CochainComplex(c.min_degree, c.dims, mats)
    assert cohomology_dims(conj, QQ) == cohomology_dims(c, QQ)


def nullspace_inverse(g):
    n = g.shape[0]
    inv = _invert(g) if n else []
    assert all(x.denominator == 1 for row in inv for x in row)
    return np.array([[int(x) for x in row] for row in inv], dtype=np.int64).reshape(n, n)


def _invert(m):
    n = m.shape[0]
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m.tolist())]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        a[c] = [x / a[c][c] for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]
