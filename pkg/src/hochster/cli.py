"""Command-line front end.

Exit status: 0 on success, 1 for a negative verdict or a failed validation
(fan axioms, functoriality, oracle disagreement), 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any, Sequence

from . import facering
from .cech import reisner_oracle
from .fan import Cone, ConeError, Fan, FanError, NotPointedError, complex_of_fan, embed_degree, fan_of_complex
from .kpmod import FunctorialityError, KPModule, is_flasque, module_from_json, poset_cohomology
from .linalg import Betti, Field
from .poset import PosetError
from .simplicial import ComplexError, SimplicialComplex

log = logging.getLogger("hochster")


class InputError(Exception):
    """Anything that should end with exit status 2."""


class ValidationFailure(Exception):
    """Well-formed input that fails a structural check; exit status 1."""

    def __init__(self, message: str, payload: dict[str, Any]):
        super().__init__(message)
        self.payload = payload


# -- loading -----------------------------------------------------------------


def _read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from None


def load_complex(path: str) -> SimplicialComplex:
    data = _read_json(path)
    if not isinstance(data, dict) or "facets" not in data:
        raise InputError(f"{path}: expected a simplicial complex {{'vertices', 'facets'}}")
    try:
        return SimplicialComplex.from_json(data)
    except (ComplexError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_fan(path: str) -> Fan:
    data = _read_json(path)
    if not isinstance(data, dict) or "cones" not in data:
        raise InputError(f"{path}: expected a fan {{'ambient_dim', 'cones'}}")
    try:
        return Fan.from_json(data)
    except NotPointedError as exc:
        raise ValidationFailure(str(exc), {"valid": False, "reason": str(exc)}) from None
    except FanError as exc:
        if exc.pair is None:
            raise InputError(f"{path}: {exc}") from None
        raise ValidationFailure(
            str(exc),
            {"valid": False, "reason": str(exc), "pair": [encode_cone(c) for c in exc.pair]},
        ) from None
    except (ConeError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_module(path: str, field: Field) -> KPModule:
    data = _read_json(path)
    if not isinstance(data, dict) or "poset" not in data:
        raise InputError(f"{path}: expected a module {{'poset', 'stalks', 'edges'}}")
    try:
        return module_from_json(data, field)
    except FunctorialityError as exc:
        raise ValidationFailure(str(exc), {"valid": False, "reason": str(exc)}) from None
    except (PosetError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def fan_input(args) -> Fan:
    if args.complex:
        return fan_of_complex(load_complex(args.complex))
    if args.fan:
        return load_fan(args.fan)
    raise InputError("one of --complex or --fan is required")


def parse_vector(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"degree must be comma-separated integers, got {text!r}") from None


def parse_face(sc: SimplicialComplex, text: str) -> tuple:
    names = {str(v): v for v in sc.vertices}
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return tuple(names[p] for p in parts)
    except KeyError as exc:
        raise InputError(f"unknown vertex {exc.args[0]!r}") from None


# -- encoding ----------------------------------------------------------------


def encode_cone(c: Cone, fan: Fan | None = None) -> Any:
    rays = [list(r) for r in c.rays]
    sc = complex_of_fan(fan) if fan is not None else None
    if sc is None:
        return rays
    n = len(sc.vertices)
    face = [sc.vertices[r.index(1)] for r in c.rays if r[n] == 1]
    return {"rays": rays, "face": face}


def encode_betti(b: Betti) -> dict[str, int]:
    return {str(i): v for i, v in sorted(b.nonzero().items())}


def _label(x: Any) -> Any:
    if isinstance(x, frozenset):
        return sorted(x, key=str)
    if isinstance(x, tuple):
        return [_label(y) for y in x]
    return x


def emit(args, payload: Any, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _betti_text(b: Betti) -> str:
    nz = b.nonzero()
    return ", ".join(f"H~^{i} = {v}" for i, v in sorted(nz.items())) or "acyclic"


# -- commands ----------------------------------------------------------------


def cmd_betti(args, field: Field) -> int:
    if not args.complex:
        raise InputError("betti needs --complex")
    b = load_complex(args.complex).reduced_cohomology(field)
    emit(args, {"field": str(field), "betti": encode_betti(b)}, _betti_text(b))
    return 0


def cmd_link(args, field: Field) -> int:
    if not args.complex or args.face is None:
        raise InputError("link needs --complex and --face")
    sc = load_complex(args.complex)
    face = parse_face(sc, args.face)
    if face not in sc:
        raise InputError(f"{list(face)} is not a face")
    lk = sc.link(face)
    b = lk.reduced_cohomology(field)
    facets = "; ".join(",".join(map(str, f)) for f in lk.facets()) or "(empty face only)"
    emit(
        args,
        {"face": list(face), "link": lk.to_json(), "field": str(field), "betti": encode_betti(b)},
        f"link facets: {facets}\n{_betti_text(b)}",
    )
    return 0


def _fan_degree(fan: Fan, a: tuple[int, ...]) -> tuple[tuple[int, ...], str]:
    """Map an input degree to fan coordinates; Stanley-Reisner degrees are embedded."""
    sc = complex_of_fan(fan)
    if sc is not None and len(a) == len(sc.vertices):
        return embed_degree(a), "stanley-reisner"
    if len(a) != fan.ambient_dim:
        expected = f"{fan.ambient_dim}" if sc is None else f"{len(sc.vertices)} or {fan.ambient_dim}"
        raise InputError(f"degree has length {len(a)}, expected {expected}")
    return a, "fan"


def cmd_lch(args, field: Field) -> int:
    if args.degree is None or args.i is None:
        raise InputError("lch needs --degree and --i")
    fan = fan_input(args)
    a = parse_vector(args.degree)
    b, coords = _fan_degree(fan, a)
    value = facering.local_cohomology_dim(fan, args.i, b, field)
    payload = {"i": args.i, "degree": list(a), "fan_degree": list(b), "coordinates": coords,
               "field": str(field), "dim": value}
    if coords == "stanley-reisner" and args.format == "text":
        print(f"degree {list(a)} embedded as {list(b)}", file=sys.stderr)
    emit(args, payload, str(value))
    return 0


def cmd_lch_table(args, field: Field) -> int:
    fan = fan_input(args)
    table = facering.local_cohomology_by_cone(fan, field)
    rows = table.to_json()
    if complex_of_fan(fan) is not None:
        for row, c in zip(rows, fan.cones):
            row["face"] = encode_cone(c, fan)["face"]
    emit(args, {"field": str(field), "krull_dim": table.krull_dim, "cones": rows}, table.to_text())
    return 0


def _verdict(args, fan: Fan, v, name: str, field: Field) -> int:
    payload = {"test": name, "field": str(field), "result": v.result, "witnesses": [
        {"cone": encode_cone(c, fan), "p": p, "dim": d} for c, p, d in v.witnesses
    ]}
    lines = [str(v.result).lower()]
    for c, p, d in v.witnesses:
        lines.append(f"witness: cone {_cone_text(c)} has H~^{p} of dim {d}")
    emit(args, payload, "\n".join(lines))
    return 0 if v.result else 1


def _cone_text(c: Cone) -> str:
    return " ".join("(" + ",".join(map(str, r)) + ")" for r in c.rays) or "0"


def cmd_cm(args, field: Field) -> int:
    fan = fan_input(args)
    return _verdict(args, fan, facering.cm_test(fan, field), "cohen-macaulay", field)


def cmd_buchsbaum(args, field: Field) -> int:
    fan = fan_input(args)
    try:
        v = facering.buchsbaum_test(fan, field)
    except FanError as exc:
        raise InputError(str(exc)) from None
    return _verdict(args, fan, v, "buchsbaum", field)


def cmd_stanley(args, field: Field) -> int:
    fan = fan_input(args)
    s = facering.stanley_check(fan, field)
    emit(
        args,
        {"field": str(field), "order_complex_cm": s.order_complex_cm, "ring_cm": s.ring_cm},
        f"order complex CM: {str(s.order_complex_cm).lower()}\nring CM: {str(s.ring_cm).lower()}",
    )
    return 0


def cmd_reisner(args, field: Field) -> int:
    if not args.complex:
        raise InputError("reisner needs --complex")
    v = reisner_oracle(load_complex(args.complex), field)
    payload = {"test": "reisner", "field": str(field), "result": v.result, "witnesses": [
        {"face": sorted(f, key=str), "i": i, "dim": d} for f, i, d in v.witnesses
    ]}
    lines = [str(v.result).lower()] + [
        f"witness: link of {sorted(f, key=str)} has H~^{i} of dim {d}" for f, i, d in v.witnesses
    ]
    emit(args, payload, "\n".join(lines))
    return 0 if v.result else 1


def cmd_ext(args, field: Field) -> int:
    if not args.module:
        raise InputError("ext needs --module")
    m = load_module(args.module, field)
    top = args.max_degree if args.max_degree is not None else len(m.poset)
    b = poset_cohomology(m, top)
    text = ", ".join(f"Ext^{n} = {b[n]}" for n in range(top + 1))
    emit(args, {"field": str(field), "max_degree": top, "ext": {str(n): b[n] for n in range(top + 1)}}, text)
    return 0


def cmd_flasque(args, field: Field) -> int:
    if not args.module:
        raise InputError("flasque needs --module")
    m = load_module(args.module, field)
    try:
        r = is_flasque(m, method=args.method)
    except PosetError as exc:
        raise InputError(str(exc)) from None
    payload: dict[str, Any] = {"flasque": r.flasque}
    text = str(r.flasque).lower()
    if r.witness is not None:
        u, x = r.witness
        order = m.poset.index
        payload["witness"] = {"open_set": [_label(y) for y in sorted(u, key=order.__getitem__)],
                              "element": _label(x)}
        text += f"\nwitness: restriction from U = {payload['witness']['open_set']} removing {_label(x)!r}"
    emit(args, payload, text)
    return 0 if r.flasque else 1


def cmd_verify(args, field: Field) -> int:
    from .verify import run_corpus

    fields = [Field.parse(f) for f in args.fields] if args.fields else [field]
    bad = run_corpus(args.corpus, fields, workers=args.workers)
    if not bad:
        emit(args, {"corpus": args.corpus, "mismatches": 0}, f"corpus {args.corpus}: all checks agree")
        return 0
    bad.sort(key=_repro_size)
    payload = {"corpus": args.corpus, "mismatches": len(bad), "minimal": bad[0].to_json(),
               "all": [m.to_json() for m in bad]}
    lines = [f"corpus {args.corpus}: {len(bad)} mismatches", f"minimal reproducer: {bad[0]}"]
    emit(args, payload, "\n".join(lines))
    return 1


def _repro_size(m) -> tuple:
    case = m.case
    if "complex" in case:
        return (len(case["complex"]["vertices"]), sum(len(f) for f in case["complex"]["facets"]), str(m))
    if "poset" in case:
        return (len(case["poset"]["elements"]), len(case["poset"]["hasse"]), str(m))
    return (len(json.dumps(case)), 0, str(m))


COMMANDS = {
    "betti": cmd_betti,
    "link": cmd_link,
    "lch": cmd_lch,
    "lch-table": cmd_lch_table,
    "cm-test": cmd_cm,
    "buchsbaum-test": cmd_buchsbaum,
    "stanley-check": cmd_stanley,
    "reisner": cmd_reisner,
    "ext": cmd_ext,
    "flasque": cmd_flasque,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="q", help="q (default), gf2 or gf:<p>")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="hochster", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name: str, help: str, *, complex_: bool = False, fan: bool = False, module: bool = False):
        p = sub.add_parser(name, parents=[common], help=help)
        if complex_:
            p.add_argument("--complex", metavar="FILE", help="simplicial complex JSON")
        if fan:
            p.add_argument("--fan", metavar="FILE", help="fan JSON (maximal cones)")
        if module:
            p.add_argument("--module", metavar="FILE", help="poset module JSON")
        return p

    add("betti", "reduced cohomology of a complex", complex_=True)
    add("link", "link of a face", complex_=True).add_argument("--face", help="comma-separated vertices")
    p = add("lch", "one graded piece of local cohomology", complex_=True, fan=True)
    p.add_argument("--degree", help="comma-separated integers; write --degree=-1,0 for leading minus")
    p.add_argument("--i", type=int)
    add("lch-table", "per-cone local cohomology table", complex_=True, fan=True)
    add("cm-test", "Cohen-Macaulay test", complex_=True, fan=True)
    add("buchsbaum-test", "Buchsbaum test (fans of complexes only)", complex_=True, fan=True)
    add("stanley-check", "CM order complex implies CM ring", complex_=True, fan=True)
    add("reisner", "Reisner's criterion on links", complex_=True)
    add("ext", "Ext of the constant module into a poset module", module=True).add_argument(
        "--max-degree", type=int)
    add("flasque", "flasqueness with a witness", module=True).add_argument(
        "--method", choices=("local", "enumerate"), default="local")
    p = add("verify", "engine against oracles on a corpus")
    p.add_argument("--corpus", choices=("small", "full"), default="small")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--fields", nargs="*", metavar="FIELD", help="several fields at once")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        field = Field.parse(args.field)
    except ValueError as exc:
        print(f"hochster: {exc}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args, field)
    except InputError as exc:
        print(f"hochster: {exc}", file=sys.stderr)
        return 2
    except ValidationFailure as exc:
        emit(args, exc.payload, f"invalid: {exc}")
        return 1
    except ConeError as exc:
        print(f"hochster: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
