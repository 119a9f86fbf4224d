"""Command line interface.

Every successful command prints one JSON document and exits 0. Domain
errors print a JSON error object on stdout and exit 1; usage errors go to
stderr with exit status 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import classify as cls
from .cobordism import functor_class, grading, quadric_check, validate_cobordism
from .dsl import evaluate, parse
from .errors import (
    GravicatError,
    LedgerError,
    ManifestIOError,
    NotDivisible,
    SchemaError,
    UnboundName,
)
from .lattice import Lattice, analyze
from .ledger import (
    BettiProfile,
    convolve_disjoint,
    expected_dimension,
    ledger_from_json,
    ledger_to_json,
    normalize,
    simple_type_check,
    sym_dimension,
    sym_dimensions,
)
from .manifest import check_rank, load_manifest, resolve_lattice
from .walls import NegativeSubspace, Period, crossing_set, parse_rational, wall_membership


def _csv_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _csv_rationals(text: str) -> list[Fraction]:
    try:
        return [parse_rational(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated rationals, got {text!r}") from None


def _read_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ManifestIOError(f"cannot read {path}: {exc.strerror}", path=path) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc.msg})", path="<root>") from None


def load_lattice(ref: str) -> Lattice:
    """``builtin:NAME`` or a JSON file holding ``{"gram": ...}``."""
    if ref.startswith("builtin:"):
        lat = resolve_lattice(ref, {})
    else:
        data = _read_json(ref)
        if isinstance(data, dict) and "lattice" in data and "gram" not in data:
            data = data["lattice"]
        lat = Lattice.from_json(data)
    return check_rank(lat)


def _cmd_analyze(args):
    return analyze(load_lattice(args.lattice)).to_json()


def _cmd_classify(args):
    return cls.classify_indefinite(load_lattice(args.lattice)).to_json()


def _cmd_k0(args):
    k0, definite = cls.k0_class_with_flags(load_lattice(args.lattice))
    return {**k0.to_json(), "warnings": ["DefiniteLattice"] if definite else []}


def _cmd_diag(args):
    return {"diagonalizable": cls.diagonalizable_definite(load_lattice(args.lattice))}


def _cmd_smooth_check(args):
    return cls.smooth_closed_constraint(load_lattice(args.lattice)).to_json()


def _cmd_glue(args):
    manifest = load_manifest(args.manifest)
    rec = evaluate(parse(args.expr), manifest.cobordisms)
    try:
        k0 = functor_class(rec).to_json()
    except GravicatError:
        k0 = None
    g = grading(rec)
    return {
        "record": rec.to_json(),
        "profile": analyze(rec.lattice).to_json(),
        "grading": {"kappa0": g.kappa0, "sigma_grade": g.sigma_grade},
        "k0": k0,
        "violations": [str(v) for v in validate_cobordism(rec)],
    }


def _cmd_walls(args):
    lat = load_lattice(args.lattice)
    vecs = crossing_set(Period(lat, args.from_), Period(lat, args.to), args.d,
                        primitive_only=args.primitive_only)
    return {"count": len(vecs), "vectors": [list(w.x) for w in vecs]}


def _cmd_wall_member(args):
    data = _read_json(args.basis)
    lat = load_lattice(args.lattice) if args.lattice else None
    try:
        if isinstance(data, list):
            data = {"basis": data}
        sub = NegativeSubspace.from_json(data, lattice=lat)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, GravicatError):
            raise
        raise SchemaError(f"{args.basis}: malformed subspace ({exc})") from None
    check_rank(sub.lattice)
    w = wall_membership(sub, args.d, primitive_only=args.primitive_only)
    if w is None:
        return {"member": False, "witness": None, "norm": None}
    return {"member": True, "witness": list(w.x), "norm": w.norm}


def _cmd_dim(args):
    return {"dimension": expected_dimension(args.d, args.chi, args.sigma)}


def _cmd_symdim(args):
    betti = BettiProfile(tuple(args.betti))
    if args.degree is not None:
        return {"dimension": sym_dimension(betti, args.weight, args.degree)}
    return {"dimensions": {str(k): v for k, v in sym_dimensions(betti, args.weight).items()}}


def _load_ledger(path):
    data = _read_json(path)
    if not isinstance(data, list):
        raise LedgerError(f"{path}: a ledger is a JSON list of entries")
    return ledger_from_json(data)


def _cmd_ledger_convolve(args):
    a, b = _load_ledger(args.first), _load_ledger(args.second)
    return ledger_to_json(convolve_disjoint(a, b, args.dmax))


def _cmd_ledger_check(args):
    entries = _load_ledger(args.file)
    betti = BettiProfile(tuple(args.betti)) if args.betti else None
    simple = simple_type_check(entries, betti)
    try:
        normalized = ledger_to_json(normalize(entries, betti))
    except NotDivisible:
        normalized = None
    return {"simple_type": simple, "normalized": normalized}


def _cmd_quadric(args):
    manifest = load_manifest(args.manifest)
    if args.name not in manifest.cobordisms:
        raise UnboundName(f"no cobordism named {args.name!r}", name=args.name)
    rec = manifest.cobordisms[args.name]
    on = quadric_check(rec)
    return {
        "name": args.name,
        "on_quadric": on,
        "c1_squared": rec.lattice.norm(rec.c1),
        "expected": 2 * rec.chi + 3 * rec.sigma,
    }


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gravicat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def lattice_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--lattice", required=True, help="builtin:NAME or a JSON file")
        sp.set_defaults(func=func)
        return sp

    lattice_cmd("analyze", _cmd_analyze, "rank, signature, parity, determinant")
    lattice_cmd("classify", _cmd_classify, "canonical form of an indefinite unimodular lattice")
    lattice_cmd("k0", _cmd_k0, "class of an even unimodular lattice in K0")
    lattice_cmd("diag", _cmd_diag, "is a definite unimodular lattice diagonalizable")
    lattice_cmd("smooth-check", _cmd_smooth_check, "Freedman / Donaldson report")

    sp = sub.add_parser("glue", help="evaluate a gluing expression over a manifest")
    sp.add_argument("--manifest", required=True)
    sp.add_argument("--expr", required=True)
    sp.set_defaults(func=_cmd_glue)

    sp = sub.add_parser("walls", help="walls crossed between two periods (b_plus = 1)")
    sp.add_argument("--lattice", required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--from", dest="from_", type=_csv_rationals, required=True)
    sp.add_argument("--to", type=_csv_rationals, required=True)
    sp.add_argument("--primitive-only", action="store_true")
    sp.set_defaults(func=_cmd_walls)

    sp = sub.add_parser("wall-member", help="does a negative definite subspace lie on Wall_d")
    sp.add_argument("--lattice", help="overrides the lattice stored in the basis file")
    sp.add_argument("--basis", required=True, help='JSON {"basis": [[...], ...]} of spanning vectors')
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--primitive-only", action="store_true")
    sp.set_defaults(func=_cmd_wall_member)

    sp = sub.add_parser("dim", help="expected dimension 8d - 3(chi + sigma)/2")
    sp.add_argument("--chi", type=int, required=True)
    sp.add_argument("--sigma", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=_cmd_dim)

    sp = sub.add_parser("symdim", help="bigraded dimensions of Sym(H_*)")
    sp.add_argument("--betti", type=_csv_ints, required=True)
    sp.add_argument("--weight", type=int, required=True)
    sp.add_argument("--degree", type=int)
    sp.set_defaults(func=_cmd_symdim)

    sp = sub.add_parser("ledger-convolve", help="ledger of a disjoint union")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--dmax", type=int, required=True)
    sp.set_defaults(func=_cmd_ledger_convolve)

    sp = sub.add_parser("ledger-check", help="simple type test and normalization")
    sp.add_argument("file")
    sp.add_argument("--betti", type=_csv_ints)
    sp.set_defaults(func=_cmd_ledger_check)

    sp = sub.add_parser("quadric", help="check c1^2 = 2 chi + 3 sigma for a manifest record")
    sp.add_argument("--manifest", required=True)
    sp.add_argument("--name", required=True)
    sp.set_defaults(func=_cmd_quadric)
    return p


def _emit(obj, stream) -> None:
    stream.write(json.dumps(obj, separators=(",", ":")) + "\n")


def run_cli(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("d", "weight", "dmax"):
        if getattr(args, name, 0) is not None and getattr(args, name, 0) < 0:
            parser.print_usage(sys.stderr)
            print(f"gravicat: error: --{name} must be nonnegative", file=sys.stderr)
            return 2
    try:
        result = args.func(args)
    except GravicatError as exc:
        _emit(exc.to_json(), stdout)
        return 1
    _emit(result, stdout)
    return 0


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
