"""Command-line front end.

Subcommands expose the library: exact normal forms, discriminant data,
isotropic enumeration, overlattices, orthogonal complements, primitive
embedding checks, configuration operations, and the full verification run.
Output is deterministic JSON (or Markdown for reports).

Exit codes: 0 success, 1 verification failure, 2 parse error,
3 precondition violation, 4 search guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import discform as df
from . import serialize as ser
from .curves import double_cover_pullback, quotient_by_involution, FixedPointData
from .exactlinalg import IntMat, snf, snf_rational
from .lattice import Lattice, discriminant_group, orthogonal_complement, parse_lattice_expr, sublattice, is_primitive
from .reconstruct import reconstruct_24
from .verify import RESULT_IDS, run_all

EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_GUARD = 4


class PreconditionError(ValueError):
    pass


def _load_gram(path: str) -> tuple[IntMat, str | None]:
    return ser.gram_from_json(ser.load_json(path))


def _load_lattice_arg(arg: str) -> Lattice:
    """A lattice given either as a JSON Gram file or a name expression."""
    if os.path.exists(arg) or arg.endswith(".json"):
        gram, name = _load_gram(arg)
        return Lattice(gram, name)
    try:
        return parse_lattice_expr(arg)
    except ValueError as exc:
        raise ser.ParseError(f"{arg!r} is neither a file nor a lattice expression: {exc}")


def _load_rows_arg(arg: str) -> IntMat:
    """Generator rows given inline as JSON or as a file with a 'rows' field."""
    text = arg.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ser.ParseError(f"inline rows: malformed JSON: {exc}")
        return ser.rows_from_json(data)
    return ser.rows_from_json(ser.load_json(arg))


def _emit(data) -> None:
    sys.stdout.write(ser.dumps(data) + "\n")


def cmd_snf(args) -> int:
    gram, _name = _load_gram(args.input)
    if args.rational or args.inverse:
        mat = gram.to_rational()
        if args.inverse:
            if gram.det() == 0:
                raise PreconditionError("matrix is singular; no inverse to decompose")
            mat = gram.inverse()
        if mat.det() == 0:
            raise PreconditionError("rational SNF requires a nonsingular matrix")
        d, s, t = snf_rational(mat)
        _emit(
            {
                "schema": ser.SCHEMA,
                "D": ser.ratmat_to_json(d),
                "S": ser.intmat_to_json(s),
                "T": ser.intmat_to_json(t),
                "invariant_factors": [
                    ser.rational_to_json(d.entries[i][i]) for i in range(d.rows)
                ],
            }
        )
    else:
        d, s, t = snf(gram)
        _emit(
            {
                "schema": ser.SCHEMA,
                "D": ser.intmat_to_json(d),
                "S": ser.intmat_to_json(s),
                "T": ser.intmat_to_json(t),
                "invariant_factors": [
                    d.entries[i][i] for i in range(min(d.rows, d.cols))
                ],
            }
        )
    return 0


def cmd_disc(args) -> int:
    gram, name = _load_gram(args.input)
    lat = Lattice(gram, name)
    if not lat.is_nondegenerate:
        raise PreconditionError("lattice is degenerate")
    if not lat.is_even:
        raise PreconditionError("discriminant form is defined for even lattices")
    module = df.from_lattice(lat)
    disc = discriminant_group(lat)
    _emit(
        {
            "schema": ser.SCHEMA,
            "invariant_factors": list(module.orders),
            "order": module.order,
            "generators": [
                [ser.rational_to_json(c) for c in lift.coords]
                for lift in disc.generator_lifts
            ],
            "q_table": [ser.rational_to_json(q) for q in module.q_diag],
            "b_table": [
                [ser.rational_to_json(b) for b in row] for row in module.b_mat
            ],
        }
    )
    return 0


def cmd_isotropic(args) -> int:
    gram, name = _load_gram(args.input)
    lat = Lattice(gram, name)
    if not lat.is_nondegenerate or not lat.is_even:
        raise PreconditionError("isotropic enumeration needs an even nondegenerate lattice")
    module = df.from_lattice(lat)
    if module.order > df.guard_order():
        raise df.GuardExceeded(
            f"module order {module.order} exceeds the enumeration guard {df.guard_order()}"
        )
    out = {
        "schema": ser.SCHEMA,
        "orders": list(module.orders),
        "isotropic_elements": [list(x) for x in df.isotropic_elements(module)],
    }
    if args.subgroups:
        out["isotropic_subgroups"] = [
            {"order": sub.order, "generators": [list(g) for g in sub.gens]}
            for sub in df.isotropic_subgroups(module)
        ]
    _emit(out)
    return 0


def cmd_overlattices(args) -> int:
    gram, name = _load_gram(args.input)
    lat = Lattice(gram, name)
    if not lat.is_nondegenerate or not lat.is_even:
        raise PreconditionError("overlattice enumeration needs an even nondegenerate lattice")
    module = df.from_lattice(lat)
    if module.order > df.guard_order():
        raise df.GuardExceeded(
            f"module order {module.order} exceeds the enumeration guard {df.guard_order()}"
        )
    out = []
    for sub in df.isotropic_subgroups(module):
        over = df.overlattice(lat, sub)
        out.append(
            {
                "glue_order": sub.order,
                "glue_generators": [list(g) for g in sub.gens],
                "gram": ser.intmat_to_json(over.gram),
                "det": over.det,
            }
        )
    _emit({"schema": ser.SCHEMA, "overlattices": out})
    return 0


def cmd_complement(args) -> int:
    ambient = _load_lattice_arg(args.ambient)
    gens = _load_rows_arg(args.gens)
    if gens.cols != ambient.rank:
        raise PreconditionError("generator length does not match the ambient rank")
    comp = orthogonal_complement(ambient, gens)
    _emit(
        {
            "schema": ser.SCHEMA,
            "basis": ser.intmat_to_json(comp.basis_coords),
            "gram": ser.intmat_to_json(comp.induced_gram),
            "degenerate": comp.is_degenerate,
        }
    )
    return 0


def cmd_embed_check(args) -> int:
    ambient = _load_lattice_arg(args.ambient)
    gens = _load_rows_arg(args.gens)
    if gens.cols != ambient.rank:
        raise PreconditionError("generator length does not match the ambient rank")
    sub = sublattice(ambient, gens)
    _emit(
        {
            "schema": ser.SCHEMA,
            "primitive": is_primitive(ambient, gens),
            "gram": ser.intmat_to_json(sub.induced_gram),
        }
    )
    return 0


def cmd_config(args) -> int:
    if args.operation == "pullback":
        config = ser.config_from_json(ser.load_json(args.config))
        step = ser.cover_step_from_json(ser.load_json(args.data))
        result = double_cover_pullback(config, step)
        _emit(
            {
                "schema": ser.SCHEMA,
                "ambiguous": result.is_ambiguous,
                "options": [
                    {
                        "config": ser.config_to_json(opt.config),
                        "label_map": {k: list(v) for k, v in sorted(opt.label_map.items())},
                    }
                    for opt in result.options
                ],
            }
        )
        return 0
    if args.operation == "quotient":
        config = ser.config_from_json(ser.load_json(args.config))
        act = ser.involution_from_json(ser.load_json(args.data))
        quot = quotient_by_involution(config, act, FixedPointData(count=0))
        _emit(
            {
                "schema": ser.SCHEMA,
                "config": ser.config_to_json(quot.config),
                "orbit_map": {k: list(v) for k, v in sorted(quot.orbit_map.items())},
            }
        )
        return 0
    if args.operation == "reconstruct":
        rec = reconstruct_24(args.tier)
        out = {
            "schema": ser.SCHEMA,
            "tier_used": rec.tier_used,
            "census": rec.census_sizes(),
        }
        sols = rec.solutions if rec.tier_used > 1 else ()
        if len(sols) == 1:
            out["config"] = ser.config_to_json(rec.config())
        else:
            out["solutions"] = [ser.intmat_to_json(g) for g in sols]
        _emit(out)
        return 0
    raise PreconditionError(f"unknown config operation {args.operation!r}")


def cmd_verify_paper(args) -> int:
    report = run_all(args.tier)
    entries = report.entries
    if args.result:
        if args.result not in RESULT_IDS:
            raise PreconditionError(
                f"unknown result id {args.result!r}; known: {', '.join(RESULT_IDS)}"
            )
        entries = tuple(e for e in entries if e.result_id == args.result)
    from .verify import VerificationReport

    filtered = VerificationReport(entries)
    if args.format == "md":
        sys.stdout.write(filtered.to_markdown())
    else:
        _emit(filtered.to_dict())
    return 0 if filtered.all_passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evenlat",
        description="Exact lattice computations for the triple-double K3 family",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("snf", help="Smith normal form with transforms")
    p.add_argument("input", help="path to a Gram-matrix JSON file")
    p.add_argument("--rational", action="store_true", help="rational SNF of the matrix")
    p.add_argument("--inverse", action="store_true", help="decompose the inverse matrix")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("disc", help="discriminant group and quadratic form")
    p.add_argument("input")
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("isotropic", help="isotropic elements of the discriminant form")
    p.add_argument("input")
    p.add_argument("--subgroups", action="store_true", help="also enumerate isotropic subgroups")
    p.set_defaults(func=cmd_isotropic)

    p = sub.add_parser("overlattices", help="even overlattices via isotropic subgroups")
    p.add_argument("input")
    p.set_defaults(func=cmd_overlattices)

    p = sub.add_parser("complement", help="saturated orthogonal complement")
    p.add_argument("ambient", help="Gram file or lattice expression like 'U+U(2)+diag(-4,-4)'")
    p.add_argument("gens", help="rows file or inline JSON like '[[1,1,1],[-1,1,0]]'")
    p.set_defaults(func=cmd_complement)

    p = sub.add_parser("embed-check", help="induced Gram and primitivity of a sublattice")
    p.add_argument("ambient")
    p.add_argument("gens")
    p.set_defaults(func=cmd_embed_check)

    p = sub.add_parser("config", help="curve configuration operations")
    p.add_argument("operation", choices=("pullback", "quotient", "reconstruct"))
    p.add_argument("config", nargs="?", help="configuration JSON file")
    p.add_argument("data", nargs="?", help="cover step or involution JSON file")
    p.add_argument("--tier", default="auto", choices=("auto", "1", "2", "3"))
    p.set_defaults(func=cmd_config)

    p = sub.add_parser("verify-paper", help="run the verification harness")
    p.add_argument("--result", help="restrict to one result id")
    p.add_argument("--tier", default="auto", choices=("auto", "1", "2", "3"))
    p.add_argument("--format", default="json", choices=("json", "md"))
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ser.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except df.GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
