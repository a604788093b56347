"""Command-line front end.

Every subcommand writes a machine-readable document (JSON by default, TSV or
DOT where it makes sense) to stdout or --output and is byte-deterministic
for fixed inputs.  Exit status: 0 on success, 1 when a verification ran and
found a failure, 2 on usage errors.  TILTCELL_MAX_WORK caps sweep sizes.

`verify` output carries per-check item/failure counts plus the failing items
themselves; passing items of large sweeps are not echoed.  `quiver-check`
emits the full per-pair comparison.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import cellbasis, deltafilt, quiver as qv
from .charring import baby_verma_char, simple_char, simple_char_r, weyl_char
from .deltafilt import delta_factors, hom_dim, tilting_char
from .report import Report
from .weights import Context

SCHEMA = 1
DEFAULT_MAX_WORK = 2_000_000


class UsageError(Exception):
    pass


def max_work() -> int:
    raw = os.environ.get("TILTCELL_MAX_WORK", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_WORK
    except ValueError:
        raise UsageError(f"TILTCELL_MAX_WORK must be an integer, got {raw!r}")


def guard_work(items: int) -> None:
    cap = max_work()
    if items > cap:
        raise UsageError(f"sweep of {items} items exceeds TILTCELL_MAX_WORK={cap}")


def _context(args) -> Context:
    try:
        return Context(args.p, args.r)
    except ValueError as exc:
        raise UsageError(str(exc))


def _emit(args, text: str) -> None:
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit_report(args, report: Report) -> int:
    doc = {"schema": SCHEMA, **report.to_dict()}
    if args.format == "tsv":
        lines = ["input\tlhs\trhs\tpass"]
        for item in report.items:
            lines.append(
                "\t".join(
                    [
                        json.dumps(item.input, sort_keys=True),
                        json.dumps(item.lhs, sort_keys=True),
                        json.dumps(item.rhs, sort_keys=True),
                        "true" if item.passed else "false",
                    ]
                )
            )
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _json(doc))
    return 0 if report.all_pass else 1


def _parse_scalars(raw: str | None) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    if not raw:
        return out
    for piece in raw.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if "=" not in piece:
            raise UsageError(f"scalar assignment {piece!r} is not of the form key=value")
        key, val = piece.split("=", 1)
        try:
            out[key.strip()] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad scalar value {val!r}")
    return out


def _weights_list(raw: list[str]) -> dict[int, int]:
    out: dict[int, int] = {}
    for chunk in raw:
        for piece in chunk.split(","):
            piece = piece.strip()
            if piece:
                try:
                    w = int(piece)
                except ValueError:
                    raise UsageError(f"bad weight {piece!r}")
                out[w] = out.get(w, 0) + 1
    return out


def _build_preset(args) -> tuple[qv.Quiver, qv.RelationSet]:
    scalars = _parse_scalars(getattr(args, "scalars", None))
    try:
        if args.preset == "p1":
            return qv.build_p1_quiver(args.p, window=args.window)
        if args.preset == "p2":
            return qv.build_p2_quiver(
                args.p,
                window=args.window,
                scalars=scalars or None,
                boundary_loops=not args.no_boundary_loops,
            )
        if args.preset == "sl3":
            return qv.build_sl3_quiver(
                a=scalars.get("a", 1), b=scalars.get("b", 1), r=scalars.get("r", 0)
            )
    except (qv.QuiverConfigError, ValueError) as exc:
        raise UsageError(str(exc))
    raise UsageError(f"unknown preset {args.preset!r}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_delta_factors(args) -> int:
    ctx = _context(args)
    fac = delta_factors(args.weight, ctx)
    pairs = [[nu, fac[nu]] for nu in sorted(fac)]
    if args.format == "tsv":
        _emit(args, "\n".join(f"{nu}\t{m}" for nu, m in pairs) + "\n")
    else:
        _emit(
            args,
            _json(
                {
                    "schema": SCHEMA,
                    "p": ctx.p,
                    "r": ctx.r,
                    "weight": args.weight,
                    "factors": pairs,
                }
            ),
        )
    return 0


def cmd_char(args) -> int:
    ctx = _context(args)
    kind = args.kind
    if kind == "weyl":
        ch = weyl_char(args.weight)
    elif kind == "simple":
        if args.weight < 0:
            raise UsageError("simple characters need a dominant (non-negative) weight")
        ch = simple_char(args.weight, ctx.p)
    elif kind == "simple-r":
        ch = simple_char_r(args.weight, ctx)
    elif kind == "baby-verma":
        ch = baby_verma_char(args.weight, ctx)
    elif kind == "tilting":
        ch = tilting_char(args.weight, ctx)
    else:
        raise UsageError(f"unknown character kind {kind!r}")
    pairs = ch.to_pairs()
    if args.format == "tsv":
        _emit(args, "\n".join(f"{w}\t{c}" for w, c in pairs) + "\n")
    else:
        _emit(
            args,
            _json(
                {
                    "schema": SCHEMA,
                    "kind": kind,
                    "p": ctx.p,
                    "r": ctx.r,
                    "weight": args.weight,
                    "coeffs": pairs,
                }
            ),
        )
    return 0


def cmd_hom_dim(args) -> int:
    ctx = _context(args)
    if len(args.weight) != 2:
        raise UsageError("hom-dim needs exactly two --weight flags")
    lam, mu = args.weight
    _emit(
        args,
        _json(
            {
                "schema": SCHEMA,
                "p": ctx.p,
                "r": ctx.r,
                "weights": [lam, mu],
                "dim": hom_dim(lam, mu, ctx),
            }
        ),
    )
    return 0


def cmd_cell_basis(args) -> int:
    ctx = _context(args)
    P = _weights_list(args.source)
    Q = _weights_list(args.target)
    if not P or not Q:
        raise UsageError("cell-basis needs --source and --target weight lists")
    indices = cellbasis.cell_indices(P, Q, ctx)
    _emit(
        args,
        _json(
            {
                "schema": SCHEMA,
                "p": ctx.p,
                "r": ctx.r,
                "count": len(indices),
                "indices": [c.to_dict() for c in indices],
            }
        ),
    )
    return 0


def cmd_generators(args) -> int:
    if args.preset == "sl3":
        pairs = cellbasis.sl3_generator_set_bprime()
        _emit(args, _json({"schema": SCHEMA, "preset": "sl3", "pairs": [list(t) for t in pairs]}))
        return 0
    ctx = _context(args)
    guard_work(ctx.q * 2 * ctx.q)
    gens = (
        cellbasis.generator_set_br0(ctx)
        if args.principal_block
        else cellbasis.generator_set_br(ctx)
    )
    doc = {
        "schema": SCHEMA,
        "p": ctx.p,
        "r": ctx.r,
        "principal_block": bool(args.principal_block),
        "generators": [g.to_dict() for g in gens],
    }
    if args.format == "tsv":
        _emit(args, "\n".join(f"{g.low_weight}\t{g.high_weight}\t{g.index}" for g in gens) + "\n")
    else:
        _emit(args, _json(doc))
    return 0


def _quiver_json(quiver: qv.Quiver, rels: qv.RelationSet) -> dict:
    return {
        "schema": SCHEMA,
        "preset": quiver.preset,
        "shift_period": quiver.shift_period,
        "vertices": [
            {"id": v, "weight": quiver.weights[v], "core": v in quiver.core}
            for v in quiver.vertices
        ],
        "arrows": [
            {"name": a.name, "source": a.source, "target": a.target, "kind": a.kind}
            for a in quiver.arrows
        ],
        "scalars": {k: str(v) for k, v in sorted(rels.scalars.items())},
        "relations": [
            {
                "source": rel.source,
                "target": rel.target,
                "terms": [
                    {"coeff": str(c), "path": [quiver.arrows[i].name for i in path]}
                    for path, c in sorted(rel.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
                ],
            }
            for rel in rels.relations
        ],
    }


def cmd_quiver_build(args) -> int:
    quiver, rels = _build_preset(args)
    if args.format == "dot":
        _emit(args, qv.export_dot(quiver))
    else:
        _emit(args, _json(_quiver_json(quiver, rels)))
    return 0


def cmd_export_dot(args) -> int:
    quiver, _ = _build_preset(args)
    _emit(args, qv.export_dot(quiver))
    return 0


def cmd_quiver_check(args) -> int:
    quiver, rels = _build_preset(args)
    max_len = args.max_len or qv.default_max_len(quiver)
    # rough path-object count; monomial pruning keeps the real work below this
    guard_work(len(quiver.vertices) * 4**max_len)
    try:
        result = qv.quotient_dims(quiver, rels, max_len, require_saturation=not args.allow_unsaturated)
    except qv.NotSaturated as exc:
        report = Report("quiver-vs-cellular", {"preset": args.preset, "max_len": max_len})
        report.add({"saturation": str(exc)}, False, True)
        return _emit_report(args, report)
    report = qv.check_against_cellular(quiver, result, scalars=rels.scalars)
    if not result.saturated:
        report.add({"saturation": result.unsaturated}, False, True)
    if args.format == "tsv":
        lines = ["source\ttarget\tdim"]
        for (v, w) in result.core_pairs:
            lines.append(f"{v}\t{w}\t{result.dim(v, w)}")
        _emit(args, "\n".join(lines) + "\n")
        return 0 if report.all_pass else 1
    return _emit_report(args, report)


_SUITES = ("reciprocity", "bounds", "linkage", "multfree", "steinberg", "quiver", "all")


def _run_suite(name: str, args) -> list[Report]:
    ctx = _context(args)
    lo = args.lo if args.lo is not None else -2 * ctx.q
    hi = args.hi if args.hi is not None else 2 * ctx.q
    if lo > hi:
        raise UsageError("--lo must not exceed --hi")
    reports: list[Report] = []
    if name in ("reciprocity", "all"):
        guard_work((hi - lo + 1) * 4 * ctx.q)
        rep = Report("reciprocity", {"p": ctx.p, "r": ctx.r, "lo": lo, "hi": hi})
        for lam in range(lo, hi + 1):
            rep.extend(deltafilt.verify_reciprocity(lam, ctx))
        reports.append(rep)
    if name in ("bounds", "all"):
        guard_work((hi - lo + 1) * 8)
        rep = Report("bounds", {"p": ctx.p, "r": ctx.r, "lo": lo, "hi": hi})
        for lam in range(lo, hi + 1):
            rep.extend(deltafilt.verify_bounds(lam, ctx))
        reports.append(rep)
    if name in ("linkage", "all"):
        guard_work((hi - lo + 1) ** 2)
        rep = Report("strong-linkage", {"p": ctx.p, "r": ctx.r, "lo": lo, "hi": hi})
        for lam in range(lo, hi + 1):
            rep.extend(deltafilt.verify_strong_linkage(lam, ctx))
        rep.extend(deltafilt.verify_linkage_necessity(lo, hi, ctx))
        reports.append(rep)
    if name in ("multfree", "all"):
        guard_work((hi - lo + 1) * 2)
        reports.append(deltafilt.verify_mult_free(lo, hi, ctx))
    if name in ("steinberg", "all"):
        if ctx.r >= 2:
            guard_work((hi - lo + 1) * 8 * ctx.p)
            rep = Report("steinberg-equivalence", {"p": ctx.p, "r": ctx.r, "lo": lo, "hi": hi})
            span = max(abs(lo), abs(hi)) // ctx.p + 1
            for m in range(-span, span + 1):
                rep.extend(deltafilt.verify_steinberg_equivalence(m, ctx))
            reports.append(rep)
        elif name == "steinberg":
            raise UsageError("the steinberg suite needs --r >= 2")
    if name in ("quiver", "all"):
        for preset in ("p1", "p2", "sl3"):
            if preset == "p1":
                quiver, rels = qv.build_p1_quiver(ctx.p, window=2)
            elif preset == "p2":
                quiver, rels = qv.build_p2_quiver(ctx.p, window=1)
            else:
                quiver, rels = qv.build_sl3_quiver()
            result = qv.quotient_dims(quiver, rels)
            reports.append(qv.check_against_cellular(quiver, result, scalars=rels.scalars))
    return reports


def cmd_verify(args) -> int:
    if args.suite not in _SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; valid: {', '.join(_SUITES)}")
    reports = _run_suite(args.suite, args)
    ok = all(rep.all_pass for rep in reports)
    doc = {
        "schema": SCHEMA,
        "suite": args.suite,
        "pass": ok,
        "reports": [
            {**rep.to_dict(), "items": [i.to_dict() for i in rep.failures]}
            for rep in reports
        ],
        "counts": [
            {"check": rep.check, "items": len(rep.items), "failures": len(rep.failures)}
            for rep in reports
        ],
    }
    _emit(args, _json(doc))
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sp, *, context: bool = True, fmt: tuple[str, ...] = ("json", "tsv")) -> None:
    if context:
        sp.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
        sp.add_argument("--r", type=int, default=1, help="level r >= 1 (default 1)")
    sp.add_argument("--format", choices=fmt, default="json")
    sp.add_argument("--output", default="-", help="output path, - for stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tiltcell",
        description="Exact invariants of rank-one tilting ladders and their quiver presentations.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("delta-factors", help="factor table of one indecomposable tilting")
    _add_common(sp)
    sp.add_argument("--weight", type=int, required=True)
    sp.set_defaults(func=cmd_delta_factors)

    sp = sub.add_parser("char", help="character of a standard/simple/tilting object")
    _add_common(sp)
    sp.add_argument(
        "--kind",
        choices=("weyl", "simple", "simple-r", "baby-verma", "tilting"),
        default="weyl",
    )
    sp.add_argument("--weight", type=int, required=True)
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("hom-dim", help="Hom dimension between two indecomposable tiltings")
    _add_common(sp, fmt=("json",))
    sp.add_argument("--weight", type=int, action="append", required=True)
    sp.set_defaults(func=cmd_hom_dim)

    sp = sub.add_parser("cell-basis", help="cellular index triples for Hom(P, Q)")
    _add_common(sp, fmt=("json",))
    sp.add_argument("--source", action="append", required=True, help="weights, comma separated")
    sp.add_argument("--target", action="append", required=True)
    sp.set_defaults(func=cmd_cell_basis)

    sp = sub.add_parser("generators", help="distinguished generator family")
    _add_common(sp)
    sp.add_argument("--preset", choices=("level", "sl3"), default="level")
    sp.add_argument("--principal-block", action="store_true")
    sp.set_defaults(func=cmd_generators)

    for name, func in (
        ("quiver-build", cmd_quiver_build),
        ("export-dot", cmd_export_dot),
        ("quiver-check", cmd_quiver_check),
    ):
        sp = sub.add_parser(name, help=f"{name.replace('-', ' ')} for a preset quiver")
        sp.add_argument("--preset", choices=("p1", "p2", "sl3"), required=True)
        sp.add_argument("--p", type=int, default=3)
        sp.add_argument("--window", type=int, default=None)
        sp.add_argument("--scalars", default=None, help="comma separated key=value pairs")
        sp.add_argument("--no-boundary-loops", action="store_true")
        if name == "quiver-check":
            sp.add_argument("--max-len", type=int, default=None)
            sp.add_argument("--allow-unsaturated", action="store_true")
            sp.add_argument("--format", choices=("json", "tsv"), default="json")
        elif name == "quiver-build":
            sp.add_argument("--format", choices=("json", "dot"), default="json")
        else:
            sp.add_argument("--format", choices=("dot",), default="dot")
        sp.add_argument("--output", default="-")
        sp.set_defaults(func=func)

    sp = sub.add_parser("verify", help="run a verification suite")
    _add_common(sp, fmt=("json",))
    sp.add_argument("--suite", required=True)
    sp.add_argument("--lo", type=int, default=None)
    sp.add_argument("--hi", type=int, default=None)
    sp.set_defaults(func=cmd_verify)

    return ap


def run(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "window", None) is None and getattr(args, "preset", None) in ("p1", "p2"):
        args.window = 2 if args.preset == "p1" else 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
