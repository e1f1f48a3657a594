"""Command-line interface: ``zigrank <command> [options]``.

Exit codes: 0 ok, 1 negative answer (``check``), 2 parse error, 3 validation
error, 4 guard exceeded, 5 engine mismatch.  The default field modulus comes
from ``ZIGRANK_FIELD`` unless ``--field`` is given.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from . import decomp, generate
from .exceptions import GuardError, ParseError, ValidationError
from .filtration import Bifiltration, format_bifiltration
from .grank import DEFAULT_NBD_GUARD, RankFunction, check_moebius, dgm_all, dgm_via_neighborhood
from .grid import DEFAULT_ENUMERATION_GUARD, GridInterval, parse_interval
from .io import default_field, dumps_module, load_input
from .module import ExplicitModule, from_bifiltration
from .zigzag import barcode, full_bar_multiplicity, zigzag_along_cap, zigzag_from_bifiltration

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_GUARD = 4
EXIT_MISMATCH = 5

log = logging.getLogger("zigrank")


def _emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _load(args):
    return load_input(args.input, args.field)


def _as_module(X, degree: int) -> ExplicitModule:
    return from_bifiltration(X, degree) if isinstance(X, Bifiltration) else X


def _domain(X) -> GridInterval:
    return X.domain


def _interval(args, X) -> GridInterval:
    if not args.interval:
        return _domain(X)
    I = parse_interval(args.interval)
    if not I.issubset(_domain(X)):
        raise ValidationError(f"{I.to_spec()} is not inside the grid {_domain(X).to_spec()}")
    return I


def _zigzag_rank(X, I: GridInterval, degree: int, cap: str) -> int:
    if isinstance(X, Bifiltration):
        return full_bar_multiplicity(zigzag_from_bifiltration(X, I, degree, cap))
    return full_bar_multiplicity(zigzag_along_cap(X, I, cap))


# commands -------------------------------------------------------------------


def cmd_rank(args) -> int:
    X = _load(args)
    I = _interval(args, X)
    ranks = {}
    if args.method in ("zigzag", "both"):
        ranks["zigzag"] = _zigzag_rank(X, I, args.degree, args.cap)
    if args.method in ("direct", "both"):
        ranks["direct"] = _as_module(X, args.degree).restrict(I).lim_to_colim_rank()
    values = set(ranks.values())
    if len(ranks) == 1:
        (method, r), = ranks.items()
        _emit(args, {"interval": I.to_json(), "rank": r, "method": method}, f"rank {I.to_spec()} = {r}")
    else:
        payload = {"interval": I.to_json(), "rank": ranks["zigzag"], "ranks": ranks}
        _emit(args, payload, f"rank {I.to_spec()}: zigzag={ranks['zigzag']} direct={ranks['direct']}")
    if len(values) > 1:
        print(f"engine mismatch on {I.to_spec()}: {ranks}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_dgm(args) -> int:
    X = _load(args)
    M = _as_module(X, args.degree)
    rk = RankFunction(M)
    if args.all:
        entries = dgm_all(rk, M.domain, args.max_points)
        bad = check_moebius(entries, rk)
        nonzero = [e for e in entries if e.value]
        payload = {"dgm": [e.to_json() for e in nonzero], "moebius_check": not bad}
        lines = [f"{e.interval.to_spec()}\t{e.value}" for e in nonzero]
        lines.append(f"sum identity over {len(entries)} intervals: {'pass' if not bad else 'FAIL'}")
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK if not bad else EXIT_MISMATCH
    if not args.interval:
        raise ValidationError("dgm needs --interval or --all")
    I = _interval(args, X)
    e = dgm_via_neighborhood(rk, I, M.domain, args.guard)
    _emit(args, {"dgm": [e.to_json()]}, f"dgm {I.to_spec()} = {e.value}")
    return EXIT_OK


def _decomp_text(out: decomp.DecompositionOutput) -> str:
    lines = [f"[{e.id}] {e.interval.to_spec()}  x{e.mult}" for e in out.entries]
    if out.decomposable is not None:
        lines.append(f"interval decomposable: {str(out.decomposable).lower()}")
    if out.failing_interval is not None:
        lines.append(f"failing interval: {out.failing_interval.to_spec()}")
    return "\n".join(lines)


def cmd_decompose(args) -> int:
    X = _load(args)
    out = decomp.interval_decompose(X, order=args.order, seed=args.seed, degree=args.degree)
    if args.trace:
        for line in out.trace:
            print(line, file=sys.stderr)
    _emit(args, out.to_json(), _decomp_text(out))
    return EXIT_OK


def cmd_check(args) -> int:
    X = _load(args)
    out = decomp.is_interval_decomposable(X, order=args.order, seed=args.seed, degree=args.degree)
    _emit(args, out.to_json(), _decomp_text(out))
    return EXIT_OK if out.decomposable else EXIT_NEGATIVE


def cmd_isinterval(args) -> int:
    X = _load(args)
    m = decomp.is_interval_module(X, degree=args.degree)
    _emit(args, {"multiplicity": m}, str(m))
    return EXIT_OK


def cmd_dims(args) -> int:
    X = _load(args)
    if isinstance(X, Bifiltration):
        dims = decomp.dim_all(X, degree=args.degree)
    else:
        dims = dict(X.dims)
    payload = {"dims": {f"{p.x},{p.y}": d for p, d in sorted(dims.items())}}
    text = "\n".join(f"{p.x} {p.y} {d}" for p, d in sorted(dims.items()))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_zigzag(args) -> int:
    X = _load(args)
    I = _interval(args, X)
    if isinstance(X, Bifiltration):
        Z = zigzag_from_bifiltration(X, I, args.degree, args.cap)
    else:
        Z = zigzag_along_cap(X, I, args.cap)
    bc = barcode(Z)
    lines = [
        "nodes: " + " ".join(f"({p.x},{p.y})" for p in Z.labels),
        f"pattern: {Z.pattern()}",
        f"dims: {' '.join(map(str, Z.dims))}",
    ]
    lines += [f"bar [{b.lo},{b.hi}] x{b.mult}" for b in bc.bars]
    _emit(args, bc.to_json(), "\n".join(lines))
    return EXIT_OK


def cmd_ensemble(args) -> int:
    X = _load(args)
    members = decomp.barcode_ensemble(X, degree=args.degree, max_points=args.max_points, max_total_dim=args.max_dim)
    payload = {"members": [m.to_json() for m in members]}
    lines = []
    for i, m in enumerate(members):
        lines.append(f"member {i}: " + ", ".join(f"{e.interval.to_spec()} x{e.mult}" for e in m.entries))
    if args.interval:
        I = _interval(args, X)
        r = decomp.ensemble_rank(members, I)
        payload["ensemble_rank"] = {"interval": I.to_json(), "rank": r}
        lines.append(f"ensemble rank {I.to_spec()} = {r}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _parse_grid(text: str) -> GridInterval:
    t = text.strip().lower()
    if "x" in t and ":" not in t:
        try:
            w, h = (int(v) for v in t.split("x"))
        except ValueError:
            raise ParseError(f"bad grid {text!r}, expected WxH") from None
        if w < 1 or h < 1:
            raise ParseError(f"bad grid {text!r}, sizes must be positive")
        return GridInterval.rect(0, 0, w - 1, h - 1)
    return parse_interval(text)


def cmd_gen(args) -> int:
    P = _parse_grid(args.grid)
    rng = generate.as_rng(args.seed)
    field = args.field or default_field()
    sidecar = None
    if args.kind == "interval-sum":
        M, bc = generate.random_interval_sum(rng, P, args.max_intervals, field)
        body = dumps_module(M) + "\n"
        sidecar = json.dumps(
            {"barcode": [{"interval": I.to_json(), "mult": m} for I, m in sorted(bc.items())]}, sort_keys=True
        ) + "\n"
    elif args.kind == "random-bifiltration":
        F = generate.random_bifiltration(rng, P, args.vertices, args.max_simplices, field)
        body = format_bifiltration(F)
    else:
        M = generate.indecomposable_candidate(rng, P, field)
        body = dumps_module(M) + "\n"
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
        if sidecar is not None:
            Path(args.out + ".barcode.json").write_text(sidecar, encoding="utf-8")
    else:
        sys.stdout.write(body)
    return EXIT_OK


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--field", type=int, default=None, help="field modulus (default: $ZIGRANK_FIELD or 2)")
    common.add_argument("-v", "--verbose", action="store_true")

    inp = argparse.ArgumentParser(add_help=False)
    inp.add_argument("input", help="bifiltration text file or explicit-module JSON file")
    inp.add_argument("--degree", type=int, default=0, help="homology degree for bifiltration input")

    p = argparse.ArgumentParser(prog="zigrank", description="Generalized rank and interval decomposition tools")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("rank", parents=[common, inp], help="generalized rank over an interval")
    s.add_argument("--interval", help="interval spec; default is the whole grid")
    s.add_argument("--method", choices=("zigzag", "direct", "both"), default="zigzag")
    s.add_argument("--cap", choices=("upper", "lower"), default="upper")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("dgm", parents=[common, inp], help="generalized persistence diagram")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--interval")
    g.add_argument("--all", action="store_true")
    s.add_argument("--guard", type=int, default=DEFAULT_NBD_GUARD, help="max neighbourhood size")
    s.add_argument("--max-points", type=int, default=DEFAULT_ENUMERATION_GUARD, help="max grid size for --all")
    s.set_defaults(func=cmd_dgm)

    for name, func, hlp in (
        ("decompose", cmd_decompose, "peel intervals off by rank comparisons"),
        ("check", cmd_check, "decide interval decomposability"),
    ):
        s = sub.add_parser(name, parents=[common, inp], help=hlp)
        s.add_argument("--order", choices=("lex", "random"), default="lex")
        s.add_argument("--seed", type=int, default=None)
        if name == "decompose":
            s.add_argument("--trace", action="store_true", help="write the exploration trace to stderr")
        s.set_defaults(func=func)

    s = sub.add_parser("isinterval", parents=[common, inp], help="m if the module is I_P^m, else 0")
    s.set_defaults(func=cmd_isinterval)

    s = sub.add_parser("dims", parents=[common, inp], help="pointwise dimensions")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("zigzag", parents=[common, inp], help="zigzag barcode along a boundary cap")
    s.add_argument("--interval")
    s.add_argument("--cap", choices=("upper", "lower"), default="upper")
    s.set_defaults(func=cmd_zigzag)

    s = sub.add_parser("ensemble", parents=[common, inp], help="all outputs of the peeling simulation")
    s.add_argument("--interval", help="also report the ensemble rank of this interval")
    s.add_argument("--max-points", type=int, default=decomp.ENSEMBLE_MAX_POINTS)
    s.add_argument("--max-dim", type=int, default=decomp.ENSEMBLE_MAX_TOTAL_DIM)
    s.set_defaults(func=cmd_ensemble)

    s = sub.add_parser("gen", parents=[common], help="random test instances")
    s.add_argument("--kind", choices=("interval-sum", "random-bifiltration", "indecomposable-candidate"), required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--grid", default="4x4", help="WxH or an interval spec")
    s.add_argument("--max-intervals", type=int, default=6)
    s.add_argument("--vertices", type=int, default=6)
    s.add_argument("--max-simplices", type=int, default=40)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GuardError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ValidationError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
