"""Command-line interface: ``hessrec <subcommand> ...``.

Exit codes: 0 success, 1 mathematical failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import exactla as la
from .exactla import PrimeField, QQ
from .mpoly import ParseError, format_poly, parse_poly
from .serialize import (
    dumps, ideal_from_json, ideal_to_json, load_json, matrix_to_json, number_to_json,
    piece_of, write_json,
)
from .symsq import sym_pairs

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    field: object = QQ
    seed: int = DEFAULT_SEED
    budget: int = 20
    trace: Path | None = None
    as_json: bool = False


def parse_field(text):
    if text in (None, "", "rational", "QQ", "Q"):
        return QQ
    if not text.startswith("p:"):
        raise UsageError(f"--field: expected 'rational' or 'p:<prime>', got {text!r}")
    try:
        p = int(text[2:])
    except ValueError:
        raise UsageError(f"--field: {text[2:]!r} is not an integer") from None
    if p < 3 or not la.is_probable_prime(p):
        raise UsageError(f"--field: {p} is not an odd prime")
    return PrimeField(p)


def _int_list(text, flag):
    try:
        return [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from None


def _number_list(text, flag):
    from fractions import Fraction
    try:
        return [Fraction(s.strip()) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"{flag}: expected comma-separated numbers, got {text!r}") from None


def _load_ideal(path, field):
    try:
        data = load_json(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--ideal: cannot read {path}: {exc}") from None
    try:
        return ideal_from_json(data, field)
    except (KeyError, ValueError, ParseError) as exc:
        raise UsageError(f"--ideal: malformed ideal file: {exc}") from None


def _emit(cfg, payload, text):
    if cfg.as_json:
        print(dumps(payload))
    else:
        print(text)


# ---------------------------------------------------------------- subcommands

def cmd_forward(args, cfg):
    from .forward import hessian_variety, minimal_generators
    nvars = args.n + 1
    try:
        F = parse_poly(args.poly, nvars, cfg.field, degree=args.d)
    except (ParseError, ValueError) as exc:
        raise UsageError(f"--poly: {exc}") from None
    degrees = _int_list(args.degrees, "--degrees")
    model = hessian_variety(F, degrees, seed=cfg.seed)
    gens = minimal_generators(model)
    payload = ideal_to_json(args.n, model.pieces, gens)
    lines = [f"piece {e}: dim {sp.dim}" for e, sp in sorted(model.pieces.items())]
    lines += [f"gen: {format_poly(g)}" for g in gens]
    _emit(cfg, payload, "\n".join(lines))


def cmd_recover3(args, cfg):
    from .recover3 import recover_cubic
    n, pieces, gens = _load_ideal(args.ideal, cfg.field)
    if args.n is not None and args.n != n:
        raise UsageError(f"--n: file has n={n}, flag says {args.n}")
    X = pieces[1] if 1 in pieces else gens
    F = recover_cubic(X, n)
    _emit(cfg, {"F": format_poly(F)}, f"F = {format_poly(F)}")


def _trace_payload(trace):
    res = trace["resolution"]
    return {
        "J2.json": [format_poly(q) for q in trace["J2"].forms()],
        "resolution.json": {
            "ranks": res.ranks,
            "twists": res.twists,
            "maps": [{"src_twists": list(A.src_twists), "tgt_twists": list(A.tgt_twists),
                      "cols": [[format_poly(e) if e is not None else "0" for e in col] for col in A.cols]}
                     for A in res.maps],
        },
        "phi.json": {"s": trace["phi"].s, "pivot": trace["phi"].pivot,
                     "forms": [format_poly(c) for c in trace["phi"].forms]},
        "param.json": [format_poly(f) for f in trace["param"]],
        "q_extra.json": format_poly(trace["q_extra"]),
        "G.json": format_poly(trace["G"]),
        "A.json": matrix_to_json(trace["A"]),
        "g.json": matrix_to_json(trace["g"]),
    }


def cmd_recover4(args, cfg):
    from .recover4 import recover_quartic
    n, pieces, gens = _load_ideal(args.ideal, cfg.field)
    if args.n is not None and args.n != n:
        raise UsageError(f"--n: file has n={n}, flag says {args.n}")
    if n % 2:
        raise UsageError("--n: quartic recovery needs n even")
    I2 = piece_of(pieces, gens, 2, len(sym_pairs(n)), cfg.field)
    trace = {} if cfg.trace else None
    # trace artifacts are only meaningful for the direct chain
    method = "direct" if cfg.trace else "auto"
    F = recover_quartic(I2, n, seed=cfg.seed, trace=trace, method=method)
    if cfg.trace:
        cfg.trace.mkdir(parents=True, exist_ok=True)
        for name, obj in _trace_payload(trace).items():
            write_json(cfg.trace / name, obj)
    _emit(cfg, {"F": format_poly(F)}, f"F = {format_poly(F)}")


def cmd_recover41(args, cfg):
    from .recover4 import recover_h41
    try:
        data = load_json(args.pencil)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"--pencil: cannot read {args.pencil}: {exc}") from None
    data.setdefault("n", 1)
    _, pieces, gens = ideal_from_json(data, QQ)
    pencil = piece_of(pieces, gens, 2, 3, QQ)
    a = recover_h41(pencil)
    coeffs = [number_to_json(c) for c in a]
    _emit(cfg, {"a": coeffs}, "a = (" + ", ".join(coeffs) + ")")


def _parse_points(text):
    pts = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("[]")
        if chunk:
            pts.append(_number_list(chunk, "--points"))
    if len(pts) != 3 or any(len(p) != 3 for p in pts):
        raise UsageError("--points: expected three points with three coordinates each")
    return pts


def cmd_fiber31(args, cfg):
    from .recover3 import fiber_h31
    forms = fiber_h31(_parse_points(args.points))
    out = [format_poly(f) for f in forms]
    _emit(cfg, {"fiber": out}, "\n".join(out))


def cmd_iota(args, cfg):
    from .recover3 import involution_iota
    a = _number_list(args.coeffs, "--coeffs")
    if len(a) != 4:
        raise UsageError("--coeffs: a binary cubic has four coefficients")
    b = [number_to_json(c) for c in involution_iota(a)]
    _emit(cfg, {"iota": b}, "(" + ", ".join(b) + ")")


def cmd_waring(args, cfg):
    from .waring import DiagonalForm, fiber_enumerate, image_polynomial
    lam = _number_list(args.lam, "--lambda")
    try:
        F = DiagonalForm(args.d, tuple(lam))
    except ValueError as exc:
        raise UsageError(f"--lambda/--d: {exc}") from None
    payload, lines = {"d": args.d, "lambda": [number_to_json(c) for c in F.lam]}, []
    if args.image_poly or not args.enumerate:
        P = image_polynomial(F, cfg.budget)
        payload["image_poly"] = format_poly(P)
        payload["image_degree"] = P.degree
        lines.append(f"image polynomial (degree {P.degree}): {format_poly(P)}")
    if args.enumerate:
        fib = fiber_enumerate(F, cfg.budget, seed=cfg.seed)
        payload["fiber"] = [[number_to_json(c) for c in G.lam] for G in fib]
        lines.append(f"fiber ({len(fib)}):")
        lines += ["  " + format_poly(G.poly()) for G in fib]
    _emit(cfg, payload, "\n".join(lines))


def cmd_conventions(args, cfg):
    pairs = sym_pairs(args.n)
    table = [{"index": k, "pair": [i, j]} for k, (i, j) in enumerate(pairs)]
    payload = {
        "zorder": "lex-pairs",
        "table": table,
        "quadric": "sum z_ii x_i^2 + 2 sum_{i<j} z_ij x_i x_j",
        "act": "act(g, F)(x) = F(g^T x)",
        "rho": "rho(g) Z = g Z g^T",
        "equivariance": "h_{act(g,F)}((g^T)^-1 y) = rho(g) h_F(y)",
    }
    lines = [f"z{k} = z_{i}{j}" for k, (i, j) in enumerate(pairs)]
    lines += [f"{k}: {v}" for k, v in payload.items() if k not in ("table", "zorder")]
    _emit(cfg, payload, "\n".join(lines))


def cmd_verify(args, cfg):
    from .acceptance import CRITERIA, run_suite
    suite = args.suite
    if suite != "all":
        keys = _int_list(suite, "--suite")
        if not keys or any(k not in CRITERIA for k in keys):
            raise UsageError(f"--suite: expected 'all' or numbers among {sorted(CRITERIA)}")
    checks = run_suite(suite, cfg.seed)
    payload = [{"criterion": c.criterion, "name": c.name, "ok": c.ok, "detail": c.detail}
               for c in checks]
    _emit(cfg, payload, "\n".join(c.line() for c in checks))
    return 0 if all(c.ok for c in checks) else 1


# ---------------------------------------------------------------- parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--field", default="rational", help="'rational' or 'p:<prime>'")
    common.add_argument("--seed", type=int, default=None, help="random seed (HESSREC_SEED overrides)")
    common.add_argument("--trace", default=None, help="directory for intermediate JSON artifacts")

    parser = argparse.ArgumentParser(prog="hessrec", description="Hessian varieties of forms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", parents=[common], help="graded pieces of a Hessian variety")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--degrees", default="1,2")
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("recover3", parents=[common], help="recover a cubic")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=cmd_recover3)

    p = sub.add_parser("recover4", parents=[common], help="recover a quartic (n even)")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--ideal", required=True)
    p.set_defaults(func=cmd_recover4)

    p = sub.add_parser("recover41", parents=[common], help="recover a binary quartic from its pencil")
    p.add_argument("--pencil", required=True)
    p.set_defaults(func=cmd_recover41)

    p = sub.add_parser("fiber31", parents=[common], help="binary cubics with given Hessian points")
    p.add_argument("--points", required=True)
    p.set_defaults(func=cmd_fiber31)

    p = sub.add_parser("iota", parents=[common], help="fiber partner of a binary cubic")
    p.add_argument("--coeffs", required=True)
    p.set_defaults(func=cmd_iota)

    p = sub.add_parser("waring", parents=[common], help="diagonal forms")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--image-poly", action="store_true")
    p.add_argument("--budget", type=int, default=20, help="maximal image degree")
    p.set_defaults(func=cmd_waring)

    p = sub.add_parser("conventions", parents=[common], help="z index table and action conventions")
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_conventions)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--suite", default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def make_config(args) -> RunConfig:
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    env = os.environ.get("HESSREC_SEED")
    if env:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"HESSREC_SEED: {env!r} is not an integer") from None
    return RunConfig(field=parse_field(args.field), seed=seed,
                     budget=getattr(args, "budget", 20),
                     trace=Path(args.trace) if args.trace else None, as_json=args.json)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        code = args.func(args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hessrec: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # any mathematical failure from the library
        print(f"hessrec: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return code or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
