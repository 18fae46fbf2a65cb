"""Command-line entry point.

Exit codes: 0 success, 1 domain error, 2 precision exhausted, 64 bad usage.
Every report starts from the resolved run configuration so that searched
bounds are never implicit.  The worker count is an execution detail and is
left out of reports, which keeps output byte-identical across worker counts.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass

from .arith import LaurentSeries, PairElem, Poly, check_modulus
from .autoseq import DFAO, PaperfoldParams, max_two_adic, paperfold_series, paperfold_values
from .diophantine import littlewood_score, score_height_consistency, trajectory_grid
from .errors import DomainError, FuncFieldError, PrecisionError
from .quadext import QuadElem, RatFunc, beta_series, is_integral, unit
from .resscalars import (
    az_to_diag,
    conj_diag_check,
    det,
    embed_matrix,
    exact_to_series,
    gamma_element,
    in_SL4_Ft,
    mat_agrees,
    mat_mul,
    psi,
    psi_exact,
    residual_exp,
)

EXIT_OK, EXIT_DOMAIN, EXIT_PRECISION, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class RunConfig:
    command: str
    p: int
    prec: int | None
    seed: int
    format: str
    out: str | None
    m_level: int | None = None
    m_level_requested: str | None = None
    deg_max: int | None = None
    shift_max: int | None = None
    grid: int | None = None
    guard: int | None = None
    samples: int | None = None
    check: str | None = None
    count: int | None = None
    n: int | None = None
    alpha_file: str | None = None
    file: str | None = None

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


# --------------------------------------------------------------------------
# argument parsing


def _seed(s: str) -> int:
    v = int(s)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _m_level(s: str):
    if s == "auto":
        return s
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("m-level must be >= 1 or 'auto'")
    return v


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> Parser:
    common = Parser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="odd prime (default 3)")
    common.add_argument("--prec", type=int, default=None, help="absolute precision O(t^-prec)")
    common.add_argument("--seed", type=_seed, default=0)
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=None)
    common.add_argument("--workers", type=int, default=1, help="worker threads (output does not depend on it)")

    parser = Parser(prog="funcfield", description="Function-field Diophantine toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("beta", parents=[common], help="normalized series of sqrt(1 + 1/t)")

    sp = sub.add_parser("paperfold", parents=[common], help="paperfolding sequence values")
    sp.add_argument("--m-level", type=_m_level, default="auto")
    sp.add_argument("--count", type=_nonneg, default=16)

    sp = sub.add_parser("dfao", help="automata with output")
    dsub = sp.add_subparsers(dest="action", required=True)
    ev = dsub.add_parser("eval", parents=[common], help="evaluate a DFAO on n")
    ev.add_argument("--file", required=True)
    ev.add_argument("--n", type=_nonneg, required=True)

    for name, helptext in (("score", "t-adic Littlewood score"), ("trajectory", "trajectory height grid")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--m-level", type=_m_level, default="auto")
        sp.add_argument("--alpha-file", default=None, help="LaurentSeries JSON; default is paperfolding")
        sp.add_argument("--guard", type=int, default=1)
        if name == "score":
            sp.add_argument("--deg-max", type=_nonneg, required=True)
            sp.add_argument("--shift-max", type=_nonneg, required=True)
        else:
            sp.add_argument("--grid", type=_nonneg, required=True)

    sp = sub.add_parser("embed", parents=[common], help="restriction-of-scalars checks")
    sp.add_argument("--check", choices=("gamma", "hom", "membership", "conjugation"), required=True)
    sp.add_argument("--samples", type=_nonneg, default=20)

    sp = sub.add_parser("consistency", parents=[common], help="heights versus Littlewood score")
    sp.add_argument("--m-level", type=_m_level, default="auto")
    sp.add_argument("--alpha-file", default=None)
    sp.add_argument("--grid", type=_nonneg, default=5)
    sp.add_argument("--deg-max", type=_nonneg, default=4)
    sp.add_argument("--shift-max", type=_nonneg, default=10)
    sp.add_argument("--samples", type=_nonneg, default=1000)
    return parser


# --------------------------------------------------------------------------
# emission


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(cfg: RunConfig, lines: list[str]) -> str:
    return "\n".join(["# config=" + json.dumps(cfg.to_dict(), separators=(",", ":"))] + lines) + "\n"


# --------------------------------------------------------------------------
# commands


def _resolve_m(cfg: RunConfig, requested):
    cfg.m_level_requested = str(requested)
    cfg.m_level = max_two_adic(cfg.p) if requested == "auto" else requested


def _load_alpha(cfg: RunConfig) -> LaurentSeries:
    if cfg.alpha_file is None:
        return paperfold_series(PaperfoldParams(cfg.m_level, cfg.p), cfg.prec)
    with open(cfg.alpha_file) as fh:
        alpha = LaurentSeries.from_json(fh.read())
    if alpha.p != cfg.p:
        raise DomainError(f"alpha file is over F_{alpha.p}, run is over F_{cfg.p}")
    if alpha.prec < cfg.prec:
        raise PrecisionError(
            f"alpha file is known to O(t^-{alpha.prec}), run asks for {cfg.prec}", required=cfg.prec
        )
    return alpha.truncate(cfg.prec)


def cmd_beta(cfg, args):
    if cfg.prec is None:
        cfg.prec = 16
    b = beta_series(cfg.p, cfg.prec)
    return _json({"config": cfg.to_dict(), **b.to_dict()})


def cmd_paperfold(cfg, args):
    _resolve_m(cfg, args.m_level)
    cfg.count = args.count
    vals = paperfold_values(cfg.count, cfg.m_level)
    if cfg.format == "json":
        return _json({"config": cfg.to_dict(), "values": vals})
    return _csv(cfg, [",".join(map(str, vals))])


def cmd_dfao(cfg, args):
    cfg.file, cfg.n = args.file, args.n
    with open(args.file) as fh:
        aut = DFAO.from_json(fh.read())
    value = aut(args.n)
    if cfg.format == "json":
        return _json({"config": cfg.to_dict(), "n": args.n, "value": value})
    return _csv(cfg, [str(value)])


def cmd_score(cfg, args):
    _resolve_m(cfg, args.m_level)
    cfg.deg_max, cfg.shift_max, cfg.guard, cfg.alpha_file = args.deg_max, args.shift_max, args.guard, args.alpha_file
    need = cfg.deg_max + cfg.shift_max + cfg.guard + 1
    if cfg.prec is None:
        cfg.prec = need
    if cfg.prec < need:
        raise PrecisionError(f"score needs --prec >= {need}", required=need)
    alpha = _load_alpha(cfg)
    rep = littlewood_score(alpha, cfg.deg_max, cfg.shift_max, guard=cfg.guard, workers=args.workers)
    return _json({"config": cfg.to_dict(), **rep.to_dict()})


def cmd_trajectory(cfg, args):
    _resolve_m(cfg, args.m_level)
    cfg.grid, cfg.guard, cfg.alpha_file = args.grid, args.guard, args.alpha_file
    if cfg.prec is None:
        cfg.prec = 2 * cfg.grid + 40
    grid = trajectory_grid(_load_alpha(cfg), cfg.grid, guard=cfg.guard, workers=args.workers)
    if cfg.format == "json":
        return _json(
            {
                "config": cfg.to_dict(),
                "entries": [[m, n, e] for (m, n), e in sorted(grid.entries.items())],
                "zero_witnesses": [list(c) for c in grid.zero_witnesses],
                "min_exp": grid.min_exp,
            }
        )
    return _csv(cfg, grid.csv_lines())


# -- embed samples ---------------------------------------------------------


def _rand_series(rng, p, prec, unit_=False):
    start = rng.randrange(-2, 3)
    c = [rng.randrange(p) for _ in range(prec - start)]
    if unit_:
        c[0] = rng.randrange(1, p)
    return LaurentSeries(p, c, start, prec)


def _rand_pair(rng, p, prec):
    return PairElem(_rand_series(rng, p, prec), _rand_series(rng, p, prec))


def _rand_integral(rng, p):
    j = Poly([rng.randrange(p) for _ in range(rng.randrange(1, 4))], p)
    k = Poly([0] + [rng.randrange(p) for _ in range(rng.randrange(1, 3))], p)
    return QuadElem(RatFunc(j, 1), RatFunc(k, 1))


def _rand_det_one(rng, p, integral):
    one, zero = QuadElem.from_base(1, p), QuadElem.from_base(0, p)
    eps = unit(p) ** rng.choice((-1, 1))
    M = mat_mul([[one, _rand_integral(rng, p)], [zero, one]], [[eps, zero], [zero, eps.inverse()]])
    if integral:
        low = _rand_integral(rng, p)
    else:
        low = rng.choice((QuadElem.beta(p), QuadElem.from_base(RatFunc.t_inv(p), p) * _rand_integral(rng, p) + 1))
    return mat_mul(M, [[one, zero], [low, one]])


def cmd_embed(cfg, args):
    cfg.check, cfg.samples = args.check, args.samples
    if cfg.prec is None:
        cfg.prec = 40
    p, P = cfg.p, cfg.prec
    check_modulus(p)
    beta = beta_series(p, P)
    rng = random.Random(cfg.seed)
    rows = []
    if cfg.check == "gamma":
        G = gamma_element(p)
        exact = in_SL4_Ft(G)
        series = in_SL4_Ft(exact_to_series(G, P))
        rows.append({"exact": exact.to_dict(), "series": series.to_dict(), "det": det(G).to_dict()})
        passed = exact.member and series.member
    elif cfg.check == "hom":
        passed = True
        for _ in range(cfg.samples):
            X = [[_rand_pair(rng, p, P) for _ in range(2)] for _ in range(2)]
            Y = [[_rand_pair(rng, p, P) for _ in range(2)] for _ in range(2)]
            lhs, rhs = psi(mat_mul(X, Y), beta), mat_mul(psi(X, beta), psi(Y, beta))
            ok = mat_agrees(lhs, rhs)
            passed &= ok
            rows.append({"agrees": ok, "residual_exp": residual_exp(lhs, rhs)})
    elif cfg.check == "membership":
        passed = True
        for i in range(cfg.samples):
            X = _rand_det_one(rng, p, integral=i % 2 == 0)
            integral = all(is_integral(x) for row in X for x in row)
            v = in_SL4_Ft(psi(embed_matrix(X, beta), beta))
            ve = in_SL4_Ft(psi_exact(X))
            ok = v.member == integral == ve.member
            passed &= ok
            rows.append({"integral": integral, "verdict": v.verdict, "exact_verdict": ve.verdict, "agrees": ok})
    else:
        passed = True
        for _ in range(cfg.samples):
            a1, a2, z = (_rand_series(rng, p, P, unit_=True) for _ in range(3))
            d = az_to_diag(a1, a2, z)
            chk = conj_diag_check(d, beta)
            back = az_to_diag(chk.alpha1, chk.alpha2, chk.zeta)
            ok = all(x.agrees(y) for x, y in zip(back, d))
            passed &= ok
            rows.append({"agrees": ok, "residual_exp": chk.residual_exp})
    return _json({"config": cfg.to_dict(), "passed": bool(passed), "samples": rows})


def cmd_consistency(cfg, args):
    _resolve_m(cfg, args.m_level)
    cfg.grid, cfg.deg_max, cfg.shift_max = args.grid, args.deg_max, args.shift_max
    cfg.samples, cfg.alpha_file = args.samples, args.alpha_file
    if cfg.prec is None:
        cfg.prec = 64
    alpha = _load_alpha(cfg)
    res = score_height_consistency(alpha, cfg.grid, cfg.deg_max, cfg.shift_max, samples=cfg.samples, seed=cfg.seed)
    return _json({"config": cfg.to_dict(), **res})


COMMANDS = {
    "beta": (cmd_beta, "json"),
    "paperfold": (cmd_paperfold, "csv"),
    "dfao": (cmd_dfao, "csv"),
    "score": (cmd_score, "json"),
    "trajectory": (cmd_trajectory, "csv"),
    "embed": (cmd_embed, "json"),
    "consistency": (cmd_consistency, "json"),
}


def run_command(argv: list[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    fn, default_format = COMMANDS[args.command]
    if args.workers < 1:
        print("funcfield: error: --workers must be >= 1", file=stderr)
        return EXIT_USAGE
    cfg = RunConfig(
        command=args.command if args.command != "dfao" else f"dfao {args.action}",
        p=args.p,
        prec=args.prec,
        seed=args.seed,
        format=args.format or default_format,
        out=args.out,
    )
    try:
        check_modulus(cfg.p)
        text = fn(cfg, args)
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=stderr)
        return EXIT_PRECISION
    except (FuncFieldError, ValueError, OSError) as exc:
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None) -> int:
    return run_command(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
