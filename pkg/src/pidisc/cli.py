"""Command-line entry point.

Commands::

    pidisc describe --config C
    pidisc disc     --config C --level L [--variant d|md] [--trace reg|std|red] [--max-dets N]
                    [--raw] [--compare G]
    pidisc fiber    --config C --point "X1=3,Y1=0"
    pidisc scan     --config C [--grid G] [--jobs J]
    pidisc singular --config C --point P
    pidisc verify   {all,example1,example2,weyl,properties}

Human-readable text goes to standard output.  ``--json`` prints the JSON
report instead, and ``--out PATH`` (or the config key ``out``) also writes it
to a file.  JSON is emitted with sorted keys so reruns are byte-identical.

Polynomial syntax (``--compare``, structure-constant tables, reports):
a sum of terms ``c*V1^e1*V2^e2``.  Coefficients are integers or fractions
(``3``, ``-1/2``); variables are the center names of the algebra (``X1``,
``Y1``, ``a``...); powers use ``^`` or ``**``; ``*`` may be omitted next to
parentheses.  Several polynomials in one argument are separated by ``;``.

Exit codes: 0 success, 1 internal error, 2 invalid input, 3 a ``verify``
check failed.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .config import ConfigError, RunConfig, build, grid_points, load_config, parse_point
from .disc import BudgetExceeded, d_generators_restricted, md_generators, point_gram_rank
from .fibers import FiberError, analyze_point
from .pialg import NotFreeError, PresentationError, UnsupportedAlgebra
from .polyring import (
    IdealGens,
    InvalidPoint,
    ShapeError,
    jacobian_singular,
    linear_membership,
    monomial_ideal_equal,
)
from .scalars import CharacteristicError, FieldError
from .traces import make_trace
from .weyl import WeylParamError

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3

INPUT_ERRORS = (
    ConfigError,
    InvalidPoint,
    UnsupportedAlgebra,
    NotFreeError,
    PresentationError,
    WeylParamError,
    CharacteristicError,
    FieldError,
    BudgetExceeded,
    ShapeError,
    FiberError,
)

TRACE_KIND = {"reg": "regular", "std": "standard", "red": "reduced"}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(args, cfg: RunConfig | None, payload: dict, text: str) -> None:
    out = getattr(args, "out", None) or (cfg.out if cfg else None)
    body = _dump(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(body + "\n")
    print(body if args.json else text)


def _load(args):
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg, build(cfg)


def _traces(A, names):
    return [make_trace(A, TRACE_KIND[t]) for t in names]


def _pi_degree(A) -> int:
    from .pialg import pi_degree

    return A.pi_degree_hint or pi_degree(A)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_describe(args) -> int:
    cfg, built = _load(args)
    A = built.algebra
    n = _pi_degree(A)
    info = {
        "family": cfg.family,
        "field": str(A.field),
        "center_variables": list(A.center.names),
        "center_relations": [str(g) for g in A.center.relation_polys()],
        "center_generators": list(A.center_description),
        "spanning_set": list(A.labels),
        "size": A.size,
        "pi_degree": n,
        "free": A.is_free,
    }
    W = built.weyl
    if W is not None:
        info["r"] = W.r
        info["d"] = list(W.d)
        info["Z"] = [str(Z) for Z in W.Z_centrals()]
    lines = [
        f"family       {info['family']} over {info['field']}",
        f"center       {', '.join(info['center_variables'])}"
        + (f"  with {', '.join(r + ' = 0' for r in info['center_relations'])}" if info["center_relations"] else ""),
        f"generators   {', '.join(info['center_generators'])}",
        f"|L|          {info['size']}  ({', '.join(info['spanning_set'])})",
        f"PI degree    {n}",
        f"free         {str(A.is_free).lower()}",
    ]
    if W is not None:
        lines.append(f"r            {W.r}")
        lines.append(f"d            {list(W.d)}")
        for i, Z in enumerate(info["Z"], start=1):
            lines.append(f"Z{i}           {Z}")
    _emit(args, cfg, info, "\n".join(lines))
    return EXIT_OK


def _parse_ideal(A, text: str) -> IdealGens:
    try:
        gens = [A.center.parse(part) for part in text.split(";") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"--compare: {exc}") from None
    return IdealGens(A.center, gens)


def _ideals_equal(I: IdealGens, J: IdealGens) -> bool:
    if I.monomial_flag and J.monomial_flag:
        return monomial_ideal_equal(I, J)
    bound = max([g.degree() for g in I.generators + J.generators] + [0]) + 2
    return all(linear_membership(g, J, bound) for g in I.generators) and all(
        linear_membership(g, I, bound) for g in J.generators
    )


def cmd_disc(args) -> int:
    cfg, built = _load(args)
    A = built.algebra
    t = make_trace(A, TRACE_KIND[args.trace])
    fn = md_generators if args.variant == "md" else d_generators_restricted
    res = fn(A, t, args.level, max_dets=args.max_dets, dedupe=not args.raw)
    payload = res.to_json()
    text = [f"{'MD' if args.variant == 'md' else 'D (principal minors)'}_{args.level} with tr_{args.trace}: "
            f"{len(res.ideal.generators)} generators from {res.determinants} determinants"]
    text += [f"  {g}" for g in res.ideal.generators] or ["  (zero ideal)"]
    if args.compare:
        target = _parse_ideal(A, args.compare)
        eq = _ideals_equal(res.ideal, target)
        payload["compare"] = {"target": [str(g) for g in target.generators], "equal": eq}
        text.append(f"equal to {target}: {str(eq).lower()}")
    _emit(args, cfg, payload, "\n".join(text))
    return EXIT_OK


def _report_text(rep) -> str:
    d = rep.to_json()
    pt = ", ".join(f"{k}={v}" for k, v in d["point"].items())
    lines = [
        f"point        {pt}",
        f"fiber dim    {d['dim']}  (radical {d['radical_dim']}, semisimple {d['ss_dim']})",
        f"blocks       {d['blocks']}",
        f"irreducibles {d['irreducibles']}",
        f"gram ranks   {d['gram_ranks']}",
        f"azumaya      {str(d['azumaya']).lower()}",
        f"k_m          {d['k_m']}",
        f"bounds       {d['bounds']}",
    ]
    return "\n".join(lines)


def cmd_fiber(args) -> int:
    cfg, built = _load(args)
    A = built.algebra
    point = parse_point(A, args.point)
    A.center.check_point(point)
    rep = analyze_point(A, _traces(A, cfg.traces), point, n=_pi_degree(A), seed=cfg.seed)
    _emit(args, cfg, rep.to_json(), _report_text(rep))
    return EXIT_OK


# scan workers rebuild the algebra from the config once per process
_WORKER: dict = {}


def _worker_init(cfg: RunConfig) -> None:
    A = build(cfg).algebra
    _WORKER["state"] = (A, _traces(A, cfg.traces), _pi_degree(A), cfg.seed)


def _scan_one(point) -> dict:
    A, traces, n, seed = _WORKER["state"]
    return analyze_point(A, traces, point, n=n, seed=seed).to_json()


def _parse_grid(text: str | None, cfg: RunConfig):
    if text is None:
        return cfg.grid
    if text == "full":
        return "full"
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"--grid: {exc.msg} at column {exc.colno}") from None


def cmd_scan(args) -> int:
    cfg, built = _load(args)
    A = built.algebra
    n = _pi_degree(A)
    points = grid_points(A, _parse_grid(args.grid, cfg))
    if args.jobs > 1 and len(points) > 1:
        with ProcessPoolExecutor(args.jobs, initializer=_worker_init, initargs=(cfg,)) as pool:
            reports = list(pool.map(_scan_one, points, chunksize=max(1, len(points) // (4 * args.jobs))))
    else:
        _worker_init(cfg)
        reports = [_scan_one(pt) for pt in points]
    rows = [
        {"point": r["point"], "azumaya": r["azumaya"], "ss_dim": r["ss_dim"], "gram_ranks": r["gram_ranks"]}
        for r in reports
    ]
    partition = Counter(r["ss_dim"] for r in reports)
    cross = []
    for level in range(1, n * n + 2):
        entry = {"level": level}
        for tag in sorted({k for r in reports for k in r["gram_ranks"]}):
            agree = sum((r["gram_ranks"][tag] < level) == (r["ss_dim"] < level) for r in reports)
            entry[tag] = {"agree": agree, "disagree": len(reports) - agree}
        cross.append(entry)
    non_az = [r["point"] for r in reports if not r["azumaya"]]
    payload = {
        "pi_degree": n,
        "points": rows,
        "partition": {str(k): partition[k] for k in sorted(partition)},
        "non_azumaya": non_az,
        "cross_check": cross,
    }
    text = [f"{len(rows)} points, {len(non_az)} non-Azumaya (PI degree {n})",
            "ss_dim  count"]
    text += [f"{k:>6}  {partition[k]}" for k in sorted(partition)]
    text.append("level  " + "  ".join(f"{tag}:agree/total" for tag in cross[0] if tag != "level"))
    for entry in cross:
        cells = [f"{v['agree']}/{len(rows)}" for k, v in entry.items() if k != "level"]
        text.append(f"{entry['level']:>5}  " + "  ".join(f"{c:>14}" for c in cells))
    if non_az and len(non_az) <= 50:
        text.append("non-Azumaya points:")
        text += ["  " + ", ".join(f"{k}={v}" for k, v in p.items()) for p in non_az]
    _emit(args, cfg, payload, "\n".join(text))
    return EXIT_OK


def cmd_singular(args) -> int:
    cfg, built = _load(args)
    A = built.algebra
    if not A.center.relation_polys():
        raise UnsupportedAlgebra("the center of this family has no relations; singular locus is not available")
    point = parse_point(A, args.point)
    A.center.check_point(point)
    n = _pi_degree(A)
    singular = jacobian_singular(A.center, point)
    t = make_trace(A, TRACE_KIND[args.trace])
    rank = point_gram_rank(A, t, point)
    payload = {
        "point": {k: (v if isinstance(v, int) else str(v)) for k, v in zip(A.center.names, point)},
        "singular": singular,
        "gram_rank": rank,
        "top_level": n * n,
        "inclusion_ok": (not singular) or rank < n * n,
        "azumaya": rank == n * n,
    }
    text = (f"singular {str(singular).lower()}; gram rank {rank} of {n * n}; "
            f"inclusion {'holds' if payload['inclusion_ok'] else 'FAILS'}")
    _emit(args, cfg, payload, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import run_suite

    t0 = time.perf_counter()
    results = run_suite(args.suite)
    total = time.perf_counter() - t0
    import sympy

    payload = {
        "suite": args.suite,
        "checks": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
        "seconds": round(total, 3),
        "versions": {"pidisc": __version__, "python": platform.python_version(), "sympy": sympy.__version__},
    }
    text = [r.line() for r in results]
    fails = sum(not r.passed for r in results)
    text.append(f"{len(results) - fails}/{len(results)} checks passed in {total:.1f}s")
    _emit(args, None, payload, "\n".join(text))
    return EXIT_OK if payload["passed"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    common.add_argument("--out", help="also write the JSON report to this path")
    common.add_argument("--seed", type=int, default=None, help="override the config seed")

    cfgp = argparse.ArgumentParser(add_help=False, parents=[common])
    cfgp.add_argument("--config", required=True, help="JSON configuration file")

    parser = argparse.ArgumentParser(prog="pidisc", description="Discriminant ideals and Azumaya loci of PI algebras")
    parser.add_argument("--version", action="version", version=f"pidisc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", parents=[cfgp], help="summarize the configured algebra")
    p.set_defaults(func=cmd_describe)

    p = sub.add_parser("disc", parents=[cfgp], help="generators of a discriminant ideal")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--variant", choices=("d", "md"), default="md")
    p.add_argument("--trace", choices=tuple(TRACE_KIND), default="reg")
    p.add_argument("--max-dets", type=int, default=10**6)
    p.add_argument("--raw", action="store_true", help="keep every nonzero minor as computed (no monic dedupe)")
    p.add_argument("--compare", help="';'-separated generators of a target ideal")
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("fiber", parents=[cfgp], help="fiber report at a central point")
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("scan", parents=[cfgp], help="fiber reports over a grid of central points")
    p.add_argument("--grid", help="'full' or a JSON object of per-variable value lists")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("singular", parents=[cfgp], help="singularity of the center at a point")
    p.add_argument("--point", required=True)
    p.add_argument("--trace", choices=tuple(TRACE_KIND), default="std")
    p.set_defaults(func=cmd_singular)

    p = sub.add_parser("verify", parents=[common], help="run acceptance checks")
    p.add_argument("suite", nargs="?", default="all", choices=("all", "example1", "example2", "weyl", "properties"))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    if getattr(args, "level", 1) is not None and getattr(args, "level", 1) < 1:
        print("error: --level must be positive", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
