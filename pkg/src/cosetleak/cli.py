"""Command-line front end.

Subcommands ``leak``, ``avg-bsc``, ``ensemble`` and ``simulate`` print a CSV
or JSON document with a metadata block and a payload.  Exit codes: 0 success,
2 input error, 3 resource cap exceeded, 4 internal invariant violated.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys

import numpy as np

from . import __version__
from .bec import bec_leakage_rank
from .channel import parse_channel_spec
from .ensemble import average_leakage_pmf
from .errors import InputError, InvariantError, ResourceError
from .gf2 import read_matrix
from .montecarlo import SimulationConfig, compare_histogram_to_pmf, simulate_leakage_histogram
from .observation import read_observation
from .pgf import (
    DEFAULT_MAX_M,
    bsc_average_leakage,
    posterior_given_observation,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_INVARIANT = 4

WORKERS_ENV = "COSETLEAK_WORKERS"


def _num(x):
    # shortest round-trip decimal of binary64
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(x)


def _cell(x) -> str:
    x = _num(x)
    return repr(x) if isinstance(x, float) else str(x)


def render(fmt: str, metadata: dict, columns: list[str] | None = None, rows: list | None = None,
           extra: dict | None = None) -> str:
    """Serialize one result.

    CSV puts ``metadata`` and ``extra`` in ``#`` comment lines above the
    table; JSON nests them next to a list of row objects.  With ``rows=None``
    the result is the single record ``extra``: a flat JSON payload, or a
    one-row CSV table.
    """
    extra = extra or {}
    if rows is None:
        if fmt == "json":
            doc = {"metadata": metadata, "payload": {k: _num(v) for k, v in extra.items()}}
            return json.dumps(doc, indent=2) + "\n"
        columns, rows, extra = list(extra), [list(extra.values())], {}
    if fmt == "json":
        doc = {
            "metadata": metadata,
            "payload": {
                **{k: _num(v) for k, v in extra.items()},
                "rows": [{c: _num(v) if c != "s" else v for c, v in zip(columns, r)} for r in rows],
            },
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    for k, v in metadata.items():
        buf.write(f"# {k}: {v}\n")
    for k, v in extra.items():
        buf.write(f"# {k}: {_cell(v)}\n")
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(v if isinstance(v, str) else _cell(v) for v in r) + "\n")
    return buf.getvalue()


def _metadata(command: str, **fields) -> dict:
    meta = {"tool": "cosetleak", "version": __version__, "command": command}
    meta.update({k: v for k, v in fields.items() if v is not None})
    return meta


def cmd_leak(args) -> str:
    A = read_matrix(args.matrix)
    ch = parse_channel_spec(args.channel)
    z = read_observation(args.observation, alphabet=ch.alphabet)
    if z.n != A.n:
        raise InputError(f"{args.observation}: observation has {z.n} symbols, matrix has {A.n} columns")
    method = args.method
    if method == "auto":
        method = "rank" if ch.kind == "bec" else "pgf"
    if method == "rank" and ch.kind != "bec":
        raise InputError("--method rank requires a BEC channel")
    if args.emit_posterior and method != "pgf":
        raise InputError("--emit-posterior requires --method pgf")
    meta = _metadata("leak", m=A.m, n=A.n, channel=args.channel, method=method)
    if method == "rank":
        leak = float(bec_leakage_rank(A, z))
        extra = {"leakage_bits": leak, "entropy_bits": A.m - leak}
        return render(args.format, meta, extra=extra)
    table = posterior_given_observation(A, ch, z, max_m=args.max_m)
    res = table.leakage()
    extra = {"leakage_bits": res.leakage_bits, "entropy_bits": res.entropy_bits}
    if not args.emit_posterior:
        return render(args.format, meta, extra=extra)
    rows = [
        ["".join(str((s >> i) & 1) for i in range(A.m)), float(p)]
        for s, p in enumerate(table.probs)
    ]
    return render(args.format, meta, ["s", "probability"], rows, extra)


def cmd_avg_bsc(args) -> str:
    A = read_matrix(args.matrix)
    res = bsc_average_leakage(A, args.delta, max_m=args.max_m)
    meta = _metadata("avg-bsc", m=A.m, n=A.n, channel=f"bsc:{args.delta!r}")
    extra = {"leakage_bits": res.leakage_bits, "entropy_bits": res.entropy_bits}
    return render(args.format, meta, extra=extra)


def cmd_ensemble(args) -> str:
    if not 0 < args.m < args.n:
        raise InputError(f"need 0 < m < n, got m={args.m}, n={args.n}")
    if not 0.0 <= args.epsilon <= 1.0:
        raise InputError(f"epsilon {args.epsilon} outside [0, 1]")
    pmf = average_leakage_pmf(args.m, args.n, args.epsilon)
    meta = _metadata("ensemble", m=args.m, n=args.n, channel=f"bec:{args.epsilon!r}")
    rows = [[ell, p] for ell, p in enumerate(pmf.probs)]
    return render(args.format, meta, ["ell", "probability"], rows)


def cmd_simulate(args) -> str:
    ch = parse_channel_spec(args.channel)
    matrix = None if args.matrix == "random" else read_matrix(args.matrix)
    if args.compare_ensemble and ch.kind != "bec":
        raise InputError("--compare-ensemble requires a BEC channel")
    cfg = SimulationConfig(
        m=args.m, n=args.n, channel=ch, samples=args.samples, seed=args.seed,
        matrix=matrix, resample=args.resample, workers=args.workers,
        shortcut=not args.full_transmit, max_m=args.max_m,
    )
    hist = simulate_leakage_histogram(cfg)
    meta = _metadata(
        "simulate", m=args.m, n=args.n, channel=args.channel, seed=args.seed,
        samples=args.samples, matrix=args.matrix,
        mode="resample" if args.resample else "fixed",
    )
    columns = ["ell", "count", "frequency"]
    freq = hist.frequencies()
    rows = [[ell, int(c), float(f)] for ell, (c, f) in enumerate(zip(hist.counts, freq))]
    extra = {}
    if args.compare_ensemble:
        pmf = average_leakage_pmf(args.m, args.n, ch.param)
        columns.append("ensemble")
        for row, p in zip(rows, pmf.probs):
            row.append(float(p))
        extra["total_variation"] = compare_histogram_to_pmf(hist, pmf).total_variation
    return render(args.format, meta, columns, rows, extra)


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"error: {WORKERS_ENV}={raw!r} is not an integer") from None
    return max(1, value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosetleak",
        description="Conditional information leakage of coset codes over binary-input channels.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--max-m", type=int, default=DEFAULT_MAX_M,
                       help="largest m for which a 2^m posterior table may be built")

    p = sub.add_parser("leak", help="leakage of one received word")
    p.add_argument("matrix", help="parity-check matrix file")
    p.add_argument("channel", help="bsc:<delta>, bec:<epsilon> or dmc:<path>")
    p.add_argument("observation", help="file of whitespace-separated received symbols")
    p.add_argument("--method", choices=("pgf", "rank", "auto"), default="auto")
    p.add_argument("--emit-posterior", action="store_true")
    common(p)
    p.set_defaults(func=cmd_leak)

    p = sub.add_parser("avg-bsc", help="average leakage m - H(AV) over a BSC")
    p.add_argument("matrix")
    p.add_argument("--delta", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_avg_bsc)

    p = sub.add_parser("ensemble", help="leakage PMF averaged over random matrices (BEC)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--epsilon", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("simulate", help="Monte Carlo histogram of the leakage")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--channel", required=True)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--matrix", default="random",
                   help="matrix file, or 'random' for a systematic matrix drawn from the seed")
    p.add_argument("--resample", action="store_true",
                   help="draw a fresh uniform matrix for every sample (BEC only)")
    p.add_argument("--full-transmit", action="store_true",
                   help="on a BEC, encode and transmit instead of sampling erasure patterns")
    p.add_argument("--workers", type=int, default=None,
                   help=f"worker threads (default: ${WORKERS_ENV} or 1)")
    p.add_argument("--compare-ensemble", action="store_true")
    common(p)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "workers", 0) is None:
        args.workers = _default_workers()
    try:
        out = args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
