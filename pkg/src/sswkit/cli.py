"""Command-line front end: counts, capacities, bounds, sweeps and cross-checks.

    sswkit count -L 3 -J 2 -W 2 --n 5
    sswkit capacity -L 8 -J 7 -W 7
    sswkit sweep --noiseless -L 6 -W 3 --J 1..6 --k 0..40
    sswkit sweep --noisy --channel bsc -L 3 -J 1 -W 2 --grid 50
    sswkit verify --L-max 8 --n-max 20

Exit status is 0 on success, 1 when a check fails or an invariant breaks, and
2 for a bad configuration.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .core import SswParams, brute_force_counts
from .counting import METHODS, count, count_series, resolve_method
from .errors import InternalConsistencyError, NoConvergence, SswError
from .matrixfsm import TransitionMatrix, build_skip_matrix, count_fsm
from .noisy import BEC, BSC, Channel, bound_report, channel_grid
from .spectral import capacity, log2_int

NOISELESS_HEADER = ["L", "J", "W", "n", "rate", "capacity"]
NOISY_HEADER = ["L", "J", "W", "channel", "param", "lower_mgl", "lower_zw", "upper"]


class ConfigError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """'3' -> [3], '1..6' -> [1..6] inclusive, '7,8' -> [7, 8]; pieces may be mixed."""
    out: list[int] = []
    try:
        for piece in text.split(","):
            piece = piece.strip()
            if ".." in piece:
                lo, hi = piece.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(piece))
    except ValueError:
        raise ConfigError(f"bad range {text!r}; use forms like 3, 1..6 or 7,8") from None
    if not out:
        raise ConfigError(f"empty range {text!r}")
    return sorted(set(out))


def max_workers() -> int:
    raw = os.environ.get("SSWKIT_THREADS")
    cap = os.cpu_count() or 1
    if raw:
        try:
            cap = max(1, int(raw))
        except ValueError:
            raise ConfigError(f"SSWKIT_THREADS must be an integer, got {raw!r}") from None
    return cap


def fan_out(fn, jobs: list) -> list:
    """Map ``fn`` over ``jobs``, in a process pool when more than one worker is allowed."""
    workers = min(max_workers(), len(jobs))
    if workers <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


# --- output ---------------------------------------------------------------------------

def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def _json_value(x):
    # floats go through the same 12-digit rendering as CSV so both are stable
    if isinstance(x, float):
        return float(format(x, ".12g"))
    return x


def render(header: list[str], rows: list[list], fmt_name: str, meta: dict) -> str:
    if fmt_name == "json":
        records = [{k: _json_value(v) for k, v in zip(header, r)} for r in rows]
        return json.dumps({"records": records, "meta": meta}, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(x) for x in r])
    return buf.getvalue()


def emit(text: str, path: str | None):
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _meta(args, started: float) -> dict:
    config = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "output", "timings", "corrupt", "started")}
    meta = {"version": __version__, "config": config}
    if args.timings:
        meta["timings"] = {"seconds": round(time.perf_counter() - started, 6)}
    return meta


def _params(args) -> SswParams:
    return SswParams(args.L, args.J, args.W)


# --- commands -------------------------------------------------------------------------

def cmd_count(args) -> int:
    p = _params(args)
    if (args.n is None) == (args.k is None):
        raise ConfigError("give exactly one of --n or --k")
    n = args.n if args.n is not None else args.k * p.J
    method = resolve_method(p, args.method)
    c = count(p, n, method)
    if args.format == "text":
        print(c)
    else:
        emit(render(["n", "method", "count"], [[n, method, c]], args.format,
                    _meta(args, args.started)), args.output)
    return 0


def cmd_capacity(args) -> int:
    p = _params(args)
    est = capacity(p, args.method)
    if args.format == "text":
        flag = " (reducible FSM)" if est.reducible else ""
        print(f"{fmt(est.value)}  lambda={fmt(est.lam)}  method={est.method}{flag}")
    else:
        rows = [[p.L, p.J, p.W, est.method, est.lam, est.value, est.residual]]
        emit(render(["L", "J", "W", "method", "lambda", "capacity", "residual"], rows,
                    args.format, _meta(args, args.started)), args.output)
    return 0


def cmd_series(args) -> int:
    p = _params(args)
    series = count_series(p, args.k_max, args.method)
    rows = [[n, c, log2_int(c) / n] for n, c in series.items()]
    if args.format == "text":
        for n, c, r in rows:
            print(f"{n} {c} {fmt(r)}")
    else:
        emit(render(["n", "count", "rate"], rows, args.format, _meta(args, args.started)),
             args.output)
    return 0


def cmd_bounds(args) -> int:
    p = _params(args)
    ch = Channel(args.channel, args.param)
    rep = bound_report(p, ch, args.restarts, args.seed)
    row = [p.L, p.J, p.W, ch.kind, ch.param, rep.lower_mgl, rep.lower_zw, rep.upper]
    fmt_name = "csv" if args.format == "text" else args.format
    emit(render(NOISY_HEADER, [row], fmt_name, _meta(args, args.started)), args.output)
    return 0


def _noiseless_rows(job):
    L, J, W, ks = job
    p = SswParams(L, J, W)
    cap = capacity(p, "auto").value
    series = count_series(p, max(ks))
    return [[L, J, W, n, log2_int(series[n]) / n, cap]
            for n in (L + k * J for k in ks)]


def _noisy_row(job):
    L, J, W, kind, x, restarts, seed, cap = job
    rep = bound_report(SswParams(L, J, W), Channel(kind, x), restarts, seed, cap)
    return [L, J, W, kind, x, rep.lower_mgl, rep.lower_zw, rep.upper]


def cmd_sweep(args) -> int:
    Ls = parse_range(args.L_range) if args.L_range else [args.L]
    Js = parse_range(args.J_range) if args.J_range else [args.J]
    Ws = parse_range(args.W_range) if args.W_range else [args.W]
    if None in Ls or None in Js or None in Ws:
        raise ConfigError("sweep needs L, J and W (as -L/-J/-W or --L/--J/--W ranges)")
    triples = []
    for L in Ls:
        for J in Js:
            for W in Ws:
                if 1 <= J <= L and 0 <= W <= L:
                    triples.append((L, J, W))
    if not triples:
        raise ConfigError("the sweep grid has no valid (L, J, W) triple")
    if args.noisy:
        if args.channel is None:
            raise ConfigError("--noisy needs --channel bsc|bec")
        caps = dict(zip(triples, fan_out(_capacity_of, triples)))
        jobs = [(L, J, W, args.channel, x, args.restarts, args.seed, caps[(L, J, W)])
                for (L, J, W) in triples for x in channel_grid(args.channel, args.grid)]
        rows = fan_out(_noisy_row, jobs)
        header = NOISY_HEADER
    else:
        ks = parse_range(args.k)
        if ks[0] < 0:
            raise ConfigError("--k values must be >= 0")
        rows = [r for chunk in fan_out(_noiseless_rows, [t + (ks,) for t in triples])
                for r in chunk]
        header = NOISELESS_HEADER
    rows.sort()
    emit(render(header, rows, args.format if args.format != "text" else "csv",
                _meta(args, args.started)), args.output)
    return 0


def _capacity_of(t):
    return capacity(SswParams(*t), "auto").value


def _corrupted_fsm(p: SswParams):
    space, m = build_skip_matrix(p)
    entries = dict(m.entries)
    first = min(entries)
    entries[first] += 1
    return space, TransitionMatrix.from_entries(m.dim, entries)


def verify_grid(L_max: int, n_max: int, aligned_only: bool = False,
                corrupt: bool = False) -> tuple[int, list[str]]:
    """Compare every method with the oracle; returns (instances, mismatch lines)."""
    problems = []
    instances = 0
    for L in range(1, L_max + 1):
        for J in range(1, L + 1):
            if aligned_only and L % J:
                continue
            for W in range(L + 1):
                if n_max < L:
                    continue
                p = SswParams(L, J, W)
                k_max = (n_max - L) // J
                truth = brute_force_counts(p, n_max)
                methods = ["fsm", "gj", "reduced", "rgj"] if p.aligned else ["fsm"]
                instances += 1
                for method in methods:
                    if method == "fsm" and corrupt:
                        got = count_fsm(p, k_max, fsm=_corrupted_fsm(p))
                    else:
                        got = count_series(p, k_max, method)
                    for n, c in got.items():
                        if truth.get(n, 0) != c:
                            problems.append(f"{p} n={n} {method}={c} oracle={truth.get(n, 0)}")
    return instances, problems


def cmd_verify(args) -> int:
    instances, problems = verify_grid(args.L_max, args.n_max, args.aligned_only, args.corrupt)
    for line in problems:
        print(line)
    print(f"{len(problems)} mismatches ({instances} instances)")
    return 1 if problems else 0


# --- parser ---------------------------------------------------------------------------

def _add_params(sp, required=True):
    sp.add_argument("-L", type=int, required=required, help="window length")
    sp.add_argument("-J", type=int, required=required, help="skip length")
    sp.add_argument("-W", type=int, required=required, help="minimum window weight")


def _add_output(sp, default="text"):
    sp.add_argument("--format", choices=["text", "csv", "json"], default=default)
    sp.add_argument("--output", "-o", help="write to this file instead of stdout")
    sp.add_argument("--timings", action="store_true", help="add wall-clock time to JSON meta")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sswkit", description=__doc__.split("\n")[0])
    ap.add_argument("--version", action="version", version=f"sswkit {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="exact number of SSW sequences of one length")
    _add_params(sp)
    sp.add_argument("--n", type=int, help="sequence length")
    sp.add_argument("--k", type=int, help="length in blocks, n = kJ")
    sp.add_argument("--method", choices=("auto",) + METHODS, default="auto")
    _add_output(sp)
    sp.set_defaults(func=cmd_count)

    sp = sub.add_parser("capacity", help="noiseless capacity log2(lambda)/J")
    _add_params(sp)
    sp.add_argument("--method", choices=["auto", "fsm", "reduced"], default="fsm")
    _add_output(sp)
    sp.set_defaults(func=cmd_capacity)

    sp = sub.add_parser("series", help="counts and rates at n = L + kJ, k = 0..k-max")
    _add_params(sp)
    sp.add_argument("--k-max", type=int, default=10)
    sp.add_argument("--method", choices=("auto",) + METHODS, default="auto")
    _add_output(sp)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("bounds", help="noisy capacity bounds for one channel")
    _add_params(sp)
    sp.add_argument("--channel", choices=[BSC, BEC], required=True)
    sp.add_argument("--param", type=float, required=True, help="crossover or erasure probability")
    sp.add_argument("--restarts", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)
    _add_output(sp, "csv")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("sweep", help="rate/capacity or noisy-bound tables over a grid")
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--noiseless", action="store_true")
    mode.add_argument("--noisy", action="store_true")
    _add_params(sp, required=False)
    sp.add_argument("--L", dest="L_range", help="range of L, e.g. 4..8")
    sp.add_argument("--J", dest="J_range", help="range of J, e.g. 1..6 or 7,8")
    sp.add_argument("--W", dest="W_range", help="range of W")
    sp.add_argument("--k", default="0..20", help="block offsets, n = L + kJ")
    sp.add_argument("--channel", choices=[BSC, BEC])
    sp.add_argument("--grid", type=int, default=50, help="channel parameter points")
    sp.add_argument("--restarts", type=int, default=8)
    sp.add_argument("--seed", type=int, default=0)
    _add_output(sp, "csv")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="cross-check every counting method against brute force")
    sp.add_argument("--L-max", type=int, default=8)
    sp.add_argument("--n-max", type=int, default=20)
    sp.add_argument("--aligned-only", action="store_true")
    sp.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_verify, format="text", output=None, timings=False)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args.started = time.perf_counter()
    try:
        return args.func(args)
    except (InternalConsistencyError, NoConvergence) as e:
        print(f"sswkit: {e}", file=sys.stderr)
        return 1
    except (ConfigError, SswError, ValueError) as e:
        print(f"sswkit: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
