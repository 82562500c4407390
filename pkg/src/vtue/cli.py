"""Command-line front end: sweeps, tables, simulations and figure datasets.

Curve output uses the columns ``n,tag,channel,method,p,value,stderr``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from . import bounds, exact_engine, hamming, heuristic, zchannel_sim
from .vt_core import weight_spectrum_v0

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME, EXIT_TRUNCATED = 0, 1, 2, 3

CURVE_HEADER = ["n", "tag", "channel", "method", "p", "value", "stderr"]

# reference Monte Carlo estimates for long codes, 50000 undetected errors per cell
TABLE1_NS = (36, 67, 127, 247, 509)
TABLE1_PS = tuple(round(0.05 * k, 2) for k in range(1, 20))
TABLE1_VALUES = {
    36: (0.00643, 0.01503, 0.02088, 0.02412, 0.02573, 0.02645, 0.02677, 0.02692, 0.02692, 0.02719,
         0.02729, 0.02751, 0.02785, 0.02932, 0.03402, 0.04683, 0.08159, 0.17323, 0.40865),
    67: (0.00742, 0.01261, 0.01426, 0.01463, 0.01469, 0.01465, 0.01467, 0.01479, 0.01474, 0.01469,
         0.01476, 0.01467, 0.01468, 0.01468, 0.01476, 0.01553, 0.01962, 0.04481, 0.19059),
    127: (0.00647, 0.00776, 0.00785, 0.00783, 0.00780, 0.00780, 0.00782, 0.00785, 0.00780, 0.00780,
          0.00781, 0.00780, 0.00781, 0.00780, 0.00779, 0.00782, 0.00793, 0.00928, 0.04674),
    247: (0.00402, 0.00403, 0.00404, 0.00403, 0.00403, 0.00404, 0.00403, 0.00404, 0.00403, 0.00402,
          0.00400, 0.00402, 0.00403, 0.00401, 0.00403, 0.00404, 0.00400, 0.00405, 0.00591),
    509: (0.00195, 0.00197, 0.00196, 0.00196, 0.00197, 0.00196, 0.00196, 0.00196, 0.00197, 0.00196,
          0.00195, 0.00196, 0.00196, 0.00197, 0.00196, 0.00195, 0.00197, 0.00196, 0.00195),
}


def table1_value(n: int, p: float) -> float:
    return TABLE1_VALUES[n][TABLE1_PS.index(round(p, 2))]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v) -> str:
    if v is None or v == "":
        return ""
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def parse_grid(spec: str) -> list[float]:
    try:
        start, end, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise UsageError(f"bad --p-grid {spec!r}; expected start:end:step") from None
    if step <= 0 or end < start or not (0 <= start and end <= 1):
        raise UsageError(f"bad --p-grid {spec!r}")
    count = int(math.floor((end - start) / step + 1e-9)) + 1
    return [round(start + k * step, 12) for k in range(count)]


DEFAULT_GRID = "0.01:0.99:0.01"


def _grid(args) -> list[float]:
    if args.p is not None:
        return [args.p]
    return parse_grid(args.p_grid or DEFAULT_GRID)


def _row(n, tag, channel, method, p, value, stderr=None) -> dict:
    return {"n": n, "tag": tag, "channel": channel, "method": method, "p": p, "value": value, "stderr": stderr}


def _render(rows: list[dict], fmt_name: str, header=CURVE_HEADER) -> str:
    if fmt_name == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(r.get(k)) for k in header])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_curve(args, rows: list[dict]):
    if args.p is not None and args.out is None and args.format == "csv" and len(rows) == 1:
        sys.stdout.write(fmt(rows[0]["value"]) + "\n")
        return
    _emit(_render(rows, args.format), args.out)


def _vt_exact_rows(n, g, grid, method="auto", tag=None):
    tag = tag if tag is not None else f"V{g}"
    use_fast = method == "exact-fast" or (method == "auto" and n > 30)
    if use_fast:
        return [_row(n, tag, "Z", "exact-fast", p, exact_engine.p_ue_exact_fast(n, g, p)) for p in grid]
    table = exact_engine.pair_table_dp(n, g)
    return [_row(n, tag, "Z", "exact", p, table.p_ue(p)) for p in grid]


def cmd_exact(args):
    _need(args, "n")
    rows = _vt_exact_rows(args.n, args.g, _grid(args), args.method)
    _emit_curve(args, rows)


def cmd_table(args):
    _need(args, "n")
    if args.method == "naive":
        table = exact_engine.pair_table_naive(args.n, args.g)
    else:
        table = exact_engine.pair_table_dp(args.n, args.g)
    text = table.to_json() + "\n" if args.format == "json" else table.to_csv()
    _emit(text, args.out)


def cmd_bound(args):
    _need(args, "n")
    rows = []
    for p in _grid(args):
        v = bounds.lower_bound(args.n, args.g, p, args.m, mirror=args.mirror)
        rows.append(_row(args.n, f"V{args.g}", "Z", f"bound-{args.m}", p, v))
    _emit_curve(args, rows)


def cmd_heuristic(args):
    _need(args, "n")
    rows = [_row(args.n, "V0", "Z", "heuristic", p, heuristic.p_ue_heuristic(args.n, p)) for p in _grid(args)]
    _emit_curve(args, rows)


def cmd_hybrid(args):
    _need(args, "n")
    rows = [
        _row(args.n, "V0", "Z", "hybrid", p, heuristic.p_ue_hybrid(args.n, p, args.jmax)) for p in _grid(args)
    ]
    _emit_curve(args, rows)


def _hamming_rows(r, channel, grid):
    n = (1 << r) - 1
    if channel.upper() == "BSC":
        return [_row(n, "H", "BSC", "hamming-closed", p, hamming.p_ue_bsc_hamming(r, p)) for p in grid]
    return [_row(n, "H", "Z", "exact-fast", p, hamming.p_ue_z_hamming(r, p)) for p in grid]


def cmd_hamming(args):
    _need(args, "r")
    _emit_curve(args, _hamming_rows(args.r, args.channel, _grid(args)))


def _simulate(args, n, g, p):
    cfg = zchannel_sim.SimConfig(
        n=n, g=g, p=p, target=args.target_ue, max_trials=args.max_trials,
        seed=args.seed, workers=args.workers, mode=args.mode,
    )
    return zchannel_sim.simulate_pue(cfg)


def cmd_simulate(args):
    _need(args, "n")
    if args.p is None:
        raise UsageError("simulate needs --p")
    rep = _simulate(args, args.n, args.g, args.p)
    if args.format == "json":
        _emit(rep.to_json() + "\n", args.out)
    else:
        _emit(rep.to_csv(), args.out)
    return EXIT_TRUNCATED if rep.truncated else EXIT_OK


def cmd_flat(args):
    if args.r is not None:
        report = hamming.bsc_flat_endpoints_hamming((1 << args.r) - 1).to_dict()
    else:
        _need(args, "n")
        report = heuristic.flat_region(args.n).to_dict()
    _emit(json.dumps(report, indent=2) + "\n", args.out)


def _need(args, name):
    if getattr(args, name) is None:
        raise UsageError(f"--{name} is required")


# figure datasets ---------------------------------------------------------

FIG_NS = (10, 15, 20, 25)


def _fig1(args, grid):
    return [r for n in FIG_NS for r in _vt_exact_rows(n, 0, grid)]


def _fig2(args, grid):
    return [r for n in FIG_NS for r in _vt_exact_rows(n, 1, grid)]


def _fig3(args, grid):
    rows = [_row(20, "V0prime", "Z", "exact", p, exact_engine.p_ue_v0prime(20, p)) for p in grid]
    return rows + _vt_exact_rows(20, 1, grid)


def _fig4(args, grid):
    rows = []
    for n in FIG_NS:
        rows += _vt_exact_rows(n, 0, grid)
        for m in (2, 3, 4):
            cells = bounds.bound_cells(n, 0, m, mirror=True)
            size = exact_engine.code_size(n, 0)
            rows += [_row(n, "V0", "Z", f"bound-{m}", p, bounds.evaluate_cells(cells, p, size)) for p in grid]
    return rows


def _fig5(args, grid):
    return _vt_exact_rows(15, 0, grid) + _hamming_rows(4, "Z", grid)


FIG6_HEADER = ["n", "i", "j", "exact", "heuristic_app", "heuristic_binomial"]


def _fig6(args, grid):
    n = 20
    table = exact_engine.pair_table_dp(n, 0)
    rows = []
    for label in ("i", 2, 3, 4):
        for i in range(2, n + 1):
            j = i if label == "i" else label
            if j > i:
                continue
            rows.append({
                "n": n, "i": i, "j": "i" if label == "i" else j,
                "exact": table[i, j],
                "heuristic_app": heuristic.approx_pair_count(n, i, j, heuristic.SPECTRUM),
                "heuristic_binomial": heuristic.approx_pair_count(n, i, j, heuristic.BINOMIAL),
            })
    return rows


def _fig7(args, grid):
    n = 25
    rows = _vt_exact_rows(n, 0, grid)
    sim_grid = parse_grid(args.sim_grid)
    for p in sim_grid:
        rep = _simulate(args, n, 0, p)
        rows.append(_row(n, "V0", "Z", "simulated", p, rep.estimate, rep.stderr))
    return rows


def _fig8(args, grid):
    n, r = 127, 7
    rows = [_row(n, "V0", "Z", "heuristic", p, heuristic.p_ue_heuristic(n, p)) for p in grid]
    rows += _vt_exact_rows(n, 0, grid, method="exact-fast")
    rows += _hamming_rows(r, "Z", grid)
    rows += _hamming_rows(r, "BSC", grid)
    return rows


def _parse_cells(spec: str | None):
    if not spec:
        return None
    cells = []
    for item in spec.split(","):
        parts = dict(kv.split("=", 1) for kv in item.strip().split(":"))
        try:
            n, p = int(parts["n"]), round(float(parts["p"]), 2)
        except (KeyError, ValueError):
            raise UsageError(f"bad cell {item!r}; expected n=<int>:p=<float>") from None
        if n not in TABLE1_VALUES or p not in TABLE1_PS:
            raise UsageError(f"cell {item!r} is not in the table")
        cells.append((n, p))
    return cells


def _table1(args, grid):
    cells = _parse_cells(args.cells)
    simulate = args.simulate or cells is not None
    if cells is None:
        cells = [(n, p) for n in TABLE1_NS for p in TABLE1_PS]
    rows = []
    truncated = False
    for n, p in cells:
        rows.append(_row(n, "V0", "Z", "reference", p, table1_value(n, p)))
        rows.append(_row(n, "V0", "Z", "exact-fast", p, exact_engine.p_ue_exact_fast(n, 0, p)))
        if simulate:
            rep = _simulate(args, n, 0, p)
            truncated |= rep.truncated
            rows.append(_row(n, "V0", "Z", "simulated", p, rep.estimate, rep.stderr))
    args._truncated = truncated
    return rows


TARGETS = {
    "fig1": _fig1, "fig2": _fig2, "fig3": _fig3, "fig4": _fig4, "fig5": _fig5,
    "fig6": _fig6, "fig7": _fig7, "fig8": _fig8, "table1": _table1,
}


def cmd_reproduce(args):
    args._truncated = False
    grid = parse_grid(args.p_grid or DEFAULT_GRID)
    rows = TARGETS[args.target](args, grid)
    header = FIG6_HEADER if args.target == "fig6" else CURVE_HEADER
    _emit(_render(rows, args.format, header), args.out)
    return EXIT_TRUNCATED if args._truncated else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--g", type=int, default=0)
    common.add_argument("--p", type=float)
    common.add_argument("--p-grid", help="start:end:step (default 0.01:0.99:0.01)")
    common.add_argument("--out", help="output file (written atomically)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    sim = argparse.ArgumentParser(add_help=False)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--target-ue", type=int, default=zchannel_sim.DEFAULT_TARGET)
    sim.add_argument("--max-trials", type=int, default=zchannel_sim.DEFAULT_MAX_TRIALS)
    sim.add_argument("--workers", type=int, default=1)
    sim.add_argument("--mode", choices=(zchannel_sim.UNIFORM, zchannel_sim.SYSTEMATIC), default=zchannel_sim.UNIFORM)

    parser = _Parser(prog="vtue", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", parents=[common], help="exact P_ue(V_g, p)")
    p.add_argument("--method", choices=("auto", "exact", "exact-fast"), default="auto")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("table", parents=[common], help="dump the pair-count table")
    p.add_argument("--method", choices=("dp", "naive"), default="dp")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("bound", parents=[common], help="truncated lower bound")
    p.add_argument("--m", type=int, choices=(2, 3, 4), default=4)
    p.add_argument("--mirror", action="store_true", help="add A_{i,i-j} and A_{i,i} cells (g=0)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("heuristic", parents=[common], help="closed-form heuristic")
    p.set_defaults(func=cmd_heuristic)

    p = sub.add_parser("hybrid", parents=[common], help="exact low-weight cells + heuristic")
    p.add_argument("--jmax", type=int, choices=(2, 3, 4), default=4)
    p.set_defaults(func=cmd_hybrid)

    p = sub.add_parser("hamming", parents=[common], help="Hamming code on BSC or Z-channel")
    p.add_argument("--r", type=int)
    p.add_argument("--channel", choices=("Z", "BSC", "z", "bsc"), default="BSC")
    p.set_defaults(func=cmd_hamming)

    p = sub.add_parser("simulate", parents=[common, sim], help="Monte Carlo P_ue")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("flat", parents=[common], help="flat-region endpoint report")
    p.add_argument("--r", type=int, help="report the Hamming BSC curve instead")
    p.set_defaults(func=cmd_flat)

    p = sub.add_parser("reproduce", parents=[common, sim], help="figure / table datasets")
    p.add_argument("target", choices=sorted(TARGETS))
    p.add_argument("--cells", help="table1 cells, e.g. n=127:p=0.5,n=36:p=0.95")
    p.add_argument("--simulate", action="store_true", help="table1: simulate every selected cell")
    p.add_argument("--sim-grid", default="0.1:0.9:0.1", help="fig7 simulated p values")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        print(f"vtue: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, IndexError, OverflowError, MemoryError) as exc:
        print(f"vtue: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
