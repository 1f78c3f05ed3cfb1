"""Batch experiment runner.

Subcommands: simulate, attack, availability, mining, storage-cost,
coverage. Every run is a pure function of (config, seed): records are
emitted as sorted JSON lines (to --out or stdout) followed by an
aligned summary table on stdout. ZONED_LEDGER_THREADS caps the worker
pool used to fan independent sweep points out (0 = auto); the byte
output never depends on it.
"""

import argparse
import json
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor

from . import adversary, mining, zones
from .errors import ConfigurationError
from .ledger import ChainConfig, ChainState, storage_cost_formula
from .recovery import recover_block

DEFAULT_FRACTIONS = [2**-4, 2**-6, 2**-8, 2**-10, 2**-12]


def _worker_count() -> int:
    raw = os.environ.get("ZONED_LEDGER_THREADS", "0")
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"ZONED_LEDGER_THREADS must be an integer, got {raw!r}")
    if value < 0:
        raise ConfigurationError("ZONED_LEDGER_THREADS must be >= 0")
    return value or min(8, os.cpu_count() or 1)


def _fan_out(fn, items):
    workers = _worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _emit(records, summary_rows, out_path):
    lines = [json.dumps(r, sort_keys=True) for r in sorted(
        records, key=lambda r: json.dumps(r, sort_keys=True))]
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for line in lines:
            print(line)
    if summary_rows:
        widths = [max(len(str(row[i])) for row in summary_rows)
                  for i in range(len(summary_rows[0]))]
        for row in summary_rows:
            print("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip())


def cmd_simulate(args) -> int:
    cfg = ChainConfig(n=args.n, m=args.m, block_bytes=args.block_bytes,
                      hash_width=args.hash_width, seed=args.seed)
    state = ChainState(cfg)
    rng = random.Random(args.seed)
    for _ in range(args.blocks):
        state.commit_block(rng.randbytes(cfg.block_bytes), rng)
    records = []
    all_ok = True
    for t in range(args.blocks):
        report = recover_block(state, t, scan_limit=args.scan_limit)
        ok = report.recovered == state.payloads[t]
        all_ok &= ok
        records.append({
            "kind": "slot_audit", "slot": t, "recovered_ok": ok,
            "unanimous": report.unanimous, "hash": state.hashes[t + 1],
        })
    _emit(records, [
        ("blocks", "n", "m", "all_recovered"),
        (args.blocks, args.n, args.m, all_ok),
    ], args.out)
    return 0 if all_ok else 1


def cmd_attack(args) -> int:
    def run(c):
        s = adversary.zone_corruption_trial(args.m, c, args.trials, args.seed + c)
        return {
            "kind": "zone_corruption", "m": args.m, "c": c,
            "trials": s.trials, "successes": s.successes,
            "estimate": s.estimate, "bound": s.bound,
            "sigma": s.sigma, "seed": s.seed,
        }
    records = _fan_out(run, list(range(1, args.m + 1)))
    rows = [("c", "estimate", "bound", "within_bound")]
    for r in sorted(records, key=lambda r: r["c"]):
        rows.append((r["c"], f"{r['estimate']:.5f}", f"{r['bound']:.5f}",
                     r["estimate"] - 3 * r["sigma"] <= r["bound"]))
    _emit(records, rows, args.out)
    return 0


def cmd_availability(args) -> int:
    s = adversary.availability_trial(args.n, args.m, args.rho, args.trials, args.seed)
    union, failure = adversary.availability_bounds(args.n, args.m, args.rho)
    record = {
        "kind": "availability", "n": args.n, "m": args.m, "rho": args.rho,
        "trials": s.trials, "successes": s.successes, "estimate": s.estimate,
        "closed_form": s.bound, "union_bound": union,
        "failure_bound": failure, "sigma": s.sigma, "seed": s.seed,
    }
    _emit([record], [
        ("n", "m", "rho", "estimate", "closed_form"),
        (args.n, args.m, args.rho, f"{s.estimate:.5f}", f"{s.bound:.5f}"),
    ], args.out)
    return 0


def cmd_mining(args) -> int:
    fractions = (DEFAULT_FRACTIONS if args.target_fraction is None
                 else [args.target_fraction])

    def run(item):
        i, fraction = item
        target = mining.DifficultyTarget(args.hash_width, fraction)
        stats = mining.mining_trials(target, args.nonce_bits, args.trials,
                                     args.seed + i)
        stats["kind"] = "mining"
        return stats
    records = _fan_out(run, list(enumerate(fractions)))
    rows = [("fraction", "runs", "mean_tries", "law")]
    for r in sorted(records, key=lambda r: -r["target_fraction"]):
        rows.append((f"{r['target_fraction']:.8f}", r["runs"],
                     f"{r['mean_tries']:.2f}", f"{r['law']:.2f}"))
    _emit(records, rows, args.out)
    return 0


def cmd_storage_cost(args) -> int:
    baseline, distributed, gain = storage_cost_formula(args.q_bits, args.p_bits, args.m)
    record = {
        "kind": "storage_cost", "q_bits": args.q_bits, "p_bits": args.p_bits,
        "m": args.m, "baseline_bits": baseline,
        "distributed_bits": distributed, "gain_bits": gain,
    }
    _emit([record], [
        ("q_bits", "p_bits", "m", "baseline", "distributed", "gain"),
        (args.q_bits, args.p_bits, args.m,
         f"{baseline:g}", f"{distributed:g}", f"{gain:g}"),
    ], args.out)
    return 0


def cmd_coverage(args) -> int:
    lay = zones.layout(args.n, args.m)
    period = zones.coverage_slots(args.n, args.m)
    met = [[False] * args.n for _ in range(args.n)]
    for t in range(period):
        for zone in zones.allocation_at(lay, t):
            for a in zone:
                for b in zone:
                    met[a][b] = True
    all_pairs = all(met[a][b] for a in range(args.n) for b in range(args.n))
    record = {
        "kind": "coverage", "n": args.n, "m": args.m, "period": period,
        "all_pairs_covered": all_pairs,
        "allocation_count": str(zones.allocation_count(args.n, args.m)),
    }
    _emit([record], [
        ("n", "m", "period", "all_pairs_covered"),
        (args.n, args.m, period, all_pairs),
    ], args.out)
    return 0 if all_pairs else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zoned-ledger",
        description="Zone-coded distributed ledger storage experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **flags):
        p = sub.add_parser(name)
        p.add_argument("--config", type=str, default=None,
                       help="JSON file of defaults; explicit flags override")
        p.add_argument("--seed", type=int, default=None, required=False)
        p.add_argument("--out", type=str, default=None)
        defaults = {}
        for flag, (ftype, default) in flags.items():
            attr = flag.replace("-", "_")
            p.add_argument(f"--{flag}", type=ftype, default=None, dest=attr)
            defaults[attr] = default
        p.set_defaults(fn=fn, _defaults=defaults)
        return p

    add("simulate", cmd_simulate, n=(int, 24), m=(int, 4),
        **{"block-bytes": (int, 48)}, blocks=(int, 20),
        **{"hash-width": (int, 64), "scan-limit": (int, None)})
    add("attack", cmd_attack, m=(int, 6), trials=(int, 20000))
    add("availability", cmd_availability, n=(int, 64), m=(int, 4),
        rho=(float, 0.1), trials=(int, 100000))
    add("mining", cmd_mining, trials=(int, 2000),
        **{"target-fraction": (float, None), "hash-width": (int, 64),
           "nonce-bits": (int, 32)})
    add("storage-cost", cmd_storage_cost, m=(int, 8),
        **{"q-bits": (int, 1024), "p-bits": (int, 256)})
    add("coverage", cmd_coverage, n=(int, 24), m=(int, 4))
    return parser


def _apply_config_file(args) -> None:
    if not args.config:
        return
    with open(args.config, encoding="utf-8") as fh:
        defaults = json.load(fh)
    for key, value in defaults.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _apply_config_file(args)
        for attr, default in getattr(args, "_defaults", {}).items():
            if getattr(args, attr) is None:
                setattr(args, attr, default)
        if args.seed is None:
            raise ConfigurationError("--seed is required (reproducibility contract)")
        return args.fn(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
