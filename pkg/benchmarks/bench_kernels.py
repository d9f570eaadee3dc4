#!/usr/bin/env python3
"""Time the jitted kernel lane against the pure-numpy fallback.

Covers the three hot paths: model-table construction, forgetting columns,
and the bounded context scan.  Run from the repository root:

    python benchmarks/bench_kernels.py [--programs 400] [--repeat 3]
"""

import argparse
import random
import time

import numpy as np

from htforget import kernels
from htforget.forgetting import KINDS
from htforget.kernels import np_impl
from htforget.properties import GeneratorConfig, _scan_tables, build_corpus

try:
    from htforget.kernels import nb_impl
except ImportError:
    nb_impl = None


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_tables(lane, mask_batch, n):
    def run():
        for masks in mask_batch:
            lane.ht_table_1w(masks, n)
    return run


def bench_forget(lane, table_batch, n, vmask, clut):
    def run():
        for tab in table_batch:
            for kind in (0, 1, 2):
                lane.forget_table_1w(tab, n, vmask, kind, clut)
    return run


def bench_scan(lane, scan_jobs):
    def run():
        for tab_p, tab_f, rtab_full, rtab_red, clut, n, vmask in scan_jobs:
            lane.scan_forget_equiv(tab_p, rtab_full, tab_f, rtab_red,
                                   n, vmask, KINDS["sp"], clut, 2)
    return run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--programs", type=int, default=400)
    ap.add_argument("--atoms", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scan-instances", type=int, default=12)
    args = ap.parse_args()

    rng = random.Random(0)
    n = args.atoms
    cfg = GeneratorConfig(signature_size=n, max_rules=8, pad=False)
    sig = cfg.signature()
    from htforget.properties import random_program

    mask_batch = [kernels.rule_mask_array(sorted(random_program(cfg, rng).rules), sig)
                  for _ in range(args.programs)]
    table_batch = [np_impl.ht_table_1w(m, n) for m in mask_batch]
    vmask = (1 << (n // 2)) - 1
    clut = kernels.compress_lut(n, vmask)

    scan_cfg = GeneratorConfig(signature_size=4)
    scan_jobs = []
    for inst in build_corpus(1, args.scan_instances * 3, cfg=scan_cfg,
                             forget_size=2):
        if len(scan_jobs) >= args.scan_instances:
            break
        tab_p, tab_f, rtab_full, rtab_red, cl = _scan_tables(inst, "sp")
        scan_jobs.append((tab_p, tab_f, rtab_full, rtab_red, cl,
                          len(inst.ambient), inst.vmask()))

    lanes = [("numpy", np_impl)]
    if nb_impl is not None:
        # first call per kernel pays the compile; warm up outside the clock
        bench_tables(nb_impl, mask_batch[:2], n)()
        bench_forget(nb_impl, table_batch[:2], n, vmask, clut)()
        bench_scan(nb_impl, scan_jobs[:1])()
        lanes.append(("numba", nb_impl))
    else:
        print("numba unavailable; timing the numpy lane only")

    jobs = [
        (f"model tables      ({args.programs} programs, {n} atoms)",
         lambda lane: bench_tables(lane, mask_batch, n)),
        (f"forgetting columns ({args.programs} tables x 3 operators)",
         lambda lane: bench_forget(lane, table_batch, n, vmask, clut)),
        (f"context scans      ({len(scan_jobs)} instances, bound 2)",
         lambda lane: bench_scan(lane, scan_jobs)),
    ]

    width = max(len(name) for name, _ in jobs)
    print(f"{'kernel':<{width}}  " +
          "  ".join(f"{name:>10}" for name, _ in lanes) +
          ("     speedup" if len(lanes) == 2 else ""))
    for name, make in jobs:
        row = [best_of(args.repeat, make(lane)) for _, lane in lanes]
        line = f"{name:<{width}}  " + "  ".join(f"{t * 1e3:8.1f}ms" for t in row)
        if len(row) == 2 and row[1] > 0:
            line += f"  {row[0] / row[1]:9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
