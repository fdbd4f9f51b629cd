"""Numba versus pure-numpy kernel timings.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--quick]

Part one times each kernel pair in-process on identical inputs (after a
warm-up call, so numba compile time is excluded) and checks the outputs
agree.  Part two runs one small audit end to end in two subprocesses, one
with HAMSPEC_DISABLE_NUMBA=1, and compares wall time and report content.
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from hamspec.families import build_F0
from hamspec.graph import petersen_graph
from hamspec.kernels import closure as kc
from hamspec.kernels import enumerate as ke
from hamspec.kernels import hamilton as kh
from hamspec.kernels import power as kp
from hamspec.verifier.enumeration import pairs
from hamspec.verifier.sampling import random_graph


def _best(fn, repeat: int) -> float:
    out = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t)
    return min(out)


def _same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) and a.dtype.kind == "f":
        return np.allclose(a, b, atol=1e-9)
    if isinstance(a, (float, np.floating)):
        return abs(a - b) <= 1e-9 * max(1.0, abs(a))
    return np.array_equal(np.asarray(a), np.asarray(b))


def kernel_cases(quick: bool):
    rng = np.random.default_rng(7)
    n_dp = 12 if quick else 16
    g = random_graph(rng, n_dp, 0.45)
    adj = g.adj_array()
    pet = petersen_graph().adj_array()
    n_en = 7
    pu, pv = pairs(n_en)
    masks = np.arange(0, 1 << 16, dtype=np.int64)
    h = random_graph(rng, 24, 0.4)
    allowed = np.ones((24, 24), dtype=np.bool_)
    np.fill_diagonal(allowed, False)
    a24 = h.matrix().astype(np.float64)
    M = build_F0(16, 2, 0).as_simple().matrix().astype(np.float64)
    x0 = np.ones(M.shape[0])
    return [
        (f"cover_table n={n_dp}", kh._cover_table_numba, kh._cover_table_numpy, (adj,)),
        (f"cycle_table n={n_dp}", kh._cycle_table_numba, kh._cycle_table_numpy, (adj,)),
        ("paths_from petersen", kh._paths_from_numba, kh._paths_from_numpy, (pet, 0)),
        ("mask_degrees 2^16 masks n=7", ke._mask_degrees_numba, ke._mask_degrees_numpy, (masks, pu, pv, n_en)),
        ("closure_rounds n=24", kc._closure_rounds_numba, kc._closure_rounds_numpy,
         (a24.astype(np.int64), allowed, 24)),
        ("power_dominant F0(16,2,0)", kp._power_dominant_numba, kp._power_dominant_numpy,
         (M, float(M.sum(1).max()), x0, 1e-10, 5000)),
    ]


def run_kernels(repeat: int, quick: bool) -> list[dict]:
    rows = []
    for name, fast, slow, args in kernel_cases(quick):
        ra = fast(*args)  # warm-up and compile
        rb = slow(*args)
        ta = _best(lambda: fast(*args), repeat)
        tb = _best(lambda: slow(*args), repeat)
        rows.append({"kernel": name, "numba_s": ta, "numpy_s": tb, "speedup": tb / ta if ta else float("inf"),
                     "agree": bool(_same(ra, rb))})
    return rows


AUDIT = ["check-theorem", "--id", "STAB_W01P", "--params", "n=6,property=traceable,q=0", "--mode", "EXHAUSTIVE"]


def run_end_to_end() -> list[dict]:
    rows, reports = [], {}
    for label, flag in (("numba", ""), ("numpy", "1")):
        env = dict(os.environ, HAMSPEC_DISABLE_NUMBA=flag)
        t = time.perf_counter()
        proc = subprocess.run([sys.executable, "-m", "hamspec.cli", *AUDIT], env=env, capture_output=True,
                              text=True, check=False)
        dt = time.perf_counter() - t
        rep = json.loads(proc.stdout.strip().splitlines()[-1])
        rep.pop("elapsed", None)
        reports[label] = rep
        rows.append({"backend": label, "wall_s": dt, "status": rep["status"], "exit": proc.returncode})
    rows.append({"backend": "reports identical", "value": reports["numba"] == reports["numpy"]})
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--quick", action="store_true", help="smaller inputs, skip the end-to-end run")
    args = ap.parse_args(argv)
    ok = True
    print(f"{'kernel':34s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}  agree")
    for r in run_kernels(args.repeat, args.quick):
        ok &= r["agree"]
        print(f"{r['kernel']:34s} {r['numba_s']:10.5f} {r['numpy_s']:10.5f} {r['speedup']:8.1f}  {r['agree']}")
    if not args.quick:
        print()
        for r in run_end_to_end():
            if "value" in r:
                ok &= r["value"]
                print(f"{r['backend']}: {r['value']}")
            else:
                print(f"{r['backend']:6s} wall {r['wall_s']:.2f} s  status {r['status']}  exit {r['exit']}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
