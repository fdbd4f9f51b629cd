"""The numba and pure-numpy kernels must agree bit for bit (floats to 1e-9)."""
from __future__ import annotations

import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamspec import _accel
from hamspec.graph import SimpleGraph
from hamspec.kernels import closure as kc
from hamspec.kernels import enumerate as ke
from hamspec.kernels import hamilton as kh
from hamspec.kernels import power as kp
from hamspec.verifier.enumeration import pairs

needs_numba = pytest.mark.skipif(not _accel.HAVE_NUMBA, reason="numba backend not active")


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    ps = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(ps), max_size=len(ps)))
    return SimpleGraph.from_edges(n, [e for e, b in zip(ps, bits) if b])


@needs_numba
@settings(max_examples=60, deadline=None)
@given(graphs())
def test_hamilton_tables_agree(g):
    adj = g.adj_array()
    ca, ea = kh._cover_table_numba(adj)
    cb, eb = kh._cover_table_numpy(adj)
    assert np.array_equal(ca, cb) and np.array_equal(ea, eb)
    assert np.array_equal(kh._cycle_table_numba(adj), kh._cycle_table_numpy(adj))
    assert np.array_equal(kh._paths_from_numba(adj, 0), kh._paths_from_numpy(adj, 0))


@needs_numba
@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=24), st.integers(0, 40))
def test_closure_rounds_agree(g, k):
    a = g.matrix().astype(np.int64)
    allowed = ~np.eye(g.n, dtype=np.bool_)
    ra = kc._closure_rounds_numba(a, allowed, k)
    rb = kc._closure_rounds_numpy(a, allowed, k)
    for x, y in zip(ra, rb):
        assert np.array_equal(np.asarray(x), np.asarray(y))


@needs_numba
@settings(max_examples=30, deadline=None)
@given(st.integers(2, 7), st.integers(0, 2**20))
def test_mask_degrees_agree(n, start):
    u, v = pairs(n)
    top = 1 << len(u)
    masks = np.arange(start % top, min(top, start % top + 500), dtype=np.int64)
    assert np.array_equal(ke._mask_degrees_numba(masks, u, v, n), ke._mask_degrees_numpy(masks, u, v, n))


@needs_numba
@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=16), st.sampled_from([0.0, 0.5, 1.0]))
def test_power_iteration_agrees(g, alpha):
    if g.m == 0:
        return
    a = g.matrix().astype(np.float64)
    d = a.sum(1)
    M = a + alpha * np.diag(d)
    shift = (1 + alpha) * float(d.max())
    x0 = np.ones(g.n)
    va, ra, ia, _ = kp._power_dominant_numba(M, shift, x0, 1e-10, 5000)
    vb, rb, ib, _ = kp._power_dominant_numpy(M, shift, x0, 1e-10, 5000)
    assert ia > 0 and ib > 0
    assert va == pytest.approx(vb, abs=1e-9)
    assert va == pytest.approx(float(np.linalg.eigvalsh(M)[-1]), abs=1e-8)


def test_env_flag_selects_numpy():
    env = dict(os.environ, HAMSPEC_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "from hamspec._accel import backend; print(backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_numpy_backend_audit_matches():
    args = ["check-theorem", "--id", "STAB_W01P", "--params", "n=5,property=ham,q=0", "--mode", "EXHAUSTIVE"]
    reports = []
    for flag in ("", "1"):
        env = dict(os.environ, HAMSPEC_DISABLE_NUMBA=flag)
        p = subprocess.run([sys.executable, "-m", "hamspec.cli", *args], env=env, capture_output=True, text=True)
        assert p.returncode == 0, p.stderr
        rep = json.loads(p.stdout.strip().splitlines()[-1])
        rep.pop("elapsed")
        reports.append(rep)
    assert reports[0] == reports[1]
