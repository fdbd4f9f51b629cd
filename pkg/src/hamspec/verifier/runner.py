"""Audit registry and driver."""
from __future__ import annotations

import os
import time
from multiprocessing import get_context

from ..errors import CapacityError, ParameterError
from . import bipartite_audits as _b
from . import graph_audits as _g
from . import grids as _x
from .base import Audit
from .report import AuditReport, Mode, TheoremSpec

REGISTRY: dict[str, type[Audit]] = {
    cls.id: cls
    for cls in (
        _g.W11TPartOne, _g.W11TPartTwo, _g.W11Corollary, _g.Stability, _g.PetersenFacts,
        _b.BipClosureSpectral, _b.BipHamSpectral, _b.BipTraceableSpectral, _b.BipThetaClosure,
        _b.BipThetaHam, _b.AlmostBalancedTheta, _b.AlmostBalancedSpectral, _b.BipStability,
        _b.AugmentImplication, _b.ClosureContainsComplete, _b.ClosureSandwich,
        _x.FZeroRadius, _x.NearCompleteBounds, _x.FZeroRadiusLower, _x.FZeroSignless, _x.EdgeThreshold,
        _x.SemiregularOrder, _x.KelmansIncrease, _x.ZMinusEdge, _x.CatalogCrossCheck, _x.SpectralCorpus,
    )
}

GRID_IDS = ("PROP_31P", "COR_31C", "LEM_63L", "LEM_64L", "LEM_21L_EDGECOUNT")


def default_jobs() -> int:
    v = os.environ.get("HAMSPEC_JOBS", "1")
    try:
        return max(1, int(v))
    except ValueError:
        raise ParameterError(f"HAMSPEC_JOBS must be an integer, got {v!r}") from None


def make_audit(spec: TheoremSpec, mode, seed: int = 0) -> Audit:
    cls = REGISTRY.get(spec.id)
    if cls is None:
        raise ParameterError(f"no audit registered for {spec.id}")
    return cls(spec, Mode(mode), seed)


def _chunks(total: int, jobs: int) -> list[tuple[int, int]]:
    if total <= 0:
        return []
    parts = max(1, min(total, jobs * 4))
    step = -(-total // parts)
    return [(lo, min(total, lo + step)) for lo in range(0, total, step)]


def _work(args) -> AuditReport:
    spec, mode, seed, lo, hi = args
    aud = make_audit(spec, mode, seed)
    rep = AuditReport(spec, Mode(mode), seed)
    try:
        aud.run(lo, hi, rep)
    except CapacityError as exc:
        rep.capacity.append(f"indices {lo}..{hi - 1}: {exc}")
    return rep


def audit(spec: TheoremSpec, mode, budget: int | None = None, seed: int = 0, jobs: int | None = None) -> AuditReport:
    """Run one audit.  Parameter errors propagate; capacity problems land in
    ``report.capacity`` so the status becomes ``capacity``."""
    mode = Mode(mode)
    jobs = default_jobs() if jobs is None else max(1, int(jobs))
    t0 = time.perf_counter()
    aud = make_audit(spec, mode, seed)
    head = AuditReport(spec, mode, seed, budget)
    for n in aud.notes():
        head.note(n)
    try:
        size = aud.space_size()
    except CapacityError as exc:
        head.capacity.append(str(exc))
        head.elapsed = time.perf_counter() - t0
        return head
    if size < 0:
        size = aud.default_samples if budget is None else int(budget)
        head.note(f"sampled audit over {size} seeded samples (seed {seed})")
    elif budget is not None and budget < size:
        head.capacity.append(f"budget {budget} covers only {budget} of {size} items; the rest were not checked")
        size = int(budget)
    if mode == Mode.EXHAUSTIVE:
        head.note(f"exhaustive over the index range 0..{size - 1}")
    tasks = [(spec, mode, seed, lo, hi) for lo, hi in _chunks(size, jobs)]
    if jobs > 1 and len(tasks) > 1:
        with get_context("spawn").Pool(jobs) as pool:
            parts = list(pool.imap(_work, tasks))
    else:
        parts = [_work(t) for t in tasks]
    rep = head
    for p in parts:
        rep = rep.merge(p)
    rep.budget = budget
    rep.elapsed = time.perf_counter() - t0
    return rep


def inequality_audit(id: str, grid: dict | None = None, **kw) -> AuditReport:
    if id.upper() not in GRID_IDS:
        raise ParameterError(f"{id} is not an inequality grid; choose from {GRID_IDS}")
    return audit(TheoremSpec.of(id, **(grid or {})), Mode.GRID, **kw)


def sandwich_audit(params: dict, sample: int = 10_000, seed: int = 0, jobs: int | None = None,
                   mode=Mode.SAMPLED) -> AuditReport:
    return audit(TheoremSpec.of("THM_21T", **params), mode, budget=sample if Mode(mode) == Mode.SAMPLED else None,
                 seed=seed, jobs=jobs)
