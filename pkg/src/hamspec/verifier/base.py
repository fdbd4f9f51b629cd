"""Shared machinery for the audits.

An audit walks an index space (edge masks, sample numbers or a fixed list
of extremal graphs).  ``run(lo, hi, rep)`` handles one chunk of it and
writes into a private report; the runner merges chunk reports in index
order, so serial and parallel runs agree.
"""
from __future__ import annotations

import math

import numpy as np

from ..closure import bipartite_closure, k_closure
from ..errors import CapacityError, ParameterError
from ..graph import BipartiteGraph, SimpleGraph, graph6_encode, min_degree
from ..kernels.enumerate import mask_degrees
from .enumeration import (
    CHUNK,
    MAX_BIP_CELLS,
    MAX_ENUM_N,
    bip_pairs,
    bipartite_from_mask,
    graph_count,
    graph_from_mask,
    masks_with_min_degree,
)
from .report import AuditReport, Mode, TheoremSpec, compare
from .sampling import rng_for


def describe(g) -> dict:
    if isinstance(g, BipartiteGraph):
        return {"graph6": graph6_encode(g.as_simple()), "parts": [g.nL, g.nR]}
    return {"graph6": graph6_encode(g)}


def closure_complete(g: SimpleGraph, k: int) -> bool:
    h, _ = k_closure(g, k)
    return h.m == g.n * (g.n - 1) // 2


def bip_closure(g: BipartiteGraph, k: int) -> BipartiteGraph:
    return bipartite_closure(g, k)[0]


def delta(g) -> int:
    s = g.as_simple() if isinstance(g, BipartiteGraph) else g
    return min_degree(s) if s.n else 0


def need(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


def as_int(spec: TheoremSpec, name: str, default=None) -> int:
    v = spec.get(name, default)
    if v is None:
        raise ParameterError(f"{spec.id} needs parameter {name!r}")
    if isinstance(v, float) and not v.is_integer():
        raise ParameterError(f"{name} must be an integer")
    return int(v)


def as_alphas(spec: TheoremSpec, default=(0.0, 0.5, 1.0)) -> tuple[float, ...]:
    v = spec.get("alpha", spec.get("alphas", default))
    if isinstance(v, (int, float)):
        v = (v,)
    out = tuple(float(a) for a in v)
    need(len(out) > 0 and all(0.0 <= a <= 1.0 for a in out), "alpha values must lie in [0, 1]")
    return out


class _Tracked:
    """Spec view that remembers which parameters were read."""

    def __init__(self, spec: TheoremSpec):
        self._spec = spec
        self.read: set[str] = set()
        self.id = spec.id
        self.params = spec.params

    def get(self, name: str, default=None):
        self.read.add(name)
        return self._spec.get(name, default)

    def require(self, *names: str):
        self.read.update(names)
        return self._spec.require(*names)

    def as_dict(self) -> dict:
        return self._spec.as_dict()


class Audit:
    """Base audit; subclasses set ``modes`` and fill in the hooks they use."""

    id = ""
    modes: tuple[Mode, ...] = ()
    default_samples = 1000
    universe = "graphs"  # or "bipartite"

    def __init__(self, spec: TheoremSpec, mode: Mode, seed: int = 0):
        self.spec = _Tracked(spec)
        self.mode = Mode(mode)
        self.seed = int(seed)
        if self.mode not in self.modes:
            raise ParameterError(f"{spec.id} supports modes {[m.value for m in self.modes]}, not {self.mode.value}")
        self.min_deg = 0
        self.allow_n8 = bool(self.spec.get("allow_n8", False))
        self.setup()
        unknown = sorted({k for k, _ in spec.params} - self.spec.read)
        if unknown:
            raise ParameterError(f"{spec.id} does not take parameter(s) {', '.join(unknown)}")

    # -- hooks -------------------------------------------------------------------

    def setup(self):
        pass

    def notes(self) -> list[str]:
        return []

    def hypothesis(self, g) -> tuple[bool, bool, dict]:
        """``(holds, borderline, info)``."""
        return True, False, {}

    def conclusion(self, g) -> tuple[bool, str, dict]:
        """``(holds, branch, diagnostics)``."""
        raise NotImplementedError

    def sample(self, rng: np.random.Generator, index: int):
        raise ParameterError(f"{self.id} has no sampler")

    def extremal_items(self) -> list:
        raise ParameterError(f"{self.id} has no extremal list")

    def good_branch(self, g) -> tuple[bool, dict]:
        raise NotImplementedError

    def enum_shape(self) -> tuple[int, ...]:
        raise CapacityError(f"{self.id} has no exhaustive index space")

    # -- sizes ---------------------------------------------------------------------

    def space_size(self) -> int:
        if self.mode == Mode.EXHAUSTIVE:
            shape = self.enum_shape()
            if self.universe == "graphs":
                (n,) = shape
                if n > MAX_ENUM_N or (n == MAX_ENUM_N and not self.allow_n8):
                    raise CapacityError(f"exhaustive enumeration is capped at n <= {MAX_ENUM_N - 1}"
                                        f" (n = {MAX_ENUM_N} needs allow_n8), got n = {n}")
                return graph_count(n)
            nL, nR = shape
            if nL * nR > MAX_BIP_CELLS:
                raise CapacityError(f"bipartite enumeration is capped at nL*nR <= {MAX_BIP_CELLS}")
            return 1 << (nL * nR)
        if self.mode in (Mode.EXTREMAL, Mode.GRID):
            return len(self.extremal_items())
        return -1  # sampled: budget decides

    # -- execution -------------------------------------------------------------------

    def run(self, lo: int, hi: int, rep: AuditReport):
        if self.mode == Mode.EXHAUSTIVE:
            self._run_exhaustive(lo, hi, rep)
        elif self.mode == Mode.SAMPLED:
            for i in range(lo, hi):
                g, label = self.sample(rng_for(self.seed, i), i)
                self.visit(rep, g, {"sample": i, "kind": label})
        else:
            items = self.extremal_items()
            for i in range(lo, hi):
                self.run_item(rep, items[i], i)

    def _run_exhaustive(self, lo: int, hi: int, rep: AuditReport):
        shape = self.enum_shape()
        for start in range(lo, hi, CHUNK):
            end = min(hi, start + CHUNK)
            if self.universe == "graphs":
                (n,) = shape
                masks = masks_with_min_degree(n, self.min_deg, start, end)
            else:
                nL, nR = shape
                masks = np.arange(start, end, dtype=np.int64)
                if self.min_deg > 0:
                    bi, bj = bip_pairs(nL, nR)
                    deg = mask_degrees(masks, bi, bj, nL + nR)
                    masks = masks[deg.min(axis=1) >= self.min_deg]
            skipped = (end - start) - len(masks)
            rep.graphs_checked += skipped
            rep.hypothesis_misses += skipped
            for m in masks.tolist():
                g = graph_from_mask(shape[0], m) if self.universe == "graphs" else bipartite_from_mask(*shape, m)
                self.visit(rep, g, {"mask": m})

    def visit(self, rep: AuditReport, g, where: dict):
        rep.graphs_checked += 1
        hit, border, info = self.hypothesis(g)
        if not hit:
            rep.hypothesis_misses += 1
            if border:
                ok, branch, diag = self.conclusion(g)
                rep.borderline({**where, **describe(g), **info, "hypothesis": "miss",
                                "conclusion_holds": ok, "branch": branch})
            return
        rep.hypothesis_hits += 1
        ok, branch, diag = self.conclusion(g)
        rep.branch(branch)
        if border:
            rep.borderline({**where, **describe(g), **info, "hypothesis": "hit",
                            "conclusion_holds": ok, "branch": branch})
        if not ok:
            rep.fail({**where, **describe(g), **info, **diag})

    def run_item(self, rep: AuditReport, item, index: int):
        """Default extremal check: the hypothesis holds (or sits on its
        boundary) and the good branch of the conclusion fails."""
        label, g = item
        rep.graphs_checked += 1
        hit, border, info = self.hypothesis(g)
        entry = {"item": index, "label": label, **describe(g), **info}
        if border:
            rep.borderline({**entry, "hypothesis": "hit" if hit else "miss"})
        if hit or border:
            rep.hypothesis_hits += 1
        else:
            rep.hypothesis_misses += 1
            rep.fail({**entry, "reason": "exceptional graph does not meet the hypothesis"})
            return
        good, diag = self.good_branch(g)
        if good:
            rep.fail({**entry, **diag, "reason": "exceptional graph satisfies the good branch (not tight)"})
        else:
            rep.branch("tight")
            rep.margins.append({"label": label, **{k: v for k, v in info.items() if isinstance(v, (int, float))}})


def spectral_ge_either(rho_g: float, mu_g: float, rho_ref: float, mu_ref: float) -> tuple[bool, bool, dict]:
    a, ba = compare(rho_g, rho_ref, "ge")
    b, bb = compare(mu_g, mu_ref, "ge")
    return a or b, ba or bb, {"rho": rho_g, "rho_ref": rho_ref, "mu": mu_g, "mu_ref": mu_ref}


def sqrt(x: float) -> float:
    need(x >= 0, "negative radicand in a threshold")
    return math.sqrt(x)
