"""Audit requests and reports."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from ..errors import ParameterError

HYP_TOL = 1e-9
BORDER_BAND = 1e-7
MAX_LISTED = 200  # failures and borderline entries kept verbatim; the rest are counted


class Mode(str, Enum):
    EXHAUSTIVE = "EXHAUSTIVE"
    SAMPLED = "SAMPLED"
    EXTREMAL = "EXTREMAL"
    GRID = "GRID"


THEOREM_IDS = (
    "T_W11T_I", "T_W11T_II", "COR_W11C", "T_12T", "COR_01C", "T_02C", "T_11T", "COR_11C",
    "T_13T_I", "T_13T_II", "STAB_W01P", "PROP_11P", "LEM_21L", "THM_21T", "PROP_31P",
    "LEM_63L", "LEM_64L", "COR_31C", "LEM_21L_EDGECOUNT",
    "LEM_22L", "LEM_51L", "LEM_52L", "LEM_71L", "CATALOG_XCHECK", "SPECTRAL_CORPUS", "PETERSEN_FACTS",
)


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    params: tuple[tuple[str, object], ...] = ()

    @classmethod
    def of(cls, id: str, **params) -> "TheoremSpec":
        id = id.upper()
        if id == "T_21T_PIPELINE":
            id = "THM_21T"
        if id not in THEOREM_IDS:
            raise ParameterError(f"unknown audit id {id!r}")
        return cls(id, tuple(sorted((k, _freeze(v)) for k, v in params.items())))

    def get(self, name: str, default=None):
        for k, v in self.params:
            if k == name:
                return v
        return default

    def require(self, *names: str):
        missing = [n for n in names if self.get(n) is None]
        if missing:
            raise ParameterError(f"{self.id} needs parameter(s) {', '.join(missing)}")
        return tuple(self.get(n) for n in names)

    def as_dict(self) -> dict:
        return {"id": self.id, "params": {k: list(v) if isinstance(v, tuple) else v for k, v in self.params}}


def _freeze(v):
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    return v


def _num(x):
    if isinstance(x, float):
        if not math.isfinite(x):
            return str(x)
        if abs(x) < 1e-12:
            return 0.0  # eigen-solver noise around zero
        return float(f"{x:.12g}")
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return _num(obj)


@dataclass
class AuditReport:
    """Outcome of one audit.

    Every enumerated or sampled graph lands in exactly one of
    ``hypothesis_hits`` / ``hypothesis_misses``; conclusions are checked on
    hits only.  ``branches`` counts which disjunct of the conclusion held.
    """

    theorem: TheoremSpec
    mode: Mode
    seed: int = 0
    budget: int | None = None
    graphs_checked: int = 0
    hypothesis_hits: int = 0
    hypothesis_misses: int = 0
    failure_count: int = 0
    conclusion_failures: list[dict] = field(default_factory=list)
    borderline_count: int = 0
    borderline_spectral: list[dict] = field(default_factory=list)
    branches: dict[str, int] = field(default_factory=dict)
    margins: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    capacity: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    # -- recording ------------------------------------------------------------

    def branch(self, name: str, by: int = 1):
        self.branches[name] = self.branches.get(name, 0) + by

    def fail(self, entry: dict):
        self.failure_count += 1
        if len(self.conclusion_failures) < MAX_LISTED:
            self.conclusion_failures.append(entry)

    def borderline(self, entry: dict):
        self.borderline_count += 1
        if len(self.borderline_spectral) < MAX_LISTED:
            self.borderline_spectral.append(entry)

    def note(self, text: str):
        if text not in self.notes:
            self.notes.append(text)

    def merge(self, other: "AuditReport") -> "AuditReport":
        """Combine two partial reports; callers merge in chunk order."""
        out = AuditReport(self.theorem, self.mode, self.seed, self.budget)
        for name in ("graphs_checked", "hypothesis_hits", "hypothesis_misses", "failure_count",
                     "borderline_count"):
            setattr(out, name, getattr(self, name) + getattr(other, name))
        out.conclusion_failures = (self.conclusion_failures + other.conclusion_failures)[:MAX_LISTED]
        out.borderline_spectral = (self.borderline_spectral + other.borderline_spectral)[:MAX_LISTED]
        out.branches = dict(self.branches)
        for k, v in other.branches.items():
            out.branches[k] = out.branches.get(k, 0) + v
        out.branches = dict(sorted(out.branches.items()))
        out.margins = self.margins + other.margins
        out.notes = list(self.notes)
        for n in other.notes:
            if n not in out.notes:
                out.notes.append(n)
        out.capacity = self.capacity + [c for c in other.capacity if c not in self.capacity]
        out.elapsed = self.elapsed + other.elapsed
        return out

    # -- verdict ----------------------------------------------------------------

    @property
    def passed(self) -> bool:
        return self.failure_count == 0 and not self.capacity

    @property
    def status(self) -> str:
        if self.failure_count:
            return "fail"
        if self.capacity:
            return "capacity"
        return "pass"

    @property
    def exit_code(self) -> int:
        return {"pass": 0, "fail": 2, "capacity": 3}[self.status]

    def min_margin(self) -> float | None:
        vals = [m["margin"] for m in self.margins if "margin" in m]
        return min(vals) if vals else None

    def as_dict(self, with_elapsed: bool = True) -> dict:
        d = {
            "theorem": self.theorem.as_dict(),
            "mode": self.mode.value,
            "seed": self.seed,
            "budget": self.budget,
            "status": self.status,
            "graphs_checked": self.graphs_checked,
            "hypothesis_hits": self.hypothesis_hits,
            "hypothesis_misses": self.hypothesis_misses,
            "failure_count": self.failure_count,
            "conclusion_failures": self.conclusion_failures,
            "borderline_count": self.borderline_count,
            "borderline_spectral": self.borderline_spectral,
            "branches": dict(sorted(self.branches.items())),
            "margins": self.margins,
            "notes": self.notes,
            "capacity": self.capacity,
        }
        if with_elapsed:
            d["elapsed"] = self.elapsed
        return _clean(d)


def compare(lhs: float, rhs: float, sense: str) -> tuple[bool, bool]:
    """``(holds, borderline)`` for ``lhs <sense> rhs`` at the audit tolerance.

    Non-strict senses accept a ``HYP_TOL`` slack; strict senses demand it.
    Anything within ``BORDER_BAND`` is flagged borderline either way.
    """
    tol = HYP_TOL * max(1.0, abs(rhs))
    if sense == "le":
        ok = lhs <= rhs + tol
    elif sense == "ge":
        ok = lhs >= rhs - tol
    elif sense == "lt":
        ok = lhs < rhs - tol
    elif sense == "gt":
        ok = lhs > rhs + tol
    else:
        raise ParameterError(f"unknown comparison {sense!r}")
    return ok, abs(lhs - rhs) < BORDER_BAND
