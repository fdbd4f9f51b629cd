"""Theorem audits: exhaustive, sampled, extremal and grid runs."""
from __future__ import annotations

from .enumeration import canonical_form, enumerate_bipartite, enumerate_graphs, isomorphic
from .report import AuditReport, Mode, TheoremSpec
from .runner import REGISTRY, audit, inequality_audit, sandwich_audit

__all__ = [
    "AuditReport", "Mode", "TheoremSpec", "REGISTRY", "audit", "inequality_audit", "sandwich_audit",
    "canonical_form", "enumerate_graphs", "enumerate_bipartite", "isomorphic",
]
