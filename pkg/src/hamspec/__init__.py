"""Spectral conditions for Hamiltonian properties: closures, extremal
families, exact property oracles and theorem audits."""
from __future__ import annotations

from .closure import bipartite_closure, k_closure
from .errors import CapacityError, ConvergenceError, HamspecError, ParameterError
from .graph import BipartiteGraph, SimpleGraph, graph6_decode, graph6_encode
from .spectral import lambda_max_symmetric, mu, rho, rho2, theta

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph", "SimpleGraph", "graph6_decode", "graph6_encode",
    "k_closure", "bipartite_closure", "lambda_max_symmetric", "theta", "rho", "rho2", "mu",
    "HamspecError", "ParameterError", "CapacityError", "ConvergenceError",
]
