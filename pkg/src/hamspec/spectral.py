"""Largest eigenvalues of ``A + alpha*D``, closed-form thresholds, and a
small catalogue of characteristic-type polynomials with exact max-root
extraction.

Notation: ``theta(g, a)`` is the largest eigenvalue of ``A(g) + a*D(g)``;
``rho = theta(., 0)`` and ``mu = theta(., 1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ConvergenceError, ParameterError
from .graph import BipartiteGraph, SimpleGraph, is_connected, is_regular, is_semiregular_bipartite
from .kernels.power import power_dominant

EIG_TOL = 1e-9
ROOT_TOL = 1e-12
MAX_ITER = 5000


@dataclass(frozen=True)
class SpectralValue:
    value: float
    residual: float
    iterations: int

    def __float__(self) -> float:
        return self.value


def _as_simple(g) -> SimpleGraph:
    return g.as_simple() if isinstance(g, BipartiteGraph) else g


def _dominant(M: np.ndarray, shift: float, x0: np.ndarray, tol: float, what: str):
    val, res, it, vec = power_dominant(M, float(shift), x0, tol, MAX_ITER)
    if it < 0:
        raise ConvergenceError(f"{what} did not converge", float(val), float(res), -int(it))
    return float(val), float(res), int(it), vec


def _operator(g: SimpleGraph, alpha: float) -> tuple[np.ndarray, float]:
    A = g.matrix()
    deg = A.sum(axis=1)
    M = A + alpha * np.diag(deg)
    return M, float(deg.max()) if g.n else 0.0


def lambda_max_symmetric(g, alpha: float = 0.0, tol: float = EIG_TOL) -> SpectralValue:
    """Largest eigenvalue of ``A(g) + alpha*D(g)``.

    Power iteration from the all-ones vector on ``M + (1+alpha)*Delta*I``
    with Rayleigh-quotient estimates; see :mod:`hamspec.kernels.power`.
    """
    g = _as_simple(g)
    if g.n < 1:
        raise ParameterError("need at least one vertex")
    if alpha < 0:
        raise ParameterError("alpha must be nonnegative")
    M, delta = _operator(g, alpha)
    if delta == 0:
        return SpectralValue(0.0, 0.0, 0)
    val, res, it, _ = _dominant(M, (1.0 + alpha) * delta, np.ones(g.n), tol, "largest eigenvalue")
    return SpectralValue(val, res, it)


def theta(g, alpha: float) -> float:
    return lambda_max_symmetric(g, alpha).value


def rho(g) -> float:
    return lambda_max_symmetric(g, 0.0).value


def mu(g) -> float:
    return lambda_max_symmetric(g, 1.0).value


def _start_vectors(n: int) -> list[np.ndarray]:
    # Fixed-seed Gaussian vectors.  Arithmetic sequences such as i*phi mod 1
    # are affine in i and vanish exactly on eigenvectors like e0-e1-e2+e3.
    rng = np.random.default_rng(20240601)
    return [rng.standard_normal(n), rng.standard_normal(n)]


def rho2(g, tol: float = EIG_TOL) -> SpectralValue:
    """Second largest adjacency eigenvalue, counted with multiplicity.

    The dominant pair is deflated out of ``A`` (its eigenvalue is sent below
    the spectrum) and the largest eigenvalue of the remainder is taken from
    two fixed start vectors orthogonal to the dominant one.
    """
    g = _as_simple(g)
    if g.n < 2:
        raise ParameterError("rho2 needs at least two vertices")
    A = g.matrix()
    delta = float(A.sum(axis=1).max())
    if delta == 0:
        return SpectralValue(0.0, 0.0, 0)
    r, _, it0, x = _dominant(A, delta, np.ones(g.n), min(tol, 1e-11), "dominant pair")
    x = x / np.linalg.norm(x)
    c = r + delta + 1.0
    Md = A - c * np.outer(x, x)
    best = None
    for x0 in _start_vectors(g.n):
        x0 = x0 - (x0 @ x) * x
        if np.linalg.norm(x0) < 1e-8:
            continue
        val, res, it, _ = _dominant(Md, delta + 1.0, x0, tol, "second eigenvalue")
        if best is None or val > best[0]:
            best = (val, res, it + it0)
    return SpectralValue(*best)


# -- thresholds ----------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdParams:
    n: int
    k: int
    s: int = 0
    alpha: float = 0.0
    q: int | None = None


def epsilon0(p: ThresholdParams) -> float:
    """``n(n+s-k-2) + (k+1)(k+2-s)``."""
    if p.n < 1:
        raise ParameterError("n must be positive")
    e = p.n * (p.n + p.s - p.k - 2) + (p.k + 1) * (p.k + 2 - p.s)
    if e < 0:
        raise ParameterError(f"epsilon0 = {e} < 0 for {p}")
    return float(e)


def theta0(p: ThresholdParams) -> float:
    e = epsilon0(p)
    return p.alpha * (e / p.n + p.n) + (1 - p.alpha) * math.sqrt(e)


def omega(p: ThresholdParams) -> float:
    """Threshold for the almost balanced case, parameter ``q`` (defaults to ``s``)."""
    n, k = p.n, p.k
    q = p.s if p.q is None else p.q
    if n < 1:
        raise ParameterError("n must be positive")
    inner = n * (n + q - k - 2) + (k + 1) * (k + 1 - q)
    if inner < 0:
        raise ParameterError(f"negative radicand {inner} for {p}")
    lin = 2 * n + q - k - 2 + (k + 1) * (k + 1 - q) / n
    return p.alpha * lin + (1 - p.alpha) * math.sqrt(inner)


def theta_upper_bound(g: BipartiteGraph, alpha: float) -> float:
    """``alpha*(|E|/n + n) + (1-alpha)*sqrt(|E|)`` for balanced ``g`` on ``2n`` vertices."""
    if not isinstance(g, BipartiteGraph) or not g.is_balanced or g.nL < 1:
        raise ParameterError("theta_upper_bound needs a balanced bipartite graph with n >= 1")
    if not 0 <= alpha <= 1:
        raise ParameterError("alpha must lie in [0, 1]")
    n, m = g.nL, g.m
    return alpha * (m / n + n) + (1 - alpha) * math.sqrt(m)


@dataclass(frozen=True)
class DegreeBounds:
    mu_lower: float
    rho_lower: float
    mu: float
    rho: float
    mu_equal: bool
    rho_equal: bool
    connected: bool
    regular: bool
    semiregular: bool

    @property
    def structural_equality(self) -> bool:
        """Connected and regular or semi-regular bipartite."""
        return self.connected and (self.regular or self.semiregular)


def degree_bounds(g, tol: float = EIG_TOL) -> DegreeBounds:
    """Edge-wise degree lower bounds for ``mu`` and ``rho`` with equality flags."""
    g = _as_simple(g)
    if g.m == 0:
        raise ParameterError("degree bounds need at least one edge")
    d = g.degrees()
    e = g.edges()
    mu_lo = float(min(d[u] + d[v] for u, v in e))
    rho_lo = min(math.sqrt(d[u] * d[v]) for u, v in e)
    m_val = mu(g)
    r_val = rho(g)
    return DegreeBounds(
        mu_lower=mu_lo,
        rho_lower=rho_lo,
        mu=m_val,
        rho=r_val,
        mu_equal=abs(m_val - mu_lo) <= tol * max(1.0, m_val),
        rho_equal=abs(r_val - rho_lo) <= tol * max(1.0, r_val),
        connected=is_connected(g),
        regular=is_regular(g) is not None,
        semiregular=is_semiregular_bipartite(g) is not None,
    )


# -- polynomials -----------------------------------------------------------


@dataclass(frozen=True)
class PolynomialSpec:
    """Real polynomial, coefficients in ascending degree.

    ``exact`` keeps the rational coefficients the floats came from; root
    extraction evaluates signs on those.
    """

    coeffs: tuple[float, ...]
    bracket: tuple[float, float]
    name: str = ""
    exact: tuple[Fraction, ...] = field(default=(), repr=False)

    def __post_init__(self):
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ParameterError("leading coefficient must be nonzero")

    @classmethod
    def from_exact(cls, coeffs: Sequence[Fraction], bracket, name: str = "") -> "PolynomialSpec":
        c = list(coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        return cls(tuple(float(x) for x in c), (float(bracket[0]), float(bracket[1])), name, tuple(c))

    def rational(self) -> tuple[Fraction, ...]:
        return self.exact or tuple(Fraction(x) for x in self.coeffs)

    def __call__(self, x: float) -> float:
        return float(_horner(self.rational(), Fraction(x)))


def _horner(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _derivative(c: Sequence[Fraction]) -> list[Fraction]:
    return [i * c[i] for i in range(1, len(c))]


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _bisect(c, lo: float, hi: float, tol: float) -> float:
    flo = _sign(_horner(c, Fraction(lo)))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = _sign(_horner(c, Fraction(mid)))
        if fm == 0:
            return mid
        if fm == flo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _real_roots(c: list[Fraction], lo: float, hi: float, tol: float) -> list[float]:
    """Sorted real roots in ``[lo, hi]`` via critical-point isolation."""
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    deg = len(c) - 1
    if deg <= 0:
        return []
    if deg == 1:
        r = float(-c[0] / c[1])
        return [r] if lo <= r <= hi else []
    crit = _real_roots(_derivative(c), lo, hi, tol)
    pts = [lo] + [x for x in crit if lo < x < hi] + [hi]
    roots: list[float] = []
    for a, b in zip(pts, pts[1:]):
        fa, fb = _sign(_horner(c, Fraction(a))), _sign(_horner(c, Fraction(b)))
        if fa == 0:
            roots.append(a)
        elif fb != 0 and fa != fb:
            roots.append(_bisect(c, a, b, tol))
    if _sign(_horner(c, Fraction(hi))) == 0:
        roots.append(hi)
    # a double root sits on a critical point where the sign never changes
    scale = sum(abs(float(x)) for x in c)
    for x in crit:
        if lo <= x <= hi and abs(float(_horner(c, Fraction(x)))) <= 1e-12 * scale * max(1.0, abs(x)) ** deg:
            roots.append(x)
    roots.sort()
    out: list[float] = []
    for r in roots:
        if not out or r - out[-1] > 10 * tol:
            out.append(r)
    return out


def real_roots(p: PolynomialSpec, tol: float = ROOT_TOL) -> list[float]:
    return _real_roots(list(p.rational()), p.bracket[0], p.bracket[1], tol)


def max_real_root(p: PolynomialSpec, tol: float = ROOT_TOL) -> float:
    """Largest real root inside ``p.bracket``, bisected to ``tol``."""
    lo, hi = p.bracket
    if not lo < hi:
        raise ParameterError("empty bracket")
    roots = real_roots(p, tol)
    if not roots:
        raise ParameterError(f"no real root of {p.name or 'polynomial'} in [{lo}, {hi}]")
    return roots[-1]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    m = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (m - len(a))
    b = list(b) + [Fraction(0)] * (m - len(b))
    return [x - y for x, y in zip(a, b)]


def _psi(n, q, alpha):
    a = Fraction(alpha)
    F = Fraction
    c4 = F(1)
    c3 = -2 * (n + q - 1) * a
    c2 = a * a * (n * n + 4 * n * q - 3 * n + q * q - 3 * q + 1) - n * q + 1
    c1 = -a * (a * a * (2 * n * q - q - n) * (n + q - 1) - n * q * (n + q - 2))
    c0 = (a * a - 1) * (n - 1) * (q - 1) * (n * q * a * a - 1)
    return [F(c0), F(c1), F(c2), F(c3), c4]


def _psi4(n, k, s):
    F = Fraction
    a = n + s - k - 2
    b = k * (k + 1 - s)
    # polynomials in x, ascending
    x2 = [F(0), F(0), F(1)]
    left = _poly_mul(_poly_mul(x2, [F(-a), F(0), F(1)]), [F(-b), F(0), F(1)])
    f1 = [F(-a), F(0), F(1 + a)]                  # x^2 + a(x^2 - 1)
    f2 = [F(-(n - k - 1) * b), F(0), F(k + n - k - 1)]  # k x^2 + (n-k-1)(x^2 - b)
    return _poly_sub(left, _poly_mul(f1, f2))


def _psi6(n, k):
    F = Fraction
    return [
        F(2 * k * (n - 1) * (n - k - 1) * (n - k - 2)),
        F(-(2 * n ** 3 + (2 * k - 7) * n ** 2 - (6 * k * k + 7 * k - 7) * n + 2 * k ** 3 + 8 * k * k + 6 * k - 2)),
        F(5 * n * n - (k + 11) * n - 2 * k * k + 6),
        F(-(4 * n - 4 - k)),
        F(1),
    ]


def _psi1(n, k, s):
    F = Fraction
    return [F((n + s - k - 2) * (n - 1)), F(0), F(-(n * (n + s - k - 1) - 1)), F(0), F(1)]


def _psi2(n, k, s):
    F = Fraction
    return [
        F(-(n - 1) * (n + s - k - 2) * (2 * n + s - k - 1)),
        F((k - s) ** 2 + (n - 1) * (5 * n + 5 * s - 5 * k - 6)),
        F(-2 * (2 * n + s - k - 2)),
        F(1),
    ]


CATALOG = ("PSI", "PSI1", "PSI2", "PSI4", "PSI5", "PSI6")


def _need(cond: bool, msg: str):
    if not cond:
        raise ParameterError(msg)


def polynomial_catalog(ident: str, **params) -> PolynomialSpec:
    """Polynomial ``ident`` with its graph-side meaning:

    ``PSI(n, q, alpha)``  max root is ``theta(K_{n,q} - e, alpha)``, needs ``2 <= q <= n``.
    ``PSI1(n, k, s)``     max root is ``rho(K_{n,n+s-k-1} - e)``.
    ``PSI2(n, k, s)``     max root is ``mu(K_{n,n+s-k-1} - e)``.
    ``PSI4(n, k, s)``     max root is ``rho(F0_{n,k,s})``, needs ``n >= 2(k+1) - s``.
    ``PSI5(n, k)``        ``PSI4`` at ``s = 0``.
    ``PSI6(n, k)``        max root is ``mu(F0_{n,k,0})``.

    The bracket is ``[0, (1+alpha)*N + 1]`` where ``N`` is the order of the
    matching graph; its upper end is sign-checked.
    """
    ident = ident.upper()
    p = {key: params[key] for key in params}

    def geti(name):
        if name not in p:
            raise ParameterError(f"{ident} needs parameter {name!r}")
        v = p[name]
        if int(v) != v:
            raise ParameterError(f"{name} must be an integer")
        return int(v)

    if ident == "PSI":
        n, q = geti("n"), geti("q")
        alpha = float(p.get("alpha", 0.0))
        _need(2 <= q <= n, "PSI needs 2 <= q <= n")
        _need(alpha >= 0, "PSI needs alpha >= 0")
        coeffs, alpha_eff, order = _psi(n, q, alpha), alpha, n + q
    elif ident in ("PSI1", "PSI2"):
        n, k, s = geti("n"), geti("k"), geti("s")
        _need(n + s - k - 1 >= 2, f"{ident} needs n+s-k-1 >= 2")
        _need(n + s - k - 1 <= n, f"{ident} needs s <= k+1")
        coeffs = _psi1(n, k, s) if ident == "PSI1" else _psi2(n, k, s)
        alpha_eff, order = (0.0 if ident == "PSI1" else 1.0), 2 * n + s - k - 1
    elif ident in ("PSI4", "PSI5"):
        n, k = geti("n"), geti("k")
        s = geti("s") if ident == "PSI4" else 0
        _need(k >= 0 and k + 1 - s >= 1, f"{ident} needs k >= s (nonempty low-degree side)")
        _need(n >= 2 * (k + 1) - s, f"{ident} needs n >= 2(k+1)-s")
        coeffs, alpha_eff, order = _psi4(n, k, s), 0.0, 2 * n
    elif ident == "PSI6":
        n, k = geti("n"), geti("k")
        _need(k >= 0, "PSI6 needs k >= 0")
        _need(n >= 2 * (k + 1), "PSI6 needs n >= 2(k+1)")
        coeffs, alpha_eff, order = _psi6(n, k), 1.0, 2 * n
    else:
        raise ParameterError(f"unknown polynomial {ident!r}; choose from {CATALOG}")
    hi = (1 + alpha_eff) * order + 1
    spec = PolynomialSpec.from_exact(coeffs, (0.0, hi), ident)
    lead = _sign(spec.rational()[-1])
    if _sign(_horner(spec.rational(), Fraction(hi))) != lead:
        raise ParameterError(f"{ident}: upper bracket {hi} does not dominate the roots")
    return spec
