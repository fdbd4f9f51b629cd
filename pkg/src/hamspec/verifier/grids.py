"""Numeric inequality grids and the spectral cross-check corpora.

Grid audits walk a list of parameter points.  Each point builds its
concrete graphs, evaluates both sides and records the margin
``rhs - lhs`` (or ``lhs - rhs``) so that a pass always means margin > 0.
Points outside a lemma's stated range are skipped and noted, unless the
request sets ``enforce_preconditions = false``; then they are evaluated
and marked ``outside_preconditions`` in the margin table.
"""
from __future__ import annotations

import math
from itertools import product

import numpy as np

from ..errors import CapacityError, ParameterError
from ..families import build_F, build_F0, build_Z, build_Z0, regular_circulant, semiregular_bipartite
from ..graph import BipartiteGraph, SimpleGraph, is_connected
from ..kernels.enumerate import mask_degrees
from ..oracles import kelmans, kelmans_applicable
from ..spectral import (
    ThresholdParams,
    degree_bounds,
    epsilon0,
    lambda_max_symmetric,
    max_real_root,
    mu,
    polynomial_catalog,
    rho,
    rho2,
    theta0,
    theta_upper_bound,
)
from .base import Audit, as_alphas, as_int, delta, describe, need
from .enumeration import bip_pairs, bipartite_from_mask
from .report import HYP_TOL, Mode, compare
from .sampling import random_bipartite, random_graph, rng_for, shuffle_graph


def int_range(spec, name: str, default=None) -> list[int]:
    """Accepts an int, a list of ints or a ``"lo..hi"`` string."""
    v = spec.get(name, default)
    if v is None:
        raise ParameterError(f"{spec.id} needs parameter {name!r}")
    if isinstance(v, str):
        if ".." not in v:
            return [int(v)]
        lo, hi = v.split("..", 1)
        out = list(range(int(lo), int(hi) + 1))
        need(len(out) > 0, f"empty range {v!r} for {name}")
        return out
    if isinstance(v, (list, tuple)):
        return [int(x) for x in v]
    return [int(v)]


def _flag(spec, name: str, default: bool) -> bool:
    v = spec.get(name, default)
    if isinstance(v, str):
        return v.strip().lower() in ("1", "true", "yes")
    return bool(v)


def k_n_m_minus_e(n: int, m: int) -> BipartiteGraph:
    """``K_{n,m}`` with the edge between the first vertices removed."""
    full = (1 << m) - 1
    rows = [full] * n
    rows[0] &= ~1
    return BipartiteGraph(n, m, tuple(rows))


class GridAudit(Audit):
    modes = (Mode.GRID,)
    axes: tuple[str, ...] = ()

    def setup(self):
        self.enforce = _flag(self.spec, "enforce_preconditions", True)
        self.values = {a: int_range(self.spec, a, self.default_axis(a)) for a in self.axes}

    def default_axis(self, name):
        return None

    def extremal_items(self):
        return list(product(*(self.values[a] for a in self.axes)))

    def precondition(self, point) -> str | None:
        """Reason the point is outside the stated range, or None."""
        return None

    def evaluate(self, point) -> list[tuple[str, float, float, str]]:
        """``(label, lhs, rhs, sense)`` rows to be checked strictly."""
        raise NotImplementedError

    def run_item(self, rep, point, index):
        named = dict(zip(self.axes, point))
        why = self.precondition(point)
        if why and self.enforce:
            rep.hypothesis_misses += 1
            rep.graphs_checked += 1
            rep.note(f"skipped {named}: {why}")
            rep.branch("skipped")
            return
        rep.graphs_checked += 1
        rep.hypothesis_hits += 1
        try:
            rows = self.evaluate(point)
        except ParameterError as exc:
            rep.fail({**named, "reason": f"could not evaluate: {exc}"})
            return
        for label, lhs, rhs, sense in rows:
            if sense == "within":
                # numerical agreement row: lhs is an absolute difference, rhs the tolerance
                ok, border = lhs < rhs, False
                entry = {**named, "check": label, "difference": lhs, "tolerance": rhs}
            else:
                ok, border = compare(lhs, rhs, sense)
                margin = (rhs - lhs) if sense in ("lt", "le") else (lhs - rhs)
                entry = {**named, "inequality": label, "lhs": lhs, "rhs": rhs, "margin": margin}
            if why:
                entry["outside_preconditions"] = why
            rep.margins.append(entry)
            if border:
                rep.borderline(entry)
            if ok:
                rep.branch("strict" if not why else "strict_outside_preconditions")
            else:
                rep.fail(entry)


class FZeroRadius(GridAudit):
    """rho(F0_{n,k,s}) < sqrt(n(n+s-k-1))."""

    id = "PROP_31P"
    axes = ("k", "s", "n")

    def default_axis(self, name):
        return {"s": 0}.get(name)

    def notes(self):
        return ["each point also checks the closed-form polynomial root against the eigensolver"]

    def precondition(self, point):
        k, s, n = point
        lo = max(math.ceil((k * k + 4) * (k + 1) / 2), (k + 1) * (k - s + 2) + 2)
        if not (k >= max(s, 1) and s >= 0):
            return f"needs k >= max(s, 1) >= 1, got k={k}, s={s}"
        if n < lo:
            return f"needs n >= {lo}"
        return None

    def evaluate(self, point):
        k, s, n = point
        r = rho(build_F0(n, k, s))
        root = max_real_root(polynomial_catalog("PSI4", n=n, k=k, s=s))
        bound = math.sqrt(n * (n + s - k - 1))
        return [("rho(F0) < sqrt(n(n+s-k-1))", r, bound, "lt"),
                ("PSI4 root matches rho(F0)", abs(root - r), 1e-8, "within")]


class NearCompleteBounds(GridAudit):
    """K_{n,n+s-k-1} - e beats the edge-count thresholds: rho above
    sqrt(eps0) (part i) and mu above n + eps0/n (part ii)."""

    id = "COR_31C"
    axes = ("k", "s", "n")

    def setup(self):
        super().setup()
        part = str(self.spec.get("part", "both")).lower()
        need(part in ("i", "ii", "both"), "part must be 'i', 'ii' or 'both'")
        self.parts = ("i", "ii") if part == "both" else (part,)

    def default_axis(self, name):
        return {"s": 0}.get(name)

    def precondition(self, point):
        k, s, n = point
        if not (s >= -2 and k >= max(abs(s), 1)):
            return f"needs s >= -2 and k >= max(|s|, 1), got k={k}, s={s}"
        lo = {"i": (k + 1) * (k - s + 2) + 2, "ii": 4 * k * (k + 1)}
        need_lo = max(lo[p] for p in self.parts)
        if n < need_lo:
            return f"needs n >= {need_lo} for part(s) {'/'.join(self.parts)}"
        return None

    def evaluate(self, point):
        k, s, n = point
        g = k_n_m_minus_e(n, n + s - k - 1)
        e0 = epsilon0(ThresholdParams(n, k, s))
        rows = []
        if "i" in self.parts:
            rows.append(("rho(K_{n,n+s-k-1}-e) > sqrt(eps0)", rho(g), math.sqrt(e0), "gt"))
        if "ii" in self.parts:
            rows.append(("mu(K_{n,n+s-k-1}-e) > n + eps0/n", mu(g), n + e0 / n, "gt"))
        return rows


class FZeroRadiusLower(GridAudit):
    """rho(F0_{n,k,0}) > sqrt(n(n-k-2) + (k+2)^2)."""

    id = "LEM_63L"
    axes = ("k", "n")

    def precondition(self, point):
        k, n = point
        if k < 2:
            return f"needs k >= 2, got k={k}"
        if n < 3 * k * (k + 1):
            return f"needs n >= 3k(k+1) = {3 * k * (k + 1)}"
        return None

    def evaluate(self, point):
        k, n = point
        return [("rho(F0) > sqrt(n(n-k-2)+(k+2)^2)", rho(build_F0(n, k, 0)),
                 math.sqrt(n * (n - k - 2) + (k + 2) ** 2), "gt")]


class FZeroSignless(GridAudit):
    """mu(F0_{n,k,0}) > 2n - k - 1.5."""

    id = "LEM_64L"
    axes = ("k", "n")

    def precondition(self, point):
        k, n = point
        if k < 1:
            return f"needs k >= 1, got k={k}"
        if n < 2 * (k + 2) ** 2:
            return f"needs n >= 2(k+2)^2 = {2 * (k + 2) ** 2}"
        return None

    def evaluate(self, point):
        k, n = point
        m = mu(build_F0(n, k, 0))
        root = max_real_root(polynomial_catalog("PSI6", n=n, k=k))
        return [("mu(F0) > 2n-k-1.5", m, 2 * n - k - 1.5, "gt"),
                ("PSI6 root matches mu(F0)", abs(root - m), 1e-8, "within")]


class EdgeThreshold(GridAudit):
    """Theta above Theta0(s) forces more than eps0(s) edges.

    Per point: |E(F)| - eps0 equals n - 2k - 2 + s, the bound
    ``theta_upper_bound`` evaluated at eps0 edges reproduces Theta0, and a
    batch of seeded dense samples never has Theta > Theta0 with at most
    eps0 edges.
    """

    id = "LEM_21L_EDGECOUNT"
    axes = ("k", "s", "n")

    def setup(self):
        super().setup()
        self.alphas = as_alphas(self.spec)
        self.per_point = int(self.spec.get("samples_per_point", 200))

    def default_axis(self, name):
        return {"s": 0}.get(name)

    def precondition(self, point):
        k, s, n = point
        if not (s >= -2 and k >= max(abs(s), 1)):
            return f"needs s >= -2 and k >= max(|s|, 1), got k={k}, s={s}"
        if n < 3 * k + 4:
            return f"needs n >= 3k+4 = {3 * k + 4}"
        return None

    def evaluate(self, point):
        k, s, n = point
        e0 = epsilon0(ThresholdParams(n, k, s))
        f = build_F(n, k, s)
        rows = [("|E(F)| - eps0 equals n-2k-2+s", abs(f.m - e0 - (n - 2 * k - 2 + s)), 0.5, "within")]
        for a in self.alphas:
            t0 = theta0(ThresholdParams(n, k, s, a))
            at_e0 = a * (e0 / n + n) + (1 - a) * math.sqrt(e0)
            rows.append((f"edge bound at eps0 reproduces Theta0 (alpha={a:g})", abs(at_e0 - t0), 1e-9, "within"))
        worst = -math.inf
        rng = rng_for(self.seed, hash(point) & 0xFFFF)
        for _ in range(self.per_point):
            lo = max(0, int(e0) - 2 * n)
            m = int(rng.integers(lo, min(int(e0), n * n) + 1))
            cells = rng.choice(n * n, size=m, replace=False)
            rws = [0] * n
            for c in cells.tolist():
                rws[c // n] |= 1 << (c % n)
            g = BipartiteGraph(n, n, tuple(rws))
            for a in self.alphas:
                t0 = theta0(ThresholdParams(n, k, s, a))
                worst = max(worst, lambda_max_symmetric(g, a).value - t0)
        if self.per_point:
            rows.append(("max over samples with |E| <= eps0 of Theta - Theta0 < 0", worst, 0.0, "lt"))
        return rows


# -- exhaustive and sampled corpora -------------------------------------------------


class SemiregularOrder(Audit):
    """No connected (p,q)-semi-regular bipartite graph has p + q + 1 vertices.

    Walks every biadjacency mask for every split ``a <= b`` with
    ``a + b <= max_order``; p = q is allowed and reported separately.
    """

    id = "LEM_22L"
    modes = (Mode.GRID,)

    def setup(self):
        self.max_order = as_int(self.spec, "max_order", 9)
        need(1 <= self.max_order <= 9, "max_order must lie in 1..9")

    def notes(self):
        return [f"all bipartite graphs on at most {self.max_order} vertices, both parts nonempty"]

    def extremal_items(self):
        return [(a, b) for a in range(1, self.max_order + 1) for b in range(a, self.max_order + 1 - a)]

    def run_item(self, rep, item, index):
        a, b = item
        if a * b > 25:
            raise CapacityError(f"split {a}+{b} exceeds the bipartite enumeration cap")
        bi, bj = bip_pairs(a, b)
        total = 1 << (a * b)
        rep.graphs_checked += total
        hits = 0
        for start in range(0, total, 1 << 16):
            masks = np.arange(start, min(total, start + (1 << 16)), dtype=np.int64)
            deg = mask_degrees(masks, bi, bj, a + b)
            dl, dr = deg[:, :a], deg[:, a:]
            semi = (dl.min(1) == dl.max(1)) & (dr.min(1) == dr.max(1)) & (dl[:, 0] >= 1) & (dr[:, 0] >= 1)
            for m, p, q in zip(masks[semi].tolist(), dl[semi, 0].tolist(), dr[semi, 0].tolist()):
                g = bipartite_from_mask(a, b, m)
                if not is_connected(g.as_simple()):
                    rep.branch("disconnected")
                    continue
                hits += 1
                rep.branch("regular" if p == q else "semiregular")
                if p != q and a + b == p + q + 1:
                    rep.fail({"parts": [a, b], "degrees": [p, q], **describe(g)})
        rep.hypothesis_hits += hits
        rep.hypothesis_misses += total - hits


class KelmansIncrease(Audit):
    """The Kelmans move keeps |E| and strictly raises Theta on connected graphs."""

    id = "LEM_51L"
    modes = (Mode.SAMPLED,)
    default_samples = 300

    def setup(self):
        self.max_n = as_int(self.spec, "max_n", 10)
        need(self.max_n >= 3, "max_n must be at least 3")
        self.alphas = as_alphas(self.spec)

    def sample(self, rng, index):
        for _ in range(1000):
            n = int(rng.integers(3, self.max_n + 1))
            g = random_graph(rng, n, float(rng.uniform(0.2, 0.9)))
            if not is_connected(g):
                continue
            ok = [(u, v) for u in range(n) for v in range(n) if kelmans_applicable(g, u, v)]
            if ok:
                u, v = ok[int(rng.integers(len(ok)))]
                return (g, u, v, self.alphas[index % len(self.alphas)]), "connected"
        raise CapacityError("could not draw an applicable Kelmans triple")

    def visit(self, rep, item, where):
        g, u, v, a = item
        rep.graphs_checked += 1
        rep.hypothesis_hits += 1
        h = kelmans(g, u, v)
        before = lambda_max_symmetric(g, a).value
        after = lambda_max_symmetric(h, a).value
        margin = after - before
        info = {**where, **describe(g), "u": u, "v": v, "alpha": a, "margin": margin}
        rep.margins.append({"sample": where["sample"], "alpha": a, "margin": margin})
        if h.m != g.m:
            rep.fail({**info, "reason": "edge count changed"})
        elif margin <= HYP_TOL:
            rep.fail({**info, "reason": "Theta did not increase by more than 1e-9"})
        else:
            rep.branch("strict_increase")


class ZMinusEdge(Audit):
    """Every Z_{p,q} - e with minimum degree k has Theta at most Theta(Z0),
    with equality only for copies of Z0."""

    id = "LEM_52L"
    modes = (Mode.GRID,)

    def setup(self):
        self.max_total = as_int(self.spec, "max_total", 14)
        self.alphas = as_alphas(self.spec)

    def extremal_items(self):
        out = []
        for n in range(2, self.max_total):
            for k in range(1, n):
                for p in range(k + 1, self.max_total):
                    for q in range(1, self.max_total - n - p + 1):
                        out.append((n, k, p, q))
        return out

    def run_item(self, rep, item, index):
        from .enumeration import bipartite_isomorphic

        n, k, p, q = item
        z = build_Z(n, k, p, q)
        z0 = build_Z0(n, k, p, q)
        ref = {a: lambda_max_symmetric(z0, a).value for a in self.alphas}
        seen = set()
        for i, row in enumerate(z.biadj):
            for j in range(z.nR):
                if not row >> j & 1:
                    continue
                rows = list(z.biadj)
                rows[i] &= ~(1 << j)
                g = BipartiteGraph(z.nL, z.nR, tuple(rows))
                key = (i < k, j < p)  # edges of one role give isomorphic deletions
                if key in seen:
                    continue
                seen.add(key)
                rep.graphs_checked += 1
                if delta(g) < k:
                    rep.hypothesis_misses += 1
                    continue
                rep.hypothesis_hits += 1
                iso = bipartite_isomorphic(g, z0)
                for a, t in ref.items():
                    val = lambda_max_symmetric(g, a).value
                    le, border = compare(val, t, "le")
                    equal = abs(val - t) <= 1e-9 * max(1.0, t)
                    entry = {"n": n, "k": k, "p": p, "q": q, "edge": [i, j], "alpha": a,
                             "theta": val, "theta_Z0": t, "margin": t - val, "isomorphic_to_Z0": iso}
                    rep.margins.append(entry)
                    if not le:
                        rep.fail({**entry, "reason": "Theta(Z-e) exceeds Theta(Z0)"})
                    elif equal != iso:
                        rep.fail({**entry, "reason": "equality does not match isomorphism to Z0"})
                    else:
                        rep.branch("equal_Z0" if iso else "strict")


CATALOG_ITEMS = (
    [("PSI", {"n": n, "q": q, "alpha": a}) for n, q in ((4, 3), (5, 3), (6, 4)) for a in (0.0, 0.5, 1.0)]
    + [("PSI4", {"n": n, "k": k, "s": s}) for n, k, s in ((8, 2, 1), (8, 1, 0), (10, 3, 2))]
    + [("PSI6", {"n": n, "k": k}) for n, k in ((10, 1), (12, 2))]
)


def catalog_graph(ident: str, p: dict):
    """The concrete graph whose Theta the polynomial's max root should equal, and alpha."""
    if ident == "PSI":
        return k_n_m_minus_e(p["n"], p["q"]), p["alpha"]
    if ident == "PSI4":
        return build_F0(p["n"], p["k"], p["s"]), 0.0
    if ident == "PSI6":
        return build_F0(p["n"], p["k"], 0), 1.0
    if ident == "PSI1":
        return k_n_m_minus_e(p["n"], p["n"] + p["s"] - p["k"] - 1), 0.0
    if ident == "PSI2":
        return k_n_m_minus_e(p["n"], p["n"] + p["s"] - p["k"] - 1), 1.0
    raise ParameterError(f"no concrete graph for {ident}")


class CatalogCrossCheck(Audit):
    """Polynomial max roots against eigensolves of the matching graphs."""

    id = "CATALOG_XCHECK"
    modes = (Mode.GRID,)

    def setup(self):
        self.tol = float(self.spec.get("tol", 1e-8))

    def extremal_items(self):
        return list(CATALOG_ITEMS)

    def run_item(self, rep, item, index):
        ident, p = item
        rep.graphs_checked += 1
        rep.hypothesis_hits += 1
        root = max_real_root(polynomial_catalog(ident, **p))
        g, a = catalog_graph(ident, p)
        val = lambda_max_symmetric(g, a).value
        diff = abs(root - val)
        entry = {"polynomial": ident, **p, "root": root, "eigen": val, "difference": diff,
                 "slack": self.tol - diff}
        rep.margins.append(entry)
        if diff < self.tol:
            rep.branch("match")
        else:
            rep.fail(entry)


class SpectralCorpus(Audit):
    """Degree lower bounds with their equality characterization, the
    rho1^2 + rho2^2 <= |E| bound for bipartite graphs, and the balanced
    bipartite upper bounds on mu and Theta."""

    id = "SPECTRAL_CORPUS"
    modes = (Mode.SAMPLED,)
    default_samples = 10_000

    def setup(self):
        self.max_n = as_int(self.spec, "max_n", 10)
        need(self.max_n >= 4, "max_n must be at least 4")
        # the rho1^2 + rho2^2 bound is stated from two vertices on; K_2 breaks it
        self.pair_min_order = as_int(self.spec, "pair_bound_min_order", 2)

    def sample(self, rng, index):
        kind = index % 5
        if kind == 0:
            n = int(rng.integers(2, self.max_n + 1))
            return random_graph(rng, n, float(rng.uniform(0.1, 1.0))), "general"
        if kind == 1:
            nL = int(rng.integers(1, self.max_n // 2 + 1))
            nR = int(rng.integers(1, self.max_n - nL + 1))
            return random_bipartite(rng, nL, nR, float(rng.uniform(0.2, 1.0))), "bipartite"
        if kind == 2:
            n = int(rng.integers(1, self.max_n // 2 + 1))
            return random_bipartite(rng, n, n, float(rng.uniform(0.2, 1.0))), "balanced"
        if kind == 3:
            m = int(rng.integers(3, self.max_n + 1))
            d = int(rng.integers(1, m))
            if (d * m) % 2:
                d -= 1
            d = max(d, 2) if m >= 3 else 1
            return shuffle_graph(rng, regular_circulant(d, m)), "regular"
        # semi-regular bipartite: a*nU = b*nV
        for _ in range(50):
            nU = int(rng.integers(1, self.max_n))
            nV = int(rng.integers(1, self.max_n - nU + 1))
            a = int(rng.integers(1, nV + 1))
            if (a * nU) % nV:
                continue
            b = a * nU // nV
            if b < 1 or b > nU or a == b:
                continue
            try:
                g = semiregular_bipartite(a, b, nU, nV, seed=int(rng.integers(1 << 30)))
            except ParameterError:
                continue
            return shuffle_graph(rng, g), "semiregular"
        return random_graph(rng, 6, 0.5), "general"

    def visit(self, rep, g, where):
        rep.graphs_checked += 1
        bip = isinstance(g, BipartiteGraph)
        s = g.as_simple() if bip else g
        if s.m == 0:
            rep.hypothesis_misses += 1
            return
        rep.hypothesis_hits += 1
        info = {**where, **describe(g)}
        db = degree_bounds(s)
        for name, lhs, rhs in (("mu >= min d(u)+d(v)", db.mu, db.mu_lower),
                               ("rho >= min sqrt(d(u)d(v))", db.rho, db.rho_lower)):
            ok, _ = compare(lhs, rhs, "ge")
            if not ok:
                rep.fail({**info, "check": name, "lhs": lhs, "rhs": rhs})
        if db.connected:
            structural = db.structural_equality
            if db.mu_equal != structural or db.rho_equal != structural:
                rep.fail({**info, "check": "degree-bound equality matches regular/semi-regular",
                          "mu_equal": db.mu_equal, "rho_equal": db.rho_equal, "structural": structural})
            rep.branch("equality_structural" if structural else "strict_nonstructural")
        if bip and s.n >= self.pair_min_order:
            r1, r2 = rho(s), rho2(s).value
            ok, _ = compare(r1 * r1 + r2 * r2, float(s.m), "le")
            rep.branch("bipartite")
            if not ok:
                rep.fail({**info, "check": "rho1^2 + rho2^2 <= |E|", "lhs": r1 * r1 + r2 * r2, "rhs": s.m})
        if bip and g.is_balanced:
            rep.branch("balanced")
            n = g.nL
            ok, _ = compare(mu(s), s.m / n + n, "le")
            if not ok:
                rep.fail({**info, "check": "mu <= |E|/n + n", "lhs": mu(s), "rhs": s.m / n + n})
            for a in (0.0, 0.5, 1.0):
                th = lambda_max_symmetric(s, a).value
                mix = a * mu(s) + (1 - a) * rho(s)
                ok1, _ = compare(th, mix, "le")
                ok2, _ = compare(th, theta_upper_bound(g, a), "le")
                if not (ok1 and ok2):
                    rep.fail({**info, "check": "Theta <= alpha mu + (1-alpha) rho <= edge bound",
                              "alpha": a, "theta": th, "mix": mix, "bound": theta_upper_bound(g, a)})
