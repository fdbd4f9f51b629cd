"""Audits over general graphs: complement-spectral conditions and closure
stability."""
from __future__ import annotations

import math

from ..errors import ParameterError
from ..families import (
    FamilyDescriptor,
    build_example21,
    build_member,
    member_any_r,
    membership,
    r_range,
    special_graph,
)
from ..graph import SimpleGraph, complement, petersen_graph
from ..closure import k_closure
from ..oracles import (
    Property,
    edge_connectivity,
    hamiltonian_cycle,
    hamiltonian_path,
    min_path_cover,
    q_edge_hamiltonian,
    q_property,
    vertex_connectivity,
)
from ..spectral import lambda_max_symmetric
from .base import Audit, as_int, closure_complete, delta, need
from .enumeration import isomorphic
from .report import Mode, compare
from .sampling import flip_edges, random_graph, shuffle_graph


def _comp_value(g: SimpleGraph, alpha: float) -> float:
    return lambda_max_symmetric(complement(g), alpha).value


def _members(tag: str, n: int, k: int | None, s: int) -> list[tuple[str, SimpleGraph]]:
    """Canonical representatives of an exception family, one per buildable
    parameter choice."""
    out = []
    if tag == "H_FAM" and not (k is not None and n == 2 * k + 1 - s and s <= 1):
        return out
    for r in r_range(tag, n, k, s):
        extra: list[dict] = [{}]
        if tag == "C_FAM":
            extra = [{"p": p} for p in range(1, max(1, (n - s - 1) // 2) + 1)] if s >= 0 else \
                [{"p": p} for p in range(1, n // 2 + 1)]
        if tag == "D_FAM":
            extra = [{"p": a} for a in range(1, n - r)]
        for e in extra:
            params = dict(n=n, s=s, r=r, **e)
            if k is not None and tag in ("B_FAM", "H_FAM"):
                params["k"] = k
            try:
                desc = FamilyDescriptor.of(tag, **params)
                g = build_member(desc)
            except ParameterError:
                continue
            if g.n == n:
                out.append((f"{tag} {desc.as_dict()['params']}", g))
    # distinct graphs only
    seen, uniq = set(), []
    for label, g in out:
        if g.adj not in seen:
            seen.add(g.adj)
            uniq.append((label, g))
    return uniq


class _ComplementAudit(Audit):
    modes = (Mode.EXHAUSTIVE, Mode.SAMPLED, Mode.EXTREMAL)
    families: tuple[str, ...] = ()

    def enum_shape(self):
        return (self.n,)

    def exception(self, g: SimpleGraph) -> str | None:
        for tag in self.families:
            args = (self.k if tag in ("B_FAM", "H_FAM") else None)
            if member_any_r(g, tag, self.n, self.s_fam, args) is not None:
                return tag
        if self.special is not None and isomorphic(g, self.special):
            return "special"
        return None

    def out_of_range_hint(self, g: SimpleGraph) -> dict:
        # r = 1 is excluded for the B and C families; say so when it would match
        hints = {}
        for tag in self.families:
            if tag in ("B_FAM", "C_FAM") and self.s_fam >= 0:
                params = dict(n=self.n, s=self.s_fam, r=1)
                if tag == "B_FAM":
                    params["k"] = self.k
                if membership(g, FamilyDescriptor.of(tag, **params), check_range=False) is not None:
                    hints["member_if_r_equals_1"] = tag
        return hints

    def _exception_sampler_pool(self) -> list[SimpleGraph]:
        pool = []
        for tag in self.families:
            pool += [g for _, g in _members(tag, self.n, self.k if tag in ("B_FAM", "H_FAM") else None, self.s_fam)]
        return pool

    def sample(self, rng, index):
        n = self.n
        kind = index % 3
        if kind == 0:
            g = complement(random_graph(rng, n, float(rng.uniform(0.0, 0.45))))
            label = "sparse-complement"
        elif kind == 1:
            g = random_graph(rng, n, float(rng.uniform(0.3, 1.0)))
            label = "uniform"
        else:
            pool = self._pool
            if not pool:
                g = complement(random_graph(rng, n, float(rng.uniform(0.0, 0.3))))
                label = "sparse-complement"
            else:
                base = pool[(index // 3) % len(pool)]
                g = flip_edges(rng, base, int(rng.integers(0, 3)))
                label = "perturbed-exception"
        return shuffle_graph(rng, g), label


class W11TPartOne(_ComplementAudit):
    """delta >= k and rho(complement) small force a complete closure unless
    G is in the B or H family (or is the special graph when s = k-1)."""

    id = "T_W11T_I"
    families = ("B_FAM", "H_FAM")

    def setup(self):
        self.n, self.k, self.s = as_int(self.spec, "n"), as_int(self.spec, "k"), as_int(self.spec, "s")
        n, k, s = self.n, self.k, self.s
        need(n >= max(2 * k, 2 * k + 1 - s), f"needs n >= max(2k, 2k+1-s), got n={n}")
        need(k >= max(s, 1), f"needs k >= max(s, 1), got k={k}, s={s}")
        self.min_deg = k
        self.s_fam = s
        self.bound = math.sqrt((k - s) * (n - k - 1))
        self.special = special_graph(k) if (s == k - 1 and n == 2 * k) else None
        self._pool = self._exception_sampler_pool()

    def notes(self):
        n, k, s = self.n, self.k, self.s
        out = [f"threshold sqrt((k-s)(n-k-1)) = {self.bound:.12g}", f"closure index n+s = {n + s}"]
        if not (n == 2 * k + 1 - s and s <= 1):
            out.append("H family not applicable (needs n = 2k+1-s and s <= 1)")
        if self.special is None:
            out.append("special graph clause vacuous (needs s = k-1 and n = 2k)")
        return out

    def hypothesis(self, g):
        if delta(g) < self.k:
            return False, False, {}
        val = _comp_value(g, 0.0)
        ok, border = compare(val, self.bound, "le")
        return ok, border, {"rho_complement": val, "threshold": self.bound}

    def conclusion(self, g):
        if closure_complete(g, self.n + self.s):
            return True, "closure_complete", {}
        fam = self.exception(g)
        if fam:
            return True, fam, {}
        return False, "none", {"reason": "closure incomplete and no exception family matched",
                               **self.out_of_range_hint(g)}

    def extremal_items(self):
        items = []
        for tag in self.families:
            items += _members(tag, self.n, self.k, self.s)
        if self.special is not None:
            items.append(("special graph", self.special))
        return items

    def good_branch(self, g):
        return closure_complete(g, self.n + self.s), {}


class W11TPartTwo(_ComplementAudit):
    """mu(complement) <= n-s-1 forces a complete closure unless G is in
    the C, D or W family."""

    id = "T_W11T_II"
    families = ("C_FAM", "D_FAM", "W_FAM")

    def setup(self):
        self.n, self.s = as_int(self.spec, "n"), as_int(self.spec, "s")
        n, s = self.n, self.s
        need(s >= -1, "s >= -1 is required for the exception families")
        need(n >= 3 * s + 2, f"needs n >= 3s+2, got n={n}, s={s}")
        self.k = None
        self.s_fam = s
        self.bound = float(n - s - 1)
        self.special = None
        self._pool = self._exception_sampler_pool()

    def notes(self):
        return [f"threshold n-s-1 = {self.n - self.s - 1}", f"closure index n+s = {self.n + self.s}",
                "no minimum-degree hypothesis is imposed"]

    def hypothesis(self, g):
        val = _comp_value(g, 1.0)
        ok, border = compare(val, self.bound, "le")
        return ok, border, {"mu_complement": val, "threshold": self.bound}

    conclusion = W11TPartOne.conclusion

    def extremal_items(self):
        items = []
        for tag in self.families:
            items += _members(tag, self.n, None, self.s)
        return items

    def good_branch(self, g):
        return closure_complete(g, self.n + self.s), {}


class W11Corollary(_ComplementAudit):
    """The q-traceable consequences.  ``part`` is ``i`` (rho of the
    complement, with delta >= k) or ``ii`` (mu of the complement)."""

    id = "COR_W11C"

    def setup(self):
        self.part = str(self.spec.get("part", "i")).lower()
        need(self.part in ("i", "ii"), "part must be 'i' or 'ii'")
        self.n, self.q = as_int(self.spec, "n"), as_int(self.spec, "q")
        n, q = self.n, self.q
        need(0 <= q <= n - 1, "q-traceable needs 0 <= q <= n-1")
        self.s_fam = q - 1
        self.special = None
        if self.part == "i":
            self.k = as_int(self.spec, "k")
            k = self.k
            need(n >= max(2 * k, 2 * k + 2 - q), f"needs n >= max(2k, 2k+2-q), got n={n}")
            need(k >= max(q - 1, 1), f"needs k >= max(q-1, 1), got k={k}")
            self.min_deg = k
            self.families = ("B_FAM", "H_FAM")
            self.bound = math.sqrt((k + 1 - q) * (n - k - 1))
            if q == k and n == 2 * k:
                self.special = special_graph(k)
        else:
            need(n >= 3 * q - 1, f"needs n >= 3q-1, got n={n}, q={q}")
            self.k = None
            self.families = ("C_FAM", "D_FAM", "W_FAM")
            self.bound = float(n - q)
        self._pool = self._exception_sampler_pool()
        if self.part == "ii" and q >= 2 and n >= 3 * q - 5 and (n + q) % 2 == 0:
            try:
                self._pool.append(build_example21(n, q, 0))
            except ParameterError:
                pass

    def notes(self):
        return [f"part {self.part}; threshold {self.bound:.12g}; exception families at s = q-1 = {self.q - 1}"]

    def hypothesis(self, g):
        if self.part == "i":
            if delta(g) < self.k:
                return False, False, {}
            val = _comp_value(g, 0.0)
            ok, border = compare(val, self.bound, "le")
            return ok, border, {"rho_complement": val, "threshold": self.bound}
        val = _comp_value(g, 1.0)
        ok, border = compare(val, self.bound, "le")
        return ok, border, {"mu_complement": val, "threshold": self.bound}

    def conclusion(self, g):
        if q_property(g, Property.Q_TRACEABLE, self.q):
            return True, "q_traceable", {}
        fam = self.exception(g)
        if fam:
            return True, fam, {}
        return False, "none", {"reason": "not q-traceable and no exception family matched"}

    def extremal_items(self):
        n, q = self.n, self.q
        need(self.part == "ii", "the named non-q-traceable graphs belong to part ii")
        seeds = range(int(self.spec.get("seeds", 3)))
        items = []
        if q >= 2 and n >= 3 * q - 5 and (n + q) % 2 == 0:
            for sd in seeds:
                try:
                    g = build_example21(n, q, sd)
                except ParameterError:
                    break
                if all(g.adj != h.adj for _, h in items):
                    items.append((f"regular join example seed {sd}", g))
        need(bool(items), "no regular join example exists at these parameters (needs q >= 2, n >= 3q-5, n+q even)")
        return items

    def run_item(self, rep, item, index):
        # the example must meet the hypothesis, lie in the W family, and fail q-traceability
        super().run_item(rep, item, index)
        label, g = item
        if member_any_r(g, "W_FAM", self.n, self.q - 1) is None:
            rep.fail({"item": index, "label": label, "reason": "example is not in the W family"})
        else:
            rep.branch("in_W_FAM")

    def good_branch(self, g):
        return q_property(g, Property.Q_TRACEABLE, self.q), {}


# -- closure stability -------------------------------------------------------------


def _hc_ok(g, q):
    return q_property(g, Property.Q_HAM_CONNECTED, q)


STABILITY = {
    # item: (property name, closure index, decider, q range check)
    "i": ("q-connected", lambda n, q: n + q - 2, lambda g, q: vertex_connectivity(g) >= q, lambda n, q: q >= 0),
    "ii": ("q-edge-connected", lambda n, q: n + q - 2, lambda g, q: edge_connectivity(g) >= q, lambda n, q: q >= 0),
    "iii": ("q-path-coverable", lambda n, q: n - q, lambda g, q: min_path_cover(g) <= q, lambda n, q: 0 <= q <= n),
    "iv": ("q-edge-Hamiltonian", lambda n, q: n + q, lambda g, q: q_edge_hamiltonian(g, q), lambda n, q: 0 <= q <= n),
    "v": ("q-Hamilton-connected", lambda n, q: n + q + 1, _hc_ok, lambda n, q: 0 <= q <= n - 2),
    "vi": ("q-Hamiltonian", lambda n, q: n + q, lambda g, q: q_property(g, Property.Q_HAM, q), lambda n, q: 0 <= q <= n - 3),
    "vii": ("q-traceable", lambda n, q: n + q - 1, lambda g, q: q_property(g, Property.Q_TRACEABLE, q),
            lambda n, q: 0 <= q <= n - 1),
}

PROPERTY_ITEMS = {
    "connectivity": "i", "edge-connectivity": "ii", "path-cover": "iii", "edge-ham": "iv",
    "hamilton-connected": "v", "ham": "vi", "hamiltonian": "vi", "traceable": "vii",
}


class Stability(Audit):
    """P(G) holds exactly when P holds for the k-closure, per property."""

    id = "STAB_W01P"
    modes = (Mode.EXHAUSTIVE, Mode.SAMPLED)

    def setup(self):
        self.n, self.q = as_int(self.spec, "n"), as_int(self.spec, "q", 0)
        prop = self.spec.get("property")
        item = self.spec.get("item")
        if prop is not None:
            key = str(prop).lower()
            need(key in PROPERTY_ITEMS, f"property must be one of {sorted(PROPERTY_ITEMS)}")
            need(item is None or str(item).lower() == PROPERTY_ITEMS[key], "property and item disagree")
            item = PROPERTY_ITEMS[key]
        self.item = str(item or "vii").lower()
        need(self.item in STABILITY, f"item must be one of {sorted(STABILITY)}")
        need(self.n >= 3, "stability audits need n >= 3")
        name, kfun, self.decide, qok = STABILITY[self.item]
        need(qok(self.n, self.q), f"q = {self.q} outside the range for {name}")
        self.name = name
        self.k = kfun(self.n, self.q)
        # "iff" compares both ways; "closure_to_graph" only asks that the
        # closure having P forces G to have P (the one-edge-at-a-time form)
        self.sense = str(self.spec.get("sense", "iff")).lower()
        need(self.sense in ("iff", "closure_to_graph"), "sense must be 'iff' or 'closure_to_graph'")

    def enum_shape(self):
        return (self.n,)

    def notes(self):
        out = [f"property: {self.name} with q = {self.q}; closure index {self.k}; direction {self.sense}"]
        if self.item == "v":
            out.append("q-Hamiltonian connected is read as q-Hamilton-connected")
        return out

    def conclusion(self, g):
        h, _ = k_closure(g, self.k)
        if h == g:
            return True, "closed_already", {}
        a, b = bool(self.decide(g, self.q)), bool(self.decide(h, self.q))
        if a == b:
            return True, "both_true" if a else "both_false", {}
        if a and self.sense == "closure_to_graph":
            return True, "graph_only", {}
        return False, "mismatch", {"property_of_graph": a, "property_of_closure": b}

    def sample(self, rng, index):
        return random_graph(rng, self.n, float(rng.uniform(0.2, 0.9))), "uniform"


class PetersenFacts(Audit):
    """Not Hamiltonian, yet traceable and 1-traceable."""

    id = "PETERSEN_FACTS"
    modes = (Mode.EXTREMAL,)

    def extremal_items(self):
        return [("petersen", petersen_graph())]

    def run_item(self, rep, item, index):
        label, g = item
        rep.graphs_checked += 1
        rep.hypothesis_hits += 1
        checks = {
            "no_hamiltonian_cycle": hamiltonian_cycle(g) is None,
            "has_hamiltonian_path": hamiltonian_path(g) is not None,
            "one_traceable": q_property(g, Property.Q_TRACEABLE, 1),
        }
        for name, ok in checks.items():
            if ok:
                rep.branch(name)
            else:
                rep.fail({"label": label, "check": name})
