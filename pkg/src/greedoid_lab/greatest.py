"""The greatest representation, a bounded search for representations on a rational
grid, and the audit of the five equivalent descriptions of polymatroid greedoids."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .analysis import is_interval, is_optimistic
from .core import Check, Greedoid, GreedoidError, NotNormal
from .flats import FlatLattice, flat_lattice, kernels_intersection_closed
from .polymatroid import (
    ClosedSetLattice,
    PropertyReport,
    SetFunction,
    canonical_map,
    check_galois,
    check_polymatroid,
    closed_sets,
    is_aligned,
    is_representation,
    validate_polymatroid,
)

SEARCH_MAX_LETTERS = 4
DEFAULT_SEARCH_BUDGET = 200_000
ITEMS = (1, 2, 3, 4, 5)


class SearchBudgetExceeded(GreedoidError):
    pass


class HypothesesUnmet(GreedoidError):
    def __init__(self, failed):
        self.failed = failed
        super().__init__("hypotheses not met: " + ", ".join(failed))


def greatest_representation(g: Greedoid) -> SetFunction:
    """``ρ♮(X)``: least rank of a flat whose kernel contains ``X``.

    The table is a candidate only; whether it is a polymatroid is checked elsewhere.
    """
    if g.loop_mask:
        raise NotNormal("the greatest representation needs a normal greedoid")
    lat = flat_lattice(g)
    flats = sorted(lat.flats, key=lambda f: f.rank)
    values = []
    for X in range(1 << g.n):
        values.append(next(f.rank for f in flats if f.kernel & X == X))
    return SetFunction(g.alphabet, tuple(values))


# --- representation search ---------------------------------------------------

def search_representations(g: Greedoid, step=Fraction(1), cap=None, budget=DEFAULT_SEARCH_BUDGET,
                           max_solutions=1):
    """Polymatroid tables on the grid ``step·ℕ`` (values ``≤ cap``) that represent ``g``.

    Subsets are filled in order of size.  Each value is bounded below by
    monotonicity and above by the local submodular inequality; feasible sets are
    pinned to their size and infeasible sets next to a feasible one must avoid it.
    Returns a list of up to ``max_solutions`` tables (exhaustive when shorter).
    Raises :class:`SearchBudgetExceeded` after ``budget`` search nodes.
    """
    n = g.n
    if n > SEARCH_MAX_LETTERS:
        raise ValueError(f"representation search is capped at {SEARCH_MAX_LETTERS} letters")
    step = Fraction(step)
    cap = Fraction(g.basic_rank if cap is None else cap)
    fam = g.feasible
    order = sorted(range(1, 1 << n), key=lambda m: (m.bit_count(), m))
    touches = {A: any((A & ~(1 << x)) in fam for x in range(n) if A >> x & 1) for A in order}
    vals = [Fraction(0)] * (1 << n)
    found = []
    nodes = 0

    def bounds(A):
        lo = Fraction(0)
        hi = cap
        idx = [x for x in range(n) if A >> x & 1]
        for x in idx:
            v = vals[A & ~(1 << x)]
            if v > lo:
                lo = v
        for i, a in enumerate(idx):
            for b in idx[i + 1:]:
                ub = vals[A & ~(1 << a)] + vals[A & ~(1 << b)] - vals[A & ~(1 << a) & ~(1 << b)]
                if ub < hi:
                    hi = ub
        return lo, hi

    def rec(pos):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(f"more than {budget} search nodes")
        if pos == len(order):
            found.append(SetFunction(g.alphabet, tuple(vals)))
            return len(found) >= max_solutions
        A = order[pos]
        lo, hi = bounds(A)
        size = A.bit_count()
        if A in fam:
            candidates = [Fraction(size)] if lo <= size <= hi else []
        else:
            start = -(-lo // step) * step  # round up onto the grid
            candidates = []
            v = start
            while v <= hi:
                if not (touches[A] and v == size):
                    candidates.append(v)
                v += step
        for v in candidates:
            vals[A] = v
            if rec(pos + 1):
                return True
        vals[A] = Fraction(0)
        return False

    rec(0)
    return found


def find_integral_representation(g: Greedoid, budget=DEFAULT_SEARCH_BUDGET):
    """First integral representation with values ``≤ r(Σ)``, or ``None`` if none exists."""
    sols = search_representations(g, budget=budget)
    return sols[0] if sols else None


# --- lattice isomorphism ------------------------------------------------------

def _hasse(nodes, covers) -> nx.DiGraph:
    d = nx.DiGraph()
    d.add_nodes_from(nodes)
    d.add_edges_from(covers)
    return d


def lattices_isomorphic(lat: FlatLattice, closed: ClosedSetLattice, rho=None) -> Check:
    """Order isomorphism between flats and closed sets.

    Tries the map ``σ_ρ∘κ`` first, then a graph isomorphism of the Hasse diagrams.
    Witness on success: ``("canonical", None)`` or ``("search", mapping)``.
    """
    if len(lat) != len(closed.sets) or len(lat.covers) != len(closed.covers):
        return Check(False, ("size", (len(lat), len(closed.sets))))
    if rho is not None:
        phi = canonical_map(rho, lat)
        if set(phi) == set(closed.sets) and len(set(phi)) == len(phi):
            if all(lat.leq[i][j] == (phi[i] & phi[j] == phi[i])
                   for i in range(len(lat)) for j in range(len(lat))):
                return Check(True, ("canonical", None))
    a = _hasse(range(len(lat)), lat.covers)
    b = _hasse(closed.sets, closed.covers)
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(a, b)
    for mapping in matcher.isomorphisms_iter():
        return Check(True, ("search", dict(mapping)))
    return Check(False, ("no isomorphism", None))


# --- audit --------------------------------------------------------------------

@dataclass
class EquivalenceMatrix:
    """Outcome of the five conditions for one greedoid.

    ``items[i]`` is ``True``/``False`` or ``None`` when undecided (search budget).
    ``implications[(i, j)]`` is ``False`` exactly when ``i`` holds and ``j`` fails.
    """

    greedoid: Greedoid
    items: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    representations: list = field(default_factory=list)  # (label, table)
    search_exhausted: bool = True

    @property
    def implications(self) -> dict:
        out = {}
        for i in ITEMS:
            for j in ITEMS:
                if i == j:
                    continue
                a, b = self.items.get(i), self.items.get(j)
                out[(i, j)] = None if a is None or b is None else (not a or b)
        return out

    def failed_implications(self):
        return sorted(k for k, v in self.implications.items() if v is False)

    @property
    def consistent(self) -> bool:
        return not self.failed_implications()


ITEM_NAMES = {
    1: "aligned representation",
    2: "interval+optimistic+meet-closed kernels",
    3: "greatest representation represents",
    4: "flat lattice isomorphic to closed sets",
    5: "integral representation",
}


def audit_equivalences(g: Greedoid, budget=DEFAULT_SEARCH_BUDGET, extra_grid=Fraction(1, 2),
                    max_solutions=4) -> EquivalenceMatrix:
    """Decide each of the five conditions independently and record witnesses.

    * 2 is computed directly.
    * 3 checks that ``ρ♮`` is a polymatroid and represents ``g``.
    * 5 runs the integral search (values ``≤ r(Σ)``); ``None`` if the budget runs out.
    * 4 looks for a lattice isomorphism using ``ρ♮`` and every representation found.
    * 1 applies the marginal-gap test to every representation found, including a
      search on the ``extra_grid`` (pass ``None`` to skip it).

    Items 1 and 4 are existence claims tested on finitely many candidates, so a
    ``False`` there means "no candidate worked".
    """
    if g.loop_mask:
        raise NotNormal("the audit needs a normal greedoid")
    m = EquivalenceMatrix(g)
    interval = is_interval(g)
    lat = None

    if not interval.ok:
        m.items[2] = False
        m.witnesses[2] = ("interval", interval.witness)
    else:
        lat = flat_lattice(g)
        opt = is_optimistic(g)
        meet = kernels_intersection_closed(lat)
        m.items[2] = opt.ok and meet.ok
        if not opt.ok:
            m.witnesses[2] = ("optimism", opt.witness)
        elif not meet.ok:
            m.witnesses[2] = ("kernel meet", meet.witness)

    natural = None
    if lat is None:
        m.items[3] = False
        m.witnesses[3] = ("not interval", None)
    else:
        natural = greatest_representation(g)
        poly = check_polymatroid(natural)
        rep = is_representation(natural, g)
        m.items[3] = poly.ok and rep.ok
        if not poly.ok:
            m.witnesses[3] = ("polymatroid", poly.witness)
            natural = None
        elif not rep.ok:
            m.witnesses[3] = ("representation", rep.witness)
        if natural is not None:
            natural = validate_polymatroid(natural)

    try:
        integral = search_representations(g, budget=budget, max_solutions=max_solutions)
        m.items[5] = bool(integral)
        m.witnesses[5] = ("found", integral[0]) if integral else ("search exhausted", None)
    except SearchBudgetExceeded:
        integral = []
        m.items[5] = None
        m.search_exhausted = False
        m.witnesses[5] = ("budget exceeded", budget)

    fractional = []
    if extra_grid is not None:
        try:
            fractional = search_representations(
                g, step=extra_grid, cap=g.basic_rank + 1, budget=budget, max_solutions=max_solutions
            )
        except SearchBudgetExceeded:
            m.search_exhausted = False

    if m.items[3]:
        m.representations.append(("greatest", natural))
    m.representations += [("integral", r) for r in integral]
    m.representations += [("grid", r) for r in fractional if r not in integral]

    # item 4: every polymatroid candidate, representation or not
    candidates = [r for _, r in m.representations]
    if natural is not None and natural not in candidates:
        candidates.insert(0, natural)
    m.items[4] = False
    m.witnesses[4] = ("no candidate", None)
    if lat is not None:
        for rho in candidates:
            iso = lattices_isomorphic(lat, closed_sets(rho), rho)
            if iso.ok:
                m.items[4] = True
                m.witnesses[4] = (iso.witness[0], rho)
                break

    m.items[1] = False
    m.witnesses[1] = ("no aligned candidate", None)
    for label, rho in m.representations:
        if is_aligned(rho, g).ok:
            m.items[1] = True
            m.witnesses[1] = (label, rho)
            break
    if not m.items[1] and m.items[5] is None:
        m.items[1] = None
    return m


def check_greatest_insertion(g: Greedoid) -> PropertyReport:
    """Under the hypotheses (normal, interval, optimistic, meet-closed kernels) check
    that ``ρ♮`` is a polymatroid representation whose Galois pair is a
    cover-preserving insertion.  Raises :class:`HypothesesUnmet` otherwise."""
    failed = []
    if g.loop_mask:
        failed.append("normal")
    interval = is_interval(g).ok
    if not interval:
        failed.append("interval")
    if not is_optimistic(g).ok:
        failed.append("optimistic")
    if interval and not g.loop_mask and not kernels_intersection_closed(flat_lattice(g)).ok:
        failed.append("kernel meet")
    if failed:
        raise HypothesesUnmet(failed)
    rep = PropertyReport()
    rho = greatest_representation(g)
    poly = rep.add("polymatroid", check_polymatroid(rho))
    if not poly.ok:
        return rep
    r = rep.add("representation", is_representation(rho, g))
    if not r.ok:
        return rep
    pair = check_galois(rho, g)
    rep.add("adjunction", pair.adjunction)
    rep.add("cover-preserving", pair.cover_preserving)
    rep.add("insertion", pair.insertion)
    rep.add("isomorphism", pair.isomorphism)
    rep.extras["galois"] = pair
    return rep


def dominated_by_greatest(rho: SetFunction, g: Greedoid) -> Check:
    """``ρ(X) ≤ ρ♮(X)`` for all ``X``; witness the least violating mask."""
    nat = greatest_representation(g)
    for X in range(1 << g.n):
        if rho(X) > nat(X):
            return Check(False, X)
    return Check(True)

