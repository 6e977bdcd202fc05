"""Greedy algorithm, exhaustive enumeration of small greedoids, corpus surveys and
DOT export."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path

from .analysis import is_interval
from .core import (
    Alphabet,
    Greedoid,
    GreedoidError,
    SetSystem,
    bits,
    validate_greedoid,
)
from .flats import FlatLattice, check_forking, flat_lattice, is_semimodular
from .greatest import (
    DEFAULT_SEARCH_BUDGET,
    ITEM_NAMES,
    ITEMS,
    HypothesesUnmet,
    audit_equivalences,
    check_greatest_insertion,
)
from .polymatroid import GaloisPair

ENUM_MAX_LETTERS = 4
DEFAULT_ENUM_BUDGET = 1_000_000


class BudgetExceeded(GreedoidError):
    pass


def enum_budget(default=DEFAULT_ENUM_BUDGET) -> int:
    raw = os.environ.get("GREEDOID_LAB_BUDGET")
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"GREEDOID_LAB_BUDGET must be an integer, got {raw!r}") from None


# --- greedy -------------------------------------------------------------------

def greedy_basis(g: Greedoid, weights) -> tuple:
    """Repeatedly append the heaviest continuation (ties go to the least letter id)."""
    word = []
    mask = 0
    fam = g.feasible
    while True:
        best = None
        for x in range(g.n):
            bit = 1 << x
            if mask & bit or (mask | bit) not in fam:
                continue
            if best is None or weights[x] > weights[best]:
                best = x
        if best is None:
            return tuple(word)
        word.append(best)
        mask |= 1 << best


# --- enumeration ----------------------------------------------------------------

def _canonical(n, fam, perms):
    best = None
    for p in perms:
        key = tuple(sorted(sum(1 << p[x] for x in bits(m)) for m in fam))
        if best is None or key < best:
            best = key
    return best


def _layered_families(n):
    """Accessible families with the exchange property, built one size layer at a time.

    Exchange only has to be checked between consecutive layers: a larger set has
    an accessible chain down to the next layer, so augmenting from there suffices.
    """
    def rec(layers):
        top = layers[-1]
        k = len(layers)
        cands = sorted({A | 1 << x for A in top for x in range(n) if not A >> x & 1})
        cands = [c for c in cands if c.bit_count() == k]
        yield layers
        for code in range(1, 1 << len(cands)):
            chosen = [c for i, c in enumerate(cands) if code >> i & 1]
            chosen_set = set(chosen)
            if all(any((X | 1 << y) in chosen_set for y in bits(Y & ~X)) for X in top for Y in chosen):
                yield from rec(layers + [chosen])

    yield from rec([[0]])


def enumerate_greedoids(n: int, normal_only=False, dedup=False, budget=None):
    """Every greedoid on the standard ``n``-letter alphabet, in a fixed order.

    ``dedup`` keeps one representative per orbit under letter permutations.
    Raises :class:`BudgetExceeded` once more than ``budget`` greedoids have been
    produced (default from ``GREEDOID_LAB_BUDGET``).
    """
    if n > ENUM_MAX_LETTERS:
        raise ValueError(f"enumeration is capped at {ENUM_MAX_LETTERS} letters")
    budget = enum_budget() if budget is None else budget
    alpha = Alphabet.standard(n)
    perms = list(permutations(range(n)))
    seen = set()
    count = 0
    for layers in _layered_families(n):
        fam = frozenset(m for layer in layers for m in layer)
        if normal_only:
            union = 0
            for m in fam:
                union |= m
            if union != alpha.full:
                continue
        if dedup:
            key = _canonical(n, fam, perms)
            if key in seen:
                continue
            seen.add(key)
        count += 1
        if count > budget:
            raise BudgetExceeded(f"more than {budget} greedoids")
        yield validate_greedoid(SetSystem(alpha, fam))


def enumerate_greedoids_brute(n: int):
    """Filter every family over ``2^n`` subsets through the validator (oracle; n ≤ 4)."""
    if n > ENUM_MAX_LETTERS:
        raise ValueError(f"enumeration is capped at {ENUM_MAX_LETTERS} letters")
    alpha = Alphabet.standard(n)
    others = list(range(1, 1 << n))
    for code in range(1 << len(others)):
        fam = frozenset([0] + [m for i, m in enumerate(others) if code >> i & 1])
        try:
            yield validate_greedoid(SetSystem(alpha, fam))
        except GreedoidError:
            pass


# --- survey ---------------------------------------------------------------------

@dataclass
class InstanceResult:
    greedoid: Greedoid
    items: dict
    failed: list  # failed implications (i, j)
    interval: bool
    forking: object = None  # Check or None when not interval
    semimodular: object = None
    insertion: object = None  # PropertyReport, or the list of unmet hypotheses
    search_exhausted: bool = True


@dataclass
class CorpusReport:
    n: int
    total: int = 0
    counts: dict = field(default_factory=dict)  # property -> count of instances where it held
    matrix: dict = field(default_factory=dict)  # (i, j) -> [held, failed, unknown]
    counterexamples: list = field(default_factory=list)  # (path or None, greedoid, reason)
    results: list = field(default_factory=list)

    def bump(self, key, by=1):
        self.counts[key] = self.counts.get(key, 0) + by

    def lines(self):
        """Tab-separated machine-readable report, one finding per line."""
        yield f"corpus\tn={self.n}\tinstances={self.total}"
        for key in sorted(self.counts):
            yield f"count\t{key}\t{self.counts[key]}"
        for (i, j), (held, failed, unknown) in sorted(self.matrix.items()):
            yield f"implication\t{i}=>{j}\theld={held}\tfailed={failed}\tunknown={unknown}"
        for path, g, reason in self.counterexamples:
            yield f"counterexample\t{reason}\t{path or '-'}\t{g.describe()}"

    def table(self) -> str:
        """Implication matrix as an aligned text table (failed / decided)."""
        head = "     " + "".join(f"{j:>10}" for j in ITEMS)
        rows = [head]
        for i in ITEMS:
            cells = []
            for j in ITEMS:
                if i == j:
                    cells.append(f"{'-':>10}")
                else:
                    held, failed, unknown = self.matrix[(i, j)]
                    cells.append(f"{f'{failed}/{held + failed}':>10}")
            rows.append(f"{i:>3}  " + "".join(cells))
        legend = [f"  {i}: {ITEM_NAMES[i]}" for i in ITEMS]
        return "\n".join(["failed/decided for implication row => column"] + rows + legend)


def audit_instance(g: Greedoid, budget=DEFAULT_SEARCH_BUDGET) -> InstanceResult:
    m = audit_equivalences(g, budget=budget)
    interval = is_interval(g).ok
    res = InstanceResult(g, dict(m.items), m.failed_implications(), interval,
                         search_exhausted=m.search_exhausted)
    if interval:
        lat = flat_lattice(g)
        res.forking = check_forking(lat)
        res.semimodular = is_semimodular(lat)
        try:
            res.insertion = check_greatest_insertion(g)
        except HypothesesUnmet as exc:
            res.insertion = exc.failed
    return res


def _fixture_comments(res: InstanceResult, reason):
    items = " ".join(f"{i}={res.items[i]}" for i in ITEMS)
    return [f"reason: {reason}", f"items: {items}"]


def survey(n: int, out_dir=None, dedup=True, budget=DEFAULT_SEARCH_BUDGET, workers=1,
           enum_limit=None) -> CorpusReport:
    """Audit every normal greedoid on ``n`` letters and aggregate the implication matrix.

    Instances where an implication fails, the forking check fails or the
    greatest-representation conclusions fail under their hypotheses are written
    to ``out_dir`` as greedoid fixtures (when given).
    """
    from .fixtures import format_greedoid

    corpus = list(enumerate_greedoids(n, normal_only=True, dedup=dedup, budget=enum_limit))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(audit_instance, corpus, [budget] * len(corpus), chunksize=8))
    else:
        results = [audit_instance(g, budget) for g in corpus]

    rep = CorpusReport(n)
    rep.matrix = {(i, j): [0, 0, 0] for i in ITEMS for j in ITEMS if i != j}
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
    for idx, res in enumerate(results):
        rep.total += 1
        rep.results.append(res)
        for i in ITEMS:
            v = res.items[i]
            rep.bump(f"item{i}={'unknown' if v is None else v}")
        rep.bump(f"interval={res.interval}")
        if not res.search_exhausted:
            rep.bump("search-incomplete")
        for (i, j), cell in rep.matrix.items():
            a, b = res.items[i], res.items[j]
            if a is None or b is None:
                cell[2] += 1
            elif a and not b:
                cell[1] += 1
            else:
                cell[0] += 1
        reasons = [f"{i}=>{j} fails" for i, j in res.failed]
        if res.forking is not None:
            rep.bump(f"forking={res.forking.ok}")
            rep.bump(f"semimodular={res.semimodular.ok}")
            if not res.forking.ok:
                reasons.append(f"forking fails at {res.forking.witness!r}")
        if res.insertion is not None:
            if isinstance(res.insertion, list):
                rep.bump("insertion=hypotheses-unmet")
            else:
                rep.bump(f"insertion={res.insertion.ok}")
                if not res.insertion.ok:
                    reasons.append("greatest representation conclusions fail: "
                                   + ",".join(res.insertion.failures()))
        if reasons:
            reason = "; ".join(reasons)
            path = None
            if out_dir is not None:
                path = out_dir / f"n{n}_{idx:04d}.greedoid"
                path.write_text(format_greedoid(res.greedoid, _fixture_comments(res, reason)))
            rep.counterexamples.append((path, res.greedoid, reason))
    return rep


def reproduce(path, budget=DEFAULT_SEARCH_BUDGET) -> InstanceResult:
    """Re-audit a counterexample fixture written by :func:`survey`."""
    from .fixtures import load_greedoid

    return audit_instance(load_greedoid(path), budget)


def recorded_items(path) -> dict:
    """Item values stored in a survey fixture's header comment."""
    for line in Path(path).read_text().splitlines():
        if line.startswith("# items:"):
            out = {}
            for part in line[len("# items:"):].split():
                k, v = part.split("=")
                out[int(k)] = {"True": True, "False": False, "None": None}[v]
            return out
    raise ValueError(f"{path} has no recorded items")


# --- DOT export -------------------------------------------------------------------

def _q(s):
    return '"' + str(s).replace('"', '\\"') + '"'


def export_dot(obj) -> str:
    """Hasse diagram of a flat lattice, or the two lattices of a Galois pair with
    dashed ``φ*`` and dotted ``φ_*`` cross edges."""
    if isinstance(obj, Greedoid):
        obj = flat_lattice(obj)
    if isinstance(obj, FlatLattice):
        return "\n".join(["digraph flats {", "  rankdir=BT;", *_flat_body(obj, "  "), "}"]) + "\n"
    if isinstance(obj, GaloisPair):
        return _galois_dot(obj)
    raise TypeError(f"cannot export {type(obj).__name__}")


def _flat_body(lat, ind):
    alpha = lat.greedoid.alphabet
    out = []
    for f in lat.flats:
        label = f"κ={alpha.format_set(f.kernel)}\\nr={f.rank}"
        out.append(f"{ind}f{f.id} [label={_q(label)}];")
    for i, j in lat.covers:
        out.append(f"{ind}f{i} -> f{j};")
    return out


def _galois_dot(pair: GaloisPair) -> str:
    alpha = pair.lattice.greedoid.alphabet
    out = ["digraph galois {", "  rankdir=BT;", "  subgraph cluster_flats {", '    label="flats";']
    out += _flat_body(pair.lattice, "    ")
    out += ["  }", "  subgraph cluster_closed {", '    label="closed sets";']
    name = {S: f"s{k}" for k, S in enumerate(pair.closed.sets)}
    for S in pair.closed.sets:
        label = f"{alpha.format_set(S)}\\nρ={pair.closed.rank(S)}"
        out.append(f"    {name[S]} [label={_q(label)}, shape=box];")
    for S, T in pair.closed.covers:
        out.append(f"    {name[S]} -> {name[T]};")
    out.append("  }")
    for fid, S in enumerate(pair.phi_star):
        out.append(f'  f{fid} -> {name[S]} [style=dashed, constraint=false, label="φ*"];')
    for S, fid in pair.phi_lower.items():
        if fid is not None:
            out.append(f'  {name[S]} -> f{fid} [style=dotted, constraint=false, label="φ_*"];')
    out.append("}")
    return "\n".join(out) + "\n"


def count_greedoids(n, normal_only=False, dedup=False) -> int:
    return sum(1 for _ in enumerate_greedoids(n, normal_only, dedup))

