"""Exact-rational polymatroid rank functions, their closed sets, and how they
relate to a greedoid: representation, alignment and the Galois pair between
flats and closed sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .analysis import continuations, kernel
from .core import (
    AxiomViolation,
    Alphabet,
    Check,
    Greedoid,
    GreedoidError,
    NotNormal,
    SetSystem,
    basic_words,
    bits,
    subset_key,
    word_key,
)
from .flats import FlatLattice, flat_lattice

MAX_RANK_LETTERS = 16


class NotARepresentation(GreedoidError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"rank function does not represent the greedoid (witness {witness!r})")


@dataclass(frozen=True, eq=False)
class SetFunction:
    """Dense table ``values[mask]`` of exact rationals; not yet validated."""

    alphabet: Alphabet
    values: tuple

    def __post_init__(self):
        if self.alphabet.n > MAX_RANK_LETTERS:
            raise ValueError(f"rank tables are capped at {MAX_RANK_LETTERS} letters")
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != 1 << self.alphabet.n:
            raise ValueError(f"expected {1 << self.alphabet.n} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, alphabet, fn) -> "SetFunction":
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        return cls(alphabet, tuple(Fraction(fn(m)) for m in range(1 << alphabet.n)))

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    # validated and raw tables with the same values compare equal
    def __eq__(self, other):
        if not isinstance(other, SetFunction):
            return NotImplemented
        return self.alphabet == other.alphabet and self.values == other.values

    def __hash__(self):
        return hash((self.alphabet, self.values))

    @property
    def n(self):
        return self.alphabet.n

    @property
    def integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    @property
    def subcardinal(self) -> bool:
        return all(self.values[1 << i] <= 1 for i in range(self.n))


@dataclass(frozen=True, eq=False)
class PolymatroidRank(SetFunction):
    """A :class:`SetFunction` that passed :func:`validate_polymatroid`."""


def check_polymatroid(f: SetFunction) -> Check:
    """Normalized, monotone and submodular, witness ``(axiom, data)`` on failure.

    Submodularity is checked in the local form
    ``ρ(X+a) + ρ(X+b) ≥ ρ(X+a+b) + ρ(X)``, which is equivalent to diminishing
    returns; the witness is reported as the diminishing-returns triple
    ``(X, X+b, a)``, meaning ``(ρ/X+b)(a) > (ρ/X)(a)``.
    """
    v = f.values
    n = f.n
    if v[0] != 0:
        return Check(False, ("normalized", 0))
    if any(x < 0 for x in v):
        return Check(False, ("normalized", next(m for m, x in enumerate(v) if x < 0)))
    for X in sorted(range(1 << n), key=subset_key):
        for y in range(n):
            bit = 1 << y
            if not X & bit and v[X | bit] < v[X]:
                return Check(False, ("monotone", (X, y)))
    for X in sorted(range(1 << n), key=subset_key):
        for a in range(n):
            ba = 1 << a
            if X & ba:
                continue
            for b in range(n):
                bb = 1 << b
                if b == a or X & bb:
                    continue
                if v[X | ba] + v[X | bb] < v[X | ba | bb] + v[X]:
                    return Check(False, ("submodular", (X, X | bb, a)))
    return Check(True)


def validate_polymatroid(f) -> PolymatroidRank:
    """Return a :class:`PolymatroidRank` or raise :class:`AxiomViolation`."""
    if isinstance(f, PolymatroidRank):
        return f
    ok, w = check_polymatroid(f)
    if not ok:
        axiom, data = w
        raise AxiomViolation(axiom, data)
    return PolymatroidRank(f.alphabet, f.values)


def make_rank(alphabet, fn) -> PolymatroidRank:
    return validate_polymatroid(SetFunction.from_function(alphabet, fn))


def diminishing_returns_violation(f: SetFunction):
    """Brute-force search over all ``X ⊂ Y``, ``z ∉ Y``; used as a test oracle."""
    v = f.values
    n = f.n
    for Y in range(1 << n):
        X = Y
        while True:
            X = (X - 1) & Y
            for z in range(n):
                bit = 1 << z
                if Y & bit:
                    continue
                if v[Y | bit] - v[Y] > v[X | bit] - v[X]:
                    return (X, Y, z)
            if X == 0:
                break
    return None


def marginal(rho: SetFunction, X: int, y: int) -> Fraction:
    bit = 1 << y
    if X & bit:
        return Fraction(0)
    return rho.values[X | bit] - rho.values[X]


def poly_span(rho: SetFunction, X: int) -> int:
    v = rho.values
    r = v[X]
    span = X
    for y in range(rho.n):
        bit = 1 << y
        if v[X | bit] == r:
            span |= bit
    return span


def is_closed(rho, X) -> bool:
    return poly_span(rho, X) == X


@dataclass(frozen=True, eq=False)
class ClosedSetLattice:
    rank: SetFunction
    sets: tuple  # closed masks in subset order
    covers: tuple

    def index(self, S):
        return self.sets.index(S)

    def meet(self, S, T):
        return S & T

    def join(self, S, T):
        return poly_span(self.rank, S | T)

    def is_cover(self, S, T):
        return (S, T) in self._cover_set

    @property
    def _cover_set(self):
        s = self.__dict__.get("_cc")
        if s is None:
            s = frozenset(self.covers)
            self.__dict__["_cc"] = s
        return s


def closed_sets(rho: SetFunction) -> ClosedSetLattice:
    """Closed sets of ``σ_ρ`` ordered by containment.

    Raises :class:`AxiomViolation` if an intersection of closed sets is not closed.
    """
    sets = tuple(m for m in sorted(range(1 << rho.n), key=subset_key) if is_closed(rho, m))
    members = set(sets)
    for i, S in enumerate(sets):
        for T in sets[i + 1:]:
            if S & T not in members:
                raise AxiomViolation("closed sets meet by intersection", (S, T))
    covers = []
    for S in sets:
        for T in sets:
            if S == T or S & T != S:
                continue
            if not any(U not in (S, T) and S & U == S and U & T == U for U in sets):
                covers.append((S, T))
    return ClosedSetLattice(rho, sets, tuple(covers))


def language_of_rank(rho: SetFunction) -> SetSystem:
    """Supports of the words ``x_1..x_k`` with ``ρ({x_1..x_i}) = i`` for every ``i``.

    Subset DP: ``A`` is reachable iff ``ρ(A) = |A|`` and some ``A-a`` is reachable.
    """
    v = rho.values
    n = rho.n
    reach = bytearray(1 << n)
    reach[0] = 1
    for A in range(1, 1 << n):
        if v[A] != A.bit_count():
            continue
        rest = A
        while rest:
            low = rest & -rest
            if reach[A ^ low]:
                reach[A] = 1
                break
            rest ^= low
    return SetSystem(rho.alphabet, frozenset(m for m in range(1 << n) if reach[m]))


def words_of_rank_naive(rho: SetFunction) -> set:
    """Every simple word whose prefixes all have rank equal to their length (slow oracle)."""
    v = rho.values
    out = set()
    letters = range(rho.n)
    for k in range(rho.n + 1):
        for w in permutations(letters, k):
            m = 0
            ok = True
            for i, x in enumerate(w, 1):
                m |= 1 << x
                if v[m] != i:
                    ok = False
                    break
            if ok:
                out.add(w)
    return out


def is_representation(rho: SetFunction, g: Greedoid) -> Check:
    """The unit-increment language of ``ρ`` equals the greedoid; witness is the least set
    in the symmetric difference."""
    if rho.alphabet.n != g.n:
        raise ValueError("rank function and greedoid use different alphabets")
    diff = language_of_rank(rho).feasible ^ g.feasible
    if diff:
        return Check(False, min(diff, key=subset_key))
    return Check(True)


def _require_representation(rho, g):
    ok, w = is_representation(rho, g)
    if not ok:
        raise NotARepresentation(w)


def is_aligned(rho: SetFunction, g: Greedoid) -> Check:
    """Marginal-gap test: for every feasible ``A``, ``ρ(A) = ρ(κ(A))`` and no
    ``y ∉ κ(A)`` has ``0 < (ρ/A)(y) < 1``.

    Witness ``(A, None)`` when the first condition fails, ``(A, y)`` for the gap.
    Normality is not required by this test itself.
    """
    _require_representation(rho, g)
    v = rho.values
    for A in g.sorted_feasible:
        K = kernel(g, A)
        if v[A] != v[K]:
            return Check(False, (A, None))
        for y in range(g.n):
            if K >> y & 1:
                continue
            m = marginal(rho, A, y)
            if 0 < m < 1:
                return Check(False, (A, y))
    return Check(True)


def canonical_map(rho: SetFunction, lat: FlatLattice) -> tuple:
    """``σ_ρ ∘ κ`` on flats: ``phi[flat id]`` is a closed set."""
    return tuple(poly_span(rho, f.kernel) for f in lat.flats)


def is_aligned_by_map(rho: SetFunction, g: Greedoid) -> Check:
    """Alignment through the map ``σ_ρ ∘ κ``: order preserving, agreement, inclusion
    and cover preserving.  Witness ``(condition, data)``."""
    _require_representation(rho, g)
    if g.loop_mask:
        raise NotNormal("alignment needs a normal greedoid")
    lat = flat_lattice(g)
    closed = closed_sets(rho)
    phi = canonical_map(rho, lat)
    v = rho.values
    k = len(lat)
    for i in range(k):
        for j in range(k):
            if lat.leq[i][j] and phi[i] & phi[j] != phi[i]:
                return Check(False, ("order", (i, j)))
    for f in lat.flats:
        for A in f.members:
            if v[A] != v[phi[f.id]]:
                return Check(False, ("agreement", A))
            if A & phi[f.id] != A:
                return Check(False, ("inclusion", A))
    for i, j in lat.covers:
        if not closed.is_cover(phi[i], phi[j]):
            return Check(False, ("cover", (i, j)))
    return Check(True)


@dataclass(frozen=True, eq=False)
class GaloisPair:
    lattice: FlatLattice
    closed: ClosedSetLattice
    phi_star: tuple  # flat id -> closed set
    phi_lower: dict  # closed set -> flat id (None where κ⁻¹ is undefined)
    adjunction: Check
    cover_preserving: Check
    insertion: Check
    isomorphism: Check

    @property
    def undefined(self) -> tuple:
        return tuple(S for S, f in self.phi_lower.items() if f is None)

    @property
    def connection(self) -> bool:
        return self.adjunction.ok and self.cover_preserving.ok


def check_galois(rho: SetFunction, g: Greedoid) -> GaloisPair:
    """Build ``φ* = σ_ρ∘κ`` and ``φ_* = κ⁻¹`` and certify them exhaustively.

    ``φ_*(S)`` is the flat whose kernel is ``κ(S)``.  If no flat has that kernel the
    closed set is recorded as undefined and the adjunction fails on it.
    """
    _require_representation(rho, g)
    lat = flat_lattice(g)
    closed = closed_sets(rho)
    phi = canonical_map(rho, lat)
    lower = {S: lat.flat_with_kernel(kernel(g, S)) for S in closed.sets}

    adj = Check(True)
    for f in lat.flats:
        for S in closed.sets:
            t = lower[S]
            if t is None:
                adj = Check(False, (f.id, S))
                break
            if (phi[f.id] & S == phi[f.id]) != lat.leq[f.id][t]:
                adj = Check(False, (f.id, S))
                break
        if not adj.ok:
            break

    cov = Check(True)
    for i, j in lat.covers:
        if not closed.is_cover(phi[i], phi[j]):
            cov = Check(False, (i, j))
            break

    ins = Check(True)
    for S in closed.sets:
        t = lower[S]
        if t is None or phi[t] != S:
            ins = Check(False, S)
            break

    iso = Check(True)
    if len(set(phi)) != len(phi) or len(phi) != len(closed.sets):
        missing = [S for S in closed.sets if S not in set(phi)]
        iso = Check(False, ("bijection", missing[0] if missing else None))
    else:
        for i in range(len(lat)):
            for j in range(len(lat)):
                if lat.leq[i][j] != (phi[i] & phi[j] == phi[i]):
                    iso = Check(False, ("order", (i, j)))
                    break
            if not iso.ok:
                break
    return GaloisPair(lat, closed, phi, lower, adj, cov, ins, iso)


@dataclass
class PropertyReport:
    """Named pass/fail entries with witnesses, plus free-form extras."""

    entries: dict = field(default_factory=dict)  # name -> Check
    extras: dict = field(default_factory=dict)

    def add(self, name, check):
        self.entries[name] = check
        return check

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.entries.values())

    def failures(self):
        return {k: c for k, c in self.entries.items() if not c.ok}

    def lines(self, fmt=repr):
        for name, c in self.entries.items():
            status = "pass" if c.ok else "FAIL"
            tail = "" if c.ok else f"\t{fmt(c.witness)}"
            yield f"{name}\t{status}{tail}"


def continuation_window(g: Greedoid, word, y: int):
    """Indices ``i`` (prefix lengths ``0..len(word)``) with ``y ∈ Γ[x_1..x_i]``.

    Returns ``(j, k)`` when the indices are exactly the range ``j ≤ i < k``, and
    ``None`` when they are empty or not contiguous.
    """
    hits = []
    m = 0
    for i in range(len(word) + 1):
        if i:
            m |= 1 << word[i - 1]
        if continuations(g, m) >> y & 1:
            hits.append(i)
    if not hits or hits[-1] - hits[0] + 1 != len(hits):
        return None
    return hits[0], hits[-1] + 1


def _reachable_continuations(g: Greedoid, A: int) -> int:
    """Letters ``y`` for which some ``β`` makes ``αβy`` feasible (``α̃ = A``)."""
    fam = g.feasible
    seen = {A}
    frontier = [A]
    out = 0
    while frontier:
        nxt = []
        for B in frontier:
            gamma = continuations(g, B)
            out |= gamma
            for y in bits(gamma):
                C = B | 1 << y
                if C not in seen and C in fam:
                    seen.add(C)
                    nxt.append(C)
        frontier = nxt
    return out


def verify_aligned_consequences(rho: SetFunction, g: Greedoid, limit=100_000) -> PropertyReport:
    """Instantiate the consequences of alignment over every feasible set and letter.

    * ``step-unit``: ``A+x`` feasible, ``(ρ/A+x)(y) = 0`` and ``(ρ/A)(y) ≠ 0`` give ``(ρ/A)(y) = 1``.
    * ``contiguous-window``: on every basic word each letter is a continuation on a
      nonempty contiguous range of prefixes (``extras["windows"]`` keeps them).
    * ``outside-kernel-ge-1``: ``y ∉ κ(A)`` gives ``(ρ/A)(y) ≥ 1``.
    * ``eventual-continuation``: ``y ∉ κ(A)`` is a continuation of some feasible extension of ``A``.
    """
    rep = PropertyReport()
    n = g.n
    fam = g.feasible

    w = None
    for A in g.sorted_feasible:
        for x in range(n):
            if A >> x & 1 or (A | 1 << x) not in fam:
                continue
            for y in range(n):
                m0 = marginal(rho, A, y)
                if marginal(rho, A | 1 << x, y) == 0 and m0 != 0 and m0 != 1:
                    w = (A, x, y)
                    break
            if w:
                break
        if w:
            break
    rep.add("step-unit", Check(w is None, w))

    windows = {}
    w = None
    for word in sorted(basic_words(g, limit), key=word_key):
        for y in range(n):
            win = continuation_window(g, word, y)
            windows[(word, y)] = win
            if win is None and w is None:
                w = (word, y)
    rep.extras["windows"] = windows
    rep.add("contiguous-window", Check(w is None, w))

    w = None
    for A in g.sorted_feasible:
        K = kernel(g, A)
        for y in range(n):
            if not K >> y & 1 and marginal(rho, A, y) < 1:
                w = (A, y)
                break
        if w:
            break
    rep.add("outside-kernel-ge-1", Check(w is None, w))

    w = None
    for A in g.sorted_feasible:
        outside = g.alphabet.full & ~kernel(g, A)
        miss = outside & ~_reachable_continuations(g, A)
        if miss:
            w = (A, next(bits(miss)))
            break
    rep.add("eventual-continuation", Check(w is None, w))
    return rep

