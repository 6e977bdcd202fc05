"""Constructors for the standard greedoid families and their rank functions:
branching greedoids of rooted graphs, poset antimatroids, ordered geometries,
matroids from rank functions, double shellings and trimmed matroids."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import rank
from .core import (
    Alphabet,
    Check,
    Greedoid,
    GreedoidError,
    SetSystem,
    bits,
    iter_words,
    subset_key,
    support,
    validate_greedoid,
    word_key,
)
from .polymatroid import (
    PolymatroidRank,
    SetFunction,
    check_polymatroid,
    is_representation,
    validate_polymatroid,
)


class GraphInvalid(GreedoidError):
    pass


class NotSubcardinal(GreedoidError):
    pass


class ValidationFailed(GreedoidError):
    def __init__(self, stage, detail):
        self.stage = stage
        self.detail = detail
        super().__init__(f"{stage}: {detail}")


# --- rooted graphs -----------------------------------------------------------

@dataclass(frozen=True)
class RootedGraph:
    vertices: tuple
    edges: tuple  # (letter, u, v)
    root: str

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.root not in self.vertices:
            raise GraphInvalid(f"root {self.root!r} is not a vertex")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphInvalid("duplicate vertex names")
        names = [e[0] for e in self.edges]
        if len(set(names)) != len(names):
            raise GraphInvalid("duplicate edge letters")
        for name, u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise GraphInvalid(f"edge {name} uses an unknown vertex")
            if u == v:
                raise GraphInvalid(f"edge {name} is a self-loop")

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(tuple(e[0] for e in self.edges))

    def covered(self, X: int) -> set:
        out = set()
        for i in bits(X):
            _, u, v = self.edges[i]
            out.add(u)
            out.add(v)
        return out


def _is_rooted_tree(graph: RootedGraph, X: int) -> bool:
    if not X:
        return True
    verts = graph.covered(X)
    if graph.root not in verts or len(verts) != X.bit_count() + 1:
        return False
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in bits(X):
        _, u, v = graph.edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def ubg(graph: RootedGraph) -> Greedoid:
    """Edge sets forming a tree that contains the root."""
    alpha = graph.alphabet
    fam = frozenset(X for X in range(1 << alpha.n) if _is_rooted_tree(graph, X))
    return validate_greedoid(SetSystem(alpha, fam))


def cover_rank(graph: RootedGraph) -> PolymatroidRank:
    """Number of non-root vertices touched by an edge set."""
    root = graph.root
    return validate_polymatroid(
        SetFunction.from_function(graph.alphabet, lambda X: len(graph.covered(X) - {root}))
    )


# --- posets -------------------------------------------------------------------

@dataclass(frozen=True)
class Poset:
    """Strict order on letter ids; ``relations`` holds pairs ``(x, y)`` meaning ``x → y``."""

    alphabet: Alphabet
    relations: frozenset

    def __post_init__(self):
        rel = set(self.relations)
        n = self.alphabet.n
        for x, y in rel:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"relation ({x}, {y}) outside the alphabet")
        changed = True
        while changed:
            changed = False
            for x, y in list(rel):
                for y2, z in list(rel):
                    if y == y2 and (x, z) not in rel:
                        rel.add((x, z))
                        changed = True
        cyc = [x for x, y in rel if x == y]
        if cyc:
            raise ValueError(f"relation has a cycle through {self.alphabet.letters[cyc[0]]}")
        object.__setattr__(self, "relations", frozenset(rel))
        below = [0] * n
        above = [0] * n
        for x, y in rel:
            below[y] |= 1 << x
            above[x] |= 1 << y
        object.__setattr__(self, "_below", tuple(below))
        object.__setattr__(self, "_above", tuple(above))

    @classmethod
    def from_names(cls, alphabet, pairs) -> "Poset":
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        return cls(alphabet, frozenset((alphabet.index(x), alphabet.index(y)) for x, y in pairs))

    @classmethod
    def chain(cls, alphabet, order) -> "Poset":
        """Chain ``order[0] → order[1] → ...`` (``order`` is a string or list of names)."""
        order = list(order)
        return cls.from_names(alphabet, zip(order, order[1:]))

    @property
    def n(self):
        return self.alphabet.n

    def lt(self, x, y) -> bool:
        return (x, y) in self.relations

    def down(self, X: int) -> int:
        out = X
        for x in bits(X):
            out |= self._below[x]
        return out

    def is_lower(self, X: int) -> bool:
        return self.down(X) == X

    def minimal_in(self, rest: int) -> int:
        return sum(1 << x for x in bits(rest) if not self._below[x] & rest)

    def maximal_in(self, rest: int) -> int:
        return sum(1 << x for x in bits(rest) if not self._above[x] & rest)


def all_posets(n: int):
    """Every strict partial order on ``n`` labelled letters (brute force over relations)."""
    alpha = Alphabet.standard(n)
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    seen = set()
    for code in range(1 << len(pairs)):
        rel = frozenset(p for i, p in enumerate(pairs) if code >> i & 1)
        if any((y, x) in rel for x, y in rel):
            continue
        if any((x, z) not in rel for x, y in rel for y2, z in rel if y == y2 and x != z):
            continue
        if rel in seen:
            continue
        seen.add(rel)
        yield Poset(alpha, rel)


def poset_antimatroid(p: Poset) -> Greedoid:
    fam = frozenset(X for X in range(1 << p.n) if p.is_lower(X))
    return validate_greedoid(SetSystem(p.alphabet, fam))


def lower_set_rank(p: Poset) -> PolymatroidRank:
    """``ρ(X) = |↓X|``."""
    return validate_polymatroid(
        SetFunction.from_function(p.alphabet, lambda X: p.down(X).bit_count())
    )


@dataclass(frozen=True)
class OrderedGeometryReport:
    order_compatible: Check  # witness: first feasible word breaking the order
    basis_feasible: Check  # witness: first lower set where the two ranks differ
    lower_rank: SetFunction
    polymatroid: Check
    maximal: bool

    @property
    def is_ordered_geometry(self) -> bool:
        return self.order_compatible.ok and self.basis_feasible.ok


def lower_rank(g: Greedoid, p: Poset) -> SetFunction:
    """``ρ(X) = r(↓X)``; returned unvalidated."""
    return SetFunction.from_function(g.alphabet, lambda X: rank(g, p.down(X)))


def ordered_geometry_check(g: Greedoid, p: Poset, limit=1_000_000) -> OrderedGeometryReport:
    if g.alphabet != p.alphabet:
        raise ValueError("greedoid and poset use different alphabets")
    order = Check(True)
    for w in sorted(iter_words(g, limit), key=word_key):
        pos = {x: i for i, x in enumerate(w)}
        if any(pos[x] > pos[y] for x, y in p.relations if x in pos and y in pos):
            order = Check(False, w)
            break
    basis = Check(True)
    for X in sorted(range(1 << g.n), key=subset_key):
        if not p.is_lower(X):
            continue
        best = max((X & A).bit_count() for A in g.feasible)
        if rank(g, X) != best:
            basis = Check(False, X)
            break
    rho = lower_rank(g, p)
    poly = check_polymatroid(rho)
    maximal = poly.ok and is_representation(rho, g).ok
    return OrderedGeometryReport(order, basis, rho, poly, maximal)


# --- matroids and antimatroids ----------------------------------------------

def matroid_from_rank(rho: SetFunction) -> Greedoid:
    """Independent sets ``{A : ρ(A) = |A|}`` of a subcardinal rank function."""
    rho = validate_polymatroid(rho)
    bad = [i for i in range(rho.n) if rho(1 << i) > 1]
    if bad:
        raise NotSubcardinal(f"ρ({rho.alphabet.letters[bad[0]]}) > 1")
    fam = frozenset(A for A in range(1 << rho.n) if rho(A) == A.bit_count())
    return validate_greedoid(SetSystem(rho.alphabet, fam))


def uniform_matroid(n: int, k: int, alphabet=None) -> PolymatroidRank:
    alpha = alphabet or Alphabet.standard(n)
    return validate_polymatroid(
        SetFunction.from_function(alpha, lambda X: Fraction(min(X.bit_count(), k)))
    )


def free_matroid(alphabet) -> PolymatroidRank:
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    return uniform_matroid(alphabet.n, alphabet.n, alphabet)


def is_antimatroid(g: Greedoid) -> Check:
    """Normal and union-closed.  Witness ``("loop", y)`` or ``("union", (A, B))``."""
    if g.loop_mask:
        return Check(False, ("loop", next(bits(g.loop_mask))))
    fam = g.feasible
    ordered = g.sorted_feasible
    for i, A in enumerate(ordered):
        for B in ordered[i + 1:]:
            if A | B not in fam:
                return Check(False, ("union", (A, B)))
    return Check(True)


def is_antimatroid_words(g: Greedoid) -> Check:
    """Word form: ``α̃ ⊄ β̃`` forces some ``x ∈ α̃`` with ``βx`` feasible (slow oracle)."""
    if g.loop_mask:
        return Check(False, ("loop", next(bits(g.loop_mask))))
    fam = g.feasible
    for A in g.sorted_feasible:
        for B in g.sorted_feasible:
            if A & B == A:
                continue
            if not any((B | 1 << x) in fam for x in bits(A & ~B)):
                return Check(False, ("exchange", (A, B)))
    return Check(True)


def double_shelling(p: Poset) -> Greedoid:
    """Sets reached by repeatedly removing a minimal or maximal element of what remains."""
    full = p.alphabet.full
    fam = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for X in frontier:
            rest = full & ~X
            for x in bits(p.minimal_in(rest) | p.maximal_in(rest)):
                Y = X | 1 << x
                if Y not in fam:
                    fam.add(Y)
                    nxt.append(Y)
        frontier = nxt
    return validate_greedoid(SetSystem(p.alphabet, frozenset(fam)))


def prefix_closure(alphabet, words) -> Greedoid:
    """Greedoid whose family is the supports of all prefixes of ``words``."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    fam = set()
    for w in words:
        w = alphabet.word(w)
        for i in range(len(w) + 1):
            fam.add(support(w[:i]))
    return validate_greedoid(SetSystem(alphabet, frozenset(fam)))


# --- trimmed matroids ---------------------------------------------------------

def project(rho: SetFunction, word) -> tuple:
    """Keep each letter that raises the matroid rank of the prefix read so far."""
    out = []
    m = 0
    prev = rho(0)
    for x in word:
        m |= 1 << x
        cur = rho(m)
        if cur > prev:
            out.append(x)
        prev = cur
    return tuple(out)


def trim_words(rho: SetFunction, words) -> set:
    return {project(rho, w) for w in words}


def trim(rho: SetFunction, a: Greedoid, limit=1_000_000) -> Greedoid:
    """Project every word of the antimatroid ``a`` through the matroid with rank ``rho``.

    The projected words must form exactly the language of a greedoid; otherwise
    :class:`ValidationFailed` is raised with the stage that broke.
    """
    rho = validate_polymatroid(rho)
    if any(rho(1 << i) > 1 for i in range(rho.n)):
        raise NotSubcardinal("trim needs a matroid rank function")
    if rho.alphabet != a.alphabet:
        raise ValueError("matroid and antimatroid use different alphabets")
    if a.n > 6:
        raise ValueError("trim enumerates every word; capped at 6 letters")
    ok, w = is_antimatroid(a)
    if not ok:
        raise ValidationFailed("input", f"not an antimatroid ({w!r})")
    words = trim_words(rho, iter_words(a, limit))
    system = SetSystem(a.alphabet, frozenset(support(w) for w in words))
    try:
        g = validate_greedoid(system)
    except GreedoidError as exc:
        raise ValidationFailed("greedoid axioms", str(exc)) from exc
    lang = set(iter_words(g, limit))
    if lang != words:
        extra = sorted(lang ^ words, key=word_key)[0]
        raise ValidationFailed("language", f"projected words differ at {a.alphabet.format_word(extra)}")
    return g
