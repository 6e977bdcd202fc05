"""Alphabets, bitmask subsets, simple words, set systems and greedoid validation.

Subsets of the alphabet are plain ``int`` bitmasks (bit ``i`` is letter ``i``);
words are tuples of letter ids.  A :class:`Greedoid` is only obtained through
:func:`validate_greedoid`, so holding one means the axioms were checked.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple

MAX_LETTERS = 24
EAGER_CACHE_LIMIT = 16
DEFAULT_WORD_LIMIT = 1_000_000

Word = tuple  # tuple[int, ...] of distinct letter ids


class GreedoidError(Exception):
    """Base class for every error raised by this package."""


class EmptyFamily(GreedoidError):
    pass


class AxiomViolation(GreedoidError):
    def __init__(self, axiom, witness=None, message=None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"{axiom} violated (witness: {witness!r})")


class SizeLimit(GreedoidError):
    pass


class NotFeasible(GreedoidError):
    pass


class NotNormal(GreedoidError):
    pass


class NotInterval(GreedoidError):
    pass


class Check(NamedTuple):
    """Outcome of a property check: ``ok`` plus the witness of failure (if any)."""

    ok: bool
    witness: object = None


# --- bit helpers -----------------------------------------------------------

def bits(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def subset_key(mask: int):
    """Canonical order on subsets: by size, then lexicographically by letter ids."""
    return (mask.bit_count(), tuple(bits(mask)))


def word_key(word):
    return (len(word), tuple(word))


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def support(word) -> int:
    m = 0
    for x in word:
        m |= 1 << x
    return m


def is_simple(word) -> bool:
    return len(set(word)) == len(word)


# --- alphabet --------------------------------------------------------------

@dataclass(frozen=True)
class Alphabet:
    letters: tuple

    def __post_init__(self):
        letters = tuple(str(x) for x in self.letters)
        object.__setattr__(self, "letters", letters)
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letter names in {letters}")
        if len(letters) > MAX_LETTERS:
            raise ValueError(f"alphabet of {len(letters)} letters exceeds cap {MAX_LETTERS}")
        for name in letters:
            if not name or any(c in name for c in ",{}= \t"):
                raise ValueError(f"bad letter name {name!r}")

    @classmethod
    def standard(cls, n: int) -> "Alphabet":
        return cls(tuple(string.ascii_lowercase[:n]))

    @property
    def n(self) -> int:
        return len(self.letters)

    @property
    def full(self) -> int:
        return (1 << len(self.letters)) - 1

    def index(self, name: str) -> int:
        try:
            return self.letters.index(name)
        except ValueError:
            raise KeyError(f"unknown letter {name!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def word(self, letters) -> Word:
        """Parse ``"abc"`` (single-char letters) or a sequence of names into a word."""
        if isinstance(letters, str):
            if letters in ("", "ε"):
                return ()
            if " " in letters:
                letters = letters.split()
        w = tuple(self.index(x) for x in letters)
        if not is_simple(w):
            raise ValueError(f"word {letters!r} repeats a letter")
        return w

    def names(self, mask: int) -> list:
        return [self.letters[i] for i in bits(mask)]

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    def format_word(self, word) -> str:
        if not word:
            return "ε"
        parts = [self.letters[i] for i in word]
        sep = "" if all(len(p) == 1 for p in parts) else " "
        return sep.join(parts)


# --- set systems and greedoids ---------------------------------------------

@dataclass(frozen=True)
class SetSystem:
    alphabet: Alphabet
    feasible: frozenset

    def __post_init__(self):
        fam = frozenset(int(m) for m in self.feasible)
        object.__setattr__(self, "feasible", fam)
        bad = [m for m in fam if m < 0 or m > self.alphabet.full]
        if bad:
            raise ValueError(f"subset mask {bad[0]} uses letters outside the alphabet")

    @classmethod
    def from_names(cls, alphabet, sets) -> "SetSystem":
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        return cls(alphabet, frozenset(alphabet.mask(s) for s in sets))

    def sorted_sets(self) -> list:
        return sorted(self.feasible, key=subset_key)

    def describe(self) -> str:
        return "{" + ", ".join(self.alphabet.format_set(m) for m in self.sorted_sets()) + "}"


@dataclass(frozen=True)
class Greedoid:
    """A validated greedoid, stored as its accessible set family.

    The rank table and the "union of feasible subsets" table are computed once;
    for alphabets up to ``EAGER_CACHE_LIMIT`` letters this happens at construction.
    """

    system: SetSystem

    def __post_init__(self):
        if self.system.alphabet.n <= EAGER_CACHE_LIMIT:
            self.rank_table, self.feasible_union_table  # noqa: B018 - warm caches

    @property
    def alphabet(self) -> Alphabet:
        return self.system.alphabet

    @property
    def feasible(self) -> frozenset:
        return self.system.feasible

    @property
    def n(self) -> int:
        return self.system.alphabet.n

    def is_feasible(self, mask: int) -> bool:
        return mask in self.system.feasible

    @cached_property
    def sorted_feasible(self) -> tuple:
        return tuple(self.system.sorted_sets())

    @cached_property
    def rank_table(self) -> tuple:
        # r(X) = |X| if X feasible, else max over one-letter deletions
        n = self.n
        fam = self.system.feasible
        table = [0] * (1 << n)
        for m in range(1, 1 << n):
            if m in fam:
                table[m] = m.bit_count()
                continue
            best = 0
            rest = m
            while rest:
                low = rest & -rest
                v = table[m ^ low]
                if v > best:
                    best = v
                rest ^= low
            table[m] = best
        return tuple(table)

    @cached_property
    def feasible_union_table(self) -> tuple:
        """``table[M]`` is the union of all feasible subsets of ``M``."""
        n = self.n
        fam = self.system.feasible
        table = [0] * (1 << n)
        for m in range(1, 1 << n):
            u = m if m in fam else 0
            rest = m
            while rest:
                low = rest & -rest
                u |= table[m ^ low]
                rest ^= low
            table[m] = u
        return tuple(table)

    @cached_property
    def basic_rank(self) -> int:
        return self.rank_table[self.alphabet.full]

    @cached_property
    def loop_mask(self) -> int:
        union = 0
        for m in self.system.feasible:
            union |= m
        return self.alphabet.full & ~union

    def describe(self) -> str:
        return self.system.describe()


def validate_greedoid(system: SetSystem) -> Greedoid:
    """Check that ``system`` is an accessible set system with the exchange property.

    Raises :class:`EmptyFamily` for an empty family and :class:`AxiomViolation`
    (axiom ``"empty-set"``, ``"accessibility"`` or ``"exchange"``) otherwise; the
    witness is the least violating set (or pair) in :func:`subset_key` order.
    """
    fam = system.feasible
    if not fam:
        raise EmptyFamily("the feasible family is empty")
    if 0 not in fam:
        raise AxiomViolation("empty-set", None, "the empty set is not feasible")
    ordered = system.sorted_sets()
    for a in ordered:
        if a and not any((a & ~(1 << x)) in fam for x in bits(a)):
            raise AxiomViolation("accessibility", a)
    for x in ordered:
        for y in ordered:
            if x.bit_count() >= y.bit_count():
                continue
            if not any((x | (1 << z)) in fam for z in bits(y & ~x)):
                raise AxiomViolation("exchange", (x, y))
    return Greedoid(system)


def make_greedoid(alphabet, sets) -> Greedoid:
    """Shorthand: ``make_greedoid("abc", ["", "a", "ab"])``."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(tuple(alphabet))
    return validate_greedoid(SetSystem.from_names(alphabet, sets))


# --- derived views ---------------------------------------------------------

def iter_words(g: Greedoid, limit: int = DEFAULT_WORD_LIMIT) -> Iterator[Word]:
    """Feasible words in depth-first lexicographic order (ε first)."""
    fam = g.feasible
    n = g.n
    count = 0
    stack = [((), 0)]
    while stack:
        word, mask = stack.pop()
        count += 1
        if count > limit:
            raise SizeLimit(f"more than {limit} feasible words")
        yield word
        for x in reversed(range(n)):
            bit = 1 << x
            if not mask & bit and (mask | bit) in fam:
                stack.append((word + (x,), mask | bit))


def language_of(g: Greedoid, limit: int = DEFAULT_WORD_LIMIT) -> set:
    """All feasible words: those whose every prefix has a feasible support."""
    return set(iter_words(g, limit))


def loops(g: Greedoid) -> int:
    return g.loop_mask


def is_normal(g: Greedoid) -> bool:
    return g.loop_mask == 0


def basic_words(g: Greedoid, limit: int = DEFAULT_WORD_LIMIT) -> set:
    r = g.basic_rank
    return {w for w in iter_words(g, limit) if len(w) == r}


def prefixes(word) -> Iterator[Word]:
    for i in range(len(word) + 1):
        yield tuple(word[:i])


def system_from_words(alphabet: Alphabet, words) -> SetSystem:
    return SetSystem(alphabet, frozenset(support(w) for w in words))
