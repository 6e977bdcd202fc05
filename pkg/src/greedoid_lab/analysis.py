"""Greedoid operators (rank, span, kernel, continuations) and the interval and
optimism checks."""

from __future__ import annotations

from itertools import combinations

from .core import (
    DEFAULT_WORD_LIMIT,
    Check,
    Greedoid,
    NotFeasible,
    basic_words,
    bits,
    iter_words,
    subset_key,
    support,
    word_key,
)


def rank(g: Greedoid, X: int) -> int:
    """Length of the longest feasible word using only letters of ``X``."""
    return g.rank_table[X]


def greedoid_span(g: Greedoid, X: int) -> int:
    table = g.rank_table
    r = table[X]
    span = X
    for y in range(g.n):
        bit = 1 << y
        if not X & bit and table[X | bit] == r:
            span |= bit
    return span


def kernel(g: Greedoid, X: int) -> int:
    """Union of the feasible sets contained in the span of ``X``."""
    return g.feasible_union_table[greedoid_span(g, X)]


def continuations(g: Greedoid, A: int) -> int:
    if A not in g.feasible:
        raise NotFeasible(f"{g.alphabet.format_set(A)} is not feasible")
    fam = g.feasible
    out = 0
    for x in range(g.n):
        bit = 1 << x
        if not A & bit and (A | bit) in fam:
            out |= bit
    return out


def is_interval(g: Greedoid) -> Check:
    """Set form of the interval property.

    For feasible ``A ⊆ B ⊆ C`` and ``x ∉ C``: if ``A+x`` and ``C+x`` are feasible
    then so is ``B+x``.  Witness ``(A, B, C, x)``: least ``x``, then least ``B``,
    ``A``, ``C`` in subset order.
    """
    fam = g.feasible
    ordered = g.sorted_feasible
    for x in range(g.n):
        bit = 1 << x
        aug = [s for s in ordered if not s & bit and (s | bit) in fam]
        if not aug:
            continue
        for b in ordered:
            if b & bit or (b | bit) in fam:
                continue
            below = [a for a in aug if a & b == a]
            if not below:
                continue
            above = [c for c in aug if c & b == b]
            if above:
                return Check(False, (below[0], b, above[0], x))
    return Check(True)


def _subsequences(word, k):
    for idx in combinations(range(len(word)), k):
        yield tuple(word[i] for i in idx)


def is_interval_words(g: Greedoid, limit: int = DEFAULT_WORD_LIMIT) -> Check:
    """Word form of the interval property (slow; intended as a cross-check).

    The condition: for feasible ``α`` and ``β`` with ``|β| > |α|``, some nonempty
    subword ``β'`` of ``β`` over letters outside ``α`` makes ``αβ'`` feasible
    with ``|αβ'| = |β|``.  Note that with a single letter allowed this would hold
    for every greedoid by exchange; requiring ``αβ'`` to reach the length of
    ``β`` is what makes it a real restriction.  Witness ``(α, β)``.
    """
    words = sorted(iter_words(g, limit), key=word_key)
    lang = set(words)
    for alpha in words:
        amask = support(alpha)
        for beta in words:
            if len(beta) <= len(alpha):
                continue
            rest = tuple(x for x in beta if not amask >> x & 1)
            need = len(beta) - len(alpha)
            if not any(alpha + sub in lang for sub in _subsequences(rest, need)):
                return Check(False, (alpha, beta))
    return Check(True)


def prefix_continuations(g: Greedoid, word) -> list:
    """``Γ`` of each prefix ``x_1..x_i`` for ``i = 0..len(word)``."""
    out = []
    mask = 0
    out.append(continuations(g, mask))
    for x in word:
        mask |= 1 << x
        out.append(continuations(g, mask))
    return out


def optimism_failures(g: Greedoid, limit: int = DEFAULT_WORD_LIMIT) -> list:
    """Every ``(y, basic word)`` pair where the non-loop ``y`` is never a continuation."""
    nonloops = [y for y in range(g.n) if not g.loop_mask >> y & 1]
    out = []
    for word in sorted(basic_words(g, limit), key=word_key):
        seen = 0
        for gamma in prefix_continuations(g, word):
            seen |= gamma
        for y in nonloops:
            if not seen >> y & 1:
                out.append((y, word))
    out.sort(key=lambda p: (p[0], word_key(p[1])))
    return out


def is_optimistic(g: Greedoid, limit: int = DEFAULT_WORD_LIMIT) -> Check:
    """Every non-loop letter is a continuation of some prefix of every basic word.

    Witness ``(y, word)``: the least failing letter, then its least basic word.
    Use :func:`optimism_failures` for the complete list.
    """
    fails = optimism_failures(g, limit)
    return Check(not fails, fails[0] if fails else None)


def is_kernel_monotone(g: Greedoid) -> Check:
    """``X ⊆ Y ⇒ κ(X) ⊆ κ(Y)``, checked on one-letter extensions (enough by transitivity)."""
    n = g.n
    for X in range(1 << n):
        kx = kernel(g, X)
        for y in range(n):
            bit = 1 << y
            if X & bit:
                continue
            if kx & ~kernel(g, X | bit):
                return Check(False, (X, X | bit))
    return Check(True)


def feasible_supersets(g: Greedoid, A: int) -> list:
    return [s for s in g.sorted_feasible if s & A == A]


def sorted_masks(masks) -> list:
    return sorted(masks, key=subset_key)


def letters_of(mask):
    return list(bits(mask))
