"""Flats of interval greedoids, the lattice they form, and lattice-level checks
(semimodularity, kernel-intersection closure, the forking property)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .analysis import continuations, is_interval, kernel
from .core import (
    AxiomViolation,
    Check,
    Greedoid,
    GreedoidError,
    NotInterval,
    NotNormal,
    iter_words,
    subset_key,
    support,
)


class NotALattice(GreedoidError):
    def __init__(self, kind, witness):
        self.kind = kind
        self.witness = witness
        super().__init__(f"flat order is not a lattice: {kind} fails at {witness!r}")


@dataclass(frozen=True)
class Flat:
    id: int
    members: tuple  # feasible masks sharing one continuation set
    gamma: int
    kernel: int
    rank: int


@dataclass(frozen=True, eq=False)
class FlatLattice:
    greedoid: Greedoid
    flats: tuple
    leq: tuple  # leq[i][j]: flat i ⊑ flat j
    covers: tuple  # (lower, upper) pairs
    meet: tuple
    join: tuple
    bottom: int
    top: int

    def __len__(self):
        return len(self.flats)

    @property
    def flat_of(self) -> dict:
        """Map feasible mask -> flat id."""
        return {m: f.id for f in self.flats for m in f.members}

    def lt(self, i, j):
        return i != j and self.leq[i][j]

    def is_cover(self, i, j):
        return (i, j) in self._cover_set

    @property
    def _cover_set(self):
        s = self.__dict__.get("_covers_cache")
        if s is None:
            s = frozenset(self.covers)
            self.__dict__["_covers_cache"] = s
        return s

    def kernel_of(self, i):
        return self.flats[i].kernel

    def flat_with_kernel(self, K):
        for f in self.flats:
            if f.kernel == K:
                return f.id
        return None


def _classes(g: Greedoid) -> dict:
    by_gamma = {}
    for m in g.sorted_feasible:
        by_gamma.setdefault(continuations(g, m), []).append(m)
    return by_gamma


def compute_flats(g: Greedoid) -> list:
    """Partition the feasible sets by continuation set and attach kernels.

    Requires a normal interval greedoid.  Flat ids follow (rank, least member).
    """
    if g.loop_mask:
        raise NotNormal(f"loops {g.alphabet.format_set(g.loop_mask)}")
    ok, w = is_interval(g)
    if not ok:
        raise NotInterval(f"interval property fails at {w!r}")
    groups = sorted(_classes(g).items(), key=lambda kv: subset_key(kv[1][0]))
    flats = []
    seen_kernels = {}
    for fid, (gamma, members) in enumerate(groups):
        ranks = {m.bit_count() for m in members}
        if len(ranks) != 1:
            raise AxiomViolation("equal-rank flats", tuple(members))
        kernels = {kernel(g, m) for m in members}
        if len(kernels) != 1:
            raise AxiomViolation("one kernel per flat", tuple(members))
        (K,) = kernels
        union = 0
        for m in members:
            union |= m
        if union != K:
            raise AxiomViolation("kernel is the union of the flat", (K, union))
        if K in seen_kernels:
            raise AxiomViolation("flat-kernel bijection", (seen_kernels[K], fid))
        seen_kernels[K] = fid
        flats.append(Flat(fid, tuple(members), gamma, K, ranks.pop()))
    return flats


def flat_order_by_sets(g: Greedoid, flats) -> list:
    """``F ⊑ F'`` iff some member of ``F`` is a subset of some member of ``F'``."""
    k = len(flats)
    leq = [[False] * k for _ in range(k)]
    for f in flats:
        for h in flats:
            if f.rank > h.rank:
                continue
            leq[f.id][h.id] = any(a & b == a for a in f.members for b in h.members)
    return leq


def flat_order_by_words(g: Greedoid, flats) -> list:
    """Word definition: ``[α] ⊏ [β]`` iff some ``αβ'`` (``β' ≠ ε``) is feasible and ``∼ β``.

    Exponential; kept as an independent oracle for :func:`flat_order_by_sets`.
    """
    flat_of = {m: f.id for f in flats for m in f.members}
    k = len(flats)
    leq = [[i == j for j in range(k)] for i in range(k)]
    words = list(iter_words(g))
    for w in words:
        for i in range(len(w)):
            lo = flat_of[support(w[:i])]
            leq[lo][flat_of[support(w)]] = True
    return leq


@lru_cache(maxsize=8192)
def flat_lattice(g: Greedoid) -> FlatLattice:
    flats = compute_flats(g)
    leq = flat_order_by_sets(g, flats)
    k = len(flats)
    ids = range(k)
    for i in ids:
        for j in ids:
            if i != j and leq[i][j] and leq[j][i]:
                raise NotALattice("antisymmetry", (i, j))
            for m in ids:
                if leq[i][j] and leq[j][m] and not leq[i][m]:
                    raise NotALattice("transitivity", (i, j, m))
    covers = []
    for i in ids:
        for j in ids:
            if i != j and leq[i][j] and not any(
                m != i and m != j and leq[i][m] and leq[m][j] for m in ids
            ):
                covers.append((i, j))
    meet = [[0] * k for _ in ids]
    join = [[0] * k for _ in ids]
    for i in ids:
        for j in ids:
            lower = [m for m in ids if leq[m][i] and leq[m][j]]
            glb = [m for m in lower if all(leq[x][m] for x in lower)]
            if len(glb) != 1:
                raise NotALattice("meet", (i, j))
            upper = [m for m in ids if leq[i][m] and leq[j][m]]
            lub = [m for m in upper if all(leq[m][x] for x in upper)]
            if len(lub) != 1:
                raise NotALattice("join", (i, j))
            meet[i][j] = glb[0]
            join[i][j] = lub[0]
    bottom = [m for m in ids if all(leq[m][x] for x in ids)]
    top = [m for m in ids if all(leq[x][m] for x in ids)]
    return FlatLattice(
        greedoid=g,
        flats=tuple(flats),
        leq=tuple(tuple(row) for row in leq),
        covers=tuple(covers),
        meet=tuple(tuple(r) for r in meet),
        join=tuple(tuple(r) for r in join),
        bottom=bottom[0],
        top=top[0],
    )


def _lattice(x) -> FlatLattice:
    return x if isinstance(x, FlatLattice) else flat_lattice(x)


def is_semimodular(lat) -> Check:
    """``F ≻ F⊓F'`` implies ``F⊔F' ≻ F'``; covers must also raise rank by one.

    Witness ``("cover-rank", (i, j))`` or ``("semimodular", (i, j))``.
    """
    lat = _lattice(lat)
    for i, j in lat.covers:
        if lat.flats[j].rank != lat.flats[i].rank + 1:
            return Check(False, ("cover-rank", (i, j)))
    k = len(lat)
    for i in range(k):
        for j in range(k):
            m = lat.meet[i][j]
            if lat.is_cover(m, i) and not lat.is_cover(j, lat.join[i][j]):
                return Check(False, ("semimodular", (i, j)))
    return Check(True)


def kernels_intersection_closed(lat) -> Check:
    """``κ(F⊓F') = κ(F) ∩ κ(F')`` for all pairs; witness is the least flat-id pair."""
    lat = _lattice(lat)
    k = len(lat)
    for i in range(k):
        for j in range(i + 1, k):
            if lat.kernel_of(lat.meet[i][j]) != lat.kernel_of(i) & lat.kernel_of(j):
                return Check(False, (i, j))
    return Check(True)


def check_forking(lat) -> Check:
    """For flats ``F, F'``, ``μ`` in ``F⊓F'`` and ``μ+x`` feasible:
    ``[μx] ⊑ F'`` and ``[μx] ⋢ F`` force ``x ∈ Γ(F)``.

    Witness ``(F, F', μ, x)`` with least flat ids.
    """
    lat = _lattice(lat)
    g = lat.greedoid
    flat_of = lat.flat_of
    fam = g.feasible
    k = len(lat)
    for i in range(k):
        gamma_f = lat.flats[i].gamma
        for j in range(k):
            for mu in lat.flats[lat.meet[i][j]].members:
                for x in range(g.n):
                    bit = 1 << x
                    if mu & bit or (mu | bit) not in fam:
                        continue
                    fx = flat_of[mu | bit]
                    if lat.leq[fx][j] and not lat.leq[fx][i] and not gamma_f & bit:
                        return Check(False, (i, j, mu, x))
    return Check(True)


def kernel_order_isomorphic(lat) -> Check:
    """Flat order coincides with containment of kernels."""
    lat = _lattice(lat)
    k = len(lat)
    for i in range(k):
        for j in range(k):
            kin = lat.kernel_of(i) & lat.kernel_of(j) == lat.kernel_of(i)
            if kin != lat.leq[i][j]:
                return Check(False, (i, j))
    return Check(True)
