"""Subgroup computations over enumerated elements.

Normalizers, centralizers and Sylow subgroups are found by filtering the
full element list of the ambient group, so they are limited by the
exhaustive cap.  Normal closures and derived series use only the
stabilizer chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

import numpy as np

from .errors import NotNormal, NotSubgroup, QuotientCapExceeded
from .group import (
    PermGroup,
    StabilizerChain,
    compose_rows,
    get_limits,
    group_from_rows,
    invert_rows,
    power_rows,
)
from .perm import Permutation, commutator, conjugate, p_part, prime_divisors

_CHUNK = 1 << 15


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup ``group`` of ``parent``; construction checks the containment witness."""

    parent: PermGroup
    group: PermGroup

    def __post_init__(self):
        if self.group.degree != self.parent.degree:
            raise NotSubgroup("subgroup degree differs from parent")
        if self.parent.order() % self.group.order():
            raise NotSubgroup("subgroup order does not divide parent order")
        if not all(self.parent.contains(g) for g in self.group.generators):
            raise NotSubgroup("a generator is not in the parent group")

    def __getattr__(self, name):
        # delegate order(), contains(), element_rows(), ... to the group itself
        if name in ("parent", "group") or name.startswith("__"):
            raise AttributeError(name)
        return getattr(self.group, name)

    def __contains__(self, g: Permutation) -> bool:
        return self.group.contains(g)

    def __repr__(self):
        return f"Subgroup(order={self.group.order()} in {self.parent!r})"


GroupLike = Union[PermGroup, Subgroup]


def as_group(H: GroupLike) -> PermGroup:
    return H.group if isinstance(H, Subgroup) else H


def whole(G: PermGroup) -> Subgroup:
    return Subgroup(G, G)


def trivial_subgroup(G: PermGroup) -> Subgroup:
    return Subgroup(G, PermGroup([], G.degree, name="1"))


def subgroup_generated(G: PermGroup, gens: Iterable[Permutation]) -> Subgroup:
    gens = list(gens)
    return Subgroup(G, PermGroup(gens, G.degree))


def _nontrivial_gens(H: PermGroup) -> list[Permutation]:
    return [h for h in H.generators if not h.is_identity()]


def _filter_rows(G: PermGroup, keep: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Rows of ``G`` (in canonical order) satisfying a vectorized predicate."""
    rows = G.element_rows()
    parts = []
    for lo in range(0, len(rows), _CHUNK):
        chunk = rows[lo:lo + _CHUNK]
        parts.append(chunk[keep(chunk)])
    return np.concatenate(parts) if parts else rows[:0]


def _subgroup_from_filter(G: PermGroup, keep) -> Subgroup:
    rows = _filter_rows(G, keep)
    if len(rows) == G.order():
        return whole(G)
    return Subgroup(G, group_from_rows(G.degree, rows))


def is_normal(G: PermGroup, H: GroupLike) -> bool:
    H = as_group(H)
    return all(H.contains(conjugate(h, g)) for h in _nontrivial_gens(H) for g in G.generators)


def is_subgroup(H: GroupLike, K: GroupLike) -> bool:
    """True if K <= H."""
    H, K = as_group(H), as_group(K)
    return all(H.contains(k) for k in K.generators)


def _first_orbit(H: PermGroup) -> tuple[int, np.ndarray]:
    lv = H.chain.levels[0]
    mask = np.zeros(H.degree, dtype=bool)
    mask[lv.orbit] = True
    return lv.base, mask


def normalizer(G: PermGroup, H: GroupLike) -> Subgroup:
    """{ g in G : H^g = H }, by filtering the elements of G."""
    Hg = as_group(H)
    gens = _nontrivial_gens(Hg)
    if not gens:
        return whole(G)
    G.check_cap()
    tables = [np.array(h.table, dtype=np.intp) for h in gens]
    base0, orbit0 = _first_orbit(Hg)

    def keep(x):
        x = np.asarray(x, dtype=np.intp)
        mask = np.ones(len(x), dtype=bool)
        # x^-1 h x sends x[i] to x[h[i]]; test its image of H's first base point first
        pre = np.argmax(x == base0, axis=1)
        for h in tables:
            img = x[np.arange(len(x)), h[pre]]
            mask &= orbit0[img]
        idx = np.flatnonzero(mask)
        if not len(idx):
            return mask
        xs = x[idx]
        xinv = invert_rows(xs)
        sub = np.ones(len(idx), dtype=bool)
        for h in tables:
            live = np.flatnonzero(sub)
            if not len(live):
                break
            conj = compose_rows(compose_rows(xinv[live], h), xs[live])
            sub[live] = Hg.contains_rows(conj)
        mask[idx] = sub
        return mask

    return _subgroup_from_filter(G, keep)


def centralizer(G: PermGroup, H: GroupLike) -> Subgroup:
    """{ g in G : g h = h g for every generator h of H }."""
    gens = _nontrivial_gens(as_group(H))
    if not gens:
        return whole(G)
    G.check_cap()
    tables = [np.array(h.table, dtype=np.intp) for h in gens]

    def keep(x):
        x = np.asarray(x, dtype=np.intp)
        idx = np.arange(len(x))
        # column by column on the shrinking set of survivors
        for h in tables:
            for c in range(x.shape[1]):
                if not len(idx):
                    break
                idx = idx[h[x[idx, c]] == x[idx, h[c]]]
        mask = np.zeros(len(x), dtype=bool)
        mask[idx] = True
        return mask

    return _subgroup_from_filter(G, keep)


def center(H: GroupLike) -> Subgroup:
    Hg = as_group(H)
    return centralizer(Hg, Hg)


def sylow(G: PermGroup, p: int, start: int = 0) -> Subgroup:
    """A Sylow p-subgroup, grown through normalizers.

    The seed is the first nontrivial p-part power found scanning the elements
    from position ``start``; each round adjoins the first p-element of N_G(P)
    outside P.  Different ``start`` values give (usually) different conjugates.
    """
    n = G.order()
    if n % p:
        raise ValueError(f"{p} does not divide |G| = {n}")
    key = ("sylow", p, start)
    cached = G.cache.get(key)
    if cached is not None:
        return cached
    G.check_cap()
    target = p_part(n, p)
    m = n // target
    rows = G.element_rows()
    if start:
        start %= len(rows)
        rows = np.concatenate([rows[start:], rows[:start]])
    seed = _first_outside(rows, m, PermGroup([], G.degree))
    chain = StabilizerChain(G.degree)
    chain.extend(seed)
    gens = [Permutation(seed, check=False)]
    while chain.order() < target:
        P = PermGroup(gens, G.degree, _chain=chain)
        N = normalizer(G, P)
        y = _first_outside(N.element_rows(), m, P)
        if y is None:
            raise AssertionError("normalizer growth stalled below the Sylow order")
        chain = StabilizerChain.from_generators(G.degree, [g.table for g in gens] + [y])
        gens.append(Permutation(y, check=False))
    if chain.order() != target:
        raise AssertionError(f"Sylow {p}-subgroup has order {chain.order()}, expected {target}")
    P = Subgroup(G, PermGroup(gens, G.degree, name=f"Syl{p}", _chain=chain))
    G.cache.setdefault(key, P)
    return G.cache[key]


def _first_outside(rows: np.ndarray, m: int, P: PermGroup):
    """First power ``x**m`` (x scanned in row order) not lying in P."""
    for lo in range(0, len(rows), 4096):
        powers = power_rows(rows[lo:lo + 4096], m)
        outside = np.flatnonzero(~P.contains_rows(powers))
        if len(outside):
            return tuple(int(v) for v in powers[outside[0]])
    return None


def normal_closure(G: PermGroup, S: Iterable[Permutation]) -> Subgroup:
    """Smallest subgroup containing S and closed under conjugation by G."""
    chain = StabilizerChain(G.degree)
    gens: list[Permutation] = []
    for s in S:
        if chain.extend(s.table):
            gens.append(s)
    i = 0
    while i < len(gens):
        n = gens[i]
        i += 1
        for g in G.generators:
            c = conjugate(n, g)
            if chain.extend(c.table):
                gens.append(c)
    return Subgroup(G, PermGroup(gens, G.degree, _chain=chain))


def derived_subgroup(G: GroupLike) -> Subgroup:
    G = as_group(G)
    gens = G.generators
    comms = [commutator(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return normal_closure(G, comms)


def derived_series(G: GroupLike) -> list[PermGroup]:
    """G = G0 > G1 > ... down to the first repeated term."""
    series = [as_group(G)]
    while True:
        D = derived_subgroup(series[-1]).group
        if D.order() == series[-1].order():
            return series
        series.append(D)


def perfect_core(G: GroupLike) -> Subgroup:
    G = as_group(G)
    return Subgroup(G, derived_series(G)[-1])


def is_solvable(G: GroupLike) -> bool:
    return perfect_core(G).order() == 1


def is_perfect(G: GroupLike) -> bool:
    G = as_group(G)
    return derived_subgroup(G).order() == G.order()


def is_abelian(G: GroupLike) -> bool:
    gens = as_group(G).generators
    return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])


def is_nilpotent(G: GroupLike) -> bool:
    """Every Sylow subgroup is normal."""
    G = as_group(G)
    return all(is_normal(G, sylow(G, p)) for p in G.prime_divisors())


@dataclass
class Quotient:
    """G/N realized as the regular action on the cosets of N."""

    group: PermGroup
    parent: PermGroup
    kernel: PermGroup
    labels: np.ndarray = field(repr=False)
    reps: np.ndarray = field(repr=False)

    def project(self, g: Permutation) -> Permutation:
        images = compose_rows(self.reps, np.array(g.table, dtype=np.intp))
        return Permutation(self.labels[self.parent.index_rows(images)].tolist(), check=False)


def quotient(G: PermGroup, N: GroupLike) -> Quotient:
    Ng = as_group(N)
    if not is_subgroup(G, Ng):
        raise NotSubgroup("N is not a subgroup of G")
    if not is_normal(G, Ng):
        raise NotNormal("N is not normal in G")
    index = G.order() // Ng.order()
    cap = get_limits().quotient_cap
    if index > cap:
        raise QuotientCapExceeded(index, cap)
    rows = G.element_rows()
    nrows = np.asarray(Ng.element_rows(), dtype=np.intp)
    labels = np.full(len(rows), -1, dtype=np.intp)
    reps = []
    for i in range(len(rows)):
        if labels[i] >= 0:
            continue
        x = np.asarray(rows[i], dtype=np.intp)
        coset = nrows[:, x]  # x * n for n in N
        labels[G.index_rows(coset)] = len(reps)
        reps.append(x)
    reps = np.array(reps, dtype=np.intp)
    gens = []
    for s in G.generators:
        images = compose_rows(reps, np.array(s.table, dtype=np.intp))
        gens.append(Permutation(labels[G.index_rows(images)].tolist(), check=False))
    Q = PermGroup(gens, index, name=f"{G.name or 'G'}/N")
    if Q.order() != index:
        raise AssertionError("quotient action has the wrong order")
    return Quotient(Q, G, Ng, labels, reps)


def action_kernel_on_factor(G: PermGroup, H: GroupLike, K: GroupLike) -> Subgroup:
    """C_G(H/K) = { g in G : [g, h] in K for every generator h of H }."""
    Hg, Kg = as_group(H), as_group(K)
    if not is_subgroup(G, Hg):
        raise NotSubgroup("H is not a subgroup of G")
    if not is_subgroup(Hg, Kg):
        raise NotSubgroup("K is not contained in H")
    if not is_normal(G, Hg):
        raise NotNormal("H is not normal in G")
    if not is_normal(G, Kg):
        raise NotNormal("K is not normal in G")
    gens = [h for h in _nontrivial_gens(Hg) if not Kg.contains(h)]
    if not gens:
        return whole(G)
    G.check_cap()
    pairs = [(np.array(h.table, dtype=np.intp), np.array(h.inverse().table, dtype=np.intp))
             for h in gens]

    def keep(x):
        x = np.asarray(x, dtype=np.intp)
        xinv = invert_rows(x)
        mask = np.ones(len(x), dtype=bool)
        for h, hinv in pairs:
            idx = np.flatnonzero(mask)
            if not len(idx):
                break
            # g^-1 h^-1 g h
            comm = compose_rows(compose_rows(compose_rows(xinv[idx], hinv), x[idx]), h)
            mask[idx] = Kg.contains_rows(comm)
        return mask

    return _subgroup_from_filter(G, keep)


@dataclass(frozen=True)
class ChiefFactor:
    order: int
    primes: tuple[int, ...]
    kernel: Subgroup = field(repr=False)

    @property
    def kernel_order(self) -> int:
        return self.kernel.order()


@dataclass(frozen=True)
class ChiefSeries:
    terms: tuple[Subgroup, ...]  # 1 = K0 < K1 < ... < Km = G
    factors: tuple[ChiefFactor, ...]

    def factor_orders(self) -> list[int]:
        return [f.order for f in self.factors]


def minimal_normal_above(G: PermGroup, K: GroupLike, sweep: np.ndarray | None = None) -> Subgroup:
    """A normal subgroup M > K of G with M/K minimal normal in G/K.

    Among all candidates ⟨K, x⟩^G, the one of smallest order wins; ties go to
    the candidate containing the earliest element (in ``sweep`` order, default
    canonical element order) outside K.
    """
    Kg = as_group(K)
    G.check_cap()
    rows = np.asarray(G.element_rows())
    order = np.arange(len(rows)) if sweep is None else np.asarray(sweep)
    rows = rows[order]
    in_k = Kg.contains_rows(rows)
    # x K of prime order in G/K
    cand = np.zeros(len(rows), dtype=bool)
    for p in prime_divisors(G.order() // Kg.order()):
        cand |= ~in_k & Kg.contains_rows(power_rows(rows, p))
    done = np.zeros(len(rows), dtype=bool)
    inv_order = np.empty(len(order), dtype=np.intp)
    inv_order[order] = np.arange(len(order))
    grows = np.asarray(G.element_rows(), dtype=np.intp)
    ginv = invert_rows(grows)
    closures: list[Subgroup] = []
    for i in np.flatnonzero(cand):
        if done[i]:
            continue
        x = rows[i].astype(np.intp)
        # the whole conjugacy class shares one normal closure
        cls = compose_rows(compose_rows(ginv, x), grows)
        done[inv_order[G.index_rows(cls)]] = True
        x_perm = Permutation(x.tolist(), check=False)
        closures.append(normal_closure(G, list(Kg.generators) + [x_perm]))
    best = min(c.order() for c in closures)
    winners = [c for c in closures if c.order() == best]
    if len(winners) == 1:
        return winners[0]
    first = []
    for c in winners:
        hits = np.flatnonzero(c.contains_rows(rows) & ~in_k)
        first.append(int(hits[0]))
    return winners[int(np.argmin(first))]


def chief_series(G: PermGroup, sweep: np.ndarray | None = None) -> ChiefSeries:
    """A chief series built bottom-up from minimal normal subgroups."""
    G.check_cap()
    terms = [trivial_subgroup(G)]
    factors = []
    while terms[-1].order() < G.order():
        K = terms[-1]
        M = minimal_normal_above(G, K, sweep)
        fo = M.order() // K.order()
        kernel = action_kernel_on_factor(G, M, K)
        factors.append(ChiefFactor(fo, tuple(prime_divisors(fo)), kernel))
        terms.append(M)
    return ChiefSeries(tuple(terms), tuple(factors))
