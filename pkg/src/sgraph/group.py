"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain.

Element-level work (enumeration, filtering, batch membership) is done on
numpy arrays of shape ``(count, degree)`` holding 0-based image tables.
"""

from __future__ import annotations

import contextlib
import contextvars
import threading
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapExceeded, DegreeMismatch
from .perm import Permutation, _apply_table, prime_divisors

DEFAULT_CAP = 2_000_000
DEFAULT_QUOTIENT_CAP = 50_000

_CHUNK = 1 << 15


@dataclass(frozen=True)
class Limits:
    exhaustive_cap: int = DEFAULT_CAP
    quotient_cap: int = DEFAULT_QUOTIENT_CAP


_limits: contextvars.ContextVar[Limits] = contextvars.ContextVar("sgraph_limits", default=Limits())


def get_limits() -> Limits:
    return _limits.get()


@contextlib.contextmanager
def limits(exhaustive_cap: int | None = None, quotient_cap: int | None = None):
    """Temporarily override the enumeration caps."""
    cur = _limits.get()
    new = Limits(
        exhaustive_cap if exhaustive_cap is not None else cur.exhaustive_cap,
        quotient_cap if quotient_cap is not None else cur.quotient_cap,
    )
    if new.exhaustive_cap < 1 or new.quotient_cap < 1:
        raise ValueError("caps must be positive")
    token = _limits.set(new)
    try:
        yield new
    finally:
        _limits.reset(token)


def _inv_table(t: tuple) -> tuple:
    inv = [0] * len(t)
    for i, x in enumerate(t):
        inv[x] = i
    return tuple(inv)


def _is_id(t: tuple) -> bool:
    return all(i == x for i, x in enumerate(t))


class _Level:
    __slots__ = ("base", "gens", "orbit", "rep", "rep_inv", "checked")

    def __init__(self, base: int):
        self.base = base
        self.gens: list[tuple] = []
        self.orbit: list[int] = []
        self.rep: dict[int, tuple] = {}
        self.rep_inv: dict[int, tuple] = {}
        self.checked: set[tuple[int, int]] = set()

    def add_gen(self, g: tuple, degree: int) -> None:
        # orbits only ever grow; existing representatives are never replaced
        if not self.orbit:
            ident = tuple(range(degree))
            self.orbit.append(self.base)
            self.rep[self.base] = ident
            self.rep_inv[self.base] = ident
        self.gens.append(g)
        queue = []
        for pt in self.orbit:
            img = g[pt]
            if img not in self.rep:
                self._record(img, _apply_table(self.rep[pt], g))
                queue.append(img)
        while queue:
            pt = queue.pop(0)
            for s in self.gens:
                img = s[pt]
                if img not in self.rep:
                    self._record(img, _apply_table(self.rep[pt], s))
                    queue.append(img)

    def _record(self, pt: int, u: tuple) -> None:
        self.orbit.append(pt)
        self.rep[pt] = u
        self.rep_inv[pt] = _inv_table(u)


class StabilizerChain:
    """Base, transversals and strong generators for a permutation group.

    Built by deterministic Schreier-Sims: new base points are the first point
    moved by the residue that required them.
    """

    def __init__(self, degree: int):
        self.degree = degree
        self.levels: list[_Level] = []
        self._np_cache = None

    @classmethod
    def from_generators(cls, degree: int, gens: Iterable[tuple]) -> "StabilizerChain":
        chain = cls(degree)
        for g in gens:
            chain.extend(g)
        return chain

    @property
    def base(self) -> list[int]:
        return [lv.base for lv in self.levels]

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.orbit)
        return n

    def strip(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        """Sift ``g`` from level ``start``; return the residue and the level it stopped at."""
        for j in range(start, len(self.levels)):
            lv = self.levels[j]
            img = g[lv.base]
            inv = lv.rep_inv.get(img)
            if inv is None:
                return g, j
            g = _apply_table(g, inv)
        return g, len(self.levels)

    def contains_table(self, g: tuple) -> bool:
        r, j = self.strip(g)
        return j == len(self.levels) and _is_id(r)

    def extend(self, g: tuple) -> bool:
        """Add ``g`` to the group; return True if the group grew."""
        r, j = self.strip(g)
        if j == len(self.levels) and _is_id(r):
            return False
        self._add_strong(r, 0, j)
        self._complete(j)
        return True

    def _add_strong(self, y: tuple, lo: int, j: int) -> None:
        self._np_cache = None
        if j == len(self.levels):
            moved = next(i for i, x in enumerate(y) if i != x)
            self.levels.append(_Level(moved))
        for lv in self.levels[lo:j + 1]:
            lv.add_gen(y, self.degree)

    def _complete(self, i: int) -> None:
        while i >= 0:
            grew = False
            lv = self.levels[i]
            pos = 0
            while pos < len(lv.orbit) and not grew:
                beta = lv.orbit[pos]
                pos += 1
                for xi, x in enumerate(lv.gens):
                    key = (beta, xi)
                    if key in lv.checked:
                        continue
                    h = _apply_table(_apply_table(lv.rep[beta], x), lv.rep_inv[x[beta]])
                    y, j = self.strip(h, i + 1)
                    if j == len(self.levels) and _is_id(y):
                        lv.checked.add(key)
                        continue
                    self._add_strong(y, i + 1, j)
                    # the pair is re-examined once the deeper levels are complete
                    i = j
                    grew = True
                    break
            if not grew:
                i -= 1

    def strong_generators(self) -> list[tuple]:
        seen, out = set(), []
        for lv in self.levels:
            for g in lv.gens:
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    # numpy views, built on demand
    def _arrays(self):
        arrs = self._np_cache
        if arrs is None:
            arrs = []
            d = self.degree
            for lv in self.levels:
                index = np.full(d, -1, dtype=np.intp)
                reps = np.empty((len(lv.orbit), d), dtype=np.intp)
                invs = np.empty((len(lv.orbit), d), dtype=np.intp)
                for k, pt in enumerate(lv.orbit):
                    index[pt] = k
                    reps[k] = lv.rep[pt]
                    invs[k] = lv.rep_inv[pt]
                arrs.append((lv.base, index, reps, invs))
            self._np_cache = arrs
        return arrs

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        """Vectorized membership for a batch of image tables."""
        out = np.empty(len(rows), dtype=bool)
        ident = np.arange(self.degree)
        arrs = self._arrays()
        for lo in range(0, len(rows), _CHUNK):
            x = np.asarray(rows[lo:lo + _CHUNK], dtype=np.intp)
            ok = np.ones(len(x), dtype=bool)
            for base, index, _reps, invs in arrs:
                k = index[x[:, base]]
                ok &= k >= 0
                k[k < 0] = 0
                x = np.take_along_axis(invs[k], x, axis=1)
            out[lo:lo + len(x)] = ok & (x == ident).all(axis=1)
        return out

    def enumerate_rows(self) -> np.ndarray:
        """All elements as rows (unsorted)."""
        d = self.degree
        dtype = np.uint16 if d < 65536 else np.uint32
        rows = np.arange(d, dtype=np.intp)[None, :]
        for _base, _index, reps, _invs in reversed(self._arrays()):
            # each element factors uniquely as r_deep * ... * r_0
            prod = reps[:, rows]  # (t, m, d): reps[j][rows[m, i]]
            rows = prod.transpose(1, 0, 2).reshape(-1, d)
        return rows.astype(dtype)


def sort_rows(rows: np.ndarray) -> np.ndarray:
    if len(rows) <= 1:
        return rows
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def row_keys(rows: np.ndarray) -> np.ndarray:
    """Byte keys whose memcmp order is the lexicographic order of the rows."""
    be = np.ascontiguousarray(rows.astype(">u4"))
    return be.view(np.dtype((np.void, 4 * rows.shape[1]))).ravel()


def compose_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise products: apply ``a[r]`` then ``b[r]`` (either may be a single row)."""
    a = np.asarray(a, dtype=np.intp)
    b = np.asarray(b, dtype=np.intp)
    if b.ndim == 1:
        return b[a]
    if a.ndim == 1:
        return b[:, a]
    return np.take_along_axis(b, a, axis=1)


def invert_rows(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.intp)
    out = np.empty_like(a)
    np.put_along_axis(out, a, np.broadcast_to(np.arange(a.shape[1]), a.shape), axis=1)
    return out


def power_rows(a: np.ndarray, k: int) -> np.ndarray:
    a = np.asarray(a, dtype=np.intp)
    result = np.broadcast_to(np.arange(a.shape[1]), a.shape).copy()
    base = a
    while k:
        if k & 1:
            result = compose_rows(result, base)
        k >>= 1
        if k:
            base = compose_rows(base, base)
    return result


class PermGroup:
    """A permutation group given by generators.

    Immutable after construction; the element cache is filled at most once.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None,
                 name: str | None = None, *, _chain: StabilizerChain | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree is required for an empty generator set")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise DegreeMismatch(degree, g.degree)
        if not gens:
            gens = (Permutation.identity(degree),)
        self.degree = degree
        self.generators = gens
        self.name = name
        self.chain = _chain if _chain is not None else StabilizerChain.from_generators(
            degree, (g.table for g in gens))
        self._order = self.chain.order()
        self._lock = threading.Lock()
        self._rows: np.ndarray | None = None
        self._keys: np.ndarray | None = None
        self.cache: dict = {}

    def __repr__(self):
        label = self.name or f"<{len(self.generators)} generators>"
        return f"PermGroup({label}, degree={self.degree}, order={self._order})"

    def order(self) -> int:
        return self._order

    def prime_divisors(self) -> list[int]:
        return prime_divisors(self._order)

    def is_trivial(self) -> bool:
        return self._order == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(self.degree, g.degree)
        return self.chain.contains_table(g.table)

    __contains__ = contains

    def contains_rows(self, rows: np.ndarray) -> np.ndarray:
        return self.chain.contains_rows(rows)

    def check_cap(self, cap: int | None = None) -> None:
        cap = get_limits().exhaustive_cap if cap is None else cap
        if self._order > cap:
            raise CapExceeded(self._order, cap)

    def element_rows(self, cap: int | None = None) -> np.ndarray:
        """All elements as a read-only array, sorted lexicographically."""
        self.check_cap(cap)
        rows = self._rows
        if rows is None:
            with self._lock:
                if self._rows is None:
                    rows = sort_rows(self.chain.enumerate_rows())
                    rows.setflags(write=False)
                    self._rows = rows
                rows = self._rows
        return rows

    def elements(self, cap: int | None = None) -> list[Permutation]:
        return [Permutation(r.tolist(), check=False) for r in self.element_rows(cap)]

    def __iter__(self) -> Iterator[Permutation]:
        for r in self.element_rows():
            yield Permutation(r.tolist(), check=False)

    def element_keys(self) -> np.ndarray:
        keys = self._keys
        if keys is None:
            rows = self.element_rows()
            with self._lock:
                if self._keys is None:
                    self._keys = row_keys(rows)
                keys = self._keys
        return keys

    def index_rows(self, rows: np.ndarray) -> np.ndarray:
        """Positions of the given elements in ``element_rows()`` (-1 if absent)."""
        keys = self.element_keys()
        q = row_keys(np.asarray(rows))
        pos = np.searchsorted(keys, q)
        pos = np.minimum(pos, len(keys) - 1)
        found = keys[pos] == q
        return np.where(found, pos, -1)

    def _set_rows(self, rows: np.ndarray) -> None:
        # rows must already be the sorted element set of this group
        rows = np.asarray(rows)
        if len(rows) != self._order:
            raise AssertionError("element cache does not match the chain order")
        rows = rows.copy()
        rows.setflags(write=False)
        with self._lock:
            if self._rows is None:
                self._rows = rows


def group_from_generators(gens: Iterable[Permutation], name: str | None = None) -> PermGroup:
    gens = list(gens)
    if not gens:
        raise ValueError("at least one generator is required")
    return PermGroup(gens, name=name)


def group_from_rows(degree: int, rows: np.ndarray, name: str | None = None,
                    sorted_rows: bool = True) -> PermGroup:
    """Group whose elements are exactly ``rows`` (assumed closed under products).

    Generators are picked greedily in row order: each new generator is the
    first row not yet covered by the group built so far.
    """
    rows = np.asarray(rows)
    target = len(rows)
    chain = StabilizerChain(degree)
    gens = []
    covered = np.zeros(target, dtype=bool)
    while chain.order() < target:
        first = int(np.flatnonzero(~covered)[0])
        g = tuple(int(v) for v in rows[first])
        chain.extend(g)
        gens.append(Permutation(g, check=False))
        covered = chain.contains_rows(rows)
    if chain.order() != target:
        raise AssertionError("row set is not a subgroup")
    group = PermGroup(gens, degree, name=name, _chain=chain)
    if sorted_rows:
        group._set_rows(rows)
    return group


def trivial_group(degree: int) -> PermGroup:
    return PermGroup([], degree, name="1")


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, a: Permutation) -> bool:
    return G.contains(a)


def elements(G: PermGroup, cap: int | None = None) -> list[Permutation]:
    return G.elements(cap)


def rows_to_perms(rows: Sequence) -> list[Permutation]:
    return [Permutation([int(v) for v in r], check=False) for r in rows]
