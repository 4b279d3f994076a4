"""Sylow normalizer data, the graphs Gamma(G) and Delta(G), and the ROSN1 test."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd

from networkx.utils import UnionFind

from .group import PermGroup
from .perm import factorize, prime_divisors
from .subgroups import center, centralizer, normalizer, sylow


@dataclass(frozen=True)
class SylowData:
    p: int
    sylow_order: int
    normalizer_order: int
    centralizer_order: int
    center_of_sylow_order: int
    nc_index: int = field(init=False)
    automiser_order: int = field(init=False)

    def __post_init__(self):
        P, N, C, Z = (self.sylow_order, self.normalizer_order,
                      self.centralizer_order, self.center_of_sylow_order)
        if N % C:
            raise AssertionError(f"p={self.p}: |C| = {C} does not divide |N| = {N}")
        # |P C| = |P| |C| / |Z(P)| because P ∩ C_G(P) = Z(P)
        num, den = N * Z, P * C
        if num % den:
            raise AssertionError(f"p={self.p}: automiser order {num}/{den} is not an integer")
        aut = num // den
        if aut % self.p == 0:
            raise AssertionError(f"p={self.p}: automiser order {aut} is divisible by p")
        object.__setattr__(self, "nc_index", N // C)
        object.__setattr__(self, "automiser_order", aut)
        if self.nc_index != aut * (P // Z):
            raise AssertionError(f"p={self.p}: |N:C| != |A_p| |P:Z(P)|")

    @property
    def sylow_abelian(self) -> bool:
        return self.sylow_order == self.center_of_sylow_order


def sylow_data(G: PermGroup, p: int, start: int = 0) -> SylowData:
    if G.order() % p:
        raise ValueError(f"{p} is not in pi(G)")
    P = sylow(G, p, start)
    return SylowData(
        p=p,
        sylow_order=P.order(),
        normalizer_order=normalizer(G, P).order(),
        centralizer_order=centralizer(G, P).order(),
        center_of_sylow_order=center(P).order(),
    )


def _components(vertices, edges) -> list[list[int]]:
    uf = UnionFind(vertices)
    for a, b in edges:
        uf.union(a, b)
    groups = [sorted(s) for s in uf.to_sets()]
    return sorted(groups)


@dataclass(frozen=True)
class SylowGraph:
    order: int
    vertices: tuple[int, ...]
    data: dict[int, SylowData] = field(repr=False)
    gamma_edges: frozenset[tuple[int, int]]
    delta_edges: frozenset[tuple[int, int]]  # (p, q) with p <= q; p == q is a loop

    @classmethod
    def from_data(cls, order: int, data: dict[int, SylowData]) -> "SylowGraph":
        vertices = tuple(sorted(data))
        gamma = frozenset(
            (p, q) for p in vertices for q in vertices
            if p != q and data[p].automiser_order % q == 0
        )
        delta = frozenset(
            (p, q) for i, p in enumerate(vertices) for q in vertices[i:]
            if data[q].nc_index % p == 0 or data[p].nc_index % q == 0
        )
        return cls(order, vertices, dict(data), gamma, delta)

    @property
    def delta_loops(self) -> list[int]:
        return sorted(p for p, q in self.delta_edges if p == q)

    def undirected_gamma(self) -> frozenset[tuple[int, int]]:
        return frozenset((min(p, q), max(p, q)) for p, q in self.gamma_edges)

    def edges(self, variant: str = "gamma"):
        if variant == "gamma":
            return sorted(self.gamma_edges)
        if variant == "delta":
            return sorted(self.delta_edges)
        raise ValueError(f"unknown graph variant {variant!r}")

    def components(self, variant: str = "gamma") -> list[list[int]]:
        edges = [(p, q) for p, q in self.edges(variant) if p != q]
        return _components(self.vertices, edges)

    def is_connected(self, variant: str = "gamma") -> bool:
        # empty and singleton vertex sets count as connected
        return len(self.components(variant)) <= 1

    def nc_index(self, p: int) -> int:
        return self.data[p].nc_index


def gamma_graph(G: PermGroup) -> SylowGraph:
    """Gamma(G) and Delta(G) over pi(G); one Sylow representative per prime."""
    data = {p: sylow_data(G, p) for p in G.prime_divisors()}
    return SylowGraph.from_data(G.order(), data)


sylow_graph = gamma_graph


def delta_graph(G: PermGroup) -> SylowGraph:
    return gamma_graph(G)


def is_connected(graph: SylowGraph, variant: str = "gamma") -> bool:
    return graph.is_connected(variant)


def components(graph: SylowGraph, variant: str = "gamma") -> list[list[int]]:
    return graph.components(variant)


@dataclass(frozen=True)
class HypothesisReport:
    pi: tuple[int, ...]
    indices: tuple[int, ...]  # |N_G(G_p) : C_G(G_p)| per prime, in pi order
    passed: tuple[bool, ...]
    result: bool

    @property
    def failing_primes(self) -> list[int]:
        skip_first = bool(self.pi) and self.pi[0] == 2
        return [p for i, (p, ok) in enumerate(zip(self.pi, self.passed))
                if not ok and not (skip_first and i == 0)]


def rosn1(pi: list[int], indices: list[int], gap_literal: bool = False) -> tuple[list[bool], bool]:
    """The ROSN1 decision rule on precomputed indices.

    R[i] holds iff some prime factor of Q[i] is smaller than pi[i]; an index of
    1 has no prime factors, so R[i] is false.  The first entry is ignored when
    pi[0] == 2.  An empty pi gives True.

    With ``gap_literal`` the factor list of 1 is taken to be [1], as GAP's
    FactorsInt returns, which makes R[i] true whenever Q[i] == 1.
    """
    def factors(n):
        if n == 1 and gap_literal:
            return [1]
        return prime_divisors(n)

    R = [any(q < p for q in factors(Q)) for p, Q in zip(pi, indices)]
    if pi and pi[0] == 2:
        return R, all(R[1:])
    return R, all(R)


def hypothesis_check(G: PermGroup | SylowGraph, gap_literal: bool = False) -> HypothesisReport:
    graph = G if isinstance(G, SylowGraph) else gamma_graph(G)
    pi = list(graph.vertices)
    Q = [graph.nc_index(p) for p in pi]
    R, res = rosn1(pi, Q, gap_literal)
    return HypothesisReport(tuple(pi), tuple(Q), tuple(R), res)


def export_graph(graph: SylowGraph, fmt: str = "json", variant: str = "gamma") -> str:
    if fmt == "json":
        doc = {
            "order": graph.order,
            "pi": list(graph.vertices),
            "gamma_edges": [list(e) for e in sorted(graph.gamma_edges)],
            "delta_loops": graph.delta_loops,
            "nc_indices": {str(p): graph.data[p].nc_index for p in graph.vertices},
            "automiser_orders": {str(p): graph.data[p].automiser_order for p in graph.vertices},
            "connected": {"gamma": graph.is_connected("gamma"),
                          "delta": graph.is_connected("delta")},
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt == "dot":
        lines = []
        if variant == "gamma":
            lines.append("digraph gamma {")
            lines += [f"  {p};" for p in graph.vertices]
            lines += [f"  {p} -> {q};" for p, q in sorted(graph.gamma_edges)]
            lines += [f"  {p} -> {p} [dir=none, style=dashed];" for p in graph.delta_loops]
        elif variant == "delta":
            lines.append("graph delta {")
            lines += [f"  {p};" for p in graph.vertices]
            lines += [f"  {p} -- {q};" for p, q in sorted(graph.delta_edges)]
        else:
            raise ValueError(f"unknown graph variant {variant!r}")
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown export format {fmt!r}")


def factor_string(n: int) -> str:
    if n == 1:
        return "1"
    return " * ".join(f"{p}^{k}" if k > 1 else str(p) for p, k in sorted(factorize(n).items()))


def coprime(a: int, b: int) -> bool:
    return gcd(a, b) == 1
