"""Sylow normalizer divisibility data for the sporadic simple groups.

Each item lists pi(G) and assertions "q divides |N_G(G_p) : C_G(G_p)|".
The table is stored exactly as published, typos included.  Only the five
smallest groups are recomputed; the rest are reference data.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .constructors import janko, mathieu
from .sylow_graph import SylowGraph, gamma_graph

COMPUTABLE = {
    "M11": lambda: mathieu(11),
    "M12": lambda: mathieu(12),
    "M22": lambda: mathieu(22),
    "J1": lambda: janko(1),
    "J2": lambda: janko(2),
}


@dataclass(frozen=True)
class AppendixItem:
    item: int
    name: str
    label: str  # the group name as printed
    pi: tuple[int, ...]
    divides: tuple[tuple[int, int], ...]  # (q, p): q | |N_G(G_p) : C_G(G_p)|

    @property
    def computable(self) -> bool:
        return self.name in COMPUTABLE


@lru_cache(maxsize=1)
def appendix_items() -> tuple[AppendixItem, ...]:
    text = (resources.files("sgraph") / "data" / "appendix.json").read_text()
    return tuple(
        AppendixItem(d["item"], d["name"], d["label"], tuple(d["pi"]),
                     tuple((q, p) for q, p in d["divides"]))
        for d in json.loads(text)["items"]
    )


def lookup(name: str) -> AppendixItem:
    key = name.strip().lower()
    for it in appendix_items():
        if key in (it.name.lower(), it.label.lower(), str(it.item)):
            return it
    known = ", ".join(it.name for it in appendix_items())
    raise KeyError(f"unknown appendix item {name!r}; known: {known}")


@dataclass(frozen=True)
class CheckLine:
    text: str
    expected: str
    computed: str
    ok: bool


def verify(item: AppendixItem, graph: SylowGraph | None = None) -> list[CheckLine]:
    """Recompute every assertion of ``item``; ``graph`` may be supplied to reuse work."""
    if graph is None:
        if not item.computable:
            raise ValueError(f"{item.name} is reference data only")
        graph = gamma_graph(COMPUTABLE[item.name]())
    lines = []
    pi = tuple(graph.vertices)
    lines.append(CheckLine("pi(G)", _fmt_set(item.pi), _fmt_set(pi), pi == item.pi))
    for q, p in item.divides:
        if p not in graph.data:
            lines.append(CheckLine(f"{q} | |N(G_{p}):C(G_{p})|", "true",
                                   f"{p} not in pi(G)", False))
            continue
        nc = graph.nc_index(p)
        lines.append(CheckLine(f"{q} | |N(G_{p}):C(G_{p})|", "true",
                               f"index {nc}", nc % q == 0))
    conn = graph.is_connected("delta")
    lines.append(CheckLine("Delta(G) connected", "true", str(conn).lower(), conn))
    return lines


def reference_table(item: AppendixItem) -> list[str]:
    out = [f"({item.item}) {item.label}: pi = {_fmt_set(item.pi)}"]
    by_q: dict[int, list[int]] = {}
    for q, p in item.divides:
        by_q.setdefault(q, []).append(p)
    for q, ps in by_q.items():
        out.append(f"  {q} divides |N(G_p):C(G_p)| for p in {_fmt_set(ps)}")
    return out


def _fmt_set(xs) -> str:
    return "{" + ",".join(str(x) for x in xs) + "}"
