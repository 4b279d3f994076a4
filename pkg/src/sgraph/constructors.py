"""Named groups, direct products and the group expression language."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Union

from .errors import GroupExprError, ResourceError
from .fields import ProjectiveLine, field_gf
from .group import PermGroup
from .perm import Permutation, prime_power, read_generator_file

KNOWN_ORDERS = {
    "M11": 7920,
    "M12": 95040,
    "M22": 443520,
    "J1": 175560,
    "J2": 604800,
}


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("Sym(n) needs n >= 1")
    gens = [Permutation.identity(n)]
    if n >= 2:
        gens = [Permutation.from_cycles([list(range(1, n + 1))], n),
                Permutation.from_cycles([[1, 2]], n)]
    return _checked(PermGroup(gens, n, name=f"Sym({n})"), math.factorial(n))


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("Alt(n) needs n >= 1")
    gens = [Permutation.from_cycles([[1, 2, k]], n) for k in range(3, n + 1)]
    expected = math.factorial(n) // 2 if n >= 2 else 1
    return _checked(PermGroup(gens, n, name=f"Alt({n})"), expected)


def cyclic(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("Cyc(n) needs n >= 1")
    gen = Permutation.from_cycles([list(range(1, n + 1))], n) if n > 1 else Permutation.identity(1)
    return _checked(PermGroup([gen], n, name=f"Cyc({n})"), n)


def dihedral(n: int) -> PermGroup:
    """Symmetries of the n-gon, order 2n, on n points."""
    if n < 3:
        raise ValueError("Dih(n) needs n >= 3")
    rot = Permutation.from_cycles([list(range(1, n + 1))], n)
    refl = Permutation.from_cycles([[i, n + 1 - i] for i in range(1, n // 2 + 1)], n)
    return _checked(PermGroup([rot, refl], n, name=f"Dih({n})"), 2 * n)


def _checked(G: PermGroup, expected: int) -> PermGroup:
    if G.order() != expected:
        raise AssertionError(f"{G.name}: order {G.order()} != expected {expected}")
    return G


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


def _psl2_parts(q: int):
    pk = prime_power(q)
    if pk is None or q < 4:
        raise ValueError(f"PSL2(q) needs a prime power q >= 4, got {q}")
    p, k = pk
    F = field_gf(p, k)
    line = ProjectiveLine(F)
    gens = [line.mobius(1, 1, 0, 1)]
    if k > 1:
        gens.append(line.mobius(1, F.primitive, 0, 1))
    gens.append(line.mobius(0, 1, F.neg(1), 0))
    return p, k, line, gens


def psl2(q: int) -> PermGroup:
    """PSL2(q) acting by Moebius maps on the q+1 points of the projective line."""
    _p, _k, line, gens = _psl2_parts(q)
    return _checked(PermGroup(gens, line.size, name=f"PSL2({q})"), psl2_order(q))


def psl2_frobenius_extension(q: int, e: int) -> PermGroup:
    """PSL2(q) extended by the field automorphism ``x -> x**(p**e)``."""
    p, k, line, gens = _psl2_parts(q)
    if not 1 <= e < k or k % e:
        raise ValueError(f"PSL2({q}):{e} needs 1 <= e < {k} with e dividing {k}")
    sigma = line.frobenius(e)
    return _checked(PermGroup(gens + [sigma], line.size, name=f"PSL2({q}):{e}"),
                    psl2_order(q) * (k // e))


def frobenius_generator(q: int, e: int) -> Permutation:
    p, k, line, _ = _psl2_parts(q)
    return line.frobenius(e)


@lru_cache(maxsize=None)
def _load_resource(name: str) -> tuple[int, tuple[Permutation, ...]]:
    ref = resources.files("sgraph") / "data" / f"{name}.txt"
    with resources.as_file(ref) as path:
        degree, gens = read_generator_file(path)
    return degree, tuple(gens)


def _from_resource(name: str) -> PermGroup:
    degree, gens = _load_resource(name)
    G = PermGroup(gens, degree, name=name)
    if G.order() != KNOWN_ORDERS[name]:
        raise ResourceError(f"{name}: generator data gives order {G.order()}, "
                            f"expected {KNOWN_ORDERS[name]}")
    return G


def mathieu(n: int) -> PermGroup:
    if n not in (11, 12, 22):
        raise ValueError(f"Mathieu group M{n} is not supported")
    return _from_resource(f"M{n}")


def janko(n: int) -> PermGroup:
    """J1 on 266 points or J2 on 100 points."""
    if n not in (1, 2):
        raise ValueError(f"Janko group J{n} is not supported")
    return _from_resource(f"J{n}")


def direct_product(A: PermGroup, B: PermGroup) -> PermGroup:
    """A x B acting on the disjoint union of the two domains."""
    da, db = A.degree, B.degree
    n = da + db
    gens = []
    for g in A.generators:
        gens.append(Permutation(g.table + tuple(range(da, n)), check=False))
    for g in B.generators:
        gens.append(Permutation(tuple(range(da)) + tuple(x + da for x in g.table), check=False))
    name = f"{A.name} x {B.name}" if A.name and B.name else None
    return _checked(PermGroup(gens, n, name=name), A.order() * B.order())


def from_file(path) -> PermGroup:
    path = Path(path)
    if not path.is_file():
        raise GroupExprError(f"generator file not found: {path}")
    degree, gens = read_generator_file(path)
    return PermGroup(gens, degree, name=f"file:{path}")


# --- expression language -------------------------------------------------

@dataclass(frozen=True)
class Named:
    kind: str
    args: tuple[int, ...] = ()

    def __str__(self):
        if self.kind == "PSL2" and len(self.args) == 2:
            return f"PSL2({self.args[0]}):{self.args[1]}"
        if self.args:
            return f"{self.kind}({','.join(map(str, self.args))})"
        return self.kind


@dataclass(frozen=True)
class Product:
    left: "GroupExpr"
    right: "GroupExpr"

    def __str__(self):
        return f"{self.left} x {self.right}"


@dataclass(frozen=True)
class FileSource:
    path: str

    def __str__(self):
        return f"file:{self.path}"


GroupExpr = Union[Named, Product, FileSource]

_FAMILIES = {"SYM": "Sym", "ALT": "Alt", "CYC": "Cyc", "DIH": "Dih", "PSL2": "PSL2"}
_CONSTANTS = {"M11": "M11", "M12": "M12", "M22": "M22", "A5": "A5", "J1": "J1", "J2": "J2"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg):
        raise GroupExprError(msg, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalnum():
            self.pos += 1
        if start == self.pos:
            self.error("expected a group constructor")
        return self.text[start:self.pos]

    def number(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])

    def parse(self) -> GroupExpr:
        expr = self.term()
        while self.peek() in ("x", "X", "×"):
            self.pos += 1
            expr = Product(expr, self.term())
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return expr

    def term(self) -> GroupExpr:
        start = self.pos
        self.skip_ws()
        if self.text[self.pos:self.pos + 5].lower() == "file:":
            self.pos += 5
            begin = self.pos
            while self.pos < len(self.text) and not self.text[self.pos].isspace():
                self.pos += 1
            if begin == self.pos:
                self.error("missing path after file:")
            return FileSource(self.text[begin:self.pos])
        name = self.word().upper()
        if name in _CONSTANTS:
            return Named(_CONSTANTS[name])
        if name not in _FAMILIES:
            self.pos = start
            self.skip_ws()
            self.error(f"unsupported constructor {name!r}")
        kind = _FAMILIES[name]
        self.expect("(")
        n = self.number()
        self.expect(")")
        if kind == "PSL2" and self.peek() == ":":
            self.pos += 1
            return Named(kind, (n, self.number()))
        return Named(kind, (n,))


def parse_group_expr(text: str) -> GroupExpr:
    """Parse e.g. ``"PSL2(27):1"`` or ``"Sym(4) x Cyc(3)"``; ``x`` is left-associative."""
    if not text or not text.strip():
        raise GroupExprError("empty group expression", 0)
    return _Parser(text).parse()


def realize(expr: GroupExpr | str) -> PermGroup:
    if isinstance(expr, str):
        expr = parse_group_expr(expr)
    try:
        G = _realize(expr)
    except ValueError as exc:
        if isinstance(exc, GroupExprError):
            raise
        raise GroupExprError(str(exc)) from exc
    G.name = str(expr)
    return G


def _realize(expr: GroupExpr) -> PermGroup:
    if isinstance(expr, Product):
        return direct_product(_realize(expr.left), _realize(expr.right))
    if isinstance(expr, FileSource):
        return from_file(expr.path)
    kind, args = expr.kind, expr.args
    if kind == "Sym":
        return symmetric(*args)
    if kind == "Alt":
        return alternating(*args)
    if kind == "Cyc":
        return cyclic(*args)
    if kind == "Dih":
        return dihedral(*args)
    if kind == "PSL2":
        return psl2(args[0]) if len(args) == 1 else psl2_frobenius_extension(*args)
    if kind == "A5":
        return alternating(5)
    if kind.startswith("M"):
        return mathieu(int(kind[1:]))
    if kind.startswith("J"):
        return janko(int(kind[1:]))
    raise GroupExprError(f"unsupported constructor {kind!r}")
