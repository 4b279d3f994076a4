"""Symmetric coverings, local definitions and formation membership tests.

Prime sets are always finite: classes such as "solvable groups of odd
order" are represented over an explicit window of primes large enough for
the groups being tested.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

import numpy as np

from .errors import SpecError
from .group import PermGroup, StabilizerChain, power_rows
from .perm import Permutation, is_prime
from .subgroups import as_group, chief_series, is_subgroup, normalizer, perfect_core, sylow


@dataclass(frozen=True)
class Covering:
    pi: tuple[int, ...]
    blocks: Mapping[int, frozenset[int]]

    @classmethod
    def make(cls, pi: Iterable[int], blocks: Mapping[int, Iterable[int]]) -> "Covering":
        pi = tuple(sorted(set(pi)))
        for p in list(pi) + list(blocks):
            if not is_prime(p):
                raise SpecError(f"{p} is not prime")
        return cls(pi, {p: frozenset(b) for p, b in sorted(blocks.items())})

    def block(self, p: int) -> frozenset[int]:
        return self.blocks.get(p, frozenset())


@dataclass
class SymmetryReport:
    ok: bool
    violations: dict[str, list] = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def validate_symmetric(c: Covering) -> SymmetryReport:
    """Check the three covering conditions; violations are keyed "i", "ii", "iii"."""
    pi = set(c.pi)
    union = set().union(*(c.block(p) for p in c.pi)) if c.pi else set()
    violations: dict[str, list] = {}
    bad_i = sorted(union ^ pi)
    if bad_i:
        violations["i"] = bad_i
    bad_ii = [p for p in c.pi if p not in c.block(p)]
    if bad_ii:
        violations["ii"] = bad_ii
    bad_iii = sorted((p, q) for p, b in c.blocks.items() for q in b if p not in c.block(q))
    if bad_iii:
        violations["iii"] = bad_iii
    return SymmetryReport(not violations, violations)


def is_partition(c: Covering) -> bool:
    if not validate_symmetric(c):
        raise SpecError("covering is not symmetric")
    blocks = {c.block(p) for p in c.pi}
    return all(a == b or not (a & b) for a in blocks for b in blocks)


@dataclass(frozen=True)
class ClassSpec:
    kind: str  # "empty" | "all_pi" | "solvable_pi"
    primes: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.kind not in ("empty", "all_pi", "solvable_pi"):
            raise SpecError(f"unknown class kind {self.kind!r}")
        if self.kind != "empty" and not self.primes:
            raise SpecError(f"{self.kind} needs a nonempty prime set")

    @classmethod
    def empty(cls) -> "ClassSpec":
        return cls("empty")

    @classmethod
    def all_pi(cls, primes: Iterable[int]) -> "ClassSpec":
        return cls("all_pi", frozenset(primes))

    @classmethod
    def solvable_pi(cls, primes: Iterable[int]) -> "ClassSpec":
        return cls("solvable_pi", frozenset(primes))

    def __str__(self):
        if self.kind == "empty":
            return "empty"
        return f"{self.kind}{{{','.join(map(str, sorted(self.primes)))}}}"


@dataclass(frozen=True)
class LocalDefinition:
    mapping: Mapping[int, ClassSpec]
    default: ClassSpec = ClassSpec.empty()

    def __call__(self, q: int) -> ClassSpec:
        return self.mapping.get(q, self.default)


def local_definition_from_covering(c: Covering, solvable: bool = False) -> LocalDefinition:
    """p -> groups whose primes lie in the block of p; primes outside pi -> empty."""
    if not validate_symmetric(c):
        raise SpecError("covering is not symmetric")
    make = ClassSpec.solvable_pi if solvable else ClassSpec.all_pi
    return LocalDefinition({p: make(c.block(p)) for p in c.pi})


def with_solvable_intersection(f: LocalDefinition) -> LocalDefinition:
    def restrict(spec: ClassSpec) -> ClassSpec:
        return ClassSpec.solvable_pi(spec.primes) if spec.kind == "all_pi" else spec

    return LocalDefinition({q: restrict(s) for q, s in f.mapping.items()}, restrict(f.default))


def fundamental_definition(pi: Iterable[int], p: int) -> LocalDefinition:
    """f(p) = solvable pi-groups, f(q) = all pi-groups for other q in pi, else empty."""
    pi = frozenset(pi)
    if p not in pi:
        raise SpecError(f"{p} is not in pi")
    return LocalDefinition({q: ClassSpec.solvable_pi(pi) if q == p else ClassSpec.all_pi(pi)
                            for q in sorted(pi)})


def odd_order_definition(window: Iterable[int]) -> LocalDefinition:
    """f(2) empty, f(p) = solvable groups over the odd primes of ``window``."""
    odd = frozenset(q for q in window if q != 2)
    return LocalDefinition({q: ClassSpec.solvable_pi(odd) for q in sorted(odd)})


def class_membership(spec: ClassSpec, G) -> bool:
    """Membership of a single group; the trivial group belongs to every class."""
    G = as_group(G)
    if G.is_trivial():
        return True
    if spec.kind == "empty":
        return False
    if not set(G.prime_divisors()) <= spec.primes:
        return False
    if spec.kind == "solvable_pi":
        return perfect_core(G).order() == 1
    return True


def _factor_group_in_class(spec: ClassSpec, G: PermGroup, kernel) -> bool:
    """Is G/kernel in the class?  Solvability of G/C is read off as G^inf <= C."""
    index = G.order() // kernel.order()
    if spec.kind == "empty":
        return False
    primes = {q for q in spec.primes}
    n = index
    for q in primes:
        while n % q == 0:
            n //= q
    if n != 1:
        return False
    if spec.kind == "solvable_pi":
        return is_subgroup(kernel, perfect_core(G))
    return True


@dataclass(frozen=True)
class FactorCheck:
    position: int  # chief factor K_{i+1}/K_i has position i
    factor_order: int
    q: int
    quotient_order: int  # |G : C_G(H/K)|
    spec: ClassSpec
    verdict: bool


@dataclass
class MembershipResult:
    member: bool
    trace: list = field(default_factory=list)

    def __bool__(self):
        return self.member


def lf_membership(f: LocalDefinition, G, sweep=None) -> MembershipResult:
    """G is in LF(f) iff G/C_G(H/K) lies in f(q) for every chief factor H/K and q | |H/K|.

    A prime mapped to the empty class rejects the group outright, even when the
    factor group G/C_G(H/K) is trivial.
    """
    G = as_group(G)
    if G.is_trivial():
        return MembershipResult(True, [])
    series = chief_series(G, sweep)
    trace = []
    for i, factor in enumerate(series.factors):
        for q in factor.primes:
            spec = f(q)
            verdict = _factor_group_in_class(spec, G, factor.kernel)
            trace.append(FactorCheck(i, factor.order, q, G.order() // factor.kernel_order,
                                     spec, verdict))
    return MembershipResult(all(t.verdict for t in trace), trace)


def lemma1_membership(pi: Iterable[int], p: int, G) -> bool:
    """pi(G) within pi and the perfect core of G has order prime to p."""
    G = as_group(G)
    pi = set(pi)
    if p not in pi:
        raise SpecError(f"{p} is not in pi")
    return set(G.prime_divisors()) <= pi and perfect_core(G).order() % p != 0


@dataclass(frozen=True)
class NormalizerCheck:
    p: int
    normalizer_order: int
    verdict: bool


def n_closure_test(membership: Callable[[PermGroup], bool], G) -> MembershipResult:
    """G is in N(X) iff every Sylow normalizer N_G(G_p) satisfies ``membership``."""
    G = as_group(G)
    trace = []
    for p in G.prime_divisors():
        N = normalizer(G, sylow(G, p)).group
        trace.append(NormalizerCheck(p, N.order(), bool(membership(N))))
    return MembershipResult(all(t.verdict for t in trace), trace)


def _closed_subset(G: PermGroup, rows: np.ndarray) -> PermGroup | None:
    """The group formed by ``rows`` if they are closed under products, else None."""
    chain = StabilizerChain(G.degree)
    covered = np.zeros(len(rows), dtype=bool)
    while chain.order() < len(rows):
        first = int(np.flatnonzero(~covered)[0])
        chain.extend(tuple(int(v) for v in rows[first]))
        if chain.order() > len(rows):
            return None
        covered = chain.contains_rows(rows)
    if not covered.all() or chain.order() != len(rows):
        return None
    gens = [tuple(int(v) for v in g) for g in chain.strong_generators()]
    return PermGroup([Permutation(g, check=False) for g in gens], G.degree, _chain=chain)


def lattice_formation_membership(partition: Covering, G) -> MembershipResult:
    """Direct product of pi_i-groups, one for each block of the partition."""
    if not is_partition(partition):
        raise SpecError("covering is not a partition")
    G = as_group(G)
    trace = []
    primes = set(G.prime_divisors())
    if not primes <= set(partition.pi):
        trace.append(("pi", sorted(primes - set(partition.pi))))
        return MembershipResult(False, trace)
    if G.is_trivial():
        return MembershipResult(True, trace)
    G.check_cap()
    rows = G.element_rows()
    n = G.order()
    factors = []
    for block in sorted({partition.block(p) for p in partition.pi}, key=sorted):
        if not block & primes:
            continue
        m = 1
        for q in block:
            while n % (m * q) == 0:
                m *= q
        # elements whose order involves only primes of the block
        mask = (power_rows(rows, m) == np.arange(G.degree)).all(axis=1)
        H = _closed_subset(G, rows[mask])
        trace.append((tuple(sorted(block)), int(mask.sum()), H is not None))
        if H is None:
            return MembershipResult(False, trace)
        factors.append(H)
    for i, A in enumerate(factors):
        for B in factors[i + 1:]:
            if any(a * b != b * a for a in A.generators for b in B.generators):
                trace.append(("commute", False))
                return MembershipResult(False, trace)
    total = 1
    for H in factors:
        total *= H.order()
    trace.append(("order", total == n))
    return MembershipResult(total == n, trace)


# --- JSON descriptions ----------------------------------------------------

def _primes(values, what) -> list[int]:
    try:
        out = [int(v) for v in values]
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{what}: expected a list of primes") from exc
    for p in out:
        if not is_prime(p):
            raise SpecError(f"{what}: {p} is not prime")
    return out


def covering_from_json(doc: Mapping) -> Covering:
    if "pi" not in doc or "blocks" not in doc:
        raise SpecError("covering needs 'pi' and 'blocks'")
    blocks = {int(k): _primes(v, f"block {k}") for k, v in doc["blocks"].items()}
    return Covering.make(_primes(doc["pi"], "pi"), blocks)


def class_spec_from_json(doc) -> ClassSpec:
    if doc == "empty" or (isinstance(doc, Mapping) and doc.get("kind") == "empty"):
        return ClassSpec.empty()
    if not isinstance(doc, Mapping) or doc.get("kind") not in ("all_pi", "solvable_pi"):
        raise SpecError(f"invalid class description {doc!r}")
    return ClassSpec(doc["kind"], frozenset(_primes(doc.get("pi", []), doc["kind"])))


def local_definition_from_json(doc: Mapping) -> LocalDefinition:
    if "map" not in doc:
        raise SpecError("local definition needs 'map'")
    default = class_spec_from_json(doc.get("default", "empty"))
    mapping = {}
    for k, v in doc["map"].items():
        (q,) = _primes([k], "map key")
        mapping[q] = class_spec_from_json(v)
    return LocalDefinition(mapping, default)


def covering_to_json(c: Covering) -> dict:
    return {"pi": list(c.pi), "blocks": {str(p): sorted(b) for p, b in c.blocks.items()}}


def load_spec(path) -> Covering | LocalDefinition:
    """Read either a covering or a local definition from a JSON file."""
    try:
        doc = json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise SpecError(f"spec file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, Mapping):
        raise SpecError(f"{path}: expected a JSON object")
    if "blocks" in doc:
        return covering_from_json(doc)
    return local_definition_from_json(doc)
