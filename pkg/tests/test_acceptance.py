"""Acceptance gate: one test and one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the summary lines are
printed at the end of the session) or directly with ``python
tests/test_acceptance.py``.
"""

import time

import pytest

from corpus import CORPUS, SMALL
from sgraph import realize
from sgraph.constructors import mathieu, psl2, psl2_frobenius_extension, psl2_order
from sgraph.formations import (Covering, fundamental_definition, lemma1_membership,
                               lf_membership, local_definition_from_covering, n_closure_test,
                               validate_symmetric)
from sgraph.group import group_from_generators
from sgraph.perm import parse_permutation
from sgraph.sylow_graph import gamma_graph, hypothesis_check

RESULTS: dict[int, tuple[bool, str]] = {}


class Checks:
    def __init__(self, number, limit=None):
        self.number, self.limit = number, limit
        self.items: list[tuple[str, bool]] = []
        self.start = time.perf_counter()

    def check(self, label, ok):
        self.items.append((label, bool(ok)))

    def finish(self):
        elapsed = time.perf_counter() - self.start
        if self.limit is not None:
            self.check(f"runtime {elapsed:.1f}s <= {self.limit}s", elapsed <= self.limit)
        failed = [label for label, ok in self.items if not ok]
        ok = not failed
        detail = f"{len(self.items) - len(failed)}/{len(self.items)} checks"
        if failed:
            detail += "; failed: " + "; ".join(failed)
        RESULTS[self.number] = (ok, detail)
        print(f"criterion {self.number}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail


def appendix_item(number, G, limit):
    c = Checks(number, limit)
    g = gamma_graph(G)
    nc = {p: g.nc_index(p) for p in g.vertices}
    c.check("pi = {2,3,5,11}", list(g.vertices) == [2, 3, 5, 11])
    for q, p in [(2, 3), (2, 5), (2, 11), (5, 11)]:
        c.check(f"{q} | nc_index({p}) [= {nc.get(p)}]", p in nc and nc[p] % q == 0)
    c.check("Gamma connected", g.is_connected("gamma"))
    c.finish()


def test_criterion_1_m11():
    appendix_item(1, mathieu(11), 30)


def test_criterion_2_m12():
    appendix_item(2, mathieu(12), 120)


def test_criterion_3_psl2_27_frobenius():
    c = Checks(3, 60)
    G = psl2_frobenius_extension(27, 1)
    c.check("order 29484", G.order() == 29484)
    g = gamma_graph(G)
    nc = {p: g.nc_index(p) for p in g.vertices}
    c.check(f"2 does not divide nc_index(3) [= {nc[3]}]", nc[3] % 2 != 0)
    c.check("hypothesis_check false", not hypothesis_check(g).result)
    ls = [l for l in g.vertices if l not in (2, 3) and nc[l] % 6 == 0]
    c.check(f"some l outside {{2,3}} with 2, 3 | nc_index(l) [l = {ls}]", bool(ls))
    c.check("Gamma connected", g.is_connected("gamma"))
    c.finish()


def test_criterion_4_alt5_n_closure():
    c = Checks(4, 5)
    cov = Covering.make([2, 3, 5], {2: [2, 3, 5], 3: [2, 3], 5: [2, 5]})
    c.check("covering symmetric", validate_symmetric(cov))
    f = local_definition_from_covering(cov)
    A5 = realize("Alt(5)")
    c.check("A5 not in LF(f)", not lf_membership(f, A5).member)
    c.check("A5 in N(LF(f))", n_closure_test(lambda N: lf_membership(f, N).member, A5).member)
    c.finish()


PI_MATRIX = [
    ((2, 3), 2), ((2, 3), 3), ((2, 3, 5), 2), ((2, 3, 5), 3), ((2, 3, 5), 5),
    ((2, 3, 5, 7), 2), ((2, 3, 5, 7), 7), ((3, 5), 3), ((2, 5), 5),
]


def test_criterion_5_perfect_core_criterion():
    c = Checks(5, 300)
    groups = [(e, realize(e)) for e in SMALL]
    groups = [(e, G) for e, G in groups if G.order() <= 2000]
    c.check(f"corpus size {len(groups)} >= 30", len(groups) >= 30)
    c.check(f"matrix size {len(PI_MATRIX)} >= 5", len(PI_MATRIX) >= 5)
    disagreements = []
    for expr, G in groups:
        for pi, p in PI_MATRIX:
            lf = lf_membership(fundamental_definition(pi, p), G).member
            if lf != lemma1_membership(pi, p, G):
                disagreements.append((expr, pi, p))
    total = len(groups) * len(PI_MATRIX)
    c.check(f"agreement on {total - len(disagreements)}/{total} cases {disagreements[:3]}",
            not disagreements)
    c.finish()


def test_criterion_6_graph_invariants():
    c = Checks(6)
    c.check(f"corpus size {len(CORPUS)} >= 40", len(CORPUS) >= 40)
    violations = []
    for expr in CORPUS:
        g = gamma_graph(realize(expr))
        for p, d in g.data.items():
            if d.automiser_order % p == 0:
                violations.append((expr, "loop", p))
            if ((p, p) in g.delta_edges) != (not d.sylow_abelian):
                violations.append((expr, "delta loop", p))
        if g.undirected_gamma() != {e for e in g.delta_edges if e[0] != e[1]}:
            violations.append((expr, "edges"))
        if g.is_connected("gamma") != g.is_connected("delta"):
            violations.append((expr, "connectivity"))
    c.check(f"{len(violations)} violations {violations[:3]}", not violations)
    c.finish()


def test_criterion_7_hypothesis_implies_connected():
    c = Checks(7)
    bad = []
    for expr in CORPUS:
        g = gamma_graph(realize(expr))
        if hypothesis_check(g).result and not g.is_connected("delta"):
            bad.append(expr)
    c.check(f"implication holds on {len(CORPUS)} groups {bad}", not bad)
    g = gamma_graph(psl2_frobenius_extension(27, 1))
    c.check("converse fails on PSL2(27):1",
            g.is_connected("delta") and not hypothesis_check(g).result)
    c.finish()


def frobenius_21():
    return group_from_generators([parse_permutation("(1,2,3,4,5,6,7)", 7),
                                  parse_permutation("(2,3,5)(4,7,6)", 7)])


def test_criterion_8_rosn1_edge_cases():
    c = Checks(8)
    c.check("trivial group -> true", hypothesis_check(realize("Cyc(1)")).result)
    odd = [realize(e) for e in ("Cyc(3)", "Cyc(15)", "Cyc(3) x Cyc(3)", "Cyc(5) x Cyc(7)")]
    odd.append(frobenius_21())
    c.check("order 21 group is nonabelian", odd[-1].order() == 21)
    c.check("odd-order groups -> false", not any(hypothesis_check(G).result for G in odd))
    twos = [realize(e) for e in ("Cyc(2)", "Cyc(8)", "Dih(4)", "Cyc(2) x Cyc(2)")]
    c.check("pi(G) = {2} -> true", all(hypothesis_check(G).result for G in twos))
    c.finish()


def test_criterion_9_constructor_orders():
    c = Checks(9)
    for q in (4, 5, 7, 8, 9, 11, 13, 27):
        c.check(f"|PSL2({q})|", psl2(q).order() == psl2_order(q))
    for n, order in ((11, 7920), (12, 95040), (22, 443520)):
        c.check(f"|M{n}| = {order}", mathieu(n).order() == order)
    c.finish()


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
