import numpy as np
import pytest

import oracles
from corpus import CORPUS, SMALL
from sgraph import realize
from sgraph.constructors import alternating, cyclic, symmetric
from sgraph.errors import CapExceeded, NotNormal, NotSubgroup, QuotientCapExceeded
from sgraph.group import limits
from sgraph.perm import Permutation, element_order, p_part, parse_permutation
from sgraph.subgroups import (Subgroup, action_kernel_on_factor, center, centralizer,
                              chief_series, derived_series, derived_subgroup, is_abelian,
                              is_nilpotent, is_normal, is_perfect, is_solvable, is_subgroup,
                              normal_closure, normalizer, perfect_core, quotient, subgroup_generated,
                              sylow, trivial_subgroup, whole)
from sgraph.sylow_graph import sylow_data


def P(text, n):
    return parse_permutation(text, n)


def as_set(H):
    return {tuple(int(v) for v in r) for r in H.element_rows()}


def klein():
    S4 = symmetric(4)
    return S4, normal_closure(S4, [P("(1,2)(3,4)", 4)])


def test_sylow_examples():
    assert sylow(symmetric(4), 2).order() == 8
    assert sylow(alternating(5), 5).order() == 5
    assert sylow(realize("M11"), 11).order() == 11
    with pytest.raises(ValueError):
        sylow(symmetric(3), 5)


@pytest.mark.parametrize("expr", CORPUS)
def test_sylow_is_full_p_subgroup(expr):
    G = realize(expr)
    for p in G.prime_divisors():
        S = sylow(G, p)
        assert S.order() == p_part(G.order(), p)
        for g in S.generators:
            assert G.contains(g)
            assert element_order(g) == p_part(element_order(g), p)


@pytest.mark.parametrize("expr", ["Sym(4)", "Alt(5)", "Dih(6)", "PSL2(7)", "Sym(3) x Sym(3)"])
def test_sylow_against_brute_force(expr):
    G = realize(expr)
    els = oracles.tables(G)
    for p in G.prime_divisors():
        assert sylow(G, p).order() == oracles.max_p_subgroup_order(els, G.degree, p)


@pytest.mark.parametrize("expr", ["Sym(5)", "PSL2(7)", "Alt(6)", "PSL2(27):1", "M11", "Dih(12)"])
def test_sylow_seed_independence(expr):
    """Different starting elements give conjugate Sylows with equal derived data."""
    G = realize(expr)
    for p in G.prime_divisors():
        a, b = sylow_data(G, p, start=0), sylow_data(G, p, start=G.order() // 2 + 1)
        assert a == b


def test_normalizer_examples():
    A5 = alternating(5)
    assert normalizer(A5, sylow(A5, 5)).order() == 10
    S3 = symmetric(3)
    assert normalizer(S3, sylow(S3, 3)).order() == 6
    assert normalizer(S3, trivial_subgroup(S3)).order() == 6


def test_centralizer_examples():
    S3 = symmetric(3)
    assert centralizer(S3, sylow(S3, 3)).order() == 3
    assert center(S3).order() == 1
    assert center(cyclic(8)).order() == 8


@pytest.mark.parametrize("expr", [e for e in SMALL if realize(e).order() <= 400])
def test_normalizer_centralizer_against_brute_force(expr):
    G = realize(expr)
    els = oracles.tables(G)
    for p in G.prime_divisors():
        S = sylow(G, p)
        H = as_set(S.group)
        N, C = normalizer(G, S), centralizer(G, S)
        assert as_set(N.group) == oracles.normalizer(els, H)
        assert as_set(C.group) == oracles.centralizer(els, H)
        assert is_subgroup(N, C)
        assert is_subgroup(N, S)
    assert as_set(center(G).group) == oracles.centralizer(els, els)


def test_normal_closure_examples():
    S3 = symmetric(3)
    assert normal_closure(S3, [P("(1,2,3)", 3)]).order() == 3
    _, V = klein()
    assert V.order() == 4
    A5 = alternating(5)
    for g in A5.elements()[1:10]:
        assert normal_closure(A5, [g]).order() == 60


@pytest.mark.parametrize("expr", ["Sym(4)", "Dih(6)", "Alt(4) x Cyc(3)", "Sym(3) x Sym(3)"])
def test_normal_closure_against_brute_force(expr):
    G = realize(expr)
    els = oracles.tables(G)
    for g in G.elements()[::5]:
        assert as_set(normal_closure(G, [g]).group) == oracles.normal_closure(els, [g.table], G.degree)


def test_derived_series():
    assert [H.order() for H in derived_series(symmetric(4))] == [24, 12, 4, 1]
    assert is_solvable(symmetric(4))
    assert perfect_core(symmetric(4)).order() == 1
    assert perfect_core(symmetric(5)).order() == 60
    assert is_perfect(alternating(5)) and not is_perfect(symmetric(5))
    assert is_nilpotent(cyclic(6)) and not is_nilpotent(symmetric(3))
    assert is_abelian(cyclic(6)) and not is_abelian(symmetric(3))


@pytest.mark.parametrize("expr", [e for e in SMALL if realize(e).order() <= 500])
def test_derived_series_against_brute_force(expr):
    G = realize(expr)
    els = oracles.tables(G)
    assert [H.order() for H in derived_series(G)] == oracles.derived_orders(els, G.degree)
    assert is_nilpotent(G) == all(
        oracles.is_normal(els, as_set(sylow(G, p).group)) for p in G.prime_divisors())


@pytest.mark.parametrize("expr", ["Sym(5)", "Alt(5) x Cyc(2)", "Sym(4)", "Alt(5) x Cyc(3)"])
def test_perfect_core_contains_perfect_subgroups(expr):
    G = realize(expr)
    els = oracles.tables(G)
    core = as_set(perfect_core(G).group)
    assert oracles.perfect_core_order(core, G.degree) == len(core)
    for H in oracles.subgroups_generated_by_pairs(els, G.degree):
        if len(H) > 1 and oracles.perfect_core_order(set(H), G.degree) == len(H):
            assert H <= core


def test_quotient_examples():
    S4, V = klein()
    Q = quotient(S4, V)
    assert Q.group.order() == 6
    R = quotient(alternating(5), trivial_subgroup(alternating(5)))
    assert R.group.order() == 60 and R.group.degree == 60
    C6 = cyclic(6)
    C3 = subgroup_generated(C6, [C6.generators[0] ** 2])
    assert quotient(C6, C3).group.order() == 2


@pytest.mark.parametrize("expr", ["Sym(4)", "Dih(6)", "Alt(4) x Cyc(2)", "Sym(3) x Cyc(5)"])
def test_quotient_kernel_is_exactly_n(expr):
    G = realize(expr)
    series = chief_series(G)
    for K in series.terms:
        Q = quotient(G, K)
        assert Q.group.order() * K.order() == G.order()
        for g in G.elements():
            assert Q.project(g).is_identity() == K.contains(g)
        # projection is a homomorphism
        a, b = G.elements()[1], G.elements()[-1]
        assert Q.project(a * b) == Q.project(a) * Q.project(b)


def test_quotient_errors():
    S4 = symmetric(4)
    with pytest.raises(NotNormal):
        quotient(S4, subgroup_generated(S4, [P("(1,2)", 4)]))
    with pytest.raises(NotSubgroup):
        quotient(alternating(4), subgroup_generated(S4, [P("(1,2)", 4)]).group)
    with limits(quotient_cap=5):
        with pytest.raises(QuotientCapExceeded):
            quotient(S4, klein()[1])


def test_chief_series_examples():
    assert chief_series(symmetric(4)).factor_orders() == [4, 3, 2]
    assert chief_series(alternating(5)).factor_orders() == [60]
    assert sorted(chief_series(cyclic(12)).factor_orders()) == [2, 2, 3]
    assert chief_series(cyclic(1)).factor_orders() == []


@pytest.mark.parametrize("expr", [e for e in SMALL if 1 < realize(e).order() <= 200])
def test_chief_series_is_chief(expr):
    G = realize(expr)
    els = oracles.tables(G)
    normals = oracles.normal_subgroups(els, G.degree)
    series = chief_series(G)
    terms = [frozenset(as_set(K.group)) for K in series.terms]
    assert np.prod(series.factor_orders()) == G.order()
    for lo, hi in zip(terms, terms[1:]):
        assert lo in normals and hi in normals and lo < hi
        assert not any(lo < M < hi for M in normals)


def test_chief_series_deterministic():
    G = realize("Sym(4) x Cyc(2)")
    a = [K.order() for K in chief_series(G).terms]
    b = [K.order() for K in chief_series(G).terms]
    assert a == b


def test_action_kernel():
    S4 = symmetric(4)
    A4 = derived_subgroup(S4)
    _, V = klein()
    K = action_kernel_on_factor(S4, A4, V)
    els = oracles.tables(S4)
    Vs, A4s = as_set(V.group), as_set(A4.group)
    ref = {g for g in els
           if all(oracles.mul(oracles.mul(oracles.inv(g), oracles.inv(h)), oracles.mul(g, h)) in Vs
                  for h in A4s)}
    assert as_set(K.group) == ref
    assert K.order() == 12
    assert action_kernel_on_factor(S4, A4, A4).order() == 24
    A5 = alternating(5)
    assert action_kernel_on_factor(A5, whole(A5), trivial_subgroup(A5)).order() == 1


def test_action_kernel_preconditions():
    S4 = symmetric(4)
    T = subgroup_generated(S4, [P("(1,2)", 4)])
    A4 = derived_subgroup(S4)
    with pytest.raises(NotNormal):
        action_kernel_on_factor(S4, T, trivial_subgroup(S4))
    with pytest.raises(NotSubgroup):
        action_kernel_on_factor(S4, klein()[1], A4)
    with pytest.raises(NotNormal):
        action_kernel_on_factor(S4, S4, T)
    with pytest.raises(NotSubgroup):
        action_kernel_on_factor(alternating(4), S4, trivial_subgroup(S4))


def test_subgroup_containment_witness():
    with pytest.raises(NotSubgroup):
        Subgroup(alternating(4), symmetric(4))
    S = subgroup_generated(symmetric(4), [P("(1,2,3,4)", 4)])
    assert S.order() == 4 and S.parent.order() == 24
    assert is_normal(symmetric(4), klein()[1])


def test_cap_on_filters():
    G = symmetric(9)
    with limits(exhaustive_cap=1000):
        with pytest.raises(CapExceeded):
            normalizer(G, subgroup_generated(G, [P("(1,2,3)", 9)]))
        with pytest.raises(CapExceeded):
            sylow(G, 3)
