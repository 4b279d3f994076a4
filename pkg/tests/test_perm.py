import pytest
from hypothesis import given, strategies as st

from sgraph.errors import DegreeMismatch, PermutationError
from sgraph.perm import (Permutation, commutator, compose, element_order, factorize, inverse,
                         is_prime, p_part, parse_permutation, prime_divisors, prime_power,
                         read_generator_file, write_generator_file)


def perms(max_degree=9):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(lambda t: Permutation(t)))


def same_degree_pair(max_degree=9):
    return st.integers(1, max_degree).flatmap(lambda n: st.tuples(
        *[st.permutations(list(range(n))).map(Permutation)] * 3))


def test_parse_cycle():
    a = parse_permutation("(1,2,3)", 5)
    assert [a(i) for i in range(1, 6)] == [2, 3, 1, 4, 5]


def test_parse_identity_and_whitespace():
    assert parse_permutation("()", 4).is_identity()
    assert parse_permutation(" ( 1 , 2 ) ( 3,4 ) ", 4) == parse_permutation("(1,2)(3,4)", 4)


def test_involution_squares_to_identity():
    a = parse_permutation("(1,2)(3,4)", 4)
    assert (a * a).is_identity()


@pytest.mark.parametrize("text", ["(1,2", "1,2)", "(1,2)(2,3)", "(0,1)", "(1,6)", "(a,b)", "(1,1)"])
def test_parse_errors(text):
    with pytest.raises(PermutationError):
        parse_permutation(text, 5)


def test_invalid_table():
    with pytest.raises(PermutationError):
        Permutation((0, 0, 1))


def test_compose_is_left_to_right():
    a = parse_permutation("(1,2)", 3)
    b = parse_permutation("(2,3)", 3)
    ab, ba = compose(a, b), compose(b, a)
    assert ab != ba
    # 1 -a-> 2 -b-> 3
    assert ab(1) == 3
    assert ba(1) == 2


def test_order_three_cube():
    c = parse_permutation("(1,2,3)", 3)
    assert (c * c * c).is_identity()


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_element_order_and_inverse():
    assert element_order(Permutation.identity(5)) == 1
    assert element_order(parse_permutation("(1,2,3)(4,5)", 5)) == 6
    assert inverse(parse_permutation("(1,2,3)", 3)) == parse_permutation("(1,3,2)", 3)


def test_str_roundtrip():
    a = parse_permutation("(1,5,2)(3,4)", 6)
    assert str(a) == "(1,5,2)(3,4)"
    assert parse_permutation(str(a), 6) == a
    assert str(Permutation.identity(3)) == "()"


@given(same_degree_pair())
def test_associative(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)


@given(perms())
def test_inverse_and_identity(a):
    e = Permutation.identity(a.degree)
    assert (a * a.inverse()).is_identity()
    assert (a.inverse() * a).is_identity()
    assert a * e == a == e * a


@given(perms())
def test_order_by_iteration(a):
    k, x = 1, a
    while not x.is_identity():
        x, k = x * a, k + 1
    assert element_order(a) == k
    assert (a ** k).is_identity()


@given(same_degree_pair())
def test_commutator_definition(t):
    a, b, _ = t
    assert commutator(a, b) == a.inverse() * b.inverse() * a * b
    assert commutator(a, b).is_identity() == (a * b == b * a)


def test_prime_divisors():
    assert prime_divisors(7920) == [2, 3, 5, 11]
    assert prime_divisors(1) == []
    assert prime_divisors(29484) == [2, 3, 7, 13]
    assert factorize(1) == {}


@given(st.integers(1, 10 ** 6))
def test_factorize_recombines(n):
    f = factorize(n)
    m = 1
    for p, k in f.items():
        assert is_prime(p)
        m *= p ** k
    assert m == n
    for p in f:
        assert p_part(n, p) == p ** f[p]


def test_prime_power():
    assert prime_power(27) == (3, 3)
    assert prime_power(2) == (2, 1)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_generator_file_roundtrip(tmp_path):
    gens = [parse_permutation("(1,2,3)", 4), parse_permutation("(3,4)", 4)]
    path = tmp_path / "g.txt"
    write_generator_file(path, 4, gens)
    degree, back = read_generator_file(path)
    assert degree == 4 and back == gens
