import pytest

from sgraph.appendix import appendix_items, lookup, reference_table, verify
from sgraph.perm import is_prime

# stored as published: M24 repeats J3's prime set, and J3, M24, B and M cite
# primes (7 or 37) outside their own pi
KNOWN_TYPOS = {"J3", "M24", "B", "M"}


def test_table_shape():
    items = appendix_items()
    assert [it.item for it in items] == list(range(1, 27))
    assert [it.name for it in items][:5] == ["M11", "M12", "J1", "M22", "J2"]
    for it in items:
        assert all(is_prime(p) for p in it.pi) and list(it.pi) == sorted(it.pi)
        outside = {p for _, p in it.divides if p not in it.pi}
        assert not outside or it.name in KNOWN_TYPOS


def test_lookup():
    assert lookup("m").item == 26
    assert lookup("h_5").name == "HS"
    assert lookup("3").name == "J1"
    with pytest.raises(KeyError):
        lookup("M13")


def test_reference_table():
    lines = reference_table(lookup("M"))
    assert lines[0].startswith("(26) M: pi = {2,3,5,7,11,13,17,19,23,29,31,41,47,59,71}")
    assert "  29 divides |N(G_p):C(G_p)| for p in {59}" in lines


def test_reference_only_items_refuse_computation():
    with pytest.raises(ValueError):
        verify(lookup("Co1"))


@pytest.mark.parametrize("name", ["J1", "M22", "J2"])
def test_computed_items_hold(name):
    checks = verify(lookup(name))
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]


@pytest.mark.parametrize("name", ["M11", "M12"])
def test_mathieu_items(name):
    """Every assertion holds except 2 | |N(G_11):C(G_11)|; the true index is 5 (N = 11:5)."""
    checks = verify(lookup(name))
    failed = [c.text for c in checks if not c.ok]
    assert failed == ["2 | |N(G_11):C(G_11)|"]
