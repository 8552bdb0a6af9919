import pytest

from hotk.errors import ParseError
from hotk.kernel import OMEGA, TypeIndex, fin, parse_index, t_shunt


def test_lexicographic_order_agrees_with_ordinal_order():
    order = [fin(0), fin(1), fin(7), OMEGA, TypeIndex(1, 1), TypeIndex(1, 9),
             TypeIndex(2, 0), TypeIndex(2, 3)]
    for i, a in enumerate(order):
        for j, b in enumerate(order):
            assert (a < b) == (i < j)
            assert (a == b) == (i == j)


def test_limit_and_successor_structure():
    assert OMEGA.is_limit
    assert not fin(0).is_limit
    assert not TypeIndex(1, 2).is_limit
    assert TypeIndex(2, 0).is_limit
    assert fin(3).succ() == fin(4)
    assert OMEGA.succ() == TypeIndex(1, 1)
    assert TypeIndex(1, 1).pred() == OMEGA
    with pytest.raises(ValueError):
        OMEGA.pred()


@pytest.mark.parametrize("text,expect", [
    ("0", fin(0)),
    ("17", fin(17)),
    ("w", OMEGA),
    ("w+3", TypeIndex(1, 3)),
    ("w*2", TypeIndex(2, 0)),
    ("w*2+5", TypeIndex(2, 5)),
    ("(w+1)", TypeIndex(1, 1)),
])
def test_parse_index(text, expect):
    assert parse_index(text) == expect


def test_parse_index_rejects_larger_notations():
    for bad in ("w*w", "w^2", "e0", "-1", ""):
        with pytest.raises(ParseError):
            parse_index(bad)


def test_index_print_parse_round_trip():
    for q in range(4):
        for r in range(4):
            idx = TypeIndex(q, r)
            assert parse_index(str(idx)) == idx


def test_t_shunt_cases():
    assert t_shunt(fin(3)) == fin(3)
    assert t_shunt(fin(0)) == fin(0)
    assert t_shunt(OMEGA) == TypeIndex(1, 1)
    assert t_shunt(TypeIndex(1, 2)) == TypeIndex(1, 3)
