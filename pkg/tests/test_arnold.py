import pytest

from polytors.arnold import (
    INF,
    a_over_b,
    all_rows,
    bracket_index,
    bracket_start,
    table_graded,
    table_orders,
)
from polytors.digits import decompose, primes_up_to
from polytors.errors import BracketError, DomainError
from polytors.graded import FinAbGroup
from polytors.torsion import all_higher_torsion


@pytest.mark.parametrize("a, b, expected", [(2, 2, 1), (6, 2, 3), (17, 1, 17), (4, 6, 2)])
def test_a_over_b(a, b, expected):
    assert a_over_b(a, b) == expected


def test_a_over_b_rejects_zero():
    with pytest.raises(DomainError):
        a_over_b(0, 3)


def test_rows_l1():
    assert table_orders(1, 8).orders == (INF, 3, 1, 2, 1)
    assert table_orders(1, 100).orders == (INF, 3, 1, 2, 3)
    assert table_orders(1, 4).orders == (INF, 1, 1, 1, 1)


@pytest.mark.parametrize("l", [1, 2, 5, 40])
def test_first_row_trivial(l):
    assert table_orders(l, 2 * l + 2).orders == (INF, 1, 1, 1, 1)
    assert table_orders(l, 2 * l + 3).orders == (INF, 1, 1, 1, 1)


def test_l3_stable_column():
    assert table_orders(3, 16).orders[3] == 3


def test_brackets():
    assert bracket_index(1, 5) == 0 and bracket_index(1, 6) == 1 and bracket_index(1, 8) == 2
    assert bracket_index(1, 12) == 4 == bracket_index(1, 10**6)
    with pytest.raises(BracketError):
        table_orders(2, 5)


def test_rows_grow_with_k():
    # each row's groups are contained in the next row's (as summand multisets)
    for l in range(1, 200):
        rows = [r.groups() for r in all_rows(l)]
        for lo, hi in zip(rows, rows[1:]):
            for d in lo:
                assert lo[d].free_rank == hi[d].free_rank == (1 if d == 2 * l + 1 else 0)
                assert set(lo[d].torsion) <= set(hi[d].torsion)


def test_table_graded_degrees():
    g = table_graded(2, 8)
    assert g.degrees() == [5, 6, 7, 8, 9]
    assert g[6] == FinAbGroup(0, ((2, 2),))
    assert table_graded(2, 8, max_degree=6).degrees() == [5, 6]


def exponent(order, p):
    if order == INF:
        return None
    e = 0
    while order % p == 0:
        order //= p
        e += 1
    return e


def test_table_higher_parts_are_all_predicted_with_omitted_runs():
    # every higher p-part in the stable row comes from some run; the ones that
    # come only from an omitted run are the m = 0, j_r > 0 cases
    only_omitted = []
    for l in range(1, 400):
        stable = table_orders(l, 2 * l + 10)
        everything = all_higher_torsion(l, 2, include_omitted=True)
        for col, order in enumerate(stable.orders):
            d = 2 * l + 1 + col
            if order == INF:
                continue
            for p in primes_up_to(order):
                e = exponent(order, p)
                if e and e >= 2:
                    hits = [s for s in everything if s.p == p and s.degree == d and s.exponent == e]
                    assert hits, (l, d, p, e)
                    if all(s.omitted for s in hits):
                        only_omitted.append((l, p))
    assert (7, 3) in only_omitted
    for l, p in only_omitted:
        dec = decompose(l, p)
        assert dec.m == 0 and dec.runs[-1][1] > 0
