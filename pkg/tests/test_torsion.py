from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from polytors.digits import decompose, relevant_primes
from polytors.errors import DomainError
from polytors.graded import FinAbGroup, Status
from polytors.torsion import (
    all_higher_torsion,
    bockstein_pair,
    degree_n2,
    free_degree,
    higher_torsion,
    homology_of_P,
    homology_of_W,
    least_k_via_weight,
    stable_degree,
)


def triples(summands):
    return [(s.degree, s.order, s.least_k) for s in summands]


def test_higher_torsion_examples():
    assert triples(higher_torsion(2, 2, 2)) == [(6, 4, 8)]
    assert higher_torsion(1, 2, 2) == []
    assert triples(higher_torsion(10, 2, 2)) == [(22, 4, 24), (30, 4, 32)]
    assert triples(higher_torsion(6, 2, 3)) == [(16, 9, 18)]


def test_omitted_runs_are_kept_on_request():
    (s,) = higher_torsion(1, 2, 2, include_omitted=True)
    assert s.omitted and s.omit_reason and s.alpha == 1
    assert (s.degree, s.exponent) == (2, 2)
    flagged = higher_torsion(10, 2, 11, include_omitted=True)
    assert [x.omitted for x in flagged] == [True]


def test_all_higher_torsion_examples():
    got = [(s.p, s.degree, s.order, s.least_k) for s in all_higher_torsion(6, 2)]
    assert got == [(2, 14, 8, 16), (3, 16, 9, 18)]
    assert [(s.p, s.degree) for s in all_higher_torsion(6, 2, include_omitted=True)] == [(7, 12), (2, 14), (3, 16)]
    assert all_higher_torsion(1, 2) == []
    assert [(s.p, s.degree, s.order, s.least_k) for s in all_higher_torsion(2, 3)] == [(2, 14, 4, 12)]


def test_example_closed_forms_at_l10():
    # l = 2 (2^2 + 2^0), m = 1, (i1, j1) = (2, 2), (i2, j2) = (0, 0)
    p, m, i1, j1, i2 = 2, 1, 2, 2, 0
    a = 2 * (p ** (m + i1 + 1) - 1)
    b = 2 * p**m * (p ** (i1 + 1) - p**j1 + p ** (i2 + 1)) - 2
    assert (a, b) == (30, 22)
    assert {s.degree: s.least_k for s in higher_torsion(10, 2, 2)} == {a: a + 2, b: b + 2}


@pytest.mark.parametrize("l, n, p, alpha, expected", [(10, 2, 2, 1, 32), (10, 2, 2, 2, 24), (2, 2, 2, 1, 8)])
def test_least_k_via_weight(l, n, p, alpha, expected):
    assert least_k_via_weight(l, n, p, alpha) == expected


def test_least_k_via_weight_bad_alpha():
    with pytest.raises(DomainError):
        least_k_via_weight(10, 2, 2, 3)


def test_bockstein_pair_degrees():
    dec = decompose(10, 2)
    for alpha in (1, 2):
        for n in (2, 3, 5):
            src, tgt = bockstein_pair(dec, alpha, n)
            d = stable_degree(dec, alpha, n)
            assert tgt.degree == d
            assert src.degree == d + 1
            assert src.weight == tgt.weight
    src, tgt = bockstein_pair(dec, 1, 2)
    assert src.description == "x^0 ⊗ Q_1^4(ι)"
    assert tgt.description == "x^8 ⊗ βQ_1^3(ι)"


@settings(max_examples=300)
@given(st.integers(1, 10**6), st.sampled_from([2, 3, 4, 7, 11]))
def test_structural_identities(l, n):
    for p in relevant_primes(l)[:6]:
        dec = decompose(l, p)
        for s in higher_torsion(l, n, p, include_omitted=True):
            run = dec.run(s.alpha)
            assert s.exponent == run.i - run.j + 2 >= 2
            assert s.least_k == n * p**dec.m * (run.u + p ** (run.i + 1))
            assert s.least_k == least_k_via_weight(l, n, p, s.alpha)
            assert stable_degree(dec, s.alpha, 2) == degree_n2(dec, s.alpha)


def test_invalid_inputs():
    with pytest.raises(DomainError):
        higher_torsion(5, 1, 2)
    with pytest.raises(DomainError):
        homology_of_P(0, 2, 1, 3)
    with pytest.raises(DomainError):
        homology_of_W(1, 2, None, -1)


def test_homology_of_W_examples():
    g = homology_of_W(1, 2, None, 4)
    assert [str(g[d]) for d in range(5)] == ["Z", "0", "0", "Z", "0"]
    assert [g.at(d).status for d in range(5)] == [Status.COMPLETE] * 3 + [Status.PARTIAL] * 2
    g = homology_of_W(6, 2, 2, 20)
    assert g[14] == FinAbGroup(0, ((2, 3),))
    assert g.at(14).status is Status.PARTIAL
    assert g.at(16).group.is_trivial  # p=3 summand excluded when p=2 is selected
    assert homology_of_W(6, 2, None, 20)[16] == FinAbGroup(0, ((3, 2),))
    g = homology_of_W(4, 2, 2, 0)
    assert g.degrees() == [0] and str(g[0]) == "Z"


def test_homology_of_W_general_n():
    g = homology_of_W(2, 3, None, 16)
    top = free_degree(2, 3)
    assert top == 11
    assert g[top].free_rank == 1
    assert g.at(5).status is Status.UNKNOWN
    assert g[14] == FinAbGroup(0, ((2, 2),))
    assert g.at(14).status is Status.PARTIAL


def test_homology_of_P_examples():
    g = homology_of_P(6, 2, 1, 7)
    assert [str(g[d]) for d in range(8)] == ["Z", "0", "0", "Z", "Z/3", "0", "0", "0"]
    assert all(e.status is Status.COMPLETE for e in g.groups)

    g = homology_of_P(3, 2, 1, 10)
    assert [str(g[d]) for d in range(11)] == ["Z"] + ["0"] * 10
    assert g.provenance == "contractible"

    g = homology_of_P(8, 2, 2, 6)
    assert str(g[6]) == "Z/4" and g.at(6).status is Status.COMPLETE


def test_homology_of_P_thresholds():
    # Z/8 at degree 14 for l = 6 appears from k = 16 on
    assert homology_of_P(15, 2, 6, 20)[14].p_part(2) == ()
    assert homology_of_P(16, 2, 6, 20)[14].p_part(2) == (3,)
    assert homology_of_P(17, 2, 6, 20)[16].p_part(3) == ()
    assert homology_of_P(18, 2, 6, 20)[16].p_part(3) == (2,)


def test_homology_of_P_general_n_contractible_bound():
    assert homology_of_P(8, 3, 2, 12).provenance == "contractible"
    g = homology_of_P(9, 3, 2, 14)
    assert g[free_degree(2, 3)].free_rank == 1
    assert g[14].is_trivial  # least k for Z/4 is 12
    assert homology_of_P(12, 3, 2, 14)[14] == FinAbGroup(0, ((2, 2),))


def summand_multiset(k, n, l, max_degree):
    return homology_of_P(k, n, l, max_degree).summands()


@pytest.mark.parametrize("n, l", [(2, 6), (2, 10), (3, 4), (4, 9), (2, 26)])
def test_monotone_in_k(n, l):
    top = max([s.least_k for s in all_higher_torsion(l, n)] + [n * (l + 1)])
    max_degree = max([s.degree for s in all_higher_torsion(l, n)] + [2 * l + 5])
    prev = Counter()
    for k in range(n * (l + 1), top + 2 * n):
        cur = summand_multiset(k, n, l, max_degree)
        assert not prev - cur
        prev = cur
