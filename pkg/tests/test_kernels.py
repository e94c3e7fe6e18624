import random

import pytest
from hypothesis import given, strategies as st

from polytors import kernels
from polytors.digits import primes_up_to
from polytors.oracle import carry_valuation
from polytors.errors import DomainError

from conftest import binomial_valuation

PRIMES = primes_up_to(31)


@pytest.mark.parametrize("N, n, p, expected", [(8, 2, 2, 2), (16, 4, 2, 2), (16, 2, 2, 3), (9, 3, 3, 1), (40, 0, 5, 0)])
def test_carry_count_examples(backend, N, n, p, expected):
    # expected values: 28 = 2^2*7, 1820 = 2^2*455, 120 = 2^3*15, 84 = 3*28, C(N,0) = 1
    assert backend.carry_count(N, n, p) == expected
    assert binomial_valuation(N, n, p) == expected


def test_carry_count_matches_exact_binomials(backend):
    rng = random.Random(7)
    for _ in range(2000):
        N = rng.randint(0, 3000)
        n = rng.randint(0, N)
        p = rng.choice(PRIMES)
        assert backend.carry_count(N, n, p) == binomial_valuation(N, n, p)


def brute_scan(N, S, p, step):
    vals = {n: binomial_valuation(N, n, p) for n in range(step, S + 1, step)}
    if not vals:
        return None, []
    best = min(vals.values())
    return best, sorted(n for n, v in vals.items() if v == best)


@pytest.mark.parametrize("N, S, p, step", [(16, 5, 2, 2), (27, 7, 3, 3), (27, 7, 3, 1), (8, 1, 2, 2), (100, 99, 5, 5), (625, 300, 5, 1)])
def test_min_scan_against_brute_force(backend, N, S, p, step):
    best, argmin = backend.min_carry_scan(N, S, p, step)
    assert (best, sorted(argmin)) == brute_scan(N, S, p, step)


@given(st.integers(0, 2**62), st.integers(0, 2**62), st.sampled_from(PRIMES))
def test_backends_agree_on_large_words(N, n, p):
    N, n = max(N, n), min(N, n)
    from polytors import _kernels_py

    assert kernels.carry_count(N, n, p) == _kernels_py.carry_count(N, n, p)


def test_dispatch_handles_big_integers():
    N = 2**200
    assert kernels.carry_count(N, 2**100, 2) == 100
    best, argmin = kernels.min_carry_scan(3**90, 30, 3, 3)
    assert (best, argmin) == brute_scan(3**90, 30, 3, 3) == (87, [27])


def test_carry_valuation_domain():
    with pytest.raises(DomainError):
        carry_valuation(3, 5, 2)
    assert carry_valuation(50, 0, 7) == 0


def test_env_var_forces_fallback():
    import subprocess
    import sys

    code = "import polytors.kernels as k; print(k.BACKEND)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        env={**__import__("os").environ, "POLYTORS_PURE_PYTHON": "1"},
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "python"
