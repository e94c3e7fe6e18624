"""Base-p expansions and maximal (p-1)-run decompositions of integers.

An integer ``l >= 1`` is written as ``l = p**m * q`` with ``p`` not dividing
``q``.  The base-``p`` digits of ``q`` are scanned for maximal blocks of
digits equal to ``p - 1``; each block ``a_j = ... = a_i = p - 1`` is a *run*
``(i, j)``.  Runs are listed from the most significant block downwards.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .errors import DomainError, InvalidBaseError

MAX_PRIME = 10**6


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    """Return ``p`` unchanged, or raise :class:`InvalidBaseError`."""
    if not isinstance(p, int) or isinstance(p, bool):
        raise InvalidBaseError(f"base must be an integer, got {p!r}")
    if p > MAX_PRIME:
        raise InvalidBaseError(f"base {p} exceeds the supported limit {MAX_PRIME}")
    if not is_prime(p):
        raise InvalidBaseError(f"base {p} is not prime")
    return p


_sieved: list[int] = []
_sieve_bound = 1


def _sieve(bound: int) -> list[int]:
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for f in range(2, int(bound**0.5) + 1):
        if flags[f]:
            flags[f * f :: f] = bytes(len(range(f * f, bound + 1, f)))
    return [i for i, flag in enumerate(flags) if flag]


def primes_up_to(bound: int) -> list[int]:
    """All primes ``<= bound``; the underlying sieve only ever grows."""
    global _sieved, _sieve_bound
    if bound > _sieve_bound:
        _sieve_bound = max(bound, 2 * _sieve_bound, 1024)
        _sieved = _sieve(_sieve_bound)
    return _sieved[: bisect_right(_sieved, bound)]


def valuation(value: int, p: int) -> int:
    """Exponent of ``p`` in ``value`` (``value > 0``)."""
    if value <= 0:
        raise DomainError("valuation is only defined for positive integers")
    m = 0
    while value % p == 0:
        value //= p
        m += 1
    return m


@dataclass(frozen=True)
class BasePExpansion:
    """Digits of ``value`` in base ``p``, least significant first."""

    p: int
    value: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= a < self.p for a in self.digits):
            raise DomainError(f"digit out of range for base {self.p}: {self.digits}")
        if self.digits and self.digits[-1] == 0:
            raise DomainError("leading digit must be nonzero")
        if self.reconstruct() != self.value:
            raise DomainError("digits do not reconstruct the value")

    def reconstruct(self) -> int:
        total = 0
        for a in reversed(self.digits):
            total = total * self.p + a
        return total

    @property
    def top(self) -> int:
        """Index ``N`` of the leading digit (-1 for zero)."""
        return len(self.digits) - 1


def expand(value: int, p: int) -> BasePExpansion:
    """Base-``p`` expansion of a nonnegative integer.

    >>> expand(19, 3).digits
    (1, 0, 2)
    """
    check_prime(p)
    if value < 0:
        raise DomainError(f"cannot expand negative value {value}")
    digits = []
    rest = value
    while rest:
        rest, a = divmod(rest, p)
        digits.append(a)
    return BasePExpansion(p, value, tuple(digits))


class Run(NamedTuple):
    """One maximal run together with the quantities attached to it."""

    alpha: int
    i: int
    j: int
    u: int
    v: int
    lower: int

    @property
    def length(self) -> int:
        return self.i - self.j + 1


@dataclass(frozen=True)
class RunDecomposition:
    p: int
    l: int
    m: int
    q: int
    q_digits: BasePExpansion
    runs: tuple[tuple[int, int], ...]
    u: tuple[int, ...]
    v: tuple[int, ...]
    lower: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.runs)

    def run(self, alpha: int) -> Run:
        """Run number ``alpha`` (1-based, most significant first)."""
        if not 1 <= alpha <= self.r:
            raise DomainError(f"alpha={alpha} out of range 1..{self.r}")
        i, j = self.runs[alpha - 1]
        k = alpha - 1
        return Run(alpha, i, j, self.u[k], self.v[k], self.lower[k])

    def __iter__(self) -> Iterator[Run]:
        for alpha in range(1, self.r + 1):
            yield self.run(alpha)


def find_runs(digits: tuple[int, ...], p: int) -> tuple[tuple[int, int], ...]:
    """Maximal blocks of digits equal to ``p - 1`` as ``(i, j)``, top block first."""
    top = p - 1
    runs = []
    nu = len(digits) - 1
    while nu >= 0:
        if digits[nu] == top:
            i = nu
            while nu >= 0 and digits[nu] == top:
                nu -= 1
            runs.append((i, nu + 1))
        else:
            nu -= 1
    return tuple(runs)


def decompose(l: int, p: int) -> RunDecomposition:
    """Split ``l = p**m * q`` and decompose the digits of ``q`` into runs.

    A run starting at digit 0 has no lower neighbour; its lower boundary
    condition holds vacuously.

    >>> d = decompose(10, 2)
    >>> d.m, d.q, d.runs, d.u, d.v, d.lower
    (1, 5, ((2, 2), (0, 0)), (0, 4), (4, 5), (1, 0))
    """
    check_prime(p)
    if not isinstance(l, int) or l < 1:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    m = valuation(l, p)
    q = l // p**m
    exp = expand(q, p)
    runs = find_runs(exp.digits, p)
    u = tuple(q - q % p ** (i + 1) for i, _ in runs)
    v = tuple(q - q % p**j for _, j in runs)
    lower = tuple(q % p**j for _, j in runs)
    return RunDecomposition(p, l, m, q, exp, runs, u, v, lower)


def relevant_primes(l: int) -> list[int]:
    """Primes whose decomposition of ``l`` has at least one run.

    A run needs a digit ``p - 1 <= q <= l``, so only ``p <= l + 1`` qualify.
    """
    if not isinstance(l, int) or l < 1:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    out = []
    for p in primes_up_to(l + 1):
        q = l
        while q % p == 0:
            q //= p
        while q:
            q, a = divmod(q, p)
            if a == p - 1:
                out.append(p)
                break
    return out
