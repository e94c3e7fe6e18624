"""Higher p-torsion in the homology of P_{k,n}^l and of its stable limit.

Every run ``(i, j)`` of the decomposition of ``l`` at a prime ``p`` carries a
summand ``Z/p**(i - j + 2)`` in degree

    d = 2 (n - 1) p**m (u + p**(i + 1)) - 2

of the stable space, first reaching ``P_{k,n}^l`` at ``k = n (d + 2) / (2 (n - 1))``.
When ``m == 0`` the least significant run is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digits import DomainError, RunDecomposition, decompose, relevant_primes
from .graded import FinAbGroup, GradedGroup, Status

OMIT_REASON = (
    "m = 0 and alpha = r: the source class reduces the free generator mod p"
)


@dataclass(frozen=True)
class TorsionSummand:
    p: int
    alpha: int
    n: int
    degree: int
    exponent: int
    least_k: int
    omitted: bool = False
    omit_reason: str | None = None

    @property
    def order(self) -> int:
        return self.p**self.exponent

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "alpha": self.alpha,
            "n": self.n,
            "degree": self.degree,
            "exponent": self.exponent,
            "order": self.order,
            "least_k": self.least_k,
            "omitted": self.omitted,
            "omit_reason": self.omit_reason,
        }


@dataclass(frozen=True)
class WeightedClass:
    """A mod-p homology class written as ``x^a (x) [beta] Q_1^t (iota)``."""

    x_power: int
    q_iterations: int
    bockstein: bool
    n: int
    p: int

    @property
    def description(self) -> str:
        b = "βQ_1" if self.bockstein else "Q_1"
        return f"x^{self.x_power} ⊗ {b}^{self.q_iterations}(ι)"

    @property
    def degree(self) -> int:
        # |x| = 2n-2, |iota| = 2n-3, |Q_1 y| = p|y| + p - 1, beta lowers by one
        iota = 2 * self.n - 3
        for _ in range(self.q_iterations):
            iota = self.p * iota + self.p - 1
        return (2 * self.n - 2) * self.x_power + iota - int(self.bockstein)

    @property
    def weight(self) -> int:
        iota = self.n
        for _ in range(self.q_iterations):
            iota *= self.p
        return self.n * self.x_power + iota


def _check_n(n: int) -> None:
    if not isinstance(n, int) or n < 2:
        raise DomainError(f"n must be an integer >= 2, got {n!r}")


def degree_n2(dec: RunDecomposition, alpha: int) -> int:
    """Degree of the summand for ``n = 2``, straight from the run data."""
    run = dec.run(alpha)
    p, m = dec.p, dec.m
    return 2 * (p**m * run.u + p ** (m + run.i + 1) - 1)


def stable_degree(dec: RunDecomposition, alpha: int, n: int) -> int:
    run = dec.run(alpha)
    p, m = dec.p, dec.m
    return 2 * (n - 1) * p**m * (run.u + p ** (run.i + 1)) - 2


def least_k_from_degree(degree: int, n: int) -> int:
    k, rem = divmod(n * (degree + 2), 2 * (n - 1))
    if rem:
        raise DomainError(f"degree {degree} gives a non-integral threshold for n={n}")
    return k


def bockstein_pair(dec: RunDecomposition, alpha: int, n: int) -> tuple[WeightedClass, WeightedClass]:
    """The source and target classes of the undetermined Bockstein for a run."""
    run = dec.run(alpha)
    p, m = dec.p, dec.m
    source = WeightedClass(p**m * run.u, m + run.i + 1, False, n, p)
    target = WeightedClass(p**m * run.v, m + run.j, True, n, p)
    return source, target


def least_k_via_weight(l: int, n: int, p: int, alpha: int) -> int:
    """Least k from the weight of the Bockstein target class.

    >>> least_k_via_weight(10, 2, 2, 1)
    32
    """
    _check_n(n)
    dec = decompose(l, p)
    return bockstein_pair(dec, alpha, n)[1].weight


def summands_for(dec: RunDecomposition, n: int, include_omitted: bool = False) -> list[TorsionSummand]:
    _check_n(n)
    out = []
    for run in dec:
        degree = stable_degree(dec, run.alpha, n)
        omitted = dec.m == 0 and run.alpha == dec.r
        if omitted and not include_omitted:
            continue
        out.append(
            TorsionSummand(
                p=dec.p,
                alpha=run.alpha,
                n=n,
                degree=degree,
                exponent=run.i - run.j + 2,
                least_k=least_k_from_degree(degree, n),
                omitted=omitted,
                omit_reason=OMIT_REASON if omitted else None,
            )
        )
    out.sort(key=lambda s: s.degree)
    return out


def higher_torsion(l: int, n: int, p: int, include_omitted: bool = False) -> list[TorsionSummand]:
    """Higher p-torsion summands of the stable space for one prime.

    Omitted runs are returned only with ``include_omitted=True``, flagged.

    >>> [(s.degree, s.order, s.least_k) for s in higher_torsion(10, 2, 2)]
    [(22, 4, 24), (30, 4, 32)]
    """
    return summands_for(decompose(l, p), n, include_omitted)


def all_higher_torsion(l: int, n: int, include_omitted: bool = False) -> list[TorsionSummand]:
    _check_n(n)
    out = []
    for p in relevant_primes(l):
        out.extend(higher_torsion(l, n, p, include_omitted))
    out.sort(key=lambda s: (s.degree, s.p))
    return out


def free_degree(l: int, n: int) -> int:
    """Degree of the rational generator ``x^l (x) iota``."""
    return (2 * n - 2) * l + (2 * n - 3)


def _torsion_groups(summands, max_degree):
    by_degree: dict[int, list[tuple[int, int]]] = {}
    for s in summands:
        if s.degree <= max_degree:
            by_degree.setdefault(s.degree, []).append((s.p, s.exponent))
    return by_degree


def homology_of_W(l: int, n: int, p: int | None = None, max_degree: int = 0) -> GradedGroup:
    """Known part of the integral homology of the stable space, degrees 0..max_degree.

    For n = 2 the degrees 1..2l vanish; elsewhere only the free class and the
    higher torsion are listed, with elementary p-torsion left undetermined.
    """
    _check_n(n)
    if max_degree < 0:
        raise DomainError("max_degree must be nonnegative")
    summands = all_higher_torsion(l, n) if p is None else higher_torsion(l, n, p)
    torsion = _torsion_groups(summands, max_degree)
    top = free_degree(l, n)
    entries = {}
    for d in range(max_degree + 1):
        free = 1 if d in (0, top) else 0
        group = FinAbGroup(free, tuple(torsion.get(d, ())))
        if d == 0:
            status = Status.COMPLETE
        elif n == 2 and d <= 2 * l:
            status = Status.COMPLETE
        elif n > 2 and d < top:
            status = Status.UNKNOWN
        else:
            status = Status.PARTIAL
        entries[d] = (group, status)
    prov = "stable" if n == 2 else "stable; free degree derived from |x|=2n-2, |ι|=2n-3"
    return GradedGroup.from_entries(n, l, None, entries, provenance=prov)


def homology_of_P(k: int, n: int, l: int, max_degree: int) -> GradedGroup:
    """Known part of the integral homology of P_{k,n}^l, degrees 0..max_degree.

    Below ``k = n (l + 1)`` the space is contractible.  For n = 2 the low
    degrees 2l+1..2l+5 are filled in from the table of cyclic orders and
    cross-checked against the torsion summands (``ConsistencyError`` on conflict).
    """
    from . import arnold

    _check_n(n)
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if not isinstance(l, int) or l < 1:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    if max_degree < 0:
        raise DomainError("max_degree must be nonnegative")

    if k < n * (l + 1):
        entries = {
            d: (FinAbGroup(1 if d == 0 else 0), Status.COMPLETE)
            for d in range(max_degree + 1)
        }
        return GradedGroup.from_entries(n, l, k, entries, provenance="contractible")

    summands = [s for s in all_higher_torsion(l, n) if s.least_k <= k]
    torsion = _torsion_groups(summands, max_degree)
    top = free_degree(l, n)
    entries = {}
    for d in range(max_degree + 1):
        free = 1 if d in (0, top) else 0
        group = FinAbGroup(free, tuple(torsion.get(d, ())))
        if d == 0 or (n == 2 and d <= 2 * l):
            status = Status.COMPLETE
        elif n > 2 and d < top:
            status = Status.UNKNOWN
        else:
            status = Status.PARTIAL
        entries[d] = (group, status)
    result = GradedGroup.from_entries(n, l, k, entries, provenance="torsion summands")
    if n == 2:
        table = arnold.table_graded(l, k, max_degree)
        result = result.merge(table)
    return result
