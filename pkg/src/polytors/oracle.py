"""Independent recomputation of torsion exponents from binomial valuations.

For a run ``(i, j)`` of ``l`` at the prime ``p`` the cokernel of the
differentials into the bottom row is cyclic of exponent

    min(e, min_{n admissible} v_p(C(N, n)))

where ``N = p^m (u + p^(i+1))``, ``e = m + i + 1 = v_p(N)`` and ``n = p s``
ranges over ``1 <= n <= S = p^(m+j) - 1 - p^m L`` (``L`` the digits of ``q``
below the run).  Valuations are counted as carries (Kummer), never by
building the binomial.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from . import kernels
from .digits import DomainError, RunDecomposition, check_prime, decompose


def carry_valuation(N: int, n: int, p: int) -> int:
    """``v_p(C(N, n))`` as the number of carries in ``n + (N - n)`` base ``p``.

    >>> carry_valuation(16, 4, 2)
    2
    """
    check_prime(p)
    if n < 0 or N < 0:
        raise DomainError("carry_valuation needs nonnegative arguments")
    if n > N:
        raise DomainError(f"n={n} exceeds N={N}")
    return kernels.carry_count(N, n, p)


@dataclass(frozen=True)
class DifferentialProblem:
    p: int
    N: int
    S: int
    e: int
    multiples_only: bool = True
    # run data the problem was built from, kept for reports
    m: int = 0
    i: int = 0
    j: int = 0
    lower: int = 0

    @classmethod
    def from_run(cls, dec: RunDecomposition, alpha: int, multiples_only: bool = True) -> "DifferentialProblem":
        run = dec.run(alpha)
        p, m = dec.p, dec.m
        return cls(
            p=p,
            N=p**m * run.u + p ** (m + run.i + 1),
            S=p ** (m + run.j) - 1 - p**m * run.lower,
            e=m + run.i + 1,
            multiples_only=multiples_only,
            m=m,
            i=run.i,
            j=run.j,
            lower=run.lower,
        )

    @classmethod
    def for_run(cls, l: int, p: int, alpha: int, multiples_only: bool = True) -> "DifferentialProblem":
        return cls.from_run(decompose(l, p), alpha, multiples_only)

    @property
    def step(self) -> int:
        return self.p if self.multiples_only else 1

    def admissible(self) -> range:
        return range(self.step, self.S + 1, self.step)


def min_valuation(problem: DifferentialProblem) -> tuple[int | None, frozenset[int]]:
    """Smallest carry count over admissible ``n`` and every ``n`` attaining it."""
    best, argmin = kernels.min_carry_scan(problem.N, problem.S, problem.p, problem.step)
    return best, frozenset(argmin)


def oracle_exponent(problem: DifferentialProblem) -> int:
    best, _ = min_valuation(problem)
    return problem.e if best is None else min(problem.e, best)


def predicted_minimizers(problem: DifferentialProblem) -> frozenset[int]:
    """``t p^(m+j-1)`` for ``1 <= t <= p-1``, intersected with the admissible set."""
    if problem.m + problem.j < 1:
        return frozenset()
    base = problem.p ** (problem.m + problem.j - 1)
    return frozenset(
        n
        for n in (t * base for t in range(1, problem.p))
        if n <= problem.S and n % problem.step == 0
    )


class Outcome(str, enum.Enum):
    AGREE = "agree"
    OMITTED_CONSISTENT = "omitted-consistent"
    AMBIGUITY = "ambiguity"
    MISMATCH = "mismatch"


AMBIGUITY_LABEL = (
    "open question: m = 0, alpha = r, j_r > 0; the omission rule drops this run "
    "but the cokernel computation leaves higher torsion"
)


@dataclass(frozen=True)
class RunCheck:
    l: int
    p: int
    alpha: int
    r: int
    m: int
    i: int
    j: int
    mu: int
    omitted: bool
    N: int
    S: int
    e: int
    v_min: int | None
    argmin: tuple[int, ...]
    oracle: int
    argmin_ok: bool
    outcome: Outcome
    note: str = ""

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.l, self.p, self.alpha)

    def as_dict(self) -> dict:
        d = {name: getattr(self, name) for name in self.__dataclass_fields__}
        d["argmin"] = list(self.argmin)
        d["outcome"] = self.outcome.value
        return d

    def describe(self) -> str:
        vmin = "none" if self.v_min is None else str(self.v_min)
        return (
            f"l={self.l} p={self.p} alpha={self.alpha}/{self.r} m={self.m} (i,j)=({self.i},{self.j}) "
            f"mu={self.mu} oracle={self.oracle} [N={self.N} S={self.S} e={self.e} v_min={vmin}] "
            f"{self.outcome.value}" + (f": {self.note}" if self.note else "")
        )


def check_run(dec: RunDecomposition, alpha: int, multiples_only: bool = True) -> RunCheck:
    run = dec.run(alpha)
    problem = DifferentialProblem.from_run(dec, alpha, multiples_only)
    v_min, argmin = min_valuation(problem)
    oracle = problem.e if v_min is None else min(problem.e, v_min)
    mu = run.i - run.j + 2
    omitted = dec.m == 0 and alpha == dec.r
    expected_argmin = predicted_minimizers(problem)
    argmin_ok = v_min is None or expected_argmin <= argmin
    note = ""
    if not argmin_ok:
        outcome = Outcome.MISMATCH
        note = f"argmin misses {sorted(expected_argmin - argmin)}"
    elif not omitted:
        outcome = Outcome.AGREE if oracle == mu else Outcome.MISMATCH
    elif run.j == 0:
        # the run sits at degree 2l, just under the free class; nothing can hit it
        outcome = Outcome.OMITTED_CONSISTENT if v_min is None else Outcome.MISMATCH
        if outcome is Outcome.MISMATCH:
            note = "admissible set unexpectedly nonempty"
    elif oracle >= 2:
        outcome = Outcome.AMBIGUITY
        note = AMBIGUITY_LABEL
    else:
        outcome = Outcome.OMITTED_CONSISTENT
    return RunCheck(
        l=dec.l,
        p=dec.p,
        alpha=alpha,
        r=dec.r,
        m=dec.m,
        i=run.i,
        j=run.j,
        mu=mu,
        omitted=omitted,
        N=problem.N,
        S=problem.S,
        e=problem.e,
        v_min=v_min,
        argmin=tuple(sorted(argmin)),
        oracle=oracle,
        argmin_ok=argmin_ok,
        outcome=outcome,
        note=note,
    )


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[RunCheck, ...]
    strict: bool = False
    ls: tuple[int, ...] = field(default=(), compare=False)
    ps: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "checks", tuple(sorted(self.checks, key=lambda c: c.key)))

    def counts(self) -> Counter:
        return Counter(c.outcome for c in self.checks)

    @property
    def mismatches(self) -> list[RunCheck]:
        return [c for c in self.checks if c.outcome is Outcome.MISMATCH]

    @property
    def ambiguities(self) -> list[RunCheck]:
        return [c for c in self.checks if c.outcome is Outcome.AMBIGUITY]

    @property
    def ok(self) -> bool:
        if self.mismatches:
            return False
        return not (self.strict and self.ambiguities)

    @property
    def exit_code(self) -> int:
        if self.mismatches:
            return 2
        if self.strict and self.ambiguities:
            return 3
        return 0

    def summary(self) -> str:
        counts = self.counts()
        m_pos = [c for c in self.checks if c.m >= 1]
        lines = [
            f"runs checked: {len(self.checks)}",
            f"  agree: {counts[Outcome.AGREE]} (m>=1: {sum(c.outcome is Outcome.AGREE for c in m_pos)})",
            f"  omitted, consistent: {counts[Outcome.OMITTED_CONSISTENT]}",
            f"  documented ambiguity (m=0, alpha=r, j_r>0): {counts[Outcome.AMBIGUITY]}",
            f"  mismatches: {counts[Outcome.MISMATCH]}",
        ]
        if all(c.outcome is Outcome.AGREE for c in m_pos):
            lines.append("all m≥1 runs agree")
        else:
            lines.append("m≥1 runs DISAGREE")
        if self.strict and self.ambiguities:
            lines.append("strict: documented ambiguities present")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        counts = self.counts()
        return {
            "strict": self.strict,
            "counts": {o.value: counts[o] for o in Outcome},
            "exit_code": self.exit_code,
            "checks": [c.as_dict() for c in self.checks],
        }


def verify(l: int, p: int, strict: bool = False, multiples_only: bool = True) -> VerificationReport:
    """Compare every run's exponent with the cokernel computation for one ``(l, p)``."""
    dec = decompose(l, p)
    checks = tuple(check_run(dec, alpha, multiples_only) for alpha in range(1, dec.r + 1))
    return VerificationReport(checks, strict, (l,), (p,))


def _verify_chunk(args) -> list[RunCheck]:
    ls, ps, multiples_only = args
    out = []
    for l in ls:
        for p in ps:
            out.extend(verify(l, p, multiples_only=multiples_only).checks)
    return out


def verify_sweep(ls, ps, strict: bool = False, workers: int = 1, multiples_only: bool = True) -> VerificationReport:
    """Run :func:`verify` over every ``(l, p)``; the report does not depend on ``workers``."""
    ls = sorted(set(ls))
    ps = sorted(set(ps))
    for p in ps:
        check_prime(p)
    if workers <= 1 or len(ls) < 2:
        checks = _verify_chunk((ls, ps, multiples_only))
    else:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [(ls[w::workers], ps, multiples_only) for w in range(workers)]
        checks = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_verify_chunk, chunks):
                checks.extend(part)
    return VerificationReport(tuple(checks), strict, tuple(ls), tuple(ps))
