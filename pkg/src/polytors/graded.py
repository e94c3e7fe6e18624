"""Finitely generated abelian groups graded by homological degree.

Torsion is stored as prime-power summands ``Z/p^e``.  Each degree carries a
status saying how much of the group is actually known:

* ``complete`` -- the group is determined;
* ``partial`` -- the free rank and every summand ``Z/p^e`` with ``e >= 2``
  are determined, summands of order exactly ``p`` may be missing;
* ``unknown`` -- nothing beyond the listed summands is asserted.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import ConsistencyError, DomainError


class Status(str, Enum):
    COMPLETE = "complete"
    PARTIAL = "partial"
    UNKNOWN = "unknown"

    @property
    def rank(self) -> int:
        return {"complete": 2, "partial": 1, "unknown": 0}[self.value]


def factorize(value: int) -> dict[int, int]:
    out: dict[int, int] = {}
    f = 2
    while f * f <= value:
        while value % f == 0:
            out[f] = out.get(f, 0) + 1
            value //= f
        f += 1 if f == 2 else 2
    if value > 1:
        out[value] = out.get(value, 0) + 1
    return out


@dataclass(frozen=True)
class FinAbGroup:
    """``Z^free_rank ⊕ ⨁ Z/p^e`` with summands kept sorted by ``(p, e)``."""

    free_rank: int = 0
    torsion: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise DomainError("free rank must be nonnegative")
        for p, e in self.torsion:
            if e < 1 or p < 2:
                raise DomainError(f"bad torsion summand Z/{p}^{e}")
        object.__setattr__(self, "torsion", tuple(sorted(tuple(t) for t in self.torsion)))

    @classmethod
    def cyclic(cls, order: int | float) -> "FinAbGroup":
        """Cyclic group of the given order; ``math.inf`` gives ``Z``, 1 the trivial group."""
        if order == math.inf:
            return cls(1)
        if order < 1:
            raise DomainError(f"cyclic order must be >= 1, got {order}")
        return cls(0, tuple(factorize(int(order)).items()))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> int | float:
        if self.free_rank:
            return math.inf
        return math.prod(p**e for p, e in self.torsion)

    @property
    def is_cyclic(self) -> bool:
        if self.free_rank > 1:
            return False
        if self.free_rank == 1:
            return not self.torsion
        primes = [p for p, _ in self.torsion]
        return len(primes) == len(set(primes))

    def primes(self) -> set[int]:
        return {p for p, _ in self.torsion}

    def p_part(self, p: int) -> tuple[int, ...]:
        """Exponents of the ``p``-primary summands, ascending."""
        return tuple(e for q, e in self.torsion if q == p)

    def higher(self, p: int) -> tuple[int, ...]:
        return tuple(e for e in self.p_part(p) if e >= 2)

    def union(self, other: "FinAbGroup") -> "FinAbGroup":
        """Multiset union: the smallest group containing both summand lists."""
        a, b = Counter(self.torsion), Counter(other.torsion)
        return FinAbGroup(max(self.free_rank, other.free_rank), tuple((a | b).elements()))

    def invariant_factors(self) -> list[int]:
        by_prime: dict[int, list[int]] = {}
        for p, e in self.torsion:
            by_prime.setdefault(p, []).append(e)
        width = max((len(v) for v in by_prime.values()), default=0)
        factors = [1] * width
        for p, exps in by_prime.items():
            for idx, e in enumerate(sorted(exps, reverse=True)):
                factors[width - 1 - idx] *= p**e
        return factors

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank
        parts += [f"Z/{p**e}" for p, e in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"


def render_group(group: FinAbGroup, status: Status) -> str:
    if status is Status.COMPLETE:
        return str(group)
    if status is Status.PARTIAL:
        if group.is_trivial:
            return "elementary p-torsion only, undetermined"
        return f"⊇ {group}, plus undetermined elementary p-torsion"
    if group.is_trivial:
        return "unknown"
    return f"⊇ {group}, rest unknown"


@dataclass(frozen=True)
class DegreeGroup:
    degree: int
    group: FinAbGroup
    status: Status

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "free_rank": self.group.free_rank,
            "torsion": [[p, e] for p, e in self.group.torsion],
            "status": self.status.value,
        }


def _merge_degree(a: DegreeGroup, b: DegreeGroup) -> DegreeGroup:
    d = a.degree
    if a.status.rank < b.status.rank:
        a, b = b, a
    if a.status is Status.COMPLETE and b.status is Status.COMPLETE:
        if a.group != b.group:
            raise ConsistencyError(d, a.group, b.group)
        return a
    if a.status is Status.COMPLETE:
        # b only pins down its own primes (and its free rank)
        if b.group.free_rank > a.group.free_rank:
            raise ConsistencyError(d, a.group, b.group, f"degree {d}: complete group {a.group} lacks free rank of {b.group}")
        for p in b.group.primes():
            if b.status is Status.PARTIAL:
                ok = a.group.higher(p) == b.group.higher(p) and Counter(b.group.p_part(p)) <= Counter(a.group.p_part(p))
            else:
                ok = Counter(b.group.p_part(p)) <= Counter(a.group.p_part(p))
            if not ok:
                raise ConsistencyError(
                    d, a.group, b.group, f"degree {d}: {p}-part of {a.group} contradicts predicted {b.group}"
                )
        return a
    return DegreeGroup(d, a.group.union(b.group), a.status)


@dataclass(frozen=True)
class GradedGroup:
    """Homology groups by degree plus the parameters that produced them.

    ``k`` is ``None`` for the stable space.
    """

    n: int
    l: int
    k: int | None
    groups: tuple[DegreeGroup, ...] = ()
    provenance: str = field(default="", compare=False)

    @classmethod
    def from_entries(cls, n, l, k, entries: Mapping[int, tuple[FinAbGroup, Status]], provenance: str = "") -> "GradedGroup":
        groups = tuple(DegreeGroup(d, g, Status(s)) for d, (g, s) in sorted(entries.items()))
        return cls(n, l, k, groups, provenance)

    @classmethod
    def empty(cls, n: int, l: int, k: int | None) -> "GradedGroup":
        return cls(n, l, k)

    def __post_init__(self):
        degrees = [g.degree for g in self.groups]
        if any(d < 0 for d in degrees) or degrees != sorted(set(degrees)):
            raise DomainError("degrees must be distinct, sorted and nonnegative")

    def at(self, degree: int) -> DegreeGroup | None:
        for g in self.groups:
            if g.degree == degree:
                return g
        return None

    def __getitem__(self, degree: int) -> FinAbGroup:
        entry = self.at(degree)
        if entry is None:
            raise KeyError(degree)
        return entry.group

    def degrees(self) -> list[int]:
        return [g.degree for g in self.groups]

    def summands(self) -> Counter:
        """Multiset of ``(degree, p, e)`` over all listed torsion summands."""
        return Counter((g.degree, p, e) for g in self.groups for p, e in g.group.torsion)

    def merge(self, other: "GradedGroup") -> "GradedGroup":
        if (self.n, self.l) != (other.n, other.l):
            raise DomainError("cannot merge graded groups for different (n, l)")
        if self.k != other.k:
            raise DomainError(f"cannot merge graded groups for k={self.k} and k={other.k}")
        mine = {g.degree: g for g in self.groups}
        for g in other.groups:
            mine[g.degree] = _merge_degree(mine[g.degree], g) if g.degree in mine else g
        prov = " + ".join(x for x in (self.provenance, other.provenance) if x)
        return GradedGroup(self.n, self.l, self.k, tuple(mine[d] for d in sorted(mine)), prov)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "k": "inf" if self.k is None else self.k,
            "groups": [g.as_dict() for g in self.groups],
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: Mapping) -> "GradedGroup":
        k = data["k"]
        groups = tuple(
            DegreeGroup(
                g["degree"],
                FinAbGroup(g["free_rank"], tuple(tuple(t) for t in g["torsion"])),
                Status(g["status"]),
            )
            for g in data["groups"]
        )
        return cls(data["n"], data["l"], None if k == "inf" else int(k), groups)

    @classmethod
    def from_json(cls, text: str) -> "GradedGroup":
        return cls.from_dict(json.loads(text))


def _title(g: GradedGroup) -> str:
    k = "∞" if g.k is None else str(g.k)
    return f"H_*(P_{{{k},{g.n}}}^{g.l}; Z)"


def render(g: GradedGroup, fmt: str = "text") -> str:
    """Deterministic rendering as ``text``, ``md`` or ``json``."""
    if fmt == "json":
        return g.to_json()
    if fmt == "md":
        lines = [f"### {_title(g)}", "", "| degree | group | status |", "|---:|---|---|"]
        for e in g.groups:
            lines.append(f"| {e.degree} | {render_group(e.group, e.status)} | {e.status.value} |")
        return "\n".join(lines)
    if fmt != "text":
        raise DomainError(f"unknown format {fmt!r}")
    lines = [_title(g)]
    for e in g.groups:
        body = render_group(e.group, e.status)
        if body.startswith("⊇"):
            sep = " "
        else:
            sep = " = " if e.status is Status.COMPLETE else ": "
        lines.append(f"  H_{e.degree}{sep}{body}")
    return "\n".join(lines)


def merge_all(items: Iterable[GradedGroup]) -> GradedGroup:
    items = list(items)
    out = items[0]
    for g in items[1:]:
        out = out.merge(g)
    return out
