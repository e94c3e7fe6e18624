"""Cyclic orders of H_j(P_{k,2}^l; Z) for 2l+1 <= j <= 2l+5.

Rows are indexed by k in pairs (2l+2, 2l+3), (2l+4, 2l+5), ... up to the
stable row k >= 2l+10.  Orders use the shorthand ``a/b = a / gcd(a, b)``;
``math.inf`` stands for Z and 1 for the trivial group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BracketError, DomainError
from .graded import FinAbGroup, GradedGroup, Status

INF = math.inf

BRACKET_LABELS = (
    "2l+2, 2l+3",
    "2l+4, 2l+5",
    "2l+6, 2l+7",
    "2l+8, 2l+9",
    ">= 2l+10",
)


def a_over_b(a: int, b: int) -> int:
    """``a / gcd(a, b)``.

    >>> a_over_b(6, 2)
    3
    """
    if a < 1 or b < 1:
        raise DomainError(f"a/b needs positive integers, got {a}/{b}")
    return a // math.gcd(a, b)


def bracket_index(l: int, k: int) -> int:
    if k < 2 * l + 2:
        raise BracketError(f"k={k} < 2l+2={2 * l + 2}: the space is contractible")
    return min((k - 2 * l - 2) // 2, 4)


def bracket_start(l: int, index: int) -> int:
    """Smallest k in the given row."""
    return 2 * l + 2 + 2 * index


@dataclass(frozen=True)
class ArnoldRow:
    l: int
    bracket: int
    orders: tuple[float | int, ...]

    @property
    def label(self) -> str:
        return BRACKET_LABELS[self.bracket]

    @property
    def degrees(self) -> range:
        return range(2 * self.l + 1, 2 * self.l + 6)

    def groups(self) -> dict[int, FinAbGroup]:
        return {d: FinAbGroup.cyclic(o) for d, o in zip(self.degrees, self.orders)}


def _row(l: int, index: int) -> tuple:
    two = a_over_b(2, l + 1)
    half = a_over_b(l + 3, 2)
    rows = (
        (INF, 1, 1, 1, 1),
        (INF, l + 2, 1, 1, 1),
        (INF, l + 2, two, half, 1),
        (INF, l + 2, two, half * two, a_over_b(3, l + 1)),
        (INF, l + 2, two, half * two, a_over_b(6, l + 1)),
    )
    return rows[index]


def table_orders(l: int, k: int) -> ArnoldRow:
    """Orders of H_j for j = 2l+1..2l+5 in the row containing ``k``.

    >>> table_orders(1, 8).orders
    (inf, 3, 1, 2, 1)
    """
    if not isinstance(l, int) or l < 1:
        raise DomainError(f"l must be a positive integer, got {l!r}")
    index = bracket_index(l, k)
    return ArnoldRow(l, index, _row(l, index))


def all_rows(l: int) -> list[ArnoldRow]:
    return [table_orders(l, bracket_start(l, i)) for i in range(5)]


def table_graded(l: int, k: int, max_degree: int | None = None) -> GradedGroup:
    """The table row for ``k`` as complete groups in degrees 2l+1..2l+5."""
    row = table_orders(l, k)
    entries = {
        d: (g, Status.COMPLETE)
        for d, g in row.groups().items()
        if max_degree is None or d <= max_degree
    }
    return GradedGroup.from_entries(2, l, k, entries, provenance="low-degree table")


def format_order(order) -> str:
    if order == INF:
        return "∞"
    return "0" if order == 1 else str(order)
