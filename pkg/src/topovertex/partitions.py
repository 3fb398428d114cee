"""Integer partitions, their combinatorial statistics, and enumeration.

Partitions are stored as explicit weakly decreasing tuples of positive
integers (the empty tuple is the empty partition), because every formula in
this package indexes parts directly by row number.
"""

from __future__ import annotations

from typing import Iterator


class Partition:
    """A weakly decreasing sequence of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts if int(p) != 0)
        if any(p < 0 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts}")
        self.parts = parts

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition({list(self.parts)})"

    def part(self, i: int) -> int:
        """Row length at 1-based index i, zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def length(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def kappa(self) -> int:
        """Second Casimir value: sum of p_i*(p_i - 2i + 1).  Always even."""
        return sum(p * (p - 2 * i + 1) for i, p in enumerate(self.parts, start=1))

    def conjugate(self) -> "Partition":
        """Transpose of the Young diagram (columns become rows)."""
        if not self.parts:
            return EMPTY
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def cells(self) -> Iterator[tuple[int, int]]:
        """All (row, column) cells of the diagram, 1-based."""
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def hooks(self) -> list[int]:
        """Hook lengths h(i,j) = p_i - i + tp(p)_j - j + 1 of all cells."""
        conj = self.conjugate()
        return [self.part(i) - i + conj.part(j) - j + 1 for i, j in self.cells()]

    def contains(self, other: "Partition") -> bool:
        """Inclusion of Young diagrams: every row at least as long."""
        return all(self.part(i) >= other.part(i)
                   for i in range(1, len(other.parts) + 1))

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data) -> "Partition":
        return cls(data)


EMPTY = Partition()


def statistics(lam: Partition) -> tuple[int, int, int]:
    """(length, weight, kappa) of a partition."""
    return (lam.length, lam.weight, lam.kappa)


def partitions_of_weight(n: int) -> Iterator[Partition]:
    """All partitions of n, in reverse lexicographic order."""
    if n < 0:
        return
    if n == 0:
        yield EMPTY
        return

    def gen(rest: int, largest: int, prefix: tuple[int, ...]):
        if rest == 0:
            yield Partition(prefix)
            return
        for p in range(min(rest, largest), 0, -1):
            yield from gen(rest - p, p, prefix + (p,))

    yield from gen(n, n, ())


def partitions_up_to(weight_max: int) -> Iterator[Partition]:
    """All partitions with weight <= weight_max, grouped by ascending weight."""
    for n in range(weight_max + 1):
        yield from partitions_of_weight(n)


def subpartitions(lam: Partition) -> Iterator[Partition]:
    """All partitions contained in the diagram of lam."""

    def gen(i: int, bound: int, prefix: tuple[int, ...]):
        yield Partition(prefix)
        if i > lam.length:
            return
        top = min(bound, lam.part(i))
        for p in range(top, 0, -1):
            yield from gen(i + 1, p, prefix + (p,))

    yield from gen(1, lam.part(1), ())


def intersect(lam: Partition, mu: Partition) -> Partition:
    """Row-wise minimum of two diagrams."""
    n = min(lam.length, mu.length)
    return Partition(tuple(min(lam.part(i), mu.part(i)) for i in range(1, n + 1)))
