"""Independent brute-force oracles used only by the test suite.

These deliberately avoid the library's generating-function routes: Schur
values come from semi-standard tableau enumeration, infinite specializations
from long partial sums at a numeric point, plane partitions from direct
enumeration.  Slow and dumb on purpose.
"""

from fractions import Fraction

from topovertex import Partition, QRational


def semistandard_tableaux(lam: Partition, mu: Partition, n_vars: int):
    """Yield all SSYT of shape lam/mu with entries in 1..n_vars as row lists."""
    rows = lam.length

    def fill(i, prev_row, acc):
        if i == rows:
            yield acc
            return
        lo, hi = mu.part(i + 1), lam.part(i + 1)

        def fill_row(j, row):
            if j == hi:
                yield row
                return
            start = 1
            if j > lo and row:
                start = max(start, row[-1])  # weakly increasing along the row
            for val in range(start, n_vars + 1):
                if prev_row is not None and j < len(prev_row) and \
                        prev_row[j] is not None and val <= prev_row[j]:
                    continue  # strictly increasing down the column
                yield from fill_row(j + 1, row + [val])

        for row in fill_row(lo, []):
            padded = [None] * lo + row
            yield from fill(i + 1, padded, acc + [row])

    if not lam.contains(mu):
        return
    yield from fill(0, None, [])


def tableau_schur(lam: Partition, mu: Partition, values) -> QRational:
    """s_{lam/mu}(x_1..x_n) by summing monomials over semistandard tableaux."""
    values = list(values)
    total = QRational.from_int(0)
    for tab in semistandard_tableaux(lam, mu, len(values)):
        term = QRational.from_int(1)
        for row in tab:
            for entry in row:
                term = term * values[entry - 1]
        total = total + term
    return total


def plane_partition_counts(max_volume: int) -> list[int]:
    """Number of plane partitions of each volume 0..max_volume, by listing.

    A plane partition is built row by row; every row is a partition that
    fits componentwise under the previous row.
    """
    counts = [0] * (max_volume + 1)

    def rows_under(bound, max_weight):
        # all partitions (as tuples, possibly empty) with parts[j] <= bound[j]
        def rec(j, cap, acc, weight):
            yield acc
            if j >= len(bound):
                return
            top = min(bound[j], cap, max_weight - weight)
            for val in range(top, 0, -1):
                yield from rec(j + 1, val, acc + (val,), weight + val)

        yield from rec(0, max_volume, (), 0)

    def build(prev_row, used):
        counts[used] += 1
        for row in rows_under(prev_row, max_volume - used):
            if row:
                build(row, used + sum(row))

    counts[0] += 1  # the empty plane partition
    for first in rows_under((max_volume,) * max_volume, max_volume):
        if first:
            build(first, sum(first))
    return counts


def staircase_partial_sum(beta: Partition, power: int, v0: Fraction,
                          terms: int) -> Fraction:
    """Partial sum of sum_i (v0^(2 beta_i - 2i + 1))^power over i <= terms."""
    total = Fraction(0)
    for i in range(1, terms + 1):
        total += Fraction(v0) ** (power * (2 * beta.part(i) - 2 * i + 1))
    return total


def partial_h_e(values, k: int, kind: str):
    """h_k or e_k of an explicit numeric list, by direct monomial expansion."""
    n = len(values)

    def gen(start, depth, prod):
        if depth == k:
            yield prod
            return
        for i in range(start, n):
            nxt = i if kind == "h" else i + 1
            yield from gen(nxt, depth + 1, prod * values[i])

    if k == 0:
        return Fraction(1)
    return sum(gen(0, 0, Fraction(1)), Fraction(0))
