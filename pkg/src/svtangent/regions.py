"""Exact search over boxed lattice regions cut out by coordinate intervals,
balance-functional intervals, group membership and a total-sum parity.

Every scan the facet criterion needs (difference regions of localized
semigroups, their extremal elements) reduces to regions of this shape,
because the group and the balance functionals only see block sums.  The
solver therefore enumerates block-sum tuples, with per-coordinate interval
constraints folded into per-block sum ranges; realizations are reconstructed
greedily.  All arithmetic is exact; the enumeration is complete within the
box, so emptiness answers are certificates for the box.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .lattice import Vec
from .model import GROUP_BALANCED, GROUP_EVEN, GROUP_FULL, GROUP_ZERO, SVParams


class EngineOverflow(Exception):
    """The block-sum search space exceeds the configured budget."""



@dataclass
class Region:
    """Conjunction of constraints on x in Z^n:

    - lo[p] <= x[p] <= hi[p] per coordinate position,
    - balance_lo[i] <= total(x) - 2 * block_sum_i(x) <= balance_hi[i],
    - membership in the group named by group_tag,
    - total(x) == total_parity mod 2 when total_parity is set.
    """

    params: SVParams
    lo: list[int]
    hi: list[int]
    balance_lo: dict[int, int] = field(default_factory=dict)
    balance_hi: dict[int, int] = field(default_factory=dict)
    group_tag: str = GROUP_FULL
    total_parity: Optional[int] = None
    infeasible: bool = False

    def clamp_lo(self, pos: int, value: int) -> None:
        self.lo[pos] = max(self.lo[pos], value)

    def clamp_hi(self, pos: int, value: int) -> None:
        self.hi[pos] = min(self.hi[pos], value)

    def clamp_balance_lo(self, i: int, value: int) -> None:
        self.balance_lo[i] = max(self.balance_lo.get(i, value), value)

    def clamp_balance_hi(self, i: int, value: int) -> None:
        self.balance_hi[i] = min(self.balance_hi.get(i, value), value)

    def mark_infeasible(self) -> None:
        self.infeasible = True

    # -- block-sum search -------------------------------------------------

    def _block_ranges(self) -> Optional[list[range]]:
        if self.infeasible:
            return None
        p = self.params
        ranges = []
        for i in range(1, p.k + 1):
            positions = list(p.block_positions(i))
            if any(self.lo[q] > self.hi[q] for q in positions):
                return None
            lo = sum(self.lo[q] for q in positions)
            hi = sum(self.hi[q] for q in positions)
            ranges.append(range(lo, hi + 1))
        return ranges

    def _sum_tuple_ok(self, s: tuple[int, ...]) -> bool:
        total = sum(s)
        if self.total_parity is not None and total % 2 != self.total_parity:
            return False
        if self.group_tag == GROUP_EVEN and total % 2 != 0:
            return False
        if self.group_tag == GROUP_BALANCED and s[0] != s[1]:
            return False
        for i, lo in self.balance_lo.items():
            if total - 2 * s[i - 1] < lo:
                return False
        for i, hi in self.balance_hi.items():
            if total - 2 * s[i - 1] > hi:
                return False
        return True

    def _feasible_sums(self, budget: int) -> Iterator[tuple[int, ...]]:
        ranges = self._block_ranges()
        if ranges is None:
            return
        size = 1
        for r in ranges:
            size *= len(r)
            if size > budget:
                raise EngineOverflow(f"block-sum search space over budget ({size})")
        if self.group_tag == GROUP_ZERO:
            zero = tuple(0 for _ in ranges)
            if all(0 in r for r in ranges) and self._sum_tuple_ok(zero):
                if all(self.lo[q] <= 0 <= self.hi[q] for q in range(self.params.n)):
                    yield zero
            return
        for s in itertools.product(*ranges):
            if self._sum_tuple_ok(s):
                yield s

    # -- realizations ------------------------------------------------------

    def _realize_block(self, i: int, target: int) -> Optional[list[int]]:
        """Greedy composition of `target` over block i inside the bounds."""
        positions = list(self.params.block_positions(i))
        values = [self.lo[q] for q in positions]
        slack = target - sum(values)
        if slack < 0:
            return None
        for idx, q in enumerate(positions):
            room = self.hi[q] - self.lo[q]
            take = min(room, slack)
            values[idx] += take
            slack -= take
            if slack == 0:
                break
        if slack != 0:
            return None
        return values

    def _realize(self, s: tuple[int, ...]) -> Optional[Vec]:
        out: list[int] = []
        for i in range(1, self.params.k + 1):
            block = self._realize_block(i, s[i - 1])
            if block is None:
                return None
            out.extend(block)
        return tuple(out)

    def _iter_block(self, i: int, target: int) -> Iterator[tuple[int, ...]]:
        positions = list(self.params.block_positions(i))

        def rec(idx: int, remaining: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
            if idx == len(positions):
                if remaining == 0:
                    yield tuple(acc)
                return
            q = positions[idx]
            rest_lo = sum(self.lo[t] for t in positions[idx + 1:])
            rest_hi = sum(self.hi[t] for t in positions[idx + 1:])
            lo = max(self.lo[q], remaining - rest_hi)
            hi = min(self.hi[q], remaining - rest_lo)
            for v in range(lo, hi + 1):
                acc.append(v)
                yield from rec(idx + 1, remaining - v, acc)
                acc.pop()

        yield from rec(0, target, [])

    def _iter_points_of_sum(self, s: tuple[int, ...]) -> Iterator[Vec]:
        block_iters = [list(self._iter_block(i, s[i - 1])) for i in range(1, self.params.k + 1)]
        for combo in itertools.product(*block_iters):
            yield tuple(itertools.chain.from_iterable(combo))

    def _count_block(self, i: int, target: int) -> int:
        positions = list(self.params.block_positions(i))
        counts = {0: 1}
        for q in positions:
            nxt: dict[int, int] = {}
            for acc, ways in counts.items():
                for v in range(self.lo[q], self.hi[q] + 1):
                    nxt[acc + v] = nxt.get(acc + v, 0) + ways
            counts = nxt
        return counts.get(target, 0)

    # -- public queries ----------------------------------------------------

    def find_point(self, budget: int = 5_000_000) -> Optional[Vec]:
        for s in self._feasible_sums(budget):
            point = self._realize(s)
            if point is not None:
                return point
        return None

    def enumerate_points(self, limit: int, budget: int = 5_000_000) -> list[Vec]:
        out: list[Vec] = []
        for s in sorted(self._feasible_sums(budget)):
            for p in self._iter_points_of_sum(s):
                out.append(p)
                if len(out) >= limit:
                    return out
        return out

    def max_total(
        self, point_limit: int = 4, budget: int = 5_000_000
    ) -> tuple[Optional[int], int, list[Vec]]:
        """(max total sum, number of points at the max capped at point_limit+1,
        up to point_limit of those points)."""
        best: Optional[int] = None
        sums = []
        for s in self._feasible_sums(budget):
            if self._realize(s) is None:
                continue
            t = sum(s)
            if best is None or t > best:
                best = t
            sums.append(s)
        if best is None:
            return None, 0, []
        count = 0
        points: list[Vec] = []
        for s in sorted(sums):
            if sum(s) != best:
                continue
            block_counts = [
                self._count_block(i, s[i - 1]) for i in range(1, self.params.k + 1)
            ]
            ways = 1
            for c in block_counts:
                ways *= c
            count += ways
            for p in self._iter_points_of_sum(s):
                if len(points) < point_limit:
                    points.append(p)
                else:
                    break
            if count > point_limit:
                count = point_limit + 1
                break
        return best, count, points

    def max_coordinate(self, pos: int, budget: int = 5_000_000) -> Optional[int]:
        """Largest value of x[pos] over the region, or None if empty."""
        block_i = next(
            i
            for i in range(1, self.params.k + 1)
            if pos in self.params.block_positions(i)
        )
        best: Optional[int] = None
        for s in self._feasible_sums(budget):
            if self._realize(s) is None:
                continue
            others_lo = sum(
                self.lo[q] for q in self.params.block_positions(block_i) if q != pos
            )
            cand = min(self.hi[pos], s[block_i - 1] - others_lo)
            if cand < self.lo[pos]:
                continue
            if best is None or cand > best:
                best = cand
        return best
