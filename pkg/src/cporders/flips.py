"""Critical and flippable pairs of a comparative probability order, and the
flip operation that reverses one flippable comparison family to produce a
neighbouring order in the flip graph.

A disjoint pair (A, B) of consecutive subsets is critical; it is flippable
when every translate (A|D, B|D) by D inside the complement of A|B is also
consecutive.  Flipping swaps all 2^r such translates at once (r the size of
the complement) and always yields another valid order, provided A is
nonempty.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EmptySideError
from .orders import ComparativeOrder, Subset, validate_order


@dataclass(frozen=True)
class CriticalPair:
    """Disjoint subsets occupying consecutive ranks, smaller side first."""

    a: Subset
    b: Subset
    rank_a: int

    @property
    def rank_b(self) -> int:
        return self.rank_a + 1


@dataclass(frozen=True)
class FlippablePair:
    """A critical pair all of whose translates are adjacent.

    ``adjacencies`` is 2^r with r the complement size of A|B: the number of
    consecutive-rank slots this pair occupies in the order.
    """

    pair: CriticalPair
    adjacencies: int

    @property
    def a(self) -> Subset:
        return self.pair.a

    @property
    def b(self) -> Subset:
        return self.pair.b

    def to_json(self) -> dict:
        return {
            "A": list(self.a.atoms),
            "B": list(self.b.atoms),
            "rank": self.pair.rank_a,
            "adjacencies": self.adjacencies,
        }


def critical_pairs(order: ComparativeOrder) -> list[CriticalPair]:
    """All disjoint consecutive pairs, in rank order."""
    n = order.n
    ranked = order.ranked
    out = []
    for k in range(len(ranked) - 1):
        if ranked[k] & ranked[k + 1] == 0:
            out.append(CriticalPair(Subset(ranked[k], n), Subset(ranked[k + 1], n), k))
    return out


def is_flippable(order: ComparativeOrder, pair: CriticalPair) -> bool:
    """Every translate (A|D, B|D) with D disjoint from A|B must be adjacent."""
    pos = order.position
    a, b = pair.a.mask, pair.b.mask
    comp = ~(a | b) & ((1 << order.n) - 1)
    d = comp
    while d:
        if pos[b | d] != pos[a | d] + 1:
            return False
        d = (d - 1) & comp
    return pos[b] == pos[a] + 1


def flippable_pairs(order: ComparativeOrder) -> list[FlippablePair]:
    full = (1 << order.n) - 1
    out = []
    for pair in critical_pairs(order):
        if is_flippable(order, pair):
            r = (full & ~(pair.a.mask | pair.b.mask)).bit_count()
            out.append(FlippablePair(pair, 1 << r))
    return out


def flip(order: ComparativeOrder, pair: "FlippablePair | CriticalPair") -> ComparativeOrder:
    """Reverse every comparison (A|D, B|D) of a flippable pair with A nonempty.

    The result is again a comparative probability order; flipping the image
    pair back recovers the input.
    """
    if isinstance(pair, FlippablePair):
        pair = pair.pair
    if pair.a.mask == 0:
        raise EmptySideError(
            f"cannot flip ({pair.a.to_text()}, {pair.b.to_text()}): "
            "the empty set must stay strictly first"
        )
    if not is_flippable(order, pair):
        raise ValueError(f"pair ({pair.a}, {pair.b}) is not flippable for this order")
    pos = order.position
    a, b = pair.a.mask, pair.b.mask
    comp = ~(a | b) & ((1 << order.n) - 1)
    ranked = list(order.ranked)
    d = comp
    while True:
        k = pos[a | d]
        ranked[k], ranked[k + 1] = ranked[k + 1], ranked[k]
        if d == 0:
            break
        d = (d - 1) & comp
    result = ComparativeOrder(order.n, ranked)
    if __debug__ and order.n <= 5:
        assert validate_order(result).ok
    return result


def neighbors(order: ComparativeOrder) -> list[ComparativeOrder]:
    """One flipped order per flippable pair with nonempty smaller side."""
    return [flip(order, fp) for fp in flippable_pairs(order) if fp.a.mask != 0]


def empty_pair_flippable(order: ComparativeOrder) -> bool:
    """Whether the pair (empty set, first nonempty subset) is flippable."""
    first = critical_pairs(order)[0]
    assert first.a.mask == 0 and first.rank_a == 0
    return is_flippable(order, first)
