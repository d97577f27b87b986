"""Exact representability: deciding whether a comparative probability order
is induced by an additive integer utility vector, with certificates either
way -- a reproducing utility vector, or (on request) a trading transform
witnessing the impossibility.

The decision procedure is exact rational feasibility of the consecutive-gap
system {u_i >= 1, u(next) - u(prev) >= 1 for all adjacent ranks}: the gaps
imply every other comparison by transitivity, strictness is modelled as
unit slack (sound up to scaling because the data is integral), and every
verdict is certified by re-checking the full order against the witness or
by exact infeasibility of a subsystem.  Large instances are solved with a
growing active set so the tableau stays near the number of atoms, not the
number of constraints.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, lcm
from typing import Optional, Sequence

from .errors import LengthMismatchError, NotNeighborsError, NotRepresentableError
from .flips import FlippablePair, empty_pair_flippable, flip, flippable_pairs
from .lp import solve_feasibility
from .orders import ComparativeOrder, Subset, order_from_utilities, subset_sums

_FULL_SYSTEM_LIMIT = 128  # constraint count below which no active-set loop
_ACTIVE_BATCH = 64


@dataclass(frozen=True)
class TradingTransform:
    """Sequences (A_1..A_k; B_1..B_k) where every atom appears equally often
    on both sides, i.e. the A's can be rearranged into the B's."""

    a_sets: tuple[Subset, ...]
    b_sets: tuple[Subset, ...]

    @property
    def length(self) -> int:
        return len(self.a_sets)

    def is_balanced(self) -> bool:
        if len(self.a_sets) != len(self.b_sets):
            return False
        counts = {}
        for s in self.a_sets:
            for atom in s.atoms:
                counts[atom] = counts.get(atom, 0) + 1
        for s in self.b_sets:
            for atom in s.atoms:
                counts[atom] = counts.get(atom, 0) - 1
        return all(v == 0 for v in counts.values())

    def to_json(self) -> dict:
        return {
            "As": [list(s.atoms) for s in self.a_sets],
            "Bs": [list(s.atoms) for s in self.b_sets],
        }


@dataclass(frozen=True)
class Certificate:
    """Representability verdict plus its proof object."""

    verdict: str  # "representable" | "nonrepresentable"
    utilities: Optional[tuple[int, ...]] = None
    transform: Optional[TradingTransform] = None
    lp_infeasible: bool = False

    @property
    def representable(self) -> bool:
        return self.verdict == "representable"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict}
        if self.utilities is not None:
            out["utilities"] = list(self.utilities)
        if self.transform is not None:
            out["transform"] = self.transform.to_json()
        if self.lp_infeasible:
            out["lp_infeasible"] = True
        return out


def _constraint(order: ComparativeOrder, k: int) -> tuple[tuple[int, ...], int]:
    """Row and right-hand side of gap constraint k in shifted coordinates.

    With u = 1 + x (x >= 0), u(T) - u(S) >= 1 becomes chi(S,T) . x >= rhs
    where rhs = 1 - (|T| - |S|).
    """
    s, t = order.ranked[k], order.ranked[k + 1]
    tb, sb = t & ~s, s & ~t
    coeffs = tuple((tb >> i & 1) - (sb >> i & 1) for i in range(order.n))
    return coeffs, 1 - t.bit_count() + s.bit_count()


def _violations(order: ComparativeOrder, utilities: Sequence[int]) -> list[tuple[int, int]]:
    """Constraint indices where the candidate fails strictness, worst first.

    Each entry is (deficit, k) with deficit = u(S_k) - u(S_{k+1}) >= 0.
    """
    sums = subset_sums(utilities)
    ranked = order.ranked
    out = []
    for k in range(len(ranked) - 1):
        gap = sums[ranked[k + 1]] - sums[ranked[k]]
        if gap <= 0:
            out.append((-gap, k))
    out.sort(key=lambda item: (-item[0], item[1]))
    return out


def _scale_to_integers(values) -> tuple[int, ...]:
    nums = [int(v.numerator) for v in values]
    dens = [int(v.denominator) for v in values]
    scale = lcm(*dens) if dens else 1
    ints = [num * (scale // den) for num, den in zip(nums, dens)]
    shrink = gcd(*ints) if any(ints) else 1
    return tuple(v // shrink for v in ints)


def is_representable(
    order: ComparativeOrder, hint: Optional[Sequence[int]] = None
) -> Certificate:
    """Decide representability; total for every structurally valid order.

    ``hint`` is an optional candidate integer utility vector tried before
    any pivoting (e.g. a perturbed witness for a flip neighbour); a hint
    never changes the verdict, only the route to it.
    """
    m = (1 << order.n) - 1
    if hint is not None:
        candidate = tuple(int(v) for v in hint)
        if (
            len(candidate) == order.n
            and all(v > 0 for v in candidate)
            and not _violations(order, candidate)
        ):
            assert order_from_utilities(candidate) == order
            return Certificate("representable", utilities=candidate)

    constraints = {}

    def get(k: int):
        if k not in constraints:
            constraints[k] = _constraint(order, k)
        return constraints[k]

    if m <= _FULL_SYSTEM_LIMIT:
        active = sorted(range(m))
    else:
        active = []
        seen = set()
    while True:
        if active:
            rows = [get(k)[0] for k in active]
            rhs = [get(k)[1] for k in active]
            x = solve_feasibility(rows, rhs)
            if x is None:
                # an infeasible subsystem certifies the full system
                return Certificate("nonrepresentable", lp_infeasible=True)
            utilities = _scale_to_integers([xi + 1 for xi in x])
        else:
            utilities = (1,) * order.n
        viol = _violations(order, utilities)
        if not viol:
            assert order_from_utilities(utilities) == order
            return Certificate("representable", utilities=utilities)
        if m <= _FULL_SYSTEM_LIMIT:
            raise AssertionError("full system solution violates a constraint")
        fresh = [k for _, k in viol if k not in seen][:_ACTIVE_BATCH]
        assert fresh, "active constraints cannot be violated by their own solution"
        seen.update(fresh)
        active.extend(fresh)
        active.sort()


def check_trading_transform(transform: TradingTransform, order: ComparativeOrder) -> bool:
    """Whether ``transform`` certifies nonrepresentability of ``order``:
    the balance condition holds and A_i strictly precedes B_i for every i."""
    if len(transform.a_sets) != len(transform.b_sets):
        raise LengthMismatchError(
            f"{len(transform.a_sets)} left sets vs {len(transform.b_sets)} right sets"
        )
    if transform.length == 0:
        return False
    for s in transform.a_sets + transform.b_sets:
        if s.n != order.n:
            raise ValueError("transform subsets live in a different universe")
    if not transform.is_balanced():
        return False
    return all(
        order.precedes(a, b) for a, b in zip(transform.a_sets, transform.b_sets)
    )


def find_trading_transform(
    order: ComparativeOrder, k_max: int = 4
) -> Optional[TradingTransform]:
    """Bounded search for a trading transform with every pair A_i < B_i.

    Only disjoint pairs are considered (intersections can always be removed
    from a transform), candidates are tried in mask order, and the last slot
    is filled by dictionary lookup.  A None result proves nothing: the
    search is bounded by ``k_max``.
    """
    if k_max < 2:
        return None
    n = order.n
    full = 1 << n
    pos = order.position
    vectors: list[tuple[int, ...]] = []
    pairs: list[tuple[int, int]] = []
    for a in range(full):
        comp = ~a & (full - 1)
        b = comp
        while b:
            if b > a:
                lo, hi = (a, b) if pos[a] < pos[b] else (b, a)
                vectors.append(
                    tuple((hi >> i & 1) - (lo >> i & 1) for i in range(n))
                )
                pairs.append((lo, hi))
            b = (b - 1) & comp
    index_of = {}
    for idx, vec in enumerate(vectors):
        index_of.setdefault(vec, idx)  # first (smallest) index is enough

    count = len(vectors)

    def search(start: int, slots: int, total: tuple[int, ...], chosen: list[int]):
        if slots == 1:
            need = tuple(-t for t in total)
            idx = index_of.get(need)
            # vectors are pairwise distinct, so an index below start means
            # the non-decreasing multiset convention already covered it
            if idx is None or idx < start:
                return None
            return chosen + [idx]
        for idx in range(start, count):
            vec = vectors[idx]
            new_total = tuple(t + v for t, v in zip(total, vec))
            if any(abs(t) > slots - 1 for t in new_total):
                continue
            found = search(idx, slots - 1, new_total, chosen + [idx])
            if found is not None:
                return found
        return None

    zero = (0,) * n
    for k in range(2, k_max + 1):
        found = search(0, k, zero, [])
        if found is not None:
            a_sets = tuple(Subset(pairs[i][0], n) for i in found)
            b_sets = tuple(Subset(pairs[i][1], n) for i in found)
            transform = TradingTransform(a_sets, b_sets)
            assert check_trading_transform(transform, order)
            return transform
    return None


def neighbor_witness_hint(
    utilities: Sequence[int], pair: FlippablePair
) -> Optional[tuple[int, ...]]:
    """Perturbed utilities representing the flip of a gap-1 flippable pair.

    If u represents the order and u(B) - u(A) = 1 for the flipped pair,
    then (2w-1)*u - 2*chi(A,B) with w = |A| + |B| represents the flipped
    order: the flipped translates land at gap -1 while every other adjacent
    gap stays >= 1.  Returns None when the gap precondition fails; callers
    must verify the hint regardless (is_representable does).
    """
    a, b = pair.a.mask, pair.b.mask
    w = (a | b).bit_count()
    if w < 2:
        return None
    u = tuple(utilities)
    gap = sum(u[i] for i in range(len(u)) if b >> i & 1) - sum(
        u[i] for i in range(len(u)) if a >> i & 1
    )
    if gap != 1:
        return None
    scale = 2 * w - 1
    out = []
    for i, value in enumerate(u):
        sign = (b >> i & 1) - (a >> i & 1)
        out.append(scale * value - 2 * sign)
    return tuple(out)


def friendly(order: ComparativeOrder, other: ComparativeOrder) -> bool:
    """Whether two flip-related orders agree on representability."""
    if order.n != other.n:
        raise NotNeighborsError("orders live on different atom counts")
    for fp in flippable_pairs(order):
        if fp.a.mask != 0 and flip(order, fp) == other:
            break
    else:
        raise NotNeighborsError("orders are not related by a single flip")
    return is_representable(order).representable == is_representable(other).representable


def facet_count(
    order: ComparativeOrder, cache: Optional[dict] = None
) -> int:
    """Number of facets of the order's region: representable flip neighbours,
    plus one when the (empty set, first subset) pair is flippable."""

    def decide(o: ComparativeOrder, hint=None) -> Certificate:
        if cache is not None and o in cache:
            return cache[o]
        cert = is_representable(o, hint=hint)
        if cache is not None:
            cache[o] = cert
        return cert

    base = decide(order)
    if not base.representable:
        raise NotRepresentableError("facet counting requires a representable order")
    count = 0
    for fp in flippable_pairs(order):
        if fp.a.mask == 0:
            continue
        hint = neighbor_witness_hint(base.utilities, fp)
        if decide(flip(order, fp), hint=hint).representable:
            count += 1
    if empty_pair_flippable(order):
        count += 1
    return count
