"""Exhaustive generation of all comparative probability orders on small
atom counts (with singletons in ascending position), flip-graph edges over
the census, and the summary statistics: representable counts, irreducible
histograms, facet extremes, connectivity.

The generator extends a ranked prefix subset by subset.  A subset may be
appended only when all its proper subsets are already placed (they must
rank below it) and when, for every placed T, the disjoint reduction
(T \\ S, S \\ T) of the forced comparison T < S is consistent with the
prefix.  Downward closure makes both sides of every reduction already
placed, so the check is complete: a full sequence passing it satisfies the
union-consistency axiom for every pair.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterator, Optional

from .cones import cone_from_order, irreducible_elements
from .errors import ResourceError
from .flips import empty_pair_flippable, flip, flippable_pairs
from .orders import ComparativeOrder, order_from_line, order_to_line, validate_order
from .represent import Certificate, is_representable

Edge = tuple[int, Optional[tuple[int, ...]]]  # neighbor index, relabeling or None


@dataclass
class OrderCensus:
    """All orders of P_n* (singletons ascending), with optional parallel
    representability flags, irreducible counts, and flip edges.

    An edge (j, perm) means flipping some pair of order i lands on order j
    after relabeling atoms by perm (None when no relabeling was needed);
    perm[old_atom - 1] = new_atom.
    """

    n: int
    orders: list[ComparativeOrder]
    representable: Optional[list[bool]] = None
    irr_counts: Optional[list[int]] = None
    edges: Optional[list[list[Edge]]] = None
    complete: bool = True
    certificates: dict = field(default_factory=dict, repr=False)

    def index_of(self, order: ComparativeOrder) -> Optional[int]:
        if not hasattr(self, "_index"):
            self._index = {o.ranked: i for i, o in enumerate(self.orders)}
        return self._index.get(order.ranked)


def _generate_orders(n: int, deadline: Optional[float]) -> list[tuple[int, ...]]:
    """Depth-first generation of ranked sequences of P_n*.

    Only the bottom half of each order is searched: the union-consistency
    axiom forces rank(S) + rank(complement of S) = 2^n - 1, so every
    placement at rank k simultaneously pins the complement at the mirror
    rank.  Inside the bottom half, admissibility is maintained
    incrementally: ``blocked[c]`` counts placed subsets whose forced
    comparisons against the frontier candidate c are violated.  Two checks
    run per (placed s, candidate c): the bottom-half reduction of s < c,
    and the cross reduction of c < complement(s), which is decidable
    whenever the complement of (c | s) is already placed.  Both predicates
    depend only on state that is identical when a placement is made and
    when it is unwound, so the mirrored decrements restore every count.
    The checks still do not see every cross-half interaction, so each
    completed candidate is validated exactly before being recorded; that
    final validator keeps the generator sound and complete.
    """
    full = 1 << n
    low = full - 1
    half = full >> 1
    position = [-1] * full
    position[0] = 0
    position[low] = full - 1
    ranked = [0]  # bottom half only; complements are implied
    # remaining[s]: proper nonempty submasks of s not yet placed bottom
    remaining = [(1 << mask.bit_count()) - 2 for mask in range(full)]
    frontier = {mask for mask in range(full) if mask and remaining[mask] == 0}
    blocked = {mask: 0 for mask in frontier}
    results: list[tuple[int, ...]] = []
    counter = 0

    def emit() -> None:
        sequence = ranked + [low ^ s for s in reversed(ranked)]
        singles = [position[1 << i] for i in range(n)]
        if singles != sorted(singles):
            return
        order = ComparativeOrder(n, sequence)
        if validate_order(order).ok:
            results.append(tuple(sequence))

    def walk() -> None:
        nonlocal counter
        pos = position
        if len(ranked) == half:
            emit()
            return
        counter += 1
        if deadline is not None and counter % 64 == 0 and time.monotonic() > deadline:
            raise ResourceError("enumeration budget exhausted", partial=results)
        for s in sorted(frontier):
            if blocked[s]:
                continue
            if not s & (s - 1) and s > 1 and pos[s >> 1] < 0:
                continue  # atom i may appear only after atom i-1
            sc = low ^ s
            if sc and not sc & (sc - 1):
                # the complement lands on top: singletons already on top
                # must all carry larger atom labels
                j = sc.bit_length() - 1
                if any(pos[1 << i] >= half for i in range(j)):
                    continue
            # --- place s at the next bottom rank, its complement on top
            pos[s] = len(ranked)
            pos[sc] = full - 1 - pos[s]
            ranked.append(s)
            frontier.discard(s)
            sc_blocked = blocked.pop(sc, None)
            if sc_blocked is not None:
                frontier.discard(sc)
            not_s = ~s
            for c in frontier:
                if s & c:
                    if s & ~c and pos[s & ~c] > pos[c & not_s]:
                        blocked[c] += 1
                    w = low ^ (c | s)
                    if pos[w] >= 0 and pos[c & s] > pos[w]:
                        blocked[c] += 1
            opened = []
            comp = not_s & low
            d = comp
            while d:
                sup = s | d
                remaining[sup] -= 1
                if not remaining[sup] and pos[sup] < 0:
                    opened.append(sup)
                d = (d - 1) & comp
            for sup in opened:
                frontier.add(sup)
                count = 0
                not_sup = ~sup
                for t in ranked:
                    if t & sup:
                        if t & not_sup and pos[t & not_sup] > pos[sup & ~t]:
                            count += 1
                        w = low ^ (sup | t)
                        if pos[w] >= 0 and pos[sup & t] > pos[w]:
                            count += 1
                blocked[sup] = count
            walk()
            # --- unplace (exact mirror: the pair checks are reproducible)
            for sup in opened:
                frontier.discard(sup)
                del blocked[sup]
            d = comp
            while d:
                remaining[s | d] += 1
                d = (d - 1) & comp
            for c in frontier:
                if s & c:
                    if s & ~c and pos[s & ~c] > pos[c & not_s]:
                        blocked[c] -= 1
                    w = low ^ (c | s)
                    if pos[w] >= 0 and pos[c & s] > pos[w]:
                        blocked[c] -= 1
            ranked.pop()
            pos[s] = -1
            pos[sc] = -1
            if sc_blocked is not None:
                frontier.add(sc)
                blocked[sc] = sc_blocked
            frontier.add(s)
            blocked[s] = 0  # it was admissible when placed and the prefix is restored

    walk()
    return results


def enumerate_orders(
    n: int,
    with_flags: bool = True,
    with_edges: bool = True,
    budget: Optional[float] = None,
    checkpoint_path=None,
    threads: int = 1,
) -> OrderCensus:
    """Generate P_n* exactly once each, then annotate.

    ``budget`` is wall-clock seconds for the whole call; on exhaustion a
    ResourceError is raised carrying the partial census built so far.
    ``checkpoint_path`` persists per-order flags as they are computed, so an
    interrupted run can resume without redoing representability work.
    """
    if not 1 <= n <= 6:
        raise ValueError(f"census enumeration supports 1 <= n <= 6, got {n}")
    deadline = time.monotonic() + budget if budget is not None else None
    try:
        masks = _generate_orders(n, deadline)
    except ResourceError as exc:
        done = [ComparativeOrder(n, ranked) for ranked in exc.partial or []]
        raise ResourceError(
            f"enumeration of n={n} exceeded its budget after {len(done)} orders",
            partial=OrderCensus(n, done, complete=False),
        ) from None
    orders = [ComparativeOrder(n, ranked) for ranked in masks]
    census = OrderCensus(n, orders)
    if with_flags:
        _annotate_flags(census, deadline, checkpoint_path, threads=threads)
    if with_edges:
        _annotate_edges(census)
    return census


def _flag_worker(order: ComparativeOrder) -> tuple[bool, int]:
    cert = is_representable(order)
    return cert.representable, len(irreducible_elements(cone_from_order(order)))


def _annotate_flags(census, deadline, checkpoint_path, threads: int = 1) -> None:
    known: dict[str, tuple[bool, int]] = {}
    if checkpoint_path is not None:
        try:
            with open(checkpoint_path, "r", encoding="utf-8") as fh:
                for raw in fh:
                    rec = json.loads(raw)
                    known[rec["order"]] = (rec["representable"], rec["irr"])
        except FileNotFoundError:
            pass
    total = len(census.orders)
    lines = [order_to_line(o) for o in census.orders]
    representable: list = [None] * total
    irr_counts: list = [None] * total
    pending = []
    for i, line in enumerate(lines):
        if line in known:
            representable[i], irr_counts[i] = known[line]
        else:
            pending.append(i)

    sink = open(checkpoint_path, "a", encoding="utf-8") if checkpoint_path else None
    done = total - len(pending)
    try:
        if threads > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(max_workers=threads) as pool:
                flagged = pool.map(
                    _flag_worker, (census.orders[i] for i in pending), chunksize=8
                )
                for i, (rep, irr) in zip(pending, flagged):
                    if deadline is not None and time.monotonic() > deadline:
                        pool.shutdown(wait=False, cancel_futures=True)
                        raise ResourceError(
                            f"flag budget exhausted after {done} of {total} orders",
                            partial=census,
                        )
                    representable[i], irr_counts[i] = rep, irr
                    done += 1
                    if sink is not None:
                        sink.write(
                            json.dumps(
                                {"order": lines[i], "representable": rep, "irr": irr},
                                sort_keys=True,
                            )
                            + "\n"
                        )
                        sink.flush()
        else:
            for i in pending:
                if deadline is not None and time.monotonic() > deadline:
                    raise ResourceError(
                        f"flag budget exhausted after {done} of {total} orders",
                        partial=census,
                    )
                order = census.orders[i]
                cert = is_representable(order)
                census.certificates[order] = cert
                rep, irr = cert.representable, len(
                    irreducible_elements(cone_from_order(order))
                )
                representable[i], irr_counts[i] = rep, irr
                done += 1
                if sink is not None:
                    sink.write(
                        json.dumps(
                            {"order": lines[i], "representable": rep, "irr": irr},
                            sort_keys=True,
                        )
                        + "\n"
                    )
                    sink.flush()
    except ResourceError:
        census.representable = representable
        census.irr_counts = irr_counts
        census.complete = False
        raise
    finally:
        if sink is not None:
            sink.close()
    census.representable = representable
    census.irr_counts = irr_counts


def singleton_relabeling(order: ComparativeOrder) -> tuple[int, ...]:
    """Permutation sending atoms to 1..n by ascending singleton rank;
    perm[old_atom - 1] = new_atom."""
    n = order.n
    by_rank = sorted(range(1, n + 1), key=lambda i: order.position[1 << (i - 1)])
    perm = [0] * n
    for new_label, old_atom in enumerate(by_rank, start=1):
        perm[old_atom - 1] = new_label
    return tuple(perm)


def relabel_order(order: ComparativeOrder, perm: tuple[int, ...]) -> ComparativeOrder:
    n = order.n
    shift = [perm[i] - 1 for i in range(n)]

    def apply(mask: int) -> int:
        out = 0
        for i in range(n):
            if mask >> i & 1:
                out |= 1 << shift[i]
        return out

    return ComparativeOrder(n, [apply(mask) for mask in order.ranked])


def _annotate_edges(census) -> None:
    index = {o.ranked: i for i, o in enumerate(census.orders)}
    edges: list[list[Edge]] = []
    identity = tuple(range(1, census.n + 1))
    for order in census.orders:
        row: list[Edge] = []
        for fp in flippable_pairs(order):
            if fp.a.mask == 0:
                continue
            neighbor = flip(order, fp)
            j = index.get(neighbor.ranked)
            if j is not None:
                row.append((j, None))
                continue
            perm = singleton_relabeling(neighbor)
            assert perm != identity
            j = index.get(relabel_order(neighbor, perm).ranked)
            if j is None:
                raise AssertionError("flip left the census even after relabeling")
            row.append((j, perm))
        edges.append(row)
    census.edges = edges


def brute_force_oracle(n: int) -> OrderCensus:
    """Independent census for n <= 3: filter every permutation of all 2^n
    subsets through the validity check and the ascending-singleton
    convention.  Permutations not starting at the empty set are exactly the
    empty-set-axiom failures, so they are skipped without building orders."""
    if not 1 <= n <= 3:
        raise ValueError("oracle is exhaustive over permutations only for n <= 3")
    full = 1 << n
    orders = []
    for perm in permutations(range(1, full)):
        ranked = (0,) + perm
        order = ComparativeOrder(n, ranked)
        if not validate_order(order).ok:
            continue
        singles = [order.position[1 << i] for i in range(n)]
        if singles != sorted(singles):
            continue
        orders.append(order)
    return OrderCensus(n, orders)


@dataclass(frozen=True)
class CensusStats:
    n: int
    order_count: int
    representable_count: int
    irr_histogram: dict[int, int]
    max_flippable: int  # m(n): max irreducible count = max flippable pairs
    max_facets: Optional[int]  # M(n)
    max_facets_method: str
    min_facets: Optional[int]  # over representable orders
    max_irr_all_friendly: bool
    full_graph_components: int
    representable_components: int

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "orders": self.order_count,
            "representable": self.representable_count,
            "irr_histogram": {str(k): v for k, v in sorted(self.irr_histogram.items())},
            "m": self.max_flippable,
            "M": self.max_facets,
            "M_method": self.max_facets_method,
            "min_facets": self.min_facets,
            "max_irr_all_friendly": self.max_irr_all_friendly,
            "full_graph_components": self.full_graph_components,
            "representable_components": self.representable_components,
        }


def _component_count(adjacency: dict[int, list[int]]) -> int:
    seen = set()
    components = 0
    for start in adjacency:
        if start in seen:
            continue
        components += 1
        stack = [start]
        seen.add(start)
        while stack:
            node = stack.pop()
            for nxt in adjacency[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return components


def facet_counts_from_census(census: OrderCensus) -> list[Optional[int]]:
    """Facet count per representable order, None elsewhere: representable
    flip-neighbours (read off the census edges) plus the empty-pair bonus."""
    if census.representable is None or census.edges is None:
        raise ValueError("census must carry representability flags and edges")
    out: list[Optional[int]] = []
    for i, order in enumerate(census.orders):
        if not census.representable[i]:
            out.append(None)
            continue
        count = sum(1 for j, _ in census.edges[i] if census.representable[j])
        if empty_pair_flippable(order):
            count += 1
        out.append(count)
    return out


def census_stats(census: OrderCensus) -> CensusStats:
    """Summary statistics; M(n) comes from full facet counting when all
    flags are present, otherwise from the max-flip shortcut (facets never
    exceed flippable pairs, and a max-flip order whose flips are all
    friendly attains the bound)."""
    if census.irr_counts is None or any(v is None for v in census.irr_counts):
        raise ValueError("census must carry irreducible counts")
    histogram: dict[int, int] = {}
    for irr in census.irr_counts:
        histogram[irr] = histogram.get(irr, 0) + 1
    m = max(census.irr_counts)

    flags_full = census.representable is not None and all(
        v is not None for v in census.representable
    )
    max_irr_friendly = _max_irr_all_friendly(census)
    if flags_full and census.edges is not None:
        facets = facet_counts_from_census(census)
        present = [f for f in facets if f is not None]
        max_facets = max(present)
        min_facets = min(present)
        method = "prop1-full"
        rep_count = sum(census.representable)
    else:
        max_facets = m if max_irr_friendly else None
        min_facets = None
        method = "max-flip-friendly" if max_irr_friendly else "unknown"
        rep_count = (
            sum(1 for v in census.representable if v)
            if census.representable is not None
            else 0
        )

    full_components = 0
    rep_components = 0
    if census.edges is not None:
        adjacency = {i: [j for j, _ in row] for i, row in enumerate(census.edges)}
        full_components = _component_count(adjacency)
        if flags_full:
            rep_nodes = [i for i, v in enumerate(census.representable) if v]
            rep_adj = {
                i: [j for j, _ in census.edges[i] if census.representable[j]]
                for i in rep_nodes
            }
            rep_components = _component_count(rep_adj)

    return CensusStats(
        n=census.n,
        order_count=len(census.orders),
        representable_count=rep_count,
        irr_histogram=histogram,
        max_flippable=m,
        max_facets=max_facets,
        max_facets_method=method,
        min_facets=min_facets,
        max_irr_all_friendly=max_irr_friendly,
        full_graph_components=full_components,
        representable_components=rep_components,
    )


def _max_irr_all_friendly(census: OrderCensus) -> bool:
    """Whether every maximum-flip order is representable with all flips
    friendly; decides M(n) = m(n) without facet counts for every order."""
    m = max(census.irr_counts)
    for i, order in enumerate(census.orders):
        if census.irr_counts[i] != m:
            continue
        cert = _decide(census, i)
        if not cert.representable:
            return False
        for fp in flippable_pairs(order):
            if fp.a.mask == 0:
                continue
            neighbor = flip(order, fp)
            if not is_representable(neighbor).representable:
                return False
    return True


def _decide(census: OrderCensus, i: int) -> Certificate:
    order = census.orders[i]
    if order in census.certificates:
        return census.certificates[order]
    cert = is_representable(order)
    census.certificates[order] = cert
    return cert


# ---------------------------------------------------------------------------
# Persistence: newline-delimited JSON, one order per line.


def write_census(census: OrderCensus, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for i, order in enumerate(census.orders):
            record = {"order": order_to_line(order)}
            if census.representable is not None:
                record["representable"] = census.representable[i]
            if census.irr_counts is not None:
                record["irr"] = census.irr_counts[i]
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def read_census(path) -> OrderCensus:
    orders = []
    rep: list = []
    irr: list = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            orders.append(order_from_line(record["order"]))
            rep.append(record.get("representable"))
            irr.append(record.get("irr"))
    if not orders:
        raise ValueError(f"no census records found in {path}")
    n = orders[0].n
    census = OrderCensus(
        n,
        orders,
        representable=rep if any(v is not None for v in rep) else None,
        irr_counts=irr if any(v is not None for v in irr) else None,
    )
    _annotate_edges(census)
    return census
