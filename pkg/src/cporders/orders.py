"""Subsets of [n] as bitmasks, comparative probability orders, and the
classic integer-utility constructions (binary/lexicographic weights, odd-value
insertion) used to build orders with many flippable pairs.

Atoms are labelled 1..n; atom i corresponds to bit i-1 of a mask.  Everything
is exact integer arithmetic; n is capped at 16 so a subset always fits a
machine word, while utilities themselves may be arbitrarily large.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DuplicateError, NotSortedError, TieError
from .sequences import q_value

MAX_ATOMS = 16


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_ATOMS:
        raise ValueError(f"atom count must be in 1..{MAX_ATOMS}, got {n}")


@dataclass(frozen=True, order=True)
class Subset:
    """A subset of [n] encoded as an n-bit mask (bit i-1 set <=> atom i in A)."""

    mask: int
    n: int

    def __post_init__(self):
        _check_n(self.n)
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} out of range for n={self.n}")

    @classmethod
    def from_atoms(cls, atoms: Iterable[int], n: int) -> "Subset":
        mask = 0
        for a in atoms:
            if not 1 <= a <= n:
                raise ValueError(f"atom {a} outside universe [1..{n}]")
            mask |= 1 << (a - 1)
        return cls(mask, n)

    @classmethod
    def empty(cls, n: int) -> "Subset":
        return cls(0, n)

    @property
    def atoms(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.mask >> i & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, atom: int) -> bool:
        return 1 <= atom <= self.n and bool(self.mask >> (atom - 1) & 1)

    def union(self, other: "Subset") -> "Subset":
        return Subset(self.mask | other.mask, self.n)

    def intersection(self, other: "Subset") -> "Subset":
        return Subset(self.mask & other.mask, self.n)

    def difference(self, other: "Subset") -> "Subset":
        return Subset(self.mask & ~other.mask, self.n)

    def complement(self) -> "Subset":
        return Subset(~self.mask & ((1 << self.n) - 1), self.n)

    def isdisjoint(self, other: "Subset") -> bool:
        return self.mask & other.mask == 0

    def issubset(self, other: "Subset") -> bool:
        return self.mask & ~other.mask == 0

    def to_text(self) -> str:
        """Comma-separated ascending atom list, '-' for the empty set."""
        return ",".join(map(str, self.atoms)) if self.mask else "-"

    @classmethod
    def from_text(cls, text: str, n: int) -> "Subset":
        text = text.strip()
        if text == "-":
            return cls(0, n)
        try:
            atoms = [int(tok) for tok in text.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse subset {text!r}") from None
        if len(set(atoms)) != len(atoms):
            raise ValueError(f"repeated atom in subset {text!r}")
        return cls.from_atoms(atoms, n)

    def __repr__(self) -> str:
        return f"Subset({{{self.to_text()}}}, n={self.n})"


def subset_sums(utilities: Sequence[int]) -> list[int]:
    """Utility of every subset of [n], indexed by mask.

    sums[m] = sum of utilities[i] over set bits i of m, built by peeling the
    lowest bit so each entry costs one addition.
    """
    n = len(utilities)
    _check_n(n)
    sums = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + utilities[low.bit_length() - 1]
    return sums


def check_utilities(utilities: Sequence[int]) -> tuple[int, ...]:
    u = tuple(utilities)
    _check_n(len(u))
    for value in u:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValueError(f"utilities must be integers, got {value!r}")
        if value <= 0:
            raise ValueError(f"utilities must be strictly positive, got {value}")
    return u


class ComparativeOrder:
    """A linear order on all 2^n subsets of [n], smallest first.

    Stored as both the ranked sequence of masks and its inverse (rank by
    mask).  Construction only checks the permutation/inverse structure;
    the semantic axioms are checked by :func:`validate_order`.  Instances
    are immutable and hashable.
    """

    __slots__ = ("n", "ranked", "position")

    def __init__(self, n: int, ranked: Sequence[int]):
        _check_n(n)
        full = 1 << n
        ranked = tuple(ranked)
        if len(ranked) != full or sorted(ranked) != list(range(full)):
            raise ValueError(f"ranked must be a permutation of 0..{full - 1}")
        position = [0] * full
        for rank, mask in enumerate(ranked):
            position[mask] = rank
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "ranked", ranked)
        object.__setattr__(self, "position", tuple(position))

    def __setattr__(self, name, value):
        raise AttributeError("ComparativeOrder is immutable")

    def rank(self, subset: "Subset | int") -> int:
        mask = subset.mask if isinstance(subset, Subset) else subset
        return self.position[mask]

    def subset_at(self, rank: int) -> Subset:
        return Subset(self.ranked[rank], self.n)

    def subsets(self) -> Iterator[Subset]:
        for mask in self.ranked:
            yield Subset(mask, self.n)

    def precedes(self, a: "Subset | int", b: "Subset | int") -> bool:
        return self.rank(a) < self.rank(b)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ComparativeOrder)
            and self.n == other.n
            and self.ranked == other.ranked
        )

    def __hash__(self) -> int:
        return hash((self.n, self.ranked))

    def __reduce__(self):
        return (ComparativeOrder, (self.n, self.ranked))

    def __repr__(self) -> str:
        if self.n <= 4:
            seq = " < ".join(s.to_text() for s in self.subsets())
            return f"ComparativeOrder(n={self.n}: {seq})"
        return f"ComparativeOrder(n={self.n}, 2^{self.n} subsets)"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the order axioms check.

    On failure exactly one of ``empty_set_witness`` (some nonempty subset
    ranked at or before the empty set) or ``triple`` is set; ``triple`` is
    (A, B, C) with C disjoint from A and B, A before B, but A|C not before
    B|C.
    """

    ok: bool
    empty_set_witness: Optional[Subset] = None
    triple: Optional[tuple[Subset, Subset, Subset]] = None

    def __bool__(self) -> bool:
        return self.ok

    @property
    def message(self) -> str:
        if self.ok:
            return "pass"
        if self.empty_set_witness is not None:
            return f"empty set is not strictly first (see {self.empty_set_witness})"
        a, b, c = self.triple
        return f"union consistency fails: {a} < {b} but not {a.union(c)} < {b.union(c)}"


def validate_order(order: ComparativeOrder) -> ValidationReport:
    """Check the two order axioms: empty set strictly first, and the
    union-consistency axiom A <= B <=> A|C <= B|C for C disjoint from A|B.

    Checking every disjoint pair (A, B) against every translate D of its
    complement covers all 4^n ordered subset pairs once, because a general
    pair (X, Y) decomposes as X = A|D, Y = B|D with A = X\\Y, B = Y\\X,
    D = X & Y.  Returns the first violation in mask order.
    """
    n = order.n
    full = 1 << n
    pos = order.position
    if pos[0] != 0:
        return ValidationReport(False, empty_set_witness=order.subset_at(0))
    for a in range(full):
        comp = ~a & (full - 1)
        # b runs over nonzero submasks of comp greater than a: each unordered
        # disjoint pair {a, b} is visited once.
        b = comp
        while b:
            if b > a:
                ref = pos[a] < pos[b]
                rest = comp & ~b
                d = rest
                while d:
                    if (pos[a | d] < pos[b | d]) != ref:
                        if ref:
                            lo, hi = a, b
                        else:
                            lo, hi = b, a
                        return ValidationReport(
                            False,
                            triple=(Subset(lo, n), Subset(hi, n), Subset(d, n)),
                        )
                    d = (d - 1) & rest
            b = (b - 1) & comp
    return ValidationReport(True)


def order_from_utilities(utilities: Sequence[int]) -> ComparativeOrder:
    """Rank all subsets by ascending exact utility sum.

    Raises TieError if two distinct subsets share a utility, since the
    order must be linear (no indifference).
    """
    u = check_utilities(utilities)
    n = len(u)
    sums = subset_sums(u)
    ranked = sorted(range(1 << n), key=sums.__getitem__)
    for k in range(len(ranked) - 1):
        if sums[ranked[k]] == sums[ranked[k + 1]]:
            raise TieError(Subset(ranked[k], n), Subset(ranked[k + 1], n), sums[ranked[k]])
    return ComparativeOrder(n, ranked)


def lexicographic_utilities(n: int) -> tuple[int, ...]:
    """Binary weights (1, 2, 4, ..., 2^(n-1)); the induced order is
    lexicographic and its subset utilities are exactly 0..2^n-1."""
    _check_n(n)
    return tuple(1 << i for i in range(n))


def insert_utility(utilities: Sequence[int], q: int) -> tuple[int, ...]:
    """Merge a new value q into a strictly increasing utility vector.

    q may be smaller than every entry or larger than every entry; it must
    not equal any entry.
    """
    u = check_utilities(utilities)
    if any(u[i] >= u[i + 1] for i in range(len(u) - 1)):
        raise NotSortedError(f"utilities must be strictly increasing: {u}")
    if not isinstance(q, int) or q <= 0:
        raise ValueError(f"inserted utility must be a positive integer, got {q!r}")
    if q in u:
        raise DuplicateError(f"inserted value {q} already present in {u}")
    j = sum(1 for value in u if value < q)
    return u[:j] + (q,) + u[j:]


def maclagan_utilities(n: int) -> tuple[int, ...]:
    """Doubled binary weights on n atoms with the odd value q_n inserted,
    q_n = (2^n + (-1)^(n+1)) / 3; the result has n+1 entries and q_n sits
    at position n-1.  This is the construction whose order attains the
    Fibonacci flippable-pair count."""
    if not 3 <= n <= MAX_ATOMS - 1:
        raise ValueError(f"base atom count must be in 3..{MAX_ATOMS - 1}, got {n}")
    doubled = tuple(2 << i for i in range(n))
    merged = insert_utility(doubled, q_value(n).q)
    assert merged.index(q_value(n).q) == n - 2  # 0-based; position n-1 among n+1
    return merged


# ---------------------------------------------------------------------------
# Order file format: line 1 is n, then 2^n lines of subsets, smallest first.

def order_to_lines(order: ComparativeOrder) -> list[str]:
    return [str(order.n)] + [s.to_text() for s in order.subsets()]


def order_from_lines(lines: Sequence[str]) -> ComparativeOrder:
    lines = [ln.strip() for ln in lines if ln.strip()]
    if not lines:
        raise ValueError("empty order description")
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError(f"first line must be the atom count, got {lines[0]!r}") from None
    _check_n(n)
    body = lines[1:]
    if len(body) != 1 << n:
        raise ValueError(f"expected {1 << n} subset lines for n={n}, got {len(body)}")
    ranked = [Subset.from_text(tok, n).mask for tok in body]
    if sorted(ranked) != list(range(1 << n)):
        raise ValueError("subset lines are not a permutation of all subsets")
    if ranked[0] != 0:
        raise ValueError("first-ranked subset must be the empty set")
    return ComparativeOrder(n, ranked)


def order_to_line(order: ComparativeOrder) -> str:
    """Single-line variant with ';' separators, used in census files."""
    return ";".join(order_to_lines(order))


def order_from_line(line: str) -> ComparativeOrder:
    return order_from_lines(line.split(";"))


def write_order(order: ComparativeOrder, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(order_to_lines(order)) + "\n")


def read_order(path) -> ComparativeOrder:
    with open(path, "r", encoding="utf-8") as fh:
        return order_from_lines(fh.readlines())
