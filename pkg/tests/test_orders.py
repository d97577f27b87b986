"""Subset algebra, order construction and validation, utility constructions."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cporders.errors import DuplicateError, NotSortedError, TieError
from cporders.orders import (
    ComparativeOrder,
    Subset,
    insert_utility,
    lexicographic_utilities,
    maclagan_utilities,
    order_from_lines,
    order_from_line,
    order_from_utilities,
    order_to_line,
    order_to_lines,
    subset_sums,
    validate_order,
)

LEX3_RANKED = ["-", "1", "2", "1,2", "3", "1,3", "2,3", "1,2,3"]


def texts(order):
    return [s.to_text() for s in order.subsets()]


class TestSubset:
    def test_roundtrip_and_algebra(self):
        a = Subset.from_atoms([1, 3], 4)
        b = Subset.from_atoms([2, 3], 4)
        assert a.atoms == (1, 3)
        assert a.union(b).atoms == (1, 2, 3)
        assert a.intersection(b).atoms == (3,)
        assert a.difference(b).atoms == (1,)
        assert a.complement().atoms == (2, 4)
        assert a.intersection(a.complement()).mask == 0
        assert a.union(a.complement()).mask == (1 << 4) - 1
        assert not a.isdisjoint(b)
        assert a.isdisjoint(Subset.from_atoms([2, 4], 4))
        assert 3 in a and 2 not in a

    def test_text_forms(self):
        assert Subset(0, 3).to_text() == "-"
        assert Subset.from_text("1,3", 3).mask == 0b101
        assert Subset.from_text("-", 3).mask == 0
        with pytest.raises(ValueError):
            Subset.from_text("1,1", 3)
        with pytest.raises(ValueError):
            Subset.from_text("4", 3)

    def test_bounds(self):
        with pytest.raises(ValueError):
            Subset(8, 3)
        with pytest.raises(ValueError):
            Subset(0, 17)


class TestOrderFromUtilities:
    def test_lexicographic_n3(self):
        order = order_from_utilities((1, 2, 4))
        assert texts(order) == LEX3_RANKED
        assert validate_order(order).ok

    def test_tie_is_an_error(self):
        with pytest.raises(TieError) as exc:
            order_from_utilities((1, 1, 2))
        assert {exc.value.first.mask, exc.value.second.mask} == {0b001, 0b010}

    def test_inserted_small_weight_rank(self):
        # independent oracle: sort all 16 subset sums computed via combinations
        u = (2, 4, 8, 3)
        sums = {}
        for r in range(5):
            for combo in itertools.combinations(range(4), r):
                sums[sum(1 << i for i in combo)] = sum(u[i] for i in combo)
        expected = sorted(sums, key=sums.get)
        order = order_from_utilities(u)
        assert list(order.ranked) == expected
        assert order.rank(Subset.from_atoms([4], 4)) == 2

    def test_rejects_bad_utilities(self):
        with pytest.raises(ValueError):
            order_from_utilities((0, 1))
        with pytest.raises(ValueError):
            order_from_utilities((1.5, 2))
        with pytest.raises(ValueError):
            order_from_utilities(tuple(range(1, 18)))


class TestValidateOrder:
    def test_lexicographic_passes(self):
        assert validate_order(order_from_utilities((1, 2, 4))).ok

    def test_swap_fails_with_witness(self):
        lex = order_from_utilities((1, 2, 4))
        ranked = list(lex.ranked)
        i, j = lex.rank(0b010), lex.rank(0b011)  # {2} and {1,2}
        ranked[i], ranked[j] = ranked[j], ranked[i]
        report = validate_order(ComparativeOrder(3, ranked))
        assert not report.ok
        a, b, c = report.triple
        assert (a.mask, b.mask, c.mask) == (0b000, 0b001, 0b010)

    def test_empty_set_must_be_first(self):
        report = validate_order(ComparativeOrder(2, (1, 0, 2, 3)))
        assert not report.ok
        assert report.empty_set_witness is not None

    def test_positions_invert_ranks(self):
        order = order_from_utilities((3, 5, 9, 18))
        for k in range(16):
            assert order.rank(order.ranked[k]) == k


class TestLexicographicUtilities:
    def test_values(self):
        assert lexicographic_utilities(3) == (1, 2, 4)
        assert lexicographic_utilities(1) == (1,)

    def test_sums_cover_range(self):
        sums = subset_sums(lexicographic_utilities(5))
        assert sorted(sums) == list(range(32))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_binary_order_ranks_by_mask(self, n):
        order = order_from_utilities(lexicographic_utilities(n))
        assert list(order.ranked) == list(range(1 << n))


class TestInsertUtility:
    def test_examples(self):
        assert insert_utility((2, 4, 8), 3) == (2, 3, 4, 8)
        assert insert_utility((2, 4), 1) == (1, 2, 4)
        assert insert_utility((2, 4, 8, 16, 32), 11) == (2, 4, 8, 11, 16, 32)

    def test_append_at_top(self):
        assert insert_utility((1, 2), 9) == (1, 2, 9)

    def test_errors(self):
        with pytest.raises(DuplicateError):
            insert_utility((2, 4, 8), 4)
        with pytest.raises(NotSortedError):
            insert_utility((4, 2), 3)

    @given(
        st.lists(st.integers(1, 500), unique=True, min_size=1, max_size=8),
        st.integers(1, 501),
    )
    def test_matches_sorted_merge(self, entries, q):
        base = tuple(sorted(entries))
        if q in base:
            with pytest.raises(DuplicateError):
                insert_utility(base, q)
        else:
            assert insert_utility(base, q) == tuple(sorted(base + (q,)))


class TestMaclaganUtilities:
    def test_small_cases(self):
        assert maclagan_utilities(3) == (2, 3, 4, 8)
        assert maclagan_utilities(4) == (2, 4, 5, 8, 16)
        assert maclagan_utilities(5) == (2, 4, 8, 11, 16, 32)

    @pytest.mark.parametrize("n", range(3, 10))
    def test_orders_are_valid(self, n):
        order = order_from_utilities(maclagan_utilities(n))
        if n <= 6:
            assert validate_order(order).ok
        assert order.n == n + 1

    @pytest.mark.parametrize("n", range(3, 10))
    def test_consecutive_gaps_at_most_two(self, n):
        utilities = maclagan_utilities(n)
        sums = subset_sums(utilities)
        order = order_from_utilities(utilities)
        gaps = {
            sums[order.ranked[k + 1]] - sums[order.ranked[k]]
            for k in range(len(order.ranked) - 1)
        }
        assert gaps <= {1, 2}

    @pytest.mark.parametrize("n", range(3, 10))
    def test_inserted_atom_alternates(self, n):
        utilities = maclagan_utilities(n)
        order = order_from_utilities(utilities)
        sums = subset_sums(utilities)
        j_bit = 1 << (n - 2)
        start = order.rank(j_bit)
        stop = max(k for k, mask in enumerate(order.ranked) if not mask & j_bit)
        for k in range(start, stop):
            assert bool(order.ranked[k] & j_bit) != bool(order.ranked[k + 1] & j_bit)
            assert sums[order.ranked[k + 1]] - sums[order.ranked[k]] == 1


class TestOrderSerialization:
    def test_multiline_roundtrip(self):
        order = order_from_utilities((2, 4, 8, 3))
        lines = order_to_lines(order)
        assert order_from_lines(lines) == order

    def test_single_line_roundtrip(self):
        order = order_from_utilities((1, 2, 4))
        assert order_from_line(order_to_line(order)) == order

    def test_parser_rejects_broken_files(self):
        good = order_to_lines(order_from_utilities((1, 2)))
        with pytest.raises(ValueError):
            order_from_lines(good[:-1])  # not a permutation
        swapped = [good[0], good[2], good[1]] + good[3:]
        with pytest.raises(ValueError):
            order_from_lines(swapped)  # empty set not first
        with pytest.raises(ValueError):
            order_from_lines(["x"] + good[1:])


@settings(max_examples=60)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=5))
def test_any_utility_order_is_valid(entries):
    try:
        order = order_from_utilities(tuple(entries))
    except TieError:
        return
    assert validate_order(order).ok


@settings(max_examples=30)
@given(st.lists(st.integers(1, 40), min_size=1, max_size=5), st.integers(2, 5))
def test_scaling_leaves_order_unchanged(entries, factor):
    try:
        order = order_from_utilities(tuple(entries))
    except TieError:
        return
    scaled = order_from_utilities(tuple(v * factor for v in entries))
    assert scaled == order
