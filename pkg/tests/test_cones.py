"""Discrete cones, characteristic vectors, irreducible elements."""

import pytest

from cporders.cones import (
    DiscreteCone,
    characteristic_vector,
    cone_from_order,
    irreducible_elements,
    pack_ternary,
    ternary_from_text,
    ternary_to_text,
    unpack_ternary,
)
from cporders.errors import ConeAxiomError
from cporders.orders import (
    Subset,
    lexicographic_utilities,
    maclagan_utilities,
    order_from_utilities,
)


def brute_force_irreducibles(cone):
    """Independent reducibility scan: try every ordered member pair."""
    members = list(cone.members())
    member_set = set(members)
    out = set()
    for w in members:
        if all(e == 0 for e in w):
            continue
        reducible = False
        for u in members:
            if u == w or all(e == 0 for e in u):
                continue
            v = tuple(we - ue for we, ue in zip(w, u))
            if v == w or any(e not in (-1, 0, 1) for e in v):
                continue
            if v in member_set:
                reducible = True
                break
        if not reducible:
            out.add(w)
    return out


class TestCharacteristicVector:
    def test_basis_case(self):
        assert characteristic_vector(Subset(0, 3), Subset.from_atoms([1], 3)) == (1, 0, 0)

    def test_disjoint_pair(self):
        a = Subset.from_atoms([1], 3)
        b = Subset.from_atoms([2], 3)
        assert characteristic_vector(a, b) == (-1, 1, 0)

    def test_two_against_one(self):
        a = Subset.from_atoms([1, 2], 3)
        b = Subset.from_atoms([3], 3)
        assert characteristic_vector(a, b) == (-1, -1, 1)

    def test_overlap_cancels(self):
        a = Subset.from_atoms([1, 2], 3)
        b = Subset.from_atoms([2, 3], 3)
        assert characteristic_vector(a, b) == (-1, 0, 1)

    def test_antisymmetry(self):
        a = Subset.from_atoms([1, 4], 4)
        b = Subset.from_atoms([2], 4)
        forward = characteristic_vector(a, b)
        assert characteristic_vector(b, a) == tuple(-e for e in forward)


class TestPacking:
    @pytest.mark.parametrize(
        "vec", [(1, 0, -1), (0, 0, 0), (-1, -1, -1), (1, 1, 1), (0, 1, -1)]
    )
    def test_roundtrip(self, vec):
        assert unpack_ternary(pack_ternary(vec, 3), 3) == vec

    def test_text(self):
        assert ternary_to_text((-1, 1, 0)) == "-+0"
        assert ternary_from_text("-+0") == (-1, 1, 0)
        with pytest.raises(ValueError):
            ternary_from_text("-x0")


class TestConeFromOrder:
    def test_lexicographic_n2(self):
        cone = cone_from_order(order_from_utilities((1, 2)))
        expected = {(0, 0), (1, 0), (0, 1), (-1, 1), (1, 1)}
        assert set(cone.members()) == expected
        assert len(cone) == 5

    @pytest.mark.parametrize("utilities", [(1, 2, 4), (2, 3, 4), (5, 3, 9)])
    def test_size_n3(self, utilities):
        assert len(cone_from_order(order_from_utilities(utilities))) == 14

    @pytest.mark.parametrize("n", range(1, 7))
    def test_size_formula_and_axioms(self, n):
        cone = cone_from_order(order_from_utilities(lexicographic_utilities(n)))
        assert len(cone) == (3**n - 1) // 2 + 1
        cone.check_axioms(exhaustive=True)

    def test_rejects_non_cone(self):
        with pytest.raises(ConeAxiomError):
            DiscreteCone(2, [0])  # wrong size
        # right size but missing a basis vector
        bad = [0, pack_ternary((-1, 0), 2), pack_ternary((0, 1), 2), pack_ternary((1, 1), 2), pack_ternary((-1, 1), 2)]
        with pytest.raises(ConeAxiomError):
            DiscreteCone(2, bad)

    def test_serialization(self):
        cone = cone_from_order(order_from_utilities((1, 2)))
        assert cone.to_text() == sorted(["00", "+0", "0+", "-+", "++"])


class TestIrreducibles:
    def test_lexicographic_n3_exact(self):
        cone = cone_from_order(order_from_utilities((1, 2, 4)))
        irr = irreducible_elements(cone)
        assert irr == {(1, 0, 0), (-1, 1, 0), (-1, -1, 1)}

    def test_construction_five_atoms(self):
        cone = cone_from_order(order_from_utilities(maclagan_utilities(4)))
        assert len(irreducible_elements(cone)) == 8

    def test_zero_never_irreducible(self):
        cone = cone_from_order(order_from_utilities((1, 2, 4)))
        n3_zero = (0, 0, 0)
        assert n3_zero not in irreducible_elements(cone)

    @pytest.mark.parametrize(
        "utilities", [(1, 2), (1, 2, 4), (2, 3, 4), (1, 2, 4, 8), (3, 5, 14, 7)]
    )
    def test_matches_brute_force(self, utilities):
        cone = cone_from_order(order_from_utilities(utilities))
        assert irreducible_elements(cone) == brute_force_irreducibles(cone)

    def test_basis_vector_can_be_irreducible(self):
        cone = cone_from_order(order_from_utilities((1, 2, 4)))
        assert (1, 0, 0) in irreducible_elements(cone)
