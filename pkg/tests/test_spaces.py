"""Space kernel: open-set predicates, specialization, closure, interior,
irreducibility, open-set enumeration."""

import pytest

from cutspace.carriers import FiniteCarrier, leq
from cutspace.errors import EmptySet, UnsupportedCombination, ValidationError
from cutspace.gallery import antichain_carrier, chain_carrier, v_carrier
from cutspace.sets import (
    EMPTY,
    Convention,
    SetExpr,
    down_closure,
    se,
    se_cofinite,
    se_points,
    se_tail,
    whole,
)
from cutspace.spaces import (
    Alexandroff,
    Cofinite,
    ExplicitOpens,
    ScottTopology,
    UpperTopology,
    WeakScott,
    closure,
    enumerate_opens,
    interior,
    irreducible_sets,
    is_irreducible,
    is_open,
    make_space,
    specialization_leq,
)


def alex(carrier, convention=Convention.STANDARD):
    return make_space(carrier, Alexandroff(), convention)


class TestIsOpen:
    def test_omega_alexandroff_singleton(self, omega):
        assert is_open(alex(omega), se("a"))

    def test_omega_weakscott_singleton_false(self, omega):
        space = make_space(omega, WeakScott(), Convention.STANDARD)
        assert not is_open(space, se("a"))

    def test_omega_weakscott_singleton_empty_convention(self, omega):
        space = make_space(omega, WeakScott(), Convention.EMPTY)
        assert is_open(space, se("a"))

    def test_whole_carrier_open_everywhere(self, omega, topz, antichain, vee):
        cases = [
            alex(omega),
            make_space(omega, WeakScott()),
            make_space(omega, UpperTopology()),
            alex(topz),
            make_space(antichain, Cofinite()),
            alex(vee),
            make_space(vee, WeakScott()),
            make_space(vee, ScottTopology()),
            make_space(vee, UpperTopology()),
        ]
        for space in cases:
            assert is_open(space, whole(space.carrier))
            assert is_open(space, EMPTY)

    def test_topz_up_z_not_weakscott_open(self, topz):
        space = make_space(topz, WeakScott())
        assert not is_open(space, se("z", "top"))
        assert is_open(space, se_tail(0, ["z", "top"]))
        assert is_open(alex(topz), se("z", "top"))

    def test_omega_upper_topology(self, omega):
        space = make_space(omega, UpperTopology())
        assert is_open(space, se_tail(1))
        assert is_open(space, se_tail(0, ["a"]))
        assert not is_open(space, se("a"))
        assert not is_open(space, se_tail(0))  # leaves out a, which is above c0

    def test_cofinite(self, antichain):
        space = make_space(antichain, Cofinite())
        assert is_open(space, se_cofinite([1, 2]))
        assert not is_open(space, se(1, 2))
        assert is_open(space, EMPTY)


class TestSpecialization:
    def test_alexandroff_matches_order(self, vee, omega):
        for carrier in (vee,):
            space = alex(carrier)
            for x in carrier.elements:
                for y in carrier.elements:
                    assert specialization_leq(space, y, x) == leq(carrier, y, x)
        space = alex(omega)
        pts = list(omega.names) + [0, 1, 5]
        for x in pts:
            for y in pts:
                assert specialization_leq(space, y, x) == leq(omega, y, x)

    def test_cofinite_is_equality(self, antichain):
        space = make_space(antichain, Cofinite())
        assert specialization_leq(space, 3, 3)
        assert not specialization_leq(space, 3, 4)

    def test_explicit_space_specialization(self):
        carrier = chain_carrier("x", "y")
        topo = ExplicitOpens.of([frozenset(), frozenset({"y"}), frozenset({"x", "y"})])
        space = make_space(carrier, topo)
        assert specialization_leq(space, "x", "y")
        assert not specialization_leq(space, "y", "x")

    def test_explicit_order_mismatch_rejected(self):
        carrier = antichain_carrier("x", "y")
        topo = ExplicitOpens.of([frozenset(), frozenset({"y"}), frozenset({"x", "y"})])
        with pytest.raises(ValidationError):
            make_space(carrier, topo)

    def test_non_t0_rejected(self):
        carrier = antichain_carrier("x", "y")
        topo = ExplicitOpens.of([frozenset(), frozenset({"x", "y"})])
        with pytest.raises(ValidationError):
            make_space(carrier, topo)


class TestClosureInterior:
    def test_finite_alexandroff_closure_is_down(self, vee, diamond, chain3):
        import itertools

        for carrier in (vee, diamond, chain3):
            space = alex(carrier)
            for size in range(len(carrier.elements) + 1):
                for names in itertools.combinations(carrier.elements, size):
                    a = se_points(names)
                    assert closure(space, a) == down_closure(carrier, a)

    def test_interior_whole(self, vee, omega):
        assert interior(alex(vee), whole(vee)) == whole(vee)
        assert interior(alex(omega), whole(omega)) == whole(omega)

    def test_cofinite_finite_sets_closed(self, antichain):
        space = make_space(antichain, Cofinite())
        assert closure(space, se(1, 5)) == se(1, 5)
        assert interior(space, se(1, 5)) == EMPTY
        assert closure(space, se_cofinite([2])) == whole(antichain)

    def test_omega_alexandroff_interior(self, omega):
        space = alex(omega)
        assert interior(space, se("a")) == se("a")
        assert interior(space, se_points([0, 1])) == EMPTY
        assert interior(space, se_tail(2)) == se_tail(2)


class TestIrreducible:
    def test_singletons(self, vee, omega, antichain):
        assert is_irreducible(alex(vee), se("a"))
        assert is_irreducible(alex(omega), se("a"))
        assert is_irreducible(make_space(antichain, Cofinite()), se(4))

    def test_vee_pair_reducible(self, vee):
        assert not is_irreducible(alex(vee), se("a", "b"))

    def test_directed_sets_irreducible(self, diamond, omega):
        assert is_irreducible(alex(diamond), se("bot", "a", "top"))
        assert is_irreducible(alex(omega), se_tail(0))
        assert not is_irreducible(alex(omega), se_tail(0, ["a"]))

    def test_cofinite_rule(self, antichain):
        space = make_space(antichain, Cofinite())
        assert is_irreducible(space, se_cofinite([3]))
        assert not is_irreducible(space, se(1, 2))

    def test_empty_raises(self, vee):
        with pytest.raises(EmptySet):
            is_irreducible(alex(vee), EMPTY)

    def test_enumeration_vee(self, vee):
        got = irreducible_sets(alex(vee))
        expect = {
            se("bot"), se("a"), se("b"), se("bot", "a"), se("bot", "b"),
        }
        assert set(got) == expect

    def test_enumeration_chain(self, chain2):
        got = irreducible_sets(alex(chain2))
        assert set(got) == {se("x"), se("y"), se("x", "y")}

    def test_enumeration_single_point(self):
        carrier = FiniteCarrier(["x"], [])
        assert set(irreducible_sets(alex(carrier))) == {se("x")}


class TestEnumerateOpens:
    def test_discrete_pair(self):
        carrier = antichain_carrier("a", "b")
        got = enumerate_opens(alex(carrier))
        assert len(got) == 4

    def test_chain_alexandroff(self, chain2):
        got = enumerate_opens(alex(chain2))
        assert set(got) == {EMPTY, se("y"), se("x", "y")}

    def test_chain_upper_same(self, chain2):
        got = enumerate_opens(make_space(chain2, UpperTopology()))
        assert set(got) == {EMPTY, se("y"), se("x", "y")}

    def test_intrinsic_coincidence_small(self, vee, diamond, chain3):
        for carrier in (vee, diamond, chain3):
            families = [
                set(enumerate_opens(make_space(carrier, spec)))
                for spec in (Alexandroff(), UpperTopology(), WeakScott(), ScottTopology())
            ]
            assert families[0] == families[1] == families[2] == families[3]
