"""Order kernel: carriers, set expressions, closures, bounds, cuts,
directedness and Rudin witnesses."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutspace.carriers import (
    ABOVE_ALL,
    ABOVE_PREFIX,
    BELOW_INDEX,
    Attachment,
    FiniteCarrier,
    OmegaGlued,
    leq,
)
from cutspace.errors import UnknownElement, ValidationError
from cutspace.sets import (
    EMPTY,
    Convention,
    SetExpr,
    complement,
    cut,
    difference,
    down_closure,
    inter,
    is_directed,
    is_directed_family,
    lower_bounds,
    member,
    rudin_witness,
    se,
    se_cofinite,
    se_points,
    se_tail,
    subset,
    union,
    up_closure,
    upper_bounds,
    whole,
)


class TestLeq:
    def test_chain_point_below_top(self, topz):
        assert leq(topz, 3, "top")

    def test_reflexive(self, topz, omega, chain2):
        assert leq(topz, "z", "z")
        assert leq(omega, 5, 5)
        assert leq(chain2, "x", "x")

    def test_c1_not_below_a(self, omega):
        # cross-checked against the explicit closure of truncate(5)
        assert not leq(omega, 1, "a")
        trunc = omega.truncate(5)
        assert not trunc.leq("c1", "a")
        assert trunc.leq("c0", "a")

    def test_unknown_element(self, chain2):
        with pytest.raises(UnknownElement):
            leq(chain2, "x", "nope")

    def test_glued_transitivity_through_chain(self):
        # f <= c_2 and g above the c_0..c_4 prefix forces f <= g
        fin = FiniteCarrier(["f", "g"], [])
        carrier = OmegaGlued(
            fin, {"f": Attachment(BELOW_INDEX, 2), "g": Attachment(ABOVE_PREFIX, 4)}
        )
        assert leq(carrier, "f", "g")

    def test_finite_cycle_rejected(self):
        with pytest.raises(ValidationError):
            FiniteCarrier(["f", "g"], [("f", "g"), ("g", "f")])

    def test_glued_chain_cycle_rejected(self):
        # f above the c_0..c_3 prefix while g (above f) sits below the chain
        # from c_1 on squeezes f = c_i for 1 <= i <= 3
        fin = FiniteCarrier(["f", "g"], [("f", "g")])
        with pytest.raises(ValidationError):
            OmegaGlued(
                fin,
                {"f": Attachment(ABOVE_PREFIX, 3), "g": Attachment(BELOW_INDEX, 1)},
            )

    def test_glued_above_all_below_rejected(self):
        fin = FiniteCarrier(["f", "g"], [("f", "g")])
        with pytest.raises(ValidationError):
            OmegaGlued(
                fin,
                {"f": Attachment(ABOVE_ALL), "g": Attachment(BELOW_INDEX, 4)},
            )

    def test_reserved_chain_names_rejected(self):
        with pytest.raises(ValidationError):
            OmegaGlued(FiniteCarrier(["c0"], []), {})


class TestClosures:
    def test_up_closure_z_cn(self, topz):
        for n in (0, 1, 4):
            got = up_closure(topz, se("z", n))
            assert got == se_tail(n, ["z", "top"])

    def test_up_closure_empty(self, topz, vee):
        assert up_closure(topz, EMPTY) == EMPTY
        assert up_closure(vee, EMPTY) == EMPTY

    def test_down_closure_vee(self, vee):
        assert down_closure(vee, se("a", "b")) == se("bot", "a", "b")

    def test_down_closure_omega_name(self, omega):
        assert down_closure(omega, se("a")) == se("a", 0)

    def test_up_closure_omega_chain_point(self, omega):
        assert up_closure(omega, se(0)) == se_tail(0, ["a"])
        assert up_closure(omega, se(1)) == se_tail(1)


class TestBounds:
    def test_upper_bounds_tail_is_top(self, topz):
        assert upper_bounds(topz, se_tail(0)) == se("top")

    def test_upper_bounds_empty_set(self, topz, vee):
        assert upper_bounds(topz, EMPTY) == whole(topz)
        assert upper_bounds(vee, EMPTY) == whole(vee)

    def test_upper_bounds_vee(self, vee):
        assert upper_bounds(vee, se("a", "b")) == EMPTY

    def test_lower_bounds_tail(self, topz):
        got = lower_bounds(topz, se_tail(3))
        assert got == se_points([0, 1, 2, 3])


class TestCut:
    def test_cut_tail_standard_is_whole(self, topz):
        assert cut(topz, se_tail(0), Convention.STANDARD) == whole(topz)

    def test_cut_point_on_chain(self, chain2):
        assert cut(chain2, se("x")) == se("x")

    def test_cut_vee_convention(self, vee):
        assert cut(vee, se("a", "b"), Convention.STANDARD) == whole(vee)
        assert cut(vee, se("a", "b"), Convention.EMPTY) == EMPTY

    def test_cut_contains_set_when_bounded(self, diamond):
        for names in (["a"], ["a", "b"], ["bot", "a"]):
            a = se_points(names)
            if not upper_bounds(diamond, a).is_empty:
                assert subset(diamond, a, cut(diamond, a))

    def test_omega_cut_of_a(self, omega):
        # upper bounds of {a} are {a}; lower bounds of those are {a, c0}
        assert cut(omega, se("a")) == se("a", 0)


class TestDirected:
    def test_tail_directed(self, topz):
        assert is_directed(topz, se_tail(0))

    def test_vee_pair_not_directed(self, vee):
        assert not is_directed(vee, se("a", "b"))

    def test_empty_not_directed(self, topz, vee, antichain):
        assert not is_directed(topz, EMPTY)
        assert not is_directed(vee, EMPTY)
        assert not is_directed(antichain, EMPTY)

    def test_omega_mixed_directed(self, topz):
        # z and the chain only bound together through top, which is absent
        assert not is_directed(topz, se_tail(0, ["z"]))
        assert is_directed(topz, se_tail(0, ["top"]))
        assert is_directed(topz, se("z", "top"))

    def test_omega_a_with_chain(self, omega):
        # a is above c0 only; {a, c1} has no bound inside
        assert not is_directed(omega, se("a", 1))
        assert is_directed(omega, se("a", 0))
        assert not is_directed(omega, se_tail(0, ["a"]))

    def test_antichain(self, antichain):
        assert is_directed(antichain, se(7))
        assert not is_directed(antichain, se(1, 2))
        assert not is_directed(antichain, se_cofinite([0]))


class TestDirectedFamily:
    def test_topz_family(self, topz):
        fam = [se("z", 0), se("z", 1), se("z", 2)]
        assert is_directed_family(topz, fam)

    def test_singleton_family(self, vee):
        assert is_directed_family(vee, [se("a", "b")])

    def test_vee_split_family(self, vee):
        assert not is_directed_family(vee, [se("a"), se("b")])


class TestRudin:
    def test_antichain_hitting_singleton(self):
        carrier = FiniteCarrier(["a", "b", "c"], [])
        d = rudin_witness(carrier, [se("a", "b"), se("b", "c")])
        assert d == se("b")

    def test_singleton_family(self, chain2):
        assert rudin_witness(chain2, [se("x")]) == se("x")

    def test_chain_family(self):
        carrier = FiniteCarrier(["a", "b", "c"], [("a", "b"), ("b", "c")])
        d = rudin_witness(carrier, [se("a", "b"), se("c")])
        assert d == se("a", "c")

    def test_witness_always_valid(self, diamond):
        fams = [
            [se("a"), se("a", "b"), se("bot", "top")],
            [se("bot"), se("a", "b")],
        ]
        for fam in fams:
            d = rudin_witness(diamond, fam)
            assert is_directed(diamond, d)
            for f in fam:
                assert not inter(diamond, d, f).is_empty


class TestTruncate:
    def test_ex_omega_truncate3(self, omega):
        t = omega.truncate(3)
        assert set(t.elements) == {"a", "c0", "c1", "c2"}
        assert t.leq("c0", "c1") and t.leq("c1", "c2")
        assert t.leq("c0", "a")
        assert not t.leq("c1", "a")
        assert not t.leq("a", "c0")

    def test_truncate_one(self, omega):
        t = omega.truncate(1)
        assert set(t.elements) == {"a", "c0"}

    def test_ex_topz_truncate2(self, topz):
        t = topz.truncate(2)
        assert set(t.elements) == {"top", "z", "c0", "c1"}
        assert t.leq("c0", "c1")
        for p in ("c0", "c1", "z", "top"):
            assert t.leq(p, "top")
        assert not t.leq("z", "c1") and not t.leq("c1", "z")


# -- algebra properties ------------------------------------------------------


def _random_finite_carrier(rng_pairs, n):
    names = [f"p{i}" for i in range(n)]
    pairs = []
    for (i, j) in rng_pairs:
        a, b = sorted((i % n, j % n))
        if a != b:
            pairs.append((names[a], names[b]))
    try:
        return FiniteCarrier(names, pairs)
    except ValidationError:
        return FiniteCarrier(names, [])


finite_carriers = st.builds(
    _random_finite_carrier,
    st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=8),
    st.integers(2, 5),
)


@st.composite
def carrier_and_sets(draw):
    carrier = draw(finite_carriers)
    pick = lambda: frozenset(
        nm for nm in carrier.elements if draw(st.booleans())
    )
    return carrier, SetExpr(pick()), SetExpr(pick())


@given(carrier_and_sets())
@settings(max_examples=150, deadline=None)
def test_closure_laws_finite(data):
    carrier, a, b = data
    ua = up_closure(carrier, a)
    assert up_closure(carrier, ua) == ua
    assert subset(carrier, a, ua)
    if subset(carrier, a, b):
        assert subset(carrier, ua, up_closure(carrier, b))
    da = down_closure(carrier, a)
    assert down_closure(carrier, da) == da
    assert subset(carrier, a, da)


@given(carrier_and_sets())
@settings(max_examples=150, deadline=None)
def test_boolean_algebra_finite(data):
    carrier, a, b = data
    u = union(carrier, a, b)
    i = inter(carrier, a, b)
    for p in carrier.elements:
        assert member(carrier, u, p) == (member(carrier, a, p) or member(carrier, b, p))
        assert member(carrier, i, p) == (member(carrier, a, p) and member(carrier, b, p))
        assert member(carrier, complement(carrier, a), p) == (not member(carrier, a, p))


@given(carrier_and_sets())
@settings(max_examples=100, deadline=None)
def test_cut_extends_bounded_sets(data):
    carrier, a, _ = data
    if a.is_empty:
        return
    if not upper_bounds(carrier, a).is_empty:
        for conv in Convention:
            assert subset(carrier, a, cut(carrier, a, conv))


def _omega_sample_sets(carrier):
    names = list(carrier.names)
    sets = [
        EMPTY,
        whole(carrier),
        se_points(names),
        se(0),
        se(2, 5),
        se_tail(0),
        se_tail(3),
        se_tail(2, names[:1]),
        se_points(names[:1] + [1]),
    ]
    return sets


@pytest.mark.parametrize("fixture", ["omega", "topz"])
def test_boolean_algebra_omega(fixture, request):
    carrier = request.getfixturevalue(fixture)
    sample_points = list(carrier.names) + list(range(8))
    sets = _omega_sample_sets(carrier)
    for a, b in itertools.product(sets, repeat=2):
        u = union(carrier, a, b)
        i = inter(carrier, a, b)
        d = difference(carrier, a, b)
        c = complement(carrier, a)
        for p in sample_points:
            assert member(carrier, u, p) == (member(carrier, a, p) or member(carrier, b, p))
            assert member(carrier, i, p) == (member(carrier, a, p) and member(carrier, b, p))
            assert member(carrier, d, p) == (member(carrier, a, p) and not member(carrier, b, p))
            assert member(carrier, c, p) == (not member(carrier, a, p))


@pytest.mark.parametrize("fixture", ["omega", "topz"])
def test_closures_match_truncations(fixture, request):
    carrier = request.getfixturevalue(fixture)
    n = 6
    trunc = carrier.truncate(n)
    args = [se("z") if "z" in carrier.names else se("a"), se(0), se(2), se_points(list(carrier.names))]
    for a in args:
        for op, top in ((up_closure, None), (down_closure, None)):
            sym = op(carrier, a)
            fin = op(trunc, SetExpr(frozenset(
                p if isinstance(p, str) else f"c{p}" for p in a.finite_points()
            )))
            for p in list(carrier.names) + list(range(n - 1)):
                nm = p if isinstance(p, str) else f"c{p}"
                assert member(carrier, sym, p) == member(trunc, fin, nm), (op, a, p)
