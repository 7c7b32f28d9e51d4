"""The weakly irreducible topology derived from a space: opens are the base
opens U such that every irreducible set whose cut meets U already meets U.
Includes the way-up basis, interiors, the finite open-set lattice, and the
three-way hypercontinuity equivalence report."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .carriers import CountableAntichain, FiniteCarrier, OmegaGlued, Point
from .errors import (
    InternalCheckFailure,
    NotApplicable,
    UnsupportedCombination,
    ValidationError,
)
from .sets import (
    EMPTY,
    Convention,
    SetExpr,
    cut,
    inter,
    is_upper,
    member,
    se,
    se_points,
    subset,
    union,
    up_closure,
    whole,
)
from .spaces import (
    Alexandroff,
    Cofinite,
    ExplicitOpens,
    Space,
    UpperTopology,
    WeaklyIrreducible,
    enumerate_opens,
    irreducible_sets,
    is_open,
    make_space,
    space_order,
)
from .waybelow import is_hypercontinuous, min_generators, way_up
from . import symbolic


def weakly_irr_open(
    base: Space, u: SetExpr, convention: Optional[Convention] = None
) -> bool:
    """Openness in the weakly irreducible topology of the base space."""
    conv = convention if convention is not None else base.convention
    carrier = base.carrier
    if isinstance(carrier, FiniteCarrier):
        if not is_open(base, u):
            return False
        order = space_order(base)
        for e in irreducible_sets(base):
            c = cut(order, e, conv)
            if not inter(order, c, u).is_empty and inter(order, e, u).is_empty:
                return False
        return True
    if isinstance(carrier, CountableAntichain):
        # singletons are their own cuts; an infinite irreducible set meets
        # every nonempty cofinite open, and under the empty convention its
        # cut vanishes, so the derived topology is the base topology
        return is_open(base, u)
    if isinstance(base.topology, Alexandroff):
        if not is_upper(carrier, u):
            return False
        return _unbounded_chain_condition(carrier, u, conv)
    if isinstance(base.topology, UpperTopology):
        if carrier.all_below_names:
            raise UnsupportedCombination(
                "the weakly irreducible topology over the upper topology is "
                "tabulated only for carriers with no name above the whole chain"
            )
        if not is_open(base, u):
            return False
        if not _unbounded_chain_condition(carrier, u, conv):
            return False
        # the upper topology adds the unbounded-chain irreducible sets; with
        # no above-all name their upper bounds vanish, so they bind exactly
        # under the standard convention
        if conv is Convention.STANDARD and not u.is_empty and u.tail is None:
            return False
        return True
    raise UnsupportedCombination(
        f"no weakly-irreducible table over {type(base.topology).__name__}"
    )


def _unbounded_chain_condition(carrier: OmegaGlued, u: SetExpr, conv: Convention) -> bool:
    return symbolic.directed_quantifier_holds(
        carrier,
        conv,
        lambda cut_expr: not inter(carrier, cut_expr, u).is_empty,
        u.tail is not None,
        u,
    )


def derived_space(base: Space, convention: Optional[Convention] = None) -> Space:
    """The weakly irreducible topology as a space presentation; explicit on
    finite carriers, predicate-backed elsewhere."""
    conv = convention if convention is not None else base.convention
    carrier = base.carrier
    if isinstance(carrier, FiniteCarrier):
        opens = [u for u in enumerate_opens(base) if weakly_irr_open(base, u, conv)]
        families = [u.names for u in opens]
        _assert_topology(carrier, families)
        return make_space(carrier, ExplicitOpens.of(families), conv)
    return make_space(carrier, WeaklyIrreducible(base), conv)


def _assert_topology(carrier: FiniteCarrier, families) -> None:
    fams = set(families)
    allset = frozenset(carrier.elements)
    if frozenset() not in fams or allset not in fams:
        raise InternalCheckFailure("derived opens lost the empty set or the carrier")
    for a, b in itertools.combinations(fams, 2):
        if a | b not in fams or a & b not in fams:
            raise InternalCheckFailure("derived opens are not a topology")


def weakly_irr_interior(base: Space, a: SetExpr) -> SetExpr:
    """Interior of a set in the weakly irreducible topology."""
    carrier = base.carrier
    if isinstance(carrier, FiniteCarrier):
        from .spaces import interior

        return interior(derived_space(base), a)
    if isinstance(carrier, CountableAntichain):
        from .spaces import interior

        return interior(base, a)
    acc = EMPTY
    conv = base.convention
    name_pool = sorted(a.names)
    for size in range(len(name_pool) + 1):
        for combo in itertools.combinations(name_pool, size):
            s = frozenset(combo)
            if any(not carrier.ff_up(f) <= s for f in s):
                continue
            cand_tail_free = SetExpr(s)
            if is_upper(carrier, cand_tail_free) and weakly_irr_open(
                base, cand_tail_free, conv
            ):
                acc = union(carrier, acc, cand_tail_free)
            if a.tail is None:
                continue
            t = a.tail
            for f in frozenset(carrier.names) - s:
                m = carrier.down_upto[f]
                if carrier.down_all[f]:
                    t = None
                    break
                if m is not None:
                    t = max(t, m + 1)
            if t is None:
                continue
            froms = [carrier.up_from[f] for f in s if carrier.up_from[f] is not None]
            if froms and min(froms) < t:
                continue
            cand = SetExpr(s, tail=t)
            if subset(carrier, cand, a) and weakly_irr_open(base, cand, conv):
                acc = union(carrier, acc, cand)
    return acc


# -- basis ---------------------------------------------------------------------


@dataclass
class BasisDescription:
    """The way-up sets of finite sets as a basis: explicit members on finite
    carriers, shape templates (name part, optional chain parameter) on
    omega-glued ones."""

    members: tuple = ()
    templates: tuple = ()
    space: Optional[Space] = None

    def instantiate(self, finite_set: SetExpr) -> SetExpr:
        return way_up(self.space, finite_set)


def si2_basis(base: Space) -> BasisDescription:
    from .checkers import is_si2_quasicontinuous

    if not is_si2_quasicontinuous(base):
        raise NotApplicable("the basis property needs a quasicontinuous space")
    carrier = base.carrier
    if isinstance(carrier, FiniteCarrier):
        members = set()
        for size in range(1, carrier.n + 1):
            for combo in itertools.combinations(sorted(carrier.elements), size):
                members.add(way_up(base, se_points(combo)))
        members.add(EMPTY)
        opens = set(enumerate_opens(derived_space(base)))
        for m in members:
            if m not in opens:
                raise InternalCheckFailure("a way-up set is not weakly irreducibly open")
        for u in opens:
            cover = EMPTY
            for m in members:
                if subset(carrier, m, u):
                    cover = union(carrier, cover, m)
            if cover != u:
                raise InternalCheckFailure("way-up sets do not generate the topology")
        ordered = tuple(sorted(members, key=lambda s: (len(s.names), sorted(s.names))))
        return BasisDescription(members=ordered, space=base)
    if isinstance(carrier, CountableAntichain):
        return BasisDescription(space=base)
    templates = []
    name_subsets = [frozenset()]
    for size in range(1, len(carrier.names) + 1):
        for combo in itertools.combinations(sorted(carrier.names), size):
            name_subsets.append(frozenset(combo))
    for names in name_subsets:
        if names:
            templates.append((SetExpr(names), False))
        templates.append((SetExpr(names), True))
    return BasisDescription(templates=tuple(templates), space=base)


# -- the open-set lattice --------------------------------------------------------


@dataclass
class OpenSetLattice:
    """The weakly irreducibly open sets under inclusion, as a finite lattice
    carrier whose element o_i stands for opens[i]."""

    carrier: FiniteCarrier
    opens: tuple

    def join(self, i: int, j: int) -> int:
        target = self.opens[i].names | self.opens[j].names
        return next(k for k, u in enumerate(self.opens) if u.names == target)

    def meet(self, i: int, j: int) -> int:
        target = self.opens[i].names & self.opens[j].names
        return next(k for k, u in enumerate(self.opens) if u.names == target)


def open_set_lattice(base: Space) -> OpenSetLattice:
    carrier = base.carrier
    if not isinstance(carrier, FiniteCarrier):
        raise UnsupportedCombination("the open-set lattice is built on finite carriers")
    opens = enumerate_opens(derived_space(base))
    labels = [f"o{i}" for i in range(len(opens))]
    pairs = [
        (labels[i], labels[j])
        for i in range(len(opens))
        for j in range(len(opens))
        if opens[i].names <= opens[j].names
    ]
    lattice = OpenSetLattice(FiniteCarrier(labels, pairs), opens)
    for i, j in itertools.combinations(range(len(opens)), 2):
        if opens[lattice.join(i, j)].names != opens[i].names | opens[j].names:
            raise InternalCheckFailure("join is not union in the open-set lattice")
        if opens[lattice.meet(i, j)].names != opens[i].names & opens[j].names:
            raise InternalCheckFailure("meet is not intersection in the open-set lattice")
    return lattice


# -- the three-way equivalence ----------------------------------------------------


def hypercontinuity_equivalence(base: Space) -> dict:
    """Three independently computed statements: quasicontinuity, the
    interpolation-into-opens property, and hypercontinuity of the open-set
    lattice; the third is unknown on infinite carriers."""
    from .checkers import is_si2_quasicontinuous, point_representatives

    carrier = base.carrier
    cond1 = is_si2_quasicontinuous(base)
    cond2 = _open_interpolation(base)
    if isinstance(carrier, FiniteCarrier):
        cond3 = is_hypercontinuous(open_set_lattice(base).carrier)
        agree = cond1 == cond2 == cond3
    else:
        cond3 = None
        agree = cond1 == cond2
    return {
        "quasicontinuous": cond1,
        "open-interpolation": cond2,
        "hypercontinuous-open-lattice": cond3,
        "agree": agree,
    }


def _open_interpolation(base: Space) -> bool:
    from .checkers import point_representatives

    carrier = base.carrier
    order = space_order(base)
    if isinstance(carrier, FiniteCarrier):
        derived = derived_space(base)
        dopens = enumerate_opens(derived)
        for u in dopens:
            for x in u.names:
                if not _interpolates_into(base, x, u):
                    return False
        return True
    if isinstance(carrier, CountableAntichain):
        for x in point_representatives(carrier):
            for u in (se_points([x]), se_points([x, x + 1]), whole(carrier)):
                if not is_open(base, u) or not weakly_irr_open(base, u):
                    continue
                if not _interpolates_into(base, x, u):
                    return False
        return True
    for x in point_representatives(carrier):
        for u in _candidate_opens_containing(base, x):
            if not _interpolates_into(base, x, u):
                return False
    return True


def _interpolates_into(base: Space, x: Point, u: SetExpr) -> bool:
    carrier = base.carrier
    order = space_order(base)
    if isinstance(carrier, FiniteCarrier):
        for size in range(1, carrier.n + 1):
            for combo in itertools.combinations(sorted(carrier.elements), size):
                f = se_points(combo)
                upf = up_closure(order, f)
                if not subset(order, upf, u):
                    continue
                if member(order, weakly_irr_interior(base, upf), x):
                    return True
        return False
    if isinstance(carrier, CountableAntichain):
        f = se_points([x])
        upf = up_closure(order, f)
        return subset(order, upf, u) and member(order, weakly_irr_interior(base, upf), x)
    f = min_generators(carrier, u)
    upf = up_closure(carrier, f)
    return subset(carrier, upf, u) and member(
        carrier, weakly_irr_interior(base, upf), x
    )


def _candidate_opens_containing(base: Space, x: Point):
    """Representative weakly irreducibly open sets containing x on an
    omega-glued carrier: upper name parts with a feasible tail spread over
    the parameter range, plus the tail-free ones."""
    carrier: OmegaGlued = base.carrier
    conv = base.convention
    names = sorted(carrier.names)
    cap = carrier.max_param + 2 + (x + 1 if isinstance(x, int) else 0)
    out = []
    for size in range(len(names) + 1):
        for combo in itertools.combinations(names, size):
            s = frozenset(combo)
            if any(not carrier.ff_up(f) <= s for f in s):
                continue
            for tail in [None] + list(range(cap + 1)):
                u = SetExpr(s, tail=tail)
                if not member(carrier, u, x):
                    continue
                if not is_upper(carrier, u):
                    continue
                try:
                    if weakly_irr_open(base, u, conv):
                        out.append(u)
                except UnsupportedCombination:
                    return []
    return out
