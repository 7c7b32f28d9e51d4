"""The four continuity verdicts: the two order-side ones through directed
sets, and the two space-side ones through irreducible sets."""

from __future__ import annotations

import itertools
from typing import Optional

from .carriers import Carrier, CountableAntichain, FiniteCarrier, OmegaGlued, Point
from .errors import UnsupportedCombination
from .sets import (
    Convention,
    SetExpr,
    cut,
    inter_all,
    is_directed,
    is_directed_family,
    member,
    se,
    se_points,
    up_closure,
    up_point,
    whole,
)
from .spaces import Alexandroff, Space, is_open, make_space, space_order
from .waybelow import (
    ApproximantFamily,
    finite_approximants,
    way_below,
    way_down,
    way_up,
)


def point_representatives(carrier: Carrier) -> list:
    """Finitely many points that exhaust the carrier's behaviours: all names
    plus chain indices through the largest attachment parameter, with one
    generic index beyond it."""
    if isinstance(carrier, FiniteCarrier):
        return sorted(carrier.elements)
    if isinstance(carrier, OmegaGlued):
        return sorted(carrier.names) + list(range(carrier.max_param + 2))
    return [0]


def _finite_set_templates(carrier: Carrier) -> list:
    """Finite nonempty sets that exhaust the up-closure shapes."""
    if isinstance(carrier, FiniteCarrier):
        out = []
        for size in range(1, carrier.n + 1):
            for combo in itertools.combinations(sorted(carrier.elements), size):
                out.append(se_points(combo))
        return out
    if isinstance(carrier, OmegaGlued):
        out = []
        name_subsets = [frozenset()]
        for size in range(1, len(carrier.names) + 1):
            for combo in itertools.combinations(sorted(carrier.names), size):
                name_subsets.append(frozenset(combo))
        for names in name_subsets:
            if names:
                out.append(SetExpr(names))
            for p in range(carrier.max_param + 2):
                out.append(SetExpr(names, frozenset({p})))
        return out
    return [se(0), se(0, 1)]


# -- order-side approximants ---------------------------------------------------


def order_way_down(carrier: Carrier, x: Point, convention: Convention) -> SetExpr:
    """Points way below x in the directed-set sense."""
    if isinstance(carrier, FiniteCarrier):
        hits = [p for p in carrier.elements if way_below(carrier, se(p), se(x), convention)]
        return se_points(hits)
    if isinstance(carrier, CountableAntichain):
        return se(x)
    return way_down(make_space(carrier, Alexandroff(), convention), x)


def order_approximants(
    carrier: Carrier, x: Point, convention: Convention
) -> ApproximantFamily:
    """The family of finite sets way below x in the directed-set sense."""
    if isinstance(carrier, FiniteCarrier):
        members = []
        for size in range(1, carrier.n + 1):
            for combo in itertools.combinations(sorted(carrier.elements), size):
                f = se_points(combo)
                if way_below(carrier, f, se(x), convention):
                    members.append(f)
        if not members:
            return ApproximantFamily(False, whole(carrier), "empty")
        meet = inter_all(carrier, [up_closure(carrier, f) for f in members])
        return ApproximantFamily(
            is_directed_family(carrier, members), meet, "explicit", tuple(members)
        )
    if isinstance(carrier, CountableAntichain):
        return ApproximantFamily(True, se(x), "parametric", base=se(x))
    return finite_approximants(make_space(carrier, Alexandroff(), convention), x)


# -- the four verdicts ----------------------------------------------------------


def is_s2_continuous(carrier: Carrier, convention: Convention = Convention.STANDARD) -> bool:
    """Every point lies in the cut of its directed set of way-below points."""
    for x in point_representatives(carrier):
        down = order_way_down(carrier, x, convention)
        if not is_directed(carrier, down):
            return False
        if not member(carrier, cut(carrier, down, convention), x):
            return False
    return True


def is_s2_quasicontinuous(
    carrier: Carrier, convention: Convention = Convention.STANDARD
) -> bool:
    """Every up-set of a point is the directed intersection of up-sets of
    finite sets way below it."""
    for x in point_representatives(carrier):
        fam = order_approximants(carrier, x, convention)
        if not fam.directed:
            return False
        if fam.intersection != up_point(carrier, x):
            return False
    return True


def si2_continuity_conditions(space: Space) -> dict:
    order = space_order(space)
    directed_ok = True
    cut_ok = True
    open_ok = True
    for x in point_representatives(order):
        down = way_down(space, x)
        if not is_directed(order, down):
            directed_ok = False
        if not member(order, cut(order, down, space.convention), x):
            cut_ok = False
        if not is_open(space, way_up(space, se(x))):
            open_ok = False
    return {
        "way-down-directed": directed_ok,
        "point-in-cut-of-way-down": cut_ok,
        "way-up-open": open_ok,
    }


def is_si2_continuous(space: Space) -> bool:
    return all(si2_continuity_conditions(space).values())


def si2_quasicontinuity_conditions(space: Space) -> dict:
    order = space_order(space)
    directed_ok = True
    meet_ok = True
    open_ok = True
    for x in point_representatives(order):
        fam = finite_approximants(space, x)
        if not fam.directed:
            directed_ok = False
        if fam.intersection != up_point(order, x):
            meet_ok = False
    for h in _finite_set_templates(order):
        if not is_open(space, way_up(space, h)):
            open_ok = False
            break
    return {
        "approximants-directed": directed_ok,
        "up-set-is-approximant-meet": meet_ok,
        "way-up-sets-open": open_ok,
    }


def is_si2_quasicontinuous(space: Space) -> bool:
    return all(si2_quasicontinuity_conditions(space).values())
