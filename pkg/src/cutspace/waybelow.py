"""Way-below relations: the directed-set form on posets, the
irreducible-set form on spaces, their up/down operators, families of finite
approximants, interpolation witnesses, and hypercontinuity on finite
lattices.

The implemented relation reads the membership side through the up-closure:
``A`` is way below ``B`` iff every qualifying set E whose cut meets B also
meets the up-closure of A.  The relation is then invariant under up-closure
of both arguments and collapses to ``x in up(F)`` on finite spaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .carriers import Carrier, CountableAntichain, FiniteCarrier, OmegaGlued, Point
from .errors import (
    EmptySet,
    InternalCheckFailure,
    NotALattice,
    NotApplicable,
    UnsupportedCombination,
)
from .sets import (
    EMPTY,
    Convention,
    SetExpr,
    cut,
    down_point,
    inter,
    inter_all,
    is_directed_family,
    member,
    se,
    se_points,
    subset,
    union,
    up_closure,
    up_point,
    whole,
)
from .spaces import (
    Alexandroff,
    Cofinite,
    Space,
    UpperTopology,
    WeaklyIrreducible,
    directed_masks,
    irreducible_sets,
    is_irreducible,
    is_open,
    space_order,
)
from . import symbolic


# -- the relations ------------------------------------------------------------


def way_below(
    carrier: Carrier,
    a: SetExpr,
    b: SetExpr,
    convention: Convention = Convention.STANDARD,
) -> bool:
    """Order form: every directed set whose cut meets b meets up(a)."""
    if isinstance(carrier, FiniteCarrier):
        upa = up_closure(carrier, a)
        n = carrier.n
        bmask = carrier.mask_of(b.names)
        amask = carrier.mask_of(upa.names)
        from .spaces import _cut_mask

        for d in directed_masks(carrier):
            c = _cut_mask(carrier.up_masks, carrier.down_masks, n, d, convention)
            if c & bmask and not d & amask:
                return False
        return True
    if isinstance(carrier, OmegaGlued):
        return _way_below_symbolic(carrier, a, b, convention)
    if isinstance(carrier, CountableAntichain):
        # directed sets are singletons, so the test is containment
        return subset(carrier, b, up_closure(carrier, a))
    raise UnsupportedCombination(f"no directed-set table for {carrier!r}")


def _way_below_symbolic(
    carrier: OmegaGlued, a: SetExpr, b: SetExpr, convention: Convention
) -> bool:
    upa = up_closure(carrier, a)
    upb = up_closure(carrier, b)
    if not subset(carrier, upb, upa):
        return False
    return symbolic.directed_quantifier_holds(
        carrier,
        convention,
        lambda cut_expr: not inter(carrier, b, cut_expr).is_empty,
        upa.tail is not None,
        upa,
    )


def _check_space_supported(space: Space) -> None:
    carrier = space.carrier
    topo = space.topology
    if isinstance(carrier, FiniteCarrier):
        return
    if isinstance(carrier, CountableAntichain) and isinstance(topo, Cofinite):
        return
    if isinstance(carrier, OmegaGlued):
        if isinstance(topo, Alexandroff):
            return
        if isinstance(topo, UpperTopology):
            # without names above the whole chain, the extra irreducible
            # sets of the upper topology impose exactly the unbounded-chain
            # constraints already swept for the Alexandroff case
            if not carrier.all_below_names:
                return
            raise UnsupportedCombination(
                "symbolic upper-topology way-below needs a carrier with no "
                "name above the whole chain"
            )
    raise UnsupportedCombination(
        f"way-below has no table for {type(topo).__name__} on {type(carrier).__name__}"
    )


def way_below_irr(space: Space, a: SetExpr, b: SetExpr) -> bool:
    """Space form: every irreducible set whose cut meets b meets up(a)."""
    if a.is_empty:
        raise EmptySet("the lower argument must be a nonempty finite set")
    _check_space_supported(space)
    carrier = space.carrier
    if isinstance(carrier, FiniteCarrier):
        order = space_order(space)
        upa = up_closure(order, a)
        for e in irreducible_sets(space):
            c = cut(order, e, space.convention)
            if not inter(order, b, c).is_empty and inter(order, e, upa).is_empty:
                return False
        return True
    if isinstance(carrier, CountableAntichain):
        if space.convention is Convention.STANDARD:
            return b.is_empty
        return subset(carrier, b, up_closure(carrier, a))
    return _way_below_symbolic(carrier, a, b, space.convention)


def way_up(space: Space, h: SetExpr) -> SetExpr:
    """All points the finite set h is way below."""
    if h.is_empty:
        raise EmptySet("the lower argument must be a nonempty finite set")
    _check_space_supported(space)
    carrier = space.carrier
    if isinstance(carrier, FiniteCarrier):
        hits = [
            p for p in carrier.elements if way_below_irr(space, h, se(p))
        ]
        return se_points(hits)
    if isinstance(carrier, CountableAntichain):
        if space.convention is Convention.STANDARD:
            return EMPTY
        return up_closure(carrier, h)
    uph = up_closure(carrier, h)
    if uph.tail is not None:
        return uph
    acc = uph
    pool = frozenset(carrier.names) - uph.names
    for names in symbolic.chain_compatible_subsets(carrier, pool):
        bad = symbolic.infinite_shape_cut(carrier, names, space.convention)
        acc = inter(carrier, acc, _complement(carrier, bad))
    return acc


def _complement(carrier, a):
    from .sets import complement

    return complement(carrier, a)


def way_down(space: Space, x: Point) -> SetExpr:
    """All points way below x."""
    _check_space_supported(space)
    carrier = space.carrier
    carrier.check_point(x)
    if isinstance(carrier, FiniteCarrier):
        hits = [p for p in carrier.elements if way_below_irr(space, se(p), se(x))]
        return se_points(hits)
    if isinstance(carrier, CountableAntichain):
        return EMPTY if space.convention is Convention.STANDARD else se(x)
    dx = down_point(carrier, x)
    names = frozenset(
        y for y in dx.names if way_below_irr(space, se(y), se(x))
    )
    return SetExpr(names, dx.indices, dx.tail)


def way_below_si(space: Space, x: Point, y: Point) -> bool:
    """Point form through suprema of irreducible sets: whenever y is under
    an existing join of an irreducible set, some member is above x."""
    carrier = space.carrier
    if not isinstance(carrier, FiniteCarrier):
        raise UnsupportedCombination("the supremum form needs a finite carrier")
    carrier.check_point(x)
    carrier.check_point(y)
    order = space_order(space)
    for e in irreducible_sets(space):
        s = _sup(order, e)
        if s is None:
            continue
        if order.leq(y, s) and not any(order.leq(x, p) for p in e.names):
            return False
    return True


def _sup(carrier: FiniteCarrier, a: SetExpr) -> Optional[str]:
    ub = (1 << carrier.n) - 1
    for nm in a.names:
        ub &= carrier.up_masks[carrier.index(nm)]
    m = ub
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        if ub & ~carrier.up_masks[i] == 0:
            return carrier.elements[i]
    return None


# -- families of finite approximants ------------------------------------------


@dataclass
class ApproximantFamily:
    """The family of finite sets way below a point, in a reportable form.

    ``kind`` is ``empty`` (no approximants), ``explicit`` (all members
    listed; finite carriers) or ``parametric`` (members are
    ``base + {c_(start+n)}``, or just ``base`` when ``chain_start`` is None).
    ``intersection`` is the intersection of the up-closures of every
    approximant, computed over the whole family.
    """

    directed: bool
    intersection: SetExpr
    kind: str
    members: tuple = ()
    base: Optional[SetExpr] = None
    chain_start: Optional[int] = None

    def instantiate(self, n: int) -> SetExpr:
        if self.kind == "explicit":
            return self.members[min(n, len(self.members) - 1)]
        if self.kind != "parametric":
            raise NotApplicable("the family has no members")
        if self.chain_start is None:
            return self.base
        return union_point(self.base, self.chain_start + n)


def union_point(a: SetExpr, idx: int) -> SetExpr:
    return SetExpr(a.names, a.indices | {idx}, a.tail)


@dataclass(frozen=True)
class _UpperClass:
    names: frozenset
    t_lo: int
    t_hi: Optional[int]        # None: unbounded
    tail_ok: bool
    tail_free_ok: bool


_NOTAIL = "notail"
_INF = "inf"


def _upper_classes(space: Space, x: Point) -> list:
    """Profiles of up-closures of finite approximants of x: upper name parts
    S with the feasible tail-start interval, plus whether the bare S (no
    tail) passes the unbounded-chain condition."""
    carrier: OmegaGlued = space.carrier
    conv = space.convention
    names = carrier.names
    out = []
    for size in range(len(names) + 1):
        for combo in itertools.combinations(sorted(names), size):
            s = frozenset(combo)
            if any(not carrier.ff_up(f) <= s for f in s):
                continue
            outside = frozenset(names) - s
            tail_allowed = all(not carrier.down_all[f] for f in outside)
            t_lo = 0
            for f in outside:
                m = carrier.down_upto[f]
                if m is not None:
                    t_lo = max(t_lo, m + 1)
            froms = [carrier.up_from[f] for f in s if carrier.up_from[f] is not None]
            t_hi = min(froms) if froms else None
            if isinstance(x, str):
                x_in_names = x in s
                x_cap = None
            else:
                x_in_names = False
                x_cap = x
            # tail variant feasibility
            tail_ok = tail_allowed
            t_hi_eff = t_hi
            if x_cap is not None:
                t_hi_eff = x_cap if t_hi is None else min(t_hi, x_cap)
            elif not x_in_names:
                tail_ok = False
            if tail_ok and t_hi_eff is not None and t_lo > t_hi_eff:
                tail_ok = False
            # tail-free variant: no chain-access names inside, x must be a
            # name member, and no unbounded-chain shape may put x in its cut
            tail_free_ok = not froms and x_in_names
            if tail_free_ok:
                for n in symbolic.chain_compatible_subsets(carrier, frozenset(names) - s):
                    c = symbolic.infinite_shape_cut(carrier, n, conv)
                    if member(carrier, c, x):
                        tail_free_ok = False
                        break
            if tail_ok or tail_free_ok:
                out.append(
                    _UpperClass(s, t_lo, t_hi_eff if tail_ok else None, tail_ok, tail_free_ok)
                )
    return out


def _class_minimum(carrier: OmegaGlued, cls: _UpperClass) -> SetExpr:
    """Intersection of all members of one class."""
    acc = None
    if cls.tail_free_ok:
        acc = SetExpr(cls.names)
    if cls.tail_ok:
        if cls.t_hi is not None:
            m = SetExpr(cls.names, tail=cls.t_hi)
        else:
            m = SetExpr(cls.names)
        acc = m if acc is None else inter(carrier, acc, m)
    return acc


def _class_reps(cls: _UpperClass) -> list:
    """Smallest members of the class, as (names, tail_kind) with tail_kind
    one of an int, _INF, _NOTAIL."""
    reps = []
    if cls.tail_free_ok:
        reps.append((cls.names, _NOTAIL))
    if cls.tail_ok:
        reps.append((cls.names, cls.t_hi if cls.t_hi is not None else _INF))
    return reps


def _pair_bound(r1, r2):
    names = r1[0] & r2[0]
    k1, k2 = r1[1], r2[1]
    if k1 == _NOTAIL or k2 == _NOTAIL:
        return names, _NOTAIL
    if k1 == _INF or k2 == _INF:
        return names, _INF
    return names, max(k1, k2)


def _member_below(classes, names_bound, tail_kind) -> bool:
    for cls in classes:
        if not cls.names <= names_bound:
            continue
        if cls.tail_free_ok:
            return True
        if not cls.tail_ok or tail_kind == _NOTAIL:
            continue
        if tail_kind == _INF:
            if cls.t_hi is None:
                return True
            continue
        lo = max(cls.t_lo, tail_kind)
        if cls.t_hi is None or lo <= cls.t_hi:
            return True
    return False


def min_generators(carrier: OmegaGlued, upper: SetExpr) -> SetExpr:
    """A minimal finite set whose up-closure is the given upper set."""
    gens = set()
    for f in upper.names:
        below_name = any(g != f and carrier.leq(g, f) for g in upper.names)
        below_chain = (
            upper.tail is not None
            and (
                carrier.down_all[f]
                or (carrier.down_upto[f] is not None and carrier.down_upto[f] >= upper.tail)
            )
        )
        if not below_name and not below_chain:
            gens.add(f)
    expr = SetExpr(frozenset(gens))
    if upper.tail is not None and not any(
        carrier.up_from[f] is not None and carrier.up_from[f] <= upper.tail
        for f in upper.names
    ):
        expr = union_point(expr, upper.tail)
    return expr


def finite_approximants(space: Space, x: Point) -> ApproximantFamily:
    """The family of finite sets way below x, with its directedness flag and
    the intersection of the up-closures of its members."""
    _check_space_supported(space)
    carrier = space.carrier
    carrier.check_point(x)
    if isinstance(carrier, FiniteCarrier):
        members = []
        for names in _nonempty_name_subsets(carrier.elements):
            f = se_points(names)
            if way_below_irr(space, f, se(x)):
                members.append(f)
        if not members:
            return ApproximantFamily(False, whole(carrier), "empty")
        order = space_order(space)
        meet = inter_all(order, [up_closure(order, f) for f in members])
        return ApproximantFamily(
            is_directed_family(order, members), meet, "explicit", tuple(members)
        )
    if isinstance(carrier, CountableAntichain):
        if space.convention is Convention.STANDARD:
            return ApproximantFamily(False, whole(carrier), "empty")
        return ApproximantFamily(True, se(x), "parametric", base=se(x))
    classes = _upper_classes(space, x)
    if not classes:
        return ApproximantFamily(False, whole(carrier), "empty")
    mins = [_class_minimum(carrier, c) for c in classes]
    meet = inter_all(carrier, mins)
    reps = [r for c in classes for r in _class_reps(c)]
    directed = all(
        _member_below(classes, *_pair_bound(r1, r2))
        for r1, r2 in itertools.combinations_with_replacement(reps, 2)
    )
    base, start = _parametric_form(space, x, meet)
    return ApproximantFamily(directed, meet, "parametric", base=base, chain_start=start)


def _parametric_form(space: Space, x: Point, meet: SetExpr):
    """A cofinal chain inside the family: for tailed intersections a single
    top member; otherwise generators of the intersection decorated with a
    rising chain point."""
    carrier: OmegaGlued = space.carrier
    if meet.tail is not None:
        top = min_generators(carrier, meet)
        if way_below_irr(space, top, se(x)):
            return top, None
        return None, None
    gens = min_generators(carrier, meet)
    start = carrier.max_param + 1
    if isinstance(x, int):
        start = max(start, x + 1)
    probe = union_point(gens, start)
    limit = union(carrier, up_closure(carrier, gens), SetExpr(carrier.all_below_names))
    if way_below_irr(space, probe, se(x)) and limit == meet:
        return gens, start
    return None, None


def _nonempty_name_subsets(elements):
    elements = sorted(elements)
    for size in range(1, len(elements) + 1):
        yield from itertools.combinations(elements, size)


# -- interpolation -------------------------------------------------------------


def interpolate(space: Space, f: SetExpr, x: Point) -> SetExpr:
    """A finite g with f way below g way below x, on quasicontinuous spaces."""
    from .checkers import is_si2_quasicontinuous

    if not is_si2_quasicontinuous(space):
        raise NotApplicable("interpolation needs a quasicontinuous space")
    if not way_below_irr(space, f, se(x)):
        raise NotApplicable("the lower set is not way below the point")
    carrier = space.carrier
    if isinstance(carrier, FiniteCarrier):
        for names in _nonempty_name_subsets(carrier.elements):
            g = se_points(names)
            if way_below_irr(space, f, g) and way_below_irr(space, g, se(x)):
                return g
        raise InternalCheckFailure("no interpolant on a quasicontinuous finite space")
    if isinstance(carrier, CountableAntichain):
        g = se(x)
        if way_below_irr(space, f, g) and way_below_irr(space, g, se(x)):
            return g
        raise InternalCheckFailure("no interpolant on the antichain")
    fam = finite_approximants(space, x)
    candidates = []
    for names in _nonempty_name_subsets(carrier.names):
        candidates.append(se_points(names))
    start = 0
    if f.has_chain_part:
        start = max(
            [i + 1 for i in f.indices] + ([f.tail + 1] if f.tail is not None else [])
        )
    if fam.kind == "parametric" and fam.base is not None:
        lo = start if fam.chain_start is None else max(start, fam.chain_start)
        for n in range(lo, lo + carrier.max_param + 8):
            candidates.append(union_point(fam.base, n))
    for g in candidates:
        if way_below_irr(space, f, g) and way_below_irr(space, g, se(x)):
            return g
    raise InternalCheckFailure("no interpolant found on a quasicontinuous space")


def interpolate_set(space: Space, f: SetExpr, h: SetExpr) -> SetExpr:
    """Set form: one g with f way below g way below h, unioned from
    per-point witnesses."""
    if not h.is_finite or h.is_empty:
        raise EmptySet("the upper argument must be a nonempty finite set")
    carrier = space.carrier
    parts = [interpolate(space, f, p) for p in h.finite_points()]
    g = parts[0]
    for p in parts[1:]:
        g = union(carrier, g, p)
    if not (way_below_irr(space, f, g) and way_below_irr(space, g, h)):
        raise InternalCheckFailure("pointwise interpolants do not recombine")
    return g


def witness_in_irreducible(space: Space, f: SetExpr, e: SetExpr) -> Point:
    """A member of the irreducible set e that f is way below.

    A witness is guaranteed when f is way below the cut of e on a
    quasicontinuous space; the search runs regardless and every returned
    point is verified, so a result is always sound."""
    from .checkers import is_si2_quasicontinuous

    if not is_irreducible(space, e):
        raise NotApplicable("the set is not irreducible")
    order = space_order(space)
    target = cut(order, e, space.convention)
    guaranteed = way_below_irr(space, f, target)
    candidates: list[Point] = sorted(
        e.names,
        key=lambda nm: (-_down_size(order, nm), nm),
    )
    candidates += sorted(e.indices)
    if e.tail is not None:
        bound = e.tail + (order.max_param if isinstance(order, OmegaGlued) else 0) + 3
        candidates += list(range(e.tail, bound))
    for p in candidates:
        if way_below_irr(space, f, se(p)):
            return p
    if guaranteed and is_si2_quasicontinuous(space):
        raise InternalCheckFailure("no witness inside an irreducible set")
    raise NotApplicable("no member of the irreducible set is way above f")


def _down_size(order, nm) -> int:
    if isinstance(order, FiniteCarrier):
        return bin(order.down_masks[order.index(nm)]).count("1")
    d = down_point(order, nm)
    return len(d.names) + len(d.indices) + (10_000 if d.tail is not None else 0)


# -- hypercontinuity on finite lattices ----------------------------------------


def _lattice_tables(carrier: FiniteCarrier):
    n = carrier.n
    up, down = carrier.up_masks, carrier.down_masks
    if n == 0:
        raise NotALattice("the empty poset is not a lattice")
    lub = [[None] * n for _ in range(n)]
    glb = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            common = up[i] & up[j]
            m = common
            while m:
                k = (m & -m).bit_length() - 1
                m &= m - 1
                if common & ~up[k] == 0:
                    lub[i][j] = k
                    break
            common = down[i] & down[j]
            m = common
            while m:
                k = (m & -m).bit_length() - 1
                m &= m - 1
                if common & ~down[k] == 0:
                    glb[i][j] = k
                    break
            if lub[i][j] is None or glb[i][j] is None:
                raise NotALattice(
                    f"{carrier.elements[i]} and {carrier.elements[j]} lack a join or meet"
                )
    return lub, glb


def upper_interior_contains(carrier: FiniteCarrier, x: str, y: str) -> bool:
    """y lies in the upper-topology interior of the up-set of x.

    From the subbasis of complements of principal down-sets: a point sits in
    that interior iff it is below no point outside the up-set."""
    xi, yi = carrier.index(x), carrier.index(y)
    up = carrier.up_masks
    outside = ((1 << carrier.n) - 1) & ~up[xi]
    return up[yi] & outside == 0


def hyper_below(carrier: FiniteCarrier, x: str, y: str) -> bool:
    _lattice_tables(carrier)
    return upper_interior_contains(carrier, x, y)


def is_hypercontinuous(carrier: FiniteCarrier) -> bool:
    """Every element is the join of the elements it interior-dominates."""
    lub, _ = _lattice_tables(carrier)
    n = carrier.n
    bottom = None
    for i in range(n):
        if carrier.down_masks[i] == 1 << i:
            if bottom is not None:
                raise NotALattice("two minimal elements")
            bottom = i
    if bottom is None:
        raise NotALattice("no bottom element")
    for yi, y in enumerate(carrier.elements):
        acc = bottom
        for xi, x in enumerate(carrier.elements):
            if upper_interior_contains(carrier, x, y):
                acc = lub[acc][xi]
        if acc != yi:
            return False
    return True
