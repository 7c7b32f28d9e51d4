"""Topological presentations: intrinsic topologies over posets, explicit
finite topologies, the cofinite topology, and the derived weakly irreducible
topology."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Union

from .carriers import Carrier, CountableAntichain, FiniteCarrier, OmegaGlued, Point
from .errors import EmptySet, UnsupportedCombination, ValidationError
from .sets import (
    EMPTY,
    Convention,
    SetExpr,
    complement,
    down_closure,
    inter,
    is_directed,
    is_lower,
    is_upper,
    member,
    se_points,
    subset,
    union,
    up_closure,
    upper_bounds,
    whole,
)
from . import symbolic


@dataclass(frozen=True)
class Alexandroff:
    pass


@dataclass(frozen=True)
class UpperTopology:
    pass


@dataclass(frozen=True)
class WeakScott:
    pass


@dataclass(frozen=True)
class ScottTopology:
    pass


@dataclass(frozen=True)
class Cofinite:
    pass


@dataclass(frozen=True)
class ExplicitOpens:
    opens: tuple

    @staticmethod
    def of(families) -> "ExplicitOpens":
        normal = sorted({frozenset(f) for f in families}, key=lambda s: (len(s), sorted(s)))
        return ExplicitOpens(tuple(normal))


@dataclass(frozen=True)
class WeaklyIrreducible:
    base: "Space"


TopologySpec = Union[
    Alexandroff, UpperTopology, WeakScott, ScottTopology, Cofinite, ExplicitOpens,
    WeaklyIrreducible,
]


@dataclass(frozen=True)
class Space:
    carrier: Carrier
    topology: TopologySpec
    convention: Convention = Convention.STANDARD


def make_space(
    carrier: Carrier, topology: TopologySpec, convention: Convention = Convention.STANDARD
) -> Space:
    """Validated space construction; raises on unsupported pairs and on
    presentations whose specialization order misbehaves."""
    if isinstance(topology, WeaklyIrreducible):
        base = topology.base
        if base.carrier is not carrier and base.carrier != carrier:
            raise ValidationError("derived topology must sit on its base carrier")
        space = Space(carrier, topology, convention)
        _validate_derived(space)
        return space
    if isinstance(carrier, FiniteCarrier):
        if isinstance(topology, Cofinite):
            raise UnsupportedCombination("cofinite topology lives on the countable antichain")
        space = Space(carrier, topology, convention)
        _validate_finite(space)
        return space
    if isinstance(carrier, OmegaGlued):
        if isinstance(topology, (Alexandroff, UpperTopology, WeakScott)):
            return Space(carrier, topology, convention)
        raise UnsupportedCombination(
            f"{type(topology).__name__} has no decision table on omega-glued carriers"
        )
    if isinstance(carrier, CountableAntichain):
        if isinstance(topology, Cofinite):
            return Space(carrier, topology, convention)
        raise UnsupportedCombination(
            f"{type(topology).__name__} has no decision table on the countable antichain"
        )
    raise UnsupportedCombination(f"unknown carrier {carrier!r}")


def _validate_finite(space: Space) -> None:
    carrier: FiniteCarrier = space.carrier
    topo = space.topology
    if isinstance(topo, ExplicitOpens):
        opens = set(topo.opens)
        allset = frozenset(carrier.elements)
        if frozenset() not in opens or allset not in opens:
            raise ValidationError("explicit topology must contain the empty set and the carrier")
        for u in opens:
            if not u <= allset:
                raise ValidationError(f"open set {sorted(u)} uses unknown points")
        for u, v in itertools.combinations(opens, 2):
            if u | v not in opens or u & v not in opens:
                raise ValidationError("explicit topology is not closed under union/intersection")
    spec = _finite_specialization_masks(space)
    n = carrier.n
    for i in range(n):
        for j in range(n):
            if i != j and spec[i] >> j & 1 and spec[j] >> i & 1:
                raise ValidationError("space is not T0: two points share all opens")
    if not isinstance(topo, ExplicitOpens) and spec != carrier.up_masks:
        raise ValidationError("intrinsic topology does not regenerate the carrier order")
    if isinstance(topo, ExplicitOpens) and spec != carrier.up_masks:
        raise ValidationError(
            "explicit opens induce a specialization order different from the declared one"
        )


def _validate_derived(space: Space) -> None:
    base = space.topology.base
    if isinstance(space.carrier, FiniteCarrier):
        derived_spec = _finite_specialization_masks(space)
        base_spec = _finite_specialization_masks(base)
        if derived_spec != base_spec:
            raise ValidationError("derived topology changed the specialization order")


# -- finite open-set machinery ----------------------------------------------


def _iter_masks(n: int) -> Iterator[int]:
    return range(1 << n)


def _is_upper_mask(up_masks, mask: int) -> bool:
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        if up_masks[i] & ~mask:
            return False
    return True


@lru_cache(maxsize=4096)
def directed_masks(carrier: FiniteCarrier) -> tuple:
    """All nonempty directed subsets of a finite poset, as bitmasks."""
    out = []
    n = carrier.n
    up = carrier.up_masks
    for mask in range(1, 1 << n):
        pts = [i for i in range(n) if mask >> i & 1]
        if all(any(mask >> k & 1 and up[i] >> k & 1 and up[j] >> k & 1 for k in pts)
               for i in pts for j in pts):
            out.append(mask)
    return tuple(out)


def _cut_mask(up, down, n: int, mask: int, convention: Convention) -> int:
    ub = (1 << n) - 1
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        ub &= up[i]
    if ub == 0:
        return (1 << n) - 1 if convention is Convention.STANDARD else 0
    lb = (1 << n) - 1
    m = ub
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        lb &= down[i]
    return lb


@lru_cache(maxsize=4096)
def _finite_opens_masks(space: Space) -> tuple:
    carrier: FiniteCarrier = space.carrier
    n = carrier.n
    topo = space.topology
    if isinstance(topo, ExplicitOpens):
        return tuple(sorted(carrier.mask_of(u) for u in topo.opens))
    if isinstance(topo, WeaklyIrreducible):
        from .weaklyirr import weakly_irr_open

        base = topo.base
        out = []
        for mask in _finite_opens_masks(base):
            u = SetExpr(carrier.names_of(mask))
            if weakly_irr_open(base, u):
                out.append(mask)
        return tuple(sorted(out))
    up = carrier.up_masks
    uppers = [mask for mask in _iter_masks(n) if _is_upper_mask(up, mask)]
    if isinstance(topo, Alexandroff):
        return tuple(sorted(uppers))
    if isinstance(topo, UpperTopology):
        full = (1 << n) - 1
        subbasis = [full & ~carrier.down_masks[i] for i in range(n)]
        basis = {full}
        frontier = list(subbasis)
        while frontier:
            nxt = []
            for s in frontier:
                if s in basis:
                    continue
                basis.add(s)
                for t in list(basis):
                    c = s & t
                    if c not in basis:
                        nxt.append(c)
            frontier = nxt
        opens = {0}
        frontier = list(basis)
        while frontier:
            nxt = []
            for s in frontier:
                if s in opens:
                    continue
                opens.add(s)
                for t in list(opens):
                    c = s | t
                    if c not in opens:
                        nxt.append(c)
            frontier = nxt
        return tuple(sorted(opens))
    if isinstance(topo, WeakScott):
        down = carrier.down_masks
        dirs = directed_masks(carrier)
        cuts = [_cut_mask(up, down, n, d, space.convention) for d in dirs]
        out = []
        for u in uppers:
            if all(not (c & u) or (d & u) for d, c in zip(dirs, cuts)):
                out.append(u)
        return tuple(sorted(out))
    if isinstance(topo, ScottTopology):
        sups = []
        for d in directed_masks(carrier):
            ub = (1 << n) - 1
            m = d
            while m:
                i = (m & -m).bit_length() - 1
                m &= m - 1
                ub &= up[i]
            least = None
            m = ub
            while m:
                i = (m & -m).bit_length() - 1
                m &= m - 1
                if ub & ~up[i] == 0:
                    least = i
                    break
            sups.append((d, least))
        out = []
        for u in uppers:
            ok = True
            for d, sup in sups:
                if sup is not None and u >> sup & 1 and not (d & u):
                    ok = False
                    break
            if ok:
                out.append(u)
        return tuple(sorted(out))
    raise UnsupportedCombination(f"no finite open-set table for {type(topo).__name__}")


def _finite_specialization_masks(space: Space) -> tuple:
    carrier: FiniteCarrier = space.carrier
    n = carrier.n
    opens = _finite_opens_masks(space)
    spec = []
    for i in range(n):
        m = (1 << n) - 1
        for u in opens:
            if u >> i & 1:
                m &= u
        spec.append(m)
    return tuple(spec)


def enumerate_opens(space: Space) -> tuple:
    """All open sets of a finite space, deterministically ordered."""
    carrier = space.carrier
    if not isinstance(carrier, FiniteCarrier):
        raise UnsupportedCombination("open-set enumeration needs a finite carrier")
    masks = _finite_opens_masks(space)
    sets = [SetExpr(carrier.names_of(m)) for m in masks]
    return tuple(sorted(sets, key=lambda s: (len(s.names), sorted(s.names))))


# -- the open-set predicate --------------------------------------------------


def is_open(space: Space, u: SetExpr) -> bool:
    carrier = space.carrier
    topo = space.topology
    if isinstance(topo, WeaklyIrreducible):
        from .weaklyirr import weakly_irr_open

        return weakly_irr_open(topo.base, u, convention=space.convention)
    if isinstance(carrier, FiniteCarrier):
        return carrier.mask_of(u.names) in set(_finite_opens_masks(space))
    if isinstance(carrier, CountableAntichain):
        return u.is_empty or u.is_cofinite
    if isinstance(topo, Alexandroff):
        return is_upper(carrier, u)
    if isinstance(topo, UpperTopology):
        return _upper_topology_open(carrier, u)
    if isinstance(topo, WeakScott):
        if not is_upper(carrier, u):
            return False
        return symbolic.directed_quantifier_holds(
            carrier,
            space.convention,
            lambda cut_expr: not inter(carrier, cut_expr, u).is_empty,
            u.tail is not None,
            u,
        )
    raise UnsupportedCombination(
        f"openness of {type(topo).__name__} on {type(carrier).__name__} is not decidable here"
    )


def _upper_topology_open(carrier: OmegaGlued, u: SetExpr) -> bool:
    """A set is upper-topology open iff its complement is an intersection of
    finite unions of principal down-sets.  The complement C qualifies iff it
    is a lower set and, when it swallows the whole chain, every outside point
    q admits a name above the whole chain that is not above q."""
    c = complement(carrier, u)
    if not is_lower(carrier, c):
        return False
    if c.tail is None:
        return True
    for q in sorted(u.names):
        if not any(not carrier.leq(q, y) for y in carrier.all_below_names):
            return False
    return True


# -- specialization, closure, interior ---------------------------------------


def specialization_leq(space: Space, x: Point, y: Point) -> bool:
    """y is below x when y lies in the closure of {x}; computed from the
    opens on finite spaces and equal to the carrier order on intrinsic ones."""
    carrier = space.carrier
    carrier.check_point(x)
    carrier.check_point(y)
    if isinstance(carrier, FiniteCarrier):
        spec = _finite_specialization_masks(space)
        return bool(spec[carrier.index(x)] >> carrier.index(y) & 1)
    if isinstance(carrier, CountableAntichain):
        return x == y
    return carrier.leq(x, y)


def space_order(space: Space) -> Carrier:
    """The specialization order of the space as a carrier; all order-side
    operations in space contexts run over this."""
    carrier = space.carrier
    if isinstance(space.topology, WeaklyIrreducible):
        return space_order(space.topology.base)
    return carrier


def closure(space: Space, a: SetExpr) -> SetExpr:
    carrier = space.carrier
    if isinstance(carrier, FiniteCarrier):
        mask = carrier.mask_of(a.names)
        best = (1 << carrier.n) - 1
        for u in _finite_opens_masks(space):
            closed = (1 << carrier.n) - 1 & ~u
            if mask & ~closed == 0:
                best &= closed
        return SetExpr(carrier.names_of(best))
    if isinstance(carrier, CountableAntichain):
        return a if a.is_finite else whole(carrier)
    topo = space.topology
    if isinstance(topo, Alexandroff):
        return down_closure(carrier, a)
    if isinstance(topo, UpperTopology):
        c = down_closure(carrier, a)
        if c.tail is None:
            return c
        bad = [q for q in frozenset(carrier.names) - c.names
               if all(carrier.leq(q, y) for y in carrier.all_below_names)]
        if bad:
            return whole(carrier)
        return c
    raise UnsupportedCombination(
        f"closure for {type(topo).__name__} on this carrier is not available"
    )


def interior(space: Space, a: SetExpr) -> SetExpr:
    carrier = space.carrier
    if isinstance(carrier, FiniteCarrier):
        mask = carrier.mask_of(a.names)
        acc = 0
        for u in _finite_opens_masks(space):
            if u & ~mask == 0:
                acc |= u
        return SetExpr(carrier.names_of(acc))
    return complement(carrier, closure(space, complement(carrier, a)))


# -- irreducibility -----------------------------------------------------------


def is_irreducible(space: Space, e: SetExpr) -> bool:
    """Irreducibility via the open-set form: every two opens meeting the set
    share a point inside it."""
    if e.is_empty:
        raise EmptySet("irreducibility is defined for nonempty sets")
    carrier = space.carrier
    if isinstance(carrier, FiniteCarrier):
        opens = _finite_opens_masks(space)
        mask = carrier.mask_of(e.names)
        meeting = [u for u in opens if u & mask]
        return all(u & v & mask for u in meeting for v in meeting)
    if isinstance(carrier, CountableAntichain):
        if not isinstance(space.topology, Cofinite):
            raise UnsupportedCombination("irreducibility needs the cofinite table here")
        return e.is_cofinite or len(e.indices) == 1
    if isinstance(carrier, OmegaGlued) and isinstance(space.topology, Alexandroff):
        return is_directed(carrier, e)
    raise UnsupportedCombination(
        "symbolic irreducibility is tabulated for the Alexandroff topology only"
    )


def irreducible_sets(space: Space) -> tuple:
    """All irreducible subsets of a finite space, deterministically ordered."""
    carrier = space.carrier
    if not isinstance(carrier, FiniteCarrier):
        raise UnsupportedCombination("irreducible-set enumeration needs a finite carrier")
    out = []
    for names in _nonempty_subsets(carrier.elements):
        e = SetExpr(frozenset(names))
        if is_irreducible(space, e):
            out.append(e)
    return tuple(out)


def _nonempty_subsets(elements):
    elements = sorted(elements)
    for size in range(1, len(elements) + 1):
        yield from itertools.combinations(elements, size)
