"""Finitely presented subsets of a carrier and the order operations on them.

A ``SetExpr`` is one of:

* a finite set of finite-part names plus a finite set of chain indices,
* the same plus a chain tail ``{c_i : i >= tail}``,
* on the countable antichain, the complement of a finite index set.

The class is closed under union, intersection and complement on every
carrier, and under up/down closure, bound operators and cuts; equality of
canonical forms is set equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from .carriers import (
    Carrier,
    CountableAntichain,
    FiniteCarrier,
    OmegaGlued,
    Point,
    point_key,
    fmt_point,
)
from .errors import (
    EmptyFamily,
    InternalCheckFailure,
    NotDirectedFamily,
    UnsupportedCombination,
    ValidationError,
)


class Convention(Enum):
    """Value of A^delta when A has no upper bounds: the literal reading keeps
    the whole carrier, the empty reading collapses to the empty set."""

    STANDARD = "standard"
    EMPTY = "empty"


@dataclass(frozen=True)
class SetExpr:
    names: frozenset = frozenset()
    indices: frozenset = frozenset()
    tail: Optional[int] = None
    co_excluded: Optional[frozenset] = None

    def __post_init__(self):
        names = frozenset(self.names)
        indices = frozenset(self.indices)
        tail = self.tail
        if self.co_excluded is not None:
            if names or indices or tail is not None:
                raise ValidationError("cofinite sets cannot carry name or chain parts")
            object.__setattr__(self, "co_excluded", frozenset(self.co_excluded))
            return
        if tail is not None:
            indices = frozenset(i for i in indices if i < tail)
            while tail - 1 in indices:
                tail -= 1
                indices = indices - {tail}
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "tail", tail)

    # -- structure ---------------------------------------------------------

    @property
    def is_cofinite(self) -> bool:
        return self.co_excluded is not None

    @property
    def is_finite(self) -> bool:
        return self.tail is None and self.co_excluded is None

    @property
    def is_empty(self) -> bool:
        return (
            not self.names
            and not self.indices
            and self.tail is None
            and self.co_excluded is None
        )

    @property
    def has_chain_part(self) -> bool:
        return bool(self.indices) or self.tail is not None

    def min_chain_index(self) -> Optional[int]:
        cands = list(self.indices)
        if self.tail is not None:
            cands.append(self.tail)
        return min(cands) if cands else None

    def max_finite_index(self) -> Optional[int]:
        return max(self.indices) if self.indices else None

    def finite_points(self) -> list[Point]:
        """The points of a finite SetExpr, deterministically ordered."""
        if not self.is_finite:
            raise ValidationError("set is not finite")
        return sorted(self.names, ) + sorted(self.indices)

    def __repr__(self):
        if self.co_excluded is not None:
            inner = ",".join(fmt_point(i) for i in sorted(self.co_excluded))
            return f"{{all but {inner}}}" if self.co_excluded else "{all}"
        bits = [fmt_point(p) for p in sorted(self.names)]
        bits += [fmt_point(i) for i in sorted(self.indices)]
        if self.tail is not None:
            bits.append(f"c{self.tail}..")
        return "{" + ",".join(bits) + "}"


EMPTY = SetExpr()


def se(*points: Point) -> SetExpr:
    """Finite SetExpr from literal points."""
    return se_points(points)


def se_points(points: Iterable[Point]) -> SetExpr:
    names, indices = set(), set()
    for p in points:
        (names if isinstance(p, str) else indices).add(p)
    return SetExpr(frozenset(names), frozenset(indices))


def se_tail(start: int, extra: Iterable[Point] = ()) -> SetExpr:
    base = se_points(extra)
    return SetExpr(base.names, base.indices, start)


def se_cofinite(excluded: Iterable[int]) -> SetExpr:
    return SetExpr(co_excluded=frozenset(excluded))


def whole(carrier: Carrier) -> SetExpr:
    if isinstance(carrier, FiniteCarrier):
        return SetExpr(frozenset(carrier.elements))
    if isinstance(carrier, OmegaGlued):
        return SetExpr(frozenset(carrier.names), tail=0)
    return se_cofinite(())


def validate_set(carrier: Carrier, a: SetExpr) -> None:
    if isinstance(carrier, FiniteCarrier):
        if a.has_chain_part or a.is_cofinite:
            raise ValidationError("finite carriers have no chain or cofinite sets")
        for nm in a.names:
            carrier.check_point(nm)
    elif isinstance(carrier, OmegaGlued):
        if a.is_cofinite:
            raise ValidationError("cofinite sets only exist on the countable antichain")
        for nm in a.names:
            carrier.check_point(nm)
    else:
        if a.names or a.tail is not None:
            raise ValidationError(
                "antichain sets are finite index sets or cofinite complements"
            )


def member(carrier: Carrier, a: SetExpr, p: Point) -> bool:
    carrier.check_point(p)
    if a.co_excluded is not None:
        return isinstance(p, int) and p not in a.co_excluded
    if isinstance(p, str):
        return p in a.names
    return p in a.indices or (a.tail is not None and p >= a.tail)


# -- boolean algebra -------------------------------------------------------


def union(carrier: Carrier, a: SetExpr, b: SetExpr) -> SetExpr:
    if a.co_excluded is not None or b.co_excluded is not None:
        if a.co_excluded is not None and b.co_excluded is not None:
            return se_cofinite(a.co_excluded & b.co_excluded)
        co, fin = (a, b) if a.co_excluded is not None else (b, a)
        return se_cofinite(co.co_excluded - fin.indices)
    tails = [t for t in (a.tail, b.tail) if t is not None]
    return SetExpr(a.names | b.names, a.indices | b.indices, min(tails) if tails else None)


def inter(carrier: Carrier, a: SetExpr, b: SetExpr) -> SetExpr:
    if a.co_excluded is not None or b.co_excluded is not None:
        if a.co_excluded is not None and b.co_excluded is not None:
            return se_cofinite(a.co_excluded | b.co_excluded)
        co, fin = (a, b) if a.co_excluded is not None else (b, a)
        return SetExpr(indices=fin.indices - co.co_excluded)
    names = a.names & b.names
    idx = set(a.indices & b.indices)
    if a.tail is not None:
        idx |= {i for i in b.indices if i >= a.tail}
    if b.tail is not None:
        idx |= {i for i in a.indices if i >= b.tail}
    tail = None
    if a.tail is not None and b.tail is not None:
        tail = max(a.tail, b.tail)
    return SetExpr(names, frozenset(idx), tail)


def complement(carrier: Carrier, a: SetExpr) -> SetExpr:
    if isinstance(carrier, CountableAntichain):
        if a.co_excluded is not None:
            return SetExpr(indices=a.co_excluded)
        return se_cofinite(a.indices)
    names = frozenset(
        carrier.elements if isinstance(carrier, FiniteCarrier) else carrier.names
    ) - a.names
    if isinstance(carrier, FiniteCarrier):
        return SetExpr(names)
    if a.tail is None:
        top = max(a.indices) if a.indices else -1
        idx = frozenset(i for i in range(top + 1) if i not in a.indices)
        return SetExpr(names, idx, top + 1)
    idx = frozenset(i for i in range(a.tail) if i not in a.indices)
    return SetExpr(names, idx, None)


def difference(carrier: Carrier, a: SetExpr, b: SetExpr) -> SetExpr:
    return inter(carrier, a, complement(carrier, b))


def subset(carrier: Carrier, a: SetExpr, b: SetExpr) -> bool:
    return difference(carrier, a, b).is_empty


def inter_all(carrier: Carrier, parts: Sequence[SetExpr]) -> SetExpr:
    acc = whole(carrier)
    for p in parts:
        acc = inter(carrier, acc, p)
    return acc


# -- principal closures ----------------------------------------------------


def up_point(carrier: Carrier, p: Point) -> SetExpr:
    carrier.check_point(p)
    if isinstance(carrier, FiniteCarrier):
        return SetExpr(carrier.names_of(carrier.up_masks[carrier.index(p)]))
    if isinstance(carrier, CountableAntichain):
        return se(p)
    if isinstance(p, str):
        return SetExpr(carrier.ff_up(p), tail=carrier.up_from[p])
    names = frozenset(
        g for g in carrier.names
        if carrier.down_all[g]
        or (carrier.down_upto[g] is not None and carrier.down_upto[g] >= p)
    )
    return SetExpr(names, tail=p)


def down_point(carrier: Carrier, p: Point) -> SetExpr:
    carrier.check_point(p)
    if isinstance(carrier, FiniteCarrier):
        return SetExpr(carrier.names_of(carrier.down_masks[carrier.index(p)]))
    if isinstance(carrier, CountableAntichain):
        return se(p)
    if isinstance(p, str):
        names = frozenset(g for g in carrier.names if carrier.leq(g, p))
        if carrier.down_all[p]:
            return SetExpr(names, tail=0)
        m = carrier.down_upto[p]
        idx = frozenset(range(m + 1)) if m is not None else frozenset()
        return SetExpr(names, idx)
    names = frozenset(
        g for g in carrier.names
        if carrier.up_from[g] is not None and carrier.up_from[g] <= p
    )
    return SetExpr(names, frozenset(range(p + 1)))


def up_closure(carrier: Carrier, a: SetExpr) -> SetExpr:
    validate_set(carrier, a)
    if isinstance(carrier, CountableAntichain):
        return a
    if isinstance(carrier, FiniteCarrier):
        m = 0
        for nm in a.names:
            m |= carrier.up_masks[carrier.index(nm)]
        return SetExpr(carrier.names_of(m))
    names = set()
    for f in a.names:
        names |= carrier.ff_up(f)
    lo = a.min_chain_index()
    if lo is not None:
        for g in carrier.names:
            if carrier.down_all[g] or (
                carrier.down_upto[g] is not None and carrier.down_upto[g] >= lo
            ):
                names.add(g)
    tails = [t for t in (a.tail,) if t is not None]
    if a.indices:
        tails.append(min(a.indices))
    tails += [
        carrier.up_from[f] for f in a.names if carrier.up_from[f] is not None
    ]
    return SetExpr(frozenset(names), tail=min(tails) if tails else None)


def down_closure(carrier: Carrier, a: SetExpr) -> SetExpr:
    validate_set(carrier, a)
    if isinstance(carrier, CountableAntichain):
        return a
    if isinstance(carrier, FiniteCarrier):
        m = 0
        for nm in a.names:
            m |= carrier.down_masks[carrier.index(nm)]
        return SetExpr(carrier.names_of(m))
    names = set()
    for f in a.names:
        for g in carrier.names:
            if carrier.leq(g, f):
                names.add(g)
    hi = a.max_finite_index()
    for g in carrier.names:
        k = carrier.up_from[g]
        if k is None:
            continue
        if a.tail is not None or (hi is not None and hi >= k):
            names.add(g)
    idx: set[int] = set()
    tail = None
    if a.tail is not None:
        tail = 0
    else:
        if hi is not None:
            idx |= set(range(hi + 1))
        for f in a.names:
            if carrier.down_all[f]:
                tail = 0
            elif carrier.down_upto[f] is not None:
                idx |= set(range(carrier.down_upto[f] + 1))
    return SetExpr(frozenset(names), frozenset(idx), tail)


def is_upper(carrier: Carrier, a: SetExpr) -> bool:
    return up_closure(carrier, a) == a if not a.is_cofinite else True


def is_lower(carrier: Carrier, a: SetExpr) -> bool:
    return down_closure(carrier, a) == a if not a.is_cofinite else True


# -- bounds and cuts -------------------------------------------------------


def upper_bounds(carrier: Carrier, a: SetExpr) -> SetExpr:
    validate_set(carrier, a)
    if a.is_empty:
        return whole(carrier)
    if isinstance(carrier, CountableAntichain):
        if a.co_excluded is not None:
            return EMPTY
        if len(a.indices) == 1:
            return a
        return EMPTY
    if isinstance(carrier, FiniteCarrier):
        m = (1 << carrier.n) - 1
        for nm in a.names:
            m &= carrier.up_masks[carrier.index(nm)]
        return SetExpr(carrier.names_of(m))
    parts = [up_point(carrier, f) for f in a.names]
    if a.tail is not None:
        parts.append(SetExpr(carrier.all_below_names))
    elif a.indices:
        parts.append(up_point(carrier, max(a.indices)))
    return inter_all(carrier, parts)


def lower_bounds(carrier: Carrier, a: SetExpr) -> SetExpr:
    validate_set(carrier, a)
    if a.is_empty:
        return whole(carrier)
    if isinstance(carrier, CountableAntichain):
        return upper_bounds(carrier, a)
    if isinstance(carrier, FiniteCarrier):
        m = (1 << carrier.n) - 1
        for nm in a.names:
            m &= carrier.down_masks[carrier.index(nm)]
        return SetExpr(carrier.names_of(m))
    parts = [down_point(carrier, f) for f in a.names]
    if a.tail is not None:
        names = frozenset(
            g for g in carrier.names
            if carrier.up_from[g] is not None and carrier.up_from[g] <= a.tail
        )
        parts.append(SetExpr(names, frozenset(range(a.tail + 1))))
    elif a.indices:
        parts.append(down_point(carrier, min(a.indices)))
    return inter_all(carrier, parts)


def cut(carrier: Carrier, a: SetExpr, convention: Convention = Convention.STANDARD) -> SetExpr:
    """Lower bounds of the upper bounds of ``a``; the convention names the
    branch taken when ``a`` has no upper bounds at all."""
    ub = upper_bounds(carrier, a)
    if ub.is_empty and convention is Convention.EMPTY:
        return EMPTY
    return lower_bounds(carrier, ub)


# -- directedness ----------------------------------------------------------


def _pair_ub_within(carrier: OmegaGlued, a: SetExpr, x: Point, y: Point) -> bool:
    for z in a.names:
        if carrier.leq(x, z) and carrier.leq(y, z):
            return True
    lo = 0
    for p in (x, y):
        if isinstance(p, int):
            lo = max(lo, p)
        else:
            k = carrier.up_from[p]
            if k is None:
                return False
            lo = max(lo, k)
    if a.tail is not None:
        return True
    return any(i >= lo for i in a.indices)


def is_directed(carrier: Carrier, a: SetExpr) -> bool:
    """Nonempty, and every pair of members has an upper bound in the set."""
    validate_set(carrier, a)
    if a.is_empty:
        return False
    if isinstance(carrier, CountableAntichain):
        return a.co_excluded is None and len(a.indices) == 1
    if isinstance(carrier, FiniteCarrier):
        pts = sorted(a.names)
        masks = [carrier.up_masks[carrier.index(p)] for p in pts]
        amask = carrier.mask_of(pts)
        return all(mi & mj & amask for mi in masks for mj in masks)
    core: list[Point] = sorted(a.names) + sorted(a.indices)
    for x, y in itertools.combinations_with_replacement(core, 2):
        if not _pair_ub_within(carrier, a, x, y):
            return False
    if a.tail is not None:
        for p in core:
            if isinstance(p, int) or carrier.up_from[p] is not None:
                continue
            if not any(
                carrier.leq(p, g) and carrier.down_all[g] for g in a.names
            ):
                return False
    return True


def is_directed_family(carrier: Carrier, fam: Sequence[SetExpr]) -> bool:
    """Directedness of a family of finite nonempty sets under
    ``G1 <= G  iff  G is contained in the up-closure of G1``."""
    if not fam:
        raise EmptyFamily("a directed family needs at least one member")
    ups = []
    for f in fam:
        if not f.is_finite or f.is_empty:
            raise ValidationError("family members must be finite and nonempty")
        ups.append(up_closure(carrier, f))
    for u1, u2 in itertools.combinations_with_replacement(ups, 2):
        bound = inter(carrier, u1, u2)
        if not any(subset(carrier, g, bound) for g in fam):
            return False
    return True


def rudin_witness(carrier: FiniteCarrier, fam: Sequence[SetExpr]) -> SetExpr:
    """A directed set inside the union of a directed family of finite sets
    that meets every member.  Exhaustive search, smallest witness first with
    a lexicographic tie-break."""
    if not isinstance(carrier, FiniteCarrier):
        raise UnsupportedCombination("Rudin witnesses are computed on finite carriers")
    if not fam:
        raise EmptyFamily("a directed family needs at least one member")
    for f in fam:
        if not f.is_finite or f.is_empty:
            raise ValidationError("family members must be finite and nonempty")
    pool = sorted(set().union(*(f.names for f in fam)))
    for size in range(1, len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            d = se_points(combo)
            if not is_directed(carrier, d):
                continue
            if all(not inter(carrier, d, f).is_empty for f in fam):
                return d
    if not is_directed_family(carrier, fam):
        raise NotDirectedFamily("no witness: the family is not directed")
    raise InternalCheckFailure("directed family without a Rudin witness")
