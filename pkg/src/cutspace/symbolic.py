"""Shape analysis for directed subsets of an omega-glued carrier.

Every directed subset D of the carrier is either finite (and then has a top,
so for cut purposes it behaves like a singleton) or contains an infinite set
of chain points C together with a finite name part N.  For the infinite
shape:

* the upper bounds of D are ``all_below_names & upper-bounds(N)`` (only a
  name above the whole chain can bound an unbounded C),
* N must be compatible with an unbounded chain: every pair in N needs an
  upper bound inside N or chain access for both members, and every member
  needs chain access or a name above it in N that dominates the chain.

The functions here enumerate those N shapes and their cuts; they are the
single source of truth for all symbolic quantifiers over directed sets
(equivalently, over irreducible sets of the Alexandroff topology).
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Optional

from .carriers import OmegaGlued
from .sets import (
    EMPTY,
    Convention,
    SetExpr,
    inter,
    inter_all,
    lower_bounds,
    member,
    se_points,
    up_point,
    whole,
)


def has_chain_access(carrier: OmegaGlued, name: str) -> bool:
    """True when the element sits below some chain point."""
    return carrier.up_from[name] is not None


def chain_compatible(carrier: OmegaGlued, names: frozenset) -> bool:
    """Can ``names`` join an unbounded set of chain points in one directed set?"""
    for f in names:
        if has_chain_access(carrier, f):
            continue
        if not any(carrier.leq(f, g) and carrier.down_all[g] for g in names):
            return False
    for f, g in itertools.combinations(names, 2):
        if has_chain_access(carrier, f) and has_chain_access(carrier, g):
            continue
        if not any(carrier.leq(f, z) and carrier.leq(g, z) for z in names):
            return False
    return True


def chain_compatible_subsets(
    carrier: OmegaGlued, pool: Iterable[str]
) -> Iterator[frozenset]:
    pool = sorted(pool)
    for size in range(len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            names = frozenset(combo)
            if chain_compatible(carrier, names):
                yield names


def infinite_shape_upper_bounds(carrier: OmegaGlued, names: frozenset) -> SetExpr:
    parts = [SetExpr(carrier.all_below_names)]
    parts.extend(up_point(carrier, f) for f in names)
    return inter_all(carrier, parts)


def infinite_shape_cut(
    carrier: OmegaGlued, names: frozenset, convention: Convention
) -> SetExpr:
    ub = infinite_shape_upper_bounds(carrier, names)
    if ub.is_empty:
        return whole(carrier) if convention is Convention.STANDARD else EMPTY
    return lower_bounds(carrier, ub)


def directed_quantifier_holds(
    carrier: OmegaGlued,
    convention: Convention,
    hypothesis_meets,
    conclusion_tail: bool,
    conclusion_names: SetExpr,
) -> bool:
    """Truth of: for every directed D, hypothesis(D^delta) implies D meets a
    target upper set.

    ``hypothesis_meets(cut_expr)`` decides whether the hypothesis holds for a
    directed set with the given cut.  The conclusion is described by the
    target's shape: ``conclusion_tail`` says the target contains a chain
    tail (every infinite shape then meets it); ``conclusion_names`` is the
    target's name part (an infinite shape N meets it iff N does).

    Finite shapes must be handled by the caller; this function only runs the
    infinite-chain shapes.
    """
    if conclusion_tail:
        return True
    pool = frozenset(carrier.names) - conclusion_names.names
    for names in chain_compatible_subsets(carrier, pool):
        cut_expr = infinite_shape_cut(carrier, names, convention)
        if hypothesis_meets(cut_expr):
            return False
    return True
