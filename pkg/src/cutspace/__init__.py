"""cutspace: decision procedures for cut-based way-below relations, weakly
irreducible topologies and net convergence on finitely presented T0 spaces."""

from .carriers import (
    ABOVE_ALL,
    ABOVE_PREFIX,
    BELOW_INDEX,
    INCOMPARABLE,
    Attachment,
    CountableAntichain,
    FiniteCarrier,
    OmegaGlued,
    Point,
    leq,
)
from .sets import (
    EMPTY,
    Convention,
    SetExpr,
    cut,
    down_closure,
    is_directed,
    is_directed_family,
    lower_bounds,
    member,
    rudin_witness,
    se,
    se_cofinite,
    se_points,
    se_tail,
    up_closure,
    upper_bounds,
    whole,
)

__version__ = "0.1.0"
