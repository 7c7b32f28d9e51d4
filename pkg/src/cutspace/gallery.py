"""The built-in example instances: an omega chain with one extra point, the
countable cofinite space, and the chain-with-top-and-side-point carrier."""

from __future__ import annotations

from .carriers import (
    ABOVE_ALL,
    ABOVE_PREFIX,
    Attachment,
    CountableAntichain,
    FiniteCarrier,
    OmegaGlued,
)


def ex_omega_carrier() -> OmegaGlued:
    """Chain c_0 < c_1 < ... with one extra point ``a`` above c_0 only."""
    finite = FiniteCarrier(["a"], [])
    return OmegaGlued(finite, {"a": Attachment(ABOVE_PREFIX, 0)})


def ex_topz_carrier() -> OmegaGlued:
    """Chain c_0 < c_1 < ... plus a top above everything and a side point
    ``z`` below the top only."""
    finite = FiniteCarrier(["top", "z"], [("z", "top")])
    return OmegaGlued(finite, {"top": Attachment(ABOVE_ALL)})


def ex_antichain_carrier() -> CountableAntichain:
    return CountableAntichain()


def chain_carrier(*names: str) -> FiniteCarrier:
    pairs = [(names[i], names[i + 1]) for i in range(len(names) - 1)]
    return FiniteCarrier(names, pairs)


def v_carrier() -> FiniteCarrier:
    """bot < a and bot < b, with a and b incomparable."""
    return FiniteCarrier(["bot", "a", "b"], [("bot", "a"), ("bot", "b")])


def diamond_carrier() -> FiniteCarrier:
    return FiniteCarrier(
        ["bot", "a", "b", "top"],
        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )


def antichain_carrier(*names: str) -> FiniteCarrier:
    return FiniteCarrier(names, [])
