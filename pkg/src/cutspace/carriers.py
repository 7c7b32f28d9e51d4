"""Point carriers: finite posets, an omega-chain glued to a finite poset,
and the countable antichain.

Points are plain values: a ``str`` names an element of the finite part, an
``int`` is a chain index (or an antichain index).  Orders are stored as their
reflexive-transitive closure so ``leq`` is a table lookup.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .errors import UnknownElement, ValidationError

Point = Union[str, int]

ABOVE_ALL = "aboveAll"
ABOVE_PREFIX = "abovePrefix"
BELOW_INDEX = "belowIndex"
INCOMPARABLE = "incomparable"

_CHAIN_NAME = re.compile(r"^c[0-9]+$")


def point_key(p: Point):
    """Deterministic sort key: finite names lexicographically, then chain
    points by index."""
    if isinstance(p, str):
        return (0, p)
    return (1, p)


def fmt_point(p: Point) -> str:
    return p if isinstance(p, str) else f"c{p}"


@dataclass(frozen=True)
class Attachment:
    """How one finite element relates to the glued chain."""

    kind: str
    index: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (ABOVE_ALL, ABOVE_PREFIX, BELOW_INDEX, INCOMPARABLE):
            raise ValidationError(f"unknown attachment kind {self.kind!r}")
        needs_index = self.kind in (ABOVE_PREFIX, BELOW_INDEX)
        if needs_index and (self.index is None or self.index < 0):
            raise ValidationError(f"attachment {self.kind} needs a natural index")
        if not needs_index and self.index is not None:
            raise ValidationError(f"attachment {self.kind} takes no index")


class FiniteCarrier:
    """A finite poset over named elements.

    ``pairs`` is the full reflexive-transitive closure, validated to be a
    partial order.
    """

    def __init__(self, elements: Iterable[str], pairs: Iterable[tuple[str, str]]):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise ValidationError("duplicate element names")
        for e in elements:
            if not isinstance(e, str) or not e:
                raise ValidationError(f"bad element name {e!r}")
        self.elements = elements
        self._index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        up = [0] * n
        for a, b in pairs:
            if a not in self._index or b not in self._index:
                raise ValidationError(f"order pair ({a!r}, {b!r}) uses unknown elements")
            up[self._index[a]] |= 1 << self._index[b]
        for i in range(n):
            up[i] |= 1 << i
        # Warshall closure.
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = up[i]
                m = acc
                while m:
                    j = (m & -m).bit_length() - 1
                    m &= m - 1
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        for i in range(n):
            for j in range(n):
                if i != j and up[i] >> j & 1 and up[j] >> i & 1:
                    raise ValidationError(
                        f"antisymmetry fails: {elements[i]} <= {elements[j]} <= {elements[i]}"
                    )
        self.up_masks = tuple(up)
        down = [0] * n
        for i in range(n):
            for j in range(n):
                if up[j] >> i & 1:
                    down[i] |= 1 << j
        self.down_masks = tuple(down)
        self._pairs = frozenset(
            (elements[i], elements[j]) for i in range(n) for j in range(n) if up[i] >> j & 1
        )

    @property
    def n(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"no element named {name!r}") from None

    def check_point(self, p: Point) -> None:
        if not isinstance(p, str) or p not in self._index:
            raise UnknownElement(f"{p!r} is not a point of this finite carrier")

    def leq(self, x: str, y: str) -> bool:
        return bool(self.up_masks[self.index(x)] >> self.index(y) & 1)

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for nm in names:
            m |= 1 << self.index(nm)
        return m

    def names_of(self, mask: int) -> frozenset[str]:
        return frozenset(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteCarrier)
            and self.elements == other.elements
            and self._pairs == other._pairs
        )

    def __hash__(self):
        return hash((self.elements, self._pairs))

    def __repr__(self):
        covers = []
        n = self.n
        for i in range(n):
            for j in range(n):
                if i != j and self.up_masks[i] >> j & 1:
                    between = self.up_masks[i] & self.down_masks[j] & ~(1 << i) & ~(1 << j)
                    if not between:
                        covers.append(f"{self.elements[i]}<{self.elements[j]}")
        return f"FiniteCarrier({','.join(self.elements)}; {','.join(covers)})"


class OmegaGlued:
    """A finite poset glued to the omega chain c_0 < c_1 < ... .

    Each finite element carries one attachment constraint; the stored tables
    are the closure of the generating relations:

    * ``up_from[f]``   least k with f <= c_i for every i >= k (None: never)
    * ``down_all[f]``  c_i <= f for every i
    * ``down_upto[f]`` greatest m with c_i <= f for every i <= m (None: never)
    """

    def __init__(self, finite: FiniteCarrier, attachments: Mapping[str, Attachment]):
        self.finite = finite
        for name in finite.elements:
            if _CHAIN_NAME.match(name):
                raise ValidationError(f"finite name {name!r} is reserved for chain points")
        attach = {}
        for name, att in attachments.items():
            finite.check_point(name)
            attach[name] = att
        for name in finite.elements:
            attach.setdefault(name, Attachment(INCOMPARABLE))
        self.attachments = dict(sorted(attach.items()))

        up_from: dict[str, Optional[int]] = {}
        down_upto: dict[str, Optional[int]] = {}
        down_all: dict[str, bool] = {}
        for name, att in self.attachments.items():
            up_from[name] = att.index if att.kind == BELOW_INDEX else None
            down_upto[name] = att.index if att.kind == ABOVE_PREFIX else None
            down_all[name] = att.kind == ABOVE_ALL
        ff = {e: set(finite.names_of(finite.up_masks[finite.index(e)])) for e in finite.elements}

        changed = True
        while changed:
            changed = False
            for f in finite.elements:
                for g in ff[f]:
                    k = up_from[g]
                    if k is not None and (up_from[f] is None or up_from[f] > k):
                        up_from[f] = k
                        changed = True
                    if down_all[f] and not down_all[g]:
                        down_all[g] = True
                        changed = True
                    m = down_upto[f]
                    if m is not None and not down_all[g] and (
                        down_upto[g] is None or down_upto[g] < m
                    ):
                        down_upto[g] = m
                        changed = True
            for f in finite.elements:
                k = up_from[f]
                if k is None:
                    continue
                for g in finite.elements:
                    if g in ff[f]:
                        continue
                    if down_all[g] or (down_upto[g] is not None and down_upto[g] >= k):
                        ff[f].add(g)
                        changed = True

        for f in finite.elements:
            for g in ff[f]:
                if g != f and f in ff[g]:
                    raise ValidationError(f"antisymmetry fails between {f!r} and {g!r}")
            k = up_from[f]
            if k is not None:
                if down_all[f]:
                    raise ValidationError(f"{f!r} would sit both above and below the chain")
                m = down_upto[f]
                if m is not None and m >= k:
                    raise ValidationError(
                        f"{f!r} above c_{m} and below c_{k} forces a chain cycle"
                    )

        self.up_from = up_from
        self.down_upto = down_upto
        self.down_all = down_all
        self._ff_up = {f: frozenset(s) for f, s in ff.items()}
        self.all_below_names = frozenset(f for f in finite.elements if down_all[f])
        params = [0]
        for att in self.attachments.values():
            if att.index is not None:
                params.append(att.index)
        self.max_param = max(params)

    @property
    def names(self) -> tuple[str, ...]:
        return self.finite.elements

    def check_point(self, p: Point) -> None:
        if isinstance(p, str):
            self.finite.check_point(p)
        elif isinstance(p, int):
            if p < 0:
                raise UnknownElement(f"negative chain index {p}")
        else:
            raise UnknownElement(f"{p!r} is not a point")

    def leq(self, x: Point, y: Point) -> bool:
        if isinstance(x, str) and isinstance(y, str):
            return y in self._ff_up[x]
        if isinstance(x, int) and isinstance(y, int):
            return x <= y
        if isinstance(x, str):
            k = self.up_from[x]
            return k is not None and y >= k
        return self.down_all[y] or (self.down_upto[y] is not None and x <= self.down_upto[y])

    def ff_up(self, name: str) -> frozenset[str]:
        return self._ff_up[name]

    def truncate(self, n: int) -> FiniteCarrier:
        """Restrict the chain to c_0 .. c_{n-1}; attachments with parameters
        beyond the cut keep only their in-range consequences."""
        if n < 1:
            raise ValidationError("truncation needs at least one chain point")
        chain = [f"c{i}" for i in range(n)]
        elements = tuple(self.names) + tuple(chain)
        pairs = []
        for f in self.names:
            for g in self._ff_up[f]:
                pairs.append((f, g))
            k = self.up_from[f]
            if k is not None and k <= n - 1:
                pairs.append((f, f"c{k}"))
            if self.down_all[f]:
                pairs.append((f"c{n - 1}", f))
            elif self.down_upto[f] is not None:
                m = min(self.down_upto[f], n - 1)
                pairs.append((f"c{m}", f))
        for i in range(n - 1):
            pairs.append((f"c{i}", f"c{i + 1}"))
        return FiniteCarrier(elements, pairs)

    def __eq__(self, other):
        return (
            isinstance(other, OmegaGlued)
            and self.finite == other.finite
            and self.attachments == other.attachments
        )

    def __hash__(self):
        return hash((self.finite, tuple(sorted(self.attachments.items(), key=lambda kv: kv[0]))))

    def __repr__(self):
        atts = ", ".join(f"{n} {a.kind}{'' if a.index is None else f'({a.index})'}"
                         for n, a in self.attachments.items())
        return f"OmegaGlued({self.finite!r}; {atts})"


class CountableAntichain:
    """Countably many pairwise-incomparable points, indexed by naturals."""

    def check_point(self, p: Point) -> None:
        if not isinstance(p, int) or p < 0:
            raise UnknownElement(f"{p!r} is not an antichain point (natural index expected)")

    def leq(self, x: Point, y: Point) -> bool:
        self.check_point(x)
        self.check_point(y)
        return x == y

    def __eq__(self, other):
        return isinstance(other, CountableAntichain)

    def __hash__(self):
        return hash(CountableAntichain)

    def __repr__(self):
        return "CountableAntichain()"


Carrier = Union[FiniteCarrier, OmegaGlued, CountableAntichain]


def leq(carrier: Carrier, x: Point, y: Point) -> bool:
    """Truth of x <= y in the presented order."""
    carrier.check_point(x)
    carrier.check_point(y)
    return carrier.leq(x, y)
