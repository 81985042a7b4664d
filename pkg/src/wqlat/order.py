"""Presentation-independent order machinery.

A :class:`Presentation` packages one positive cone P inside a group G with
the capability set used everywhere else: identity, multiplication, inverse,
positivity, the induced left-invariant order ``x <= y iff x^-1 y in P``,
a structural join where the family has one, and canonical strings.

On top of that sit finite balls (breadth-first closure of {e} under the
positive generators), a conservative brute-force join oracle, and the
weak-quasi-lattice violation scan.  The oracle is three-valued on purpose:
a finite ball can certify a least upper bound but never the absence of one.
"""

from __future__ import annotations

from typing import Any, Iterator, Sequence

import numpy as np

DEFAULT_RADIUS_CAP = 6

Element = Any


class PresentationError(ValueError):
    """Misuse of a presentation: bad element, wrong cone, unsupported call."""


class BallCapExceeded(PresentationError):
    """Requested ball radius exceeds the configured cap."""


class ElementOutsideBall(PresentationError):
    """Oracle query for an element the ball does not contain."""


def check_radius_cap(radius: int, cap: int | None) -> None:
    if radius < 0:
        raise PresentationError("radius must be nonnegative")
    limit = DEFAULT_RADIUS_CAP if cap is None else cap
    if radius > limit:
        raise BallCapExceeded(f"radius {radius} exceeds cap {limit}")


class JoinResult:
    """Outcome of a least-upper-bound computation.

    ``finite(j)`` carries the join, ``infinite()`` certifies that no common
    upper bound exists, and ``inconclusive_within(r)`` records that a search
    bounded by radius r could not decide either way.
    """

    FINITE = "finite"
    INFINITE = "infinite"
    INCONCLUSIVE = "inconclusive"

    __slots__ = ("kind", "value", "radius")

    def __init__(self, kind: str, value: Element = None, radius: int | None = None):
        self.kind = kind
        self.value = value
        self.radius = radius

    @classmethod
    def finite(cls, value: Element) -> "JoinResult":
        return cls(cls.FINITE, value=value)

    @classmethod
    def infinite(cls) -> "JoinResult":
        return cls(cls.INFINITE)

    @classmethod
    def inconclusive_within(cls, radius: int) -> "JoinResult":
        return cls(cls.INCONCLUSIVE, radius=radius)

    @property
    def is_finite(self) -> bool:
        return self.kind == self.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind == self.INFINITE

    @property
    def is_inconclusive(self) -> bool:
        return self.kind == self.INCONCLUSIVE

    def __eq__(self, other):
        return (
            isinstance(other, JoinResult)
            and self.kind == other.kind
            and self.value == other.value
        )

    def __hash__(self):
        return hash((self.kind, self.value))

    def __repr__(self):
        if self.is_finite:
            return f"Finite({self.value!r})"
        if self.is_infinite:
            return "Infinite"
        return f"InconclusiveWithinBall({self.radius})"

    def describe(self, pres: "Presentation") -> str:
        if self.is_finite:
            return f"finite {pres.canonical_str(self.value)}"
        if self.is_infinite:
            return "infinite"
        return f"inconclusive within ball {self.radius}"


class Presentation:
    """Capability set shared by every family in this project.

    Elements are immutable hashable values canonical within their family;
    all operations are pure, so presentations and their balls are safe to
    share across threads.
    """

    family = "abstract"
    name = "abstract"

    def identity(self) -> Element:
        raise NotImplementedError

    def mul(self, x: Element, y: Element) -> Element:
        raise NotImplementedError

    def inv(self, x: Element) -> Element:
        raise NotImplementedError

    def is_positive(self, x: Element) -> bool:
        raise NotImplementedError

    def join(self, x: Element, y: Element) -> JoinResult:
        raise NotImplementedError

    def canonical_str(self, x: Element) -> str:
        raise NotImplementedError

    def parse(self, text: str) -> Element:
        raise NotImplementedError

    def positive_generators(self) -> list[Element]:
        raise NotImplementedError

    def leq(self, x: Element, y: Element) -> bool:
        """Left-invariant order: x <= y iff x^-1 y is positive."""
        return self.is_positive(self.mul(self.inv(x), y))

    def equal(self, x: Element, y: Element) -> bool:
        return x == y

    def enumerate_ball(self, radius: int, cap: int | None = None) -> "Ball":
        """Breadth-first closure of {e} under right multiplication."""
        check_radius_cap(radius, cap)
        lengths: dict[Element, int] = {self.identity(): 0}
        frontier = [self.identity()]
        gens = self.positive_generators()
        for depth in range(1, radius + 1):
            new: list[Element] = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in lengths:
                        lengths[y] = depth
                        new.append(y)
            frontier = new
        return Ball.build(self, radius, lengths)


class Ball:
    """Finite ordered stand-in for P: all elements of generator length <= radius.

    Elements are sorted by (length, canonical string) so reports and indices
    are reproducible.  The identity sits at index 0.
    """

    def __init__(self, pres: Presentation, radius: int, elements: Sequence[Element], lengths: Sequence[int]):
        self.pres = pres
        self.radius = radius
        self.elements = tuple(elements)
        self.lengths = tuple(lengths)
        self.index = {el: i for i, el in enumerate(self.elements)}

    @classmethod
    def build(cls, pres: Presentation, radius: int, lengths: dict[Element, int]) -> "Ball":
        ordered = sorted(lengths, key=lambda el: (lengths[el], pres.canonical_str(el)))
        return cls(pres, radius, ordered, [lengths[el] for el in ordered])

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __contains__(self, el: Element) -> bool:
        return el in self.index

    def position(self, el: Element) -> int:
        try:
            return self.index[el]
        except KeyError:
            raise ElementOutsideBall(
                f"element {self.pres.canonical_str(el)} not in ball of radius {self.radius}"
            ) from None

    def indices_within(self, radius: int) -> list[int]:
        return [i for i, n in enumerate(self.lengths) if n <= radius]


class LeqTable:
    """Cached order relation over a ball, one lazily computed row per element."""

    def __init__(self, ball: Ball):
        self.ball = ball
        self.pres = ball.pres
        self._rows: dict[int, np.ndarray] = {}

    def row(self, i: int) -> np.ndarray:
        """Boolean vector of ``elements[i] <= elements[j]`` over the ball."""
        cached = self._rows.get(i)
        if cached is None:
            pres, els = self.pres, self.ball.elements
            x = els[i]
            cached = np.fromiter(
                (pres.leq(x, z) for z in els), dtype=bool, count=len(els)
            )
            self._rows[i] = cached
        return cached

    def leq(self, i: int, j: int) -> bool:
        return bool(self.row(i)[j])

    def upper_bounds(self, i: int, j: int) -> np.ndarray:
        return self.row(i) & self.row(j)

    def minimal_elements(self, indices: np.ndarray) -> list[int]:
        """Indices in ``indices`` with no other member strictly below them."""
        idx = list(np.flatnonzero(indices))
        out = []
        for z in idx:
            dominated = any(z2 != z and self.leq(z2, z) for z2 in idx)
            if not dominated:
                out.append(z)
        return out


def enumerate_ball(pres: Presentation, radius: int, cap: int | None = None) -> Ball:
    return pres.enumerate_ball(radius, cap=cap)


def oracle_join(
    pres: Presentation,
    x: Element,
    y: Element,
    ball: Ball,
    table: LeqTable | None = None,
) -> JoinResult:
    """Brute-force join over a ball, independent of any structural algorithm.

    Returns Finite(m) only when the ball contains a unique minimal common
    upper bound m that is below every other one; otherwise inconclusive.
    An empty candidate set is still inconclusive, never infinite.
    """
    table = table or LeqTable(ball)
    i, j = ball.position(x), ball.position(y)
    ubs = table.upper_bounds(i, j)
    if not ubs.any():
        return JoinResult.inconclusive_within(ball.radius)
    minimal = table.minimal_elements(ubs)
    if len(minimal) == 1:
        m = minimal[0]
        if all(table.leq(m, z) for z in np.flatnonzero(ubs)):
            return JoinResult.finite(ball.elements[m])
    return JoinResult.inconclusive_within(ball.radius)


def verify_join(
    pres: Presentation,
    x: Element,
    y: Element,
    j: Element,
    ball: Ball,
    table: LeqTable | None = None,
) -> bool:
    """Soundness harness: j is an upper bound of x, y minimal on the ball."""
    if not (pres.leq(x, j) and pres.leq(y, j)):
        return False
    table = table or LeqTable(ball)
    i1, i2 = ball.position(x), ball.position(y)
    jr = None
    if j in ball:
        jr = table.row(ball.position(j))
    for z in np.flatnonzero(table.upper_bounds(i1, i2)):
        if jr is not None:
            if not jr[z]:
                return False
        elif not pres.leq(j, ball.elements[z]):
            return False
    return True


def check_weak_ql(pres: Presentation, ball: Ball, table: LeqTable | None = None) -> list[dict]:
    """Scan all ball pairs for failures of the least-upper-bound property.

    A finding records a pair with at least two mutually incomparable minimal
    upper bounds in the ball and no ball element that is a common upper
    bound lying below both.  Findings are candidates only: the true join
    could live outside the ball.
    """
    table = table or LeqTable(ball)
    findings: list[dict] = []
    n = len(ball)
    for i in range(n):
        for j in range(i + 1, n):
            ubs = table.upper_bounds(i, j)
            if not ubs.any():
                continue
            minimal = table.minimal_elements(ubs)
            if len(minimal) < 2:
                continue
            witnesses = []
            ub_idx = list(np.flatnonzero(ubs))
            for a_pos in range(len(minimal)):
                for b_pos in range(a_pos + 1, len(minimal)):
                    m1, m2 = minimal[a_pos], minimal[b_pos]
                    if not any(table.leq(z, m1) and table.leq(z, m2) for z in ub_idx):
                        witnesses.append((m1, m2))
            if witnesses:
                findings.append(
                    {
                        "pair": sorted(
                            [pres.canonical_str(ball.elements[i]), pres.canonical_str(ball.elements[j])]
                        ),
                        "upper_bounds": sorted(
                            pres.canonical_str(ball.elements[m]) for m in minimal
                        ),
                        "classification": "violation candidate within ball",
                    }
                )
    findings.sort(key=lambda f: (f["pair"], f["upper_bounds"]))
    return findings


class IntGroup(Presentation):
    """(Z, N) with the usual order; joins are maxima and always exist."""

    family = "int"
    name = "int"

    def identity(self) -> int:
        return 0

    def mul(self, x: int, y: int) -> int:
        return x + y

    def inv(self, x: int) -> int:
        return -x

    def is_positive(self, x: int) -> bool:
        return x >= 0

    def join(self, x: int, y: int) -> JoinResult:
        return JoinResult.finite(max(x, y))

    def leq(self, x: int, y: int) -> bool:
        return x <= y

    def positive_generators(self) -> list[int]:
        return [1]

    def canonical_str(self, x: int) -> str:
        return str(x)

    def parse(self, text: str) -> int:
        return int(text)


class DirectSum(Presentation):
    """Componentwise direct sum of presentations, ordered componentwise.

    The join is the tuple of component joins; it is infinite as soon as one
    component join is, and inconclusive only if a component is.
    """

    family = "directsum"

    def __init__(self, parts: Sequence[Presentation]):
        self.parts = tuple(parts)
        self.name = "sum(" + ",".join(p.name for p in self.parts) + ")"

    def identity(self) -> tuple:
        return tuple(p.identity() for p in self.parts)

    def mul(self, x: tuple, y: tuple) -> tuple:
        return tuple(p.mul(a, b) for p, a, b in zip(self.parts, x, y))

    def inv(self, x: tuple) -> tuple:
        return tuple(p.inv(a) for p, a in zip(self.parts, x))

    def is_positive(self, x: tuple) -> bool:
        return all(p.is_positive(a) for p, a in zip(self.parts, x))

    def join(self, x: tuple, y: tuple) -> JoinResult:
        comps = []
        for p, a, b in zip(self.parts, x, y):
            r = p.join(a, b)
            if r.is_infinite:
                return JoinResult.infinite()
            if r.is_inconclusive:
                return r
            comps.append(r.value)
        return JoinResult.finite(tuple(comps))

    def leq(self, x: tuple, y: tuple) -> bool:
        return all(p.leq(a, b) for p, a, b in zip(self.parts, x, y))

    def positive_generators(self) -> list[tuple]:
        gens = []
        e = self.identity()
        for k, p in enumerate(self.parts):
            for g in p.positive_generators():
                gens.append(e[:k] + (g,) + e[k + 1:])
        return gens

    def canonical_str(self, x: tuple) -> str:
        return "(" + ", ".join(p.canonical_str(a) for p, a in zip(self.parts, x)) + ")"
