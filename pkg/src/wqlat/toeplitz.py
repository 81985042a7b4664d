"""Finite truncation of the left-regular representation on the cone.

The shift by a positive element acts on a ball as a partial injection of
indices; compositions, adjoints and range projections are computed exactly
as relations, so every identity in scope holds with no floating point.
Comparisons are restricted to a safe region, a smaller concentric ball on
which truncation cannot cut off the compositions under test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .controlled import Morphism
from .order import Ball, LeqTable, Presentation, PresentationError


class PartialInjection:
    """Injective partial self-map of ball indices."""

    __slots__ = ("size", "pairs", "_map")

    def __init__(self, size: int, mapping: dict[int, int]):
        self.size = size
        values = list(mapping.values())
        if len(set(values)) != len(values):
            raise ValueError("mapping is not injective")
        self._map = dict(mapping)
        self.pairs = tuple(sorted(self._map.items()))

    @classmethod
    def identity(cls, size: int) -> "PartialInjection":
        return cls(size, {i: i for i in range(size)})

    @classmethod
    def zero(cls, size: int) -> "PartialInjection":
        return cls(size, {})

    def __call__(self, i: int):
        return self._map.get(i)

    def domain(self) -> set[int]:
        return set(self._map)

    def image(self) -> set[int]:
        return set(self._map.values())

    def compose(self, other: "PartialInjection") -> "PartialInjection":
        """self after other (operator product: apply other first)."""
        out = {}
        for i, j in other.pairs:
            k = self._map.get(j)
            if k is not None:
                out[i] = k
        return PartialInjection(self.size, out)

    def adjoint(self) -> "PartialInjection":
        return PartialInjection(self.size, {j: i for i, j in self.pairs})

    def restrict(self, indices) -> "PartialInjection":
        keep = set(indices)
        return PartialInjection(self.size, {i: j for i, j in self.pairs if i in keep})

    def range_projection(self) -> "PartialInjection":
        return PartialInjection(self.size, {j: j for j in self._map.values()})

    def fixed_points(self) -> set[int]:
        return {i for i, j in self.pairs if i == j}

    def is_zero(self) -> bool:
        return not self._map

    def is_partial_identity(self) -> bool:
        return all(i == j for i, j in self.pairs)

    def __eq__(self, other):
        return (
            isinstance(other, PartialInjection)
            and self.size == other.size
            and self.pairs == other.pairs
        )

    def __hash__(self):
        return hash((self.size, self.pairs))

    def __repr__(self):
        return f"PartialInjection({dict(self.pairs)})"

    def to_dense(self) -> np.ndarray:
        """0/1 matrix export, rows indexed by output basis vectors."""
        out = np.zeros((self.size, self.size), dtype=np.int8)
        for i, j in self.pairs:
            out[j, i] = 1
        return out


@dataclass(frozen=True)
class SafeRegion:
    """Sub-ball of indices whose images under the operators stay in the ball."""

    radius: int
    indices: tuple

    @classmethod
    def of(cls, ball: Ball, radius: int) -> "SafeRegion":
        if radius > ball.radius:
            raise PresentationError("safe region cannot exceed the ball")
        return cls(radius, tuple(ball.indices_within(radius)))


def toeplitz_op(ball: Ball, x) -> PartialInjection:
    """Shift p -> x p wherever the product stays inside the ball."""
    pres = ball.pres
    if not pres.is_positive(x):
        raise PresentationError(f"element {pres.canonical_str(x)} is not positive")
    mapping = {}
    for i, p in enumerate(ball.elements):
        q = pres.mul(x, p)
        j = ball.index.get(q)
        if j is not None:
            mapping[i] = j
    return PartialInjection(len(ball), mapping)


def diagonal_expectation(op: PartialInjection) -> PartialInjection:
    """Keep only the fixed points: the compression onto the diagonal."""
    return PartialInjection(op.size, {i: i for i in op.fixed_points()})


def check_nica(
    pres: Presentation,
    x,
    y,
    ball: Ball,
    safe: SafeRegion,
    table: LeqTable | None = None,
) -> dict:
    """Covariance of the range projections of two positive shifts.

    Logical form: on every safe p, (x <= p and y <= p) holds exactly when
    the join is finite and below p.  Operator form: the product of range
    projections equals the range projection of the join (zero when the
    join is infinite), all restricted to the safe region.
    """
    join = pres.join(x, y)
    if join.is_inconclusive:
        return {"verdict": "inconclusive", "join": join}
    table = table or LeqTable(ball)
    ix, iy = ball.position(x), ball.position(y)
    above = table.upper_bounds(ix, iy)
    # The operator form needs every quotient z^-1 p (z a shift under test,
    # p a safe element above z) to stay inside the ball; otherwise the
    # adjoint truncates and the comparison is meaningless.
    shifts = [x, y] + ([join.value] if join.is_finite else [])
    for z in shifts:
        for p in safe.indices:
            el = ball.elements[p]
            if pres.leq(z, el) and pres.mul(pres.inv(z), el) not in ball.index:
                return {"verdict": "truncated", "join": join, "shift": z}
    logical_ok = True
    for p in safe.indices:
        lhs = bool(above[p])
        rhs = join.is_finite and pres.leq(join.value, ball.elements[p])
        if lhs != rhs:
            logical_ok = False
            break
    tx, ty = toeplitz_op(ball, x), toeplitz_op(ball, y)
    lhs_op = tx.compose(tx.adjoint()).compose(ty.compose(ty.adjoint())).restrict(safe.indices)
    if join.is_finite:
        tj = toeplitz_op(ball, join.value)
        rhs_op = tj.compose(tj.adjoint()).restrict(safe.indices)
    else:
        rhs_op = PartialInjection.zero(len(ball))
    operator_ok = lhs_op == rhs_op
    forms_agree = lhs_op.domain() == {p for p in safe.indices if above[p]}
    ok = logical_ok and operator_ok and forms_agree
    return {
        "verdict": "pass" if ok else "fail",
        "join": join,
        "logical_ok": logical_ok,
        "operator_ok": operator_ok,
        "forms_agree": forms_agree,
    }


def matrix_units_check(
    pres: Presentation,
    chains: list,
    n: int,
    ball: Ball,
    safe: SafeRegion,
) -> dict:
    """Matrix-unit relations for E_lr = T_{s_n^l} T_{s_n^r}^* on the safe region.

    ``chains`` lists (label, chain) pairs from a decreasing-chain witness;
    the relations E_lr E_l'r' = delta_{r l'} E_lr' follow from the classes
    having pairwise infinite joins.
    """
    ops = {}
    for label, chain in chains:
        s = chain(n)
        if not pres.is_positive(s):
            raise PresentationError("chain entries must be positive")
        t = toeplitz_op(ball, s)
        ops[label] = (t, t.adjoint())
    labels = [label for label, _ in chains]
    failures = []
    for l1 in labels:
        for r1 in labels:
            e1 = ops[l1][0].compose(ops[r1][1])
            for l2 in labels:
                for r2 in labels:
                    e2 = ops[l2][0].compose(ops[r2][1])
                    got = e1.compose(e2).restrict(safe.indices)
                    if r1 == l2:
                        want = ops[l1][0].compose(ops[r2][1]).restrict(safe.indices)
                    else:
                        want = PartialInjection.zero(len(ball))
                    if got != want:
                        failures.append((l1, r1, l2, r2))
    return {"ok": not failures, "failures": failures, "labels": labels, "n": n}


def spanning_product(pres: Presentation, mor: Morphism, p, q, r, s):
    """Normal form of the product of two spanning pairs (p,q*), (r,s*).

    Requires both pairs to sit in single fibers of the morphism.  Returns
    the new pair, or None when the middle join is infinite and the product
    vanishes.
    """
    if mor(p) != mor(q) or mor(r) != mor(s):
        raise PresentationError("spanning pairs must have matching fiber values")
    join = pres.join(q, r)
    if join.is_infinite:
        return None
    if join.is_inconclusive:
        raise PresentationError("middle join is inconclusive; larger search needed")
    v = join.value
    left = pres.mul(p, pres.mul(pres.inv(q), v))
    right = pres.mul(s, pres.mul(pres.inv(r), v))
    for el in (left, right):
        if not pres.is_positive(el):
            raise AssertionError("spanning product left the cone")
    return left, right


def pair_operator(ball: Ball, p, q) -> PartialInjection:
    """T_p T_q^* as a partial injection."""
    tp, tq = toeplitz_op(ball, p), toeplitz_op(ball, q)
    return tp.compose(tq.adjoint())
