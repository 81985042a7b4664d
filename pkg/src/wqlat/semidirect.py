"""Semidirect products (F, F+) x|_phi (Z, N) for automorphisms of a free group.

Elements are pairs (n, k) multiplying by (n, k)(n', k') = (n phi^k(n'), k+k').
The cone is F+ x N.  Joins are computed levelwise when the automorphism
permutes the positive monoid, by the tail-exponent formula for the
phi(a) = ab, phi(b) = b action, and are left to the ball oracle otherwise.

Automorphisms are supplied as generator images together with explicit
inverse images; the inverse is validated on construction, not derived.
"""

from __future__ import annotations

from typing import Sequence

from .order import JoinResult, Presentation, PresentationError
from .words import (
    EMPTY,
    FWord,
    FreeGroup,
    format_word,
    is_positive_word,
    is_prefix,
    word_inv,
    word_mul,
)

SdElement = tuple  # (FWord, int)

A, B = 0, 1


class FreeAutomorphism:
    """Automorphism of a free group given by generator images and inverses."""

    def __init__(self, base: FreeGroup, images: Sequence[FWord], inv_images: Sequence[FWord]):
        if len(images) != base.n_gens or len(inv_images) != base.n_gens:
            raise ValueError("one image per generator required")
        self.base = base
        self.images = tuple(images)
        self.inv_images = tuple(inv_images)
        for g in range(base.n_gens):
            gen = ((g, 1),)
            if self.apply(self.apply(gen, -1), 1) != gen or self.apply(self.apply(gen, 1), -1) != gen:
                raise ValueError(f"inverse images do not invert the action on generator {g}")

    def _substitute(self, word: FWord, table: tuple[FWord, ...]) -> FWord:
        out: FWord = EMPTY
        for gen, sign in word:
            piece = table[gen] if sign == 1 else word_inv(table[gen])
            out = word_mul(out, piece)
        return out

    def apply(self, word: FWord, power: int) -> FWord:
        table = self.images if power >= 0 else self.inv_images
        for _ in range(abs(power)):
            word = self._substitute(word, table)
        return word

    def preserves_cone(self, max_len: int = 4) -> bool:
        """Spot check phi(F+) <= F+ on all positive words up to max_len."""
        from .words import positive_words

        return all(
            is_positive_word(self.apply(wd, 1)) for wd in positive_words(self.base.n_gens, max_len)
        )


class SemidirectProduct(Presentation):
    family = "semidirect"

    JOIN_LEVELWISE = "levelwise"
    JOIN_PHI_AB = "phi-ab"

    def __init__(
        self,
        base: FreeGroup,
        aut: FreeAutomorphism,
        join_rule: str | None = None,
        name: str | None = None,
        metadata: dict | None = None,
    ):
        self.base = base
        self.aut = aut
        self.join_rule = join_rule
        self.name = name or "sd:custom"
        self.metadata = metadata or {}

    def __repr__(self):
        return f"SemidirectProduct({self.name})"

    def identity(self) -> SdElement:
        return (EMPTY, 0)

    def mul(self, x: SdElement, y: SdElement) -> SdElement:
        return (word_mul(x[0], self.aut.apply(y[0], x[1])), x[1] + y[1])

    def inv(self, x: SdElement) -> SdElement:
        return (self.aut.apply(word_inv(x[0]), -x[1]), -x[1])

    def is_positive(self, x: SdElement) -> bool:
        return is_positive_word(x[0]) and x[1] >= 0

    def leq(self, x: SdElement, y: SdElement) -> bool:
        # (l,q) <= (m,r) iff q <= r and phi^-q(l^-1 m) is positive; this is
        # the generic x^-1 y test unfolded.
        if x[1] > y[1]:
            return False
        return is_positive_word(self.aut.apply(word_mul(word_inv(x[0]), y[0]), -x[1]))

    def projection(self, x: SdElement) -> int:
        return x[1]

    def word_exponents(self, v: FWord) -> list[int]:
        """Exponents [i0..ik] of b around the a-letters in a positive word."""
        exps = [0]
        for gen, _ in v:
            if gen == B:
                exps[-1] += 1
            else:
                exps.append(0)
        return exps

    def join(self, x: SdElement, y: SdElement) -> JoinResult:
        for z in (x, y):
            if not self.is_positive(z):
                raise PresentationError(f"element {self.canonical_str(z)} is not positive")
        if self.join_rule == self.JOIN_LEVELWISE:
            return self.join_levelwise(x, y)
        if self.join_rule == self.JOIN_PHI_AB:
            return self.join_phi_ab(x, y)
        # No structural rule: the ball oracle is the only recourse.
        return JoinResult.inconclusive_within(0)

    def join_levelwise(self, x: SdElement, y: SdElement) -> JoinResult:
        """Componentwise join, valid when the action permutes the base cone."""
        if self.join_rule != self.JOIN_LEVELWISE:
            raise PresentationError(f"{self.name} does not declare a cone-permuting action")
        word_join = self.base.join(x[0], y[0])
        if not word_join.is_finite:
            return word_join
        return JoinResult.finite((word_join.value, max(x[1], y[1])))

    def join_phi_ab(self, x: SdElement, y: SdElement) -> JoinResult:
        if self.join_rule != self.JOIN_PHI_AB:
            raise PresentationError(f"{self.name} does not carry the ab-action join formula")
        return self._join_phi_ab(x, y)

    def _join_phi_ab(self, x: SdElement, y: SdElement) -> JoinResult:
        (p, m), (q, n) = x, y
        if not is_prefix(p, q):
            if is_prefix(q, p):
                (p, m), (q, n) = (q, n), (p, m)
            else:
                return JoinResult.infinite()
        exps = self.word_exponents(word_mul(word_inv(p), q))
        k = len(exps) - 1
        if any(exps[j] < m for j in range(1, k)):
            return JoinResult.infinite()
        level = max(m, n)
        if k == 0 or exps[k] >= m:
            return JoinResult.finite((q, level))
        return JoinResult.finite((word_mul(q, ((B, 1),) * (m - exps[k])), level))

    def positive_generators(self) -> list[SdElement]:
        gens = [(((g, 1),), 0) for g in range(self.base.n_gens)]
        gens.append((EMPTY, 1))
        return gens

    def canonical_str(self, x: SdElement) -> str:
        word, level = x
        parts = []
        if word:
            parts.append(format_word(word, self.base.gen_names))
        if level:
            parts.append("s" if level == 1 else f"s^{level}")
        return " ".join(parts) if parts else "e"

    def parse(self, text: str) -> SdElement:
        from .words import parse_word

        letters = parse_word(text, self.base.gen_names + ("s",))
        out = self.identity()
        for gen, sign in letters:
            if gen == self.base.n_gens:
                out = self.mul(out, (EMPTY, sign))
            else:
                out = self.mul(out, (((gen, sign),), 0))
        return out


def swap2() -> SemidirectProduct:
    base = FreeGroup(2, ("a", "b"))
    a, b = ((A, 1),), ((B, 1),)
    aut = FreeAutomorphism(base, (b, a), (b, a))
    return SemidirectProduct(base, aut, join_rule=SemidirectProduct.JOIN_LEVELWISE, name="sd:swap2")


def perm3() -> SemidirectProduct:
    base = FreeGroup(3, ("a", "b", "c"))
    a, b, c = ((0, 1),), ((1, 1),), ((2, 1),)
    aut = FreeAutomorphism(base, (b, c, a), (c, a, b))
    return SemidirectProduct(base, aut, join_rule=SemidirectProduct.JOIN_LEVELWISE, name="sd:perm3")


def phi_ab() -> SemidirectProduct:
    base = FreeGroup(2, ("a", "b"))
    a, b = ((A, 1),), ((B, 1),)
    ab = word_mul(a, b)
    ab_inv = word_mul(a, word_inv(b))
    aut = FreeAutomorphism(base, (ab, b), (ab_inv, b))
    return SemidirectProduct(base, aut, join_rule=SemidirectProduct.JOIN_PHI_AB, name="sd:phi-ab")


def nonexample() -> SemidirectProduct:
    """Action phi(a) = ba, phi(b) = b^2 a whose product pair fails (QL2)."""
    base = FreeGroup(2, ("a", "b"))
    parse = base.parse
    aut = FreeAutomorphism(
        base,
        (parse("b a"), parse("b^2 a")),
        (parse("a b^-1 a"), parse("b a^-1")),
    )
    pres = SemidirectProduct(base, aut, join_rule=None, name="sd:nonexample")
    pres.metadata = {
        "witness_pair": ((parse("a"), 2), (parse("a b"), 1)),
        "witness_bounds": ((parse("a b^2 a b a"), 2), (parse("a b^2 a b^2 a b a"), 2)),
    }
    return pres
