"""Free groups and free monoids on a finite alphabet.

Words are stored as tuples of signed letters ``(gen, sign)`` with ``gen`` a
generator index and ``sign`` in ``{+1, -1}``, always freely reduced.  The
empty tuple is the identity.  On top of the raw word algebra this module
provides the prefix order of the free monoid and the cone
``{e} | b * F+`` on two generators, both of which are exact weak
quasi-lattices.
"""

from __future__ import annotations

import string
from typing import Iterable, Sequence

from .order import JoinResult, Presentation, PresentationError

FWord = tuple  # tuple[tuple[int, int], ...]

EMPTY: FWord = ()


def reduce_word(raw: Iterable[tuple[int, int]]) -> FWord:
    """Freely reduce a sequence of signed letters."""
    out: list[tuple[int, int]] = []
    for gen, sign in raw:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


def word_mul(x: FWord, y: FWord) -> FWord:
    """Product of two reduced words, cancelling at the junction only."""
    xs = list(x)
    i = 0
    while xs and i < len(y) and xs[-1][0] == y[i][0] and xs[-1][1] == -y[i][1]:
        xs.pop()
        i += 1
    return tuple(xs) + tuple(y[i:])


def word_inv(x: FWord) -> FWord:
    return tuple((gen, -sign) for gen, sign in reversed(x))


def word_pow(x: FWord, n: int) -> FWord:
    if n < 0:
        return word_pow(word_inv(x), -n)
    out: FWord = EMPTY
    for _ in range(n):
        out = word_mul(out, x)
    return out


def is_positive_word(x: FWord) -> bool:
    return all(sign == 1 for _, sign in x)


def is_prefix(x: FWord, y: FWord) -> bool:
    return len(x) <= len(y) and y[: len(x)] == x


def is_suffix(x: FWord, y: FWord) -> bool:
    return len(x) <= len(y) and (len(x) == 0 or y[-len(x):] == x)


def largest_common_suffix(h: FWord, u: FWord) -> FWord:
    """Longest word that is a suffix of both reduced words."""
    n = 0
    while n < len(h) and n < len(u) and h[len(h) - 1 - n] == u[len(u) - 1 - n]:
        n += 1
    return h[len(h) - n:]


def positive_words(n_gens: int, max_len: int) -> list[FWord]:
    """All positive words of length at most ``max_len``, shortest first."""
    out: list[FWord] = [EMPTY]
    layer: list[FWord] = [EMPTY]
    for _ in range(max_len):
        layer = [w + ((g, 1),) for w in layer for g in range(n_gens)]
        out.extend(layer)
    return out


def default_gen_names(n: int) -> tuple[str, ...]:
    if n > len(string.ascii_lowercase):
        raise ValueError(f"at most {len(string.ascii_lowercase)} named generators supported")
    return tuple(string.ascii_lowercase[:n])


class FreeGroup(Presentation):
    """The pair (F, F+): free group with the free monoid as positive cone.

    The order on F+ is the prefix order; two positive words have a common
    upper bound exactly when one is a prefix of the other, so the join is
    never inconclusive.
    """

    family = "free"

    def __init__(self, n_gens: int, gen_names: Sequence[str] | None = None):
        if n_gens < 1:
            raise ValueError("need at least one generator")
        self.n_gens = n_gens
        self.gen_names = tuple(gen_names) if gen_names else default_gen_names(n_gens)
        if len(self.gen_names) != n_gens:
            raise ValueError("generator name count mismatch")

    def __repr__(self):
        return f"FreeGroup({self.n_gens})"

    @property
    def name(self) -> str:
        return f"free:{self.n_gens}"

    def identity(self) -> FWord:
        return EMPTY

    def gen(self, i: int, sign: int = 1) -> FWord:
        if not 0 <= i < self.n_gens:
            raise PresentationError(f"generator index {i} out of range")
        return ((i, sign),)

    def mul(self, x: FWord, y: FWord) -> FWord:
        self._check(x)
        self._check(y)
        return word_mul(x, y)

    def inv(self, x: FWord) -> FWord:
        return word_inv(x)

    def is_positive(self, x: FWord) -> bool:
        return is_positive_word(x)

    def positive_witness(self, x: FWord):
        return x if is_positive_word(x) else None

    def join(self, x: FWord, y: FWord) -> JoinResult:
        self._require_positive(x)
        self._require_positive(y)
        if is_prefix(x, y):
            return JoinResult.finite(y)
        if is_prefix(y, x):
            return JoinResult.finite(x)
        return JoinResult.infinite()

    def positive_generators(self) -> list[FWord]:
        return [self.gen(i) for i in range(self.n_gens)]

    def canonical_str(self, x: FWord) -> str:
        return format_word(x, self.gen_names)

    def parse(self, text: str) -> FWord:
        return reduce_word(parse_word(text, self.gen_names))

    def _check(self, x: FWord) -> None:
        for gen, _ in x:
            if not 0 <= gen < self.n_gens:
                raise PresentationError(f"letter {gen} outside alphabet of size {self.n_gens}")

    def _require_positive(self, x: FWord) -> None:
        if not is_positive_word(x):
            raise PresentationError(f"element {self.canonical_str(x)} is not positive")


class ScarparoCone(Presentation):
    """The free group on a, b ordered by the cone {e} | b * F+.

    The cone is the free monoid on the infinite alphabet ``b a^k`` (k >= 0),
    so any two cone elements with a common upper bound are comparable and
    the join is exact.
    """

    family = "scarparo"
    name = "scarparo"

    def __init__(self):
        self.free = FreeGroup(2, ("a", "b"))
        self.n_gens = 2
        self.gen_names = self.free.gen_names

    def __repr__(self):
        return "ScarparoCone()"

    def identity(self) -> FWord:
        return EMPTY

    def mul(self, x: FWord, y: FWord) -> FWord:
        return self.free.mul(x, y)

    def inv(self, x: FWord) -> FWord:
        return word_inv(x)

    def is_positive(self, x: FWord) -> bool:
        if x == EMPTY:
            return True
        return is_positive_word(x) and x[0] == (1, 1)

    def positive_witness(self, x: FWord):
        return x if self.is_positive(x) else None

    def join(self, x: FWord, y: FWord) -> JoinResult:
        for z in (x, y):
            if not self.is_positive(z):
                raise PresentationError(f"element {self.canonical_str(z)} is not in the cone")
        # Cone order, not raw prefix order: x <= y needs x^-1 y in the cone.
        if self.leq(x, y):
            return JoinResult.finite(y)
        if self.leq(y, x):
            return JoinResult.finite(x)
        return JoinResult.infinite()

    def positive_generators(self) -> list[FWord]:
        # The cone is not finitely generated; balls are enumerated directly.
        raise PresentationError("the cone has no finite generating set; use enumerate_ball")

    def enumerate_ball(self, radius: int, cap: int | None = None):
        from .order import Ball, check_radius_cap

        check_radius_cap(radius, cap)
        elements = [EMPTY]
        if radius >= 1:
            b = ((1, 1),)
            elements.extend(word_mul(b, w) for w in positive_words(2, radius - 1))
        lengths = {el: len(el) for el in elements}
        return Ball.build(self, radius, lengths)

    def canonical_str(self, x: FWord) -> str:
        return format_word(x, self.gen_names)

    def parse(self, text: str) -> FWord:
        return self.free.parse(text)


def format_word(x: FWord, gen_names: Sequence[str]) -> str:
    """Render a reduced word in the shared grammar, run-length collapsed."""
    if not x:
        return "e"
    runs: list[tuple[int, int]] = []
    for gen, sign in x:
        if runs and runs[-1][0] == gen and (runs[-1][1] > 0) == (sign > 0):
            runs[-1] = (gen, runs[-1][1] + sign)
        else:
            runs.append((gen, sign))
    parts = []
    for gen, exp in runs:
        parts.append(gen_names[gen] if exp == 1 else f"{gen_names[gen]}^{exp}")
    return " ".join(parts)


def parse_word(text: str, gen_names: Sequence[str]) -> list[tuple[int, int]]:
    """Parse the shared grammar into raw signed letters (not yet reduced)."""
    letters: list[tuple[int, int]] = []
    for token in text.split():
        if token == "e":
            continue
        name, _, exp_text = token.partition("^")
        try:
            idx = gen_names.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None
        if exp_text == "":
            exp = 1
        else:
            try:
                exp = int(exp_text)
            except ValueError:
                raise PresentationError(f"malformed exponent in token {token!r}") from None
        sign = 1 if exp >= 0 else -1
        letters.extend([(idx, sign)] * abs(exp))
    return letters
