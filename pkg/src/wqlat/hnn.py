"""HNN extensions of a free group over cyclic subgroups <u> and <w>.

The stable letter t conjugates u to w (PLUS mode, relator ``u t = t w``) or
to w^-1 (MINUS mode, relator ``u t w = t``).  Elements are kept in the
right normal form ``h0 t^{e1} h1 ... t^{ek} hk`` where each hi preceding
t^{+1} is a coset representative for F/<u> and each hi preceding t^{-1}
one for F/<w>; the representative of a coset is the result of stripping
the maximal trailing power of the subgroup word and, when the remainder
absorbs a prefix of it, re-anchoring on the complementary suffix.

PLUS is quasi-lattice ordered with joins computed from stems and free
monoid tails.  MINUS is a weak quasi-lattice in which elements with a
common upper bound are comparable; its positivity criterion runs through
double cosets ``<w> h <u>`` having a representative in the free monoid.
"""

from __future__ import annotations

import math

from .order import JoinResult, Presentation, PresentationError
from .words import (
    EMPTY,
    FWord,
    FreeGroup,
    format_word,
    is_positive_word,
    is_suffix,
    positive_words,
    word_inv,
    word_mul,
    word_pow,
)

PLUS, MINUS = 1, -1

# Element layout: (parts, eps) with len(parts) == len(eps) + 1,
# parts are reduced FWords over the base alphabet.
HnnWord = tuple


def omega(u: FWord) -> set[FWord]:
    """{e} together with every nonempty suffix of u."""
    if not (u and is_positive_word(u)):
        raise PresentationError("u must be a nonempty positive word")
    return {EMPTY} | {u[i:] for i in range(len(u))}


def strip_powers(h: FWord, u: FWord) -> tuple[FWord, int]:
    """Write reduced h as h0 * u^m with h0 not ending in a power of u."""
    m = 0
    uinv = word_inv(u)
    while is_suffix(u, h):
        h = h[: len(h) - len(u)]
        m += 1
    if m == 0:
        while is_suffix(uinv, h):
            h = h[: len(h) - len(u)]
            m -= 1
    return h, m


def coset_rep(u: FWord, h: FWord) -> tuple[FWord, int]:
    """Representative of the left coset h<u>: (rep, m) with h = rep u^m.

    The representative never ends in a nontrivial power of u.  When the
    stripped remainder cancels into u (it ends in an inverse prefix), the
    coset is re-anchored on the complementary suffix of u.
    """
    h0, m = strip_powers(h, u)
    if not h0:
        return h0, m
    last = h0[-1]
    if last == u[-1]:
        # h0 ends in a nonempty suffix of u; already a representative.
        return h0, m
    if last == (u[0][0], -u[0][1]):
        # h0 ends in beta^-1 for a proper nonempty prefix beta of u.
        for blen in range(len(u) - 1, 0, -1):
            beta_inv = word_inv(u[:blen])
            if is_suffix(beta_inv, h0):
                h1 = h0[: len(h0) - blen]
                alpha = u[blen:]
                return word_mul(h1, alpha), m - 1
        raise AssertionError("unreachable: cancellation without a matching prefix")
    return h0, m


def power_exponent(base: FWord, h: FWord) -> int | None:
    """m with h = base^m, or None."""
    if not h:
        return 0
    if len(h) % len(base):
        return None
    m = len(h) // len(base)
    if h == word_pow(base, m):
        return m
    if h == word_pow(base, -m):
        return -m
    return None


class HnnExtension(Presentation):
    """Positive cone of the HNN extension generated by the base alphabet and t."""

    family = "hnn"

    def __init__(self, base: FreeGroup, u: FWord, w: FWord, mode: int):
        if mode not in (PLUS, MINUS):
            raise ValueError("mode must be PLUS (+1) or MINUS (-1)")
        for word, label in ((u, "u"), (w, "w")):
            if not (word and is_positive_word(word)):
                raise PresentationError(f"{label} must be a nonempty positive word")
        self.base = base
        self.u = u
        self.w = w
        self.mode = mode
        self.t_index = base.n_gens  # reserved letter index in raw streams
        sign = "+" if mode == PLUS else "-"
        self.name = (
            f"hnn{sign}:{''.join(base.gen_names[g] for g, _ in u)},"
            f"{''.join(base.gen_names[g] for g, _ in w)}@{','.join(base.gen_names)}"
        )
        self._pos_cache: dict[HnnWord, bool] = {}
        self._dc_cache: dict[FWord, tuple[int, int] | None] = {}
        self._wq_cache: dict[FWord, int | None] = {}

    def __repr__(self):
        return f"HnnExtension({self.name})"

    # -- normal form -------------------------------------------------------

    def identity(self) -> HnnWord:
        return ((EMPTY,), ())

    def t(self, sign: int = 1) -> HnnWord:
        return self.normal_form([(self.t_index, sign)])

    def embed(self, word: FWord) -> HnnWord:
        return ((word,), ())

    def normal_form(self, letters) -> HnnWord:
        """Left-to-right sweep maintaining a residual base-group part."""
        parts: list[FWord] = [EMPTY]
        eps: list[int] = []
        for letter in letters:
            self._push(parts, eps, letter)
        return tuple(parts), tuple(eps)

    def _push(self, parts: list[FWord], eps: list[int], letter) -> None:
        gen, sign = letter
        if gen != self.t_index:
            parts[-1] = word_mul(parts[-1], (letter,))
            return
        sub = self.u if sign == 1 else self.w
        other = self.w if sign == 1 else self.u
        rep, m = coset_rep(sub, parts[-1])
        if eps and eps[-1] == -sign and rep == EMPTY:
            # Pinch: t^-1 u^m t = w^{dm} resp. t w^m t^-1 = u^{dm}.
            parts.pop()
            eps.pop()
            parts[-1] = word_mul(parts[-1], word_pow(other, self.mode * m))
        else:
            parts[-1] = rep
            parts.append(word_pow(other, self.mode * m))
            eps.append(sign)

    def _letters(self, x: HnnWord) -> list:
        parts, eps = x
        out = list(parts[0])
        for i, e in enumerate(eps):
            out.append((self.t_index, e))
            out.extend(parts[i + 1])
        return out

    def mul(self, x: HnnWord, y: HnnWord) -> HnnWord:
        parts = list(x[0])
        eps = list(x[1])
        for letter in self._letters(y):
            self._push(parts, eps, letter)
        return tuple(parts), tuple(eps)

    def inv(self, x: HnnWord) -> HnnWord:
        letters = [(g, -s) for g, s in reversed(self._letters(x))]
        return self.normal_form(letters)

    # -- positivity --------------------------------------------------------

    def w_power_decomposition(self, h: FWord) -> int | None:
        """m with h = w^m q for positive q, scanning a trimmed window."""
        cached = self._wq_cache.get(h, "miss")
        if cached != "miss":
            return cached
        bound = math.ceil(len(h) / len(self.w)) + 1
        found = None
        for m in sorted(range(-bound, bound + 1), key=abs):
            if is_positive_word(word_mul(word_pow(self.w, -m), h)):
                found = m
                break
        self._wq_cache[h] = found
        return found

    def double_coset_positive(self, h: FWord) -> tuple[int, int] | None:
        """(m, n) with w^m h u^n positive, or None within the trimmed window.

        Cancellation into w^m or u^n consumes at most len(h) letters and
        surplus positive copies cannot destroy positivity, so any witness
        can be trimmed into the window below.
        """
        cached = self._dc_cache.get(h, "miss")
        if cached != "miss":
            return cached
        mb = math.ceil(len(h) / len(self.w)) + 1
        nb = math.ceil(len(h) / len(self.u)) + 1
        found = None
        for m in sorted(range(-mb, mb + 1), key=abs):
            wh = word_mul(word_pow(self.w, m), h)
            for n in sorted(range(-nb, nb + 1), key=abs):
                if is_positive_word(word_mul(wh, word_pow(self.u, n))):
                    found = (m, n)
                    break
            if found:
                break
        self._dc_cache[h] = found
        return found

    def is_positive(self, x: HnnWord) -> bool:
        cached = self._pos_cache.get(x)
        if cached is None:
            cached = self._is_positive(x)
            self._pos_cache[x] = cached
        return cached

    def _is_positive(self, x: HnnWord) -> bool:
        parts, eps = x
        if any(e == -1 for e in eps):
            return False
        if not eps:
            return is_positive_word(parts[0])
        if self.mode == PLUS:
            return all(is_positive_word(p) for p in parts)
        if not is_positive_word(parts[0]):
            return False
        if self.w_power_decomposition(parts[-1]) is None:
            return False
        return all(self.double_coset_positive(p) is not None for p in parts[1:-1])

    def positive_witness(self, x: HnnWord):
        """Letters over the positive alphabet (base + t) multiplying to x."""
        if not self.is_positive(x):
            return None
        parts, eps = x
        if self.mode == PLUS:
            return tuple(self._letters(x))
        k = len(eps)
        if k == 0:
            return tuple(parts[0])
        m_k = self.w_power_decomposition(parts[-1])
        q_k = word_mul(word_pow(self.w, -m_k), parts[-1])
        if k == 1:
            return tuple(parts[0]) + self._t_w_block(m_k) + tuple(q_k)
        m_star, n_star = self.double_coset_positive(parts[-2])
        prefix_letters = []
        for i in range(k - 2):
            prefix_letters.extend(parts[i])
            prefix_letters.append((self.t_index, 1))
        prefix_letters.extend(parts[k - 2])
        prefix_letters.append((self.t_index, 1))
        prefix_letters.extend(word_mul(parts[-2], word_pow(self.u, n_star)))
        prefix = self.normal_form(prefix_letters)
        head = self.positive_witness(prefix)
        # u^{-n*} t w^{m_k} collapses to one positive block either way.
        s = n_star + m_k
        if s >= 0:
            block = ((self.t_index, 1),) + tuple(word_pow(self.w, s))
        else:
            block = tuple(word_pow(self.u, -s)) + ((self.t_index, 1),)
        return tuple(head) + block + tuple(q_k)

    def _t_w_block(self, m: int) -> tuple:
        """t w^m rewritten as a positive word (t w^m = u^-m t when m < 0)."""
        if m >= 0:
            return ((self.t_index, 1),) + tuple(word_pow(self.w, m))
        return tuple(word_pow(self.u, -m)) + ((self.t_index, 1),)

    # -- heights, stems, joins ----------------------------------------------

    def height(self, x: HnnWord) -> int:
        return sum(x[1])

    def stem(self, x: HnnWord) -> HnnWord:
        parts, eps = x
        if not eps:
            return self.identity()
        return parts[:-1] + (EMPTY,), eps

    def tail(self, x: HnnWord) -> FWord:
        return x[0][-1]

    def size(self, x: HnnWord) -> int:
        return sum(len(p) for p in x[0]) + len(x[1])

    def join(self, x: HnnWord, y: HnnWord) -> JoinResult:
        for z in (x, y):
            if not self.is_positive(z):
                raise PresentationError(f"element {self.canonical_str(z)} is not positive")
        if self.mode == MINUS:
            if self.leq(x, y):
                return JoinResult.finite(y)
            if self.leq(y, x):
                return JoinResult.finite(x)
            return JoinResult.infinite()
        hx, hy = self.height(x), self.height(y)
        if hx > hy:
            x, y = y, x
            hx, hy = hy, hx
        if hx == hy:
            if self.stem(x) != self.stem(y):
                return JoinResult.infinite()
            p, q = self.tail(x), self.tail(y)
            if len(p) > len(q):
                p, q = q, p
            if q[: len(p)] != p:
                return JoinResult.infinite()
            return JoinResult.finite((x[0][:-1] + (q,), x[1]))
        # Unequal heights: any join has the shape stem(y) r with r positive,
        # and the shortest verified candidate is automatically the least.
        tail_y = self.tail(y)
        radius = len(tail_y) + self.size(x) + len(self.u) + len(self.w)
        stem_parts = y[0][:-1]
        for r_extra in positive_words(self.base.n_gens, radius - len(tail_y)):
            r = word_mul(tail_y, r_extra)
            cand = (stem_parts + (r,), y[1])
            if self.leq(x, cand) and self.leq(y, cand):
                return JoinResult.finite(cand)
        return JoinResult.inconclusive_within(radius)

    # -- presentation plumbing ----------------------------------------------

    def positive_generators(self) -> list[HnnWord]:
        gens = [self.embed(((g, 1),)) for g in range(self.base.n_gens)]
        gens.append(self.t())
        return gens

    def canonical_str(self, x: HnnWord) -> str:
        parts, eps = x
        tokens = []
        if parts[0]:
            tokens.append(format_word(parts[0], self.base.gen_names))
        for i, e in enumerate(eps):
            tokens.append("t" if e == 1 else "t^-1")
            if parts[i + 1]:
                tokens.append(format_word(parts[i + 1], self.base.gen_names))
        return " ".join(tokens) if tokens else "e"

    def parse(self, text: str) -> HnnWord:
        from .words import parse_word

        return self.normal_form(parse_word(text, self.base.gen_names + ("t",)))
