"""
Arithmetic in the affine symmetric group of rank n.

Elements are stored in window notation: an affine permutation w of Z with
w(x + n) = w(x) + n is determined by (w(1), ..., w(n)).  The generator s_i
swaps the residue classes i and i + 1 (mod n), so s_0 sends n -> n + 1 and
1 -> 0.  A word s_{i_1} ... s_{i_k} evaluates to the composite function
s_{i_1} o ... o s_{i_k}; read left to right it is also the map
"position -> wire label" at the right end of the wiring diagram whose wires
start with wire p at position p.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotGlideError, NotReducedError


@dataclass(frozen=True)
class AffineWord:
    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"rank must be at least 3, got n={self.n}")
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        for x in self.letters:
            if not 0 <= x < self.n:
                raise ValueError(f"letter {x} out of range for n={self.n}")

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return AffineWord(self.n, self.letters[idx])
        return self.letters[idx]

    def __add__(self, other: AffineWord) -> AffineWord:
        if other.n != self.n:
            raise ValueError("cannot concatenate words of different rank")
        return AffineWord(self.n, self.letters + other.letters)

    def __str__(self):
        if not self.letters:
            return "e"
        return "".join(f"s_{i}" for i in self.letters)

    @classmethod
    def parse(cls, n: int, text: str) -> AffineWord:
        """Read ``"s_1s_2s_0"``, ``"s1 s2 s0"`` or ``"1,2,0"``."""
        text = text.strip()
        if text in ("", "e"):
            return cls(n, ())
        if "s" in text:
            parts = [p for p in text.replace("_", "").replace(" ", "").split("s") if p]
        else:
            parts = [p for p in text.replace(",", " ").split()]
        return cls(n, tuple(int(p) for p in parts))

    def to_json(self) -> dict:
        return {"n": self.n, "letters": list(self.letters)}

    @classmethod
    def from_json(cls, data: dict) -> AffineWord:
        return cls(int(data["n"]), tuple(data["letters"]))


@dataclass(frozen=True)
class AffinePermutation:
    window: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        n = len(w)
        if len({x % n for x in w}) != n:
            raise ValueError(f"window entries not distinct mod {n}: {w}")
        if sum(w) != n * (n + 1) // 2:
            raise ValueError(f"window sum must be {n * (n + 1) // 2}: {w}")

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, x: int) -> int:
        q, r = divmod(x - 1, self.n)
        return self.window[r] + q * self.n

    def __mul__(self, other: AffinePermutation) -> AffinePermutation:
        # (self * other)(x) = self(other(x))
        return AffinePermutation(tuple(self(other(i)) for i in range(1, self.n + 1)))

    def inverse(self) -> AffinePermutation:
        n = self.n
        inv = [0] * n
        for i, x in enumerate(self.window, start=1):
            q, r = divmod(x - 1, n)
            inv[r] = i - q * n
        return AffinePermutation(tuple(inv))

    @classmethod
    def identity(cls, n: int) -> AffinePermutation:
        return cls(tuple(range(1, n + 1)))

    def __str__(self):
        return "[" + ", ".join(map(str, self.window)) + "]"


def _times_generator(window: list[int], i: int, n: int) -> None:
    """In place: window <- window o s_i."""
    if i == 0:
        first, last = window[0], window[-1]
        window[0], window[-1] = last - n, first + n
    else:
        window[i - 1], window[i] = window[i], window[i - 1]


def word_to_perm(word: AffineWord) -> AffinePermutation:
    n = word.n
    window = list(range(1, n + 1))
    for i in word.letters:
        _times_generator(window, i, n)
    return AffinePermutation(tuple(window))


def inversion_coords(p: AffinePermutation) -> dict[tuple[int, int], int]:
    """Signed crossing counts m_ij (1 <= i < j <= n) of the element.

    |m_ij| is the number of times wires i and j cross in any reduced word
    (cut at the left).  m_ij > 0 when wire j crosses wire i from above,
    m_ij < 0 when it crosses from below.
    """
    n = p.n
    final_pos = p.inverse()
    return {
        (i, j): -((final_pos(j) - final_pos(i)) // n)  # ceil((P(i) - P(j)) / n)
        for i, j in combinations(range(1, n + 1), 2)
    }


def coxeter_length(p: AffinePermutation) -> int:
    return sum(abs(m) for m in inversion_coords(p).values())


def is_reduced(word: AffineWord) -> bool:
    return coxeter_length(word_to_perm(word)) == len(word)


def weak_order_leq(w1: AffinePermutation, w2: AffinePermutation) -> bool:
    """True iff some reduced word for w2 starts with a reduced word for w1."""
    m1, m2 = inversion_coords(w1), inversion_coords(w2)
    for key, a in m1.items():
        b = m2[key]
        if a == 0:
            continue
        if (a > 0) != (b > 0) or abs(a) > abs(b):
            return False
    return True


def rho_shift(word: AffineWord, t: int) -> AffineWord:
    n = word.n
    return AffineWord(n, tuple((i + t) % n for i in word.letters))


def perm_offset(p: AffinePermutation) -> int | None:
    n = p.n
    k = (p.window[0] - 1) % n
    if all((x - i - k) % n == 0 for i, x in enumerate(p.window, start=1)):
        return k
    return None


def glide_offset(word: AffineWord) -> int | None:
    """Offset k if the word's image in S_n is the rotation i -> i + k."""
    return perm_offset(word_to_perm(word))


@dataclass(frozen=True)
class Glide:
    word: AffineWord
    offset: int

    @classmethod
    def from_word(cls, word: AffineWord) -> Glide:
        if not is_reduced(word):
            raise NotReducedError(f"{word} is not reduced")
        k = glide_offset(word)
        if k is None:
            raise NotGlideError(f"{word} is not a glide")
        return cls(word, k)

    @classmethod
    def parse(cls, n: int, text: str) -> Glide:
        return cls.from_word(AffineWord.parse(n, text))

    @property
    def n(self) -> int:
        return self.word.n

    @property
    def letters(self) -> tuple[int, ...]:
        return self.word.letters

    def __len__(self):
        return len(self.word)

    def __str__(self):
        return str(self.word)


def product_identity_words(u: Glide, v: Glide) -> tuple[AffineWord, AffineWord]:
    """The two reduced words vu and rho^{k2}(u) rho^{-k1}(v) of one element.

    k1, k2 are the offsets of u and v.
    """
    vu = v.word + u.word
    if not is_reduced(vu):
        raise NotReducedError(f"vu = {vu} is not reduced")
    other = rho_shift(u.word, v.offset) + rho_shift(v.word, -u.offset)
    if word_to_perm(vu) != word_to_perm(other):
        raise RuntimeError(f"glide product identity failed for u={u}, v={v}")
    return vu, other


def right_descents(p: AffinePermutation) -> list[int]:
    n = p.n
    out = [i for i in range(1, n) if p.window[i - 1] > p.window[i]]
    if p.window[-1] - n > p.window[0]:
        out.insert(0, 0)
    return out


def reduced_word(p: AffinePermutation, rng: random.Random | None = None) -> AffineWord:
    """A reduced word for p, peeling right descents (randomly if rng given)."""
    n = p.n
    window = list(p.window)
    letters: list[int] = []
    while True:
        desc = right_descents(AffinePermutation(tuple(window)))
        if not desc:
            break
        i = rng.choice(desc) if rng is not None else desc[0]
        _times_generator(window, i, n)
        letters.append(i)
    return AffineWord(n, tuple(reversed(letters)))


def glide_from_translation(n: int, offset: int, shifts: Sequence[int]) -> AffinePermutation:
    """The glide of the given offset whose window is shifted by n * shifts.

    ``shifts`` must sum to zero.
    """
    if sum(shifts) != 0 or len(shifts) != n:
        raise ValueError("need n shifts summing to zero")
    return AffinePermutation(tuple(
        i + offset - (n if i > n - offset else 0) + n * s
        for i, s in zip(range(1, n + 1), shifts)
    ))


def random_glide(n: int, rng: random.Random, max_length: int, offset: int | None = None,
                 spread: int = 1) -> Glide:
    """Sample a glide of length at most max_length with a random reduced word."""
    for _ in range(1000):
        k = rng.randrange(n) if offset is None else offset
        shifts = [rng.randint(-spread, spread) for _ in range(n - 1)]
        shifts.append(-sum(shifts))
        p = glide_from_translation(n, k, shifts)
        if coxeter_length(p) <= max_length:
            return Glide(reduced_word(p, rng), k)
    raise RuntimeError("could not sample a short glide")


def all_words(n: int, length: int) -> Iterable[AffineWord]:
    """Every word of the given length (n ** length of them)."""
    if length == 0:
        yield AffineWord(n, ())
        return
    for w in all_words(n, length - 1):
        for i in range(n):
            yield AffineWord(n, w.letters + (i,))


def length_by_search(p: AffinePermutation, limit: int = 12) -> int:
    """Breadth-first search over the Cayley graph; slow, for cross-checking."""
    target = p.window
    n = p.n
    frontier = {tuple(range(1, n + 1))}
    seen = set(frontier)
    for depth in range(limit + 1):
        if target in frontier:
            return depth
        nxt = set()
        for w in frontier:
            for i in range(n):
                lst = list(w)
                _times_generator(lst, i, n)
                t = tuple(lst)
                if t not in seen:
                    seen.add(t)
                    nxt.add(t)
        frontier = nxt
    raise ValueError("length exceeds search limit")


__all__ = [
    "AffineWord", "AffinePermutation", "Glide", "word_to_perm", "coxeter_length",
    "is_reduced", "rho_shift", "glide_offset", "perm_offset", "product_identity_words",
    "inversion_coords", "weak_order_leq", "reduced_word", "random_glide",
    "glide_from_translation", "length_by_search",
]
