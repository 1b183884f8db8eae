"""
Wiring diagrams on the cylinder and chamber labels on the universal cover.

Conventions.  Positions are integers; s_i (i >= 1) crosses the wires at
positions i and i + 1, s_0 those at n and n + 1.  Wires on the universal
cover carry integer labels, numbered so that at the cut wire p sits at
position p; the cylinder wire of label L is ``wire_class(L)`` in 1..n.
A chamber is labelled by the set S of wire labels passing below it, and
[S] records, per class c, ceil(max{b in S : b = c mod n} / n).

At a crossing the wire coming from position p + 1 down to p is the upper
wire.  With [S] the chamber below the crossing, the left and right chambers
are [S] + e_lower and [S] + e_upper and the chamber above is
[S] + e_lower + e_upper.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .affine import (
    AffinePermutation,
    AffineWord,
    Glide,
    is_reduced,
    rho_shift,
    word_to_perm,
)
from .errors import NotGlideError, NotNiceError, NotReducedError, PositivityError

ChamberLabel = tuple[int, ...]
Trajectory = tuple[int, ...]


def wire_class(label: int, n: int) -> int:
    return (label - 1) % n + 1


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def label_below(sigma: AffinePermutation, p: int) -> ChamberLabel:
    """[S] for S = the wire labels at positions <= p, given position -> label."""
    n = sigma.n
    s = [0] * n
    for r in range(p - n + 1, p + 1):
        label = sigma(r)
        s[wire_class(label, n) - 1] = _ceil_div(label, n)
    return tuple(s)


def add(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> tuple:
    return tuple(k * x for x in a)


def unit(n: int, c: int) -> tuple[int, ...]:
    """e_c for a wire class c in 1..n."""
    return tuple(1 if i == c else 0 for i in range(1, n + 1))


def same_mod_ones(a: Sequence[int], b: Sequence[int]) -> bool:
    d = sub(a, b)
    return all(x == d[0] for x in d)


def normalize(label: Sequence[int]) -> tuple[int, ...]:
    """Representative of label + Z(1,...,1) with entries centred on zero."""
    shift = round(sum(label) / len(label))
    return tuple(x - shift for x in label)


@dataclass(frozen=True)
class NiceSet:
    """S = Z_{<= lo} together with finitely many extra members above lo and
    with ``holes`` (finitely many integers <= lo) removed."""

    n: int
    lo: int
    members: frozenset = frozenset()
    holes: frozenset = frozenset()

    def __contains__(self, b: int) -> bool:
        if b <= self.lo:
            return b not in self.holes
        return b in self.members

    def check(self) -> None:
        if any(b <= self.lo for b in self.members) or any(b > self.lo for b in self.holes):
            raise NotNiceError("members must lie above lo and holes at or below it")
        for b in self.members:
            if b - self.n not in self:
                raise NotNiceError(f"{b} in S but {b - self.n} is not")
        for h in self.holes:
            if h + self.n in self:
                raise NotNiceError(f"{h + self.n} in S but {h} is not")

    def level(self) -> int:
        """The a for which S is a-nice."""
        return len(self.members) - len(self.holes) + self.lo

    @classmethod
    def below(cls, n: int, a: int) -> NiceSet:
        return cls(n, a)


def chamber_label(S: NiceSet) -> ChamberLabel:
    S.check()
    n = S.n
    top = max(S.members, default=S.lo)
    out = []
    for c in range(1, n + 1):
        b = top - (top - c) % n
        while b not in S:
            b -= n
        out.append(_ceil_div(b, n))
    return tuple(out)


@dataclass(frozen=True)
class Crossing:
    index: int
    letter: int
    position: int
    lower: int
    upper: int
    below: ChamberLabel

    def classes(self, n: int) -> tuple[int, int]:
        """(lower class, upper class)."""
        return wire_class(self.lower, n), wire_class(self.upper, n)


@dataclass(frozen=True)
class WiringDiagram:
    word: AffineWord
    cut: int
    left: AffinePermutation
    crossings: tuple[Crossing, ...] = field(repr=False)

    @property
    def n(self) -> int:
        return self.word.n

    def relations(self) -> set[tuple[int, int]]:
        """Pairs (i, j) of wire classes with i below j at some crossing, i.e. i <| j."""
        return {c.classes(self.n) for c in self.crossings}

    def crossing_pairs(self, start: int = 0, stop: int | None = None) -> set[frozenset]:
        return {frozenset(c.classes(self.n)) for c in self.crossings[start:stop]}

    def to_json(self) -> dict:
        n = self.n
        return {
            "n": n,
            "letters": list(self.word.letters),
            "cut": self.cut,
            "crossings": [
                {
                    "index": c.index,
                    "letter": c.letter,
                    "position": c.position,
                    "lower_wire": c.lower,
                    "upper_wire": c.upper,
                    "lower_class": wire_class(c.lower, n),
                    "upper_class": wire_class(c.upper, n),
                    "label_below": list(c.below),
                }
                for c in self.crossings
            ],
        }


def _step(sigma: list[int], i: int, n: int) -> None:
    if i == 0:
        first, last = sigma[0], sigma[-1]
        sigma[0], sigma[-1] = last - n, first + n
    else:
        sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]


def build_diagram(word: AffineWord, cut: int = 0) -> WiringDiagram:
    if not 0 <= cut <= len(word):
        raise ValueError("cut out of range")
    if not is_reduced(word):
        raise NotReducedError(f"{word} is not reduced")
    n = word.n
    left = word_to_perm(word[:cut]).inverse()
    sigma = list(left.window)
    crossings = []
    for idx, i in enumerate(word.letters):
        p = i if i else n
        perm = AffinePermutation(tuple(sigma))
        crossings.append(Crossing(idx, i, p, perm(p), perm(p + 1), label_below(perm, p - 1)))
        _step(sigma, i, n)
    return WiringDiagram(word, cut, left, tuple(crossings))


def column_maps(d: WiringDiagram) -> list[AffinePermutation]:
    """position -> label maps before each crossing and at the right end."""
    n = d.n
    sigma = list(d.left.window)
    out = [AffinePermutation(tuple(sigma))]
    for i in d.word.letters:
        _step(sigma, i, n)
        out.append(AffinePermutation(tuple(sigma)))
    return out


def face_labels(d: WiringDiagram) -> dict[tuple[int, int], ChamberLabel]:
    """Label of the face between positions p and p + 1 (p = 1..n) in each
    column (column c lies after the first c letters).  Faces at other levels
    differ by multiples of (1, ..., 1)."""
    return {
        (c, p): label_below(sigma, p)
        for c, sigma in enumerate(column_maps(d))
        for p in range(1, d.n + 1)
    }


def trajectory(u: Glide) -> Trajectory:
    """Label change between wires 1 and 2 across the diagram of |u."""
    w = word_to_perm(u.word)
    return sub(label_below(w, 1 - u.offset), label_below(AffinePermutation.identity(u.n), 1))


def time_shift(v: Glide) -> tuple[int, ...]:
    """Label change of a fixed vertex after one carrier sweep through v.

    Agrees with -trajectory(rho^{-k2}(v)) modulo (1, ..., 1).
    """
    w = word_to_perm(v.word).inverse()
    return sub(label_below(w, 1 + v.offset), label_below(AffinePermutation.identity(v.n), 1))


def carrier_tilde(v: Glide) -> Glide:
    return Glide(rho_shift(v.word, -v.offset), v.offset)


def label_shift(i: int, m: int, u: Glide, v: Glide) -> tuple[int, ...]:
    """i * t(u) - m * t(v~), the label translation to copy i at time m."""
    return sub(scale(i, trajectory(u)), scale(m, trajectory(carrier_tilde(v))))


def crossing_parameters(d: WiringDiagram, alpha: Sequence) -> list:
    """Wire ansatz: alpha[upper] - alpha[lower] at every crossing."""
    n = d.n
    out = []
    for c in d.crossings:
        lo, up = c.classes(n)
        out.append(alpha[up - 1] - alpha[lo - 1])
    return out


def check_admissible(d: WiringDiagram, alpha: Sequence) -> None:
    for c, a in zip(d.crossings, crossing_parameters(d, alpha)):
        if not a > 0:
            lo, up = c.classes(d.n)
            raise PositivityError(
                f"crossing {c.index} of wires {lo} (lower) and {up} (upper) has parameter {a}")


def wire_ansatz(u: Glide, v: Glide, alpha: Sequence) -> tuple[list, list]:
    """(vacuum, initial carrier) from wire weights on the diagram v|u."""
    if len(alpha) != u.n:
        raise ValueError("need one wire weight per wire")
    d = build_diagram(v.word + u.word, cut=len(v))
    check_admissible(d, alpha)
    params = crossing_parameters(d, alpha)
    m = len(v)
    return params[m:], params[:m]


def positive_weights_for(word: AffineWord, cut: int = 0) -> tuple[int, ...]:
    """Integer wire weights making every crossing of the diagram positive.

    The trajectory t of the whole glide word (cut at the left) is sorted;
    wires with larger t get larger weights.  The weights are then renumbered
    for the requested cut.
    """
    n = word.n
    glide = Glide.from_word(word)
    t = trajectory(glide)
    order = sorted(range(1, n + 1), key=lambda c: (-t[c - 1], c))
    base = [0] * n
    for rank, c in enumerate(order):
        base[c - 1] = n - rank
    at_cut = word_to_perm(word[:cut])
    alpha = tuple(base[wire_class(at_cut(p), n) - 1] for p in range(1, n + 1))
    try:
        check_admissible(build_diagram(word, cut), alpha)
    except PositivityError as exc:  # cannot happen for a reduced glide
        raise RuntimeError(f"no positive wire weights found for {word}: {exc}") from exc
    return alpha


def is_glide_word(word: AffineWord) -> bool:
    try:
        Glide.from_word(word)
    except (NotGlideError, NotReducedError):
        return False
    return True
