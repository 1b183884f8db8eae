"""
Weighted reduced words and Lusztig's parameter moves.

A braid move rewrites s_i(a) s_j(b) s_i(c) as
s_j(bc/(a+c)) s_i(a+c) s_j(ab/(a+c)) when i - j = +-1 (mod n); a commutation
swaps s_i(a) s_j(b) when i and j are not adjacent.  Both moves are
involutions at a fixed position, which the bidirectional search relies on.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .affine import AffineWord, Glide, is_reduced, product_identity_words, word_to_perm
from .errors import IllegalMoveError, NotReducedError, PositivityError

Scalar = Union[Fraction, float]

BRAID = "braid"
COMMUTE = "commute"


def to_scalar(x, mode: str = "exact") -> Scalar:
    """Parse a number into the arithmetic of the run ("exact" or "float")."""
    if mode == "float":
        return float(Fraction(x)) if isinstance(x, str) else float(x)
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(x)


def braid_move(a: Scalar, b: Scalar, c: Scalar) -> tuple[Scalar, Scalar, Scalar]:
    s = a + c
    if s == 0:
        raise ZeroDivisionError("braid move with a + c = 0")
    return b * c / s, s, a * b / s


@dataclass(frozen=True)
class Move:
    kind: str
    pos: int

    def __str__(self):
        return f"{self.kind}@{self.pos}"


def _adjacent(i: int, j: int, n: int) -> bool:
    return (i - j) % n in (1, n - 1)


def _legal(letters: Sequence[int], move: Move, n: int) -> bool:
    p = move.pos
    if move.kind == BRAID:
        if p < 0 or p + 2 >= len(letters):
            return False
        return letters[p] == letters[p + 2] and _adjacent(letters[p], letters[p + 1], n)
    if move.kind == COMMUTE:
        if p < 0 or p + 1 >= len(letters):
            return False
        d = (letters[p] - letters[p + 1]) % n
        return d not in (0, 1, n - 1)
    return False


def _apply_letters(letters: tuple[int, ...], move: Move) -> tuple[int, ...]:
    p = move.pos
    if move.kind == BRAID:
        i, j = letters[p], letters[p + 1]
        return letters[:p] + (j, i, j) + letters[p + 3:]
    return letters[:p] + (letters[p + 1], letters[p]) + letters[p + 2:]


def neighbors(letters: tuple[int, ...], n: int):
    """All (move, resulting letters) one legal move away."""
    for p in range(len(letters) - 1):
        if p + 2 < len(letters):
            m = Move(BRAID, p)
            if _legal(letters, m, n):
                yield m, _apply_letters(letters, m)
        m = Move(COMMUTE, p)
        if _legal(letters, m, n):
            yield m, _apply_letters(letters, m)


def _path(parents: dict, node) -> list[Move]:
    moves = []
    while parents[node] is not None:
        prev, move = parents[node]
        moves.append(move)
        node = prev
    moves.reverse()
    return moves


def _search(src: tuple[int, ...], dst: tuple[int, ...], n: int,
            rng: random.Random | None) -> tuple[Move, ...]:
    if src == dst:
        return ()
    fwd = {src: None}
    bwd = {dst: None}
    qf, qb = deque([src]), deque([dst])
    while qf and qb:
        # expand the smaller side by one full layer
        forward = len(qf) <= len(qb)
        queue, seen, other = (qf, fwd, bwd) if forward else (qb, bwd, fwd)
        for _ in range(len(queue)):
            node = queue.popleft()
            nbrs = list(neighbors(node, n))
            if rng is not None:
                rng.shuffle(nbrs)
            for move, nxt in nbrs:
                if nxt in seen:
                    continue
                seen[nxt] = (node, move)
                if nxt in other:
                    head = _path(fwd, nxt)
                    tail = _path(bwd, nxt)
                    return tuple(head + tail[::-1])
                queue.append(nxt)
    raise IllegalMoveError("no move sequence found")


@lru_cache(maxsize=256)
def _cached_search(src: tuple[int, ...], dst: tuple[int, ...], n: int) -> tuple[Move, ...]:
    return _search(src, dst, n, None)


def find_move_sequence(src: AffineWord, dst: AffineWord,
                       rng: random.Random | None = None) -> tuple[Move, ...]:
    """Braid and commutation moves carrying the reduced word src to dst.

    Bidirectional breadth-first search over reduced words.  With ``rng`` the
    neighbour order is shuffled, which usually yields a different (still
    shortest) sequence.
    """
    if src.n != dst.n:
        raise ValueError("rank mismatch")
    if not (is_reduced(src) and is_reduced(dst)):
        raise NotReducedError("both words must be reduced")
    if word_to_perm(src) != word_to_perm(dst):
        raise ValueError(f"{src} and {dst} are different elements")
    if rng is None:
        return _cached_search(src.letters, dst.letters, src.n)
    return _search(src.letters, dst.letters, src.n, rng)


def random_walk(word: AffineWord, steps: int, rng: random.Random) -> tuple[Move, ...]:
    """A random sequence of legal moves starting at word."""
    letters = word.letters
    moves = []
    for _ in range(steps):
        nbrs = list(neighbors(letters, word.n))
        if not nbrs:
            break
        move, letters = rng.choice(nbrs)
        moves.append(move)
    return tuple(moves)


def apply_letters(word: AffineWord, moves: Sequence[Move]) -> AffineWord:
    letters = word.letters
    for m in moves:
        if not _legal(letters, m, word.n):
            raise IllegalMoveError(f"{m} not legal on {AffineWord(word.n, letters)}")
        letters = _apply_letters(letters, m)
    return AffineWord(word.n, letters)


def transform_weights(weights: Sequence[Scalar], moves: Sequence[Move]) -> list[Scalar]:
    """Apply the weight part of a (pre-validated) move sequence."""
    w = list(weights)
    for m in moves:
        p = m.pos
        if m.kind == BRAID:
            w[p], w[p + 1], w[p + 2] = braid_move(w[p], w[p + 1], w[p + 2])
        else:
            w[p], w[p + 1] = w[p + 1], w[p]
    return w


@dataclass(frozen=True)
class WeightedWord:
    letters: AffineWord
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if len(self.weights) != len(self.letters):
            raise ValueError("need one weight per letter")
        for x in self.weights:
            if not x > 0:
                raise PositivityError(f"weights must be positive, got {x}")

    @property
    def n(self) -> int:
        return self.letters.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "letters": list(self.letters.letters),
            "weights": [str(Fraction(x)) if isinstance(x, Fraction) else x for x in self.weights],
        }

    @classmethod
    def from_json(cls, data: dict, mode: str = "exact") -> WeightedWord:
        word = AffineWord(int(data["n"]), tuple(data["letters"]))
        return cls(word, tuple(to_scalar(x, mode) for x in data["weights"]))


def apply_moves(w: WeightedWord, seq: Sequence[Move]) -> WeightedWord:
    letters = apply_letters(w.letters, seq)
    return WeightedWord(letters, tuple(transform_weights(w.weights, seq)))


class Interaction:
    """The map F_{v,u}: (z, y) -> (y', z') for a fixed state and carrier word.

    The move sequence from vu to rho^{k2}(u) rho^{-k1}(v) is found once.
    """

    def __init__(self, u: Glide, v: Glide, moves: Sequence[Move] | None = None):
        if u.n != v.n:
            raise ValueError("rank mismatch")
        self.u, self.v = u, v
        self.source, self.target = product_identity_words(u, v)
        if moves is None:
            moves = find_move_sequence(self.source, self.target)
        elif apply_letters(self.source, moves) != self.target:
            raise IllegalMoveError("move sequence does not reach the target word")
        self.moves = tuple(moves)

    def __call__(self, z: Sequence[Scalar], y: Sequence[Scalar]) -> tuple[list, list]:
        if len(z) != len(self.v) or len(y) != len(self.u):
            raise ValueError("carrier/state lengths do not match the words")
        out = transform_weights(list(z) + list(y), self.moves)
        l = len(self.u)
        return out[:l], out[l:]

    def checked(self, z: Sequence[Scalar], y: Sequence[Scalar]) -> tuple[list, list]:
        for x in list(z) + list(y):
            if not x > 0:
                raise PositivityError(f"weights must be positive, got {x}")
        return self(z, y)


def interaction(u: Glide, v: Glide, z: Sequence[Scalar], y: Sequence[Scalar]):
    """F_{v,u}(z, y) = (y', z')."""
    return Interaction(u, v).checked(z, y)
