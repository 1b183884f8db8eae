"""
Soliton tau-functions on chamber labels.

An N-soliton is fixed by wire weights alpha and triples (A_i, b_i, c_i):

    B_ij = (b_i - alpha_j) / (c_i - alpha_j)
    f_i([S]) = A_i * prod_j B_ij ** s_j
    Z_ij = (b_i - b_j)(c_i - c_j) / ((b_i - c_j)(c_i - b_j))
    tau([S]) = sum over T subset [N] of prod_{i<j in T} Z_ij * prod_{i in T} f_i

It is cylindric (invariant under [S] -> [S] + (1,...,1)) when
f(b_i) = f(c_i) for f(t) = prod_j (t - alpha_j).
Values are exact when every parameter is a Fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (
    LabelRangeError,
    NoPartnerError,
    NonPositiveTauError,
    OutOfRangeError,
)
from .network import add, normalize, unit

DEFAULT_MAX_LABEL = 60
SUBSET_SUM_MAX_N = 12


def f_poly(alpha: Sequence, t):
    out = 1
    for a in alpha:
        out *= t - a
    return out


def _deflate(alpha: Sequence, b) -> list:
    """Coefficients (highest first) of (f(t) - f(b)) / (t - b)."""
    coeffs = [1]
    for a in alpha:  # multiply by (t - a)
        coeffs = [x - a * y for x, y in zip(coeffs + [0], [0] + coeffs)]
    coeffs[-1] -= f_poly(alpha, b)
    q = [coeffs[0]]
    for c in coeffs[1:-1]:  # synthetic division by (t - b)
        q.append(c + b * q[-1])
    return q


def _horner(coeffs: Sequence, t):
    acc = 0
    for c in coeffs:
        acc = acc * t + c
    return acc


def topological_modes(alpha: Sequence) -> list[tuple]:
    """Bounded components of R minus the wire weights."""
    vals = sorted(set(alpha))
    return list(zip(vals[:-1], vals[1:]))


def mode_of(alpha: Sequence, x) -> tuple | None:
    for lo, hi in topological_modes(alpha):
        if lo < x < hi:
            return lo, hi
    return None


def solve_partner(alpha: Sequence, b, tol: float = 1e-12):
    """The c != b in b's component with f(c) = f(b).

    Bisection on the deflated polynomial (f(t) - f(b)) / (t - b), which has
    exactly one root in the component.  For Fraction input the mirror point
    of a symmetric weight set is tried first, giving an exact answer.
    """
    mode = mode_of(alpha, b)
    if mode is None:
        raise OutOfRangeError(f"b={b} is not inside a bounded component of R minus {list(alpha)}")
    lo, hi = mode
    exact = isinstance(b, Fraction) and all(isinstance(a, (int, Fraction)) for a in alpha)
    fb = f_poly(alpha, b)
    if exact:
        mirror = Fraction(min(alpha) + max(alpha)) - b
        if mirror != b and lo < mirror < hi and f_poly(alpha, mirror) == fb:
            return mirror
    q = _deflate([float(a) for a in alpha], float(b))
    hb = _horner(q, float(b))  # = f'(b)
    scale_ = sum(abs(c) for c in q) * max(1.0, abs(float(b))) ** (len(q) - 1)
    if abs(hb) <= 1e-14 * scale_:
        raise NoPartnerError(f"b={b} is a critical point of f; only c = b solves f(c) = f(b)")
    flo = _horner(q, float(lo))
    if (flo > 0) != (hb > 0):
        left, right = float(lo), float(b)
    else:
        left, right = float(b), float(hi)
    gl = _horner(q, left)
    for _ in range(2000):
        mid = 0.5 * (left + right)
        if mid in (left, right):
            break
        gm = _horner(q, mid)
        if gm == 0:
            left = right = mid
            break
        if (gm > 0) == (gl > 0):
            left, gl = mid, gm
        else:
            right = mid
    c = 0.5 * (left + right)
    fbf = float(fb)
    if abs(f_poly([float(a) for a in alpha], c) - fbf) > tol * (1 + abs(fbf)):
        raise NoPartnerError(f"bisection failed to converge for b={b}")
    return c


@dataclass(frozen=True)
class Soliton:
    A: object
    b: object
    c: object


@dataclass(frozen=True)
class SolitonSpec:
    alpha: tuple
    components: tuple[Soliton, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "components", tuple(self.components))
        for k, s in enumerate(self.components):
            if s.b in self.alpha or s.c in self.alpha:
                raise ValueError(f"component {k}: b and c must differ from every wire weight")

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def N(self) -> int:
        return len(self.components)

    def B(self, i: int) -> tuple:
        s = self.components[i]
        return tuple((s.b - a) / (s.c - a) for a in self.alpha)

    def Z(self, i: int, j: int):
        si, sj = self.components[i], self.components[j]
        return (si.b - sj.b) * (si.c - sj.c) / ((si.b - sj.c) * (si.c - sj.b))

    def is_regular(self) -> bool:
        return all(x > 0 for i in range(self.N) for x in self.B(i))

    def cylindricity_defect(self, i: int) -> float:
        s = self.components[i]
        fb, fc = f_poly(self.alpha, s.b), f_poly(self.alpha, s.c)
        return abs(fb - fc) / (1 + abs(fb))

    def is_cylindric(self, tol: float = 1e-10) -> bool:
        return all(self.cylindricity_defect(i) <= tol for i in range(self.N))

    def is_exact(self) -> bool:
        vals = list(self.alpha) + [x for s in self.components for x in (s.A, s.b, s.c)]
        return all(isinstance(x, (int, Fraction)) for x in vals)

    def to_json(self) -> dict:
        def enc(x):
            return str(x) if isinstance(x, Fraction) else x
        return {
            "alpha": [enc(a) for a in self.alpha],
            "components": [{"A": enc(s.A), "b": enc(s.b), "c": enc(s.c)} for s in self.components],
        }

    @classmethod
    def from_json(cls, data: dict, mode: str = "float") -> SolitonSpec:
        """Components may omit ``c``; it is then solved from ``b``."""
        conv = (lambda x: Fraction(x)) if mode == "exact" else (lambda x: float(Fraction(x)) if isinstance(x, str) else float(x))
        alpha = tuple(conv(a) for a in data["alpha"])
        comps = []
        for comp in data.get("components", []):
            b = conv(comp["b"])
            c = conv(comp["c"]) if comp.get("c") is not None else solve_partner(alpha, b)
            comps.append(Soliton(conv(comp.get("A", 1)), b, c))
        return cls(alpha, tuple(comps))


@dataclass(frozen=True)
class TauFunction:
    spec: SolitonSpec
    max_label: int = DEFAULT_MAX_LABEL
    reduce_labels: bool = False  # shift labels by (1,...,1) first; cylindric specs only
    _B: tuple = field(init=False, repr=False, compare=False)
    _Z: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        spec = self.spec
        object.__setattr__(self, "_B", tuple(spec.B(i) for i in range(spec.N)))
        object.__setattr__(self, "_Z", {(i, j): spec.Z(i, j) for i, j in combinations(range(spec.N), 2)})

    @property
    def n(self) -> int:
        return self.spec.n

    def _label(self, S: Sequence[int]) -> tuple[int, ...]:
        if len(S) != self.n:
            raise ValueError("label length must equal the number of wires")
        S = tuple(S)
        if self.reduce_labels:
            S = normalize(S)
        if any(abs(s) > self.max_label for s in S):
            raise LabelRangeError(f"label {S} exceeds the bound {self.max_label}")
        return S

    def factors(self, S: Sequence[int]) -> list:
        S = self._label(S)
        out = []
        for comp, B in zip(self.spec.components, self._B):
            f = comp.A
            for Bj, sj in zip(B, S):
                f = f * Bj ** sj
            out.append(f)
        return out

    def by_subsets(self, S: Sequence[int]):
        fs = self.factors(S)
        N = len(fs)
        total = 0
        for mask in range(1 << N):
            members = [i for i in range(N) if mask >> i & 1]
            term = 1
            for i in members:
                term = term * fs[i]
            for i, j in combinations(members, 2):
                term = term * self._Z[i, j]
            total = total + term
        return total

    def by_determinant(self, S: Sequence[int]):
        fs = self.factors(S)
        comps = self.spec.components
        N = len(fs)
        for i in range(N):
            for j in range(N):
                if comps[i].b == comps[j].c:
                    raise ZeroDivisionError(f"b_{i} equals c_{j}")
        M = [[(1 if i == j else 0) + fs[i] * (comps[j].b - comps[j].c) / (comps[i].b - comps[j].c)
              for j in range(N)] for i in range(N)]
        return _det(M)

    def __call__(self, S: Sequence[int]):
        if self.spec.N <= SUBSET_SUM_MAX_N:
            return self.by_subsets(S)
        return self.by_determinant(S)


def _det(M: list[list]):
    """Determinant by Gaussian elimination with partial pivoting (exact for Fractions)."""
    M = [row[:] for row in M]
    N = len(M)
    det = 1
    for k in range(N):
        piv = max(range(k, N), key=lambda r: abs(M[r][k]))
        if M[piv][k] == 0:
            return 0 * det
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det = det * M[k][k]
        for r in range(k + 1, N):
            ratio = M[r][k] / M[k][k]
            for c in range(k, N):
                M[r][c] = M[r][c] - ratio * M[k][c]
    return det


def tau_eval(tf: TauFunction, S: Sequence[int]):
    return tf.by_subsets(S)


def tau_eval_det(tf: TauFunction, S: Sequence[int]):
    return tf.by_determinant(S)


def bhz_terms(tau, alpha: Sequence, S: Sequence[int], i: int, j: int, k: int) -> tuple:
    """The three products of the bilinear relation; wires i, j, k are 1-based."""
    if len({i, j, k}) != 3:
        raise ValueError("i, j, k must be distinct")
    n = len(alpha)
    ei, ej, ek = unit(n, i), unit(n, j), unit(n, k)
    a = lambda x: alpha[x - 1]  # noqa: E731
    return (
        (a(i) - a(j)) * tau(add(S, ek)) * tau(add(add(S, ei), ej)),
        (a(j) - a(k)) * tau(add(S, ei)) * tau(add(add(S, ej), ek)),
        (a(k) - a(i)) * tau(add(S, ej)) * tau(add(add(S, ei), ek)),
    )


def bhz_residual(tf, S: Sequence[int], i: int, j: int, k: int, alpha: Sequence | None = None):
    """Left side of the Hirota bilinear difference relation at [S]."""
    if alpha is None:
        alpha = tf.spec.alpha
    return sum(bhz_terms(tf, alpha, S, i, j, k))


def bhz_scale(tf, S: Sequence[int], i: int, j: int, k: int, alpha: Sequence | None = None) -> float:
    if alpha is None:
        alpha = tf.spec.alpha
    return max(abs(float(t)) for t in bhz_terms(tf, alpha, S, i, j, k))


def vertex_weight(tau, alpha: Sequence, S: Sequence[int], upper: int, lower: int):
    """Crossing parameter from the four surrounding chamber values.

    [S] is the chamber below the crossing; ``upper`` and ``lower`` are wire
    classes in 1..n.
    """
    if upper == lower:
        raise ValueError("a crossing needs two distinct wires")
    n = len(alpha)
    eu, el = unit(n, upper), unit(n, lower)
    t0 = tau(S)
    tu, tl = tau(add(S, eu)), tau(add(S, el))
    t2 = tau(add(add(S, eu), el))
    den = tu * tl
    if den == 0:
        raise ZeroDivisionError(f"tau vanishes next to label {tuple(S)}")
    for t in (t0, tu, tl, t2):
        if not t > 0:
            raise NonPositiveTauError(f"tau = {t} near label {tuple(S)}")
    return (alpha[upper - 1] - alpha[lower - 1]) * t0 * t2 / den


def slope(spec: SolitonSpec, i: int = 0) -> tuple[float, ...]:
    return tuple(math.log(float(x)) for x in spec.B(i))


def _dot(a: Sequence, b: Sequence) -> float:
    return sum(float(x) * float(y) for x, y in zip(a, b))


def speed(spec: SolitonSpec, tu: Sequence[int], tv: Sequence[int], i: int = 0) -> float:
    """p = (t(v~) . log B) / (t(u) . log B) for component i."""
    logB = slope(spec, i)
    den = _dot(tu, logB)
    if den == 0:
        raise ZeroDivisionError("t(u) . log B vanishes; soliton is degenerate")
    return _dot(tv, logB) / den


def swap_bc(tf: TauFunction, k: int) -> TauFunction:
    comps = list(tf.spec.components)
    s = comps[k]
    comps[k] = Soliton(s.A, s.c, s.b)
    return replace(tf, spec=SolitonSpec(tf.spec.alpha, tuple(comps)))


def swap_rescaled(tf: TauFunction, k: int) -> TauFunction:
    """Same b, c; A_j -> A_j / Z_kj (j != k) and A_k -> 1 / A_k."""
    spec = tf.spec
    comps = []
    for j, s in enumerate(spec.components):
        if j == k:
            comps.append(Soliton(1 / s.A, s.b, s.c))
        else:
            comps.append(Soliton(s.A / spec.Z(k, j), s.b, s.c))
    return replace(tf, spec=SolitonSpec(spec.alpha, tuple(comps)))


def swap_prefactor(tf: TauFunction, k: int, S: Sequence[int]):
    """A_k / prod_j B_kj ** s_j, relating the swapped and rescaled tau."""
    S = tf._label(S)
    out = tf.spec.components[k].A
    for Bj, sj in zip(tf.spec.B(k), S):
        out = out / Bj ** sj
    return out
