"""
The assembled system: a state glide u, a carrier glide v, wire weights, and
the carrier sweep acting on a window of a bi-infinite state sequence.

States outside the stored window are the vacuum.  Because the vacuum and
the initial carrier are an exact fixed pair, entering the carrier at the
left edge of the window with the initial carrier is exact whenever the
states to the left of the window are vacuum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .affine import AffineWord, Glide, is_reduced, rho_shift, word_to_perm, weak_order_leq
from .errors import NotReducedError, PositivityError
from .lusztig import Interaction, to_scalar
from .network import add, build_diagram, label_shift, positive_weights_for, wire_ansatz
from .tau import TauFunction, vertex_weight


def _rel(a, b) -> float:
    a, b = float(a), float(b)
    return abs(a - b) / max(abs(b), 1e-300)


@dataclass(frozen=True)
class SystemInstance:
    u: Glide
    v: Glide
    alpha: tuple
    vacuum: tuple
    carrier: tuple
    mode: str = "exact"
    interaction: Interaction = field(repr=False, compare=False, default=None)

    @property
    def n(self) -> int:
        return self.u.n

    def to_json(self) -> dict:
        enc = lambda x: str(x) if isinstance(x, Fraction) else x  # noqa: E731
        return {
            "n": self.n,
            "u": list(self.u.letters),
            "v": list(self.v.letters),
            "alpha": [enc(a) for a in self.alpha],
            "vacuum": [enc(a) for a in self.vacuum],
            "carrier": [enc(a) for a in self.carrier],
            "mode": self.mode,
        }


def make_instance(u: Glide, v: Glide, alpha: Sequence | None = None, mode: str = "exact",
                  fixed_point_tol: float = 1e-12) -> SystemInstance:
    if u.n != v.n:
        raise ValueError("rank mismatch")
    vu = v.word + u.word
    if not is_reduced(vu):
        raise NotReducedError(f"vu = {vu} is not reduced")
    if alpha is None:
        alpha = positive_weights_for(vu, cut=len(v))
    alpha = tuple(to_scalar(a, mode) for a in alpha)
    vacuum, carrier = wire_ansatz(u, v, alpha)
    F = Interaction(u, v)
    y, z = F(carrier, vacuum)
    if mode == "exact":
        if list(y) != list(vacuum) or list(z) != list(carrier):
            raise RuntimeError("wire ansatz pair is not a fixed point of the interaction")
    else:
        worst = max(_rel(a, b) for a, b in zip(list(y) + list(z), list(vacuum) + list(carrier)))
        if worst > fixed_point_tol:
            raise RuntimeError(f"wire ansatz fixed point off by {worst:g}")
    return SystemInstance(u, v, alpha, tuple(vacuum), tuple(carrier), mode, F)


@dataclass
class StateSequence:
    """States y_start, ..., y_{start+len-1}; everything else is the vacuum."""

    start: int
    states: list
    vacuum: tuple

    @property
    def stop(self) -> int:
        return self.start + len(self.states)

    @property
    def indices(self) -> range:
        return range(self.start, self.stop)

    def __getitem__(self, i: int) -> tuple:
        if self.start <= i < self.stop:
            return self.states[i - self.start]
        return self.vacuum

    def edge_deviation(self) -> float:
        """Largest relative deviation from the vacuum in the two edge states."""
        if not self.states:
            return 0.0
        edges = [self.states[0], self.states[-1]]
        return max(_rel(x, w) for y in edges for x, w in zip(y, self.vacuum))

    @classmethod
    def vacuum_window(cls, inst: SystemInstance, lo: int, hi: int) -> StateSequence:
        return cls(lo, [tuple(inst.vacuum) for _ in range(lo, hi + 1)], tuple(inst.vacuum))

    def to_rows(self, m: int) -> list[list]:
        return [[m, i, *[float(x) for x in y]] for i, y in zip(self.indices, self.states)]


@dataclass
class SweepResult:
    states: StateSequence
    carrier: tuple
    carrier_deviation: float


def evolve_step(inst: SystemInstance, s: StateSequence) -> SweepResult:
    """One time step: the carrier enters at the left edge and sweeps right."""
    F = inst.interaction
    z = list(inst.carrier)
    out = []
    for y in s.states:
        y_new, z = F(z, y)
        out.append(tuple(y_new))
    dev = max((_rel(a, b) for a, b in zip(z, inst.carrier)), default=0.0)
    return SweepResult(StateSequence(s.start, out, s.vacuum), tuple(z), dev)


def evolve(inst: SystemInstance, s: StateSequence, steps: int):
    """Yield the sequence after each of ``steps`` time steps."""
    for _ in range(steps):
        s = evolve_step(inst, s).states
        yield s


def vertex_table(inst: SystemInstance) -> list[tuple]:
    """(label below, upper class, lower class) for each crossing of u at copy 0, time 0."""
    d = build_diagram(inst.v.word + inst.u.word, cut=len(inst.v))
    n = inst.n
    out = []
    for c in d.crossings[len(inst.v):]:
        lo, up = c.classes(n)
        out.append((c.below, up, lo))
    return out


def soliton_states(inst: SystemInstance, tf: TauFunction, m: int, lo: int, hi: int,
                   cylindric_tol: float = 1e-10) -> StateSequence:
    """States y_lo..y_hi at time m read off from the tau-function.

    The crossing h of copy i at time m sits above the chamber whose label is
    that of crossing h in the reference diagram v|u shifted by
    i t(u) - m t(v~).
    """
    spec = tf.spec
    if len(spec.alpha) != inst.n or any(float(a) != float(b) for a, b in zip(spec.alpha, inst.alpha)):
        raise ValueError("the soliton's wire weights differ from the instance's")
    if not spec.is_regular():
        raise ValueError("soliton components are not regular (some B_ij <= 0)")
    if not spec.is_cylindric(cylindric_tol):
        raise ValueError("soliton components are not cylindric")
    tau = TauFunction(spec, max_label=tf.max_label, reduce_labels=True)
    table = vertex_table(inst)
    alpha = spec.alpha
    states = []
    for i in range(lo, hi + 1):
        shift = label_shift(i, m, inst.u, inst.v)
        states.append(tuple(
            vertex_weight(tau, alpha, add(below, shift), up, low) for below, up, low in table
        ))
    return StateSequence(lo, states, tuple(inst.vacuum))


def observable_fh(s: StateSequence, h: int) -> dict[int, object]:
    """f_h(j): the h-th entry (1-based) of each state in the window."""
    if not 1 <= h <= len(s.vacuum):
        raise ValueError("h out of range")
    return {j: y[h - 1] for j, y in zip(s.indices, s.states)}


def random_block(inst: SystemInstance, lo: int, hi: int, block: tuple[int, int], rng,
                 low: float = 1.0, high: float = 10.0) -> StateSequence:
    """Vacuum window with the states in ``block`` (inclusive) drawn uniformly
    from [low, high).  ``rng`` is a numpy Generator."""
    s = StateSequence.vacuum_window(inst, lo, hi)
    if inst.mode == "float":
        s.vacuum = tuple(float(x) for x in s.vacuum)
        s.states = [tuple(float(x) for x in y) for y in s.states]
    l = len(inst.u)
    for j in range(block[0], block[1] + 1):
        s.states[j - lo] = tuple(float(x) for x in rng.uniform(low, high, size=l))
    return s


# -- commuting pairs ---------------------------------------------------------

def primitive_root(word: AffineWord) -> tuple[Glide, int] | None:
    """(v, l) with word = v rho^{-k}(v) ... rho^{-lk}(v), smallest v; None if
    the word is not a glide.  l = 0 means the word is primitive."""
    L = len(word)
    for m in range(1, L + 1):
        if L % m:
            continue
        head = word[:m]
        try:
            g = Glide.from_word(head)
        except Exception:
            continue
        copies = L // m
        rebuilt = AffineWord(word.n, ())
        for j in range(copies):
            rebuilt = rebuilt + rho_shift(head, -j * g.offset)
        if rebuilt == word:
            return g, copies - 1
    return None


def commuting_pair_check(v_word: AffineWord, u_word: AffineWord,
                         z: Sequence, w: Sequence) -> dict:
    """Check F(z, w) = (w, z) and, for powers of primitive glides, whether the
    weights are periodic and commute at the primitive level."""
    for x in list(z) + list(w):
        if not x > 0:
            raise PositivityError(f"weights must be positive, got {x}")
    v, u = Glide.from_word(v_word), Glide.from_word(u_word)
    F = Interaction(u, v)
    y_new, z_new = F(z, w)
    report = {
        "commuting": list(y_new) == list(w) and list(z_new) == list(z),
        "y_out": list(y_new),
        "z_out": list(z_new),
        "periodic": None,
        "primitive_commuting": None,
    }
    rv, ru = primitive_root(v_word), primitive_root(u_word)
    if rv is None or ru is None or (rv[1] == 0 and ru[1] == 0):
        return report
    pv, pu = rv[0], ru[0]
    mv, mu = len(pv), len(pu)
    report["primitive_carrier"] = str(pv)
    report["primitive_state"] = str(pu)
    report["periodic"] = (all(z[i] == z[i + mv] for i in range(len(z) - mv))
                          and all(w[j] == w[j + mu] for j in range(len(w) - mu)))
    if report["periodic"] and is_reduced(pv.word + pu.word):
        Fp = Interaction(pu, pv)
        yp, zp = Fp(list(z[:mv]), list(w[:mu]))
        report["primitive_commuting"] = list(yp) == list(w[:mu]) and list(zp) == list(z[:mv])
    return report


# -- carrier-free locality ---------------------------------------------------

def carrier_free_condition(u: Glide, v: Glide) -> bool:
    """Every wire pair crossing in vu also crosses inside the u portion."""
    d = build_diagram(v.word + u.word, cut=len(v))
    m = len(v)
    return d.crossing_pairs(0, m) <= d.crossing_pairs(m)


def carrier_free_radius(u: Glide, v: Glide, max_r: int = 20) -> int | None:
    """Smallest r such that some reduced word for
    rho^{r k1}(u) ... rho^{k1}(u) u ends in vu, or None up to max_r."""
    vu_inv = word_to_perm(v.word + u.word).inverse()
    w = AffineWord(u.n, ())
    for r in range(max_r + 1):
        w = rho_shift(u.word, r * u.offset) + w
        if is_reduced(w) and weak_order_leq(vu_inv, word_to_perm(w).inverse()):
            return r
    return None


@dataclass
class ProbeReport:
    r: int
    delta: float
    y0: tuple
    y0_perturbed: tuple


def window_probe(inst: SystemInstance, s: StateSequence, r: int, eps=Fraction(1, 10),
                 target: int = 0) -> ProbeReport:
    """Sensitivity of y'_target to the carrier entering r states to its left.

    Sweeps y_{target-r} .. y_target twice, once with the initial carrier and
    once with every entry scaled by (1 + eps), and reports the largest
    relative change of the resulting y'_target.
    """
    F = inst.interaction
    states = [s[i] for i in range(target - r, target + 1)]
    if inst.mode == "float":
        eps = float(eps)
    outs = []
    for factor in (1, 1 + eps):
        z = [x * factor for x in inst.carrier]
        for y in states:
            y_new, z = F(z, y)
        outs.append(tuple(y_new))
    delta = max(abs(a - b) / abs(a) for a, b in zip(*outs))
    return ProbeReport(r, float(delta) if not isinstance(delta, Fraction) else delta, outs[0], outs[1])
