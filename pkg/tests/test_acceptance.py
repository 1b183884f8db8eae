"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is
printed in the terminal summary."""

import csv
import math
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from affine_dkdv.affine import Glide, is_reduced, random_glide
from affine_dkdv.cli import EMERGENCE, run_evolution, speed_scan
from affine_dkdv.dkdv import (
    StateSequence,
    carrier_free_condition,
    evolve_step,
    make_instance,
    random_block,
    soliton_states,
    window_probe,
)
from affine_dkdv.lusztig import Interaction, apply_letters, find_move_sequence, random_walk, transform_weights
from affine_dkdv.network import carrier_tilde, same_mod_ones, trajectory
from affine_dkdv.tau import (
    Soliton,
    SolitonSpec,
    TauFunction,
    bhz_residual,
    bhz_scale,
    slope,
    solve_partner,
    swap_bc,
    swap_prefactor,
    swap_rescaled,
    vertex_weight,
)

GOLDEN = Path(__file__).parent / "data" / "emergence_golden.csv"
ALPHA = (1.0, 3.0, 4.0)
U_BASE, V_BASE = Glide.parse(3, "s1s2s1s0"), Glide.parse(3, "s1s0")


def rational(rng):
    return Fraction(rng.randint(1, 1000), rng.randint(1, 1000))


def float_spec(bs, As):
    return SolitonSpec(ALPHA, tuple(Soliton(A, b, solve_partner(ALPHA, b)) for A, b in zip(As, bs)))


def test_c01_interaction_regression(criterion):
    """1. interaction map for u=s1s2s1s0, v=s1s0 matches the closed form exactly"""
    t0 = time.perf_counter()
    F = Interaction(U_BASE, V_BASE)
    rng = random.Random(1)
    for _ in range(100):
        a, b, c, d, e, f = (rational(rng) for _ in range(6))
        y, z = F([e, f], [a, b, c, d])
        assert y == [f * a / (e + a), e + a, e * f / (e + a), b]
        assert z == [c, d]
    dt = time.perf_counter() - t0
    criterion(f"100 inputs, {dt:.3f}s")
    assert dt < 1


def test_c02_n4_regression(criterion):
    """2. the nine update formulas for u=s0s1s2s3s2s1, v=s3s2s1 (n=4) hold exactly"""
    t0 = time.perf_counter()
    F = Interaction(Glide.parse(4, "s0s1s2s3s2s1"), Glide.parse(4, "s3s2s1"))
    rng = random.Random(2)
    for _ in range(100):
        y1, y2, y3, y4, y5, y6, z1, z2, z3 = (rational(rng) for _ in range(9))
        y, z = F([z1, z2, z3], [y1, y2, y3, y4, y5, y6])
        assert y == [
            z1,
            y1 * y2 / (z3 + y2),
            (z3 + y2) * y3 / (z2 + y3),
            z2 + y3,
            (z3 + y2) * z2 / (z2 + y3),
            y1 * z3 / (z3 + y2),
        ]
        assert z == [y4, y5, y6]
    dt = time.perf_counter() - t0
    criterion(f"{len(F.moves)} moves, {dt:.3f}s")
    assert dt < 1


def test_c03_vacuum_fixed_point(criterion):
    """3. wire-ansatz pairs are exact fixed points"""
    t0 = time.perf_counter()
    inst = make_instance(Glide.parse(3, "s2s1"), Glide.parse(3, "s1s2s1s0"), (0, 3, 4))
    assert inst.vacuum == (1, 4) and inst.carrier == (3, 4, 1, 4)
    y, z = inst.interaction(inst.carrier, inst.vacuum)
    assert (tuple(y), tuple(z)) == (inst.vacuum, inst.carrier)
    rng = random.Random(3)
    count = 0
    while count < 12:
        n = rng.choice([3, 4, 5])
        u, v = random_glide(n, rng, 6), random_glide(n, rng, 5)
        if not (len(u) and len(v)) or not is_reduced(v.word + u.word):
            continue
        inst = make_instance(u, v)  # auto alpha; the exact check runs inside too
        y, z = inst.interaction(inst.carrier, inst.vacuum)
        assert list(y) == list(inst.vacuum) and list(z) == list(inst.carrier)
        assert all(isinstance(x, Fraction) for x in list(y) + list(z))
        count += 1
    dt = time.perf_counter() - t0
    criterion(f"{count} random instances + the (1,4) vacuum, {dt:.2f}s")
    assert dt < 5


def test_c04_move_independence(criterion):
    """4. two independent move sequences give bit-identical weights"""
    t0 = time.perf_counter()
    rng = random.Random(4)
    done, longest = 0, 0
    while done < 50:
        n = rng.randint(3, 5)
        u = random_glide(n, rng, 7)
        v = random_glide(n, rng, 14 - len(u))
        if not (len(u) and len(v)) or len(u) + len(v) > 14 or not is_reduced(v.word + u.word):
            continue
        F = Interaction(u, v)
        detour = random_walk(F.source, rng.randint(2, 12), rng)
        second = detour + find_move_sequence(apply_letters(F.source, detour), F.target, rng)
        weights = [rational(rng) for _ in range(len(F.source))]
        assert transform_weights(weights, F.moves) == transform_weights(weights, second)
        longest = max(longest, len(F.source))
        done += 1
    dt = time.perf_counter() - t0
    criterion(f"50 products, longest {longest}, {dt:.2f}s")
    assert dt < 60


def test_c05_bhz_residuals(criterion):
    """5. Hirota bilinear residuals vanish (float within 1e-9 of term scale, exact bit-exactly)"""
    t0 = time.perf_counter()
    rng = random.Random(5)
    worst = 0.0
    specs = [float_spec([1.5], [1.0]), float_spec([1.5, 3.2], [1.0, 2.0]),
             float_spec([1.5, 3.2, 2.2], [1.0, 2.0, 0.7])]
    for spec in specs:
        assert spec.is_cylindric() and spec.is_regular()
        tf = TauFunction(spec)
        for _ in range(500):
            S = tuple(rng.randint(-20, 20) for _ in range(3))
            i, j, k = rng.sample([1, 2, 3], 3)
            r = abs(bhz_residual(tf, S, i, j, k)) / bhz_scale(tf, S, i, j, k)
            worst = max(worst, r)
    assert worst <= 1e-9
    alpha = tuple(Fraction(a) for a in (-2, -1, 1, 2))
    comps = (Soliton(Fraction(1), Fraction(1, 2), Fraction(-1, 2)),
             Soliton(Fraction(3, 2), Fraction(-1, 3), Fraction(1, 3)))
    tf = TauFunction(SolitonSpec(alpha, comps))
    for _ in range(500):
        S = tuple(rng.randint(-20, 20) for _ in range(4))
        i, j, k = rng.sample([1, 2, 3, 4], 3)
        assert bhz_residual(tf, S, i, j, k) == 0
    dt = time.perf_counter() - t0
    criterion(f"worst scaled float residual {worst:.1e}, exact case 0, {dt:.2f}s")
    assert dt < 10


def test_c06_determinant_identity(criterion):
    """6. determinant evaluation equals the subset sum for N <= 4"""
    t0 = time.perf_counter()
    rng = random.Random(6)
    bs, As = [1.5, 3.2, 2.2, 3.7], [1.0, 2.0, 0.7, 1.3]
    worst = 0.0
    for N in range(1, 5):
        tf = TauFunction(float_spec(bs[:N], As[:N]))
        for _ in range(200):
            S = tuple(rng.randint(-15, 15) for _ in range(3))
            a, b = tf.by_determinant(S), tf.by_subsets(S)
            worst = max(worst, abs(a - b) / abs(b))
    assert worst <= 1e-10
    dt = time.perf_counter() - t0
    criterion(f"worst relative difference {worst:.1e}, {dt:.2f}s")
    assert dt < 5


def test_c07_tau_consistency(criterion):
    """7. one carrier sweep maps tau-generated states at time m to time m+1"""
    t0 = time.perf_counter()
    inst = make_instance(U_BASE, V_BASE, ALPHA, mode="float")
    notes = []
    for bs, As in (([1.5], [1.0]), ([1.5, 3.2], [1.0, 1.0])):
        tf = TauFunction(float_spec(bs, As))
        s = soliton_states(inst, tf, 0, -45, 45)
        worst, edge = 0.0, 0.0
        for m in range(11):
            nxt = soliton_states(inst, tf, m + 1, -45, 45)
            edge = max(edge, s.edge_deviation())
            got = evolve_step(inst, s).states
            worst = max(worst, max(abs(x - y) / abs(y) for a, b in zip(got.states, nxt.states)
                                   for x, y in zip(a, b)))
            s = nxt
        assert edge < 1e-10
        assert worst <= 1e-8
        notes.append(f"N={len(bs)} err {worst:.1e} edge {edge:.1e}")
    dt = time.perf_counter() - t0
    criterion(", ".join(notes) + f", {dt:.2f}s")
    assert dt < 30


def test_c08_trajectories(criterion):
    """8. trajectories of s1s2s0s2, s1s2s1s0 and s2s1"""
    t0 = time.perf_counter()
    assert same_mod_ones(trajectory(Glide.parse(3, "s1s2s0s2")), (-1, 1, 0))
    assert same_mod_ones(trajectory(Glide.parse(3, "s1s2s1s0")), (-1, 0, 1))
    assert same_mod_ones(trajectory(Glide.parse(3, "s2s1")), (0, 0, 1))
    assert carrier_tilde(V_BASE).word == Glide.parse(3, "s2s1").word
    dt = time.perf_counter() - t0
    criterion(f"{dt * 1000:.1f}ms")
    assert dt < 1


def test_c09_speed_properties(criterion):
    """9. positive speeds, a gap between modes, and the sign of both slopes"""
    t0 = time.perf_counter()
    rows, skipped = speed_scan(U_BASE, V_BASE, ALPHA, 200)
    assert not skipped
    tu, tv = trajectory(U_BASE), trajectory(carrier_tilde(V_BASE))
    for b, c, p, lo, hi in rows:
        assert p > 0
        logB = slope(SolitonSpec(ALPHA, (Soliton(1.0, b, c),)))
        du = sum(t * x for t, x in zip(tu, logB))
        dv = sum(t * x for t, x in zip(tv, logB))
        if b > c:
            assert du < 0 and dv < 0
        else:
            assert du > 0 and dv > 0
    slow = max(p for b, c, p, lo, hi in rows if lo == 1.0)
    fast = min(p for b, c, p, lo, hi in rows if lo == 3.0)
    assert slow < fast
    assert sum(1 for r in rows if r[3] == 1.0) == 200 and sum(1 for r in rows if r[3] == 3.0) == 200
    dt = time.perf_counter() - t0
    criterion(f"mode (1,3) max {slow:.3f} < mode (3,4) min {fast:.3f}, {dt:.2f}s")
    assert dt < 10


def test_c10_swap_symmetry(criterion):
    """10. swapping b and c equals rescaling the amplitudes, up to an exponential factor"""
    t0 = time.perf_counter()
    rng = random.Random(10)
    worst_tau = worst_v = 0.0
    for N in (2, 3):
        tf = TauFunction(float_spec([1.5, 3.2, 2.2][:N], [1.0, 2.0, 0.7][:N]))
        for k in range(N):
            sw, rs = swap_bc(tf, k), swap_rescaled(tf, k)
            for _ in range(100):
                S = tuple(rng.randint(-15, 15) for _ in range(3))
                worst_tau = max(worst_tau, abs(sw(S) / (swap_prefactor(tf, k, S) * rs(S)) - 1))
                up, low = rng.sample([1, 2, 3], 2)
                worst_v = max(worst_v, abs(vertex_weight(sw, ALPHA, S, up, low)
                                           / vertex_weight(rs, ALPHA, S, up, low) - 1))
    assert worst_tau <= 1e-10 and worst_v <= 1e-10
    dt = time.perf_counter() - t0
    criterion(f"tau {worst_tau:.1e}, vertex {worst_v:.1e}, {dt:.2f}s")
    assert dt < 5


def test_c11_carrier_free_dichotomy(criterion):
    """11. crossing condition and window probe agree for v=s1s0 with u=s1s2s1s0 and u=s1s2"""
    t0 = time.perf_counter()
    bad_u = Glide.parse(3, "s1s2")
    assert carrier_free_condition(U_BASE, V_BASE)
    assert not carrier_free_condition(bad_u, V_BASE)
    good = make_instance(U_BASE, V_BASE)
    s = StateSequence(-20, [(Fraction(9),) * 4] * 21, good.vacuum)
    assert window_probe(good, s, 1).delta == 0
    bad = make_instance(bad_u, V_BASE)
    s = StateSequence(-20, [(Fraction(9),) * 2] * 21, bad.vacuum)
    deltas = [window_probe(bad, s, r).delta for r in range(21)]
    assert min(deltas) > 1e-3
    dt = time.perf_counter() - t0
    criterion(f"condition-false min delta {float(min(deltas)):.2e} over r<=20, {dt:.2f}s")
    assert dt < 10


def test_c12_emergence_golden(criterion):
    """12. seeded emergence run (50 steps, 200 states) matches the stored golden CSV"""
    t0 = time.perf_counter()
    cfg = EMERGENCE
    inst = make_instance(Glide.parse(3, cfg["u"]), Glide.parse(3, cfg["v"]), cfg["alpha"], mode="float")
    lo, hi = cfg["window"]
    s = random_block(inst, lo, hi, tuple(cfg["initial"]["block"]), np.random.default_rng(0), 1.0, 10.0)
    rows, _, _ = run_evolution(inst, s, cfg["steps"], cfg["h"])
    dt = time.perf_counter() - t0
    with open(GOLDEN, newline="") as fh:
        golden = list(csv.reader(fh))[1:]
    assert len(golden) == len(rows) == 51 * 200
    worst = 0.0
    for (m, j, x), (gm, gj, gx) in zip(rows, golden):
        assert (m, j) == (int(gm), int(gj))
        worst = max(worst, abs(x - float(gx)) / abs(float(gx)))
    assert worst <= 1e-12 and not math.isnan(worst)
    criterion(f"worst relative difference {worst:.1e}, {dt:.2f}s")
    assert dt < 10
