import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affine_dkdv.affine import AffinePermutation, AffineWord, Glide, is_reduced, random_glide, word_to_perm
from affine_dkdv.errors import NotNiceError, PositivityError
from affine_dkdv.network import (
    NiceSet,
    build_diagram,
    carrier_tilde,
    chamber_label,
    crossing_parameters,
    face_labels,
    label_below,
    label_shift,
    normalize,
    positive_weights_for,
    same_mod_ones,
    scale,
    time_shift,
    trajectory,
    wire_ansatz,
)


def _brute_label(members: set[int], n: int) -> tuple[int, ...]:
    # largest member of each residue class, by scanning a finite range
    out = []
    for c in range(1, n + 1):
        best = max(b for b in members if (b - c) % n == 0)
        out.append(-((-best) // n))
    return tuple(out)


def test_nice_set_examples():
    assert chamber_label(NiceSet(3, -1)) == (0, 0, -1)
    assert chamber_label(NiceSet(3, 2, frozenset({3, 4}))) == (2, 1, 1)
    assert chamber_label(NiceSet(5, 4, frozenset({5, 6}))) == (2, 1, 1, 1, 1)
    assert NiceSet(3, 2, frozenset({3, 4})).level() == 4


def test_not_nice():
    with pytest.raises(NotNiceError):
        chamber_label(NiceSet(3, 0, frozenset({4})))
    with pytest.raises(NotNiceError):
        chamber_label(NiceSet(3, 0, holes=frozenset({-3})))


@settings(max_examples=80)
@given(st.integers(3, 6), st.integers(-10, 10), st.data())
def test_label_below_matches_set_scan(n, p, data):
    window = data.draw(st.permutations(range(1, n + 1)))
    shifts = data.draw(st.lists(st.integers(-2, 2), min_size=n - 1, max_size=n - 1))
    shifts.append(-sum(shifts))
    sigma = AffinePermutation(tuple(w + n * s for w, s in zip(window, shifts)))
    members = {sigma(r) for r in range(p - 6 * n, p + 1)}
    assert label_below(sigma, p) == _brute_label(members, n)


@pytest.mark.parametrize("word,expected", [
    ("s1s2s0s2", (-1, 1, 0)),
    ("s1s2s1s0", (-1, 0, 1)),
    ("s2s1", (0, 0, 1)),
])
def test_trajectories(word, expected):
    assert same_mod_ones(trajectory(Glide.parse(3, word)), expected)


def test_trajectory_faces_at_ends():
    # |u: labels between wires 1 and 2 are (1,0,0) on the left
    assert label_below(AffinePermutation.identity(3), 1) == (1, 0, 0)


def test_crossing_classes():
    d = build_diagram(AffineWord.parse(3, "s1s2s0s2"))
    assert [c.classes(3) for c in d.crossings] == [(1, 2), (1, 3), (1, 2), (3, 2)]


def test_carrier_state_crossings_and_ansatz():
    u, v = Glide.parse(3, "s2s1"), Glide.parse(3, "s1s2s1s0")
    d = build_diagram(v.word + u.word, cut=len(v))
    assert [c.classes(3) for c in d.crossings] == [(1, 2), (1, 3), (2, 3), (1, 3), (2, 3), (1, 3)]
    w, z = wire_ansatz(u, v, (0, 3, 4))
    assert w == [1, 4] and z == [3, 4, 1, 4]


def test_n4_crossing_parameters():
    d = build_diagram(AffineWord.parse(4, "s3s2s1"))
    assert [c.classes(4) for c in d.crossings] == [(3, 4), (2, 4), (1, 4)]
    # carrier z = (a1 - a4, a1 - a3, a1 - a2) in the numbering of v|u
    u, v = Glide.parse(4, "s0s1s2s3s2s1"), Glide.parse(4, "s3s2s1")
    d = build_diagram(v.word + u.word, cut=len(v))
    alpha = (40, 30, 20, 10)
    assert crossing_parameters(d, alpha)[:3] == [40 - 10, 40 - 20, 40 - 30]


def test_ansatz_positivity_guard():
    u, v = Glide.parse(3, "s1s2s1s0"), Glide.parse(3, "s1s0")
    with pytest.raises(PositivityError):
        wire_ansatz(u, v, (3, 2, 1))


def test_face_labels_agree_mod_ones_across_levels():
    d = build_diagram(AffineWord.parse(3, "s1s2s1s0"))
    sigma = AffinePermutation(d.left.window)
    for p in range(1, 4):
        assert same_mod_ones(label_below(sigma, p), label_below(sigma, p + 3))
    labels = face_labels(d)
    assert labels[(0, 1)] == (1, 0, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 5), st.integers(0, 10 ** 6))
def test_positive_weights_for_random_products(n, seed):
    rng = random.Random(seed)
    u = random_glide(n, rng, 6)
    v = random_glide(n, rng, 5)
    if not (len(u) and len(v)) or not is_reduced(v.word + u.word):
        return
    alpha = positive_weights_for(v.word + u.word, cut=len(v))
    w, z = wire_ansatz(u, v, alpha)
    assert all(x > 0 for x in w + z)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 5), st.integers(0, 10 ** 6))
def test_time_shift_is_minus_trajectory_of_tilde(n, seed):
    v = random_glide(n, random.Random(seed), 8)
    assert same_mod_ones(time_shift(v), scale(-1, trajectory(carrier_tilde(v))))


def test_label_shift_linear():
    u, v = Glide.parse(3, "s1s2s1s0"), Glide.parse(3, "s1s0")
    a = label_shift(2, 3, u, v)
    b = label_shift(1, 1, u, v)
    c = label_shift(1, 2, u, v)
    assert a == tuple(x + y for x, y in zip(b, c))


def test_trajectory_of_power_is_sum():
    u = Glide.parse(3, "s1s2s1s0")
    uu = Glide.from_word(u.word + u.word)
    assert same_mod_ones(trajectory(uu), scale(2, trajectory(u)))


def test_normalize():
    assert normalize((5, 4, 6)) == (0, -1, 1)
    assert same_mod_ones(normalize((7, 2, 1)), (7, 2, 1))


def test_word_to_perm_is_right_end_map():
    w = AffineWord.parse(3, "s1s2s1s0")
    d = build_diagram(w)
    last = d.crossings[-1]
    sigma = word_to_perm(w[:-1])
    assert (last.lower, last.upper) == (sigma(3), sigma(4))
