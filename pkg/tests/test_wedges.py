import numpy as np
import pytest
from hypothesis import given, settings

from conftest import seeds
from wedgelab.errors import NotDisjoint, NotLightlike, NotNormalForm, ParallelGenerators, PastDirected
from wedgelab.feasibility import enlargement_oracle, wedges_intersect
from wedgelab.minkowski import L1M, L1P, L2M, L2P, L3P, mdot
from wedgelab.poincare import act
from wedgelab.sampling import random_disjoint_pair, random_restricted_element, random_wedge
from wedgelab.wedges import (
    STANDARD_WEDGE as W_R,
    Wedge,
    causal_complement,
    characteristic_data,
    contains_point,
    are_disjoint,
    is_maximal_pair,
    is_spacelike_separated,
    is_subset,
    make_wedge,
    normal_form_criterion,
    project_time_x1,
)

TILTED = (1.0, 0.6, 0.8, 0.0)
W_R_PRIME = causal_complement(W_R)


def points(rng, n=400, scale=3.0):
    return rng.uniform(-scale, scale, size=(n, 4))


def same_membership(w1, w2, rng):
    return all(contains_point(w1, x) == contains_point(w2, x) for x in points(rng))


# --- construction ----------------------------------------------------------------


def test_standard_wedge_is_right_wedge(rng):
    for x in points(rng):
        assert contains_point(W_R, x) == (x[1] > abs(x[0]))


def test_generators_are_scale_invariant():
    assert make_wedge(2 * L1P, 3 * L1M) == W_R
    w = make_wedge(2 * L1P, 3 * L1M)
    assert np.array_equal(w.l1, W_R.l1) and np.array_equal(w.l2, W_R.l2)


def test_edge_shift_canonicalizes_to_min_norm_point():
    # (0,0,5,7) lies in the edge plane of W_R itself, so the closest edge point is the origin.
    w = make_wedge(L1P, L1M, (0, 0, 5, 7))
    assert np.allclose(w.a, 0.0)
    assert w == W_R


def test_canonical_point_is_on_edge_and_orthogonal(rng):
    for _ in range(50):
        w = random_wedge(rng)
        assert mdot(w.a, w.l1) == pytest.approx(w.p1)
        # Euclidean orthogonality of a to the edge directions
        from scipy.linalg import null_space

        edge = null_space(np.vstack([w.l1 * [1, -1, -1, -1], w.l2 * [1, -1, -1, -1]]))
        assert np.allclose(w.a @ edge, 0.0, atol=1e-9)


@pytest.mark.parametrize(
    "l1, l2, err",
    [
        ((1, 0.5, 0, 0), L1M, NotLightlike),
        ((-1, -1, 0, 0), L1M, PastDirected),
        (L1P, (2, 2, 0, 0), ParallelGenerators),
        ((1, np.nan, 0, 0), L1M, ValueError),
    ],
)
def test_invalid_generators_raise(l1, l2, err):
    with pytest.raises(err):
        make_wedge(l1, l2)


def test_non_finite_edge_rejected():
    with pytest.raises(ValueError):
        make_wedge(L1P, L1M, (0, np.inf, 0, 0))


@given(seeds)
def test_canonical_form_idempotent(seed):
    w = random_wedge(np.random.default_rng(seed))
    again = make_wedge(w.l1, w.l2, w.a)
    assert again.deviation(w) <= 1e-14


def test_json_round_trip(rng):
    w = random_wedge(rng)
    assert Wedge.from_json(w.to_json()) == w


# --- membership and complement ----------------------------------------------------


@pytest.mark.parametrize(
    "x, inside", [((0, 1, 0, 0), True), ((0, -1, 0, 0), False), ((0.5, 0.7, 9, -3), True)]
)
def test_contains_examples(x, inside):
    assert contains_point(W_R, x) is inside


def test_boundary_points_are_not_members():
    assert not contains_point(W_R, (1, 1, 0, 0))
    assert not contains_point(W_R, (0, 0, 0, 0))


def test_complement_of_right_wedge_is_left_wedge(rng):
    for x in points(rng):
        assert contains_point(W_R_PRIME, x) == (x[1] < -abs(x[0]))


def test_complement_swaps_generators():
    w = make_wedge(L2P, L3P)
    c = causal_complement(w)
    assert c == make_wedge(L3P, L2P)


def test_complement_commutes_with_edge_translation(rng):
    shift = (0, 0, 1, 0)
    assert same_membership(causal_complement(W_R + shift), W_R_PRIME + shift, rng)


@given(seeds)
def test_complement_is_involutive(seed):
    w = random_wedge(np.random.default_rng(seed))
    assert causal_complement(causal_complement(w)) == w


# --- inclusion ---------------------------------------------------------------------


def test_subset_examples():
    assert is_subset(W_R + L1P, W_R)
    assert is_subset(W_R, W_R)
    assert not is_subset(W_R + (0, -1, 0, 0), W_R)
    # the witness point lies in the translate but not in W_R
    x = (0, -0.5, 0, 0)
    assert contains_point(W_R + (0, -1, 0, 0), x) and not contains_point(W_R, x)


@given(seeds)
def test_subset_agrees_with_sampled_membership(seed):
    rng = np.random.default_rng(seed)
    w = random_wedge(rng)
    inner = w + rng.uniform(0, 1) * w.l1 - rng.uniform(0, 1) * w.l2
    assert is_subset(inner, w)
    for x in points(rng, 200):
        if contains_point(inner, x):
            assert contains_point(w, x)


@given(seeds)
def test_family_members_are_linearly_ordered(seed):
    rng = np.random.default_rng(seed)
    data = characteristic_data(random_wedge(rng))
    for fam in (data.f_plus, data.f_minus):
        s, t = rng.uniform(-5, 5, size=2)
        a, b = fam.member(s), fam.member(t)
        assert is_subset(a, b) or is_subset(b, a)


# --- characteristic data -------------------------------------------------------------


def test_characteristic_data_of_right_wedge():
    d = characteristic_data(W_R)
    assert np.allclose(d.h_plus.l, L1M) and d.h_plus.p == 0 and d.h_plus.sign == 1
    assert np.allclose(d.h_minus.l, L1P) and d.h_minus.p == 0 and d.h_minus.sign == -1


def test_edge_shift_keeps_offsets():
    d = characteristic_data(W_R + (0, 0, 4, 0))
    assert d.h_plus.p == pytest.approx(0) and d.h_minus.p == pytest.approx(0)


def test_characteristic_offsets_after_generator_shift():
    d = characteristic_data(W_R + L1P)
    assert d.h_minus.p == pytest.approx(0)
    assert d.h_plus.p == pytest.approx(2.0)


def test_wedge_is_intersection_of_half_spaces(rng):
    w = random_wedge(rng)
    d = characteristic_data(w)
    for x in points(rng):
        assert contains_point(w, x) == (d.h_plus.contains(x) and d.h_minus.contains(x))


def test_family_union_is_half_space(rng):
    w = random_wedge(rng)
    d = characteristic_data(w)
    lams = np.linspace(-60, 60, 241)
    for fam, half in ((d.f_plus, d.h_plus), (d.f_minus, d.h_minus)):
        for x in points(rng, 100, scale=2.0):
            in_union = any(contains_point(fam.member(t), x) for t in lams)
            if in_union:
                assert half.contains(x)
            elif half.contains(x):
                # only points very close to the boundary can escape the finite sweep
                assert abs(mdot(x, half.l) - half.p) < 0.1


# --- projection ------------------------------------------------------------------


def test_projection_of_tilted_wedge():
    h = project_time_x1(make_wedge(L2P, TILTED))
    assert not h.is_all
    assert np.allclose(h.normal, (0.2, -0.6))
    assert h.offset == pytest.approx(0.0)


@pytest.mark.parametrize("l", [(1, 0, -1, 0), (1, 0.6, 0, 0.8)])
def test_projection_is_whole_plane(l):
    assert project_time_x1(make_wedge(L2P, l)).is_all


def test_projection_requires_normal_form():
    with pytest.raises(NotNormalForm):
        project_time_x1(W_R)


def test_projection_matches_sampled_shadow(rng):
    w = make_wedge(L2P, TILTED, (0.3, -0.2, 0.1, 0.4))
    h = project_time_x1(w)
    # every projected member lies in the half-plane
    for x in points(rng, 2000, scale=5):
        if contains_point(w, x):
            assert h.contains(x[:2]) or np.dot(h.normal, x[:2] - np.array(h.point)) > -1e-12


# --- disjointness and maximality ---------------------------------------------------------


def test_disjoint_examples():
    assert are_disjoint(W_R, W_R_PRIME)
    assert are_disjoint(W_R, make_wedge(L2P, TILTED))
    assert are_disjoint(W_R, make_wedge(L2P, TILTED, (0, -1, 0, 0)))
    assert not are_disjoint(W_R, W_R + (0, 5, 0, 0))


def test_disjoint_examples_agree_with_lp():
    for w in (W_R_PRIME, make_wedge(L2P, TILTED), make_wedge(L2P, TILTED, (0, -1, 0, 0))):
        assert not wedges_intersect(W_R, w)


def test_maximal_examples():
    assert is_maximal_pair(W_R, make_wedge(L2P, TILTED))
    assert not is_maximal_pair(W_R, make_wedge(L2P, TILTED, (0, -1, 0, 0)))
    # the complement shares both null hyperplanes and can slide
    assert not is_maximal_pair(W_R, W_R_PRIME)


def test_b_zero_case_is_disjoint_but_not_maximal():
    w = make_wedge(L2P, L1P)
    assert are_disjoint(W_R, w)
    assert not is_maximal_pair(W_R, w)
    assert enlargement_oracle(W_R, w).enlargeable


def test_maximality_requires_disjointness():
    with pytest.raises(NotDisjoint):
        is_maximal_pair(W_R, W_R + (0, 3, 0, 0))


def test_enlargement_witness_for_non_maximal_pair():
    res = enlargement_oracle(W_R, make_wedge(L2P, TILTED, (0, -1, 0, 0)))
    assert res.enlargeable and res.witness is not None
    assert not enlargement_oracle(W_R, make_wedge(L2P, TILTED)).enlargeable


def test_normal_form_rule_matches_general_criterion(rng):
    for _ in range(200):
        th = rng.uniform(-0.4, np.pi / 2 + 0.4)
        c = 0.0 if rng.random() < 0.7 else rng.uniform(-0.5, 0.5)
        s = np.sqrt(1 - c * c)
        l = (1, s * np.cos(th), s * np.sin(th), c)
        if np.allclose(l, L2P):
            continue
        d = rng.uniform(-1, 1, size=4) if rng.random() < 0.5 else np.zeros(4)
        w = make_wedge(L2P, l, d)
        disjoint, maximal = normal_form_criterion(l, d)
        assert disjoint == are_disjoint(W_R, w)
        if disjoint:
            assert maximal == is_maximal_pair(W_R, w)


@settings(max_examples=100)
@given(seeds)
def test_disjointness_agrees_with_lp_random(seed):
    rng = np.random.default_rng(seed)
    w1, w2 = random_wedge(rng), random_wedge(rng)
    assert are_disjoint(w1, w2) == (not wedges_intersect(w1, w2))
    assert are_disjoint(w1, w2) == are_disjoint(w2, w1)


@settings(max_examples=100)
@given(seeds)
def test_disjoint_pairs_agree_with_lp(seed):
    w1, w2 = random_disjoint_pair(np.random.default_rng(seed))
    assert are_disjoint(w1, w2) and are_disjoint(w2, w1)
    assert not wedges_intersect(w1, w2)


@settings(max_examples=40)
@given(seeds)
def test_maximality_agrees_with_enlargement(seed):
    w1, w2 = random_disjoint_pair(np.random.default_rng(seed))
    assert is_maximal_pair(w1, w2) == (not enlargement_oracle(w1, w2).enlargeable)
    assert is_maximal_pair(w1, w2) == is_maximal_pair(w2, w1)


@settings(max_examples=40)
@given(seeds)
def test_disjointness_is_poincare_invariant(seed):
    rng = np.random.default_rng(seed)
    w1, w2 = random_disjoint_pair(rng)
    g = random_restricted_element(rng)
    assert are_disjoint(act(g, w1), act(g, w2))


# --- spacelike separation ---------------------------------------------------------------


def test_spacelike_examples():
    assert is_spacelike_separated(W_R_PRIME + (0, -2, 0, 0), W_R)
    assert not is_spacelike_separated(W_R, W_R)
    assert not is_spacelike_separated(make_wedge(L2P, TILTED), W_R)


def test_deeper_wedge_sits_in_complement():
    # W_R + (0,2,0,0) ⊂ W_R = (W_R')'
    assert is_spacelike_separated(W_R + (0, 2, 0, 0), W_R_PRIME)


def _family_disjoint(w1, w2, lams=range(-10, 11)):
    d = characteristic_data(w2)
    return all(are_disjoint(w1, fam.member(t)) for fam in (d.f_plus, d.f_minus) for t in lams)


def test_tilted_pair_fails_family_criterion():
    w = make_wedge(L2P, TILTED)
    assert are_disjoint(w, W_R)
    assert not _family_disjoint(w, W_R)


@settings(max_examples=60)
@given(seeds)
def test_spacelike_separation_matches_family_criterion(seed):
    rng = np.random.default_rng(seed)
    w2 = random_wedge(rng)
    kind = rng.integers(3)
    if kind == 0:
        w1 = causal_complement(w2) - rng.uniform(0, 2) * w2.l2 + rng.uniform(0, 2) * w2.l1
    elif kind == 1:
        w1 = causal_complement(w2) + rng.uniform(0.1, 2) * w2.l2
    else:
        w1, w2 = random_disjoint_pair(rng)
    assert is_spacelike_separated(w1, w2) == _family_disjoint(w1, w2)
