import numpy as np
import pytest
from hypothesis import given

from conftest import seeds
from wedgelab import sl2c
from wedgelab.minkowski import METRIC, P3, PARITY, TIME_REFLECTION, boost
from wedgelab.poincare import ComponentLabel, classify_component
from wedgelab.sampling import random_sl2c


def rel_dev(a, b, scale=1.0):
    return float(np.max(np.abs(a - b))) / max(1.0, scale)


def test_covering_examples():
    assert np.allclose(sl2c.covering_map(np.eye(2)), np.eye(4))
    assert np.allclose(sl2c.covering_map(-np.eye(2)), np.eye(4))
    t = 0.9
    d = np.diag([np.exp(t / 2), np.exp(-t / 2)])
    assert np.allclose(sl2c.covering_map(d), boost((1, 0, 0), t), atol=1e-12)


def test_diagonal_covers_stabilizer_of_right_wedge():
    # a unit-modulus diagonal element covers a rotation about the 1-axis
    m = sl2c.covering_map(np.diag([np.exp(0.4j), np.exp(-0.4j)]))
    assert m[0, 0] == pytest.approx(1) and m[1, 1] == pytest.approx(1)
    assert classify_component(m) is ComponentLabel.PROPER_ORTHOCHRONOUS


@given(seeds)
def test_covering_is_homomorphism(seed):
    rng = np.random.default_rng(seed)
    a, b = random_sl2c(rng), random_sl2c(rng)
    ra, rb = sl2c.covering_map(a), sl2c.covering_map(b)
    assert rel_dev(sl2c.covering_map(a @ b), ra @ rb, np.abs(ra).max() * np.abs(rb).max()) <= 1e-9
    assert np.allclose(sl2c.covering_map(-a), ra)
    assert np.allclose(ra.T @ METRIC @ ra, METRIC, atol=1e-9 * np.abs(ra).max() ** 2)
    assert classify_component(ra) is ComponentLabel.PROPER_ORTHOCHRONOUS


def test_kernel_is_plus_minus_one(rng):
    # elements close to the identity but different from ±1 never cover the identity
    for _ in range(50):
        a = random_sl2c(rng, scale=0.3)
        if min(np.abs(a - np.eye(2)).max(), np.abs(a + np.eye(2)).max()) > 1e-3:
            assert not np.allclose(sl2c.covering_map(a), np.eye(4), atol=1e-9)


def test_reflection_action_examples():
    assert np.allclose(sl2c.reflection_action("PT", np.eye(2)), np.eye(2))
    t = 0.7
    d = np.diag([np.exp(t / 2), np.exp(-t / 2)])
    assert np.allclose(sl2c.reflection_action("PT", d), np.diag([np.exp(-t / 2), np.exp(t / 2)]))


def test_p3_action_on_upper_unipotent():
    z = 0.3 + 0.7j
    out = sl2c.reflection_action("P3", np.array([[1, z], [0, 1]]))
    # -R Ā R* evaluated entrywise; the overall sign is invisible to the covering map
    assert np.allclose(out, -np.array([[1, -np.conj(z)], [0, 1]]))


@given(seeds)
def test_reflection_actions_cover_conjugations(seed):
    a = random_sl2c(np.random.default_rng(seed))
    ra = sl2c.covering_map(a)
    s = np.abs(ra).max()
    pt = sl2c.covering_map(sl2c.reflection_action("PT", a))
    assert rel_dev(pt, TIME_REFLECTION @ ra @ TIME_REFLECTION, s) <= 1e-9
    assert rel_dev(pt, PARITY @ ra @ PARITY, s) <= 1e-9
    p3 = sl2c.covering_map(sl2c.reflection_action("P3", a))
    assert rel_dev(p3, P3 @ ra @ P3, s) <= 1e-9


def test_reflection_action_rejects_unknown_kind():
    with pytest.raises(ValueError):
        sl2c.reflection_action("Q", np.eye(2))


def test_case_map_examples(rng):
    b = random_sl2c(rng)
    assert np.allclose(sl2c.gamma_case_map("a", 1.0, b), b)
    l2, z = 0.4 + 1.1j, 2.0 - 0.5j
    out = sl2c.gamma_case_map("a", l2, np.array([[1, 0], [z, 1]]))
    assert np.allclose(out, [[1, 0], [z / l2, 1]])
    (al, be), (ga, de) = b
    out = sl2c.gamma_case_map("d", l2, b)
    assert np.allclose(out, [[de, l2 * ga], [be / l2, al]])


def test_case_map_rejects_zero():
    with pytest.raises(ValueError):
        sl2c.gamma_case_map("a", 0.0, np.eye(2))


@given(seeds)
def test_case_maps_are_automorphisms(seed):
    rng = np.random.default_rng(seed)
    l2 = complex(rng.uniform(0.3, 3) * np.exp(1j * rng.uniform(-np.pi, np.pi)))
    a, b = random_sl2c(rng), random_sl2c(rng)
    for case in "abcd":
        g = lambda x: sl2c.gamma_case_map(case, l2, x)  # noqa: E731
        assert np.linalg.det(g(b)) == pytest.approx(1.0, abs=1e-9)
        assert np.allclose(g(a @ b), g(a) @ g(b), atol=1e-9 * np.abs(a).max() * np.abs(b).max() * abs(l2) ** 2)
        scale = max(1.0, np.abs(sl2c.covering_map(b)).max()) * max(abs(l2), 1 / abs(l2)) ** 2
        assert sl2c.automorphism_deviation(case, l2, b) / scale <= 1e-9


@pytest.mark.parametrize("case, swaps", [("a", False), ("b", True), ("c", False), ("d", True)])
def test_case_maps_on_triangular_subgroups(case, swaps):
    upper = np.array([[2.0, 1 + 1j], [0, 0.5]])
    lower = upper.T.copy()
    for x in (upper, lower):
        y = sl2c.gamma_case_map(case, 1.7 - 0.3j, x)
        was_upper = x[1, 0] == 0
        is_upper = abs(y[1, 0]) < 1e-14
        is_lower = abs(y[0, 1]) < 1e-14
        if swaps:
            assert is_lower if was_upper else is_upper
        else:
            assert is_upper if was_upper else is_lower


def test_lower_unipotents_are_reached_by_case_a(rng):
    l2 = 0.5 + 0.8j
    for _ in range(20):
        w = complex(*rng.normal(size=2))
        z = w / (1 / l2 - 1)
        x = np.array([[1, 0], [z, 1]])
        y = sl2c.gamma_case_map("a", l2, x) @ np.linalg.inv(x)
        assert np.allclose(y, [[1, 0], [w, 1]])


def test_split_case_round_trip(rng):
    for case in "abcd":
        l2 = complex(rng.uniform(0.5, 2) * np.exp(1j * rng.uniform(-3, 3)))
        got_case, got = sl2c.split_case(sl2c.case_lorentz_matrix(case, l2))
        assert got_case == case and got == pytest.approx(l2)


def test_functional_equation_reports(rng):
    pairs = [(random_sl2c(rng), random_sl2c(rng)) for _ in range(100)]
    assert sl2c.check_functional_equation(lambda a: np.eye(4), pairs).max_deviation == 0.0

    def toy(a):
        # lands in the stabiliser of W_R but ignores the twisted product rule
        return sl2c.case_lorentz_matrix("a", complex(a[0, 0]) ** 2)

    report = sl2c.check_functional_equation(toy, pairs)
    assert report.max_deviation > 1e-3 and report.worst_index is not None


def test_json_round_trip(rng):
    a = random_sl2c(rng)
    assert np.allclose(sl2c.from_json(sl2c.to_json(a)), a)
    with pytest.raises(ValueError):
        sl2c.sl2c(2 * np.eye(2))
