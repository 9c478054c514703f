import numpy as np
import pytest
from hypothesis import given, settings
from scipy.stats import unitary_group

from conftest import seeds
from wedgelab import catalog
from wedgelab.catalog import PAULI_X, PAULI_Z
from wedgelab.errors import ClosureCapExceeded, DimensionTooLarge, NotCyclicSeparating, RedundantFamily
from wedgelab.modular import (
    AlgebraFamily,
    MatrixAlgebra,
    algebra_from_generators,
    cgma_permutations,
    commutant,
    conjugate_algebra,
    diagonal_algebra,
    full_algebra,
    group_and_properties,
    internal_symmetry_kernel,
    is_cyclic_separating,
    modular_objects,
    operator_covariance_defect,
    span_distance,
    tensor_left,
    tensor_right,
    tomita_report,
)

M2 = full_algebra(2)
LEFT = tensor_left(M2, 2)
RIGHT = tensor_right(2, M2)
BELL = catalog.maximally_entangled(2)


def e(k, d):
    v = np.zeros(d, dtype=complex)
    v[k] = 1
    return v


# --- algebras ---------------------------------------------------------------------------------


def test_generated_algebra_examples():
    diag = algebra_from_generators(2, [PAULI_Z])
    assert diag.size == 2 and span_distance(diag, diagonal_algebra(2)) < 1e-10
    left = algebra_from_generators(4, [np.kron(b, np.eye(2)) for b in M2.basis])
    assert left.size == 4 and span_distance(left, LEFT) < 1e-10
    assert algebra_from_generators(2, [PAULI_X, PAULI_Z]).size == 4


def test_generated_algebra_is_closed_and_idempotent(rng):
    block = np.zeros((3, 3))
    block[1:, 1:] = rng.normal(size=(2, 2))
    m = algebra_from_generators(3, [block, np.diag([1.0, 2.0, 2.0])])
    assert m.closure_residual() < 1e-10
    assert m.contains(np.eye(3))
    again = algebra_from_generators(3, list(m.basis))
    assert span_distance(m, again) < 1e-10


def test_dimension_bound():
    with pytest.raises(DimensionTooLarge):
        algebra_from_generators(17, [np.eye(17)])


def test_commutant_examples():
    assert span_distance(commutant(LEFT), RIGHT) < 1e-10
    assert span_distance(commutant(diagonal_algebra(2)), diagonal_algebra(2)) < 1e-10
    scalars = commutant(M2)
    assert scalars.size == 1 and scalars.contains(np.eye(2))


def test_bicommutant(rng):
    u = unitary_group.rvs(4, random_state=1)
    m = MatrixAlgebra(4, tuple(u @ b @ u.conj().T for b in LEFT.basis))
    assert span_distance(commutant(commutant(m)), m) < 1e-9


# --- cyclic and separating vectors --------------------------------------------------------------


def test_cyclic_separating_examples():
    assert is_cyclic_separating(LEFT, BELL)
    assert not is_cyclic_separating(LEFT, e(0, 4))
    assert is_cyclic_separating(diagonal_algebra(2), np.ones(2) / np.sqrt(2))


def test_modular_objects_need_cyclic_separating():
    with pytest.raises(NotCyclicSeparating):
        modular_objects(LEFT, e(0, 4))


# --- modular objects -----------------------------------------------------------------------------


def test_maximally_entangled_closed_form(rng):
    mo = modular_objects(LEFT, BELL)
    assert np.allclose(mo.delta, np.eye(4), atol=1e-10)
    for _ in range(5):
        xi, eta = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        assert np.allclose(mo.j.apply(np.kron(xi, eta)), np.kron(eta.conj(), xi.conj()), atol=1e-10)


def test_schmidt_state_closed_form():
    omega = catalog.schmidt_vector((0.7, 0.3))
    d = np.diag([0.7, 0.3])
    mo = modular_objects(LEFT, omega)
    assert np.allclose(mo.delta, np.kron(d, np.linalg.inv(d)), atol=1e-9)


def test_abelian_closed_form():
    mo = modular_objects(diagonal_algebra(2), np.ones(2) / np.sqrt(2))
    assert np.allclose(mo.delta, np.eye(2), atol=1e-10)
    assert mo.j.parity == 1 and np.allclose(mo.j.u, np.eye(2), atol=1e-10)


def _random_pair(rng):
    """A cyclic separating (algebra, state) pair of dimension at most 9."""
    kind = rng.integers(3)
    if kind == 0:
        k = int(rng.integers(2, 4))
        w = rng.uniform(0.1, 1, size=k)
        m, omega = tensor_left(full_algebra(k), k), catalog.schmidt_vector(w / w.sum())
    elif kind == 1:
        k = int(rng.integers(2, 10))
        m = diagonal_algebra(k)
        omega = (rng.uniform(0.2, 1, size=k) * np.exp(1j * rng.uniform(0, 6, size=k)))
    else:
        # the right tensor factor with a non-maximally entangled state
        w = rng.uniform(0.05, 1, size=2)
        m, omega = tensor_right(2, full_algebra(2)), catalog.schmidt_vector(w / w.sum())
    u = unitary_group.rvs(m.dim, random_state=int(rng.integers(1 << 30)))
    m = MatrixAlgebra(m.dim, tuple(u @ b @ u.conj().T for b in m.basis))
    return m, u @ np.asarray(omega, dtype=complex)


@settings(max_examples=40)
@given(seeds)
def test_tomita_consistency(seed):
    m, omega = _random_pair(np.random.default_rng(seed))
    assert is_cyclic_separating(m, omega)
    report = tomita_report(m, omega)
    assert report.passed(1e-8), report.to_json()


@pytest.mark.parametrize("family", catalog.builtin_families(), ids=lambda f: f.name)
def test_tomita_consistency_on_catalog(family):
    for m in family.members:
        assert tomita_report(m, family.omega).passed(1e-8)


def test_abelian_cyclic_members_are_maximal(rng):
    for k in range(2, 8):
        m = diagonal_algebra(k)
        assert is_cyclic_separating(m, rng.uniform(0.2, 1, size=k))
        assert m.is_abelian()
        assert span_distance(commutant(m), m) < 1e-8


# --- permutations from modular conjugations ---------------------------------------------------------


def test_cgma_examples():
    r = cgma_permutations(catalog.tensor_split_family(2))
    assert r.ok and r.taus == [(1, 0), (1, 0)]
    r = cgma_permutations(catalog.diagonal_family(2))
    assert r.ok and r.taus == [(0,)]
    r = cgma_permutations(catalog.mismatched_family())
    assert not r.ok and r.violation is not None and min(r.distances) > 1e-3


def test_redundant_family_rejected():
    with pytest.raises(RedundantFamily):
        AlgebraFamily((LEFT, LEFT), BELL)


@pytest.mark.parametrize("family", catalog.builtin_families(), ids=lambda f: f.name)
def test_catalog_fixed_point_and_commutant_rules(family):
    r = cgma_permutations(family)
    assert r.ok
    assert operator_covariance_defect(r) <= 1e-8
    maximal = [span_distance(commutant(m), m) < 1e-8 for m in family.members]
    report = group_and_properties(r.taus, maximal_abelian=maximal)
    assert report.all_pass, report.to_json()
    for i, t in enumerate(r.taus):
        assert (t[i] == i) == maximal[i]


def test_bloch_triangle_gives_s3():
    r = cgma_permutations(catalog.bloch_triangle_family())
    report = group_and_properties(r.taus)
    assert report.order == 6 and report.label == "S3" and report.transitive and report.all_pass


# --- group closure and properties ---------------------------------------------------------------------


def test_group_examples():
    r = group_and_properties([(1, 0)])
    assert r.order == 2 and r.label == "S2" and r.all_pass
    s3 = [(0, 2, 1), (2, 1, 0), (1, 0, 2)]
    r = group_and_properties(s3)
    assert r.order == 6 and r.label == "S3" and r.covariant and r.all_pass
    r = group_and_properties([(1, 0, 2, 3), (0, 1, 3, 2)])
    assert r.order == 4 and r.label == "Z2^2" and not r.transitive


def test_non_covariant_family_flagged():
    r = group_and_properties([(0, 2, 1), (2, 1, 0), (2, 1, 0)])
    assert r.covariant is False and not r.all_pass


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        group_and_properties([(1, 2, 3, 4, 0), (1, 0, 2, 3, 4)], cap=10)


def test_order_reversal_on_synthetic_chain():
    # indices 0 ≤ 1 with τ swapping them reverses the order
    r = group_and_properties([(1, 0), (1, 0)], order_relations=[(0, 1)])
    assert r.order_reversal is True
    r = group_and_properties([(0, 1), (0, 1)], order_relations=[(0, 1)])
    assert r.fixed_points_atoms is False


# --- internal symmetries ---------------------------------------------------------------------------


def test_kernel_of_tensor_split():
    ker = internal_symmetry_kernel(catalog.tensor_split_family(2))
    assert len(ker) == 1 and ker[0].word == ()
    r = cgma_permutations(catalog.tensor_split_family(2))
    assert r.involutions[0].distance(r.involutions[1]) <= 1e-8


def test_kernel_of_single_abelian_member():
    ker = internal_symmetry_kernel(catalog.diagonal_family(2), max_word_len=3)
    assert [k.word for k in ker] == [()]
    assert all(k.internal and k.central for k in ker)
    odd = internal_symmetry_kernel(catalog.diagonal_family(2), max_word_len=1, even_only=False)
    assert any(k.operator.parity == 1 for k in odd)


def test_kernel_needs_valid_family():
    with pytest.raises(ValueError):
        internal_symmetry_kernel(catalog.mismatched_family())


def test_family_json_round_trip():
    fam = catalog.bloch_triangle_family()
    again = AlgebraFamily.from_json(fam.to_json())
    assert all(span_distance(a, b) < 1e-9 for a, b in zip(fam.members, again.members))
    assert cgma_permutations(again).taus == cgma_permutations(fam).taus
