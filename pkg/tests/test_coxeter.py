import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wedgelab.coxeter import (
    MODES,
    InvolutionFamily,
    check_covariance,
    covariance_failures,
    describe_labels,
    enumerate_families,
    fixed_point_transport_holds,
    fixedpoint_dichotomy_check,
    generate_group,
    group_labels,
)
from wedgelab.errors import SizeTooLarge
from wedgelab.permutations import (
    close_group,
    compose,
    cycle_notation,
    group_label,
    involutions,
    minimal_block_systems,
)

S2 = InvolutionFamily.from_cycles(2, [[(1, 2)], [(1, 2)]])
S3 = InvolutionFamily.from_cycles(3, [[(2, 3)], [(1, 3)], [(1, 2)]])


@pytest.fixture(scope="module")
def all_results():
    return {(n, mode, tr): enumerate_families(n, mode, tr)
            for n in range(1, 7) for mode in MODES for tr in (True, False)}


# --- permutation helpers -------------------------------------------------------------------


@pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 10), (5, 26), (6, 76)])
def test_involution_counts(n, count):
    assert len(involutions(n)) == count


def test_cycle_notation():
    assert cycle_notation((0, 1, 2)) == "()"
    assert cycle_notation((1, 0, 3, 2)) == "(1 2)(3 4)"


def test_group_labels():
    assert group_label(close_group([(1, 0)]), 2) == "S2"
    assert group_label(close_group([(1, 2, 3, 0)]), 4) == "Z4"
    assert group_label(close_group([(1, 0, 3, 2), (2, 3, 0, 1)]), 4) == "Z2^2"
    d4 = close_group([(1, 2, 3, 0), (0, 3, 2, 1)])
    assert len(d4) == 8 and group_label(d4, 4) == "D4"
    # S3 acting regularly on the six ordered pairs of distinct points of {0, 1, 2}
    pts = list(itertools.permutations(range(3), 2))

    def on_pairs(sigma):
        return tuple(pts.index((sigma[a], sigma[b])) for a, b in pts)

    s3_on_6 = close_group([on_pairs((1, 0, 2)), on_pairs((0, 2, 1))])
    assert len(s3_on_6) == 6 and group_label(s3_on_6, 6) == "S3"


def test_d4_block_system():
    gens = [(1, 2, 3, 0), (0, 3, 2, 1)]
    assert ((0, 2), (1, 3)) in minimal_block_systems(gens, 4)


# --- covariance ---------------------------------------------------------------------------------


def test_covariance_examples():
    assert check_covariance(S2)
    assert check_covariance(S3)
    bad = InvolutionFamily.from_cycles(3, [[(2, 3)], [(1, 3)], [(1, 3)]])
    assert not check_covariance(bad)
    assert covariance_failures(bad)


def test_family_rejects_non_involutions():
    with pytest.raises(ValueError):
        InvolutionFamily(((1, 2, 0), (0, 1, 2), (0, 1, 2)))


def test_family_json():
    assert S3.to_json() == {"n": 3, "tau": ["(2 3)", "(1 3)", "(1 2)"]}


@given(st.integers(1, 4), st.data())
def test_covariance_matches_brute_force(n, data):
    invs = involutions(n)
    tau = tuple(data.draw(st.sampled_from(invs)) for _ in range(n))
    fam = InvolutionFamily(tau)
    brute = all(compose(compose(tau[i], tau[j]), tau[i]) == tau[tau[i][j]]
                for i in range(n) for j in range(n))
    assert check_covariance(fam) == brute


# --- groups ------------------------------------------------------------------------------------------


def test_generate_group_examples():
    g = generate_group(S2)
    assert g.order == 2 and g.transitive and g.primitive and g.label == "S2"
    g = generate_group(S3)
    assert g.order == 6 and g.transitive and g.primitive and g.label == "S3"
    assert g.transitivity_degree == 3


def test_pairing_family_has_pair_blocks(all_results):
    fams = all_results[(6, "nonabelian-pairing", True)]
    assert fams
    for r in fams:
        pairing = r.family.pairing
        pairs = tuple(sorted(tuple(sorted((i, pairing[i]))) for i in range(6) if i < pairing[i]))
        assert pairs in r.group.block_systems
        assert not r.group.primitive


def test_block_sizes_divide_n(all_results):
    for (n, _, _), results in all_results.items():
        for r in results:
            for system in r.group.block_systems:
                assert n % len(system[0]) == 0


# --- enumeration ----------------------------------------------------------------------------------------


def test_size_bound():
    with pytest.raises(SizeTooLarge):
        enumerate_families(7)
    with pytest.raises(ValueError):
        enumerate_families(0)
    with pytest.raises(ValueError):
        enumerate_families(3, "other")


def test_two_points(all_results):
    assert group_labels(all_results[(2, "nonabelian-pairing", True)]) == ["S2"]
    assert group_labels(all_results[(2, "unconstrained", True)]) == ["S2"]
    # with every index fixed, an involution of two points fixing one fixes both
    assert all_results[(2, "all-fixed", True)] == []


def test_three_points_give_only_s3(all_results):
    for mode in ("all-fixed", "unconstrained"):
        assert group_labels(all_results[(3, mode, True)]) == ["S3"]
    fams = [r.family for r in all_results[(3, "all-fixed", True)]]
    assert S3 in fams or any(f.tau == S3.tau for f in fams)


def test_four_points_never_transitive(all_results):
    for mode in MODES:
        assert all_results[(4, mode, True)] == []


def test_odd_sizes(all_results):
    for n in (1, 3, 5):
        assert all_results[(n, "nonabelian-pairing", True)] == []
        # every transitive covariant family on an odd set has all indices fixed
        for r in all_results[(n, "unconstrained", True)]:
            assert len(r.family.fixed_indices()) == n
    assert group_labels(all_results[(5, "all-fixed", True)]) == ["D5"]


def test_six_points(all_results):
    assert group_labels(all_results[(6, "all-fixed", True)]) == ["S4"]
    assert group_labels(all_results[(6, "nonabelian-pairing", True)]) == ["S3"]
    assert group_labels(all_results[(6, "unconstrained", True)]) == ["S3", "S4"]


def test_enumeration_is_exhaustive_for_small_n(all_results):
    for n in range(1, 5):
        invs = involutions(n)
        brute = sorted(t for t in itertools.product(invs, repeat=n) if check_covariance(InvolutionFamily(t)))
        got = sorted(r.family.tau for r in all_results[(n, "unconstrained", False)])
        assert got == brute


def test_mode_constraints_respected(all_results):
    for (n, mode, _), results in all_results.items():
        for r in results:
            tau = r.family.tau
            assert check_covariance(r.family)
            if mode == "all-fixed":
                assert all(tau[i][i] == i for i in range(n))
            elif mode == "nonabelian-pairing":
                p = r.family.pairing
                assert all(tau[i][i] == p[i] for i in range(n))
                assert all(tau[j][p[i]] == p[tau[j][i]] for i in range(n) for j in range(n))


def test_fixed_point_properties(all_results):
    for (n, mode, transitive), results in all_results.items():
        for r in results:
            assert fixed_point_transport_holds(r.family)
            if transitive:
                assert fixedpoint_dichotomy_check(r.family)


def test_dichotomy_examples():
    assert fixedpoint_dichotomy_check(S3)
    assert fixedpoint_dichotomy_check(S2)


def test_enumeration_is_deterministic():
    a = [r.to_json() for r in enumerate_families(5, "unconstrained", False)]
    b = [r.to_json() for r in enumerate_families(5, "unconstrained", False)]
    assert a == b


def test_describe_labels():
    assert describe_labels([]) == "none"
    assert describe_labels(["S3"], exclusive=True) == "S3 only"
    assert describe_labels(["S3", "S4"]) == "S3, S4"
