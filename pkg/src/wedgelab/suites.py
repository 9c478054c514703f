"""Seeded invariant suites and demos behind the command line.

Every suite returns a :class:`SuiteResult` whose JSON form depends only on the seed
and tolerance, so two runs at the same seed serialize byte-identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import coxeter, desitter, modular, poincare, sl2c
from .catalog import bloch_triangle_family, builtin_families, schmidt_vector, tensor_split_family
from .feasibility import enlargement_oracle, wedges_intersect
from .minkowski import (
    IDENTITY4,
    L1M,
    L1P,
    L2M,
    L2P,
    P3,
    P3T,
    PARITY,
    STANDARD_REFLECTION,
    TIME_REFLECTION,
    TOTAL_REFLECTION,
)
from .reconstruction import WedgeBijectionOracle, counterexample_partial_wedges, reconstruct
from .sampling import (
    random_disjoint_pair,
    random_extended_element,
    random_restricted_element,
    random_sl2c,
    random_wedge,
)
from .wedges import (
    STANDARD_WEDGE,
    are_disjoint,
    causal_complement,
    is_maximal_pair,
    is_subset,
    make_wedge,
)


def _clean(value: Any) -> Any:
    """Convert numpy scalars and arrays into plain JSON values."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return _clean(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return v if math.isfinite(v) else str(v)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


@dataclass
class PropertyResult:
    checked: int = 0
    failed: int = 0
    max_deviation: float | None = None
    witness: Any = None

    def record(self, ok: bool, witness: Any = None, deviation: float | None = None) -> None:
        self.checked += 1
        if deviation is not None:
            self.max_deviation = deviation if self.max_deviation is None else max(self.max_deviation, deviation)
        if not ok:
            self.failed += 1
            if self.witness is None:
                self.witness = witness() if callable(witness) else witness

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        out: dict = {"checked": self.checked, "failed": self.failed, "passed": self.passed}
        if self.max_deviation is not None:
            out["max_deviation"] = self.max_deviation
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class SuiteResult:
    name: str
    seed: int
    properties: dict[str, PropertyResult] = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def prop(self, name: str) -> PropertyResult:
        return self.properties.setdefault(name, PropertyResult())

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties.values())

    def first_witness(self) -> Any:
        for name, p in self.properties.items():
            if not p.passed:
                return {"property": name, "witness": p.witness}
        return None

    def to_json(self) -> dict:
        out = {
            "suite": self.name,
            "seed": self.seed,
            "passed": self.passed,
            "properties": {k: v.to_json() for k, v in self.properties.items()},
        }
        if self.lines:
            out["lines"] = self.lines
        if self.details:
            out["details"] = self.details
        if not self.passed:
            out["first_failure"] = self.first_witness()
        return _clean(out)

    def to_text(self) -> str:
        rows = [f"suite {self.name} (seed {self.seed}): {'PASS' if self.passed else 'FAIL'}"]
        rows += [f"  {line}" for line in self.lines]
        for name, p in self.properties.items():
            dev = "" if p.max_deviation is None else f"  max_dev={p.max_deviation:.3e}"
            rows.append(f"  {name}: {p.checked - p.failed}/{p.checked}{dev}")
        return "\n".join(rows)


def _tol(tol: float | None, default: float) -> float:
    return default if tol is None else float(tol)


# --- wedges ------------------------------------------------------------------------------


def suite_wedges(seed: int = 0, tol: float | None = None, n: int = 200) -> SuiteResult:
    res = SuiteResult("wedges", seed)
    rng = np.random.default_rng(seed)
    ex = res.prop("worked_examples")
    l = (1.0, 0.6, 0.8, 0.0)
    w_r = STANDARD_WEDGE
    tilted = make_wedge(L2P, l)
    pushed = make_wedge(L2P, l, (0.0, -1.0, 0.0, 0.0))
    cases = [
        ("subset W_R+l1p", is_subset(w_r.translate(L1P), w_r), True),
        ("subset reflexive", is_subset(w_r, w_r), True),
        ("subset shifted", is_subset(w_r.translate((0.0, -1.0, 0.0, 0.0)), w_r), False),
        ("disjoint complement", are_disjoint(w_r, causal_complement(w_r)), True),
        ("disjoint tilted", are_disjoint(w_r, tilted), True),
        ("disjoint pushed", are_disjoint(w_r, pushed), True),
        ("maximal tilted", is_maximal_pair(w_r, tilted), True),
        ("maximal pushed", is_maximal_pair(w_r, pushed), False),
        ("maximal b=0", is_maximal_pair(w_r, make_wedge(L2P, (1.0, 1.0, 0.0, 0.0))), False),
    ]
    for label, got, want in cases:
        ex.record(got == want, {"case": label, "got": got, "expected": want})

    comp = res.prop("complement_involution")
    for _ in range(n):
        w = random_wedge(rng)
        c = causal_complement(w)
        comp.record(causal_complement(c).same_as(w) and are_disjoint(w, c), lambda w=w: w.to_json())

    lp = res.prop("disjointness_vs_lp")
    for k in range(n):
        w1, w2 = random_disjoint_pair(rng) if k % 2 else (random_wedge(rng), random_wedge(rng))
        lp.record(are_disjoint(w1, w2) == (not wedges_intersect(w1, w2)),
                  lambda w1=w1, w2=w2: [w1.to_json(), w2.to_json()])

    mx = res.prop("maximal_vs_enlargement")
    for _ in range(n // 2):
        w1, w2 = random_disjoint_pair(rng)
        mx.record(is_maximal_pair(w1, w2) == (not enlargement_oracle(w1, w2).enlargeable),
                  lambda w1=w1, w2=w2: [w1.to_json(), w2.to_json()])

    cov = res.prop("poincare_covariance")
    for _ in range(n):
        w1, w2 = random_disjoint_pair(rng) if rng.uniform() < 0.5 else (random_wedge(rng), random_wedge(rng))
        e = random_restricted_element(rng)
        cov.record(are_disjoint(w1, w2) == are_disjoint(poincare.act(e, w1), poincare.act(e, w2)),
                   lambda w1=w1, w2=w2: [w1.to_json(), w2.to_json()])
    return res


# --- poincare ----------------------------------------------------------------------------


def borchers_grid_deviation(points: int = 41) -> float:
    worst = 0.0
    for t in np.linspace(-1.0, 1.0, points):
        for l in (L1P, L1M):
            b = poincare.standard_boost(float(t))
            got = b @ poincare.translation(l) @ b.inverse()
            factor = math.exp(-poincare.TWO_PI * t) if l is L1P else math.exp(poincare.TWO_PI * t)
            worst = max(worst, got.deviation(poincare.translation(factor * l)))
    return worst


def group_law_grid(points: int = 41) -> tuple[float, float]:
    """(largest absolute deviation over pairs with ``|s + t| ≤ 1``, largest relative deviation over all pairs)."""
    grid = np.linspace(-1.0, 1.0, points)
    absolute, relative = 0.0, 0.0
    for s in grid:
        for t in grid:
            dev = poincare.group_law_deviation(float(s), float(t))
            if abs(s + t) <= 1.0 + 1e-12:
                absolute = max(absolute, dev)
            scale = math.cosh(poincare.TWO_PI * abs(s)) * math.cosh(poincare.TWO_PI * abs(t))
            relative = max(relative, dev / scale)
    return absolute, relative


def suite_poincare(seed: int = 0, tol: float | None = None, n: int = 200) -> SuiteResult:
    res = SuiteResult("poincare", seed)
    tol_ = _tol(tol, 1e-9)
    rng = np.random.default_rng(seed)

    std = poincare.wedge_reflection(STANDARD_WEDGE)
    res.prop("standard_reflection_exact").record(
        bool(np.array_equal(std.lam, STANDARD_REFLECTION) and np.array_equal(std.a, np.zeros(4))),
        {"lambda": std.lam.tolist(), "a": std.a.tolist()})

    labels = res.prop("component_labels")
    expected = {
        "proper-orthochronous": [IDENTITY4],
        "proper-antichronous": [TOTAL_REFLECTION, P3T],
        "improper-orthochronous": [PARITY, P3],
        "improper-antichronous": [TIME_REFLECTION],
    }
    for name, mats in expected.items():
        for m in mats:
            got = poincare.classify_component(m).value
            labels.record(got == name, {"matrix": m.tolist(), "got": got, "expected": name})

    refl = res.prop("reflection_covariance")
    inv = res.prop("reflection_involutive")
    trans = res.prop("transport")
    for _ in range(n):
        w = random_wedge(rng)
        e = random_restricted_element(rng)
        lhs = poincare.wedge_reflection(poincare.act(e, w))
        rhs = e @ poincare.wedge_reflection(w) @ e.inverse()
        dev = lhs.deviation(rhs)
        refl.record(dev <= tol_, lambda w=w: w.to_json(), dev)
        g = poincare.wedge_reflection(w)
        dev2 = (g @ g).deviation(poincare.IDENTITY)
        inv.record(dev2 <= tol_, lambda w=w: w.to_json(), dev2)
        w2 = random_wedge(rng)
        moved = poincare.act(poincare.transport(w, w2), w)
        dev3 = moved.deviation(w2)
        trans.record(moved.same_as(w2, tol_), lambda w=w, w2=w2: [w.to_json(), w2.to_json()], dev3)

    fac = res.prop("factorization_round_trip")
    fac_rng = np.random.default_rng(seed)
    for _ in range(n):
        e = random_restricted_element(fac_rng)
        ws = poincare.factor_into_wedge_reflections(e)
        dev = poincare.reflection_product(ws).deviation(e)
        ok = dev <= tol_ and len(ws) % 2 == 0 and len(ws) <= 8
        fac.record(ok, lambda e=e: e.to_json(), dev)

    b_dev = borchers_grid_deviation()
    res.prop("borchers_identity_grid").record(b_dev < tol_, {"max_deviation": b_dev}, b_dev)
    absolute, relative = group_law_grid()
    res.prop("group_law_absolute").record(absolute <= 1e-10, {"max_deviation": absolute}, absolute)
    res.prop("group_law_relative").record(relative <= 1e-12, {"max_relative": relative}, relative)
    return res


# --- sl2c --------------------------------------------------------------------------------


def suite_sl2c(seed: int = 0, tol: float | None = None, n: int = 500) -> SuiteResult:
    res = SuiteResult("sl2c", seed)
    tol_ = _tol(tol, 1e-9)
    rng = np.random.default_rng(seed)
    hom = res.prop("homomorphism")
    pt = res.prop("time_reflection_action")
    p3 = res.prop("p3_action")
    for _ in range(n):
        a, b = random_sl2c(rng), random_sl2c(rng)
        ra, rb = sl2c.covering_map(a), sl2c.covering_map(b)
        scale = max(1.0, float(np.max(np.abs(ra))) * float(np.max(np.abs(rb))))
        dev = float(np.max(np.abs(sl2c.covering_map(a @ b) - ra @ rb))) / scale
        hom.record(dev <= tol_, lambda a=a: sl2c.to_json(a), dev)
        scale_a = max(1.0, float(np.max(np.abs(ra))))
        d1 = float(np.max(np.abs(sl2c.covering_map(sl2c.reflection_action("PT", a))
                                 - TIME_REFLECTION @ ra @ TIME_REFLECTION))) / scale_a
        pt.record(d1 <= tol_, lambda a=a: sl2c.to_json(a), d1)
        d2 = float(np.max(np.abs(sl2c.covering_map(sl2c.reflection_action("P3", a)) - P3 @ ra @ P3))) / scale_a
        p3.record(d2 <= tol_, lambda a=a: sl2c.to_json(a), d2)

    cases = res.prop("case_maps")
    split = res.prop("case_split_round_trip")
    for k in range(n // 5):
        case = "abcd"[k % 4]
        l2 = complex(rng.uniform(0.3, 3.0) * np.exp(1j * rng.uniform(-np.pi, np.pi)))
        b = random_sl2c(rng)
        dev = sl2c.automorphism_deviation(case, l2, b)
        scale = max(1.0, float(np.max(np.abs(sl2c.covering_map(b)))) * abs(l2) ** 2)
        cases.record(dev / scale <= tol_, {"case": case, "lambda2": [l2.real, l2.imag]}, dev / scale)
        got_case, got_l2 = sl2c.split_case(sl2c.case_lorentz_matrix(case, l2))
        split.record(got_case == case and abs(got_l2 - l2) <= 1e-8 * max(1.0, abs(l2)),
                     {"case": case, "got": got_case})

    fe = sl2c.check_functional_equation(
        lambda a: IDENTITY4, [(random_sl2c(rng), random_sl2c(rng)) for _ in range(20)])
    res.prop("trivial_functional_solution").record(fe.max_deviation <= tol_, fe.to_json(), fe.max_deviation)
    return res


# --- de Sitter ---------------------------------------------------------------------------


def _normal_form_generator(rng: np.random.Generator) -> np.ndarray:
    """``(1, a, b, c)`` on the light cone, straddling the disjointness boundary ``a > 0, b ≥ 0, c = 0``."""
    c = 0.0 if rng.uniform() < 0.5 else rng.uniform(-0.3, 0.3)
    theta = rng.uniform(-0.3, np.pi / 2 + 0.3)
    s = math.sqrt(1.0 - c * c)
    return np.array([1.0, s * math.cos(theta), s * math.sin(theta), c])


def suite_desitter(seed: int = 0, tol: float | None = None, n_pairs: int = 200,
                   n_points: int = 10_000, n_round_trips: int = 200) -> SuiteResult:
    res = SuiteResult("desitter", seed)
    tol_ = _tol(tol, 1e-6)
    rng = np.random.default_rng(seed)
    DS = desitter.DSWedge
    w0 = DS(L1P, L1M)

    ex = res.prop("worked_examples")
    e2 = np.array([0.0, 0.0, 1.0, 0.0])
    cases = [
        ("disjoint tilted", desitter.ds_disjoint(w0, DS(L2P, (1.0, 0.6, 0.8, 0.0))), True),
        ("disjoint wrong sign", desitter.ds_disjoint(w0, DS(L2P, (1.0, -0.6, 0.8, 0.0))), False),
        ("disjoint complement", desitter.ds_disjoint(w0, w0.complement()), True),
        ("line meets b1*b2<0", desitter.line_meets_wedge(e2, DS(L2P, (1.0, 0.6, -0.8, 0.0))), True),
        ("line misses b1*b2>0", desitter.line_meets_wedge(e2, DS(L2P, (1.0, 0.6, 0.8, 0.0))), False),
        ("line misses b1=b2=0", desitter.line_meets_wedge(e2, w0), False),
    ]
    for label, got, want in cases:
        ex.record(got == want, {"case": label, "got": got, "expected": want})
    d1, d2 = desitter.dual_pair(w0, DS(L2P, L2M))
    ex.record(d1.same_as(DS(L1P, L2M)) and d2.same_as(DS(L2P, L1M)), {"case": "dual pair"})

    sampled = res.prop("disjointness_vs_sampling")
    for k in range(n_pairs):
        w1 = desitter.random_ds_wedge(rng)
        if k % 2:
            m = poincare.wedge_frame(w1.ambient).lam
            w2 = desitter.lorentz_image(m, DS(L2P, _normal_form_generator(rng)))
        else:
            w2 = desitter.random_ds_wedge(rng)
        got = desitter.ds_disjoint(w1, w2)
        ref = desitter.sampled_disjoint(w1, w2, n=n_points, seed=seed + k)
        sampled.record(got == ref, lambda w1=w1, w2=w2: [w1.to_json(), w2.to_json()])

    dual = res.prop("dual_pair_involution")
    for _ in range(n_pairs // 4):
        w1, w2 = desitter.random_ds_wedge(rng), desitter.random_ds_wedge(rng)
        a, b = desitter.dual_pair(w1, w2)
        c, d = desitter.dual_pair(a, b)
        dual.record(c.same_as(w1) and d.same_as(w2), lambda w1=w1, w2=w2: [w1.to_json(), w2.to_json()])

    rt = res.prop("reconstruction_round_trip")
    for _ in range(n_round_trips):
        m = random_restricted_element(rng).lam
        if rng.uniform() < 0.25:
            m = TOTAL_REFLECTION @ m
        got = desitter.ds_reconstruct(desitter.lorentz_oracle(m))
        dev = float(np.max(np.abs(got - m)))
        rt.record(dev <= tol_, {"lambda": m.tolist()}, dev)

    dich = res.prop("reflection_dichotomy")
    for _ in range(10):
        w = desitter.random_ds_wedge(rng)
        g = poincare.wedge_reflection(w.ambient).lam
        dich.record(desitter.reflection_dichotomy(desitter.lorentz_oracle(g), w) == "reflection", w.to_json())
        dich.record(desitter.reflection_dichotomy(desitter.lorentz_oracle(-g), w) == "reflection-times-inversion",
                    w.to_json())
    return res


# --- modular -----------------------------------------------------------------------------


def suite_modular(seed: int = 0, tol: float | None = None) -> SuiteResult:
    res = SuiteResult("modular", seed)
    tol_ = _tol(tol, 1e-8)
    tom = res.prop("tomita_consistency")
    per_family = {}
    for fam in builtin_families():
        count = 0
        for i, m in enumerate(fam.members):
            rep = modular.tomita_report(m, fam.omega)
            tom.record(rep.passed(tol_), {"family": fam.name, "member": i, **rep.to_json()}, rep.max_defect)
            count += 1
        per_family[fam.name] = count
    res.details["tomita_members"] = per_family

    closed = res.prop("closed_forms")
    ent = tensor_split_family(2)
    mo = modular.modular_objects(ent.members[0], ent.omega)
    dev = float(np.max(np.abs(mo.delta - np.eye(4))))
    closed.record(dev < tol_, {"case": "maximally entangled", "deviation": dev}, dev)
    weights = (0.7, 0.3)
    sch = tensor_split_family(2, weights)
    mo = modular.modular_objects(sch.members[0], sch.omega)
    d = np.diag(weights)
    expected = np.kron(d, np.linalg.inv(d))
    dev = float(np.max(np.abs(mo.delta - expected)))
    closed.record(dev < tol_, {"case": "schmidt (0.7, 0.3)", "deviation": dev}, dev)
    omega = schmidt_vector(weights)
    closed.record(bool(np.allclose(omega, sch.omega)), {"case": "schmidt vector"})

    cg = res.prop("cgma_tensor_split")
    result = modular.cgma_permutations(ent)
    ok = result.ok and result.taus == [(1, 0), (1, 0)]
    cg.record(ok, result.to_json())
    if result.ok:
        dev = modular.operator_covariance_defect(result)
        cg.record(dev < tol_, {"operator_covariance": dev}, dev)
        report = modular.group_and_properties(result.taus)
        cg.record(report.label == "S2", report.to_json())

    s3 = res.prop("bloch_triangle_s3")
    result = modular.cgma_permutations(bloch_triangle_family())
    if result.ok:
        report = modular.group_and_properties(result.taus, maximal_abelian=[True, True, True])
        s3.record(report.label == "S3" and report.all_pass, report.to_json())
        dev = modular.operator_covariance_defect(result)
        s3.record(dev < tol_, {"operator_covariance": dev}, dev)
    else:
        s3.record(False, result.to_json())

    fixed = res.prop("fixed_point_iff_maximal_abelian")
    for fam in builtin_families():
        result = modular.cgma_permutations(fam)
        if not result.ok:
            fixed.record(False, {"family": fam.name, **result.to_json()})
            continue
        for i, m in enumerate(fam.members):
            mab = modular.span_distance(modular.commutant(m), m) < tol_
            fixed.record((result.taus[i][i] == i) == mab, {"family": fam.name, "member": i})
    return res


# --- coxeter -----------------------------------------------------------------------------


# (line prefix, n, mode, expected transitive groups, whether the claim is exclusive)
COXETER_CLAIMS = (
    ("n=2", 2, "unconstrained", ["S2"], False),
    ("n=3", 3, "all-fixed", ["S3"], True),
    ("n=4 pairing transitive", 4, "nonabelian-pairing", [], False),
    ("n=5 pairing transitive", 5, "nonabelian-pairing", [], False),
    ("n=2 pairing transitive", 2, "nonabelian-pairing", ["S2"], False),
)


def suite_coxeter(seed: int = 0, tol: float | None = None, max_n: int = 6) -> SuiteResult:
    res = SuiteResult("coxeter", seed)
    claims = res.prop("small_n_claims")
    for prefix, n, mode, want, exclusive in COXETER_CLAIMS:
        labels = coxeter.group_labels(coxeter.enumerate_families(n, mode, transitive_only=True))
        res.lines.append(f"{prefix}: {coxeter.describe_labels(labels, exclusive)}")
        claims.record(labels == want, {"claim": prefix, "labels": labels, "expected": want})

    odd = res.prop("odd_n_all_fixed")
    dich = res.prop("fixed_point_dichotomy")
    transport = res.prop("fixed_point_transport")
    div = res.prop("block_divisor")
    counts = {}
    for n in range(1, max_n + 1):
        for mode in coxeter.MODES:
            found = coxeter.enumerate_families(n, mode, transitive_only=False)
            transitive = [f for f in found if f.group.transitive]
            counts[f"n={n} {mode}"] = {"all": len(found), "transitive": len(transitive),
                                       "groups": coxeter.group_labels(transitive)}
            for f in found:
                transport.record(coxeter.fixed_point_transport_holds(f.family), f.family.to_json())
            for f in transitive:
                dich.record(coxeter.fixedpoint_dichotomy_check(f.family), f.family.to_json())
                div.record(all(n % len(s[0]) == 0 for s in f.group.block_systems), f.to_json())
                if n % 2:
                    odd.record(len(f.family.fixed_indices()) == n, f.family.to_json())
    res.details["counts"] = counts
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "wedges": suite_wedges,
    "poincare": suite_poincare,
    "sl2c": suite_sl2c,
    "desitter": suite_desitter,
    "modular": suite_modular,
    "coxeter": suite_coxeter,
}


# --- demos -------------------------------------------------------------------------------


@dataclass
class DemoResult:
    name: str
    passed: bool
    report: dict

    def to_json(self) -> dict:
        return _clean({"demo": self.name, "passed": self.passed, **self.report})

    def to_text(self) -> str:
        rows = [f"demo {self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for key in sorted(self.report):
            value = self.report[key]
            if isinstance(value, (list, dict)) and len(str(value)) > 100:
                continue
            rows.append(f"  {key}: {value}")
        return "\n".join(rows)


def demo_counterexample(seed: int = 0, tol: float | None = None) -> DemoResult:
    rep = counterexample_partial_wedges(seed=seed)
    ok = rep.counterexample and (rep.witness_margin or 0.0) >= _tol(tol, 1e-8) and bool(rep.pair_equivalence)
    return DemoResult("counterexample", ok, rep.to_json())


def demo_paired_net(seed: int = 0, tol: float | None = None) -> DemoResult:
    w = make_wedge(L2P, L2M, (0.3, -0.2, 0.5, 1.0))
    rep = poincare.paired_net_flow_check(w, 0.25, seed=seed, tol=_tol(tol, 1e-9))
    # the flow is expected to break the pairing; reflections are expected to keep it
    ok = rep.reflection_consistent and not rep.flow_consistent
    return DemoResult("paired-net", ok, rep.to_json())


def demo_borchers(seed: int = 0, tol: float | None = None) -> DemoResult:
    dev = borchers_grid_deviation()
    absolute, relative = group_law_grid()
    ok = dev < _tol(tol, 1e-9) and absolute <= 1e-10
    return DemoResult("borchers", ok, {"grid_points": 41, "t_range": [-1.0, 1.0], "max_deviation": dev,
                                       "group_law_max_deviation": absolute,
                                       "group_law_max_relative_deviation": relative})


def demo_factorization(seed: int = 0, tol: float | None = None, n: int = 200) -> DemoResult:
    rng = np.random.default_rng(seed)
    tol_ = _tol(tol, 1e-9)
    passed, worst, lengths = 0, 0.0, {}
    failures = []
    for _ in range(n):
        e = random_restricted_element(rng)
        ws = poincare.factor_into_wedge_reflections(e)
        dev = poincare.reflection_product(ws).deviation(e)
        worst = max(worst, dev)
        lengths[len(ws)] = lengths.get(len(ws), 0) + 1
        if dev <= tol_ and len(ws) % 2 == 0 and len(ws) <= 8:
            passed += 1
        elif not failures:
            failures.append(e.to_json())
    return DemoResult("factorization", passed == n, {
        "round_trips": n, "passed": passed, "summary": f"{passed}/{n} round trips pass",
        "max_deviation": worst, "reflection_counts": {str(k): v for k, v in sorted(lengths.items())},
        "first_failure": failures[0] if failures else None,
    })


DEMOS: dict[str, Callable[..., DemoResult]] = {
    "counterexample": demo_counterexample,
    "paired-net": demo_paired_net,
    "borchers": demo_borchers,
    "factorization": demo_factorization,
}


def reconstruction_round_trips(seed: int = 0, n_restricted: int = 500, n_extended: int = 100,
                               tol: float = 1e-6) -> dict:
    """Reconstruct seeded restricted and extended elements from their wedge oracles."""
    rng = np.random.default_rng(seed)
    elements = [random_restricted_element(rng) for _ in range(n_restricted)]
    elements += [random_extended_element(rng) for _ in range(n_extended)]
    worst, failures = 0.0, 0
    for e in elements:
        got = reconstruct(WedgeBijectionOracle.from_element(e)).element
        dev = got.deviation(e)
        worst = max(worst, dev)
        failures += dev > tol
    return {"elements": len(elements), "failures": int(failures), "max_deviation": worst}
