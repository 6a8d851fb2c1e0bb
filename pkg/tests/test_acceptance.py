"""Acceptance suite: one test per criterion, each logging a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``; the verdict table is
printed in the "acceptance criteria" section of the terminal summary.
"""

import time
from fractions import Fraction

import pytest

from coreinv import engine, linalg, randmat, theorems
from coreinv.category import (
    KernelCokernel, Morphism, cokernel, identity, inner_inverse, invertibility, kernel)
from coreinv.engine import InverseKind, Reason
from coreinv.linalg import QI, Mat

from support import (
    M,
    agree,
    core_routes,
    distinct_inner_inverse,
    dual_routes,
    group_routes,
    has_nontrivial_conjugation,
    has_unique_inner_inverse,
    index_ge2_family,
    index_one_family,
    mp_routes,
    rectangular_family,
)

N_INDEX1 = 300
N_GE2 = 150
N_RECT = 300
N_QI = 100
TIME_LIMIT_S = 30.0


# -- shared instance families (module scope: generated once) -----------------


@pytest.fixture(scope="module")
def idx1():
    return index_one_family(N_INDEX1, 4, "acceptance-index1")


@pytest.fixture(scope="module")
def ge2():
    return index_ge2_family(N_GE2, 4, "acceptance-ge2")


@pytest.fixture(scope="module")
def second_inner(idx1, ge2):
    """A second inner inverse per instance, distinct from the MP one when possible."""
    out = {}
    for tag, fam in (("idx1", idx1), ("ge2", ge2)):
        for i, phi in enumerate(fam):
            out[tag, i] = distinct_inner_inverse(phi, randmat.instance_rng(f"acceptance-psi-{tag}", i))
    return out


@pytest.fixture(scope="module")
def core_suite(idx1, second_inner):
    start = time.perf_counter()
    results = [core_routes(phi, second_inner["idx1", i]) for i, phi in enumerate(idx1)]
    return results, time.perf_counter() - start


@pytest.fixture(scope="module")
def dual_suite(idx1, second_inner):
    start = time.perf_counter()
    results = [dual_routes(phi, second_inner["idx1", i]) for i, phi in enumerate(idx1)]
    return results, time.perf_counter() - start


@pytest.fixture(scope="module")
def boundary_suite(idx1, ge2, second_inner):
    """(phi, core routes, dual routes, group routes) for 150 index-1 and 150 index >= 2."""
    cases = [(phi, second_inner["idx1", i]) for i, phi in enumerate(idx1[:N_GE2])]
    cases += [(phi, second_inner["ge2", i]) for i, phi in enumerate(ge2)]
    return [(phi, core_routes(phi, psi), dual_routes(phi, psi), group_routes(phi, psi)) for phi, psi in cases]


@pytest.fixture(scope="module")
def rect():
    return rectangular_family(N_RECT, 5, "acceptance-rect")


# -- criterion 1 ----------------------------------------------------------------


def test_criterion_01_core_route_agreement(idx1, second_inner, core_suite, acceptance_log):
    results, elapsed = core_suite
    disagreements = [i for i, r in enumerate(results) if not (agree(r) and all(x.found for x in r.values()))]
    distinct = sum(second_inner["idx1", i] != inner_inverse(phi) for i, phi in enumerate(idx1))
    unique = sum(has_unique_inner_inverse(phi) for phi in idx1)
    ok = not disagreements and elapsed < TIME_LIMIT_S and distinct + unique == N_INDEX1
    acceptance_log(1, "core route agreement (300 index-1 4x4 over Q)", ok,
                   f"{N_INDEX1 - len(disagreements)}/{N_INDEX1} agree on {len(results[0])} routes, "
                   f"distinct second inner inverse on {distinct} (unique inner inverse on {unique}), "
                   f"{elapsed:.1f}s")
    assert not disagreements
    assert distinct + unique == N_INDEX1
    assert elapsed < TIME_LIMIT_S


# -- criterion 2 ----------------------------------------------------------------


def test_criterion_02_dual_symmetry(idx1, dual_suite, core_suite, acceptance_log):
    results, elapsed = dual_suite
    core_results, _ = core_suite
    disagreements = [i for i, r in enumerate(results) if not (agree(r) and all(x.found for x in r.values()))]
    adjoint_failures = []
    for i, phi in enumerate(idx1):
        core_of_adjoint = engine.core_via_composition(phi.star)
        dual = results[i]["composition"]
        if not (core_of_adjoint.found and core_of_adjoint.chi == dual.chi.star):
            adjoint_failures.append(i)
        # and the mirrored statement via the kernel route of the adjoint
        if engine.dual_core_via_cokernel(phi.star).chi != core_results[i]["composition"].chi.star:
            adjoint_failures.append(i)
    ok = not disagreements and not adjoint_failures
    acceptance_log(2, "dual core route agreement and adjoint duality", ok,
                   f"{N_INDEX1 - len(disagreements)}/{N_INDEX1} agree on {len(results[0])} routes, "
                   f"{len(adjoint_failures)} adjoint-duality failures, {elapsed:.1f}s")
    assert not disagreements
    assert not adjoint_failures


# -- criterion 3 ----------------------------------------------------------------


def test_criterion_03_existence_boundary(boundary_suite, acceptance_log):
    disagreements = []
    bad_witnesses = 0
    negatives = 0
    for j, (phi, core, dual, group) in enumerate(boundary_suite):
        kl = bool(KernelCokernel.of(phi).kl_check)
        idx = theorems.index_oracle(phi)
        all_core = all(r.found for r in core.values())
        none_core = not any(r.found for r in core.values())
        family = [core, dual, group]
        consistent = all(all(r.found for r in f.values()) == idx and agree(f) for f in family)
        if not (kl == idx == all_core and (all_core or none_core) and consistent):
            disagreements.append(j)
        for f in family:
            for r in f.values():
                if not r.found:
                    negatives += 1
                    bad_witnesses += not r.witness_verifies()
    expected_idx = [True] * N_GE2 + [False] * N_GE2
    mislabelled = sum(theorems.index_oracle(c[0]) != e for c, e in zip(boundary_suite, expected_idx))
    ok = not disagreements and bad_witnesses == 0 and mislabelled == 0
    acceptance_log(3, "existence boundary (150 index-1 + 150 index>=2)", ok,
                   f"{len(disagreements)} disagreements, {negatives} NotInvertible results, "
                   f"{bad_witnesses} bad witnesses")
    assert not disagreements
    assert bad_witnesses == 0
    assert mislabelled == 0


# -- criterion 4 ----------------------------------------------------------------


def _recheck(phi, res, kind) -> bool:
    """Independent re-evaluation of the defining equations (not the stored certificate)."""
    cert = engine.verify(phi, res.chi, kind)
    return cert.ok and res.cert.ok and set(cert.verdicts) == set(engine.EQUATIONS[InverseKind(kind)])


def test_criterion_04_certificates(idx1, core_suite, dual_suite, boundary_suite, acceptance_log):
    checked = failed = 0
    side_failures = 0

    def run(phi, results, kind):
        nonlocal checked, failed, side_failures
        for r in results.values():
            if r.found:
                checked += 1
                failed += not _recheck(phi, r, kind)
                side_failures += not r.checks_ok

    for phi, core, dual in zip(idx1, core_suite[0], dual_suite[0]):
        run(phi, core, InverseKind.CORE)
        run(phi, dual, InverseKind.DUAL_CORE)
    for phi, core, dual, group in boundary_suite:
        run(phi, core, InverseKind.CORE)
        run(phi, dual, InverseKind.DUAL_CORE)
        run(phi, group, InverseKind.GROUP)
        run(phi, mp_routes(phi), InverseKind.MOORE_PENROSE)
    ok = failed == 0 and side_failures == 0 and checked > 0
    acceptance_log(4, "defining-equation certificates", ok,
                   f"{checked} Found results re-verified, {failed} equation failures, "
                   f"{side_failures} side-identity failures")
    assert checked > 0
    assert failed == 0
    assert side_failures == 0


# -- criterion 5 ----------------------------------------------------------------


def _kappa_dagger_ok(phi: Morphism) -> bool:
    k = kernel(phi)
    lhs = k.star @ (k @ k.star).inverse()
    rhs = (phi @ phi.star + k.star @ k).inverse() @ k.star
    return lhs == rhs and lhs == engine.mp_via_factorization(k).chi


def mp_cross_check(family):
    disagreements, kappa_failures = [], []
    for i, phi in enumerate(family):
        routes = mp_routes(phi)
        if not (agree(routes) and all(r.found for r in routes.values())):
            disagreements.append(i)
        if not _kappa_dagger_ok(phi):
            kappa_failures.append(i)
    return disagreements, kappa_failures


def test_criterion_05_mp_cross_check(rect, acceptance_log):
    start = time.perf_counter()
    disagreements, kappa_failures = mp_cross_check(rect)
    elapsed = time.perf_counter() - start
    shapes = {phi.mat.shape for phi in rect}
    ok = not disagreements and not kappa_failures
    acceptance_log(5, "MP cross-check (300 rectangular up to 5x5)", ok,
                   f"{len(disagreements)} route disagreements, {len(kappa_failures)} kappa-dagger failures, "
                   f"{len(shapes)} distinct shapes, {elapsed:.1f}s")
    assert not disagreements
    assert not kappa_failures


# -- criterion 6 ----------------------------------------------------------------


def test_criterion_06_bordered(idx1, ge2, core_suite, acceptance_log):
    failures = []
    for i, phi in enumerate(idx1):
        chi = core_suite[0][i]["composition"].chi
        B = theorems.bordered_assemble(phi)
        top = chi @ chi @ phi
        generic = Morphism(B.G.cod, B.G.dom, linalg.inverse(B.G.mat))
        group = engine.group_via_powers(phi)
        reports = [theorems.check_bordered_group(phi), theorems.check_bordered_core(phi),
                   theorems.check_bordered_dual(phi)]
        if not (B.block_inverse(top) == generic and group.found and top == group.chi
                and all(r.ok for r in reports)):
            failures.append(("index1", i))
    singular_ok = 0
    for i, phi in enumerate(ge2):
        G = theorems.bordered_assemble(phi).G
        chk = invertibility(G)
        reports = [theorems.check_bordered_group(phi), theorems.check_bordered_core(phi),
                   theorems.check_bordered_dual(phi)]
        if not chk and not chk.witness.is_zero() and (chk.witness @ G.mat).is_zero() and all(r.ok for r in reports):
            singular_ok += 1
        else:
            failures.append(("ge2", i))
    ok = not failures
    acceptance_log(6, "bordered-matrix criteria", ok,
                   f"{N_INDEX1 - sum(t == 'index1' for t, _ in failures)}/{N_INDEX1} block inverses exact, "
                   f"{singular_ok}/{N_GE2} index>=2 bordered matrices singular with witness")
    assert not failures


# -- criterion 7 ----------------------------------------------------------------


def test_criterion_07_ring_roundtrip(idx1, ge2, core_suite, acceptance_log):
    failures = []
    forward_needed = ["core_formula", "forward_factor_inverses", "forward_u_factorization",
                      "converse_u_factorization", "dual_core_formula"]
    ann_needed = ["forward_mu_inverse", "forward_formula", "corollary_formula"]
    for i, phi in enumerate(idx1):
        ring = theorems.check_ring_unit_core(phi)
        ann = theorems.check_annihilator_theorem(phi)
        oracle = core_suite[0][i]["composition"].chi
        if not (ring.ok and ann.ok and all(ring.checks.get(k) for k in forward_needed)
                and all(ann.checks.get(k) for k in ann_needed)
                and ring.values["core"] == oracle
                and ring.equivalences["ring_core"] == (True, True)
                and ann.equivalences["annihilator"] == (True, True)):
            failures.append(("index1", i))
    for i, phi in enumerate(ge2):
        ring = theorems.check_ring_unit_core(phi)
        ann = theorems.check_annihilator_theorem(phi)
        if not (ring.ok and ann.ok
                and ring.equivalences["ring_core"] == (False, False)
                and ring.equivalences["ring_dual_core"] == (False, False)
                and ann.equivalences["annihilator"] == (False, False)
                and ann.equivalences["ring_corollary"] == (False, False)):
            failures.append(("ge2", i))
    ok = not failures
    acceptance_log(7, "ring-case and annihilator roundtrip", ok,
                   f"{len(failures)} failures over {N_INDEX1} index-1 and {N_GE2} index>=2 instances")
    assert not failures


# -- criterion 8 ----------------------------------------------------------------


def test_criterion_08_pinned(acceptance_log):
    h = Fraction(1, 2)
    A = M([[1, 1], [0, 0]])
    N = M([[0, 1], [0, 0]])
    checks = {
        "mp(A)": engine.mp_inverse(A).chi == M([[h, 0], [h, 0]]),
        "group(A)": engine.group_inverse(A).chi == M([[1, 1], [0, 0]]),
        "core(A)": engine.core_via_kernel(A).chi == M([[1, 0], [0, 0]]),
        "dualcore(A)": engine.dual_core_via_cokernel(A).chi == M([[h, h], [h, h]]),
        "mp(N)": engine.mp_inverse(N).chi == M([[0, 0], [1, 0]]),
        "group(N)": not engine.group_inverse(N).found and not engine.group_via_powers(N).found,
        "core(N)": not any(r.found for r in core_routes(N, inner_inverse(N)).values()),
        "dualcore(N)": not any(r.found for r in dual_routes(N, inner_inverse(N)).values()),
        "core(N) reason": engine.core_via_kernel(N).reason is Reason.SINGULAR_KAPPA_LAMBDA,
    }
    ok = all(checks.values())
    acceptance_log(8, "pinned regression values", ok,
                   ", ".join(f"{k}={'ok' if v else 'WRONG'}" for k, v in checks.items()))
    assert ok, checks


# -- criterion 9 ----------------------------------------------------------------


def test_criterion_09_gaussian_smoke(acceptance_log):
    start = time.perf_counter()
    fam = index_one_family(N_QI, 3, "acceptance-qi", field=QI, min_rank=1)
    rect_fam = rectangular_family(N_QI, 3, "acceptance-qi-rect", field=QI)
    conj = sum(has_nontrivial_conjugation(phi) for phi in fam)
    disagreements = certificate_failures = 0
    for i, phi in enumerate(fam):
        psi2 = distinct_inner_inverse(phi, randmat.instance_rng("acceptance-qi-psi", i))
        routes = core_routes(phi, psi2)
        disagreements += not (agree(routes) and all(r.found for r in routes.values()))
        for r in routes.values():
            certificate_failures += r.found and not _recheck(phi, r, InverseKind.CORE)
        for r in mp_routes(phi).values():
            certificate_failures += not _recheck(phi, r, InverseKind.MOORE_PENROSE)
    mp_dis, kappa_fail = mp_cross_check(rect_fam)
    elapsed = time.perf_counter() - start
    ok = (disagreements == 0 and certificate_failures == 0 and not mp_dis and not kappa_fail
          and conj == N_QI and elapsed < TIME_LIMIT_S)
    acceptance_log(9, "Q(i) smoke suite (criteria 1, 4, 5 on 3x3 Gaussian rationals)", ok,
                   f"{disagreements} core disagreements, {certificate_failures} certificate failures, "
                   f"{len(mp_dis)}+{len(kappa_fail)} MP failures, {conj}/{N_QI} with non-real entries, "
                   f"{elapsed:.1f}s")
    assert disagreements == 0 and certificate_failures == 0
    assert not mp_dis and not kappa_fail
    assert conj == N_QI
    assert elapsed < TIME_LIMIT_S


# -- criterion 10 ---------------------------------------------------------------


def _whole_suite(phi: Morphism) -> list[str]:
    """Every route, certificate and theorem on one instance; returns failure labels."""
    bad = []
    psi2 = distinct_inner_inverse(phi, randmat.instance_rng("acceptance-degenerate", phi.dom.dim))
    for label, routes, kind in (("core", core_routes(phi, psi2), InverseKind.CORE),
                                ("dual", dual_routes(phi, psi2), InverseKind.DUAL_CORE),
                                ("group", group_routes(phi, psi2), InverseKind.GROUP),
                                ("mp", mp_routes(phi), InverseKind.MOORE_PENROSE)):
        if not (agree(routes) and all(r.found for r in routes.values())):
            bad.append(f"{label} routes")
        if not all(_recheck(phi, r, kind) and r.checks_ok for r in routes.values() if r.found):
            bad.append(f"{label} certificates")
    for kind_fn, kind in ((engine.one_three_inverse, InverseKind.ONE_THREE),
                          (engine.one_four_inverse, InverseKind.ONE_FOUR)):
        r = kind_fn(phi, psi2)
        if not (_recheck(phi, r, kind) and r.checks_ok):
            bad.append(kind.value)
    for check in (theorems.check_core_kernel_theorem, theorems.check_dual_cokernel_theorem,
                  theorems.check_ring_unit_core, theorems.check_annihilator_theorem, theorems.check_lemma13,
                  theorems.check_bordered_group, theorems.check_bordered_core, theorems.check_bordered_dual):
        rep = check(phi)
        if not rep.ok:
            bad.append(f"{rep.theorem}: {rep.failures()}")
    if not _kappa_dagger_ok(phi):
        bad.append("kappa dagger")
    return bad


def test_criterion_10_degenerate(acceptance_log):
    invertible = [M([[1, 0], [0, 1]]), M([[2, 1], [1, 1]])]
    invertible += [Morphism.endo(randmat.random_invertible(4, randmat.make_rng(s))) for s in range(4)]
    invertible.append(Morphism.endo(randmat.random_invertible(3, randmat.make_rng(9), QI)))
    zeros = [Morphism.endo(Mat.zeros(d, d)) for d in range(0, 5)]
    zeros.append(Morphism.endo(Mat.zeros(3, 3, QI)))
    failures = {}
    for phi in invertible:
        kc = KernelCokernel.of(phi)
        bad = _whole_suite(phi)
        if not (kc.kappa.dom.dim == 0 and kc.lam.cod.dim == 0 and kc.kl.mat.shape == (0, 0) and kc.kl_check):
            bad.append("empty kernel conventions")
        if engine.core_via_kernel(phi).chi != phi.inverse():
            bad.append("core != inverse")
        if bad:
            failures[repr(phi.mat)] = bad
    for phi in zeros:
        one = identity(phi.dom, phi.field)
        bad = _whole_suite(phi)
        if not (kernel(phi) == one and cokernel(phi) == one):
            bad.append("kernel/cokernel of zero not identity")
        if not engine.core_via_kernel(phi).chi.is_zero():
            bad.append("core of zero not zero")
        if bad:
            failures[repr(phi.mat)] = bad
    ok = not failures
    acceptance_log(10, "degenerate dimensions (invertible phi and phi = 0)", ok,
                   f"{len(invertible)} invertible and {len(zeros)} zero morphisms (incl. 0x0), "
                   f"{len(failures)} with failures")
    assert not failures, failures
