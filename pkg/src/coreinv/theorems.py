"""Instance-wise checks of the core inverse characterizations.

Each ``check_*`` function evaluates both sides of an "if and only if" on one
morphism, independently: the left side through the composition oracle
(group inverse from powers, then a {1,3}- or {1,4}-inverse), the right side
through explicit invertibility tests. The report also records every identity
the theorem asserts alongside the equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .category import (
    Check,
    KernelCokernel,
    Morphism,
    Obj,
    identity,
    inner_inverse,
    invertibility,
    kernel,
)
from .engine import (
    core_via_composition,
    default_annihilator,
    dual_core_via_composition,
    group_via_powers,
    is_annihilator,
    mp_inverse,
    verify,
    InverseKind,
)
from .errors import BadExponentError, NotAnnihilatorError, NotCoreInvertibleError
from .linalg import Mat


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    witness: Mat | None = None


@dataclass
class TheoremReport:
    theorem: str
    hypotheses: list[Hypothesis] = field(default_factory=list)
    # name -> (left side, right side) of one "if and only if"
    equivalences: dict[str, tuple[bool, bool]] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    values: dict[str, Morphism] = field(default_factory=dict)
    discrepancies: list[str] = field(default_factory=list)

    @property
    def forward_holds(self) -> bool:
        return all(r or not l for l, r in self.equivalences.values())

    @property
    def converse_holds(self) -> bool:
        return all(l or not r for l, r in self.equivalences.values())

    @property
    def ok(self) -> bool:
        return self.forward_holds and self.converse_holds and all(self.checks.values())

    def hypothesis(self, name: str, check: Check | bool) -> bool:
        holds = bool(check)
        witness = check.witness if isinstance(check, Check) else None
        self.hypotheses.append(Hypothesis(name, holds, witness))
        return holds

    def failures(self) -> list[str]:
        out = [f"equivalence {k}: {l} vs {r}" for k, (l, r) in self.equivalences.items() if l != r]
        out += [f"check {k}" for k, v in self.checks.items() if not v]
        return out


def index_oracle(phi: Morphism) -> bool:
    """``rank(phi) == rank(phi^2)``, i.e. index at most one."""
    return linalg.rank(phi.mat) == linalg.rank((phi @ phi).mat)


def _index_witness(phi: Morphism, n: int) -> Mat | None:
    """A row ``x`` with ``x phi^n == 0`` but ``x phi != 0``, if one exists."""
    null = linalg.left_null_space((phi ** n).mat)
    for i in range(null.rows):
        if not (null.row(i) @ phi.mat).is_zero():
            return null.row(i)
    return None


def _one(phi: Morphism) -> Morphism:
    return identity(phi.dom, phi.field)


def check_core_kernel_theorem(phi: Morphism, n: int = 3) -> TheoremReport:
    """Core inverse exists iff kappa lam and phi* phi^n + kappa* kappa are invertible."""
    if n < 3:
        raise BadExponentError("n must be at least 3")
    rep = TheoremReport(f"core-kernel(n={n})")
    oracle = core_via_composition(phi)
    kc = KernelCokernel.of(phi)
    k = kc.kappa
    kl_ok = rep.hypothesis("kappa_lambda_invertible", kc.kl_check)
    unit = phi.star @ phi ** n + k.star @ k
    unit_ok = rep.hypothesis("unit_invertible", invertibility(unit))
    rep.equivalences["core_kernel"] = (oracle.found, kl_ok and unit_ok)
    rep.values["unit"] = unit

    if kl_ok:
        w = phi @ phi + kc.gamma @ k
        w_ok = invertibility(w)
        rep.equivalences["group_kernel"] = (index_oracle(phi), bool(w_ok))
        if w_ok:
            rep.checks["group_formula"] = phi @ w.inverse() == w.inverse() @ phi
    else:
        rep.equivalences["group_kernel"] = (index_oracle(phi), False)

    if kl_ok and unit_ok:
        chi = phi ** (n - 1) @ unit.inverse() @ phi.star
        rep.values["core"] = chi
        rep.checks["formula_is_core"] = verify(phi, chi, InverseKind.CORE).ok
        rep.checks["formula_matches_oracle"] = oracle.found and oracle.chi == chi
    if oracle.found and kl_ok:
        chi = oracle.chi
        one = _one(phi)
        gk = kc.gamma @ k
        gram = phi.star @ phi + k.star @ k
        rep.values["gamma"] = kc.gamma
        rep.checks["gamma_kappa_identity"] = chi @ phi + gk == one
        rep.checks["gamma_annihilated"] = (phi @ kc.gamma).is_zero()
        rep.checks["kappa_gamma_identity"] = k @ kc.gamma == identity(k.dom, phi.field)
        rep.checks["unit3_factorization"] = gram @ (phi @ phi + gk) == phi.star @ phi ** 3 + k.star @ k
        rep.checks["gram_inverse"] = (chi @ chi.star + kc.gamma @ kc.gamma.star) @ gram == one
    return rep


def check_dual_cokernel_theorem(phi: Morphism, n: int = 3) -> TheoremReport:
    """Dual core inverse exists iff kappa lam and phi^n phi* + lam lam* are invertible."""
    if n < 3:
        raise BadExponentError("n must be at least 3")
    rep = TheoremReport(f"dual-cokernel(n={n})")
    oracle = dual_core_via_composition(phi)
    kc = KernelCokernel.of(phi)
    lam = kc.lam
    kl_ok = rep.hypothesis("kappa_lambda_invertible", kc.kl_check)
    unit = phi ** n @ phi.star + lam @ lam.star
    unit_ok = rep.hypothesis("unit_invertible", invertibility(unit))
    rep.equivalences["dual_cokernel"] = (oracle.found, kl_ok and unit_ok)
    rep.values["unit"] = unit
    if kl_ok and unit_ok:
        chi = phi.star @ unit.inverse() @ phi ** (n - 1)
        rep.values["dual_core"] = chi
        rep.checks["formula_matches_oracle"] = oracle.found and oracle.chi == chi
    if oracle.found and kl_ok:
        chi = oracle.chi
        one = _one(phi)
        delta = kc.delta
        rep.values["delta"] = delta
        rep.checks["delta_annihilates"] = (delta @ phi).is_zero()
        rep.checks["delta_lambda_identity"] = delta @ lam == identity(lam.cod, phi.field)
        rep.checks["lambda_delta_identity"] = phi @ chi + lam @ delta == one
        rep.checks["unit3_factorization"] = (
            (phi @ phi + lam @ delta) @ (phi @ phi.star + lam @ lam.star) == phi ** 3 @ phi.star + lam @ lam.star)
        literal = chi @ phi + lam @ delta == one
        rep.discrepancies.append(
            "the identity phi_dualcore phi + delta kappa = 1 is ill-typed (delta: L -> X, kappa: K -> X); "
            f"reading it as phi_dualcore phi + lam delta = 1 gives {literal}; "
            "phi phi_dualcore + lam delta = 1 is checked instead")
    return rep


def check_ring_unit_core(a: Morphism, n: int = 3) -> TheoremReport:
    """Ring form: core invertible iff some b with left-annihilator(a) = Rb makes
    a* a^n + b* b invertible; and the mirrored statement for the dual core."""
    if n < 3:
        raise BadExponentError("n must be at least 3")
    rep = TheoremReport(f"ring-unit(n={n})")
    one = _one(a)
    am = inner_inverse(a)

    b = one - a @ am
    ideal = linalg.same_row_space(b.mat, linalg.left_null_space(a.mat))
    rep.hypothesis("left_annihilator_is_Rb", ideal)
    rep.checks["b_annihilates"] = (b @ a).is_zero()
    u = a.star @ a ** n + b.star @ b
    u_ok = rep.hypothesis("u_invertible", invertibility(u))
    oracle = core_via_composition(a)
    rep.equivalences["ring_core"] = (oracle.found, ideal and u_ok)
    rep.values["b"] = b
    rep.values["u"] = u
    if ideal and u_ok:
        x = a ** (n - 1) @ u.inverse() @ a.star
        rep.values["core"] = x
        rep.checks["core_formula"] = oracle.found and oracle.chi == x
    if oracle.found:
        ac = oracle.chi
        bp = one - a @ ac
        rep.checks["forward_b_projector"] = bp.star == bp and bp @ bp == bp
        rep.checks["forward_left_annihilator"] = linalg.same_row_space(bp.mat, linalg.left_null_space(a.mat))
        up = a.star @ a ** n + bp.star @ bp
        f1, f2 = a.star + bp, a ** n + bp
        rep.checks["forward_u_factorization"] = up == f1 @ f2
        g1 = (ac + one - ac @ a).star
        g2 = ac ** n + one - ac @ a
        rep.checks["forward_factor_inverses"] = (
            f1 @ g1 == one and g1 @ f1 == one and f2 @ g2 == one and g2 @ f2 == one)
        ga = group_via_powers(a).chi
        y = linalg.solve_left(b.mat, (one - ga @ a).mat)
        rep.checks["converse_y_exists"] = y is not None
        if y is not None:
            Y = Morphism(a.dom, a.dom, y)
            rep.checks["converse_u_factorization"] = u == (a.star @ a + b.star @ b) @ (a ** (n - 1) + Y @ b)

    c = one - am @ a
    right_ideal = linalg.same_row_space(c.mat.T, linalg.right_null_space(a.mat).T)
    rep.hypothesis("right_annihilator_is_cR", right_ideal)
    rep.checks["c_annihilates"] = (a @ c).is_zero()
    v = a ** n @ a.star + c @ c.star
    v_ok = rep.hypothesis("v_invertible", invertibility(v))
    dual = dual_core_via_composition(a)
    rep.equivalences["ring_dual_core"] = (dual.found, right_ideal and v_ok)
    rep.values["c"] = c
    rep.values["v"] = v
    if right_ideal and v_ok:
        x = a.star @ v.inverse() @ a ** (n - 1)
        rep.values["dual_core"] = x
        rep.checks["dual_core_formula"] = dual.found and dual.chi == x
    return rep


def annihilator_candidates(phi: Morphism) -> list[tuple[str, Morphism]]:
    """Annihilators built without knowing whether the core inverse exists."""
    one = _one(phi)
    return [
        ("kernel", kernel(phi)),
        ("ring_b", one - phi @ inner_inverse(phi)),
        ("default", default_annihilator(phi)),
    ]


def check_annihilator_theorem(phi: Morphism, n: int = 2, eta: Morphism | None = None) -> TheoremReport:
    """Core invertible iff ``phi^n + eta* eta`` is invertible for some annihilator eta."""
    if n < 2:
        raise BadExponentError("n must be at least 2")
    if eta is not None and not is_annihilator(eta, phi):
        raise NotAnnihilatorError("eta @ phi != 0")
    rep = TheoremReport(f"annihilator(n={n})")
    one = _one(phi)
    oracle = core_via_composition(phi)

    if oracle.found:
        chi = oracle.chi
        eta0 = one - phi @ chi
        mu = phi ** n + eta0.star @ eta0
        mu_inv = chi ** n + one - chi @ phi
        rep.values["forward_eta"] = eta0
        rep.checks["forward_eta_annihilates"] = is_annihilator(eta0, phi)
        rep.checks["forward_eta_projector"] = eta0.star == eta0 and eta0 @ eta0 == eta0
        rep.checks["forward_mu_inverse"] = mu @ mu_inv == one and mu_inv @ mu == one
        rep.checks["forward_formula"] = phi ** (n - 1) @ mu_inv == chi

    candidates = [("supplied", eta)] if eta is not None else annihilator_candidates(phi)
    any_unit = False
    for name, e in candidates:
        mu = phi ** n + e.star @ e
        ok = rep.hypothesis(f"mu_invertible[{name}]", invertibility(mu))
        if ok:
            any_unit = True
            x = phi ** (n - 1) @ mu.inverse()
            rep.checks[f"converse_core[{name}]"] = verify(phi, x, InverseKind.CORE).ok
            rep.checks[f"converse_matches_oracle[{name}]"] = oracle.found and oracle.chi == x
    rep.equivalences["annihilator"] = (oracle.found, any_unit)

    # ring corollary: a^n + b* b with b = 1 - a a^- in the left annihilator of a
    b = one - phi @ inner_inverse(phi)
    u = phi ** n + b.star @ b
    u_ok = rep.hypothesis("corollary_u_invertible", invertibility(u))
    rep.equivalences["ring_corollary"] = (oracle.found, u_ok)
    if u_ok:
        rep.checks["corollary_formula"] = oracle.found and oracle.chi == phi ** (n - 1) @ u.inverse()
    return rep


@dataclass(frozen=True)
class WitnessPair:
    epsilon: Morphism
    tau: Morphism
    n: int
    theta: Morphism | None = None
    rho: Morphism | None = None


def lemma13_witnesses(phi: Morphism, n: int = 2) -> tuple[WitnessPair, TheoremReport]:
    """Build ``epsilon = ((phi^core)*)^n`` and ``tau = (phi^core)^(n-1)`` and their duals."""
    if n < 2:
        raise BadExponentError("n must be at least 2")
    core = core_via_composition(phi)
    dual = dual_core_via_composition(phi)
    if not core.found:
        raise NotCoreInvertibleError("phi has no core inverse")
    rep = TheoremReport(f"lemma13(n={n})")
    c, d = core.chi, dual.chi
    eps, tau = c.star ** n, c ** (n - 1)
    theta, rho = d.star ** n, d ** (n - 1)
    rep.checks["epsilon_factorization"] = eps @ phi.star ** n @ phi == phi
    rep.checks["tau_factorization"] = tau @ phi ** n == phi
    rep.checks["core_from_epsilon"] = phi ** (n - 1) @ eps.star == c
    rep.checks["theta_factorization"] = phi @ phi.star ** n @ theta == phi
    rep.checks["rho_factorization"] = phi ** n @ rho == phi
    rep.checks["dual_from_theta"] = theta.star @ phi ** (n - 1) == d
    rep.values.update(core=c, dual_core=d, epsilon=eps, tau=tau, theta=theta, rho=rho)
    return WitnessPair(eps, tau, n, theta, rho), rep


def check_lemma13(phi: Morphism, n: int = 2) -> TheoremReport:
    """Both directions: witnesses are solved for directly, then compared with the oracle."""
    if n < 2:
        raise BadExponentError("n must be at least 2")
    core = core_via_composition(phi)
    if core.found:
        _, rep = lemma13_witnesses(phi, n)
    else:
        rep = TheoremReport(f"lemma13(n={n})")
    ps = phi.star
    eps = linalg.solve_left((ps ** n @ phi).mat, phi.mat)
    tau = linalg.solve_left((phi ** n).mat, phi.mat)
    solvable = eps is not None and tau is not None
    rep.hypothesis("epsilon_tau_exist", Check(solvable, None if solvable else _index_witness(phi, n)))
    rep.equivalences["lemma13_core"] = (core.found, solvable)
    if solvable:
        E = Morphism(phi.dom, phi.dom, eps)
        x = phi ** (n - 1) @ E.star
        rep.checks["solved_epsilon_gives_core"] = core.found and x == core.chi

    dual = dual_core_via_composition(phi)
    theta = linalg.solve((phi @ ps ** n).mat, phi.mat)
    rho = linalg.solve((phi ** n).mat, phi.mat)
    dsolvable = theta is not None and rho is not None
    rep.hypothesis("theta_rho_exist", dsolvable)
    rep.equivalences["lemma13_dual_core"] = (dual.found, dsolvable)
    if dsolvable:
        Th = Morphism(phi.dom, phi.dom, theta)
        rep.checks["solved_theta_gives_dual"] = dual.found and Th.star @ phi ** (n - 1) == dual.chi
    return rep


@dataclass(frozen=True)
class StarInvertibility:
    left: bool
    right: bool
    mp: Morphism | None
    agrees: bool


def star_invertibility(phi: Morphism) -> StarInvertibility:
    """*-left iff phi* phi invertible; *-right iff phi phi* invertible."""
    left = invertibility(phi.star @ phi)
    right = invertibility(phi @ phi.star)
    mp = None
    agrees = True
    reference = mp_inverse(phi)
    if left:
        mp = (phi.star @ phi).inverse() @ phi.star
        agrees = agrees and mp == reference.chi
    if right:
        r = phi.star @ (phi @ phi.star).inverse()
        agrees = agrees and r == reference.chi
        mp = mp or r
    return StarInvertibility(bool(left), bool(right), mp, agrees)


@dataclass(frozen=True)
class Bordered:
    phi: Morphism
    kappa: Morphism
    lam: Morphism
    G: Morphism

    def block_inverse(self, top_left: Morphism) -> Morphism:
        """``[[top_left, lam (kappa lam)^-1], [(kappa lam)^-1 kappa, 0]]``."""
        kc = KernelCokernel(self.phi, self.kappa, self.lam)
        f = self.phi.field
        z = Mat.zeros(self.lam.cod.dim, self.kappa.dom.dim, f)
        m = Mat.block([[top_left.mat, kc.gamma.mat], [kc.delta.mat, z]])
        return Morphism(self.G.cod, self.G.dom, m)


def bordered_assemble(phi: Morphism) -> Bordered:
    """``G = [[phi, lam], [kappa, 0]] : (X, K) -> (X, L)``."""
    kc = KernelCokernel.of(phi)
    k, lam = kc.kappa, kc.lam
    z = Mat.zeros(k.dom.dim, lam.cod.dim, phi.field)
    g = Mat.block([[phi.mat, lam.mat], [k.mat, z]])
    G = Morphism(Obj(phi.dom.dim + k.dom.dim, "XK"), Obj(phi.dom.dim + lam.cod.dim, "XL"), g)
    return Bordered(phi, k, lam, G)


def _bordered_inverse_checks(rep: TheoremReport, B: Bordered, top_left: Morphism, tag: str):
    block = B.block_inverse(top_left)
    generic = B.G.inverse()
    rep.values[f"G_inverse[{tag}]"] = block
    rep.checks[f"block_equals_generic[{tag}]"] = block == generic
    rep.checks[f"block_is_two_sided[{tag}]"] = (
        B.G @ block == identity(B.G.dom, B.phi.field) and block @ B.G == identity(B.G.cod, B.phi.field))


def check_bordered_group(phi: Morphism) -> TheoremReport:
    rep = TheoremReport("bordered-group")
    B = bordered_assemble(phi)
    rep.values["G"] = B.G
    g_ok = rep.hypothesis("G_invertible", invertibility(B.G))
    grp = group_via_powers(phi)
    rep.equivalences["bordered_group"] = (grp.found, g_ok)
    rep.equivalences["index_oracle"] = (index_oracle(phi), grp.found)
    if g_ok:
        rep.checks["kappa_lambda_invertible"] = bool(invertibility(B.kappa @ B.lam))
        if grp.found and rep.checks["kappa_lambda_invertible"]:
            _bordered_inverse_checks(rep, B, grp.chi, "group")
    return rep


def check_bordered_core(phi: Morphism) -> TheoremReport:
    rep = TheoremReport("bordered-core")
    B = bordered_assemble(phi)
    stacked = Mat.block([[phi.mat], [B.kappa.mat]])
    S = Morphism(Obj(stacked.rows, "XK"), phi.cod, stacked)
    rep.checks["stacked_gram"] = S.star @ S == phi.star @ phi + B.kappa.star @ B.kappa
    left = rep.hypothesis("stacked_star_left_invertible", invertibility(S.star @ S))
    g_ok = rep.hypothesis("G_invertible", invertibility(B.G))
    core = core_via_composition(phi)
    rep.equivalences["bordered_core"] = (core.found, left and g_ok)
    if core.found and g_ok:
        top = core.chi @ core.chi @ phi
        rep.values["top_left"] = top
        _bordered_inverse_checks(rep, B, top, "core")
        grp = group_via_powers(phi)
        rep.checks["top_left_is_group_inverse"] = grp.found and top == grp.chi
    return rep


def check_bordered_dual(phi: Morphism) -> TheoremReport:
    rep = TheoremReport("bordered-dual")
    B = bordered_assemble(phi)
    row = Mat.block([[phi.mat, B.lam.mat]])
    R = Morphism(phi.dom, Obj(row.cols, "XL"), row)
    rep.checks["row_gram"] = R @ R.star == phi @ phi.star + B.lam @ B.lam.star
    right = rep.hypothesis("row_star_right_invertible", invertibility(R @ R.star))
    g_ok = rep.hypothesis("G_invertible", invertibility(B.G))
    dual = dual_core_via_composition(phi)
    rep.equivalences["bordered_dual"] = (dual.found, right and g_ok)
    if dual.found and g_ok:
        top = phi @ dual.chi @ dual.chi
        rep.values["top_left"] = top
        _bordered_inverse_checks(rep, B, top, "dual")
        grp = group_via_powers(phi)
        rep.checks["top_left_is_group_inverse"] = grp.found and top == grp.chi
    return rep
