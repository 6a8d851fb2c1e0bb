"""Generalized inverses of matrix morphisms, each route with a certificate.

Every constructor returns either :class:`Found` (inverse, certificate, and the
side identities the construction promises) or :class:`NotInvertible` (the
reason plus a nonzero row vector annihilating the singular matrix). A Found
result whose certificate fails raises :class:`InconsistencyError`; that can
only be a bug.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

from . import linalg
from .category import (
    Check,
    KernelCokernel,
    Morphism,
    identity,
    inner_inverse,
    invertibility,
    is_inner_inverse,
    kernel,
    cokernel,
)
from .errors import (
    BadExponentError,
    InconsistencyError,
    NotAnnihilatorError,
    NotInnerInverseError,
    NotSquareError,
    ShapeMismatchError,
)


class InverseKind(enum.Enum):
    ONE_THREE = "13"
    ONE_FOUR = "14"
    MOORE_PENROSE = "mp"
    GROUP = "group"
    CORE = "core"
    DUAL_CORE = "dualcore"


class Reason(enum.Enum):
    SINGULAR_KAPPA_LAMBDA = "SingularKappaLambda"
    SINGULAR_UNIT = "SingularUnit"
    NOT_GROUP_INVERTIBLE = "NotGroupInvertible"


EQUATIONS = {
    InverseKind.ONE_THREE: ("1", "3"),
    InverseKind.ONE_FOUR: ("1", "4"),
    InverseKind.MOORE_PENROSE: ("1", "2", "3", "4"),
    InverseKind.GROUP: ("1", "2", "commute"),
    InverseKind.CORE: ("sym", "absorb", "recover"),
    InverseKind.DUAL_CORE: ("sym", "absorb", "recover"),
}


@dataclass(frozen=True)
class Certificate:
    kind: InverseKind
    verdicts: dict[str, bool]
    residuals: dict[str, Morphism]

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def failed(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if not v]


@dataclass(frozen=True)
class Found:
    chi: Morphism
    cert: Certificate
    route: str
    checks: dict[str, bool] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    found = True

    @property
    def checks_ok(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class NotInvertible:
    """``witness @ matrix == 0`` with ``witness != 0``.

    For ``NOT_GROUP_INVERTIBLE`` the matrix is ``phi**2`` and the witness also
    satisfies ``witness @ phi != 0``, exhibiting ``rank(phi**2) < rank(phi)``.
    """

    reason: Reason
    witness: linalg.Mat
    matrix: linalg.Mat
    route: str
    phi: Morphism | None = None

    found = False

    def witness_verifies(self) -> bool:
        x = self.witness
        if x.rows != 1 or x.is_zero() or not (x @ self.matrix).is_zero():
            return False
        if self.reason is Reason.NOT_GROUP_INVERTIBLE:
            return self.phi is not None and not (x @ self.phi.mat).is_zero()
        return True


GenInvResult = Union[Found, NotInvertible]


def _not_invertible(reason: Reason, check: Check, matrix, route: str) -> NotInvertible:
    mat = matrix.mat if isinstance(matrix, Morphism) else matrix
    return NotInvertible(reason, check.witness, mat, route)


def _require_endo(phi: Morphism):
    if not phi.is_endo:
        raise NotSquareError(f"{phi.dom!r} -> {phi.cod!r} is not an endomorphism")


def _require_inner(phi: Morphism, psi: Morphism):
    if not is_inner_inverse(phi, psi):
        raise NotInnerInverseError("phi @ psi @ phi != phi")


def verify(phi: Morphism, chi: Morphism, kind: InverseKind | str) -> Certificate:
    """Evaluate the defining equations of ``kind`` exactly."""
    kind = InverseKind(kind)
    if chi.dom != phi.cod or chi.cod != phi.dom:
        raise ShapeMismatchError(
            f"candidate {chi.dom!r} -> {chi.cod!r} does not reverse {phi.dom!r} -> {phi.cod!r}")
    if kind in (InverseKind.GROUP, InverseKind.CORE, InverseKind.DUAL_CORE) and not phi.is_endo:
        raise ShapeMismatchError(f"{kind.value} inverse needs an endomorphism")

    pc = phi @ chi
    cp = chi @ phi
    lazy = {
        "1": lambda: pc @ phi - phi,
        "2": lambda: cp @ chi - chi,
        "3": lambda: pc.star - pc,
        "4": lambda: cp.star - cp,
        "commute": lambda: pc - cp,
    }
    if kind is InverseKind.CORE:
        lazy.update({
            "sym": lambda: pc.star - pc,
            "absorb": lambda: pc @ chi - chi,
            "recover": lambda: chi @ phi @ phi - phi,
        })
    elif kind is InverseKind.DUAL_CORE:
        lazy.update({
            "sym": lambda: cp.star - cp,
            "absorb": lambda: chi @ cp - chi,
            "recover": lambda: phi @ phi @ chi - phi,
        })
    residuals = {eq: lazy[eq]() for eq in EQUATIONS[kind]}
    verdicts = {eq: r.is_zero() for eq, r in residuals.items()}
    return Certificate(kind, verdicts, residuals)


def _found(phi, chi, kind, route, checks=None, notes=()) -> Found:
    cert = verify(phi, chi, kind)
    if not cert.ok:
        raise InconsistencyError(f"route {route!r} produced a {kind.value} candidate failing {cert.failed()}")
    return Found(chi, cert, route, dict(checks or {}), tuple(notes))


# -- {1,3}, {1,4} and Moore-Penrose ------------------------------------------


def inv_13(phi: Morphism, psi: Morphism | None = None) -> Morphism:
    """``psi [1 - kappa* (kappa kappa*)^-1 kappa]``, a {1,3}-inverse of ``phi``."""
    if psi is None:
        psi = inner_inverse(phi)
    _require_inner(phi, psi)
    k = kernel(phi)
    proj = identity(phi.dom, phi.field) - k.star @ (k @ k.star).inverse() @ k
    return psi @ proj


def inv_14(phi: Morphism, psi: Morphism | None = None) -> Morphism:
    """``[1 - lam (lam* lam)^-1 lam*] psi``, a {1,4}-inverse of ``phi``."""
    if psi is None:
        psi = inner_inverse(phi)
    _require_inner(phi, psi)
    lam = cokernel(phi)
    proj = identity(phi.cod, phi.field) - lam @ (lam.star @ lam).inverse() @ lam.star
    return proj @ psi


def one_three_inverse(phi: Morphism, psi: Morphism | None = None) -> Found:
    """Certified {1,3}-inverse; also checks the criterion ``chi* phi* phi == phi``."""
    chi = inv_13(phi, psi)
    checks = {"range_projector": phi @ chi == KernelCokernel.of(phi).range_projector,
              "adjoint_criterion": chi.star @ phi.star @ phi == phi}
    return _found(phi, chi, InverseKind.ONE_THREE, "projector", checks)


def one_four_inverse(phi: Morphism, psi: Morphism | None = None) -> Found:
    """Certified {1,4}-inverse; also checks the criterion ``phi phi* chi* == phi``."""
    chi = inv_14(phi, psi)
    checks = {"corange_projector": chi @ phi == KernelCokernel.of(phi).corange_projector,
              "adjoint_criterion": phi @ phi.star @ chi.star == phi}
    return _found(phi, chi, InverseKind.ONE_FOUR, "projector", checks)


def mp_via_factorization(phi: Morphism) -> Found:
    """Oracle route ``G*(GG*)^-1 (F*F)^-1 F*``."""
    return _found(phi, inner_inverse(phi), InverseKind.MOORE_PENROSE, "factorization")


def mp_inverse(phi: Morphism) -> GenInvResult:
    """``phi* (phi phi* + kappa* kappa)^-1``, cross-checked against the cokernel formula."""
    k = kernel(phi)
    lam = cokernel(phi)
    unit = phi @ phi.star + k.star @ k
    chk = invertibility(unit)
    if not chk:
        return _not_invertible(Reason.SINGULAR_UNIT, chk, unit, "kernel-unit")
    unit_inv = unit.inverse()
    chi = phi.star @ unit_inv

    co_unit = phi.star @ phi + lam @ lam.star
    co_unit_inv = co_unit.inverse()
    kk = (k @ k.star).inverse()
    ll = (lam.star @ lam).inverse()
    checks = {
        "cokernel_formula": co_unit_inv @ phi.star == chi,
        "kernel_mp": k.star @ kk == unit_inv @ k.star,
        "cokernel_mp": ll @ lam.star == lam.star @ co_unit_inv,
    }
    return _found(phi, chi, InverseKind.MOORE_PENROSE, "kernel-unit", checks)


def mp_via_cokernel(phi: Morphism) -> GenInvResult:
    """``(phi* phi + lam lam*)^-1 phi*``."""
    lam = cokernel(phi)
    unit = phi.star @ phi + lam @ lam.star
    chk = invertibility(unit)
    if not chk:
        return _not_invertible(Reason.SINGULAR_UNIT, chk, unit, "cokernel-unit")
    return _found(phi, unit.inverse() @ phi.star, InverseKind.MOORE_PENROSE, "cokernel-unit")


# -- group inverse -----------------------------------------------------------


def group_via_powers(phi: Morphism) -> GenInvResult:
    """Solve ``phi = phi^2 x = y phi^2`` exactly and return ``y phi x``."""
    _require_endo(phi)
    p2 = phi @ phi
    x = linalg.solve(p2.mat, phi.mat)
    y = linalg.solve_left(p2.mat, phi.mat)
    if x is None or y is None:
        null = linalg.left_null_space(p2.mat)
        for i in range(null.rows):
            w = null.row(i)
            if not (w @ phi.mat).is_zero():
                return NotInvertible(Reason.NOT_GROUP_INVERTIBLE, w, p2.mat, "powers", phi)
        raise InconsistencyError("equations unsolvable but rank(phi^2) == rank(phi)")
    X = Morphism(phi.dom, phi.dom, x)
    Y = Morphism(phi.dom, phi.dom, y)
    chi = Y @ phi @ X
    checks = {"y2a_equals": Y @ Y @ phi == chi, "ax2_equals": phi @ X @ X == chi}
    return _found(phi, chi, InverseKind.GROUP, "powers", checks)


def group_inverse(phi: Morphism) -> GenInvResult:
    """``phi (phi^2 + gamma kappa)^-1`` with ``gamma = lam (kappa lam)^-1``."""
    _require_endo(phi)
    kc = KernelCokernel.of(phi)
    if not kc.kl_check:
        return _not_invertible(Reason.SINGULAR_KAPPA_LAMBDA, kc.kl_check, kc.kl, "kernel")
    w = phi @ phi + kc.gamma @ kc.kappa
    chk = invertibility(w)
    if not chk:
        return _not_invertible(Reason.SINGULAR_UNIT, chk, w, "kernel")
    w_inv = w.inverse()
    chi = phi @ w_inv
    one = identity(phi.dom, phi.field)
    powers = group_via_powers(phi)
    checks = {
        "two_sided_formula": w_inv @ phi == chi,
        "projector_identity": phi @ chi + kc.gamma @ kc.kappa == one,
        "powers_route": powers.found and powers.chi == chi,
    }
    return _found(phi, chi, InverseKind.GROUP, "kernel", checks)


def group_via_projectors(phi: Morphism, psi: Morphism | None = None) -> GenInvResult:
    """``[1 - lam (kappa lam)^-1 kappa] psi [1 - lam (kappa lam)^-1 kappa]``."""
    _require_endo(phi)
    if psi is None:
        psi = inner_inverse(phi)
    _require_inner(phi, psi)
    kc = KernelCokernel.of(phi)
    if not kc.kl_check:
        return _not_invertible(Reason.SINGULAR_KAPPA_LAMBDA, kc.kl_check, kc.kl, "projectors")
    p = kc.oblique_projector
    return _found(phi, p @ psi @ p, InverseKind.GROUP, "projectors")


# -- core inverse -------------------------------------------------------------


def core_via_composition(phi: Morphism) -> GenInvResult:
    """Oracle route: group inverse (from powers) times phi times a {1,3}-inverse."""
    _require_endo(phi)
    g = group_via_powers(phi)
    if not g.found:
        return NotInvertible(g.reason, g.witness, g.matrix, "composition", g.phi)
    chi = g.chi @ phi @ inv_13(phi)
    return _found(phi, chi, InverseKind.CORE, "composition")


def core_via_kernel(phi: Morphism, n: int = 3) -> GenInvResult:
    """``phi^(n-1) (phi* phi^n + kappa* kappa)^-1 phi*`` for ``n >= 3``."""
    if n < 3:
        raise BadExponentError(f"kernel-unit route needs n >= 3, got {n}")
    _require_endo(phi)
    kc = KernelCokernel.of(phi)
    route = f"kernel-n{n}"
    if not kc.kl_check:
        return _not_invertible(Reason.SINGULAR_KAPPA_LAMBDA, kc.kl_check, kc.kl, route)
    k = kc.kappa
    unit = phi.star @ phi ** n + k.star @ k
    chk = invertibility(unit)
    if not chk:
        return _not_invertible(Reason.SINGULAR_UNIT, chk, unit, route)
    chi = phi ** (n - 1) @ unit.inverse() @ phi.star
    one = identity(phi.dom, phi.field)
    gk = kc.gamma @ k
    gram = phi.star @ phi + k.star @ k
    checks = {
        "gamma_kappa_identity": chi @ phi + gk == one,
        "gamma_cokernel": (phi @ kc.gamma).is_zero() and k @ kc.gamma == identity(k.dom, phi.field),
        "unit_factorization": gram @ (phi ** (n - 1) + gk) == unit,
        "gram_inverse": (chi @ chi.star + kc.gamma @ kc.gamma.star) @ gram == one,
    }
    return _found(phi, chi, InverseKind.CORE, route, checks)


def core_via_projectors(phi: Morphism, psi: Morphism | None = None) -> GenInvResult:
    """``[1 - lam (kappa lam)^-1 kappa] psi [1 - kappa* (kappa kappa*)^-1 kappa]``."""
    _require_endo(phi)
    if psi is None:
        psi = inner_inverse(phi)
    _require_inner(phi, psi)
    kc = KernelCokernel.of(phi)
    if not kc.kl_check:
        return _not_invertible(Reason.SINGULAR_KAPPA_LAMBDA, kc.kl_check, kc.kl, "projectors")
    chi = kc.oblique_projector @ psi @ kc.range_projector
    checks = {"range_projector": phi @ chi == kc.range_projector}
    return _found(phi, chi, InverseKind.CORE, "projectors", checks)


def default_annihilator(phi: Morphism) -> Morphism:
    """``1 - phi phi^core`` when the core inverse exists, else the canonical kernel."""
    core = core_via_composition(phi)
    if core.found:
        return identity(phi.dom, phi.field) - phi @ core.chi
    return kernel(phi)


def is_annihilator(eta: Morphism, phi: Morphism) -> bool:
    return eta.cod == phi.dom and (eta @ phi).is_zero()


def core_via_annihilator(phi: Morphism, eta: Morphism | None = None, n: int = 2) -> GenInvResult:
    """``phi^(n-1) mu^-1`` with ``mu = phi^n + eta* eta`` for an annihilator ``eta``."""
    if n < 2:
        raise BadExponentError(f"annihilator route needs n >= 2, got {n}")
    _require_endo(phi)
    if eta is None:
        eta = default_annihilator(phi)
    if not is_annihilator(eta, phi):
        raise NotAnnihilatorError("eta @ phi != 0")
    route = f"annihilator-n{n}"
    mu = phi ** n + eta.star @ eta
    chk = invertibility(mu)
    if not chk:
        return _not_invertible(Reason.SINGULAR_UNIT, chk, mu, route)
    return _found(phi, phi ** (n - 1) @ mu.inverse(), InverseKind.CORE, route)


# -- dual core inverse --------------------------------------------------------


DELTA_NOTE = ("the identity phi_dualcore phi + delta kappa = 1 does not type-check; "
              "verified phi phi_dualcore + lam delta = 1 instead")


def dual_core_via_composition(phi: Morphism) -> GenInvResult:
    """Oracle route: a {1,4}-inverse times phi times the group inverse (from powers)."""
    _require_endo(phi)
    g = group_via_powers(phi)
    if not g.found:
        return NotInvertible(g.reason, g.witness, g.matrix, "composition", g.phi)
    chi = inv_14(phi) @ phi @ g.chi
    return _found(phi, chi, InverseKind.DUAL_CORE, "composition")


def dual_core_via_cokernel(phi: Morphism, n: int = 3) -> GenInvResult:
    """``phi* (phi^n phi* + lam lam*)^-1 phi^(n-1)`` for ``n >= 3``."""
    if n < 3:
        raise BadExponentError(f"cokernel-unit route needs n >= 3, got {n}")
    _require_endo(phi)
    kc = KernelCokernel.of(phi)
    route = f"cokernel-n{n}"
    if not kc.kl_check:
        return _not_invertible(Reason.SINGULAR_KAPPA_LAMBDA, kc.kl_check, kc.kl, route)
    lam = kc.lam
    unit = phi ** n @ phi.star + lam @ lam.star
    chk = invertibility(unit)
    if not chk:
        return _not_invertible(Reason.SINGULAR_UNIT, chk, unit, route)
    chi = phi.star @ unit.inverse() @ phi ** (n - 1)
    one = identity(phi.dom, phi.field)
    delta = kc.delta
    gram = phi @ phi.star + lam @ lam.star
    checks = {
        "delta_identity": phi @ chi + lam @ delta == one,
        "delta_kernel": (delta @ phi).is_zero() and delta @ lam == identity(lam.cod, phi.field),
        "unit_factorization": (phi ** (n - 1) + lam @ delta) @ gram == unit,
    }
    return _found(phi, chi, InverseKind.DUAL_CORE, route, checks, notes=(DELTA_NOTE,))


def dual_core_via_projectors(phi: Morphism, psi: Morphism | None = None) -> GenInvResult:
    """``[1 - lam (lam* lam)^-1 lam*] psi [1 - lam (kappa lam)^-1 kappa]``."""
    _require_endo(phi)
    if psi is None:
        psi = inner_inverse(phi)
    _require_inner(phi, psi)
    kc = KernelCokernel.of(phi)
    if not kc.kl_check:
        return _not_invertible(Reason.SINGULAR_KAPPA_LAMBDA, kc.kl_check, kc.kl, "projectors")
    chi = kc.corange_projector @ psi @ kc.oblique_projector
    checks = {"corange_projector": chi @ phi == kc.corange_projector}
    return _found(phi, chi, InverseKind.DUAL_CORE, "projectors", checks)


# -- everything from one inner inverse ---------------------------------------


@dataclass(frozen=True)
class AllFour:
    mp: GenInvResult
    group: GenInvResult
    core: GenInvResult
    dual_core: GenInvResult
    checks: dict[str, bool]


def all_four(phi: Morphism, psi: Morphism | None = None) -> AllFour:
    """MP, group, core and dual core inverses built from a single inner inverse."""
    _require_endo(phi)
    if psi is None:
        psi = inner_inverse(phi)
    _require_inner(phi, psi)
    kc = KernelCokernel.of(phi)
    left, right = kc.corange_projector, kc.range_projector
    mp = _found(phi, left @ psi @ right, InverseKind.MOORE_PENROSE, "corollary")
    if not kc.kl_check:
        bad = _not_invertible(Reason.SINGULAR_KAPPA_LAMBDA, kc.kl_check, kc.kl, "corollary")
        return AllFour(mp, bad, bad, bad, {})
    ob = kc.oblique_projector
    group = _found(phi, ob @ psi @ ob, InverseKind.GROUP, "corollary")
    core = _found(phi, ob @ psi @ right, InverseKind.CORE, "corollary")
    dual = _found(phi, left @ psi @ ob, InverseKind.DUAL_CORE, "corollary")
    checks = {
        "core_from_group_mp": core.chi == group.chi @ phi @ mp.chi,
        "dual_from_mp_group": dual.chi == mp.chi @ phi @ group.chi,
    }
    return AllFour(mp, group, core, dual, checks)
