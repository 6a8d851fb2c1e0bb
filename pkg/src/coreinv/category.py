"""Matrix category with involution.

A morphism ``f: X -> Y`` is a ``dim(X) x dim(Y)`` matrix and composition is
diagrammatic: ``f @ g`` means "f, then g" and is the matrix product
``f.mat @ g.mat``. Kernels therefore live on the left (``kappa @ phi == 0``)
and cokernels on the right (``phi @ lam == 0``), so formulas such as
``kappa @ lam`` or ``gamma @ kappa`` read left to right exactly as written.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import linalg
from .errors import ObjectMismatchError, SingularMatrixError
from .linalg import Mat


@dataclass(frozen=True)
class Obj:
    """An object of the category; only ``dim`` takes part in equality."""

    dim: int
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("object dimension must be nonnegative")

    def __repr__(self):
        return f"{self.name or 'Obj'}({self.dim})"


@dataclass(frozen=True, eq=True)
class Morphism:
    dom: Obj
    cod: Obj
    mat: Mat

    def __post_init__(self):
        if self.mat.shape != (self.dom.dim, self.cod.dim):
            raise ObjectMismatchError(
                f"matrix of shape {self.mat.shape} cannot represent {self.dom!r} -> {self.cod!r}")

    @classmethod
    def of(cls, mat: Mat, dom: str = "X", cod: str = "Y") -> "Morphism":
        return cls(Obj(mat.rows, dom), Obj(mat.cols, cod), mat)

    @classmethod
    def endo(cls, mat: Mat, name: str = "X") -> "Morphism":
        x = Obj(mat.rows, name)
        return cls(x, x, mat)

    @property
    def field(self) -> str:
        return self.mat.field

    @property
    def is_endo(self) -> bool:
        return self.dom == self.cod

    @property
    def star(self) -> "Morphism":
        """The involution: conjugate transpose, with domain and codomain swapped."""
        return Morphism(self.cod, self.dom, linalg.adjoint(self.mat))

    def __matmul__(self, other: "Morphism") -> "Morphism":
        return compose(self, other)

    def _same_type(self, other: "Morphism"):
        if not isinstance(other, Morphism):
            raise TypeError(f"expected a Morphism, got {type(other).__name__}")
        if self.dom != other.dom or self.cod != other.cod:
            raise ObjectMismatchError(
                f"{self.dom!r} -> {self.cod!r} and {other.dom!r} -> {other.cod!r} are not parallel")

    def __add__(self, other: "Morphism") -> "Morphism":
        self._same_type(other)
        return Morphism(self.dom, self.cod, self.mat + other.mat)

    def __sub__(self, other: "Morphism") -> "Morphism":
        self._same_type(other)
        return Morphism(self.dom, self.cod, self.mat - other.mat)

    def __neg__(self) -> "Morphism":
        return Morphism(self.dom, self.cod, -self.mat)

    def __mul__(self, s) -> "Morphism":
        return Morphism(self.dom, self.cod, self.mat * s)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Morphism":
        if not self.is_endo:
            raise ObjectMismatchError("powers need an endomorphism")
        return Morphism(self.dom, self.cod, self.mat ** n)

    def is_zero(self) -> bool:
        return self.mat.is_zero()

    def inverse(self) -> "Morphism":
        """Two-sided inverse ``cod -> dom``; raises SingularMatrixError."""
        return Morphism(self.cod, self.dom, linalg.inverse(self.mat))

    def __repr__(self):
        return f"Morphism({self.dom!r} -> {self.cod!r}, {self.mat!r})"


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``f`` followed by ``g``."""
    if f.cod != g.dom:
        raise ObjectMismatchError(f"cannot compose {f.dom!r} -> {f.cod!r} with {g.dom!r} -> {g.cod!r}")
    return Morphism(f.dom, g.cod, f.mat @ g.mat)


def identity(x: Obj, field: str = linalg.Q) -> Morphism:
    return Morphism(x, x, Mat.identity(x.dim, field))


def zero_morphism(x: Obj, y: Obj, field: str = linalg.Q) -> Morphism:
    return Morphism(x, y, Mat.zeros(x.dim, y.dim, field))


@dataclass(frozen=True)
class Check:
    """Boolean verdict with an optional witness; truthiness is the verdict."""

    holds: bool
    witness: Mat | None = None

    def __bool__(self):
        return self.holds


def kernel(phi: Morphism) -> Morphism:
    """Canonical kernel ``K -> X``: rows are the RREF basis of the left null space."""
    k = linalg.left_null_space(phi.mat)
    return Morphism(Obj(k.rows, "K"), phi.dom, k)


def cokernel(phi: Morphism) -> Morphism:
    """Canonical cokernel ``Y -> L``: columns are the RREF basis of the right null space."""
    c = linalg.right_null_space(phi.mat)
    return Morphism(phi.cod, Obj(c.cols, "L"), c)


def inner_inverse(phi: Morphism) -> Morphism:
    """Reflexive inner inverse ``G*(GG*)^-1 (F*F)^-1 F*`` from a full-rank factorization.

    This particular inner inverse is the Moore-Penrose inverse.
    """
    F, G = linalg.full_rank_factorization(phi.mat)
    Gs, Fs = linalg.adjoint(G), linalg.adjoint(F)
    psi = Gs @ linalg.inverse(G @ Gs) @ linalg.inverse(Fs @ F) @ Fs
    return Morphism(phi.cod, phi.dom, psi)


def is_inner_inverse(phi: Morphism, psi: Morphism) -> bool:
    return psi.dom == phi.cod and psi.cod == phi.dom and phi @ psi @ phi == phi


def is_monic(phi: Morphism) -> Check:
    """Monic iff full row rank; otherwise the witness ``x != 0`` has ``x @ phi == 0``."""
    k = linalg.left_null_space(phi.mat)
    if k.rows == 0:
        return Check(True)
    return Check(False, k.row(0))


def is_epic(phi: Morphism) -> Check:
    """Epic iff full column rank; otherwise the witness column ``y != 0`` has ``phi @ y == 0``."""
    c = linalg.right_null_space(phi.mat)
    if c.cols == 0:
        return Check(True)
    return Check(False, c.col(0))


def invertibility(m: Morphism | Mat) -> Check:
    """Invertibility with a nonzero left-annihilating witness when singular."""
    mat = m.mat if isinstance(m, Morphism) else m
    try:
        linalg.inverse(mat)
    except SingularMatrixError as exc:
        return Check(False, exc.witness)
    return Check(True)


@dataclass(frozen=True)
class KernelCokernel:
    """Canonical kernel and cokernel of an endomorphism plus the derived morphisms.

    ``gamma = lam (kappa lam)^-1`` and ``delta = (kappa lam)^-1 kappa`` exist
    only when ``kappa @ lam`` is invertible.
    """

    phi: Morphism
    kappa: Morphism
    lam: Morphism

    @classmethod
    def of(cls, phi: Morphism) -> "KernelCokernel":
        return cls(phi, kernel(phi), cokernel(phi))

    @cached_property
    def kl(self) -> Morphism:
        return self.kappa @ self.lam

    @cached_property
    def kl_check(self) -> Check:
        return invertibility(self.kl)

    @cached_property
    def kl_inv(self) -> Morphism:
        return self.kl.inverse()

    @cached_property
    def gamma(self) -> Morphism:
        return self.lam @ self.kl_inv

    @cached_property
    def delta(self) -> Morphism:
        return self.kl_inv @ self.kappa

    @cached_property
    def range_projector(self) -> Morphism:
        """``1 - kappa* (kappa kappa*)^-1 kappa``: orthogonal projector killed by kappa."""
        k = self.kappa
        return identity(self.phi.dom, self.phi.field) - k.star @ (k @ k.star).inverse() @ k

    @cached_property
    def corange_projector(self) -> Morphism:
        """``1 - lam (lam* lam)^-1 lam*``."""
        lam = self.lam
        return identity(self.phi.cod, self.phi.field) - lam @ (lam.star @ lam).inverse() @ lam.star

    @cached_property
    def oblique_projector(self) -> Morphism:
        """``1 - lam (kappa lam)^-1 kappa``; needs ``kappa lam`` invertible."""
        return identity(self.phi.dom, self.phi.field) - self.gamma @ self.kappa
