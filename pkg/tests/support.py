"""Shared instance families and route tables for the test suite."""

from __future__ import annotations

from fractions import Fraction

from coreinv import engine, randmat
from coreinv.category import Morphism, inner_inverse
from coreinv.linalg import QI, Q, Mat


def M(rows, field=Q) -> Morphism:
    """Endomorphism (square) or plain morphism from nested lists of ints/Fractions."""
    if field == Q:
        rows = [[Fraction(x) for x in r] for r in rows]
    m = Mat(rows, field=field)
    return Morphism.endo(m) if m.rows == m.cols else Morphism.of(m)


def index_one_family(count: int, dim: int, tag: str, field: str = Q, min_rank: int = 0) -> list[Morphism]:
    out = []
    for i in range(count):
        rng = randmat.instance_rng(tag, i)
        rank = rng.randint(min_rank, dim)
        out.append(Morphism.endo(randmat.gen_random(dim, rank, randmat.INDEX_ONE, field=field, rng=rng)))
    return out


def index_ge2_family(count: int, dim: int, tag: str, field: str = Q) -> list[Morphism]:
    out = []
    for i in range(count):
        rng = randmat.instance_rng(tag, i)
        rank = rng.randint(1, dim - 1)
        out.append(Morphism.endo(randmat.gen_random(dim, rank, randmat.INDEX_GE2, field=field, rng=rng)))
    return out


def rectangular_family(count: int, max_dim: int, tag: str, field: str = Q) -> list[Morphism]:
    out = []
    for i in range(count):
        rng = randmat.instance_rng(tag, i)
        r, c = rng.randint(1, max_dim), rng.randint(1, max_dim)
        rank = rng.randint(0, min(r, c))
        out.append(Morphism.of(randmat.random_rect(r, c, rank, rng, field)))
    return out


def distinct_inner_inverse(phi: Morphism, rng, tries: int = 8) -> Morphism:
    """A random inner inverse different from the Moore-Penrose one whenever one exists."""
    psi = inner_inverse(phi)
    for _ in range(tries):
        other = randmat.random_inner_inverse(phi, rng)
        if other != psi:
            return other
    return other


def has_unique_inner_inverse(phi: Morphism) -> bool:
    """Only invertible morphisms (including the empty one) have a unique inner inverse."""
    from coreinv.category import invertibility
    return phi.is_endo and bool(invertibility(phi))


def core_routes(phi: Morphism, psi2: Morphism) -> dict[str, engine.GenInvResult]:
    res = {f"kernel-n{n}": engine.core_via_kernel(phi, n) for n in (3, 4, 5)}
    res["composition"] = engine.core_via_composition(phi)
    res["projectors[mp]"] = engine.core_via_projectors(phi)
    res["projectors[random]"] = engine.core_via_projectors(phi, psi2)
    for n in (2, 3):
        res[f"annihilator-n{n}"] = engine.core_via_annihilator(phi, n=n)
    res["corollary"] = engine.all_four(phi, psi2).core
    return res


def dual_routes(phi: Morphism, psi2: Morphism) -> dict[str, engine.GenInvResult]:
    res = {f"cokernel-n{n}": engine.dual_core_via_cokernel(phi, n) for n in (3, 4, 5)}
    res["composition"] = engine.dual_core_via_composition(phi)
    res["projectors[mp]"] = engine.dual_core_via_projectors(phi)
    res["projectors[random]"] = engine.dual_core_via_projectors(phi, psi2)
    res["corollary"] = engine.all_four(phi, psi2).dual_core
    return res


def group_routes(phi: Morphism, psi2: Morphism) -> dict[str, engine.GenInvResult]:
    return {
        "kernel": engine.group_inverse(phi),
        "powers": engine.group_via_powers(phi),
        "projectors[mp]": engine.group_via_projectors(phi),
        "projectors[random]": engine.group_via_projectors(phi, psi2),
        "corollary": engine.all_four(phi, psi2).group,
    }


def mp_routes(phi: Morphism) -> dict[str, engine.GenInvResult]:
    res = {
        "kernel-unit": engine.mp_inverse(phi),
        "cokernel-unit": engine.mp_via_cokernel(phi),
        "factorization": engine.mp_via_factorization(phi),
    }
    if phi.is_endo:
        res["corollary"] = engine.all_four(phi).mp
    return res


def agree(results: dict) -> bool:
    vals = list(results.values())
    if all(r.found for r in vals):
        return all(r.chi == vals[0].chi for r in vals)
    return not any(r.found for r in vals)


def has_nontrivial_conjugation(phi: Morphism) -> bool:
    return phi.field == QI and any(x.im != 0 for x in phi.mat.entries)
