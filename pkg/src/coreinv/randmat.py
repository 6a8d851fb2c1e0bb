"""Seeded random matrices with controlled rank and index.

All randomness comes from :class:`random.Random` (Mersenne Twister MT19937),
seeded with an int or a string. Python guarantees the same stream for the
same seed on every platform, so a seed alone reproduces an instance.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg
from .category import Morphism, Obj, inner_inverse, kernel
from .errors import InfeasibleSpecError
from .linalg import Q, QI, GaussianRational, Mat

DEFAULT_BOUND = 9
INDEX_ONE = "1"
INDEX_GE2 = "ge2"


def make_rng(seed) -> random.Random:
    return random.Random(seed)


def instance_rng(seed, i: int) -> random.Random:
    """Independent stream for instance ``i`` of a batch."""
    return random.Random(f"coreinv:{seed}:{i}")


def random_scalar(rng: random.Random, field: str = Q, bound: int = DEFAULT_BOUND):
    if field == QI:
        return GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
    return Fraction(rng.randint(-bound, bound))


def random_dense(rows: int, cols: int, rng: random.Random, field: str = Q, bound: int = DEFAULT_BOUND) -> Mat:
    return Mat([[random_scalar(rng, field, bound) for _ in range(cols)] for _ in range(rows)],
               field=field, cols=cols)


def random_invertible(n: int, rng: random.Random, field: str = Q, bound: int = DEFAULT_BOUND) -> Mat:
    while True:
        m = random_dense(n, n, rng, field, bound)
        if linalg.is_invertible(m):
            return m


def random_unimodular(n: int, rng: random.Random, field: str = Q) -> Mat:
    """Product of a permutation and unit triangular factors with entries in {-1, 0, 1}."""
    z, o = linalg.zero(field), linalg.one(field)
    lower = [[o if i == j else (random_scalar(rng, field, 1) if j < i else z) for j in range(n)] for i in range(n)]
    upper = [[o if i == j else (random_scalar(rng, field, 1) if j > i else z) for j in range(n)] for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    p = Mat.identity(n, field).select_rows(perm)
    return p @ Mat(lower, field=field, cols=n) @ Mat(upper, field=field, cols=n)


def random_full_rank(rows: int, cols: int, rng: random.Random, field: str = Q, bound: int = DEFAULT_BOUND) -> Mat:
    target = min(rows, cols)
    while True:
        m = random_dense(rows, cols, rng, field, bound)
        if linalg.rank(m) == target:
            return m


def random_rect(rows: int, cols: int, rank: int, rng: random.Random, field: str = Q,
                bound: int = DEFAULT_BOUND) -> Mat:
    """Random ``rows x cols`` matrix of exactly the given rank, as ``F @ G``."""
    if not 0 <= rank <= min(rows, cols):
        raise InfeasibleSpecError(f"rank {rank} impossible for {rows}x{cols}")
    F = random_full_rank(rows, rank, rng, field, bound)
    G = random_full_rank(rank, cols, rng, field, bound)
    return F @ G


def _block_diag(blocks: list[Mat], field: str) -> Mat:
    n = sum(b.rows for b in blocks)
    rows = []
    offset = 0
    z = linalg.zero(field)
    for b in blocks:
        for r in b.tolist():
            rows.append([z] * offset + r + [z] * (n - offset - b.cols))
        offset += b.cols
    return Mat(rows, field=field, cols=n)


def gen_random(dim: int, rank: int, index=INDEX_ONE, seed=0, field: str = Q,
               bound: int = DEFAULT_BOUND, rng: random.Random | None = None) -> Mat:
    """Square matrix similar to ``diag(C, 0)`` (index 1) or ``diag(C, J2, 0)`` (index >= 2).

    ``C`` is random invertible with entries bounded by ``bound`` and ``J2`` is
    the 2x2 nilpotent Jordan block; the similarity is an integer unimodular
    matrix so entries stay integral.
    """
    index = str(index)
    if index not in (INDEX_ONE, INDEX_GE2):
        raise InfeasibleSpecError(f"index must be '1' or 'ge2', got {index!r}")
    if not 0 <= rank <= dim:
        raise InfeasibleSpecError(f"rank {rank} outside [0, {dim}]")
    if index == INDEX_GE2 and not (rank >= 1 and dim - rank >= 1):
        raise InfeasibleSpecError("index >= 2 needs rank >= 1 and dim - rank >= 1")
    if rng is None:
        rng = make_rng(seed)
    o, z = linalg.one(field), linalg.zero(field)
    if index == INDEX_ONE:
        blocks = [random_invertible(rank, rng, field, bound), Mat.zeros(dim - rank, dim - rank, field)]
    else:
        jordan = Mat([[z, o], [z, z]], field=field)
        blocks = [random_invertible(rank - 1, rng, field, bound), jordan,
                  Mat.zeros(dim - rank - 1, dim - rank - 1, field)]
    d = _block_diag(blocks, field)
    p = random_unimodular(dim, rng, field)
    return p @ d @ linalg.inverse(p)


def random_inner_inverse(phi: Morphism, rng: random.Random, bound: int = 2) -> Morphism:
    """``psi + Z - psi phi Z phi psi`` for random Z; always an inner inverse of phi."""
    psi = inner_inverse(phi)
    z = Morphism(phi.cod, phi.dom, random_dense(phi.cod.dim, phi.dom.dim, rng, phi.field, bound))
    return psi + z - psi @ phi @ z @ phi @ psi


def random_annihilator(phi: Morphism, rng: random.Random, rows: int | None = None, bound: int = 3) -> Morphism:
    """``rho @ kappa`` for a random ``rho``; annihilates phi by construction."""
    k = kernel(phi)
    rows = k.dom.dim if rows is None else rows

    rho = Morphism(Obj(rows, "N"), k.dom, random_dense(rows, k.dom.dim, rng, phi.field, bound))
    return rho @ k
