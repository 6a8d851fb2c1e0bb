"""Exact core, dual core, group, Moore-Penrose, {1,3}- and {1,4}-inverses.

Matrices over Q (``fractions.Fraction``) and Q(i) (:class:`GaussianRational`)
are treated as morphisms of a category with involution (conjugate transpose);
composition is diagrammatic, ``f @ g`` = "f, then g".
"""

from .category import (
    Check,
    KernelCokernel,
    Morphism,
    Obj,
    cokernel,
    compose,
    identity,
    inner_inverse,
    is_epic,
    is_inner_inverse,
    is_monic,
    kernel,
    zero_morphism,
)
from .engine import (
    AllFour,
    Certificate,
    Found,
    InverseKind,
    NotInvertible,
    Reason,
    all_four,
    core_via_annihilator,
    core_via_composition,
    core_via_kernel,
    core_via_projectors,
    dual_core_via_cokernel,
    dual_core_via_composition,
    dual_core_via_projectors,
    group_inverse,
    group_via_powers,
    group_via_projectors,
    inv_13,
    inv_14,
    mp_inverse,
    mp_via_cokernel,
    mp_via_factorization,
    one_four_inverse,
    one_three_inverse,
    verify,
)
from .errors import *  # noqa: F401,F403
from .fileio import Report, parse_matrix_text, read_matrix
from .linalg import QI, Q, GaussianRational, Mat
from .randmat import gen_random

__version__ = "0.1.0"
