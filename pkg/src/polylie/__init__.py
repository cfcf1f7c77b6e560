"""Exact computational algebra for graded symmetrization identities.

Sparse rational linear algebra (glin), signed symmetric-group calculus
(symgrp), graded free Lie algebras with PBW symmetrization (freelie),
polynomial-coefficient polydifferential operators with their Hochschild
differential and Hopf structure (polydiff), polyvector fields and the
antisymmetrized inclusion (hkr), and the operator calculus on tensor
words of Lie letters (tlie).  Every identity is checked in exact
rational arithmetic; ``polylie.cli`` is the batch front-end.
"""

from .glin import (
    Elt,
    EchelonBasis,
    LinearMapRep,
    koszul_sign,
    matrix_rank,
    monomials_upto,
    solve_exact,
    solve_in_image,
)
from .symgrp import (
    GroupRingElt,
    act,
    e_n,
    full_sym,
    insertion_bracket_composite,
    tau_l,
)
from .freelie import (
    FreeLieContext,
    LieLetter,
    bch_coeffs,
    context,
    dexp_transform,
    inverse_G,
    odd_gens,
    symmetrize_I,
    tensor_concat,
)
from .polydiff import (
    NotACocycleError,
    adams_psi,
    bracket_d,
    coboundary_witness,
    connection_nabla,
    coproduct_delta,
    counit,
    evaluate,
    hochschild_d,
    multiply_m,
    op_term,
    op_text,
    partial_op,
    unit_op,
)
from .hkr import beta, i_hkr, j_map, p_antisym, pi_project
from .tlie import lambda_flatten, mu_hat, omega_hat, psi_apply, theta_apply
from .report import CheckResult, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "Elt",
    "EchelonBasis",
    "LinearMapRep",
    "koszul_sign",
    "matrix_rank",
    "monomials_upto",
    "solve_exact",
    "solve_in_image",
    "GroupRingElt",
    "act",
    "e_n",
    "full_sym",
    "insertion_bracket_composite",
    "tau_l",
    "FreeLieContext",
    "LieLetter",
    "bch_coeffs",
    "context",
    "dexp_transform",
    "inverse_G",
    "odd_gens",
    "symmetrize_I",
    "tensor_concat",
    "NotACocycleError",
    "adams_psi",
    "bracket_d",
    "coboundary_witness",
    "connection_nabla",
    "coproduct_delta",
    "counit",
    "evaluate",
    "hochschild_d",
    "multiply_m",
    "op_term",
    "op_text",
    "partial_op",
    "unit_op",
    "beta",
    "i_hkr",
    "j_map",
    "p_antisym",
    "pi_project",
    "lambda_flatten",
    "mu_hat",
    "omega_hat",
    "psi_apply",
    "theta_apply",
    "CheckResult",
    "VerificationReport",
    "__version__",
]
