"""Numerical simplicity checks for trivial solutions.

A trivial solution ``(x*, 0, lam*)`` is simple when the operator
``A = L - lam* C`` has one-dimensional kernel spanned by ``x*``, when
``C x*`` is nonzero, and when the range of ``A`` together with the line
through ``C x*`` fills the target space.  The last condition is tested
through the least-squares residual of ``A x = C x*``: the solution is
simple exactly when that system is unsolvable.  As an independent
cross-check, :func:`dpsi_min_singular` measures the invertibility margin
of the restricted differential ``(A . T | -C x*)`` on the sphere tangent
space, which is positive exactly in the simple case.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import kernel_basis, least_squares, min_singular_values
from .problem import Problem, SolutionPoint, residual_norm

__all__ = [
    "SimplicityTolerances",
    "SimplicityReport",
    "check_simple",
    "dpsi_min_singular",
    "VERDICT_SIMPLE",
    "VERDICT_KERNEL",
    "VERDICT_C_ZERO",
    "VERDICT_SOLVABLE",
]

VERDICT_SIMPLE = "Simple"
VERDICT_KERNEL = "NotSimple_KernelDim"
VERDICT_C_ZERO = "NotSimple_CxZero"
VERDICT_SOLVABLE = "NotSimple_Solvable"


@dataclass(frozen=True)
class SimplicityTolerances:
    rel_tol: float = 1e-8        # relative rank cut for kernel detection
    align_tol: float = 1e-8      # kernel direction must match x* to 1 - align_tol
    c_tol: float = 1e-10         # |C x*| must exceed this
    solvable_tol: float = 1e-6   # residual above this means "unsolvable"
    margin_tol: float = 1e-8     # invertibility margin threshold
    residual: float = 1e-8       # input must be a trivial solution to this accuracy

    def __post_init__(self):
        for name in ("rel_tol", "align_tol", "c_tol", "solvable_tol", "margin_tol", "residual"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")


@dataclass
class SimplicityReport:
    """Evidence gathered while deciding simplicity of a trivial solution."""

    verdict: str
    kernel_dim: int
    kernel_alignment: float  # |cosine| vs x*, NaN unless kernel_dim == 1
    c_xstar_norm: float
    ls_residual: float
    dpsi_margin: float
    lambda_star: float
    tolerances: SimplicityTolerances = field(default_factory=SimplicityTolerances)

    @property
    def simple(self) -> bool:
        return self.verdict == VERDICT_SIMPLE

    def to_document(self) -> dict:
        """Flat key-value form for serialization."""
        return {
            "verdict": self.verdict,
            "kernel_dim": self.kernel_dim,
            "kernel_alignment": self.kernel_alignment,
            "c_xstar_norm": self.c_xstar_norm,
            "ls_residual": self.ls_residual,
            "dpsi_margin": self.dpsi_margin,
            "lambda_star": self.lambda_star,
            "rel_tol": self.tolerances.rel_tol,
            "align_tol": self.tolerances.align_tol,
            "c_tol": self.tolerances.c_tol,
            "solvable_tol": self.tolerances.solvable_tol,
            "margin_tol": self.tolerances.margin_tol,
        }


def dpsi_min_singular(p: Problem, x_star, lambda_star: float) -> float:
    """Invertibility margin of the zero-perturbation differential at ``(x*, lam*)``.

    Builds a metric-orthonormal basis ``T`` of the sphere tangent space at
    ``x*`` and returns the smallest singular value of ``[A @ T | -C @ x*]``
    with ``A = L - lam* C``.  Zero margin means the restricted map fails
    to be a local diffeomorphism.
    """
    x = np.asarray(x_star, dtype=float).reshape(-1)
    a = p.l_matrix - lambda_star * p.c_matrix
    t = p.gram_g.orthonormal_complement(x)
    m = np.column_stack([a @ t, -(p.c_matrix @ x)])
    return float(min_singular_values(m, 1)[0])


def check_simple(p: Problem, x_star, lambda_star: float,
                 tols: SimplicityTolerances | None = None) -> SimplicityReport:
    """Decide whether the trivial solution ``(x*, 0, lam*)`` is simple.

    The conditions are evaluated in order: kernel dimension and alignment,
    then ``C x* != 0``, then unsolvability of ``A x = C x*``.  The
    invertibility margin is always computed for cross-checking.

    Raises
    ------
    ValueError
        If ``(x*, 0, lam*)`` is not a trivial solution to the configured
        residual tolerance (the offending residual is reported).
    """
    tols = tols or SimplicityTolerances()
    x = np.asarray(x_star, dtype=float).reshape(-1)
    if x.shape[0] != p.dim:
        raise ValueError(f"x* has length {x.shape[0]}, problem dimension is {p.dim}")
    candidate = SolutionPoint(x, 0.0, float(lambda_star))
    defect = residual_norm(p, candidate)
    if defect > tols.residual:
        raise ValueError(
            f"({'x*'}, 0, {lambda_star:g}) is not a trivial solution: "
            f"residual {defect:g} exceeds {tols.residual:g}")

    a = p.l_matrix - float(lambda_star) * p.c_matrix
    ker = kernel_basis(a, tols.rel_tol)
    kernel_dim = ker.shape[1]
    alignment = float("nan")
    if kernel_dim == 1:
        v = ker[:, 0]
        alignment = abs(float(v @ x)) / float(np.linalg.norm(x))

    cx = p.c_matrix @ x
    c_norm = float(np.sqrt(p.gram_h.inner(cx, cx)))
    _, ls_res = least_squares(a, cx, tols.rel_tol)
    margin = dpsi_min_singular(p, x, float(lambda_star))

    if kernel_dim != 1 or not alignment >= 1.0 - tols.align_tol:
        verdict = VERDICT_KERNEL
    elif c_norm <= tols.c_tol:
        verdict = VERDICT_C_ZERO
    elif ls_res <= tols.solvable_tol:
        verdict = VERDICT_SOLVABLE
    else:
        verdict = VERDICT_SIMPLE

    return SimplicityReport(
        verdict=verdict,
        kernel_dim=kernel_dim,
        kernel_alignment=alignment,
        c_xstar_norm=c_norm,
        ls_residual=ls_res,
        dpsi_margin=margin,
        lambda_star=float(lambda_star),
        tolerances=tols,
    )
