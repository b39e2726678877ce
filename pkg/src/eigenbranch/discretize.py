"""Trigonometric Galerkin models of the periodic boundary value problems.

Functions are expanded in the unnormalized basis
``[1, cos t, sin t, ..., cos Mt, sin Mt]`` per component.  The basis is
kept unnormalized so the operator matrices stay integer-simple; the
function-space geometry lives entirely in the Gram matrices (first-order
Sobolev metric on the source side, mean-square metric on the target
side).  Every operator appearing here preserves the span of each mode,
so the truncation at M modes is exact for the built-in problems.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import GramMetric
from .problem import Problem

__all__ = [
    "FourierBasis",
    "differentiation_matrix",
    "sobolev_gram",
    "mean_square_gram",
    "fourier_problem_scalar",
    "fourier_problem_system",
]


@dataclass(frozen=True)
class FourierBasis:
    """Index bookkeeping for the truncated trigonometric basis."""

    modes: int
    components: int = 1

    def __post_init__(self):
        if self.modes < 0:
            raise ValueError("modes must be nonnegative")
        if self.components not in (1, 2):
            raise ValueError("only scalar and two-component bases are supported")

    @property
    def block(self) -> int:
        """Coordinates per component."""
        return 2 * self.modes + 1

    @property
    def dim(self) -> int:
        return self.components * self.block

    def const_index(self, component: int = 0) -> int:
        return component * self.block

    def cos_index(self, k: int, component: int = 0) -> int:
        if not 1 <= k <= self.modes:
            raise ValueError(f"mode {k} outside 1..{self.modes}")
        return component * self.block + 2 * k - 1

    def sin_index(self, k: int, component: int = 0) -> int:
        if not 1 <= k <= self.modes:
            raise ValueError(f"mode {k} outside 1..{self.modes}")
        return component * self.block + 2 * k


def differentiation_matrix(modes: int) -> np.ndarray:
    """Matrix of d/dt on one component: 1 -> 0, cos kt -> -k sin kt, sin kt -> k cos kt."""
    basis = FourierBasis(modes)
    d = np.zeros((basis.block, basis.block))
    for k in range(1, modes + 1):
        d[basis.sin_index(k), basis.cos_index(k)] = -k
        d[basis.cos_index(k), basis.sin_index(k)] = k
    return d


def sobolev_gram(modes: int, components: int = 1) -> GramMetric:
    """First-order metric: ``(1/2pi) integral (x y + x' y')`` in coordinates."""
    basis = FourierBasis(modes)
    weights = [1.0] + [(1.0 + k * k) / 2.0 for k in range(1, modes + 1) for _ in (0, 1)]
    return GramMetric(np.diag(np.tile(weights, components)))


def mean_square_gram(modes: int, components: int = 1) -> GramMetric:
    """Mean-square metric: ``(1/2pi) integral (x y)`` in coordinates."""
    weights = [1.0] + [0.5] * (2 * modes)
    return GramMetric(np.diag(np.tile(weights, components)))


def fourier_problem_scalar(modes: int) -> Problem:
    """Periodic scalar problem ``x' + eps sin t = lam x`` on the Sobolev sphere.

    The perturbation is the constant map onto ``sin t``; the comparison
    operator is the inclusion (identity in shared coordinates).
    """
    if modes < 1:
        raise ValueError("at least one mode is required")
    basis = FourierBasis(modes)
    dim = basis.dim
    sin_t = np.zeros(dim)
    sin_t[basis.sin_index(1)] = 1.0
    return Problem(
        l_matrix=differentiation_matrix(modes),
        c_matrix=np.eye(dim),
        n_map=lambda x, v=sin_t: v.copy(),
        n_jacobian=lambda x, d=dim: np.zeros((d, d)),
        gram_g=sobolev_gram(modes),
        gram_h=mean_square_gram(modes),
        label="ex42",
    )


def fourier_problem_system(modes: int) -> Problem:
    """Coupled periodic pair: ``x1' + x1 - eps x1 = lam x2`` and
    ``x2' - x2 - eps x2 = -lam x1`` on the Sobolev sphere.

    Blockwise: L = diag(D + I, D - I), N = -identity, and C swaps the
    components with a sign, ``(x1, x2) -> (x2, -x1)``.
    """
    if modes < 1:
        raise ValueError("at least one mode is required")
    basis = FourierBasis(modes, components=2)
    block = basis.block
    d = differentiation_matrix(modes)
    eye = np.eye(block)
    l_matrix = np.zeros((basis.dim, basis.dim))
    l_matrix[:block, :block] = d + eye
    l_matrix[block:, block:] = d - eye
    c_matrix = np.zeros((basis.dim, basis.dim))
    c_matrix[:block, block:] = eye
    c_matrix[block:, :block] = -eye
    n_matrix = -np.eye(basis.dim)
    return Problem(
        l_matrix=l_matrix,
        c_matrix=c_matrix,
        n_map=lambda x, m=n_matrix: m @ x,
        n_jacobian=lambda x, m=n_matrix: m.copy(),
        n_matrix=n_matrix,
        gram_g=sobolev_gram(modes, components=2),
        gram_h=mean_square_gram(modes, components=2),
        label="ex43",
    )
