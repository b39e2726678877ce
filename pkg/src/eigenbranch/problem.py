"""Finite-dimensional model of the perturbed eigenvalue problem.

A :class:`Problem` bundles the linear operators ``L`` and ``C``, a
perturbation map ``N`` and the two Gram metrics: one defining the unit
sphere that solution vectors live on, one measuring residuals.  A
candidate solution is a triple ``(x, eps, lam)`` and the defining
residual is ``L x + eps * N(x) - lam * C x`` together with the sphere
constraint.

Problems are immutable after construction and may be shared freely
between concurrent branch traces; user-supplied ``n_map`` callables must
be reentrant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .numerics import GramMetric

__all__ = [
    "SolutionPoint",
    "Problem",
    "phi",
    "augmented_residual",
    "residual_norm",
    "jacobian",
    "fd_jacobian",
    "sphere_project",
]


@dataclass
class SolutionPoint:
    """A solution triple: coordinates ``x``, perturbation ``eps``, eigenvalue ``lam``."""

    x: np.ndarray
    eps: float
    lam: float

    def __post_init__(self):
        self.x = np.asarray(self.x, dtype=float).reshape(-1)
        self.eps = float(self.eps)
        self.lam = float(self.lam)

    def as_array(self) -> np.ndarray:
        """Flatten to ``[x..., eps, lam]``."""
        return np.concatenate([self.x, [self.eps, self.lam]])

    @staticmethod
    def from_array(v) -> "SolutionPoint":
        v = np.asarray(v, dtype=float).reshape(-1)
        return SolutionPoint(v[:-2].copy(), float(v[-2]), float(v[-1]))

    def is_trivial(self, tol: float = 1e-9) -> bool:
        return abs(self.eps) <= tol


@dataclass
class Problem:
    """Square finite-dimensional eigenvalue problem with a sphere constraint.

    ``l_matrix`` and ``c_matrix`` are dim x dim; ``n_map`` must accept any
    vector in a neighborhood of the unit sphere.  ``n_jacobian`` is the
    analytic derivative of ``n_map`` when available, otherwise central
    differences with step ``fd_scale * (1 + |x|)`` are used.  For linear
    perturbations ``n_matrix`` holds the matrix of ``n_map``.
    """

    l_matrix: np.ndarray
    c_matrix: np.ndarray
    n_map: Callable[[np.ndarray], np.ndarray]
    gram_g: GramMetric
    gram_h: GramMetric = None
    n_jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    n_matrix: Optional[np.ndarray] = None
    label: str = ""
    fd_scale: float = 1e-6

    def __post_init__(self):
        self.l_matrix = np.asarray(self.l_matrix, dtype=float)
        self.c_matrix = np.asarray(self.c_matrix, dtype=float)
        if self.l_matrix.ndim != 2 or self.l_matrix.shape[0] != self.l_matrix.shape[1]:
            raise ValueError(f"l_matrix must be square, got {self.l_matrix.shape}")
        if self.c_matrix.shape != self.l_matrix.shape:
            raise ValueError("c_matrix must match l_matrix in shape")
        dim = self.l_matrix.shape[0]
        if self.gram_h is None:
            self.gram_h = GramMetric.identity(dim)
        if self.gram_g.dim != dim or self.gram_h.dim != dim:
            raise ValueError("Gram metrics must match the operator dimension")
        if self.n_matrix is not None:
            self.n_matrix = np.asarray(self.n_matrix, dtype=float)
            if self.n_matrix.shape != (dim, dim):
                raise ValueError("n_matrix must be dim x dim")

    @property
    def dim(self) -> int:
        return self.l_matrix.shape[0]

    def n_derivative(self, x: np.ndarray) -> np.ndarray:
        """Derivative matrix of ``n_map`` at ``x`` (analytic or central FD)."""
        if self.n_jacobian is not None:
            return np.asarray(self.n_jacobian(x), dtype=float)
        h = self.fd_scale * (1.0 + float(np.linalg.norm(x)))
        out = np.empty((self.dim, self.dim))
        for j in range(self.dim):
            step = np.zeros(self.dim)
            step[j] = h
            out[:, j] = (np.asarray(self.n_map(x + step), dtype=float)
                         - np.asarray(self.n_map(x - step), dtype=float)) / (2.0 * h)
        return out


def phi(p: Problem, s: SolutionPoint) -> np.ndarray:
    """Defining residual ``L x + eps N(x) - lam C x``."""
    return (p.l_matrix @ s.x
            + s.eps * np.asarray(p.n_map(s.x), dtype=float)
            - s.lam * (p.c_matrix @ s.x))


def augmented_residual(p: Problem, s: SolutionPoint) -> np.ndarray:
    """Residual with the sphere defect ``(x' W x - 1)/2`` appended."""
    r = np.empty(p.dim + 1)
    r[: p.dim] = phi(p, s)
    r[p.dim] = 0.5 * (p.gram_g.inner(s.x, s.x) - 1.0)
    return r


def residual_norm(p: Problem, s: SolutionPoint) -> float:
    """Residual-metric norm of the augmented residual."""
    r = augmented_residual(p, s)
    return float(np.sqrt(p.gram_h.inner(r[: p.dim], r[: p.dim]) + r[p.dim] ** 2))


def jacobian(p: Problem, s: SolutionPoint) -> np.ndarray:
    """Derivative of the augmented residual: (dim+1) x (dim+2).

    Column blocks are (x | eps | lam); the final row is the sphere
    constraint gradient ``(W x, 0, 0)``.
    """
    dim = p.dim
    jac = np.zeros((dim + 1, dim + 2))
    jac[:dim, :dim] = p.l_matrix + s.eps * p.n_derivative(s.x) - s.lam * p.c_matrix
    jac[:dim, dim] = np.asarray(p.n_map(s.x), dtype=float)
    jac[:dim, dim + 1] = -(p.c_matrix @ s.x)
    jac[dim, :dim] = p.gram_g.matrix @ s.x
    return jac


def fd_jacobian(p: Problem, s: SolutionPoint, h: float) -> np.ndarray:
    """Central-difference derivative of the augmented residual.

    Independent of :func:`jacobian`; used to cross-check it.
    """
    if h <= 0.0:
        raise ValueError("step must be positive")
    base = s.as_array()
    out = np.empty((p.dim + 1, p.dim + 2))
    for j in range(p.dim + 2):
        delta = np.zeros(p.dim + 2)
        delta[j] = h
        rp = augmented_residual(p, SolutionPoint.from_array(base + delta))
        rm = augmented_residual(p, SolutionPoint.from_array(base - delta))
        out[:, j] = (rp - rm) / (2.0 * h)
    return out


def sphere_project(p: Problem, x) -> np.ndarray:
    """Rescale ``x`` onto the unit sphere of the sphere metric."""
    xx = np.asarray(x, dtype=float).reshape(-1)
    nrm = p.gram_g.norm(xx)
    if nrm == 0.0:
        raise ValueError("cannot project the zero vector onto the sphere")
    return xx / nrm
