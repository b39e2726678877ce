"""Dense small-matrix linear algebra helpers.

SVD-based rank and kernel detection, least squares with an explicit
residual, and Gram-weighted inner products.  Everything here is a pure
function of its inputs (no module state), so concurrent use is safe.

Rank decisions are always relative: a singular value counts as zero when
it falls below ``rel_tol`` times the largest one, which keeps every test
scale invariant.  The zero matrix is special-cased so the relative cut
never divides by zero.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "DEFAULT_REL_TOL",
    "NumericalFailure",
    "GramMetric",
    "svd",
    "kernel_basis",
    "least_squares",
    "gram_inner",
    "min_singular_values",
]

DEFAULT_REL_TOL = 1e-8


class NumericalFailure(RuntimeError):
    """A dense factorization failed to converge."""


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def svd(m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Full singular value decomposition of a dense matrix.

    Parameters
    ----------
    m : array_like, shape (rows, cols)

    Returns
    -------
    (u, s, vt)
        ``u`` is (rows, rows), ``s`` holds the singular values in
        descending order, ``vt`` is (cols, cols), and
        ``u[:, :len(s)] * s @ vt[:len(s)]`` reconstructs ``m``.

    Raises
    ------
    NumericalFailure
        If the iteration does not converge.
    """
    a = _as_matrix(m)
    try:
        u, s, vt = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"SVD did not converge for shape {a.shape}") from exc
    return u, s, vt


def kernel_basis(m, rel_tol: float = DEFAULT_REL_TOL) -> np.ndarray:
    """Orthonormal basis of the numerical kernel, as matrix columns.

    Directions whose singular value is at most ``rel_tol * sigma_max``
    count as kernel.  A zero matrix yields the full standard basis.

    Returns
    -------
    ndarray, shape (cols, k)
        Mutually orthonormal unit vectors; ``k`` may be zero.
    """
    if not 0.0 < rel_tol < 1.0:
        raise ValueError("rel_tol must lie in (0, 1)")
    a = _as_matrix(m)
    _, s, vt = svd(a)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        return np.eye(a.shape[1])
    rank = int(np.sum(s > rel_tol * smax))
    # right singular directions past the spectrum of a wide matrix are
    # exact kernel, so slicing vt (cols x cols) captures them as well
    return vt[rank:].T.copy()


def least_squares(a, b, rel_tol: float = DEFAULT_REL_TOL) -> tuple[np.ndarray, float]:
    """Minimum-norm least squares through the SVD pseudo-inverse.

    Uses the same relative rank cut as :func:`kernel_basis`, so the two
    agree on what "singular" means.

    Returns
    -------
    (x, residual)
        ``x`` attains ``min ||a @ x - b||`` and ``residual`` is that
        minimum (Euclidean norm, computed from the actual defect).
    """
    aa = _as_matrix(a)
    bb = np.asarray(b, dtype=float).reshape(-1)
    if aa.shape[0] != bb.shape[0]:
        raise ValueError(f"shape mismatch: {aa.shape} vs rhs of length {bb.shape[0]}")
    u, s, vt = svd(aa)
    smax = float(s[0]) if s.size else 0.0
    x = np.zeros(aa.shape[1])
    if smax > 0.0:
        keep = s > rel_tol * smax
        proj = u.T @ bb
        coeff = np.where(keep, proj[: s.size] / np.where(keep, s, 1.0), 0.0)
        x = vt[: s.size].T @ coeff
    residual = float(np.linalg.norm(aa @ x - bb))
    return x, residual


def min_singular_values(m, k: int) -> np.ndarray:
    """The ``k`` smallest singular values, ascending."""
    a = _as_matrix(m)
    if not 0 <= k <= min(a.shape):
        raise ValueError(f"k={k} out of range for shape {a.shape}")
    _, s, _ = svd(a)
    return s[::-1][:k].copy()


class GramMetric:
    """Symmetric positive definite matrix realizing an inner product.

    Symmetry is required to within 1e-12 relative on construction and the
    matrix is symmetrized before use; positive definiteness is checked
    through the spectrum of the symmetrized matrix.
    """

    def __init__(self, matrix):
        w = _as_matrix(matrix)
        if w.shape[0] != w.shape[1]:
            raise ValueError(f"Gram matrix must be square, got {w.shape}")
        scale = 1.0 + float(np.abs(w).max(initial=0.0))
        if float(np.abs(w - w.T).max(initial=0.0)) > 1e-12 * scale:
            raise ValueError("Gram matrix is not symmetric")
        sym = 0.5 * (w + w.T)
        eigmin = float(np.linalg.eigvalsh(sym)[0])
        if eigmin <= 0.0:
            raise ValueError(f"Gram matrix is not positive definite (min eigenvalue {eigmin:g})")
        self.matrix = sym
        self.dim = sym.shape[0]
        self._eig = None  # lazy eigendecomposition for sqrt factors

    @classmethod
    def identity(cls, dim: int) -> "GramMetric":
        return cls(np.eye(dim))

    def _eigh(self):
        if self._eig is None:
            self._eig = np.linalg.eigh(self.matrix)
        return self._eig

    def inner(self, x, y) -> float:
        xx = np.asarray(x, dtype=float).reshape(-1)
        yy = np.asarray(y, dtype=float).reshape(-1)
        if xx.shape[0] != self.dim or yy.shape[0] != self.dim:
            raise ValueError(f"dimension mismatch: metric is {self.dim}-dimensional")
        return float(xx @ self.matrix @ yy)

    def norm(self, x) -> float:
        return float(np.sqrt(self.inner(x, x)))

    def sqrt_apply(self, x) -> np.ndarray:
        d, q = self._eigh()
        return q @ (np.sqrt(d) * (q.T @ np.asarray(x, dtype=float)))

    def inv_sqrt_apply(self, x) -> np.ndarray:
        d, q = self._eigh()
        return q @ ((q.T @ np.asarray(x, dtype=float)) / np.sqrt(d))

    def orthonormal_complement(self, x) -> np.ndarray:
        """Metric-orthonormal basis of the metric-orthogonal complement.

        Returns a (dim, dim-1) matrix ``T`` with ``T.T @ W @ T = I`` and
        ``x.T @ W @ T = 0``.
        """
        y = self.sqrt_apply(x)
        ny = np.linalg.norm(y)
        if ny == 0.0:
            raise ValueError("cannot complement the zero vector")
        u, _, _ = svd(y.reshape(-1, 1) / ny)
        return np.column_stack([self.inv_sqrt_apply(u[:, j]) for j in range(1, self.dim)])


def gram_inner(w: GramMetric, x, y) -> float:
    """Inner product ``x.T @ W @ y`` in basis coordinates."""
    return w.inner(x, y)
