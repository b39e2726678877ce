"""Built-in example problems, their trivial solutions, and trace starts.

Labels ``ex41``/``ex44`` are planar two-by-two problems; ``ex42``/``ex43``
are the periodic boundary value problems from :mod:`eigenbranch.discretize`
and take a mode count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discretize import FourierBasis, fourier_problem_scalar, fourier_problem_system
from .numerics import GramMetric, kernel_basis
from .problem import Problem, SolutionPoint, sphere_project

__all__ = [
    "LABELS",
    "DEFAULT_MODES",
    "TrivialSolution",
    "planar_rotation_problem",
    "planar_nilpotent_problem",
    "builtin_problem",
    "trivial_solutions",
    "default_start",
]

LABELS = ("ex41", "ex42", "ex43", "ex44")
DEFAULT_MODES = {"ex42": 8, "ex43": 2}


@dataclass(frozen=True)
class TrivialSolution:
    """A known zero-perturbation solution ``(x, 0, lam)`` of a built-in problem."""

    x: np.ndarray
    lam: float
    note: str = ""

    def point(self) -> SolutionPoint:
        return SolutionPoint(np.array(self.x, dtype=float), 0.0, self.lam)


def planar_rotation_problem() -> Problem:
    """Two-by-two problem with L = diag(1, -1), skew N, identity C."""
    n_matrix = np.array([[0.0, 1.0], [-1.0, 0.0]])
    return Problem(
        l_matrix=np.array([[1.0, 0.0], [0.0, -1.0]]),
        c_matrix=np.eye(2),
        n_map=lambda x, m=n_matrix: m @ x,
        n_jacobian=lambda x, m=n_matrix: m.copy(),
        n_matrix=n_matrix,
        gram_g=GramMetric.identity(2),
        label="ex41",
    )


def planar_nilpotent_problem() -> Problem:
    """Two-by-two problem with nilpotent L (single eigenvalue zero), skew N."""
    n_matrix = np.array([[0.0, -1.0], [1.0, 0.0]])
    return Problem(
        l_matrix=np.array([[0.0, 0.0], [-2.0, 0.0]]),
        c_matrix=np.eye(2),
        n_map=lambda x, m=n_matrix: m @ x,
        n_jacobian=lambda x, m=n_matrix: m.copy(),
        n_matrix=n_matrix,
        gram_g=GramMetric.identity(2),
        label="ex44",
    )


def builtin_problem(label: str, modes: int | None = None) -> Problem:
    """Construct a built-in problem by label; ``modes`` applies to ex42/ex43."""
    if label == "ex41":
        return planar_rotation_problem()
    if label == "ex44":
        return planar_nilpotent_problem()
    if label == "ex42":
        return fourier_problem_scalar(modes or DEFAULT_MODES["ex42"])
    if label == "ex43":
        return fourier_problem_system(modes or DEFAULT_MODES["ex43"])
    raise ValueError(f"unknown built-in problem {label!r} (choose from {LABELS})")


def _modes_of(p: Problem) -> int:
    block = p.dim if p.label == "ex42" else p.dim // 2
    return (block - 1) // 2


def _constant_pair(p: Problem, a: float, b: float) -> np.ndarray:
    basis = FourierBasis(_modes_of(p), components=2)
    x = np.zeros(p.dim)
    x[basis.const_index(0)] = a
    x[basis.const_index(1)] = b
    return x


def trivial_solutions(p: Problem) -> list[TrivialSolution]:
    """Catalog of known trivial solutions for a built-in problem.

    Simple ones come first; the non-simple representatives (when the
    problem has any) are appended last.
    """
    root2 = math.sqrt(2.0)
    if p.label == "ex41":
        return [
            TrivialSolution(np.array([1.0, 0.0]), 1.0, "eigenvalue +1"),
            TrivialSolution(np.array([0.0, 1.0]), -1.0, "eigenvalue -1"),
            TrivialSolution(np.array([-1.0, 0.0]), 1.0, "eigenvalue +1, flipped"),
            TrivialSolution(np.array([0.0, -1.0]), -1.0, "eigenvalue -1, flipped"),
        ]
    if p.label == "ex42":
        const = np.zeros(p.dim)
        const[0] = 1.0
        return [
            TrivialSolution(const, 0.0, "constant one"),
            TrivialSolution(-const, 0.0, "constant minus one"),
        ]
    if p.label == "ex43":
        half = root2 / 2.0
        out = [
            TrivialSolution(_constant_pair(p, half, half), 1.0, "loop, eigenvalue +1"),
            TrivialSolution(_constant_pair(p, -half, half), -1.0, "loop, eigenvalue -1"),
            TrivialSolution(_constant_pair(p, -half, -half), 1.0, "loop, eigenvalue +1, flipped"),
            TrivialSolution(_constant_pair(p, half, -half), -1.0, "loop, eigenvalue -1, flipped"),
        ]
        for lam in (root2, -root2):
            ker = kernel_basis(p.l_matrix - lam * p.c_matrix)
            if ker.shape[1] == 0:
                continue
            x = sphere_project(p, ker[:, 0])
            out.append(TrivialSolution(x, lam, f"oscillating, eigenvalue {lam:+.6f}, not simple"))
        return out
    if p.label == "ex44":
        return [
            TrivialSolution(np.array([0.0, 1.0]), 0.0, "not simple"),
            TrivialSolution(np.array([0.0, -1.0]), 0.0, "not simple, flipped"),
        ]
    raise ValueError(f"no trivial-solution catalog for problem {p.label!r}")


def default_start(p: Problem) -> SolutionPoint:
    """Canonical branch-trace start point for each built-in problem."""
    if p.label == "ex41":
        return SolutionPoint(np.array([1.0, 0.0]), 0.0, 1.0)
    if p.label == "ex42":
        x = np.zeros(p.dim)
        x[0] = 1.0
        return SolutionPoint(x, 0.0, 0.0)
    if p.label == "ex43":
        half = math.sqrt(2.0) / 2.0
        return SolutionPoint(_constant_pair(p, half, half), 0.0, 1.0)
    if p.label == "ex44":
        inv = 1.0 / math.sqrt(2.0)
        return SolutionPoint(np.array([inv, -inv]), 1.0, 1.0)
    raise ValueError(f"no default start for problem {p.label!r}")
