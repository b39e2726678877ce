"""Closed-form solution families for the built-in problems.

Each family is a parametrized curve of exact solution triples together
with a distance functional, used to validate traced branches.  Families
self-test on construction: 64 samples must satisfy the matching
problem's residual to 1e-10, so a mistyped formula fails fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .catalog import builtin_problem
from .discretize import FourierBasis
from .problem import Problem, SolutionPoint, residual_norm

__all__ = [
    "OracleFamily",
    "oracle_ex41",
    "oracle_ex42_segment",
    "oracle_ex42_hyperbola",
    "oracle_ex43",
    "oracle_ex44",
    "families_for",
    "point_distances",
    "distance_to_family",
]

SELF_TEST_SAMPLES = 64
SELF_TEST_TOL = 1e-10


def oracle_ex41(theta: float) -> SolutionPoint:
    """Solution loop of the planar rotation problem."""
    return SolutionPoint(
        np.array([math.cos(theta / 2.0), math.sin(theta / 2.0)]),
        -math.sin(theta),
        math.cos(theta),
    )


def oracle_ex42_segment(theta: float, modes: int) -> SolutionPoint:
    """Bounded loop of the scalar periodic problem: ``cos(theta) + sin(theta) cos t`` at ``lam = 0``."""
    basis = FourierBasis(modes)
    x = np.zeros(basis.dim)
    x[basis.const_index()] = math.cos(theta)
    x[basis.cos_index(1)] = math.sin(theta)
    return SolutionPoint(x, math.sin(theta), 0.0)


def oracle_ex42_hyperbola(side: str, s: float, modes: int) -> SolutionPoint:
    """Unbounded arcs of the scalar periodic problem, one per sign of ``eps``.

    ``side`` is ``"left"`` (eps negative) or ``"right"``; the parameter is
    the eigenvalue, and ``eps**2 - lam**2 = 1`` along both arcs.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    sign = -1.0 if side == "left" else 1.0
    basis = FourierBasis(modes)
    root = math.sqrt(1.0 + s * s)
    x = np.zeros(basis.dim)
    x[basis.cos_index(1)] = sign / root
    x[basis.sin_index(1)] = sign * s / root
    return SolutionPoint(x, sign * root, s)


def oracle_ex43(alpha: float, modes: int) -> SolutionPoint:
    """Constant-function loop of the coupled periodic system."""
    basis = FourierBasis(modes, components=2)
    x = np.zeros(basis.dim)
    x[basis.const_index(0)] = math.cos(alpha / 2.0)
    x[basis.const_index(1)] = math.sin(alpha / 2.0)
    return SolutionPoint(x, math.cos(alpha), math.sin(alpha))


def oracle_ex44(phi: float) -> SolutionPoint:
    """Solution loop of the planar nilpotent problem.

    The eigenpair sweeps the circle ``eps (eps - 2) + lam**2 = 0``; the
    eigenvector rotates at half speed, so the loop closes after 4 pi.
    """
    return SolutionPoint(
        np.array([-math.sin(phi / 2.0), math.cos(phi / 2.0)]),
        1.0 - math.cos(phi),
        math.sin(phi),
    )


@dataclass
class OracleFamily:
    """A parametrized curve of exact solutions with a distance functional."""

    label: str
    problem: Problem
    evaluate: Callable[[float], SolutionPoint]
    domain: tuple[float, float]
    periodic: bool = False

    def __post_init__(self):
        lo, hi = self.domain
        for t in np.linspace(lo, hi, SELF_TEST_SAMPLES):
            worst = residual_norm(self.problem, self.evaluate(float(t)))
            if not worst <= SELF_TEST_TOL:
                raise ValueError(
                    f"oracle family {self.label!r} fails its own residual "
                    f"check at parameter {t:g}: {worst:g}")

    def point(self, t: float) -> np.ndarray:
        return self.evaluate(float(t)).as_array()


def families_for(p: Problem) -> list[OracleFamily]:
    """All closed-form families matching a built-in problem."""
    four_pi = 4.0 * math.pi
    if p.label == "ex41":
        return [OracleFamily("ex41", p, oracle_ex41, (0.0, four_pi), periodic=True)]
    if p.label == "ex42":
        modes = (p.dim - 1) // 2
        return [
            OracleFamily("ex42_segment", p,
                         lambda t, m=modes: oracle_ex42_segment(t, m),
                         (0.0, 2.0 * math.pi), periodic=True),
            OracleFamily("ex42_hyperbola_left", p,
                         lambda s, m=modes: oracle_ex42_hyperbola("left", s, m),
                         (-12.0, 12.0)),
            OracleFamily("ex42_hyperbola_right", p,
                         lambda s, m=modes: oracle_ex42_hyperbola("right", s, m),
                         (-12.0, 12.0)),
        ]
    if p.label == "ex43":
        modes = (p.dim // 2 - 1) // 2
        return [OracleFamily("ex43", p,
                             lambda a, m=modes: oracle_ex43(a, m),
                             (0.0, four_pi), periodic=True)]
    if p.label == "ex44":
        return [OracleFamily("ex44", p, oracle_ex44, (0.0, four_pi), periodic=True)]
    raise ValueError(f"no oracle families for problem {p.label!r}")


def _golden_refine(fun: Callable[[float], float], lo: float, hi: float,
                   iters: int = 80) -> float:
    """Golden-section minimum of a scalar function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iters):
        if b - a < 1e-14 * (1.0 + abs(a) + abs(b)):
            break
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    return min(fc, fd)


def _points_of(branch) -> Sequence[SolutionPoint]:
    return branch.points if hasattr(branch, "points") else branch


def point_distances(branch, family: OracleFamily, samples: int = 1024) -> np.ndarray:
    """Distance of every branch point to the family, in trace order.

    Distances are Euclidean on the full ``(x, eps, lam)`` coordinates: a
    dense parameter sweep brackets the nearest sample, then golden-section
    refinement polishes it.
    """
    pts = _points_of(branch)
    lo, hi = family.domain
    # drop the duplicated endpoint of periodic families so the sweep is uniform
    ts = np.linspace(lo, hi, samples, endpoint=not family.periodic)
    table = np.array([family.point(t) for t in ts])
    out = np.empty(len(pts))
    span = ts[1] - ts[0]
    for i, pt in enumerate(pts):
        target = pt.as_array()
        dist2 = np.sum((table - target) ** 2, axis=1)
        j = int(np.argmin(dist2))

        def gap(t: float, v=target) -> float:
            return float(np.linalg.norm(family.point(t) - v))

        out[i] = _golden_refine(gap, ts[j] - span, ts[j] + span)
    return out


def distance_to_family(branch, family: OracleFamily, samples: int = 1024) -> float:
    """Largest distance of any branch point to the family."""
    pts = _points_of(branch)
    if not len(pts):
        return 0.0
    return float(point_distances(branch, family, samples).max())
