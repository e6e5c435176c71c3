"""Curvature of a metric given in coordinates.

Conventions used throughout:

* ``dg[a, i, j] = d_a g_ij``, ``ddg[a, b, i, j] = d_a d_b g_ij``.
* ``gamma[k, i, j]`` is the Levi-Civita symbol Gamma^k_ij.
* ``R[i, j, k, l] = <R(d_i, d_j) d_l, d_k>`` with
  ``R(X, Y) = nabla_X nabla_Y - nabla_Y nabla_X - nabla_[X,Y]``, so that
  ``R[i, j, i, j]`` is the sectional curvature of an orthonormal pair and the
  unit round sphere has ``R_ijkl = d_ik d_jl - d_il d_jk``.
* The curvature operator acts on bivectors ``e_i ^ e_j`` (i < j, lexicographic)
  of an orthonormal frame with entries ``R_ijkl``; the unit sphere gives the
  identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np

from . import jets
from .eigen import sym_eigenvalues
from .errors import (
    DegenerateMetricError,
    DegeneratePlaneError,
    DomainError,
)

MAX_CONDITION = 1e12
SYMMETRY_TOL = 1e-12
RIEMANN_TOL = 1e-8


@dataclass(frozen=True)
class ChartPoint:
    coords: tuple[float, ...]
    chart_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(float(c) for c in self.coords))

    @property
    def dim(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class MetricField:
    """Metric components on an open coordinate box.

    ``components`` maps a coordinate sequence (floats or :class:`jets.Jet`)
    to an m x m nested sequence.  It must only use arithmetic and the
    helpers in :mod:`curvgate.jets` so that it can be differentiated.
    """

    dim: int
    components: Callable[[Sequence], Sequence[Sequence]]
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    chart_id: str = "chart"
    scale: float = 1.0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if len(self.lower) != self.dim or len(self.upper) != self.dim:
            raise ValueError("domain box does not match dimension")
        if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise ValueError("empty domain box")

    def point(self, *coords: float) -> ChartPoint:
        if len(coords) == 1 and isinstance(coords[0], (list, tuple, np.ndarray)):
            coords = tuple(coords[0])
        return ChartPoint(tuple(coords), self.chart_id)

    def contains(self, p: ChartPoint) -> bool:
        return len(p.coords) == self.dim and all(
            lo < x < hi for x, lo, hi in zip(p.coords, self.lower, self.upper)
        )

    def _check_point(self, p: ChartPoint) -> None:
        if len(p.coords) != self.dim:
            raise DomainError(
                f"point has {len(p.coords)} coordinates, chart {self.chart_id!r} "
                f"has dimension {self.dim}"
            )
        if not self.contains(p):
            raise DomainError(f"point {p.coords} outside domain of chart {self.chart_id!r}")

    def evaluate(self, p: ChartPoint) -> np.ndarray:
        self._check_point(p)
        g = np.array([[jets.value(x) for x in row] for row in self.components(p.coords)])
        _validate_metric(g)
        return g

    def derivatives(self, p: ChartPoint) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """``(g, dg, ddg)`` at ``p`` from one pass of second-order duals."""
        self._check_point(p)
        variables = jets.Jet.variables(p.coords)
        g, dg, ddg = jets.unpack(self.components(variables), self.dim)
        _validate_metric(g)
        return g, dg, ddg

    def sample_points(self, count: int, seed: int, margin: float = 0.1) -> list[ChartPoint]:
        """Seeded uniform points strictly inside the box (shrunk by ``margin``)."""
        rng = np.random.default_rng(seed)
        lo = np.array(self.lower)
        hi = np.array(self.upper)
        pad = margin * (hi - lo)
        pts = rng.uniform(lo + pad, hi - pad, size=(count, self.dim))
        return [self.point(tuple(row)) for row in pts]


def _validate_metric(g: np.ndarray) -> None:
    scale = max(float(np.max(np.abs(g))), np.finfo(float).tiny)
    if np.max(np.abs(g - g.T)) > SYMMETRY_TOL * scale:
        raise DegenerateMetricError("metric matrix is not symmetric")
    eig = np.linalg.eigvalsh(0.5 * (g + g.T))
    if eig[0] <= 0.0:
        raise DegenerateMetricError(f"metric is not positive definite (min eigenvalue {eig[0]:.3e})")
    if eig[-1] / eig[0] > MAX_CONDITION:
        raise DegenerateMetricError(f"metric condition number {eig[-1] / eig[0]:.3e} exceeds 1e12")


def finite_difference_derivatives(metric: MetricField, p: ChartPoint,
                                  h: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Central-difference ``(dg, ddg)``; an independent check on the dual path."""
    if h is None:
        h = 1e-4 * metric.scale
    m = metric.dim
    x0 = np.array(p.coords)

    def g_at(x):
        return np.array([[float(v) for v in row] for row in metric.components(tuple(x))])

    g0 = g_at(x0)
    dg = np.zeros((m, m, m))
    ddg = np.zeros((m, m, m, m))
    plus = []
    minus = []
    for a in range(m):
        e = np.zeros(m)
        e[a] = h
        gp, gm = g_at(x0 + e), g_at(x0 - e)
        plus.append(gp)
        minus.append(gm)
        dg[a] = (gp - gm) / (2 * h)
        ddg[a, a] = (gp - 2 * g0 + gm) / (h * h)
    for a in range(m):
        for b in range(a + 1, m):
            ea = np.zeros(m)
            eb = np.zeros(m)
            ea[a] = h
            eb[b] = h
            val = (g_at(x0 + ea + eb) - g_at(x0 + ea - eb) - g_at(x0 - ea + eb)
                   + g_at(x0 - ea - eb)) / (4 * h * h)
            ddg[a, b] = ddg[b, a] = val
    return dg, ddg


def _christoffel_parts(g, dg):
    ginv = np.linalg.inv(g)
    # first kind: low[l, i, j] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    low = 0.5 * (np.transpose(dg, (2, 0, 1)) + np.transpose(dg, (2, 1, 0)) - dg)
    return ginv, low, np.einsum("kl,lij->kij", ginv, low)


def christoffel(metric: MetricField, p: ChartPoint) -> np.ndarray:
    """Gamma^k_ij at ``p`` as an array indexed ``[k, i, j]``."""
    g, dg, _ = metric.derivatives(p)
    return _christoffel_parts(g, dg)[2]


def christoffel_from_derivatives(g: np.ndarray, dg: np.ndarray) -> np.ndarray:
    return _christoffel_parts(g, dg)[2]


def riemann_from_derivatives(g: np.ndarray, dg: np.ndarray, ddg: np.ndarray) -> np.ndarray:
    """Lowered coordinate-frame Riemann tensor from metric jets."""
    ginv, low, gam = _christoffel_parts(g, dg)
    # dlow[a, l, i, j] = 1/2 (d_a d_i g_jl + d_a d_j g_il - d_a d_l g_ij)
    dlow = 0.5 * (np.einsum("aijl->alij", ddg) + np.einsum("ajil->alij", ddg)
                  - np.einsum("alij->alij", ddg))
    dginv = -np.einsum("kp,apq,ql->akl", ginv, dg, ginv)
    dgam = np.einsum("akl,lij->akij", dginv, low) + np.einsum("kl,alij->akij", ginv, dlow)
    # R^l_ijk with R(d_i, d_j) d_k = R^l_ijk d_l
    rup = (np.einsum("iljk->lijk", dgam) - np.einsum("jlik->lijk", dgam)
           + np.einsum("lip,pjk->lijk", gam, gam) - np.einsum("ljp,pik->lijk", gam, gam))
    return np.einsum("kq,qijl->ijkl", g, rup)


@dataclass(frozen=True)
class RiemannTensor:
    point: ChartPoint
    components: np.ndarray
    metric_at_point: np.ndarray
    frame: str = "coordinate"

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    def symmetry_residuals(self) -> dict[str, float]:
        """Max violation of each algebraic identity, relative to max |R|."""
        r = self.components
        scale = max(float(np.max(np.abs(r))), 1.0)
        bianchi = r + np.einsum("iklj->ijkl", r) + np.einsum("iljk->ijkl", r)
        return {
            "antisym_first": float(np.max(np.abs(r + np.einsum("jikl->ijkl", r)))) / scale,
            "antisym_second": float(np.max(np.abs(r + np.einsum("ijlk->ijkl", r)))) / scale,
            "pair_symmetry": float(np.max(np.abs(r - np.einsum("klij->ijkl", r)))) / scale,
            "first_bianchi": float(np.max(np.abs(bianchi))) / scale,
        }

    def check_symmetries(self, tol: float = RIEMANN_TOL) -> bool:
        return all(v <= tol for v in self.symmetry_residuals().values())

    def orthonormal(self) -> RiemannTensor:
        if self.frame == "orthonormal":
            return self
        e = orthonormal_frame(self.metric_at_point)
        comps = np.einsum("ijkl,ia,jb,kc,ld->abcd", self.components, e, e, e, e)
        return RiemannTensor(self.point, comps, np.eye(self.dim), "orthonormal")


def riemann(metric: MetricField, p: ChartPoint) -> RiemannTensor:
    g, dg, ddg = metric.derivatives(p)
    return RiemannTensor(p, riemann_from_derivatives(g, dg, ddg), g, "coordinate")


def orthonormal_frame(g: np.ndarray) -> np.ndarray:
    """Gram-Schmidt on the coordinate frame; columns are the new frame."""
    m = g.shape[0]
    frame = np.zeros((m, m))
    for a in range(m):
        v = np.zeros(m)
        v[a] = 1.0
        for b in range(a):
            v = v - (frame[:, b] @ g @ v) * frame[:, b]
        norm2 = v @ g @ v
        if norm2 <= 1e-14 * max(1.0, g[a, a]):
            raise DegenerateMetricError("Gram-Schmidt failed: coordinate frame is degenerate")
        frame[:, a] = v / np.sqrt(norm2)
    return frame


def sectional(R: RiemannTensor, u, v, g: np.ndarray | None = None) -> float:
    """Sectional curvature of span(u, v); vectors in R's frame."""
    if g is None:
        g = R.metric_at_point
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    gram = (u @ g @ u) * (v @ g @ v) - (u @ g @ v) ** 2
    if gram <= 1e-10:
        raise DegeneratePlaneError(f"vectors span a degenerate plane (Gram determinant {gram:.3e})")
    return float(np.einsum("ijkl,i,j,k,l->", R.components, u, v, u, v) / gram)


def ricci_and_scalar(R: RiemannTensor, g: np.ndarray | None = None) -> tuple[np.ndarray, float]:
    if g is None:
        g = R.metric_at_point
    ginv = np.linalg.inv(g)
    ric = np.einsum("ik,ijkl->jl", ginv, R.components)
    ric = 0.5 * (ric + ric.T)
    return ric, float(np.einsum("jl,jl->", ginv, ric))


def bivector_basis(m: int) -> list[tuple[int, int]]:
    return list(combinations(range(m), 2))


@dataclass(frozen=True)
class CurvatureOperatorMatrix:
    point: ChartPoint
    matrix: np.ndarray
    basis: tuple[tuple[int, int], ...] = field(default=())

    def eigenvalues(self) -> list[float]:
        return sym_eigenvalues(self.matrix)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))


def curvature_operator(R: RiemannTensor, g: np.ndarray | None = None) -> CurvatureOperatorMatrix:
    if g is not None and R.frame == "coordinate":
        R = RiemannTensor(R.point, R.components, g, R.frame)
    ortho = R.orthonormal().components
    basis = bivector_basis(R.dim)
    mat = np.array([[ortho[i, j, k, l] for (k, l) in basis] for (i, j) in basis]).reshape(
        len(basis), len(basis))
    mat = 0.5 * (mat + mat.T)
    return CurvatureOperatorMatrix(R.point, mat, tuple(basis))


@dataclass(frozen=True)
class CurvatureReport:
    point: ChartPoint
    ricci_eigenvalues: tuple[float, ...]
    scalar: float
    operator_eigenvalues: tuple[float, ...]
    symmetry_residuals: dict


def curvature_report(metric: MetricField, p: ChartPoint) -> CurvatureReport:
    R = riemann(metric, p)
    ortho = R.orthonormal()
    ric, scal = ricci_and_scalar(ortho)
    op = curvature_operator(ortho)
    return CurvatureReport(
        point=p,
        ricci_eigenvalues=tuple(sym_eigenvalues(ric)),
        scalar=scal,
        operator_eigenvalues=tuple(op.eigenvalues()),
        symmetry_residuals=R.symmetry_residuals(),
    )
