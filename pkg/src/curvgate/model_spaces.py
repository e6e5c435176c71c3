"""Closed-form curvature data and coordinate charts for the model ambients.

Supported spaces: Euclidean space, round spheres of any radius, Berger
spheres ``(S^{2n+1}, sigma + (delta - 1) eta^2)``, complex projective space
with the Fubini-Study metric, and Riemannian products of these.

Closed forms are kept in exact rational arithmetic whenever the parameters
are rational.  The Berger data are stored as affine functions of ``delta`` so
that threshold derivations can solve for ``delta`` directly.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

import numpy as np

from . import jets
from .tensor_core import MetricField, curvature_report

Number = Union[Fraction, float]
Spectrum = tuple[tuple[Number, int], ...]

NUMERIC_ONLY = "numeric-only"


def exact(x) -> Number:
    """Promote ints and rationals to Fraction; leave floats alone."""
    if isinstance(x, bool):
        raise TypeError("boolean is not a number")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    return float(x)


# ---------------------------------------------------------------------------
# affine functions of delta


@dataclass(frozen=True)
class Affine:
    """``const + slope * delta`` with rational coefficients."""

    const: Fraction
    slope: Fraction

    def __call__(self, delta):
        return self.const + self.slope * delta

    def __sub__(self, other: Affine) -> Affine:
        return Affine(self.const - other.const, self.slope - other.slope)

    def scaled(self, k) -> Affine:
        return Affine(self.const * k, self.slope * k)

    def root(self) -> Fraction | None:
        if self.slope == 0:
            return None
        return -self.const / self.slope


def _aff(c, s) -> Affine:
    return Affine(Fraction(c), Fraction(s))


@dataclass(frozen=True)
class BergerForms:
    """Curvature quantities of a Berger sphere as functions of delta."""

    n: int
    sectional: tuple[tuple[str, Affine], ...]
    ricci: tuple[tuple[Affine, int], ...]
    scalar: Affine
    spectrum: tuple[tuple[Affine, int], ...]


def berger_forms(n: int) -> BergerForms:
    if n < 2:
        raise ValueError("Berger spheres need n >= 2")
    return BergerForms(
        n=n,
        sectional=(
            ("vertical", _aff(0, 1)),        # sec(xi_hat, X)
            ("holomorphic", _aff(4, -3)),    # sec(X, JX)
            ("totally-real", _aff(1, 0)),    # sec(X, Y), Y orthogonal to X, JX
        ),
        ricci=((_aff(0, 2 * n), 1), (_aff(2 * n + 2, -2), 2 * n)),
        scalar=_aff(2 * n * (2 * n + 2), -2 * n),
        spectrum=(
            (_aff(0, 1), n * (n + 1)),
            (_aff(2, -1), n * n - 1),
            (_aff(2 * n + 2, -(2 * n + 1)), 1),
        ),
    )


# ---------------------------------------------------------------------------
# model specifications


@dataclass(frozen=True)
class Euclidean:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("Euclidean dimension must be >= 1")

    @property
    def dim(self) -> int:
        return self.m


@dataclass(frozen=True)
class RoundSphere:
    m: int
    radius: Number = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "radius", exact(self.radius))
        if self.m < 1:
            raise ValueError("sphere dimension must be >= 1")
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def dim(self) -> int:
        return self.m


@dataclass(frozen=True)
class BergerSphere:
    n: int
    delta: Number

    def __post_init__(self):
        object.__setattr__(self, "delta", exact(self.delta))
        if self.n < 2:
            raise ValueError("Berger sphere requires n >= 2")
        if self.delta <= 0:
            raise ValueError("delta must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.n + 1


@dataclass(frozen=True)
class FubiniStudyCP:
    n: int
    scale: Number = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "scale", exact(self.scale))
        if self.n < 1:
            raise ValueError("CP^n requires n >= 1")
        if self.scale <= 0:
            raise ValueError("scale must be positive")

    @property
    def dim(self) -> int:
        return 2 * self.n


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        flat = []
        for f in self.factors:
            flat.extend(f.factors if isinstance(f, Product) else [f])
        if len(flat) < 1:
            raise ValueError("product needs at least one factor")
        object.__setattr__(self, "factors", tuple(flat))

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)


ModelSpec = Union[Euclidean, RoundSphere, BergerSphere, FubiniStudyCP, Product]


def factors_of(spec: ModelSpec) -> tuple:
    return spec.factors if isinstance(spec, Product) else (spec,)


# ---------------------------------------------------------------------------
# closed-form summaries


@dataclass(frozen=True)
class CurvatureSummary:
    dim: int
    sec_min: Number | None
    sec_max: Number | None
    spectrum: Spectrum | None
    ricci: Spectrum
    scalar: Number
    gamma: Number
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        d = self.dim
        if self.spectrum is not None:
            total = sum(mult for _, mult in self.spectrum)
            if total != d * (d - 1) // 2:
                raise ValueError(f"spectrum multiplicities sum to {total}, expected {d * (d - 1) // 2}")
        if sum(mult for _, mult in self.ricci) != d:
            raise ValueError("Ricci multiplicities must sum to the dimension")

    @property
    def spectrum_label(self):
        return NUMERIC_ONLY if self.spectrum is None else self.spectrum

    def ricci_min(self) -> Number | None:
        return min((v for v, _ in self.ricci), default=None)


def merge_spectrum(pairs) -> Spectrum:
    """Combine equal eigenvalues, drop empty multiplicities, sort ascending."""
    counts: Counter = Counter()
    for value, mult in pairs:
        if mult:
            counts[value] += mult
    return tuple(sorted(counts.items(), key=lambda kv: kv[0]))


def _expand(spectrum: Spectrum) -> list:
    return [v for v, k in spectrum for _ in range(k)]


def product_spectrum(factors: Sequence[CurvatureSummary]) -> Spectrum | None:
    """Curvature-operator spectrum of a Riemannian product.

    Each factor contributes its own spectrum; every mixed bivector
    ``e_i ^ f_j`` is in the kernel.
    """
    if any(f.spectrum is None for f in factors):
        return None
    dims = [f.dim for f in factors]
    mixed = sum(dims[i] * dims[j] for i in range(len(dims)) for j in range(i + 1, len(dims)))
    pairs = [pair for f in factors for pair in f.spectrum]
    pairs.append((Fraction(0), mixed))
    return merge_spectrum(pairs)


def _snap(x: float, tol: float = 1e-9) -> float:
    return 0.0 if abs(x) < tol else x


def _euclidean_summary(spec: Euclidean) -> CurvatureSummary:
    m = spec.m
    zero = Fraction(0)
    has_planes = m >= 2
    return CurvatureSummary(
        dim=m,
        sec_min=zero if has_planes else None,
        sec_max=zero if has_planes else None,
        spectrum=merge_spectrum([(zero, m * (m - 1) // 2)]),
        ricci=((zero, m),),
        scalar=zero,
        gamma=zero,
    )


def _sphere_summary(spec: RoundSphere) -> CurvatureSummary:
    m = spec.m
    k = 1 / (spec.radius * spec.radius)
    if m == 1:
        zero = Fraction(0)
        return CurvatureSummary(1, None, None, (), ((zero, 1),), zero, zero)
    return CurvatureSummary(
        dim=m,
        sec_min=k,
        sec_max=k,
        spectrum=((k, m * (m - 1) // 2),),
        ricci=(((m - 1) * k, m),),
        scalar=m * (m - 1) * k,
        gamma=k,
    )


def _berger_summary(spec: BergerSphere) -> CurvatureSummary:
    forms = berger_forms(spec.n)
    d = spec.delta
    secs = [f(d) for _, f in forms.sectional]
    spectrum = merge_spectrum((f(d), mult) for f, mult in forms.spectrum)
    flags = []
    if d >= Fraction(4, 3):
        flags.append("delta>=4/3: sectional curvature not positive")
    if d > Fraction(2 * spec.n + 2, 2 * spec.n + 1):
        flags.append("curvature operator has a negative eigenvalue")
    return CurvatureSummary(
        dim=spec.dim,
        sec_min=min(secs),
        sec_max=max(secs),
        spectrum=spectrum,
        ricci=merge_spectrum((f(d), mult) for f, mult in forms.ricci),
        scalar=forms.scalar(d),
        gamma=spectrum[0][0],
        flags=tuple(flags),
    )


def _cp_summary(spec: FubiniStudyCP) -> CurvatureSummary:
    # No closed form is shipped for CP^n; Ricci, scalar and gamma come from
    # the chart at the origin (the space is homogeneous).
    metric = chart(spec)
    report = curvature_report(metric, metric.point((0.0,) * spec.dim))
    from .eigen import group_eigenvalues

    ricci = tuple((v, k) for v, k in group_eigenvalues(report.ricci_eigenvalues, atol=1e-8))
    gamma = _snap(min(report.operator_eigenvalues))
    return CurvatureSummary(
        dim=spec.dim,
        sec_min=None,
        sec_max=None,
        spectrum=None,
        ricci=ricci,
        scalar=report.scalar,
        gamma=gamma,
        flags=("numeric: Ricci, scalar and gamma evaluated on the Fubini-Study chart",),
    )


def _product_summary(spec: Product) -> CurvatureSummary:
    parts = [closed_form_summary(f) for f in spec.factors]
    if len(parts) == 1:
        return parts[0]
    dim = spec.dim
    mixed_exists = sum(1 for p in parts if p.dim >= 1) >= 2
    sec_mins = [p.sec_min for p in parts if p.sec_min is not None]
    sec_maxs = [p.sec_max for p in parts if p.sec_max is not None]
    unknown_sec = any(p.sec_min is None and p.dim >= 2 for p in parts)
    zero = Fraction(0)
    if unknown_sec:
        sec_min = sec_max = None
    else:
        sec_min = min(sec_mins + ([zero] if mixed_exists else []))
        sec_max = max(sec_maxs + ([zero] if mixed_exists else []))
    gammas = [p.gamma for p in parts if p.dim >= 2] + ([zero] if mixed_exists else [])
    flags = tuple(flag for p in parts for flag in p.flags)
    return CurvatureSummary(
        dim=dim,
        sec_min=sec_min,
        sec_max=sec_max,
        spectrum=product_spectrum(parts),
        ricci=merge_spectrum(pair for p in parts for pair in p.ricci),
        scalar=sum((p.scalar for p in parts), zero),
        gamma=min(gammas),
        flags=flags,
    )


def closed_form_summary(spec: ModelSpec) -> CurvatureSummary:
    if isinstance(spec, Euclidean):
        return _euclidean_summary(spec)
    if isinstance(spec, RoundSphere):
        return _sphere_summary(spec)
    if isinstance(spec, BergerSphere):
        return _berger_summary(spec)
    if isinstance(spec, FubiniStudyCP):
        return _cp_summary(spec)
    if isinstance(spec, Product):
        return _product_summary(spec)
    raise TypeError(f"unknown model spec {spec!r}")


# ---------------------------------------------------------------------------
# charts


def _euclidean_components(m):
    def components(x):
        return [[1.0 if i == j else 0.0 for j in range(m)] for i in range(m)]
    return components


def _sphere_components(m, radius):
    r2 = float(radius) ** 2

    def components(x):
        s = 1.0
        for xi in x:
            s = s + xi * xi
        f = 4.0 * r2 / (s * s)
        zero = 0.0
        return [[f if i == j else zero for j in range(m)] for i in range(m)]
    return components


def berger_eta(x):
    """Contact form eta = <J p, dp> pulled back by inverse stereographic projection.

    ``x`` lives in R^{2n+1}; the sphere point is ``(2x, |x|^2 - 1) / (1 + |x|^2)``
    in R^{2n+2} = C^{n+1}, with complex coordinates paired as
    ``(u_0 + i u_1, ..., u_{2n} + i u_{2n+1})``.
    """
    dim = len(x)
    r2 = 0.0
    for xi in x:
        r2 = r2 + xi * xi
    w = 1.0 / ((1.0 + r2) * (1.0 + r2))
    eta = [0.0] * dim
    for k in range((dim - 1) // 2):
        a, b = 2 * k, 2 * k + 1
        eta[b] = eta[b] + 4.0 * x[a]
        eta[a] = eta[a] - 4.0 * x[b]
    last = dim - 1
    for i in range(dim):
        eta[i] = eta[i] + 4.0 * x[last] * x[i]
    eta[last] = eta[last] - 2.0 * (r2 - 1.0)
    return [e * w for e in eta]


def _berger_components(n, delta):
    m = 2 * n + 1
    d1 = float(delta) - 1.0

    def components(x):
        s = 1.0
        for xi in x:
            s = s + xi * xi
        f = 4.0 / (s * s)
        eta = berger_eta(x)
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                entry = d1 * (eta[i] * eta[j])
                if i == j:
                    entry = entry + f
                row.append(entry)
            rows.append(row)
        return rows
    return components


def _cp_components(n, scale):
    """Fubini-Study metric in inhomogeneous coordinates z_j = x_{2j} + i x_{2j+1}."""
    c = float(scale)
    m = 2 * n

    def components(x):
        s = 1.0
        for xi in x:
            s = s + xi * xi
        inv = c / (s * s)
        rows = [[0.0] * m for _ in range(m)]
        for j in range(n):
            xj, yj = x[2 * j], x[2 * j + 1]
            for k in range(n):
                xk, yk = x[2 * k], x[2 * k + 1]
                # h_{j kbar} = ((1+|z|^2) delta_jk - conj(z_j) z_k) / (1+|z|^2)^2
                re = -(xj * xk + yj * yk)
                im = -(xj * yk - yj * xk)
                if j == k:
                    re = re + s
                rows[2 * j][2 * k] = re * inv
                rows[2 * j + 1][2 * k + 1] = re * inv
                rows[2 * j][2 * k + 1] = im * inv
                rows[2 * j + 1][2 * k] = -im * inv
        return rows
    return components


def _block_components(parts):
    dims = [p.dim for p in parts]
    offsets = np.cumsum([0] + dims)
    total = int(offsets[-1])

    def components(x):
        rows = [[0.0] * total for _ in range(total)]
        for part, lo, hi in zip(parts, offsets[:-1], offsets[1:]):
            block = part.components(x[lo:hi])
            for i in range(hi - lo):
                for j in range(hi - lo):
                    rows[lo + i][lo + j] = block[i][j]
        return rows
    return components


def chart(spec: ModelSpec) -> MetricField:
    """A coordinate chart for ``spec`` (dense for spheres, global otherwise)."""
    if isinstance(spec, Euclidean):
        m = spec.m
        return MetricField(m, _euclidean_components(m), (-10.0,) * m, (10.0,) * m, f"R{m}")
    if isinstance(spec, RoundSphere):
        m = spec.m
        return MetricField(m, _sphere_components(m, spec.radius), (-2.0,) * m, (2.0,) * m,
                           f"S{m}-stereographic", scale=1.0)
    if isinstance(spec, BergerSphere):
        m = spec.dim
        return MetricField(m, _berger_components(spec.n, spec.delta), (-2.0,) * m, (2.0,) * m,
                           f"Berger{spec.n}-stereographic")
    if isinstance(spec, FubiniStudyCP):
        m = spec.dim
        return MetricField(m, _cp_components(spec.n, spec.scale), (-2.0,) * m, (2.0,) * m,
                           f"CP{spec.n}-inhomogeneous")
    if isinstance(spec, Product):
        parts = [chart(f) for f in spec.factors]
        if len(parts) == 1:
            return parts[0]
        lower = tuple(x for p in parts for x in p.lower)
        upper = tuple(x for p in parts for x in p.upper)
        return MetricField(spec.dim, _block_components(parts), lower, upper,
                           "x".join(p.chart_id for p in parts))
    raise TypeError(f"unknown model spec {spec!r}")


def spherical_angle_chart(m: int, radius: float = 1.0) -> MetricField:
    """Hyperspherical angles (theta_1, ..., theta_{m-1}, phi).

    ``g = r^2 diag(1, sin^2 t1, sin^2 t1 sin^2 t2, ...)``; the box keeps every
    polar angle inside (0, pi).
    """
    r2 = float(radius) ** 2

    def components(x):
        diag = [r2]
        acc = r2
        for i in range(m - 1):
            s = jets.sin(x[i])
            acc = acc * (s * s)
            diag.append(acc)
        return [[diag[i] if i == j else 0.0 for j in range(m)] for i in range(m)]

    eps = 1e-3
    lower = (eps,) * (m - 1) + (-math.pi,)
    upper = (math.pi - eps,) * (m - 1) + (math.pi,)
    return MetricField(m, components, lower, upper, f"S{m}-angles")


# ---------------------------------------------------------------------------
# numeric cross-check


@dataclass(frozen=True)
class NumericComparison:
    points: int
    max_spectrum_deviation: float
    max_ricci_deviation: float
    max_scalar_deviation: float
    max_symmetry_residual: float
    min_operator_eigenvalue: float

    @property
    def max_deviation(self) -> float:
        return max(self.max_spectrum_deviation, self.max_ricci_deviation, self.max_scalar_deviation)


def compare_numeric(spec: ModelSpec, points: int = 20, seed: int = 0) -> NumericComparison:
    """Sample the chart and compare with :func:`closed_form_summary`.

    For spaces without a closed-form spectrum only the symmetry residuals and
    the minimum eigenvalue are meaningful; deviations are then reported
    against the Ricci and scalar values of the summary.
    """
    summary = closed_form_summary(spec)
    metric = chart(spec)
    expected_spec = None if summary.spectrum is None else np.array(
        [float(v) for v in _expand(summary.spectrum)])
    expected_ric = np.array(sorted(float(v) for v in _expand(summary.ricci)))
    dev_spec = dev_ric = dev_scal = resid = 0.0
    min_eig = math.inf
    for p in metric.sample_points(points, seed):
        rep = curvature_report(metric, p)
        eig = np.array(rep.operator_eigenvalues)
        min_eig = min(min_eig, float(eig[0]) if eig.size else 0.0)
        if expected_spec is not None and eig.size:
            dev_spec = max(dev_spec, float(np.max(np.abs(eig - expected_spec))))
        dev_ric = max(dev_ric, float(np.max(np.abs(np.array(rep.ricci_eigenvalues) - expected_ric))))
        dev_scal = max(dev_scal, abs(rep.scalar - float(summary.scalar)))
        resid = max(resid, max(rep.symmetry_residuals.values()))
    return NumericComparison(points, dev_spec, dev_ric, dev_scal, resid, min_eig)
