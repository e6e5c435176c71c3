"""Exact pinching constants and curvature thresholds.

Everything here is computed with :class:`fractions.Fraction`.  The two
pinching ratios are characterised as the points where the corresponding
curvature estimate hits zero, and each constructor re-checks that boundary
equality before returning.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def mu(m: int) -> int:
    return (m + 1) // 2


def ell(m: int) -> int:
    return m // 2


def pinched_operator_lb(a, b, m: int) -> Fraction:
    """Lower bound ``(a+b)/2 - (b-a)(4 mu - 1)/6`` on the curvature term for a in [a, b] pinching."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0:
        raise ValueError("pinching lower bound a must be positive")
    if b < a:
        raise ValueError("pinching requires a <= b")
    return (a + b) / 2 - (b - a) * (4 * mu(m) - 1) / 6


def berger_component_bound(a, b) -> Fraction:
    """Bound ``2(b - a)/3`` on off-diagonal curvature components for [a, b] pinching."""
    a, b = Fraction(a), Fraction(b)
    if b < a:
        raise ValueError("pinching requires a <= b")
    return 2 * (b - a) / 3


def two_form_residual(a, b, m: int) -> Fraction:
    """``(3m-4)a/2 - 2(l-1)(b-a)/3`` with ``l = floor(m/2)``: the 2-form estimate."""
    a, b = Fraction(a), Fraction(b)
    return (3 * m - 4) * a / 2 - 2 * (ell(m) - 1) * (b - a) / 3


def _check_pinching_range(m: int, p: int) -> None:
    if m < 6:
        raise ValueError(f"pinching constants need m >= 6, got m={m}")
    if not (2 <= p and 2 * p <= m):
        raise ValueError(f"degree p={p} outside 2..{m // 2}")


def epsilon_constant(m: int, p: int) -> Fraction:
    """Admissible pinching ratio for p-forms on an m-dimensional hypersurface."""
    _check_pinching_range(m, p)
    return epsilon_formula(m, p)


def epsilon_formula(m: int, p: int) -> Fraction:
    """The epsilon closed form without the m >= 6 guard (defined for m >= 4)."""
    if m < 4 or not (2 <= p and 2 * p <= m):
        raise ValueError(f"epsilon formula undefined for m={m}, p={p}")
    u = mu(m)
    q = p * (m - p)
    eps = Fraction(q * (2 * u + 1) + 3 * m, 2 * q * (u - 1))
    if q * pinched_operator_lb(1, eps, m) + m != 0:
        raise ArithmeticError(f"boundary identity failed for epsilon({m},{p})")
    return eps


def epsilon_boundary_residual(m: int, p: int) -> Fraction:
    return p * (m - p) * pinched_operator_lb(1, epsilon_constant(m, p), m) + m


def c_constant(m: int) -> Fraction:
    """Admissible pinching ratio for 2-forms."""
    if m < 6:
        raise ValueError(f"c_m needs m >= 6, got m={m}")
    return c_formula(m)


def c_formula(m: int) -> Fraction:
    """The c_m closed form without the m >= 6 guard (defined for even m >= 4)."""
    if m < 4 or m == 5:
        raise ValueError(f"c formula undefined for m={m}")
    if m % 2 == 0:
        c = Fraction(11 * m - 16, 2 * (m - 2))
    else:
        c = Fraction(11 * m - 18, 2 * (m - 3))
    if c_boundary_residual_value(m, c) != 0:
        raise ArithmeticError(f"boundary identity failed for c({m})")
    return c


def c_boundary_residual_value(m: int, c) -> Fraction:
    return Fraction(3 * m - 4, 2) - Fraction(2 * (ell(m) - 1), 3) * (Fraction(c) - 1)


def c_boundary_residual(m: int) -> Fraction:
    return c_boundary_residual_value(m, c_constant(m))


def beta_bound(m: int, p: int, gamma, ricci_lb) -> Fraction:
    """Threshold on |A|^2 below which p-forms vanish without the subset condition."""
    if not (2 <= p <= m - 2):
        raise ValueError(f"degree p={p} outside 2..{m - 2}")
    gamma, ricci_lb = Fraction(gamma), Fraction(ricci_lb)
    return (gamma * p * (m - p) + ricci_lb) / (min(p, m - p) - 1)


def sphere_beta(p: int, m: int) -> Fraction:
    """``beta(p, m)`` for the round sphere ambient (gamma = 1, Ric = m)."""
    return beta_bound(m, p, 1, m)


def mari_set(m_values) -> set[int]:
    """Dimensions m where ``beta(floor(m/2), m) > m``."""
    return {m for m in m_values if sphere_beta(m // 2, m) > m}


def spinor_rank_bound(n: int) -> int:
    """Complex rank of the spinor bundle of an n-manifold."""
    if n < 1:
        raise ValueError("dimension must be positive")
    return 2 ** (n // 2) if n % 2 == 0 else 2 ** ((n - 1) // 2)


@dataclass(frozen=True)
class PinchingConstants:
    m: int
    p: int
    epsilon: Fraction
    c: Fraction
    mu: int
    ell: int


def pinching_constants(m: int, p: int) -> PinchingConstants:
    return PinchingConstants(m, p, epsilon_constant(m, p), c_constant(m), mu(m), ell(m))
