"""Principal-curvature profiles and the multi-index conditions on them.

Index subsets ``alpha`` are 1-based, as in ``alpha = {1, 4}``.  For a subset
``alpha`` of size p the partial sum is ``K_alpha = sum_{i in alpha} k_i`` and
its complement sum is ``K_*alpha = H - K_alpha``.

Over all subsets of a fixed size, ``K_alpha`` ranges between the sum of the p
smallest and the sum of the p largest curvatures, and both ends are attained.
The extreme-sum routines below rely on that; :func:`enumerate_subsets` is the
brute-force oracle they are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

Number = Union[Fraction, float]

FLOAT_MINIMAL_TOL = 1e-12


def _coerce(values: Iterable) -> tuple:
    vals = list(values)
    if any(isinstance(v, float) for v in vals):
        return tuple(float(v) for v in vals)
    return tuple(Fraction(v) for v in vals)


@dataclass(frozen=True)
class PrincipalCurvatureProfile:
    """Principal curvatures k_1..k_m at one point of a hypersurface.

    Integer, Fraction and numeric-string entries stay exact; a single float
    entry switches the whole profile to floats.
    """

    k: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", _coerce(self.k))
        if len(self.k) < 2:
            raise ValueError("a profile needs at least two principal curvatures")

    @property
    def dim(self) -> int:
        return len(self.k)

    @property
    def exact(self) -> bool:
        return not isinstance(self.k[0], float)

    @property
    def H(self) -> Number:
        return sum(self.k, Fraction(0) if self.exact else 0.0)

    @property
    def normA2(self) -> Number:
        return sum((x * x for x in self.k), Fraction(0) if self.exact else 0.0)

    @property
    def is_minimal(self) -> bool:
        h = self.H
        return h == 0 if self.exact else abs(h) < FLOAT_MINIMAL_TOL

    @property
    def is_totally_geodesic(self) -> bool:
        return all(x == 0 for x in self.k)

    def nonzero_count(self) -> int:
        return sum(1 for x in self.k if x != 0)


def K_alpha(profile: PrincipalCurvatureProfile, alpha: Iterable[int]) -> Number:
    alpha = sorted(set(alpha))
    if not alpha:
        raise ValueError("alpha must be nonempty")
    m = profile.dim
    for j in alpha:
        if not 1 <= j <= m:
            raise IndexError(f"index {j} outside 1..{m}")
    return sum((profile.k[j - 1] for j in alpha), Fraction(0) if profile.exact else 0.0)


def K_complement(profile: PrincipalCurvatureProfile, alpha: Iterable[int]) -> Number:
    return profile.H - K_alpha(profile, alpha)


@dataclass(frozen=True)
class ConditionResult:
    holds: bool
    worst_alpha: tuple[int, ...]
    margin: Number
    condition: str = "minimal"


def _check_degree(profile: PrincipalCurvatureProfile, p: int) -> None:
    if not 1 <= p <= profile.dim - 1:
        raise ValueError(f"degree p={p} outside 1..{profile.dim - 1}")


def extreme_subsets(profile: PrincipalCurvatureProfile, p: int):
    """``(K_min, alpha_min, K_max, alpha_max)`` over subsets of size p."""
    order = sorted(range(profile.dim), key=lambda i: (profile.k[i], i))
    low = tuple(sorted(i + 1 for i in order[:p]))
    high = tuple(sorted(i + 1 for i in order[-p:]))
    return K_alpha(profile, low), low, K_alpha(profile, high), high


def check_minimal_condition(profile: PrincipalCurvatureProfile, p: int) -> ConditionResult:
    """``|A|^2 - K_alpha^2 >= 0`` for every ``|alpha| = p``.

    Non-minimal profiles are evaluated with the CMC form instead.
    """
    _check_degree(profile, p)
    if not profile.is_minimal:
        return check_cmc_condition(profile, p)
    kmin, amin, kmax, amax = extreme_subsets(profile, p)
    if kmax * kmax >= kmin * kmin:
        worst, alpha = kmax, amax
    else:
        worst, alpha = kmin, amin
    margin = profile.normA2 - worst * worst
    return ConditionResult(margin >= 0, alpha, margin, "minimal")


def check_cmc_condition(profile: PrincipalCurvatureProfile, p: int) -> ConditionResult:
    """``|A|^2 + K_alpha (H - K_alpha) >= 0`` for every ``|alpha| = p``.

    ``K (H - K)`` is concave in K, so its minimum over the attainable range
    sits at one of the two extreme sums.
    """
    _check_degree(profile, p)
    h = profile.H
    kmin, amin, kmax, amax = extreme_subsets(profile, p)
    q_low = kmin * (h - kmin)
    q_high = kmax * (h - kmax)
    if q_high <= q_low:
        worst, alpha = q_high, amax
    else:
        worst, alpha = q_low, amin
    margin = profile.normA2 + worst
    return ConditionResult(margin >= 0, alpha, margin, "cmc")


def check_condition(profile: PrincipalCurvatureProfile, p: int) -> ConditionResult:
    if profile.is_minimal:
        return check_minimal_condition(profile, p)
    return check_cmc_condition(profile, p)


@dataclass(frozen=True)
class SubsetExtremes:
    max_abs_K: Number
    min_product: Number
    max_abs_alpha: tuple[int, ...]
    min_product_alpha: tuple[int, ...]


def enumerate_subsets(profile: PrincipalCurvatureProfile, p: int) -> SubsetExtremes:
    """Brute force over all C(m, p) subsets.

    Returns ``max |K_alpha|`` and ``min K_alpha K_*alpha`` together with the
    first subset (in lexicographic order) attaining each.
    """
    _check_degree(profile, p)
    h = profile.H
    best_abs = best_prod = None
    a_abs = a_prod = ()
    for combo in combinations(range(1, profile.dim + 1), p):
        kk = K_alpha(profile, combo)
        if best_abs is None or abs(kk) > best_abs:
            best_abs, a_abs = abs(kk), combo
        prod = kk * (h - kk)
        if best_prod is None or prod < best_prod:
            best_prod, a_prod = prod, combo
    return SubsetExtremes(best_abs, best_prod, a_abs, a_prod)


def min_mixed_product(profile: PrincipalCurvatureProfile, p: int) -> Number:
    """``min_{|alpha|=p} K_alpha K_*alpha`` via the extreme sums."""
    _check_degree(profile, p)
    h = profile.H
    kmin, _, kmax, _ = extreme_subsets(profile, p)
    return min(kmin * (h - kmin), kmax * (h - kmax))


# ---------------------------------------------------------------------------
# sufficient conditions


@dataclass(frozen=True)
class ZeroppResult:
    kind: str  # "FourNonzero" | "TwoOppositeBlocks" | "None"
    blocks: int | None
    applies: bool
    margin_bound: Number | None

    def __str__(self) -> str:
        if self.kind == "TwoOppositeBlocks":
            return f"TwoOppositeBlocks({self.blocks})"
        return self.kind


def zeropp_sufficient(profile: PrincipalCurvatureProfile, p: int) -> ZeroppResult:
    """Shortcut certificates for ``|A|^2 - K_alpha^2 >= 0``.

    * at most four nonzero curvatures: holds for every p;
    * exactly two nonzero values ``+-k`` each with multiplicity l: holds for
      ``p <= sqrt(2 l)``, with ``|A|^2 - K_alpha^2 >= (2l - p^2) k^2``.
    """
    if not profile.is_minimal:
        raise ValueError("shortcut certificates apply to minimal profiles only")
    _check_degree(profile, p)
    nonzero = [x for x in profile.k if x != 0]
    if len(nonzero) <= 4:
        return ZeroppResult("FourNonzero", None, True, None)
    values = set(nonzero)
    if len(values) == 2:
        a, b = sorted(values)
        count_a = sum(1 for x in nonzero if x == a)
        count_b = len(nonzero) - count_a
        if a == -b and count_a == count_b:
            l = count_a
            applies = p * p <= 2 * l
            margin = (2 * l - p * p) * b * b
            return ZeroppResult("TwoOppositeBlocks", l, applies, margin if applies else None)
    return ZeroppResult("None", None, False, None)


# ---------------------------------------------------------------------------
# presets


def _parse_params(text: str) -> dict[str, str]:
    params = {}
    if not text:
        return params
    for item in text.split(","):
        if "=" not in item:
            raise ValueError(f"preset parameter {item!r} must look like key=value")
        key, val = item.split("=", 1)
        params[key.strip()] = val.strip()
    return params


def bdgg_profile(n: int, k=1) -> PrincipalCurvatureProfile:
    """Two blocks ``+k`` and ``-k`` of multiplicity n (the cone-type graph in R^{2n+1})."""
    k = Fraction(k) if not isinstance(k, float) else k
    return PrincipalCurvatureProfile((k,) * n + (-k,) * n)


def opposite_pair_profile(m: int, t=1) -> PrincipalCurvatureProfile:
    t = Fraction(t) if not isinstance(t, float) else t
    return PrincipalCurvatureProfile((-t,) + (Fraction(0),) * (m - 2) + (t,))


def totally_geodesic_profile(m: int) -> PrincipalCurvatureProfile:
    return PrincipalCurvatureProfile((Fraction(0),) * m)


def parse_profile(text: str) -> PrincipalCurvatureProfile:
    """Preset name (``bdgg:n=4``) or a comma list of curvatures (``1,1,-2/3``)."""
    text = text.strip()
    if ":" in text or text in ("bdgg", "opposite-pair", "totally-geodesic"):
        name, _, rest = text.partition(":")
        params = _parse_params(rest)
        try:
            if name == "bdgg":
                return bdgg_profile(int(params.get("n", 4)), _number(params.get("k", "1")))
            if name == "opposite-pair":
                return opposite_pair_profile(int(params["m"]), _number(params.get("t", "1")))
            if name == "totally-geodesic":
                return totally_geodesic_profile(int(params["m"]))
        except KeyError as exc:
            raise ValueError(f"preset {name!r} missing parameter {exc.args[0]!r}") from None
        raise ValueError(f"unknown profile preset {name!r}")
    return PrincipalCurvatureProfile(tuple(_number(tok) for tok in text.split(",")))


def _number(tok: str):
    tok = tok.strip()
    if not tok:
        raise ValueError("empty number")
    try:
        return Fraction(tok)
    except ValueError:
        val = float(tok)
        if not math.isfinite(val):
            raise ValueError(f"non-finite value {tok!r}") from None
        return val


def format_number(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return f"{float(x):.12g}"


def profile_text(profile: PrincipalCurvatureProfile) -> str:
    return ",".join(format_number(x) for x in profile.k)


def as_profile(k: Sequence | PrincipalCurvatureProfile) -> PrincipalCurvatureProfile:
    return k if isinstance(k, PrincipalCurvatureProfile) else PrincipalCurvatureProfile(tuple(k))
