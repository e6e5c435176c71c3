"""Theorem gates: hypotheses with margins, conclusions, and their JSON form.

Every inequality is recorded as a :class:`Hypothesis` whose margin is the
slack ``lhs - rhs`` (non-negative on a pass; strictly positive for strict
inequalities).  A verdict concludes anything other than ``NotApplicable``
only when all of its hypotheses pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from . import constants as C
from .model_spaces import CurvatureSummary
from .profiles import (
    PrincipalCurvatureProfile,
    check_cmc_condition,
    check_minimal_condition,
    format_number,
    min_mixed_product,
)

Number = Union[Fraction, float]

THEOREM_IDS = (
    "Nullity", "SpinVanishing", "HodgeP1", "HodgeP2", "HodgeP3", "Abound",
    "CMC-P1", "CMC-P2", "CMC-P3", "CMC-Spin",
    "BergerSphere1", "BergerSphere2", "BergerSphere3",
    "Degree0", "Degree1",
)
CONCLUSION_KINDS = ("ConstantLength", "Vanishing", "RankBound", "NullityIn01", "NotApplicable")


@dataclass(frozen=True)
class Hypothesis:
    name: str
    passed: bool
    margin: Number | None = None
    strict: bool = False
    note: str = ""


@dataclass(frozen=True)
class Conclusion:
    kind: str
    degrees: tuple[int, ...] = ()
    rank_bound: int | None = None

    def __post_init__(self):
        if self.kind not in CONCLUSION_KINDS:
            raise ValueError(f"unknown conclusion kind {self.kind!r}")
        object.__setattr__(self, "degrees", tuple(self.degrees))

    def __str__(self) -> str:
        if self.kind == "Vanishing" and self.degrees:
            return f"Vanishing({', '.join(map(str, self.degrees))})"
        if self.kind == "RankBound" or (self.rank_bound is not None and self.kind == "ConstantLength"):
            return f"{self.kind}(rank<={self.rank_bound})"
        return self.kind


NOT_APPLICABLE = Conclusion("NotApplicable")


@dataclass(frozen=True)
class TheoremVerdict:
    theorem_id: str
    hypotheses: tuple[Hypothesis, ...]
    conclusion: Conclusion
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.theorem_id not in THEOREM_IDS:
            raise ValueError(f"unknown theorem id {self.theorem_id!r}")
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))
        object.__setattr__(self, "notes", tuple(self.notes))
        if self.conclusion.kind != "NotApplicable" and not self.all_pass:
            raise ValueError(f"{self.theorem_id}: conclusion {self.conclusion} with failing hypotheses")

    @property
    def all_pass(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    @property
    def applies(self) -> bool:
        return self.conclusion.kind != "NotApplicable"

    def hypothesis(self, name: str) -> Hypothesis:
        for h in self.hypotheses:
            if h.name == name:
                return h
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "hypotheses": [_hyp_to_dict(h) for h in self.hypotheses],
            "conclusion": {
                "kind": self.conclusion.kind,
                "degrees": list(self.conclusion.degrees),
                "rank_bound": self.conclusion.rank_bound,
            },
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict) -> TheoremVerdict:
        concl = data["conclusion"]
        return cls(
            theorem_id=data["theorem_id"],
            hypotheses=tuple(_hyp_from_dict(h) for h in data["hypotheses"]),
            conclusion=Conclusion(concl["kind"], tuple(concl.get("degrees", ())), concl.get("rank_bound")),
            notes=tuple(data.get("notes", ())),
        )


def _hyp_to_dict(h: Hypothesis) -> dict:
    out = {"name": h.name, "pass": h.passed, "strict": h.strict}
    if isinstance(h.margin, Fraction):
        out["margin_num"] = str(h.margin.numerator)
        out["margin_den"] = str(h.margin.denominator)
    else:
        out["margin_float"] = None if h.margin is None else float(h.margin)
    if h.note:
        out["note"] = h.note
    return out


def _hyp_from_dict(d: dict) -> Hypothesis:
    if "margin_num" in d:
        margin = Fraction(int(d["margin_num"]), int(d["margin_den"]))
    else:
        margin = d.get("margin_float")
    return Hypothesis(d["name"], bool(d["pass"]), margin, bool(d.get("strict", False)), d.get("note", ""))


# ---------------------------------------------------------------------------
# inputs


def _num(x):
    if x is None or isinstance(x, float):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class AmbientSummary:
    """Curvature bounds of the ambient (m+1)-manifold.

    Fields are independent data; nothing is inferred between ``gamma`` and
    ``sec_bounds`` at construction time.
    """

    dim: int
    gamma: Number | None = None
    sec_bounds: tuple[Number, Number] | None = None
    ricci_normal_lb: Number | None = None
    ricci_lb: Number | None = None
    scalar_lb: Number | None = None
    label: str = ""

    def __post_init__(self):
        for name in ("gamma", "ricci_normal_lb", "ricci_lb", "scalar_lb"):
            object.__setattr__(self, name, _num(getattr(self, name)))
        if self.sec_bounds is not None:
            a, b = (_num(x) for x in self.sec_bounds)
            if a > b:
                raise ValueError("sectional bounds need a <= b")
            object.__setattr__(self, "sec_bounds", (a, b))
        if self.dim < 3:
            raise ValueError("ambient dimension must be at least 3")

    @property
    def hypersurface_dim(self) -> int:
        return self.dim - 1

    @classmethod
    def from_summary(cls, summary: CurvatureSummary, label: str = "") -> AmbientSummary:
        sec = None
        if summary.sec_min is not None and summary.sec_max is not None:
            sec = (summary.sec_min, summary.sec_max)
        ric = summary.ricci_min()
        return cls(
            dim=summary.dim,
            gamma=summary.gamma,
            sec_bounds=sec,
            ricci_normal_lb=ric,
            ricci_lb=ric,
            scalar_lb=summary.scalar,
            label=label,
        )

    def effective_ric_normal_lb(self) -> Number | None:
        """Best available lower bound on Ric(N, N).

        Uses the supplied bounds plus ``m * gamma`` and ``m * a``: a curvature
        operator bound gamma (or sec >= a) bounds each of the m sectional
        curvatures sec(N, e_i) from below.
        """
        m = self.hypersurface_dim
        candidates = [x for x in (self.ricci_normal_lb, self.ricci_lb) if x is not None]
        if self.gamma is not None:
            candidates.append(m * self.gamma)
        if self.sec_bounds is not None:
            candidates.append(m * self.sec_bounds[0])
        return max(candidates) if candidates else None

    def effective_ricci_lb(self) -> Number | None:
        m = self.hypersurface_dim
        candidates = [x for x in (self.ricci_lb,) if x is not None]
        if self.gamma is not None:
            candidates.append(m * self.gamma)
        if self.sec_bounds is not None:
            candidates.append(m * self.sec_bounds[0])
        return max(candidates) if candidates else None

    def to_dict(self) -> dict:
        enc = encode_number
        return {
            "dim": self.dim,
            "gamma": enc(self.gamma),
            "sec_bounds": None if self.sec_bounds is None else [enc(x) for x in self.sec_bounds],
            "ricci_normal_lb": enc(self.ricci_normal_lb),
            "ricci_lb": enc(self.ricci_lb),
            "scalar_lb": enc(self.scalar_lb),
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, d: dict) -> AmbientSummary:
        dec = decode_number
        sec = d.get("sec_bounds")
        return cls(
            dim=int(d["dim"]),
            gamma=dec(d.get("gamma")),
            sec_bounds=None if sec is None else (dec(sec[0]), dec(sec[1])),
            ricci_normal_lb=dec(d.get("ricci_normal_lb")),
            ricci_lb=dec(d.get("ricci_lb")),
            scalar_lb=dec(d.get("scalar_lb")),
            label=d.get("label", ""),
        )


def encode_number(x):
    """JSON form of a number: exact values as ``"num/den"`` strings, floats unchanged."""
    if x is None or isinstance(x, float):
        return x
    return format_number(Fraction(x))


def decode_number(x):
    if x is None or isinstance(x, float):
        return x
    return Fraction(x)


@dataclass(frozen=True)
class AssertedFlags:
    """Caller-asserted facts about the immersion that no computation here checks."""

    stable: bool = True
    complete: bool = True
    not_totally_geodesic: bool = False
    ric_normal_somewhere_positive: bool = False
    infinite_volume: bool = False
    provenance: tuple[tuple[str, str], ...] = field(default=())

    def notes(self) -> list[str]:
        return [f"asserted {name}: {text}" for name, text in self.provenance]


DEFAULT_FLAGS = AssertedFlags()


# ---------------------------------------------------------------------------
# hypothesis helpers


def _ge(name: str, lhs, rhs, *, strict: bool = False, note: str = "") -> Hypothesis:
    if lhs is None or rhs is None:
        return Hypothesis(name, False, None, strict, note or "required data not supplied")
    margin = lhs - rhs
    passed = margin > 0 if strict else margin >= 0
    return Hypothesis(name, passed, margin, strict, note)


def _asserted(flags: AssertedFlags) -> list[Hypothesis]:
    return [
        Hypothesis("stable (asserted)", flags.stable),
        Hypothesis("complete (asserted)", flags.complete),
    ]


def _degree_pair(m: int, p: int) -> tuple[int, int]:
    q = min(p, m - p)
    return (q, m - q)


def _check_dims(ambient: AmbientSummary, profile: PrincipalCurvatureProfile) -> int:
    m = profile.dim
    if ambient.dim != m + 1:
        raise ValueError(
            f"profile has {m} principal curvatures but the ambient has dimension {ambient.dim}; "
            f"expected {m + 1}"
        )
    return m


def _subset_condition(profile: PrincipalCurvatureProfile, p: int) -> Hypothesis:
    if profile.is_minimal:
        res = check_minimal_condition(profile, p)
        name = f"|A|^2 - K_alpha^2 >= 0 for |alpha|={p}"
    else:
        res = check_cmc_condition(profile, p)
        name = f"|A|^2 + K_alpha(H - K_alpha) >= 0 for |alpha|={p}"
    return Hypothesis(name, res.holds, res.margin, False, f"worst alpha {list(res.worst_alpha)}")


def _vanishing_or_constant(flags: AssertedFlags, ric_lb, degrees,
                           profile: PrincipalCurvatureProfile) -> tuple[Conclusion, list[str]]:
    notes = []
    positive_ric = ric_lb is not None and ric_lb > 0
    if positive_ric:
        notes.append("Ric(N,N) > 0 follows from the ambient lower bound")
    # a point with A != 0 already shows the hypersurface is not totally geodesic
    witnessed = not profile.is_totally_geodesic
    if witnessed and not flags.not_totally_geodesic:
        notes.append("not totally geodesic: the supplied profile has A != 0")
    if flags.not_totally_geodesic or flags.ric_normal_somewhere_positive or positive_ric or witnessed:
        return Conclusion("Vanishing", degrees), notes
    notes.append("no non-totally-geodesic or Ric(N,N)>0 assertion: constant length only")
    return Conclusion("ConstantLength", degrees), notes


# ---------------------------------------------------------------------------
# scalar identities


def gauss_codazzi_scalar(s_ambient, profile: PrincipalCurvatureProfile, ric_normal):
    """Scalar curvature of the hypersurface from the traced Gauss equation.

    ``s_N = s_g + H^2 - |A|^2 - 2 Ric(N, N)``.  Inputs must describe the same
    ambient point; consistency is not checked.
    """
    return s_ambient + profile.H ** 2 - profile.normA2 - 2 * ric_normal


def spinor_term(s_ambient_lb, profile: PrincipalCurvatureProfile):
    """``(s_g + H^2 + |A|^2) / 4``, the potential in the spinor estimate."""
    return (s_ambient_lb + profile.H ** 2 + profile.normA2) / 4


def weitzenbock_lower_bound(m: int, p: int, gamma, ric_normal_lb, profile: PrincipalCurvatureProfile):
    if profile.dim != m:
        raise ValueError(f"profile dimension {profile.dim} does not match m={m}")
    return p * (m - p) * gamma + ric_normal_lb + profile.normA2 + min_mixed_product(profile, p)


# ---------------------------------------------------------------------------
# verdicts


def hodge_verdicts(ambient: AmbientSummary, profile: PrincipalCurvatureProfile, p: int,
                   flags: AssertedFlags = DEFAULT_FLAGS) -> list[TheoremVerdict]:
    """The three L^2-harmonic form gates (curvature operator, pinching, 2-form pinching).

    Degrees p and m - p give identical results.  Non-minimal profiles use the
    CMC versions of the gates.
    """
    m = _check_dims(ambient, profile)
    if not 2 <= p <= m - 2:
        raise ValueError(f"degree p={p} outside 2..{m - 2}")
    q, qc = _degree_pair(m, p)
    degrees = (q, qc)
    cmc = not profile.is_minimal
    prefix = "CMC-P" if cmc else "HodgeP"
    base_notes = flags.notes()
    if cmc:
        base_notes.append(f"mean curvature H = {format_number(profile.H)} != 0: CMC form of the condition")
    condition = _subset_condition(profile, q)
    ric_lb = ambient.effective_ric_normal_lb()
    out = []

    # point 1: curvature operator bounded below
    hyps = _asserted(flags) + [
        _ge("m >= 4", m, 4),
        Hypothesis("curvature operator lower bound gamma supplied", ambient.gamma is not None),
    ]
    if ambient.gamma is not None and ric_lb is not None:
        hyps.append(_ge("p(m-p) gamma + Ric(N,N) >= 0", q * (m - q) * ambient.gamma + ric_lb, 0))
    else:
        hyps.append(_ge("p(m-p) gamma + Ric(N,N) >= 0", None, None))
    hyps.append(condition)
    notes = list(base_notes)
    if ambient.gamma is not None and ric_lb is not None:
        wb = weitzenbock_lower_bound(m, q, ambient.gamma, ric_lb, profile)
        notes.append(f"Weitzenbock potential lower bound {format_number(wb)}")
    if all(h.passed for h in hyps):
        concl, extra = _vanishing_or_constant(flags, ric_lb, degrees, profile)
        notes += extra
    else:
        concl = NOT_APPLICABLE
    out.append(TheoremVerdict(f"{prefix}1", hyps, concl, notes))

    # point 2: [a, b] pinching with epsilon_{m,p}
    hyps = _asserted(flags) + [_ge("m >= 6", m, 6)]
    notes = list(base_notes)
    a_b = ambient.sec_bounds
    hyps.append(Hypothesis("sectional bounds [a, b] supplied", a_b is not None))
    if a_b is not None:
        a, b = a_b
        hyps.append(_ge("a > 0", a, 0, strict=True))
        if m >= 6:
            eps = C.epsilon_constant(m, q)
            notes.append(f"epsilon_{{{m},{q}}} = {format_number(eps)}")
            hyps.append(_ge("b <= epsilon_{m,p} a", eps * a, b))
        else:
            hyps.append(_ge("b <= epsilon_{m,p} a", None, None, note="epsilon undefined for m < 6"))
    hyps.append(condition)
    concl = Conclusion("Vanishing", degrees) if all(h.passed for h in hyps) else NOT_APPLICABLE
    out.append(TheoremVerdict(f"{prefix}2", hyps, concl, notes))

    # point 3: 2-forms with c_m pinching
    hyps = _asserted(flags) + [_ge("m >= 6", m, 6), Hypothesis("p = 2 (or m - 2)", q == 2)]
    notes = list(base_notes)
    hyps.append(Hypothesis("sectional bounds [a, b] supplied", a_b is not None))
    if a_b is not None:
        a, b = a_b
        hyps.append(_ge("a > 0", a, 0, strict=True))
        if m >= 6:
            c = C.c_constant(m)
            notes.append(f"c_{m} = {format_number(c)}")
            hyps.append(_ge("b <= c_m a", c * a, b))
        else:
            hyps.append(_ge("b <= c_m a", None, None, note="c_m undefined for m < 6"))
    hyps.append(condition if q == 2 else _subset_condition(profile, 2))
    concl = Conclusion("Vanishing", (2, m - 2)) if all(h.passed for h in hyps) else NOT_APPLICABLE
    out.append(TheoremVerdict(f"{prefix}3", hyps, concl, notes))
    return out


def abound_verdict(ambient: AmbientSummary, profile: PrincipalCurvatureProfile, p: int,
                   flags: AssertedFlags = DEFAULT_FLAGS) -> TheoremVerdict:
    """Vanishing from a bound on |A|^2 alone, given R >= gamma >= 0 and Ric >= b > 0."""
    m = _check_dims(ambient, profile)
    if not 2 <= p <= m - 2:
        raise ValueError(f"degree p={p} outside 2..{m - 2}")
    gamma = ambient.gamma
    b = ambient.effective_ricci_lb()
    hyps = _asserted(flags) + [
        _ge("m >= 4", m, 4),
        Hypothesis("minimal (H = 0)", profile.is_minimal, 0 * profile.H if profile.is_minimal else -abs(profile.H)),
        _ge("gamma >= 0", gamma, 0),
        _ge("Ric >= b > 0", b, 0, strict=True),
    ]
    notes = flags.notes()
    if gamma is not None and b is not None:
        threshold = C.beta_bound(m, p, gamma, b) if not isinstance(gamma, float) and not isinstance(b, float) \
            else (gamma * p * (m - p) + b) / (min(p, m - p) - 1)
        notes.append(f"|A|^2 threshold {format_number(threshold)}")
        hyps.append(_ge("|A|^2 <= (gamma p(m-p) + b)/(min(p,m-p) - 1)", threshold, profile.normA2))
    else:
        hyps.append(_ge("|A|^2 <= (gamma p(m-p) + b)/(min(p,m-p) - 1)", None, None))
    concl = Conclusion("Vanishing", _degree_pair(m, p)) if all(h.passed for h in hyps) else NOT_APPLICABLE
    return TheoremVerdict("Abound", hyps, concl, notes)


def spinor_verdict(s_ambient_lb, profile: PrincipalCurvatureProfile,
                   flags: AssertedFlags = DEFAULT_FLAGS) -> TheoremVerdict:
    """Constant length of L^2 harmonic spinors, with rank bound; vanishing when forced."""
    n = profile.dim
    cmc = not profile.is_minimal
    hyps = _asserted(flags)
    if cmc:
        hyps.append(_ge("s_g + H^2 >= 0", None if s_ambient_lb is None else s_ambient_lb + profile.H ** 2, 0))
    else:
        hyps.append(_ge("s_g >= 0", s_ambient_lb, 0))
    notes = flags.notes()
    term = None if s_ambient_lb is None else spinor_term(s_ambient_lb, profile)
    hyps.append(_ge("(s_g + H^2 + |A|^2)/4 >= 0", term, 0))
    theorem = "CMC-Spin" if cmc else "SpinVanishing"
    if not all(h.passed for h in hyps):
        return TheoremVerdict(theorem, hyps, NOT_APPLICABLE, notes)
    rank = C.spinor_rank_bound(n)
    if term > 0:
        notes.append("potential positive at this point: infinite volume, no L2 harmonic spinors")
        return TheoremVerdict(theorem, hyps, Conclusion("Vanishing", (), None), notes)
    if flags.infinite_volume:
        notes.append("infinite volume asserted: no L2 harmonic spinors")
        return TheoremVerdict(theorem, hyps, Conclusion("Vanishing", (), None), notes)
    notes.append(f"L2 harmonic spinors have constant length; dimension <= {rank}")
    return TheoremVerdict(theorem, hyps, Conclusion("ConstantLength", (), rank), notes)


NULLITY_SIGNS = ("NonnegEverywhere", "NonposEverywhere", "Mixed")


def classify_nullity_sign(ric_normal_lb=None, ric_normal_ub=None, normA2_ub=None) -> str:
    """Sign class of ``|A|^2 + Ric(N, N)`` from available bounds."""
    if ric_normal_lb is not None and ric_normal_lb >= 0:
        return "NonnegEverywhere"
    if ric_normal_ub is not None and normA2_ub is not None and normA2_ub + ric_normal_ub <= 0:
        return "NonposEverywhere"
    return "Mixed"


def nullity_verdict(sign_info: str, flags: AssertedFlags = DEFAULT_FLAGS) -> TheoremVerdict:
    if sign_info not in NULLITY_SIGNS:
        raise ValueError(f"sign must be one of {NULLITY_SIGNS}")
    hyps = _asserted(flags)[:1] + [
        Hypothesis("|A|^2 + Ric(N,N) has one sign", sign_info != "Mixed", note=sign_info)
    ]
    concl = Conclusion("NullityIn01") if all(h.passed for h in hyps) else NOT_APPLICABLE
    return TheoremVerdict("Nullity", hyps, concl, flags.notes())


def degree_special_verdict(m: int, p: int, flags: AssertedFlags = DEFAULT_FLAGS) -> TheoremVerdict:
    """Degrees 0, 1 and their duals, which the general gates do not cover."""
    q = min(p, m - p)
    notes = flags.notes()
    if q == 0:
        hyps = [Hypothesis("infinite volume (asserted)", flags.infinite_volume)]
        notes.append("L2 harmonic functions vanish iff the volume is infinite")
        concl = Conclusion("Vanishing", (0, m)) if flags.infinite_volume else NOT_APPLICABLE
        return TheoremVerdict("Degree0", hyps, concl, notes)
    if q == 1:
        notes.append("|A|^2 - K_alpha^2 >= 0 holds automatically for p = 1; "
                     "1-form vanishing needs a bi-Ricci hypothesis not evaluated here")
        return TheoremVerdict("Degree1", [Hypothesis("bi-Ricci hypothesis evaluated", False)],
                              NOT_APPLICABLE, notes)
    raise ValueError(f"degree {p} is handled by the general gates")


def all_hypotheses_text(verdicts: Iterable[TheoremVerdict]) -> list[str]:
    lines = []
    for v in verdicts:
        lines.append(f"{v.theorem_id}: {v.conclusion}")
        for h in v.hypotheses:
            mark = "pass" if h.passed else "FAIL"
            margin = "-" if h.margin is None else format_number(h.margin)
            lines.append(f"  [{mark}] {h.name} (margin {margin})")
    return lines
