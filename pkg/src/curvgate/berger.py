"""Exact delta-ranges for Berger-sphere ambients and the threshold ordering table.

The ranges come from a generic solver over the piecewise-affine curvature
forms of :func:`curvgate.model_spaces.berger_forms`.  Closed forms are kept
separately in :func:`reference_thresholds` and compared against the solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import constants as C
from .model_spaces import Affine, BergerSphere, berger_forms
from .profiles import PrincipalCurvatureProfile, check_minimal_condition, format_number
from .verdicts import (
    DEFAULT_FLAGS,
    NOT_APPLICABLE,
    AssertedFlags,
    Conclusion,
    Hypothesis,
    TheoremVerdict,
    _asserted,
    _ge,
)

Interval = tuple[Fraction, "Fraction | None"]  # closed [lo, hi]; hi None means unbounded


# ---------------------------------------------------------------------------
# solver


def nonneg_region(forms: Sequence[Affine]) -> Interval | None:
    """``{delta > 0 : f(delta) >= 0 for all f}`` as ``(lo, hi)``, or None if empty.

    ``lo`` is 0 when no form constrains delta from below (the open end at 0
    is implied by delta > 0).
    """
    lo, hi = Fraction(0), None
    for f in forms:
        if f.slope == 0:
            if f.const < 0:
                return None
            continue
        r = f.root()
        if f.slope > 0:
            lo = max(lo, r)
        else:
            hi = r if hi is None else min(hi, r)
    if hi is not None and hi < lo:
        return None
    return lo, hi


def pinching_region(forms: Sequence[Affine], ratio) -> list[Interval]:
    """Closed delta-intervals where ``0 < min f`` and ``max f <= ratio * min f``.

    Between consecutive crossings of the forms the argmin and argmax are
    fixed, so the pinching inequality is affine there and solved exactly.
    """
    ratio = Fraction(ratio)
    cuts = {Fraction(0)}
    for f in forms:
        r = f.root()
        if r is not None and r > 0:
            cuts.add(r)
    for f, g in combinations(forms, 2):
        r = (f - g).root()
        if r is not None and r > 0:
            cuts.add(r)
    cuts = sorted(cuts)
    pieces: list[tuple[Fraction, Fraction | None]] = []
    for i, lo in enumerate(cuts):
        hi = cuts[i + 1] if i + 1 < len(cuts) else None
        mid = (lo + hi) / 2 if hi is not None else lo + 1
        vals = [f(mid) for f in forms]
        fmin = forms[vals.index(min(vals))]
        fmax = forms[vals.index(max(vals))]
        if fmin(mid) <= 0:
            continue
        gap = fmax - fmin.scaled(ratio)
        a, b = lo, hi
        if gap.slope == 0:
            if gap.const > 0:
                continue
        else:
            r = gap.root()
            if gap.slope > 0:
                b = r if b is None else min(b, r)
            else:
                a = max(a, r)
        if b is not None and b < a:
            continue
        pieces.append((a, b))
    return _merge(pieces)


def _merge(pieces: list[Interval]) -> list[Interval]:
    out: list[list] = []
    for a, b in sorted(pieces, key=lambda t: t[0]):
        if out and out[-1][1] is not None and a <= out[-1][1]:
            if b is None or b > out[-1][1]:
                out[-1][1] = b
        elif out and out[-1][1] is None:
            continue
        else:
            out.append([a, b])
    return [(a, b) for a, b in out]


def _single(intervals: list[Interval], what: str) -> Interval:
    if len(intervals) != 1:
        raise ArithmeticError(f"{what}: expected one interval, got {intervals}")
    return intervals[0]


# ---------------------------------------------------------------------------
# thresholds


def reference_thresholds(n: int) -> dict[str, Fraction]:
    """Closed-form delta thresholds for the Berger sphere of dimension 2n+1."""
    return {
        "spinor_upper": Fraction(2 * n + 2),
        "nonneg_operator_upper": Fraction(2 * n + 2, 2 * n + 1),
        "epsilon_upper": Fraction(4 * (2 * n * n + n + 6), 8 * n * n + n + 18),
        "two_form_lower": Fraction(8 * (n - 1), 17 * n - 14),
        "two_form_upper": Fraction(4 * (11 * n - 8), 35 * n - 26),
    }


def printed_two_form_lower(n: int) -> Fraction:
    """The lower bound with the hypersurface dimension 2n substituted for n."""
    return Fraction(8 * (n - 1), 17 * (2 * n) - 14)


@dataclass(frozen=True)
class BergerThresholds:
    n: int
    spinor_range: Interval
    forms_range: Interval
    forms_range_by_degree: dict[int, Interval]
    two_form_range: Interval
    components: dict[str, Fraction]
    reference: dict[str, Fraction]
    notes: tuple[str, ...] = field(default=())

    def matches_reference(self) -> dict[str, bool]:
        return {k: self.components[k] == v for k, v in self.reference.items()}


def _forms_upper(n: int, p: int, forms) -> tuple[Fraction, Fraction, Interval]:
    nonneg = nonneg_region([f for f, _ in forms.spectrum])
    eps = C.epsilon_formula(2 * n, p)
    pinch = _single(pinching_region([f for _, f in forms.sectional], eps), "epsilon pinching")
    if nonneg is None or nonneg[1] is None or pinch[1] is None:
        raise ArithmeticError("unbounded or empty region")
    if pinch[0] > nonneg[1]:
        raise ArithmeticError("pinching and nonnegative-operator ranges do not overlap")
    return nonneg[1], pinch[1], (Fraction(0), max(nonneg[1], pinch[1]))


def berger_thresholds(n: int) -> BergerThresholds:
    """Derived delta-ranges for the three Berger gates (n >= 2).

    For n = 2 the pinching constants are evaluated from their closed forms at
    m = 4, below the range where the general gates use them.
    """
    if n < 2:
        raise ValueError("Berger sphere needs n >= 2")
    forms = berger_forms(n)
    scal = nonneg_region([forms.scalar])
    spinor = (Fraction(0), scal[1])
    nonneg_up, eps_up, forms_range = _forms_upper(n, n, forms)
    by_degree = {p: _forms_upper(n, p, forms)[2] for p in range(2, n + 1)}
    c = C.c_formula(2 * n)
    two = _single(pinching_region([f for _, f in forms.sectional], c), "c pinching")
    components = {
        "spinor_upper": spinor[1],
        "nonneg_operator_upper": nonneg_up,
        "epsilon_upper": eps_up,
        "two_form_lower": two[0],
        "two_form_upper": two[1],
    }
    ref = reference_thresholds(n)
    notes = []
    printed = printed_two_form_lower(n)
    if printed != two[0]:
        notes.append(
            f"two-form lower bound: derived 8(n-1)/(17n-14) = {format_number(two[0])}; "
            f"the variant with 17m-14 (m = 2n) gives {format_number(printed)} and is not used"
        )
    for key, val in components.items():
        if val != ref[key]:
            notes.append(f"{key}: solver {format_number(val)} differs from closed form {format_number(ref[key])}")
    return BergerThresholds(n, spinor, forms_range, by_degree, two, components, ref, tuple(notes))


def berger_sphere_verdicts(n: int) -> BergerThresholds:
    """Threshold table for the Berger sphere of dimension 2n+1 (alias of :func:`berger_thresholds`)."""
    return berger_thresholds(n)


def berger_gate_verdicts(spec: BergerSphere, profile: PrincipalCurvatureProfile | None = None,
                           p: int = 2, flags: AssertedFlags = DEFAULT_FLAGS) -> list[TheoremVerdict]:
    """Gates for a minimal hypersurface in the Berger sphere ``spec``.

    Without a profile, the subset condition is reported as not supplied.
    """
    n = spec.n
    delta = Fraction(spec.delta) if not isinstance(spec.delta, float) else spec.delta
    th = berger_thresholds(n)
    m = 2 * n
    base = _asserted(flags)
    out = []

    def condition(q: int) -> Hypothesis:
        if profile is None:
            return Hypothesis(f"|A|^2 - K_alpha^2 >= 0 for |alpha|={q}", False, None, note="no profile supplied")
        if profile.dim != m:
            raise ValueError(f"profile dimension {profile.dim} != {m}")
        res = check_minimal_condition(profile, q)
        return Hypothesis(f"|A|^2 - K_alpha^2 >= 0 for |alpha|={q}", res.holds, res.margin,
                          note=f"worst alpha {list(res.worst_alpha)}")

    minimal = [] if profile is None else [Hypothesis("minimal (H = 0)", profile.is_minimal)]

    hyps = base + minimal + [_ge("0 < delta <= 2n+2", th.spinor_range[1], delta),
                             _ge("delta > 0", delta, 0, strict=True)]
    concl = Conclusion("Vanishing", ()) if all(h.passed for h in hyps) else NOT_APPLICABLE
    out.append(TheoremVerdict("BergerSphere1", hyps, concl,
                              ["no L2 harmonic spinors"] + flags.notes()))

    q = min(p, m - p)
    if not 2 <= q <= n:
        raise ValueError(f"degree p={p} outside 2..{m - 2}")
    upper = th.forms_range_by_degree[q][1]
    hyps = base + minimal + [_ge("delta > 0", delta, 0, strict=True),
                             _ge("delta <= forms threshold", upper, delta), condition(q)]
    concl = Conclusion("Vanishing", (q, m - q)) if all(h.passed for h in hyps) else NOT_APPLICABLE
    out.append(TheoremVerdict("BergerSphere2", hyps, concl,
                              [f"degree-{q} threshold {format_number(upper)}"] + flags.notes()))

    lo, hi = th.two_form_range
    hyps = base + minimal + [_ge("delta >= two-form lower bound", delta, lo),
                             _ge("delta <= two-form upper bound", hi, delta), condition(2)]
    concl = Conclusion("Vanishing", (2, m - 2)) if all(h.passed for h in hyps) else NOT_APPLICABLE
    out.append(TheoremVerdict("BergerSphere3", hyps, concl, list(th.notes) + flags.notes()))
    return out


# ---------------------------------------------------------------------------
# threshold ordering table

FIGURE_LABELS = ("sec>0", "R>=0", "eps-pinching", "c-lower", "c-upper", "Ric>0", "s>=0")


def figure1_row(n: int) -> list[tuple[str, Fraction]]:
    """Thresholds for one n, sorted by value (ties by label order)."""
    th = berger_thresholds(n)
    forms = berger_forms(n)
    sec_up = nonneg_region([f for _, f in forms.sectional])[1]
    ric_up = nonneg_region([f for f, _ in forms.ricci])[1]
    vals = {
        "sec>0": sec_up,
        "R>=0": th.components["nonneg_operator_upper"],
        "eps-pinching": th.components["epsilon_upper"],
        "c-lower": th.components["two_form_lower"],
        "c-upper": th.components["two_form_upper"],
        "Ric>0": ric_up,
        "s>=0": th.components["spinor_upper"],
    }
    return sorted(vals.items(), key=lambda kv: (kv[1], FIGURE_LABELS.index(kv[0])))


@dataclass(frozen=True)
class FigureData:
    rows: dict[int, list[tuple[str, Fraction]]]
    reference_order: tuple[str, ...]
    relation: dict[int, str]

    def order(self, n: int) -> tuple[str, ...]:
        return tuple(label for label, _ in self.rows[n])


def figure1_data(n_values: Iterable[int] = range(2, 13)) -> FigureData:
    """Sorted thresholds per n, and how each ordering relates to the large-n one.

    ``relation[n]`` is ``"same"``, ``"swap(R>=0,eps-pinching)"`` or
    ``"tie(R>=0,eps-pinching)"``.
    """
    ns = sorted(set(n_values))
    if not ns or ns[0] < 2 or ns[-1] > 64:
        raise ValueError("n values must lie in [2, 64]")
    rows = {n: figure1_row(n) for n in ns}
    ref_n = max(max(ns), 7)
    ref_row = rows.get(ref_n) or figure1_row(ref_n)
    ref = tuple(label for label, _ in ref_row)
    relation = {}
    for n in ns:
        vals = dict(rows[n])
        order = tuple(label for label, _ in rows[n])
        if vals["R>=0"] == vals["eps-pinching"]:
            relation[n] = "tie(R>=0,eps-pinching)"
        elif order == ref:
            relation[n] = "same"
        elif order == _swap(ref, "R>=0", "eps-pinching"):
            relation[n] = "swap(R>=0,eps-pinching)"
        else:
            relation[n] = "other"
    return FigureData(rows, ref, relation)


def _swap(order: tuple[str, ...], a: str, b: str) -> tuple[str, ...]:
    lst = list(order)
    i, j = lst.index(a), lst.index(b)
    lst[i], lst[j] = lst[j], lst[i]
    return tuple(lst)
