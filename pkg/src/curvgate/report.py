"""Requests, report documents and their JSON / CSV / markdown renderings.

A :class:`ReportDocument` holds only JSON-friendly values plus the engine's
dataclasses, so ``ReportDocument.from_json(doc.to_json()) == doc``.  Exact
numbers are encoded as ``"num/den"`` strings and floats as JSON numbers.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from . import __version__
from . import constants as C
from .berger import berger_gate_verdicts, berger_sphere_verdicts, figure1_data
from .errors import RequestError
from .model_spaces import (
    NUMERIC_ONLY,
    BergerSphere,
    CurvatureSummary,
    closed_form_summary,
    compare_numeric,
)
from .profiles import format_number, parse_profile, profile_text
from .spec_text import format_spec, parse_spec
from .verdicts import (
    AmbientSummary,
    AssertedFlags,
    TheoremVerdict,
    abound_verdict,
    classify_nullity_sign,
    decode_number,
    degree_special_verdict,
    encode_number,
    hodge_verdicts,
    nullity_verdict,
    spinor_verdict,
)

FORMATS = ("json", "csv", "md")
VERIFY_TOL = 1e-6
FLAG_NAMES = ("stable", "complete", "not_totally_geodesic", "ric_normal_somewhere_positive", "infinite_volume")


def render_float(x: float) -> str:
    return f"{x:.12g}"


def render(x) -> str:
    """Table cell text: exact values as fractions, floats to 12 significant digits."""
    if x is None:
        return ""
    if isinstance(x, float):
        return render_float(x)
    if isinstance(x, (int, Fraction)):
        return format_number(Fraction(x))
    return str(x)


# ---------------------------------------------------------------------------
# summaries


def summary_to_dict(s: CurvatureSummary) -> dict:
    def pairs(spec):
        return [[encode_number(v), k] for v, k in spec]
    return {
        "dim": s.dim,
        "sec_min": encode_number(s.sec_min),
        "sec_max": encode_number(s.sec_max),
        "spectrum": NUMERIC_ONLY if s.spectrum is None else pairs(s.spectrum),
        "ricci": pairs(s.ricci),
        "scalar": encode_number(s.scalar),
        "gamma": encode_number(s.gamma),
        "flags": list(s.flags),
    }


def summary_from_dict(d: dict) -> CurvatureSummary:
    def pairs(items):
        return tuple((decode_number(v), int(k)) for v, k in items)
    spectrum = None if d["spectrum"] == NUMERIC_ONLY else pairs(d["spectrum"])
    return CurvatureSummary(
        dim=int(d["dim"]),
        sec_min=decode_number(d["sec_min"]),
        sec_max=decode_number(d["sec_max"]),
        spectrum=spectrum,
        ricci=pairs(d["ricci"]),
        scalar=decode_number(d["scalar"]),
        gamma=decode_number(d["gamma"]),
        flags=tuple(d.get("flags", ())),
    )


def flags_to_dict(flags: AssertedFlags) -> dict:
    out = {name: getattr(flags, name) for name in FLAG_NAMES}
    out["provenance"] = [list(pair) for pair in flags.provenance]
    return out


def flags_from_dict(d: dict) -> AssertedFlags:
    return AssertedFlags(
        **{name: bool(d.get(name, getattr(AssertedFlags, name))) for name in FLAG_NAMES},
        provenance=tuple(tuple(pair) for pair in d.get("provenance", ())),
    )


# ---------------------------------------------------------------------------
# requests


@dataclass(frozen=True)
class AnalysisRequest:
    """What to analyze: exactly one ambient source, a profile, degrees, flags."""

    profile: str
    ambient_spec: str | None = None
    ambient_summary: AmbientSummary | None = None
    degrees: tuple[int, ...] | None = None
    flags: AssertedFlags = field(default_factory=AssertedFlags)
    output: str = "json"

    def __post_init__(self):
        if (self.ambient_spec is None) == (self.ambient_summary is None):
            raise RequestError("give exactly one of an ambient model or a manual ambient summary")
        if self.output not in FORMATS:
            raise RequestError(f"output format must be one of {FORMATS}")
        if self.degrees is not None:
            object.__setattr__(self, "degrees", tuple(int(p) for p in self.degrees))

    def to_dict(self) -> dict:
        return {
            "profile": self.profile,
            "ambient_spec": self.ambient_spec,
            "ambient_summary": None if self.ambient_summary is None else self.ambient_summary.to_dict(),
            "degrees": None if self.degrees is None else list(self.degrees),
            "flags": flags_to_dict(self.flags),
            "output": self.output,
        }

    @classmethod
    def from_dict(cls, d: dict) -> AnalysisRequest:
        amb = d.get("ambient_summary")
        return cls(
            profile=d["profile"],
            ambient_spec=d.get("ambient_spec"),
            ambient_summary=None if amb is None else AmbientSummary.from_dict(amb),
            degrees=None if d.get("degrees") is None else tuple(d["degrees"]),
            flags=flags_from_dict(d.get("flags", {})),
            output=d.get("output", "json"),
        )


# ---------------------------------------------------------------------------
# documents


@dataclass(frozen=True)
class ReportDocument:
    command: str
    request: dict
    summary: CurvatureSummary | None = None
    ambient: AmbientSummary | None = None
    verdicts: tuple[TheoremVerdict, ...] = ()
    table: tuple[dict, ...] = ()
    numeric: dict | None = None
    notes: tuple[str, ...] = ()
    ok: bool = True
    tool_version: str = __version__
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "verdicts", tuple(self.verdicts))
        object.__setattr__(self, "table", tuple(self.table))
        object.__setattr__(self, "notes", tuple(self.notes))

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "request": self.request,
            "summary": None if self.summary is None else summary_to_dict(self.summary),
            "ambient": None if self.ambient is None else self.ambient.to_dict(),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "table": [dict(row) for row in self.table],
            "numeric": self.numeric,
            "notes": list(self.notes),
            "ok": self.ok,
            "tool_version": self.tool_version,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> ReportDocument:
        return cls(
            command=d["command"],
            request=d["request"],
            summary=None if d.get("summary") is None else summary_from_dict(d["summary"]),
            ambient=None if d.get("ambient") is None else AmbientSummary.from_dict(d["ambient"]),
            verdicts=tuple(TheoremVerdict.from_dict(v) for v in d.get("verdicts", ())),
            table=tuple(d.get("table", ())),
            numeric=d.get("numeric"),
            notes=tuple(d.get("notes", ())),
            ok=bool(d.get("ok", True)),
            tool_version=d.get("tool_version", __version__),
            seed=int(d.get("seed", 0)),
        )

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# commands


def _numeric_dict(spec, points: int, seed: int) -> dict:
    cmp = compare_numeric(spec, points=points, seed=seed)
    return {
        "points": cmp.points,
        "max_spectrum_deviation": cmp.max_spectrum_deviation,
        "max_ricci_deviation": cmp.max_ricci_deviation,
        "max_scalar_deviation": cmp.max_scalar_deviation,
        "max_symmetry_residual": cmp.max_symmetry_residual,
        "min_operator_eigenvalue": cmp.min_operator_eigenvalue,
        "max_deviation": cmp.max_deviation,
        "tolerance": VERIFY_TOL,
        "passed": cmp.max_deviation <= VERIFY_TOL,
    }


def model_report(spec_text: str, *, verify: bool = False, points: int = 20, seed: int = 0) -> ReportDocument:
    spec = parse_spec(spec_text)
    summary = closed_form_summary(spec)
    numeric = _numeric_dict(spec, points, seed) if verify else None
    ok = numeric is None or numeric["passed"]
    notes = []
    if summary.spectrum is None:
        notes.append("curvature-operator spectrum has no closed form here; use --verify for numeric eigenvalues")
    return ReportDocument(
        command="model",
        request={"spec": format_spec(spec), "verify": verify, "points": points},
        summary=summary,
        ambient=AmbientSummary.from_summary(summary, label=format_spec(spec)) if spec.dim >= 3 else None,
        numeric=numeric,
        notes=tuple(notes),
        ok=ok,
        seed=seed,
    )


def _ric_normal_ub(ambient: AmbientSummary, summary: CurvatureSummary | None):
    if summary is not None:
        return max(v for v, _ in summary.ricci)
    if ambient.sec_bounds is not None:
        return ambient.hypersurface_dim * ambient.sec_bounds[1]
    return None


def _tag(v: TheoremVerdict, p: int) -> TheoremVerdict:
    return replace(v, notes=(f"degree p={p}",) + v.notes)


def analyze(request: AnalysisRequest, seed: int = 0) -> ReportDocument:
    """Run every gate that the request's ambient and profile can feed.

    Raises :class:`RequestError` when the parts of the request disagree.
    Verdict outcomes, including NotApplicable, are data and never raise.
    """
    spec = summary = None
    if request.ambient_spec is not None:
        spec = parse_spec(request.ambient_spec)
        summary = closed_form_summary(spec)
        ambient = AmbientSummary.from_summary(summary, label=format_spec(spec))
    else:
        ambient = request.ambient_summary
    try:
        profile = parse_profile(request.profile)
    except ValueError as exc:
        raise RequestError(f"bad profile {request.profile!r}: {exc}") from None
    m = ambient.hypersurface_dim
    if profile.dim != m:
        raise RequestError(
            f"profile has {profile.dim} principal curvatures; ambient dimension {ambient.dim} needs {m}")
    degrees = tuple(range(m + 1)) if request.degrees is None else request.degrees
    if not degrees:
        raise RequestError("no degrees requested")
    bad = [p for p in degrees if not 0 <= p <= m]
    if bad:
        raise RequestError(f"degrees {bad} outside [0, {m}]")
    flags = request.flags

    verdicts: list[TheoremVerdict] = []
    berger = isinstance(spec, BergerSphere)
    berger_once: list[TheoremVerdict] = []
    for p in sorted(set(degrees)):
        if min(p, m - p) < 2:
            verdicts.append(_tag(degree_special_verdict(m, p, flags), p))
            continue
        verdicts.extend(_tag(v, p) for v in hodge_verdicts(ambient, profile, p, flags))
        verdicts.append(_tag(abound_verdict(ambient, profile, p, flags), p))
        if berger:
            gates = berger_gate_verdicts(spec, profile, p, flags)
            verdicts.extend(_tag(v, p) for v in gates if v.theorem_id == "BergerSphere2")
            if not berger_once:
                berger_once = [v for v in gates if v.theorem_id != "BergerSphere2"]
    if berger and not berger_once:
        berger_once = [v for v in berger_gate_verdicts(spec, profile, 2, flags) if v.theorem_id == "BergerSphere1"]
    verdicts.extend(berger_once)
    verdicts.append(spinor_verdict(ambient.scalar_lb, profile, flags))
    sign = classify_nullity_sign(ambient.effective_ric_normal_lb(), _ric_normal_ub(ambient, summary), profile.normA2)
    verdicts.append(nullity_verdict(sign, flags))

    table = constants_rows([m], sorted({min(p, m - p) for p in degrees if min(p, m - p) >= 2})) if m >= 4 else []
    req = request.to_dict()
    req["profile"] = profile_text(profile)
    if spec is not None:
        req["ambient_spec"] = format_spec(spec)
    return ReportDocument(
        command="analyze",
        request=req,
        summary=summary,
        ambient=ambient,
        verdicts=tuple(verdicts),
        table=tuple(table),
        notes=("conditions are evaluated at the single supplied profile",),
        seed=seed,
    )


def constants_rows(m_values: Iterable[int], p_values: Sequence[int] | None = None) -> list[dict]:
    """Rows ``m, p, epsilon, c, beta`` as exact fraction strings (blank when undefined)."""
    rows = []
    for m in m_values:
        if m < 4:
            continue
        ps = range(2, m // 2 + 1) if p_values is None else [p for p in p_values if 2 <= p <= m - 2]
        for p in ps:
            eps = C.epsilon_constant(m, p) if m >= 6 and 2 * p <= m else None
            c = C.c_constant(m) if m >= 6 else None
            beta = C.sphere_beta(p, m) if 2 * p <= m else C.beta_bound(m, p, 1, m)
            rows.append({"m": str(m), "p": str(p), "epsilon": render(eps), "c": render(c), "beta": render(beta)})
    return rows


def constants_report(m_values: Sequence[int], p_values: Sequence[int] | None = None, seed: int = 0) -> ReportDocument:
    rows = constants_rows(m_values, p_values)
    if not rows:
        raise RequestError("empty constants range (need m >= 4 and 2 <= p <= m - 2)")
    return ReportDocument(
        command="constants",
        request={"m": list(m_values), "p": None if p_values is None else list(p_values)},
        table=tuple(rows),
        notes=("beta is the round-sphere threshold (gamma = 1, Ric = m)",),
        seed=seed,
    )


def figure1_report(n_min: int, n_max: int, seed: int = 0) -> ReportDocument:
    if not 2 <= n_min <= n_max:
        raise RequestError("figure1 needs 2 <= n_min <= n_max")
    data = figure1_data(range(n_min, n_max + 1))
    rows = []
    for n, row in data.rows.items():
        for rank, (label, value) in enumerate(row):
            rows.append({"n": str(n), "rank": str(rank), "label": label,
                         "delta": render(value), "delta_float": render_float(float(value))})
    notes = [f"reference order (n > 6): {' < '.join(data.reference_order)}"]
    ok = True
    for n, rel in data.relation.items():
        expected = "same" if n > 6 else ("tie(R>=0,eps-pinching)" if n == 6 else "swap(R>=0,eps-pinching)")
        if rel != expected:
            ok = False
            notes.append(f"ordering property violated at n={n}: {rel}")
    notes.append("ordering property holds" if ok else "ordering property FAILED")
    for n in (n_min, n_max):
        notes.extend(berger_sphere_verdicts(n).notes[:1])
    return ReportDocument(
        command="figure1",
        request={"n_min": n_min, "n_max": n_max},
        table=tuple(rows),
        notes=tuple(notes),
        ok=ok,
        seed=seed,
    )


VERIFY_CATALOGUE = (
    "Berger(n=2,delta=1/2)", "Berger(n=2,delta=1)", "Berger(n=2,delta=6/5)", "Berger(n=2,delta=3/2)",
    "Berger(n=3,delta=1/2)", "Berger(n=3,delta=1)", "Berger(n=3,delta=6/5)", "Berger(n=3,delta=3/2)",
    "S2xR3", "S3xR2", "S2xS2", "S2xS3", "S4(r=2)", "CP2", "E4",
)


def verify_all_report(points: int = 20, seed: int = 0) -> ReportDocument:
    """Numeric chart checks over the catalogue plus the exact threshold and constant identities."""
    rows = []
    ok = True
    for text in VERIFY_CATALOGUE:
        num = _numeric_dict(parse_spec(text), points, seed)
        ok &= num["passed"]
        rows.append({"check": f"numeric {text}", "value": render_float(num["max_deviation"]),
                     "passed": str(num["passed"]).lower()})
    thresholds_ok = all(all(berger_sphere_verdicts(n).matches_reference().values()) for n in range(2, 33))
    rows.append({"check": "Berger thresholds n=2..32", "value": "exact", "passed": str(thresholds_ok).lower()})
    boundary_ok = all(C.epsilon_boundary_residual(m, p) == 0 for m in range(6, 41) for p in range(2, m // 2 + 1)) \
        and all(C.c_boundary_residual(m) == 0 for m in range(6, 41))
    rows.append({"check": "boundary identities m=6..40", "value": "exact", "passed": str(boundary_ok).lower()})
    mari_ok = C.mari_set(range(4, 41)) == {4, 5, 6, 7, 9}
    rows.append({"check": "beta dichotomy m=4..40", "value": "exact", "passed": str(mari_ok).lower()})
    ok = ok and thresholds_ok and boundary_ok and mari_ok
    return ReportDocument(
        command="verify-all",
        request={"points": points, "tolerance": VERIFY_TOL},
        table=tuple(rows),
        ok=ok,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# rendering


def _sections(doc: ReportDocument) -> list[tuple[str, list[str], list[list[str]]]]:
    sections = []
    if doc.summary is not None:
        s = summary_to_dict(doc.summary)
        spectrum = s["spectrum"] if s["spectrum"] == NUMERIC_ONLY else \
            " ".join(f"{render(v)}:{k}" for v, k in doc.summary.spectrum)
        rows = [
            ["dim", str(s["dim"])],
            ["sec_min", render(doc.summary.sec_min)],
            ["sec_max", render(doc.summary.sec_max)],
            ["spectrum", spectrum],
            ["ricci", " ".join(f"{render(v)}:{k}" for v, k in doc.summary.ricci)],
            ["scalar", render(doc.summary.scalar)],
            ["gamma", render(doc.summary.gamma)],
            ["flags", " ".join(doc.summary.flags)],
        ]
        sections.append(("summary", ["quantity", "value"], rows))
    if doc.numeric is not None:
        rows = [[k, render(v) if not isinstance(v, bool) else str(v).lower()] for k, v in sorted(doc.numeric.items())]
        sections.append(("numeric check", ["quantity", "value"], rows))
    if doc.verdicts:
        rows = []
        for v in doc.verdicts:
            degree = next((n for n in v.notes if n.startswith("degree p=")), "")
            for h in v.hypotheses:
                rows.append([v.theorem_id, degree.removeprefix("degree p="), str(v.conclusion), h.name,
                             "pass" if h.passed else "fail", render(h.margin)])
        sections.append(("verdicts", ["theorem", "p", "conclusion", "hypothesis", "status", "margin"], rows))
    if doc.table:
        headers = list(doc.table[0].keys())
        sections.append(("table", headers, [[row[h] for h in headers] for row in doc.table]))
    return sections


def to_csv(doc: ReportDocument) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    sections = _sections(doc)
    for i, (title, headers, rows) in enumerate(sections):
        if len(sections) > 1:
            if i:
                buf.write("\n")
            buf.write(f"# {title}\n")
        writer.writerow(headers)
        writer.writerows(rows)
    return buf.getvalue()


def to_markdown(doc: ReportDocument) -> str:
    lines = [f"# curvgate {doc.command}", ""]
    for title, headers, rows in _sections(doc):
        lines += [f"## {title}", "", "| " + " | ".join(headers) + " |",
                  "|" + "|".join("---" for _ in headers) + "|"]
        lines += ["| " + " | ".join(cell.replace("|", "\\|") for cell in row) + " |" for row in rows]
        lines.append("")
    if doc.notes:
        lines += ["## notes", ""] + [f"- {n}" for n in doc.notes] + [""]
    return "\n".join(lines)


def render_document(doc: ReportDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json()
    if fmt == "csv":
        return to_csv(doc)
    if fmt == "md":
        return to_markdown(doc)
    raise ValueError(f"unknown format {fmt!r}")
