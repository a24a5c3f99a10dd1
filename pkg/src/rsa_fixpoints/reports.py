"""Deterministic report objects and rendering (JSON / CSV / table).

JSON output is byte-stable: fixed key order, two-space indent, one
trailing newline.  Integers whose magnitude exceeds 2**53 are emitted
as decimal strings so consumers with double-precision JSON numbers
cannot silently corrupt them; rationals are exact {"num", "den"} pairs
in lowest terms, never floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import census as census_mod
from .census import ExactOrderCensus, RsaInstance
from .dynamics import CycleStructure

__all__ = [
    "AuditReport",
    "build_audit_report",
    "render_report",
    "render_census",
    "render_cycles",
    "census_to_json_dict",
    "census_from_json_dict",
    "render_json",
    "encode_int",
    "DEFAULT_WARN_FRACTION",
    "DEFAULT_WARN_BOUND",
    "DEFAULT_WEAK_BOUNDS",
]

JSON_SAFE_INT = 1 << 53

DEFAULT_WEAK_BOUNDS = (1, 2)
DEFAULT_WARN_BOUND = 2
DEFAULT_WARN_FRACTION = Fraction(1, 1000)


@dataclass(frozen=True)
class AuditReport:
    """Exponent-safety audit: census plus weak-fraction metrics.

    ``weak_fraction[B]`` is the exact fraction of residues whose period
    is at most B; ``min_fixed_points`` is E_1.  Verdict is one of OK,
    WARN, DEGENERATE.
    """

    instance: RsaInstance
    k_max: int
    census: ExactOrderCensus
    weak_fraction: dict[int, Fraction]
    min_fixed_points: int
    verdict: str
    notes: list[str]


def build_audit_report(
    inst: RsaInstance,
    weak_bounds: tuple[int, ...] = DEFAULT_WEAK_BOUNDS,
    warn_bound: int = DEFAULT_WARN_BOUND,
    warn_fraction: Fraction = DEFAULT_WARN_FRACTION,
    min_k_max: int = 1,
) -> AuditReport:
    """Run the census and derive the audit verdict.

    WARN fires when the weak fraction at ``warn_bound`` exceeds
    ``warn_fraction`` or k_max falls below ``min_k_max``; DEGENERATE
    when e = 1 mod lambda(n) (identity permutation) and overrides WARN.
    """
    cen = census_mod.full_census(inst)
    k_max = cen.k_max
    bounds = sorted({b for b in weak_bounds if b >= 1} | {warn_bound, k_max})
    weak = {
        b: Fraction(sum(e_k for k, e_k in cen.all_counts.items() if k <= b), inst.n)
        for b in bounds
    }
    notes: list[str] = []
    if not inst.gcd_e_phi_ok:
        notes.append("gcd(e, phi(n)) != 1; only the weaker gcd(e, lambda(n)) = 1 holds")
    if inst.e % inst.lam == 1:
        verdict = "DEGENERATE"
        notes.append("e = 1 mod lambda(n): the power map is the identity, every residue is fixed")
    else:
        verdict = "OK"
        if weak[warn_bound] > warn_fraction:
            verdict = "WARN"
            notes.append(
                f"weak_fraction({warn_bound}) = {weak[warn_bound]} exceeds threshold {warn_fraction}"
            )
        if k_max < min_k_max:
            verdict = "WARN"
            notes.append(f"k_max = {k_max} is below the configured floor {min_k_max}")
    return AuditReport(
        instance=inst,
        k_max=k_max,
        census=cen,
        weak_fraction=weak,
        min_fixed_points=cen.all_counts.get(1, 0),
        verdict=verdict,
        notes=notes,
    )


def encode_int(v: int):
    """JSON-safe integer: plain when |v| <= 2**53, decimal string otherwise."""
    return v if -JSON_SAFE_INT <= v <= JSON_SAFE_INT else str(v)


_enc_int = encode_int


def _enc_fraction(fr: Fraction) -> dict:
    return {"num": _enc_int(fr.numerator), "den": _enc_int(fr.denominator)}


def render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def census_to_json_dict(cen: ExactOrderCensus) -> dict:
    return {
        "k_max": _enc_int(cen.k_max),
        "unit_counts": {str(k): _enc_int(v) for k, v in sorted(cen.unit_counts.items())},
        "all_counts": {str(k): _enc_int(v) for k, v in sorted(cen.all_counts.items())},
    }


def census_from_json_dict(d: dict) -> ExactOrderCensus:
    return ExactOrderCensus(
        k_max=int(d["k_max"]),
        unit_counts={int(k): int(v) for k, v in d["unit_counts"].items()},
        all_counts={int(k): int(v) for k, v in d["all_counts"].items()},
    )


def instance_to_json_dict(inst: RsaInstance) -> dict:
    return {
        "p": _enc_int(inst.p),
        "q": _enc_int(inst.q),
        "n": _enc_int(inst.n),
        "e": _enc_int(inst.e),
        "phi": _enc_int(inst.phi),
        "lambda": _enc_int(inst.lam),
        "gcd_e_phi_ok": inst.gcd_e_phi_ok,
    }


def audit_to_json_dict(report: AuditReport) -> dict:
    return {
        "instance": instance_to_json_dict(report.instance),
        "k_max": _enc_int(report.k_max),
        "census": census_to_json_dict(report.census),
        "weak_fraction": {
            str(b): _enc_fraction(fr) for b, fr in sorted(report.weak_fraction.items())
        },
        "min_fixed_points": _enc_int(report.min_fixed_points),
        "verdict": report.verdict,
        "notes": list(report.notes),
    }


def census_to_csv(cen: ExactOrderCensus) -> str:
    lines = ["k,T_k,E_k"]
    for k in sorted(cen.all_counts):
        lines.append(f"{k},{cen.unit_counts.get(k, 0)},{cen.all_counts[k]}")
    return "\n".join(lines) + "\n"


def _table(rows: list[tuple[str, ...]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = []
    for r in rows:
        out.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(out) + "\n"


def census_to_table(cen: ExactOrderCensus) -> str:
    rows = [("k", "T_k", "E_k")]
    for k in sorted(cen.all_counts):
        rows.append((str(k), str(cen.unit_counts.get(k, 0)), str(cen.all_counts[k])))
    return f"k_max = {cen.k_max}\n" + _table(rows)


def render_census(cen: ExactOrderCensus, fmt: str) -> str:
    if fmt == "json":
        return render_json(census_to_json_dict(cen))
    if fmt == "csv":
        return census_to_csv(cen)
    if fmt == "table":
        return census_to_table(cen)
    raise ValueError(f"unknown format {fmt!r}")


def cycles_to_json_dict(cs: CycleStructure) -> dict:
    return {
        "n": _enc_int(cs.n),
        "entries": {
            str(k): {"points": _enc_int(pts), "cycles": _enc_int(cyc)}
            for k, (pts, cyc) in sorted(cs.entries.items())
        },
    }


def render_cycles(cs: CycleStructure, fmt: str) -> str:
    if fmt == "json":
        return render_json(cycles_to_json_dict(cs))
    if fmt == "csv":
        lines = ["k,points,cycles"]
        for k, (pts, cyc) in sorted(cs.entries.items()):
            lines.append(f"{k},{pts},{cyc}")
        return "\n".join(lines) + "\n"
    if fmt == "table":
        rows = [("k", "points", "cycles")]
        for k, (pts, cyc) in sorted(cs.entries.items()):
            rows.append((str(k), str(pts), str(cyc)))
        return f"n = {cs.n}\n" + _table(rows)
    raise ValueError(f"unknown format {fmt!r}")


def audit_to_table(report: AuditReport) -> str:
    inst = report.instance
    lines = [
        "RSA power-map fixed-point audit",
        f"  p = {inst.p}",
        f"  q = {inst.q}",
        f"  n = {inst.n}",
        f"  e = {inst.e}",
        f"  phi = {inst.phi}",
        f"  lambda = {inst.lam}",
        f"  k_max = {report.k_max}",
        f"  min_fixed_points (E_1) = {report.min_fixed_points}",
        "",
        census_to_table(report.census).rstrip("\n"),
        "",
        "weak fractions (period <= B):",
    ]
    for b, fr in sorted(report.weak_fraction.items()):
        lines.append(f"  B = {b}: {fr}")
    lines.append(f"verdict: {report.verdict}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def render_report(report: AuditReport, fmt: str) -> str:
    """Render an audit report; JSON output is byte-stable.

    CSV renders the census rows only (header ``k,T_k,E_k``, ascending k).
    """
    if fmt == "json":
        return render_json(audit_to_json_dict(report))
    if fmt == "csv":
        return census_to_csv(report.census)
    if fmt == "table":
        return audit_to_table(report)
    raise ValueError(f"unknown format {fmt!r}")
