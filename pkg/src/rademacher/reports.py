"""Serialization of results to JSON-lines, CSV and plain text.

Every floating-point cell carries the number of significant digits it is
rendered with (``*_digits`` in CSV, ``"digits"`` in JSON).
"""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from importlib import resources
from typing import Iterable

import gmpy2

from .exact.cyclo import CycloElem
from .exact.rational import format_rational


def format_sig(x, digits: int) -> str:
    """``digits`` significant digits, correctly rounded.

    Positional notation when the decimal exponent lies in [-6, digits),
    scientific otherwise.  Trailing zeros are kept: they are significant.
    At least two digits are always produced.
    """
    digits = max(digits, 2)
    x = gmpy2.mpfr(x)
    if not gmpy2.is_finite(x):
        return str(x)
    if x == 0:
        return "0." + "0" * (digits - 1)
    mant, exp, _ = x.digits(10, digits)
    sign = "-" if mant.startswith("-") else ""
    mant = mant.lstrip("-")
    e = exp - 1
    if -6 <= e < digits:
        if e < 0:
            body = "0." + "0" * (-e - 1) + mant
        else:
            body = mant[: e + 1] + ("." + mant[e + 1:] if len(mant) > e + 1 else "")
        return sign + body
    body = mant[0] + ("." + mant[1:] if len(mant) > 1 else "")
    return f"{sign}{body}e{'+' if e >= 0 else '-'}{abs(e):02d}"


def bits_to_digits(bits: int) -> int:
    return max(2, int(bits * math.log10(2)) - 1)


def exact_text(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, CycloElem):
        return v.dumps()
    raise TypeError(f"not an exact value: {v!r}")


def number_cell(x, digits: int) -> dict:
    return {"value": format_sig(x, digits), "digits": digits}


# -- record builders ----------------------------------------------------------


def coeff_record(v) -> dict:
    digits = v.digits
    rec = {
        "kind": "coeff",
        "h": v.h,
        "k": v.k,
        "l": v.l,
        "N": v.N,
        "backend": v.backend,
        "precision_bits": v.precision_bits,
        "re": number_cell(v.numeric.real, digits),
        "im": number_cell(v.numeric.imag, digits),
    }
    if v.exact is not None:
        rec["exact"] = exact_text(v.exact)
    return rec


def limit_record(lv) -> dict:
    return {
        "kind": "limit",
        "h": lv.h,
        "k": lv.k,
        "l": lv.l,
        "precision_bits": lv.precision_bits,
        "re": number_cell(lv.value.real, lv.digits),
        "im": number_cell(lv.value.imag, lv.digits),
        "closed_form": lv.closed_form,
    }


def encounter_record(row) -> dict:
    d = bits_to_digits(row.precision_bits)
    return {
        "kind": "encounter",
        "h": row.h,
        "k": row.k,
        "l": row.l,
        "B": row.B,
        "n_range": list(row.n_range),
        "mode": row.mode,
        "confirmed_exact": row.confirmed_exact,
        "distance": number_cell(row.distance, d),
        "ratio": number_cell(row.ratio, d),
    }


def table24_record(row) -> dict:
    d = bits_to_digits(row.precision_bits)
    return {
        "kind": "table24l",
        "l": row.l,
        "N": row.N,
        "distance": number_cell(row.distance, d),
        "ratio": number_cell(row.ratio, d),
    }


def _value_cell(v, digits: int) -> dict:
    cell = number_cell(v if not isinstance(v, Fraction) else gmpy2.mpq(v.numerator, v.denominator), digits)
    if isinstance(v, Fraction):
        cell["exact"] = format_rational(v)
    return cell


def extrema_record(report, ratios, residues, digits: int = 20) -> dict:
    with gmpy2.context(precision=256):
        return {
            "kind": "extrema",
            "h": report.h,
            "k": report.k,
            "l": report.l,
            "stride": report.stride,
            "n_range": list(report.n_range),
            "mode": report.mode,
            "precision_bits": report.precision_bits,
            "maxima": [{"N": n, **_value_cell(v, digits)} for n, v in report.maxima],
            "minima": [{"N": n, **_value_cell(v, digits)} for n, v in report.minima],
            "ratios": [None if q is None else number_cell(q, min(digits, 30)) for q in ratios],
            "congruence": [
                {
                    "window": list(w.window),
                    "modulus": w.modulus,
                    "max_residues": list(w.max_residues),
                    "min_residues": list(w.min_residues),
                    "max_unique": w.max_unique,
                    "min_unique": w.min_unique,
                }
                for w in residues
            ],
        }


def topdown_record(f) -> dict:
    return {
        "kind": "topdown",
        "h": f.h,
        "k": f.k,
        "r": f.r,
        "residue": f.residue,
        "prefactor": None if f.prefactor is None else f.prefactor.description,
        "variable": None if f.prefactor is None else f.prefactor.variable_name,
        "poly": None if f.poly is None else [format_rational(c) for c in f.poly.coeffs],
        "ok": f.ok,
        "failure": f.failure,
        "interpolation_window": list(f.interpolation_window),
        "verification_window": list(f.verification_window),
    }


def reconstruct_record(N: int, m: int, precision_bits: int, err) -> dict:
    return {
        "kind": "reconstruct",
        "N": N,
        "m": m,
        "precision_bits": precision_bits,
        "max_error": number_cell(err, 6),
    }


def validate_record(h: int, k: int, n_max: int, oracle_ok: bool, mismatches: list, audit) -> dict:
    rec = {
        "kind": "validate",
        "h": h,
        "k": k,
        "n_max": n_max,
        "oracle_equivalence": "PASS" if oracle_ok else "FAIL",
        "oracle_mismatches": [list(m) for m in mismatches],
    }
    if audit is not None:
        rec["float_audit"] = {
            "precision_bits": audit.precision_bits,
            "status": "PASS" if audit.ok else "FAIL",
            "max_rel_error": number_cell(audit.max_rel_error, 6),
            "worst_entry": list(audit.worst),
            "first_failure": audit.first_failure,
            "digits_agreement": round(audit.digits, 2) if math.isfinite(audit.digits) else None,
        }
    return rec


# -- writers ------------------------------------------------------------------


def to_jsonl(records: Iterable[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True, separators=(",", ":")) + "\n" for r in records)


def _flatten(rec: dict, prefix: str = "") -> dict:
    out = {}
    for key, val in rec.items():
        name = f"{prefix}{key}"
        if isinstance(val, dict) and "value" in val and "digits" in val:
            out[name] = val["value"]
            out[f"{name}_digits"] = val["digits"]
            if "exact" in val:
                out[f"{name}_exact"] = val["exact"]
        elif isinstance(val, dict):
            out.update(_flatten(val, f"{name}_"))
        elif isinstance(val, list):
            out[name] = json.dumps(val, sort_keys=True, separators=(",", ":"))
        else:
            out[name] = "" if val is None else val
    return out


def to_csv(records: Iterable[dict]) -> str:
    rows = [_flatten(r) for r in records]
    if not rows:
        return ""
    fields = list(rows[0])
    for r in rows[1:]:
        fields += [f for f in r if f not in fields]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def extrema_csv(rec: dict) -> str:
    """Long CSV form of an extrema record: one row per extremum and per ratio."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "index", "N", "value", "value_digits", "value_exact"])
    for kind in ("maxima", "minima"):
        for i, e in enumerate(rec[kind]):
            w.writerow([kind[:-1] + "um", i, e["N"], e["value"], e["digits"], e.get("exact", "")])
    for i, q in enumerate(rec["ratios"]):
        w.writerow(["ratio", i, "", "" if q is None else q["value"], "" if q is None else q["digits"], ""])
    for c in rec["congruence"]:
        w.writerow(["congruence", f"{c['window'][0]}..{c['window'][1]}", "",
                    json.dumps({"modulus": c["modulus"], "max": c["max_residues"], "min": c["min_residues"]},
                               sort_keys=True, separators=(",", ":")), "", ""])
    return buf.getvalue()


# -- schemas ------------------------------------------------------------------

SCHEMA_FILES = {
    "coeff": "coeff.schema.json",
    "limit": "limit.schema.json",
    "encounter": "encounter.schema.json",
    "table24l": "table24l.schema.json",
    "extrema": "extrema.schema.json",
    "topdown": "topdown.schema.json",
    "reconstruct": "reconstruct.schema.json",
    "validate": "validate.schema.json",
}


def load_schema(kind: str) -> dict:
    text = resources.files("rademacher").joinpath("schemas", SCHEMA_FILES[kind]).read_text()
    return json.loads(text)
