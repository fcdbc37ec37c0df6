"""On-disk JSON-lines cache for coefficient triangles.

Layout of ``tri_h{h}_k{k}_{mode}[_{bits}].jsonl``:

* line 1, header: ``{"schema", "h", "k", "mode", "precision_bits", "n_cap", "r_cap", "l_keep"}``
* coefficient lines ``{"N", "r", "v"}`` for each retained D_r(N)
* a state block (the full last row, needed to extend the triangle):
  ``{"state": N, "r", "v"}`` lines closed by ``{"checkpoint": N}``

The file is append-only; on load, coefficient lines beyond the last complete
checkpoint are ignored.  ``v`` is the canonical exact text ("num/den", or a
cyclotomic JSON object) or, in float mode, ``[hex mantissa, exponent]`` (a
pair of those for complex values), which round-trips bit for bit.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Optional

import gmpy2

from .engine import EXACT, FLOAT, CoeffTriangle
from .exact.cyclo import CycloElem
from .exact.rational import format_rational, parse_rational

SCHEMA = "rademacher-triangle/1"
ENV_VAR = "RADEMACHER_CACHE_DIR"
DEFAULT_DIR = ".rademacher-cache"


def default_cache_dir() -> Path:
    return Path(os.environ.get(ENV_VAR, DEFAULT_DIR))


def cache_path(cache_dir, h: int, k: int, mode: str, precision_bits: Optional[int]) -> Path:
    suffix = f"_{precision_bits}" if mode == FLOAT else ""
    return Path(cache_dir) / f"tri_h{h}_k{k}_{mode}{suffix}.jsonl"


def _hexfloat(x) -> list:
    m, e = x.as_mantissa_exp()
    return [hex(int(m)), int(e)]


def _unhexfloat(pair, precision_bits: int):
    m, e = int(pair[0], 16), int(pair[1])
    with gmpy2.context(precision=precision_bits):
        return gmpy2.mul_2exp(gmpy2.mpfr(m), e)


def encode_value(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, CycloElem):
        return v.to_json()
    if isinstance(v, gmpy2.mpc):
        return [_hexfloat(v.real), _hexfloat(v.imag)]
    return _hexfloat(v)


def decode_value(obj, mode: str, k: int, precision_bits: Optional[int]):
    if mode == EXACT:
        if isinstance(obj, str):
            return parse_rational(obj)
        return CycloElem.from_json(obj)
    if isinstance(obj[0], list):
        re, im = (_unhexfloat(p, precision_bits) for p in obj)
        return gmpy2.mpc(re, im, precision=precision_bits)
    return _unhexfloat(obj, precision_bits)


def _line(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True) + "\n"


def _header(tri: CoeffTriangle) -> dict:
    return {
        "schema": SCHEMA,
        "h": tri.h,
        "k": tri.k,
        "mode": tri.mode,
        "precision_bits": tri.precision_bits,
        "n_cap": tri.n_cap,
        "r_cap": tri.r_cap,
        "l_keep": tri.l_keep,
    }


def save_triangle(cache_dir, tri: CoeffTriangle) -> Path:
    """Append rows computed since the last checkpoint, then a fresh state block.

    A file written for a different band or retention policy is replaced.
    """
    path = cache_path(cache_dir, tri.h, tri.k, tri.mode, tri.precision_bits)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = _header(tri)
    done = 0
    if path.exists():
        with path.open() as f:
            first = f.readline()
        try:
            old = json.loads(first)
        except json.JSONDecodeError:
            old = None
        if old == header:
            done = _scan(path)[0]
        else:
            path.unlink()
    with path.open("a") as f:
        if done == 0 and path.stat().st_size == 0:
            f.write(_line(header))
        for N in range(done + 1, tri.n_max + 1):
            lo, hi = tri.l_range(N)
            m = N // tri.k
            for l in range(lo, hi + 1):
                f.write(_line({"N": N, "r": m - l, "v": encode_value(tri.coeff(l, N))}))
        for r, v in enumerate(tri.last_row()):
            f.write(_line({"state": tri.n_max, "r": r, "v": encode_value(v)}))
        f.write(_line({"checkpoint": tri.n_max}))
    return path


def _scan(path: Path):
    """(last checkpoint N, header, coefficient lines, state lines of that checkpoint)."""
    header, coeffs, state, pending = None, [], [], []
    last = 0
    with path.open() as f:
        for raw in f:
            if not raw.endswith("\n"):
                break  # torn final write
            obj = json.loads(raw)
            if header is None:
                header = obj
            elif "checkpoint" in obj:
                last, state, pending = obj["checkpoint"], pending, []
            elif "state" in obj:
                pending.append(obj)
            else:
                coeffs.append(obj)
    return last, header, [c for c in coeffs if c["N"] <= last], state


def load_triangle(cache_dir, h: int, k: int, mode: str, precision_bits: Optional[int]) -> Optional[CoeffTriangle]:
    path = cache_path(cache_dir, h, k, mode, precision_bits)
    if not path.exists():
        return None
    last, header, coeff_lines, state_lines = _scan(path)
    if header is None or header.get("schema") != SCHEMA or last == 0:
        return None
    tri = CoeffTriangle(h, k, header["n_cap"], mode, header["precision_bits"], header["l_keep"],
                        r_cap=header["r_cap"])
    coeffs: dict[int, dict] = {}
    for c in coeff_lines:
        coeffs.setdefault(c["N"], {})[c["r"]] = decode_value(c["v"], mode, k, tri.precision_bits)
    packed = {}
    for N in range(1, last + 1):
        lo, hi = tri.l_range(N)
        m = N // k
        row = coeffs.get(N, {})
        packed[N] = tuple(row[m - l] for l in range(lo, hi + 1))
    state = [decode_value(s["v"], mode, k, tri.precision_bits) for s in sorted(state_lines, key=lambda s: s["r"])]
    tri._restore(last, packed, {}, state)
    return tri
