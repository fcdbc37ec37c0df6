"""Exact arithmetic: rationals, polynomials, cyclotomic fields, truncated series."""
from .cyclo import CycloElem, cyclo_inv, cyclo_mul, embed_complex, euler_phi, root_of_unity
from .poly import RatPoly, cyclotomic_poly, interpolate
from .rational import Rational, format_rational, parse_rational
from .series import TruncSeries, series_inv

__all__ = [
    "CycloElem",
    "RatPoly",
    "Rational",
    "TruncSeries",
    "cyclo_inv",
    "cyclo_mul",
    "cyclotomic_poly",
    "embed_complex",
    "euler_phi",
    "format_rational",
    "interpolate",
    "parse_rational",
    "root_of_unity",
    "series_inv",
]
