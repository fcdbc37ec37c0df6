from fractions import Fraction as F

import gmpy2
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rademacher import EXACT, FLOAT, ParameterError, coeff_sequence, rademacher_limit
from rademacher.analysis import (
    ExtremaReport,
    close_encounter,
    coeff_in_r_scan,
    congruence_scan,
    conjecture2_check,
    extrema_of,
    extrema_ratios,
    find_extrema,
    fit_topdown,
    table_24l,
)
from rademacher.exact import RatPoly

# -- extrema ------------------------------------------------------------------


def test_extrema_plateau_and_endpoints():
    vals = {1: F(0), 2: F(1), 3: F(1), 4: F(0), 5: F(-2), 6: F(3)}
    mx, mn = extrema_of(vals)
    assert [n for n, _ in mx] == [2, 3]
    assert [n for n, _ in mn] == [5]


def test_extrema_stride_uses_residue_classes():
    vals = {n: F((-1) ** n * n) for n in range(1, 12)}
    mx, mn = extrema_of(vals, stride=1)
    assert [n for n, _ in mx] == [2, 4, 6, 8, 10]
    mx2, mn2 = extrema_of(vals, stride=2)
    assert mx2 == [] and mn2 == []


def test_extrema_stride_must_be_positive():
    with pytest.raises(ParameterError):
        extrema_of({1: F(0)}, stride=0)


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=30))
def test_extrema_definition(ys):
    vals = {i: F(y) for i, y in enumerate(ys)}
    mx, mn = extrema_of(vals)
    for n in range(1, len(ys) - 1):
        is_max = ys[n] >= ys[n - 1] and ys[n] >= ys[n + 1]
        is_min = ys[n] <= ys[n - 1] and ys[n] <= ys[n + 1]
        assert (n in dict(mx)) == is_max
        assert (n in dict(mn)) == is_min


def test_find_extrema_small_range():
    rep = find_extrema(0, 1, 1, 150, mode=EXACT)
    assert rep.max_positions == [3, 4, 33, 66, 99, 131]
    assert rep.min_positions == [18, 50, 83, 115, 147]
    ratios = extrema_ratios(rep)
    assert ratios[0] == 1


def test_find_extrema_needs_room():
    with pytest.raises(ParameterError):
        find_extrema(0, 1, 3, 4, mode=EXACT)


def test_ratios_skip_zero_divisor():
    rep = ExtremaReport(0, 1, 1, 1, (1, 10), EXACT, None, maxima=[(2, F(0)), (5, F(3)), (8, F(6))])
    assert extrema_ratios(rep) == [None, 2]


def test_congruence_windows_are_inclusive():
    rep = ExtremaReport(0, 1, 1, 1, (1, 200), EXACT, None,
                        maxima=[(n, F(0)) for n in (35, 67, 99, 130)], minima=[(n, F(0)) for n in (51, 83)])
    (a, b) = congruence_scan(rep, 32, [(35, 99), (100, 130)])
    assert a.max_residues == (3,) and a.max_unique
    assert a.min_residues == (19,)
    assert b.max_residues == (2,) and b.min_residues == ()


def test_float_and_exact_extrema_agree():
    e = find_extrema(1, 2, 1, 120, stride=2, mode=EXACT)
    f = find_extrema(1, 2, 1, 120, stride=2, mode=FLOAT)
    assert e.max_positions == f.max_positions
    assert e.min_positions == f.min_positions


# -- close encounters ---------------------------------------------------------


def test_close_encounter_is_argmin():
    row = close_encounter(0, 1, 2, n_max=90, mode=EXACT)
    R = rademacher_limit(0, 1, 2).value
    with gmpy2.context(precision=200):
        for v in coeff_sequence(0, 1, 2, 2, 90, EXACT, numeric_bits=256):
            assert abs(v.numeric - R) >= row.distance * (1 - gmpy2.mpfr(2) ** -100)
    assert row.B == 47


def test_close_encounter_float_confirms_exactly():
    row = close_encounter(0, 1, 1, n_max=100, mode=FLOAT)
    assert row.B == 25
    assert row.confirmed_exact
    exact = close_encounter(0, 1, 1, n_max=100, mode=EXACT)
    assert row.distance == exact.distance


def test_table_24l_small():
    rows = table_24l(2)
    assert [r.N for r in rows] == [24, 48]
    assert abs(float(rows[0].ratio) - 1.0183462059) < 1e-9
    with pytest.raises(ValueError):
        table_24l(0)


# -- top-down -----------------------------------------------------------------


def test_topdown_prediction_far_out():
    f = fit_topdown(0, 1, 3)
    assert f.ok
    v = coeff_sequence(0, 1, 200 - 3, 200, 200, EXACT)[0]
    assert f.predict(200) == v.exact


def test_topdown_without_hypothesis():
    f = fit_topdown(1, 3, 1)
    assert not f.ok
    assert f.failure == "no hypothesis"
    assert "no formula" in f.expression()


def test_topdown_rejects_bad_input():
    with pytest.raises(ValueError):
        fit_topdown(1, 2, 1, residue=2)
    with pytest.raises(ValueError):
        fit_topdown(0, 1, -1)
    with pytest.raises(ValueError):
        fit_topdown(0, 1, 1, mode=FLOAT)


def test_topdown_detects_wrong_degree():
    f = fit_topdown(0, 1, 3, slack=-2)
    assert not f.ok
    assert "not a polynomial" in f.failure


def test_coeff_in_r_s3():
    fit = coeff_in_r_scan(3)
    assert fit.ok
    expected = RatPoly([0, 173964, -257509, 42939, 40706, -300, 200]) * F(-1, 150 * 9**3)
    assert fit.poly == expected


def test_conjecture2_evidence():
    entries = conjecture2_check(4)
    assert entries[0].skipped
    for e in entries[1:]:
        assert e.ok, (e.r, e.checks)
