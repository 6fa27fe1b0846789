"""State-sum evaluation tests.

The load-bearing oracle is `_brute_sum`, the three summation formulas
written as naive Python loops over fresh root-of-unity powers.
"""

import cmath
import math

import numpy as np
import pytest

from knotvol.cyclo import ExactBudgetError
from knotvol.invariant import (
    MODES,
    InvariantValue,
    LogComplex,
    _SumSpace,
    alexander_check,
    growth_point,
    pochhammer_table,
    quantum_invariant,
)
from knotvol.knots import KnotId

PI = math.pi


def _fresh_pochhammer(order):
    # (omega)_k by direct product, no recurrences shared with the package
    out = [1 + 0j]
    for k in range(1, order):
        out.append(math.prod(1 - cmath.exp(2j * PI * j / order) for j in range(1, k + 1)))
    return out


def _brute_sum(knot, order):
    w = cmath.exp(2j * PI / order)
    poch = _fresh_pochhammer(order)
    n = order
    if knot is KnotId.FOUR_ONE:
        return sum(abs(poch[k]) ** 2 for k in range(n))
    if knot is KnotId.FIVE_TWO:
        return sum(
            poch[l] ** 2 / poch[k].conjugate() * w ** (-k * (l + 1))
            for k in range(n)
            for l in range(k, n)
        )
    return sum(
        abs(poch[m]) ** 2
        / (poch[k] * poch[l].conjugate())
        * w ** ((m - k - l) * (m - k + 1))
        for k in range(n)
        for l in range(n)
        for m in range(k + l, n)
        if k + l <= m
    )


# --- LogComplex ---

def test_logcomplex_roundtrip():
    for z in (1 + 0j, -2.5 + 1j, 3e-200j, -1e150 - 2e150j):
        lc = LogComplex.from_complex(z)
        # log/exp round trips lose about |log_mag| ulps
        tol = (4.0 + abs(lc.log_mag)) * 2e-16
        assert abs(lc.to_complex() - z) <= tol * abs(z)


def test_logcomplex_zero():
    zero = LogComplex.from_complex(0j)
    assert zero.is_zero and zero.to_complex() == 0j


def test_logcomplex_arg_convention():
    assert LogComplex.from_complex(-1 + 0j).arg == PI
    a = LogComplex.from_complex(-1 + 0j) * LogComplex.from_complex(-1 + 0j)
    assert a.arg == 0.0 and abs(a.log_mag) <= 1e-15


def test_logcomplex_mul_div():
    x = LogComplex.from_complex(3 - 4j)
    y = LogComplex.from_complex(-0.5 + 2j)
    prod = (x * y).to_complex()
    quot = (x / y).to_complex()
    assert abs(prod - (3 - 4j) * (-0.5 + 2j)) <= 1e-14 * abs(prod)
    assert abs(quot - (3 - 4j) / (-0.5 + 2j)) <= 1e-14 * abs(quot)


def test_logcomplex_overflow_guard():
    big = LogComplex(log_mag=800.0, arg=0.0)
    with pytest.raises(OverflowError):
        big.to_complex()
    assert (big / big).to_complex() == 1 + 0j


# --- pochhammer table ---

def test_table_matches_fresh_products():
    for order in (1, 2, 3, 7, 25, 100):
        table = pochhammer_table(order)
        fresh = _fresh_pochhammer(order)
        for k in range(order):
            assert abs(complex(table.values[k]) - fresh[k]) <= 1e-12 * abs(fresh[k])


def test_table_log_fields_consistent():
    table = pochhammer_table(60)
    assert complex(table.values[0]) == 1 + 0j
    assert table.log_mag[0] == 0.0
    assert np.all(table.arg > -PI) and np.all(table.arg <= PI)
    mags = np.exp(table.log_mag)
    assert np.max(np.abs(mags - np.abs(table.values)) / mags) <= 1e-12
    # wrapped accumulated phases agree with the per-value phases
    circ = np.abs(np.exp(1j * (table.arg - np.angle(table.values))) - 1.0)
    assert np.max(circ) <= 1e-10
    assert abs(complex(table.omega_pow[1]) - cmath.exp(2j * PI / 60)) <= 1e-15


# --- enumeration order ---

def test_sum_space_decode_matches_nested_loops():
    n = 7
    table = pochhammer_table(n)

    space = _SumSpace(KnotId.FIVE_TWO, table)
    got = list(zip(*(a.tolist() for a in space._indices(0, space.total))))
    want = [(k, l) for k in range(n) for l in range(k, n)]
    assert got == want

    space = _SumSpace(KnotId.SIX_ONE, table)
    got = list(zip(*(a.tolist() for a in space._indices(0, space.total))))
    want = [(k, l, m) for k in range(n) for l in range(n - k) for m in range(k + l, n)]
    assert got == want

    # decoding a sub-range must agree with slicing the full decode
    sub = list(zip(*(a.tolist() for a in space._indices(5, 17))))
    assert sub == want[5:17]


# --- values ---

def test_order_one_is_one():
    for knot in KnotId:
        for mode in MODES:
            v = quantum_invariant(knot, 1, mode)
            assert v.term_count == 1
            assert abs(v.value_complex - 1) <= 1e-15


def test_order_two_gives_determinants():
    expected = {KnotId.FOUR_ONE: 5, KnotId.FIVE_TWO: 7, KnotId.SIX_ONE: 9}
    for knot, det in expected.items():
        for mode in MODES:
            v = quantum_invariant(knot, 2, mode)
            assert abs(v.value_complex - det) <= 1e-12


def test_four_one_small_orders():
    assert abs(quantum_invariant(KnotId.FOUR_ONE, 3).value_complex - 13) <= 1e-12
    assert abs(quantum_invariant(KnotId.FOUR_ONE, 4).value_complex - 27) <= 1e-12


def test_all_modes_match_brute_sums():
    for knot in KnotId:
        for order in range(1, 21):
            ref = _brute_sum(knot, order)
            for mode in MODES:
                v = quantum_invariant(knot, order, mode).value_complex
                assert abs(v - ref) <= 1e-10 * abs(ref), (knot, order, mode)


def test_direct_and_logscale_agree_to_high_order():
    for knot in KnotId:
        for order in range(1, 101):
            d = quantum_invariant(knot, order, "direct").value_complex
            l = quantum_invariant(knot, order, "logscale").value_complex
            assert abs(d - l) <= 1e-9 * abs(d), (knot, order)


def test_four_one_values_are_positive_reals():
    for order in (2, 17, 60, 150):
        v = quantum_invariant(KnotId.FOUR_ONE, order, "logscale")
        assert v.value_log.arg == 0.0
        assert v.value_complex.real > 0
    d = quantum_invariant(KnotId.FOUR_ONE, 60, "direct")
    assert abs(d.value_complex.imag) <= 1e-12 * d.value_complex.real


def test_four_one_growth_is_monotone():
    logs = [
        quantum_invariant(KnotId.FOUR_ONE, n).value_log.log_mag
        for n in range(1, 501)
    ]
    assert all(b > a for a, b in zip(logs, logs[1:]))


def test_growth_point():
    order, log_abs = growth_point(KnotId.FIVE_TWO, 40)
    assert order == 40
    assert log_abs == quantum_invariant(KnotId.FIVE_TWO, 40).value_log.log_mag


def test_high_order_logscale_growth_rate():
    # far beyond the direct-mode ceiling the growth rate must sit near
    # 2 pi log|<4_1>| / N ~ 2.0299
    v = quantum_invariant(KnotId.FOUR_ONE, 4000, "logscale")
    assert v.value_complex is None  # not representable as a double
    rate = 2 * PI * v.value_log.log_mag / 4000
    assert abs(rate - 2.02988321) <= 0.03


def test_direct_mode_overflow_refusals():
    with pytest.raises(OverflowError, match="table log"):
        quantum_invariant(KnotId.FOUR_ONE, 4000, "direct")
    with pytest.raises(OverflowError, match="term log"):
        quantum_invariant(KnotId.FIVE_TWO, 2000, "direct")
    with pytest.raises(OverflowError):
        quantum_invariant(KnotId.SIX_ONE, 2000, "direct")


def test_exact_mode_budget_refusal():
    with pytest.raises(ExactBudgetError):
        quantum_invariant(KnotId.SIX_ONE, 200, "exact")


def test_input_validation():
    with pytest.raises(ValueError):
        quantum_invariant(KnotId.FOUR_ONE, 0)
    with pytest.raises(ValueError):
        quantum_invariant(KnotId.FOUR_ONE, 5, "fast")
    with pytest.raises(ValueError):
        quantum_invariant(KnotId.FOUR_ONE, 5, threads=0)
    with pytest.raises(ValueError):
        quantum_invariant(KnotId.FOUR_ONE, 5, chunk_size=0)


def test_thread_count_never_changes_bits():
    for knot, order in ((KnotId.SIX_ONE, 60), (KnotId.FIVE_TWO, 113)):
        for mode in ("direct", "logscale"):
            one = quantum_invariant(knot, order, mode, threads=1)
            two = quantum_invariant(knot, order, mode, threads=2)
            eight = quantum_invariant(knot, order, mode, threads=8)
            assert one == two == eight


def test_repeat_runs_are_identical():
    a = quantum_invariant(KnotId.SIX_ONE, 45, "logscale", threads=4)
    b = quantum_invariant(KnotId.SIX_ONE, 45, "logscale", threads=4)
    assert a == b


def test_error_estimates_are_small_and_nonnegative():
    # the estimate weights by sum(|term|), so phase cancellation (worst
    # for 6_1) inflates it well above the true deviation; it must still
    # stay far below any tolerance the identities run at
    for knot in KnotId:
        for order in (2, 30, 100):
            v = quantum_invariant(knot, order, "logscale")
            assert 0.0 <= v.accum_error_estimate <= 1e-7
        e = quantum_invariant(knot, 15, "exact")
        assert 0.0 <= e.accum_error_estimate <= 1e-12


def test_result_fields():
    v = quantum_invariant(KnotId.SIX_ONE, 10, "direct")
    assert isinstance(v, InvariantValue)
    assert v.knot is KnotId.SIX_ONE and v.order == 10 and v.mode == "direct"
    assert v.term_count == sum(10 - k - l for k in range(10) for l in range(10 - k))
    assert abs(v.value_log.to_complex() - v.value_complex) <= 1e-12 * abs(
        v.value_complex
    )


def test_alexander_check():
    report = alexander_check()
    assert report.passed
    assert {str(k): int(val) for k, val in report.exact.items()} == {
        "4_1": 5,
        "5_2": 7,
        "6_1": 9,
    }
    for knot, det in report.numeric.items():
        assert abs(det - report.expected[knot]) <= 1e-12
