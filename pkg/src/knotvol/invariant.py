"""State-sum evaluation of the quantum invariants <4_1>, <5_2>, <6_1>.

The invariants are finite sums over residues mod N of ratios of the partial
products (omega)_k = prod_{j<=k} (1 - omega^j), omega = exp(2*pi*i/N):

    <4_1> = sum_k |(omega)_k|^2
    <5_2> = sum_{k<=l} (omega)_l^2 / (omega)_k^*  * omega^(-k(l+1))
    <6_1> = sum_{k+l<=m} |(omega)_m|^2 / ((omega)_k (omega)_l^*)
                                       * omega^((m-k-l)(m-k+1))

The moduli |(omega)_k| swing like exp(+-0.16 N), so besides the plain
"direct" complex evaluation there is a "logscale" mode that keeps every
term as (log magnitude, argument) and sums with a running rescale, and an
"exact" mode that delegates to cyclotomic field arithmetic.  Summation is
chunked, each chunk reduced by numpy's pairwise sum and the chunks merged
along a fixed binary tree, so results are bit-identical for any worker
count.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import cyclo
from .knots import KnotId

__all__ = [
    "MODES",
    "KnotId",
    "LogComplex",
    "PochhammerTable",
    "InvariantValue",
    "AlexanderReport",
    "pochhammer_table",
    "quantum_invariant",
    "growth_point",
    "alexander_check",
]

MODES = ("direct", "logscale", "exact")

_EPS = 2.0 ** -53
# direct mode is refused when table entries pass this log-magnitude level
_DIRECT_TABLE_LOG_LIMIT = 600.0
# ... or when a term magnitude bound would approach the double-float ceiling
_DIRECT_TERM_LOG_LIMIT = 690.0
_EXP_OVERFLOW_LOG = 709.0


def _wrap_angle(a):
    """Wrap angles (scalar or array) into (-pi, pi]."""
    return math.pi - np.remainder(math.pi - np.asarray(a), 2.0 * math.pi)


@dataclass(frozen=True)
class LogComplex:
    """A complex number as (log magnitude, argument), safe far past 1e308.

    The argument is kept in (-pi, pi].  A zero is flagged explicitly since
    it has no log magnitude.
    """

    log_mag: float
    arg: float
    is_zero: bool = False

    @classmethod
    def from_complex(cls, z: complex) -> "LogComplex":
        z = complex(z)
        if z == 0:
            return cls(float("-inf"), 0.0, True)
        return cls(
            math.log(abs(z)), float(_wrap_angle(math.atan2(z.imag, z.real)))
        )

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        if self.log_mag > _EXP_OVERFLOW_LOG:
            raise OverflowError(
                f"log magnitude {self.log_mag:.3f} exceeds double range"
            )
        return math.exp(self.log_mag) * cmath.exp(1j * self.arg)

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if self.is_zero or other.is_zero:
            return LogComplex(float("-inf"), 0.0, True)
        return LogComplex(
            self.log_mag + other.log_mag,
            float(_wrap_angle(self.arg + other.arg)),
        )

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        if other.is_zero:
            raise ZeroDivisionError("division by a zero LogComplex")
        if self.is_zero:
            return self
        return LogComplex(
            self.log_mag - other.log_mag,
            float(_wrap_angle(self.arg - other.arg)),
        )


@dataclass(frozen=True)
class PochhammerTable:
    """All N partial products (omega)_k at order N, plain and in log form.

    values[k] is the straight complex product; log_mag[k] and arg[k] carry
    the same numbers in log form, usable long after values[k] overflows.
    omega_pow[j] caches omega^j for exponent lookups.
    """

    order: int
    omega_pow: np.ndarray
    values: np.ndarray
    log_mag: np.ndarray
    arg: np.ndarray


def pochhammer_table(order: int) -> PochhammerTable:
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    n = order
    angles = 2.0 * math.pi * np.arange(n) / n
    omega_pow = np.exp(1j * angles)
    factors = 1.0 - omega_pow  # factors[0] is never used
    with np.errstate(over="ignore"):
        values = np.concatenate(([1.0 + 0j], np.cumprod(factors[1:])))
    log_f = np.concatenate(([0.0], np.log(np.abs(factors[1:]))))
    arg_f = np.concatenate(([0.0], np.angle(factors[1:])))
    log_mag = np.cumsum(log_f)
    arg = _wrap_angle(np.cumsum(arg_f))
    return PochhammerTable(n, omega_pow, values, log_mag, arg)


class _SumSpace:
    """Flat enumeration of one knot's index set at one order.

    Index blocks are laid out lexicographically: (k) for 4_1, (k, l) with
    k <= l for 5_2, (k, l, m) with k + l <= m for 6_1.  Chunks address the
    flat range [lo, hi) and are decoded back with searchsorted, so chunk
    contents depend only on (knot, order, chunk bounds).
    """

    def __init__(self, knot: KnotId, table: PochhammerTable):
        self.knot = knot
        self.table = table
        n = table.order
        if knot is KnotId.FOUR_ONE:
            self.total = n
        elif knot is KnotId.FIVE_TWO:
            sizes = n - np.arange(n)  # l runs k .. n-1
            self._offsets = np.concatenate(([0], np.cumsum(sizes)))
            self.total = int(self._offsets[-1])
        else:
            counts = n - np.arange(n)  # l runs 0 .. n-1-k
            starts = np.concatenate(([0], np.cumsum(counts)))
            self._pair_k = np.repeat(np.arange(n), counts)
            self._pair_l = np.arange(starts[-1]) - np.repeat(starts[:-1], counts)
            blocks = n - self._pair_k - self._pair_l  # m runs k+l .. n-1
            self._pair_offsets = np.concatenate(([0], np.cumsum(blocks)))
            self.total = int(self._pair_offsets[-1])

    def _indices(self, lo: int, hi: int):
        n = self.table.order
        idx = np.arange(lo, hi)
        if self.knot is KnotId.FOUR_ONE:
            return (idx,)
        if self.knot is KnotId.FIVE_TWO:
            k = np.searchsorted(self._offsets, idx, side="right") - 1
            l = k + (idx - self._offsets[k])
            return k, l
        pair = np.searchsorted(self._pair_offsets, idx, side="right") - 1
        k = self._pair_k[pair]
        l = self._pair_l[pair]
        m = k + l + (idx - self._pair_offsets[pair])
        return k, l, m

    def _omega_exponents(self, indices):
        n = self.table.order
        if self.knot is KnotId.FOUR_ONE:
            return np.zeros(len(indices[0]), dtype=np.int64)
        if self.knot is KnotId.FIVE_TWO:
            k, l = indices
            return (-(k * (l + 1))) % n
        k, l, m = indices
        return ((m - k - l) * (m - k + 1)) % n

    def log_terms(self, lo: int, hi: int):
        t = self.table
        indices = self._indices(lo, hi)
        e = self._omega_exponents(indices)
        phase = (2.0 * math.pi / t.order) * e
        if self.knot is KnotId.FOUR_ONE:
            (k,) = indices
            return 2.0 * t.log_mag[k], np.zeros(len(k))
        if self.knot is KnotId.FIVE_TWO:
            k, l = indices
            return (
                2.0 * t.log_mag[l] - t.log_mag[k],
                2.0 * t.arg[l] + t.arg[k] + phase,
            )
        k, l, m = indices
        return (
            2.0 * t.log_mag[m] - t.log_mag[k] - t.log_mag[l],
            t.arg[l] - t.arg[k] + phase,
        )

    def direct_terms(self, lo: int, hi: int) -> np.ndarray:
        t = self.table
        indices = self._indices(lo, hi)
        e = self._omega_exponents(indices)
        if self.knot is KnotId.FOUR_ONE:
            (k,) = indices
            v = t.values[k]
            return v * np.conj(v)
        if self.knot is KnotId.FIVE_TWO:
            k, l = indices
            return t.values[l] ** 2 / np.conj(t.values[k]) * t.omega_pow[e]
        k, l, m = indices
        vm = t.values[m]
        return (
            vm
            * np.conj(vm)
            / (t.values[k] * np.conj(t.values[l]))
            * t.omega_pow[e]
        )

def _direct_term_log_bound(knot: KnotId, table: PochhammerTable) -> float:
    lm = table.log_mag
    hi, lo = float(np.max(lm)), float(np.min(lm))
    if knot is KnotId.FOUR_ONE:
        return 2.0 * hi
    if knot is KnotId.FIVE_TWO:
        return 2.0 * hi - lo
    return 2.0 * hi - 2.0 * lo


@dataclass(frozen=True)
class InvariantValue:
    """One evaluated invariant <knot> at order N.

    value_log always holds the result; value_complex is its plain image
    when that fits in a double, else None.  term_count is the number of
    summands actually enumerated.  accum_error_estimate bounds the
    relative error contributed by summation (not by the term values).
    """

    knot: KnotId
    order: int
    mode: str
    value_log: LogComplex
    value_complex: complex | None
    term_count: int
    accum_error_estimate: float


def _sum_error_factor(count: int) -> float:
    return _EPS * (math.ceil(math.log2(count)) + 1 if count > 1 else 1)


def _chunk_logscale(space: _SumSpace, lo: int, hi: int):
    lm, ar = space.log_terms(lo, hi)
    m = float(np.max(lm))
    scaled = np.exp((lm - m) + 1j * ar)
    s = complex(np.sum(scaled))
    a = float(np.sum(np.exp(lm - m)))
    return m, s, a, _sum_error_factor(hi - lo) * a


def _merge_logscale(p, q):
    m1, s1, a1, e1 = p
    m2, s2, a2, e2 = q
    m = m1 if m1 >= m2 else m2
    w1 = math.exp(m1 - m)
    w2 = math.exp(m2 - m)
    a = a1 * w1 + a2 * w2
    return m, s1 * w1 + s2 * w2, a, e1 * w1 + e2 * w2 + _EPS * a


def _chunk_direct(space: _SumSpace, lo: int, hi: int):
    t = space.direct_terms(lo, hi)
    s = complex(np.sum(t))
    a = float(np.sum(np.abs(t)))
    return s, a, _sum_error_factor(hi - lo) * a


def _merge_direct(p, q):
    s1, a1, e1 = p
    s2, a2, e2 = q
    a = a1 + a2
    return s1 + s2, a, e1 + e2 + _EPS * a


def _tree_reduce(items: list, merge):
    while len(items) > 1:
        paired = [
            merge(items[i], items[i + 1]) for i in range(0, len(items) - 1, 2)
        ]
        if len(items) % 2:
            paired.append(items[-1])
        items = paired
    return items[0]


def _map_chunks(compute, total: int, chunk_size: int, threads: int) -> list:
    bounds = [
        (lo, min(lo + chunk_size, total)) for lo in range(0, total, chunk_size)
    ]
    if threads == 1:
        return [compute(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: compute(*b), bounds))


def _exact_value(knot: KnotId, order: int) -> InvariantValue:
    element = cyclo.exact_invariant(knot, order)
    z = element.evaluate_numeric()
    log = LogComplex.from_complex(z)
    # the field element is exact; only its float image rounds
    spread = sum(abs(float(c)) for c in element.coeffs)
    err = 4.0 * _EPS * spread / abs(z) if z != 0 else 0.0
    return InvariantValue(
        knot,
        order,
        "exact",
        log,
        z,
        cyclo.exact_term_count(knot, order),
        err,
    )


def quantum_invariant(
    knot: KnotId,
    order: int,
    mode: str = "logscale",
    threads: int = 1,
    chunk_size: int = 4096,
) -> InvariantValue:
    """Evaluate <knot> at root-of-unity order N = `order`.

    mode "direct" sums plain complex terms and refuses orders whose table
    or term magnitudes could overflow; "logscale" carries log magnitudes
    and has no practical order ceiling; "exact" works in the cyclotomic
    field and is meant for small N oracle checks.  For fixed (knot, order,
    mode, chunk_size) the result is bit-identical for every thread count.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if chunk_size < 1:
        raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")

    if mode == "exact":
        return _exact_value(knot, order)

    table = pochhammer_table(order)

    if mode == "direct":
        table_log = float(np.max(np.abs(table.log_mag)))
        if table_log > _DIRECT_TABLE_LOG_LIMIT:
            raise OverflowError(
                f"direct mode refused: table log magnitude {table_log:.1f} "
                f"exceeds {_DIRECT_TABLE_LOG_LIMIT:.0f}; use logscale"
            )
        term_log = _direct_term_log_bound(knot, table)
        if term_log > _DIRECT_TERM_LOG_LIMIT:
            raise OverflowError(
                f"direct mode refused: term log magnitude bound "
                f"{term_log:.1f} exceeds {_DIRECT_TERM_LOG_LIMIT:.0f}; "
                f"use logscale"
            )

    space = _SumSpace(knot, table)

    if mode == "direct":
        partials = _map_chunks(
            lambda lo, hi: _chunk_direct(space, lo, hi),
            space.total,
            chunk_size,
            threads,
        )
        s, _, err = _tree_reduce(partials, _merge_direct)
        log = LogComplex.from_complex(s)
        rel = err / abs(s) if s != 0 else 0.0
        return InvariantValue(knot, order, mode, log, s, space.total, rel)

    partials = _map_chunks(
        lambda lo, hi: _chunk_logscale(space, lo, hi),
        space.total,
        chunk_size,
        threads,
    )
    m, s, _, err = _tree_reduce(partials, _merge_logscale)
    if s == 0:
        log = LogComplex(float("-inf"), 0.0, True)
        return InvariantValue(knot, order, mode, log, 0j, space.total, 0.0)
    log = LogComplex(
        m + math.log(abs(s)),
        float(_wrap_angle(math.atan2(s.imag, s.real))),
    )
    image = None
    if log.log_mag <= _EXP_OVERFLOW_LOG:
        image = log.to_complex()
    rel = err / abs(s)
    return InvariantValue(knot, order, mode, log, image, space.total, rel)


def growth_point(knot: KnotId, order: int, threads: int = 1) -> tuple[int, float]:
    """(N, log |<knot>|) for the growth-rate fit, always via logscale."""
    value = quantum_invariant(knot, order, "logscale", threads=threads)
    return order, value.value_log.log_mag


# |<L>| at N = 2 equals the knot determinant |Delta_L(-1)|
_DETERMINANT = {KnotId.FOUR_ONE: 5, KnotId.FIVE_TWO: 7, KnotId.SIX_ONE: 9}


@dataclass(frozen=True)
class AlexanderReport:
    expected: dict[KnotId, int]
    exact: dict[KnotId, Fraction]
    numeric: dict[KnotId, float]
    passed: bool


def alexander_check(tolerance: float = 1e-12) -> AlexanderReport:
    """Check |<L>| at N = 2 against the determinants 5, 7, 9.

    The exact route must reproduce the integers exactly (the order-2
    cyclotomic field is Q itself); the direct floating route must agree
    within `tolerance` relative.
    """
    exact: dict[KnotId, Fraction] = {}
    numeric: dict[KnotId, float] = {}
    ok = True
    for knot, expected in _DETERMINANT.items():
        element = cyclo.exact_invariant(knot, 2)
        value = element.coeffs[0]  # degree-1 field: the element is rational
        exact[knot] = abs(value)
        direct = quantum_invariant(knot, 2, "direct")
        assert direct.value_complex is not None
        numeric[knot] = abs(direct.value_complex)
        ok = ok and exact[knot] == expected
        ok = ok and abs(numeric[knot] - expected) <= tolerance * expected
    return AlexanderReport(dict(_DETERMINANT), exact, numeric, ok)
