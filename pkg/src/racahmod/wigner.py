"""Triangle condition, Delta factors, Clebsch-Gordan coefficients and the
Racah-Wigner 6j-symbol, all in exact arithmetic.

Every angular momentum crosses this API as a twice-value: the integer 2j.
That keeps all intermediate quantities integral and makes half-integer inputs
impossible to mistype.  A failed triangle is a defined zero, not an error,
for delta/cgc/sixj alike.

The 6j-symbol is evaluated by two independent published formulas: a
single-sum form with a product of four Delta factors in front, and a second
single-sum form whose prefactor is a ratio of R factors.  With cross-checking
on (the default) both are evaluated and compared exactly; sweep drivers turn
the cross-check off after the equality has been established over their box.
"""

from __future__ import annotations

import concurrent.futures
import os
from fractions import Fraction
from typing import Callable, Sequence

from .exact import SqrtRational, sqrtrat_sum_is_zero

SixJInput = tuple[int, int, int, int, int, int]

_FACT = [1]


def _fact(n: int) -> int:
    while len(_FACT) <= n:
        _FACT.append(_FACT[-1] * len(_FACT))
    return _FACT[n]


class FormulaDisagreement(RuntimeError):
    """The two independent 6j evaluations differ: an implementation bug."""


def _check_twoj(*vals: int) -> None:
    for v in vals:
        if v < 0 or not isinstance(v, int):
            raise ValueError(f"twice-values must be non-negative integers, got {v}")


def triangle(ta: int, tb: int, tc: int) -> bool:
    """Triangle condition on twice-values: |ta-tb| <= tc <= ta+tb, even sum."""
    _check_twoj(ta, tb, tc)
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


def _delta_sq(ta: int, tb: int, tc: int) -> Fraction:
    # assumes the triangle condition
    return Fraction(
        _fact((ta + tb - tc) // 2) * _fact((ta - tb + tc) // 2) * _fact((-ta + tb + tc) // 2),
        _fact((ta + tb + tc) // 2 + 1),
    )


def delta(ta: int, tb: int, tc: int) -> SqrtRational:
    """Delta(j1,j2,j3) = sqrt((j1+j2-j3)!(j1-j2+j3)!(-j1+j2+j3)!/(j1+j2+j3+1)!),
    and exactly 0 when the triangle condition fails."""
    if not triangle(ta, tb, tc):
        return SqrtRational(Fraction(0))
    return SqrtRational.sqrt_of(_delta_sq(ta, tb, tc))


def cgc(tj1: int, tm1: int, tj2: int, tm2: int, tj3: int, tm3: int) -> SqrtRational:
    """Clebsch-Gordan coefficient C^{j3,m3}_{j1,m1; j2,m2}, twice-value inputs.

    Zero when m1 + m2 != m3 or the triangle fails; |m| > j or a j/m parity
    mismatch is a domain error.
    """
    _check_twoj(tj1, tj2, tj3)
    for tj, tm in ((tj1, tm1), (tj2, tm2), (tj3, tm3)):
        if abs(tm) > tj:
            raise ValueError(f"|m| > j for (2j, 2m) = ({tj}, {tm})")
        if (tj + tm) % 2:
            raise ValueError(f"j and m differ by a non-integer: (2j, 2m) = ({tj}, {tm})")
    if tm1 + tm2 != tm3 or not triangle(tj1, tj2, tj3):
        return SqrtRational(Fraction(0))
    pref_sq = (
        _delta_sq(tj1, tj2, tj3)
        * (tj3 + 1)
        * _fact((tj1 + tm1) // 2)
        * _fact((tj1 - tm1) // 2)
        * _fact((tj2 + tm2) // 2)
        * _fact((tj2 - tm2) // 2)
        * _fact((tj3 + tm3) // 2)
        * _fact((tj3 - tm3) // 2)
    )
    a12 = (tj1 + tj2 - tj3) // 2
    a1m = (tj1 - tm1) // 2
    a2m = (tj2 + tm2) // 2
    b1 = (tj3 - tj2 + tm1) // 2  # may be negative
    b2 = (tj3 - tj1 - tm2) // 2  # may be negative
    total = Fraction(0)
    for r in range(max(0, -b1, -b2), min(a12, a1m, a2m) + 1):
        denom = (
            _fact(r)
            * _fact(a12 - r)
            * _fact(a1m - r)
            * _fact(a2m - r)
            * _fact(b1 + r)
            * _fact(b2 + r)
        )
        total += Fraction((-1) ** r, denom)
    return SqrtRational.sqrt_of(pref_sq) * total


# -- 6j-symbol ---------------------------------------------------------------


def _sixj_triples(tj: SixJInput):
    t1, t2, t3, t4, t5, t6 = tj
    return ((t1, t2, t3), (t1, t5, t6), (t4, t2, t6), (t4, t5, t3))


def sixj_triangles_hold(tj: SixJInput) -> bool:
    return all(triangle(*tri) for tri in _sixj_triples(tj))


def _alpha_sum(t1, t2, t3, t4, t5, t6) -> tuple[int, int]:
    """Integerized single sum of the Delta-prefactor formula.

    Returns (N, K) with the sum equal to N/K; the tuple's four triangles must
    hold.  All arithmetic is bigint: each term is scaled by falling-factorial
    ratios against the extreme summation limits.
    """
    a0 = (t1 + t2 + t3) // 2
    a1 = (t1 + t5 + t6) // 2
    a2 = (t4 + t2 + t6) // 2
    a3 = (t4 + t5 + t3) // 2
    b1 = (t2 + t3 + t5 + t6) // 2
    b2 = (t1 + t3 + t4 + t6) // 2
    b3 = (t1 + t2 + t4 + t5) // 2
    tmin = max(a0, a1, a2, a3)
    tmax = min(b1, b2, b3)
    fact = _fact
    fact(tmax + 1)
    f = _FACT
    k_const = f[tmax - a0] * f[tmax - a1] * f[tmax - a2] * f[tmax - a3]
    k_const *= f[b1 - tmin] * f[b2 - tmin] * f[b3 - tmin]
    total = 0
    for t in range(tmin, tmax + 1):
        term = f[t + 1]
        term *= (f[tmax - a0] // f[t - a0]) * (f[tmax - a1] // f[t - a1])
        term *= (f[tmax - a2] // f[t - a2]) * (f[tmax - a3] // f[t - a3])
        term *= (f[b1 - tmin] // f[b1 - t]) * (f[b2 - tmin] // f[b2 - t])
        term *= f[b3 - tmin] // f[b3 - t]
        total += -term if t & 1 else term
    return total, k_const


def _def_sum(t1, t2, t3, t4, t5, t6) -> Fraction:
    """Single sum of the R-ratio formula, as an exact fraction."""
    n1 = (-t1 + t5 + t6) // 2
    n2 = (t2 - t4 + t6) // 2
    n3 = (t1 + t3 + t4 - t6) // 2
    d2 = (t1 + t5 - t6) // 2
    d3 = (t2 + t4 - t6) // 2
    d4 = (-t1 + t3 - t4 + t6) // 2  # may be negative
    d5 = t6 + 1
    total = Fraction(0)
    for t in range(max(0, -d4), min(d2, d3, n3) + 1):
        num = _fact(n1 + t) * _fact(n2 + t) * _fact(n3 - t)
        den = _fact(t) * _fact(d2 - t) * _fact(d3 - t) * _fact(d4 + t) * _fact(d5 + t)
        total += Fraction(-num if t & 1 else num, den)
    return total


def _r_sq(tx: int, ty: int, tz: int) -> Fraction:
    """Square of R^z_{x,y} = sqrt((jx+jy-jz)! / ((jx-jy+jz)!(-jx+jy+jz)!(jx+jy+jz+1)!))."""
    return Fraction(
        _fact((tx + ty - tz) // 2),
        _fact((tx - ty + tz) // 2)
        * _fact((-tx + ty + tz) // 2)
        * _fact((tx + ty + tz) // 2 + 1),
    )


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sixj(
    tj1: int, tj2: int, tj3: int, tj4: int, tj5: int, tj6: int, *, cross_check: bool = True
) -> SqrtRational:
    """The 6j-symbol {j1 j2 j3; j4 j5 j6} on twice-values.

    Returns exactly 0 when any of the four triangle triples fails.  With
    cross_check on, both independent formulas are evaluated and must agree
    exactly; a mismatch raises FormulaDisagreement.
    """
    tj = (tj1, tj2, tj3, tj4, tj5, tj6)
    _check_twoj(*tj)
    if not sixj_triangles_hold(tj):
        return SqrtRational(Fraction(0))
    n, k = _alpha_sum(*tj)
    s_a = Fraction(n, k)
    p_a = Fraction(1)
    for tri in _sixj_triples(tj):
        p_a *= _delta_sq(*tri)
    if cross_check:
        s_b = _def_sum(*tj)
        q_b = (_r_sq(tj2, tj3, tj1) * _r_sq(tj3, tj5, tj4)) / (
            _r_sq(tj5, tj6, tj1) * _r_sq(tj2, tj6, tj4)
        )
        sign_b = -1 if ((tj1 + tj2 + tj4 + tj5) // 2) & 1 else 1
        if p_a * s_a * s_a != q_b * s_b * s_b or _sign(s_a) != sign_b * _sign(s_b):
            raise FormulaDisagreement(f"6j formulas disagree at {tj}")
    return SqrtRational.sqrt_of(p_a) * s_a


def sixj_is_zero(tj: SixJInput) -> bool:
    """Fast exact zero test (single formula, integer arithmetic only)."""
    if not sixj_triangles_hold(tj):
        return True
    return _alpha_sum(*tj)[0] == 0


# -- three-term recurrence ----------------------------------------------------


def be_coefficients(
    ti1: int, ti2: int, ti3: int, ti4: int, ti5: int, ti6: int
) -> tuple[SqrtRational, Fraction]:
    """Coefficients (E(i1), F(i1)) of the three-term recurrence in i1.

    Inputs are twice-values of the half-integers i1..i6.  E is the square root
    of a product of four quadratic factors; outside the triangle windows that
    product can go negative, which raises rather than leaving the reals.
    """
    i1, i2, i3, i4, i5, i6 = (Fraction(t, 2) for t in (ti1, ti2, ti3, ti4, ti5, ti6))
    e_sq = (
        (i1 * i1 - (i2 - i3) ** 2)
        * ((i2 + i3 + 1) ** 2 - i1 * i1)
        * (i1 * i1 - (i5 - i6) ** 2)
        * ((i5 + i6 + 1) ** 2 - i1 * i1)
    )
    if e_sq < 0:
        raise ValueError(f"E coefficient is imaginary at {(ti1, ti2, ti3, ti4, ti5, ti6)}")
    c1 = i1 * (i1 + 1)
    c2 = i2 * (i2 + 1)
    c3 = i3 * (i3 + 1)
    c4 = i4 * (i4 + 1)
    c5 = i5 * (i5 + 1)
    c6 = i6 * (i6 + 1)
    f_val = (2 * i1 + 1) * (
        c1 * (-c1 + c2 + c3) + c5 * (c1 + c2 - c3) + c6 * (c1 - c2 + c3) - 2 * c1 * c4
    )
    return SqrtRational.sqrt_of(e_sq), f_val


def be_recurrence_terms(
    ti1: int, ti2: int, ti3: int, ti4: int, ti5: int, ti6: int
) -> list[SqrtRational]:
    """The three terms of i1 E(i1+1) {i1+1 ...} + F(i1) {i1 ...} + (i1+1) E(i1) {i1-1 ...}.

    The 6j at i1 - 1 is the defined zero when its triangles fail (that case
    never contributes: E(i1) vanishes there whenever the others are defined).
    """
    i1 = Fraction(ti1, 2)
    e_up = be_coefficients(ti1 + 2, ti2, ti3, ti4, ti5, ti6)[0]
    e_dn, f_mid = be_coefficients(ti1, ti2, ti3, ti4, ti5, ti6)
    val_up = sixj(ti1 + 2, ti2, ti3, ti4, ti5, ti6, cross_check=False)
    val_mid = sixj(ti1, ti2, ti3, ti4, ti5, ti6, cross_check=False)
    val_dn = (
        sixj(ti1 - 2, ti2, ti3, ti4, ti5, ti6, cross_check=False)
        if ti1 >= 2
        else SqrtRational(Fraction(0))
    )
    return [i1 * (e_up * val_up), f_mid * val_mid, (i1 + 1) * (e_dn * val_dn)]


def be_recurrence_holds(ti1, ti2, ti3, ti4, ti5, ti6) -> bool:
    return sqrtrat_sum_is_zero(be_recurrence_terms(ti1, ti2, ti3, ti4, ti5, ti6))


# -- zero search ---------------------------------------------------------------


def _triangle_range(ta: int, tb: int, cap: int):
    return range(abs(ta - tb), min(ta + tb, cap) + 1, 2)


def _zero_scan_chunk(args) -> list[SixJInput]:
    t1, bounds = args
    b1, b2, b3, b4, b5, b6 = bounds
    found: list[SixJInput] = []
    for t2 in range(b2 + 1):
        for t3 in _triangle_range(t1, t2, b3):
            for t4 in range(b4 + 1):
                for t5 in _triangle_range(t4, t3, b5):
                    lo = max(abs(t1 - t5), abs(t4 - t2))
                    hi = min(t1 + t5, t4 + t2, b6)
                    if (t1 + t5 + t4 + t2) % 2:  # the two t6 parities conflict
                        continue
                    start = lo if (lo + t1 + t5) % 2 == 0 else lo + 1
                    for t6 in range(start, hi + 1, 2):
                        if _alpha_sum(t1, t2, t3, t4, t5, t6)[0] == 0:
                            found.append((t1, t2, t3, t4, t5, t6))
    return found


def find_sixj_zeros(
    bounds: int | Sequence[int],
    predicate: Callable[[SixJInput], bool] | None = None,
    jobs: int = 1,
) -> list[SixJInput]:
    """All non-trivial 6j zeros inside the box of twice-values.

    A zero is non-trivial when all four triangle triples hold yet the symbol
    vanishes; defined zeros are suppressed.  Output is sorted
    lexicographically on the twice-value tuple and is independent of the
    worker count.
    """
    if isinstance(bounds, int):
        bounds = (bounds,) * 6
    bounds = tuple(int(b) for b in bounds)
    if len(bounds) != 6 or any(b < 0 for b in bounds):
        raise ValueError("bounds must be one or six non-negative integers")
    tasks = [(t1, bounds) for t1 in range(bounds[0] + 1)]
    if jobs <= 1 or len(tasks) <= 1:
        chunks = map(_zero_scan_chunk, tasks)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_zero_scan_chunk, tasks))
    out: list[SixJInput] = []
    for chunk in chunks:
        out.extend(chunk)
    if predicate is not None:
        out = [tj for tj in out if predicate(tj)]
    return out


def default_jobs() -> int:
    return os.cpu_count() or 1


def dual_formula_agreement(max_twoj: int) -> int:
    """Evaluate every tuple in the box with both formulas; returns the count.

    Raises FormulaDisagreement at the first mismatch, so a return means the
    two evaluations agree on the whole box.
    """
    count = 0
    for t1 in range(max_twoj + 1):
        for t2 in range(max_twoj + 1):
            for t3 in _triangle_range(t1, t2, max_twoj):
                for t4 in range(max_twoj + 1):
                    for t5 in _triangle_range(t4, t3, max_twoj):
                        if (t1 + t5 + t4 + t2) % 2:
                            continue
                        lo = max(abs(t1 - t5), abs(t4 - t2))
                        hi = min(t1 + t5, t4 + t2, max_twoj)
                        start = lo if (lo + t1 + t5) % 2 == 0 else lo + 1
                        for t6 in range(start, hi + 1, 2):
                            sixj(t1, t2, t3, t4, t5, t6, cross_check=True)
                            count += 1
    return count
