"""Rearrangement-weighted sequence norms and their two growth scales.

||x|| = (sum_k k^{q/p-1} (x*_k)^q)^{1/q} with x* the decreasing
rearrangement; q < p keeps the weights summable slowly enough that unit
vectors and normalized constant blocks see different exponents: n unit
vectors cost ~ n^{1/p}, while m disjoint normalized blocks of length 2^i
cost ~ m^{1/q}.  The weight partial sums sigma(N) have an exact cumsum
table up to 2^21 and an Euler-Maclaurin tail beyond, carried in log2 form
because block demos push N past the float range long before the norms
themselves grow large.
"""

from __future__ import annotations

import math

import mpmath
import numpy as np

from latmax.constructions.bundles import WitnessBundle
from latmax.estimation import growth_fit

_TABLE_LIMIT = 2 ** 21
_LOG2_LN = math.log(2.0)
_sigma_tables: dict = {}


def _validate(p: float, q: float):
    if not 1.0 <= q < p < math.inf:
        raise ValueError("need 1 <= q < p < inf")


def lorentz_norm(p: float, q: float, x) -> float:
    """(sum_k k^{q/p-1} (x*_k)^q)^{1/q} over the decreasing rearrangement."""
    _validate(p, q)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError("expected a vector")
    star = np.sort(np.abs(x))[::-1]
    k = np.arange(1, len(x) + 1, dtype=float)
    return float(np.sum(k ** (q / p - 1.0) * star ** q) ** (1.0 / q))


def _sigma_table(e: float, upto: int) -> np.ndarray:
    """Cumulative sums of k^e, cached per exponent."""
    cached = _sigma_tables.get(e)
    if cached is None or len(cached) < upto:
        size = min(max(upto, 2 ** 16), _TABLE_LIMIT)
        cached = np.cumsum(np.arange(1, size + 1, dtype=float) ** e)
        _sigma_tables[e] = cached
        if len(_sigma_tables) > 4:
            _sigma_tables.pop(next(iter(_sigma_tables)))
    return cached


def weight_sum_log2(log2N: float, p: float, q: float) -> float:
    """sigma(N) = sum_{k<=N} k^{q/p-1}, addressed by log2 N.

    Exact table lookup while N fits; Euler-Maclaurin beyond, which is
    where the log2 addressing matters: N itself may exceed the float
    range while sigma(N) ~ N^{q/p} stays representable.
    """
    _validate(p, q)
    e = q / p - 1.0
    if log2N < 0:
        raise ValueError("need N >= 1")
    if log2N <= 21:
        N = int(round(2.0 ** log2N))
        return float(_sigma_table(e, N)[N - 1])
    if log2N * (1.0 + e) > 1000.0:
        raise ValueError("sigma itself would overflow float64")
    zeta = float(mpmath.zeta(-e))
    lead = 2.0 ** (log2N * (1.0 + e)) / (1.0 + e)
    half = 2.0 ** (log2N * e) / 2.0
    deriv = e * 2.0 ** (log2N * (e - 1.0)) / 12.0
    return float(lead + zeta + half + deriv)


def _sigma_int(N: int, p: float, q: float) -> float:
    if N == 0:
        return 0.0
    if N <= _TABLE_LIMIT:
        e = q / p - 1.0
        return float(_sigma_table(e, N)[N - 1])
    return weight_sum_log2(math.log2(N), p, q)


def unit_fundamental(p: float, q: float, ns):
    """(n, ||sum of n unit vectors||) pairs, exactly sigma(n)^{1/q}."""
    _validate(p, q)
    return [(int(n), _sigma_int(int(n), p, q) ** (1.0 / q)) for n in ns]


def block_series(p: float, q: float, ms):
    """(m, ||sum of m normalized constant blocks||) in closed form.

    Block i occupies 2^i fresh coordinates at height sigma(2^i)^{-1/q},
    i = 1..m.  Heights decrease with i, so the rearrangement keeps blocks
    in order and the norm^q telescopes over the weight increments between
    the cumulative lengths N_i = 2^{i+1} - 2.  Large i switches to the
    log2-addressed tail; every term is a ratio of comparable magnitudes,
    so nothing overflows even when N_m cannot be written down.
    """
    _validate(p, q)
    ms = sorted(int(m) for m in ms)
    if not ms or ms[0] < 1:
        raise ValueError("need block counts >= 1")
    top = ms[-1]
    terms = np.zeros(top + 1)
    for i in range(1, top + 1):
        if i <= 20:
            num = _sigma_int(2 ** (i + 1) - 2, p, q) - _sigma_int(2 ** i - 2, p, q)
            den = _sigma_int(2 ** i, p, q)
        else:
            log2_Ni = (i + 1) + math.log1p(-(2.0 ** -i)) / _LOG2_LN
            log2_prev = i + math.log1p(-(2.0 ** -(i - 1))) / _LOG2_LN
            num = weight_sum_log2(log2_Ni, p, q) - weight_sum_log2(log2_prev, p, q)
            den = weight_sum_log2(float(i), p, q)
        terms[i] = num / den
    partial = np.cumsum(terms)
    return [(m, float(partial[m] ** (1.0 / q))) for m in ms]


def lorentz_blocking_demo(p: float, q: float, n: int) -> WitnessBundle:
    """Fit the two fundamental-function exponents side by side.

    Unit-vector sums over n-grids give the 1/p scale; disjoint constant
    blocks give the 1/q scale.  Both series are exact; only the fitted
    exponents carry sampling error.
    """
    _validate(p, q)
    if n < 512:
        # both grids must reach 4 points for the regression
        raise ValueError("need n >= 512 for fittable grids")
    top = int(math.log2(n))
    unit_grid = [2 ** j for j in range(5, top + 1)]
    block_grid = [2 ** j for j in range(6, top + 1)]
    units = unit_fundamental(p, q, unit_grid)
    blocks = block_series(p, q, block_grid)
    unit_fit = growth_fit(units)
    block_fit = growth_fit(blocks)

    bundle = WitnessBundle(space=None)
    bundle.series["unit"] = units
    bundle.series["blocks"] = blocks
    bundle.expect("unit_exponent", unit_fit.a, "fitted")
    bundle.expect("block_exponent", block_fit.a, "fitted")
    bundle.extras.update(p=p, q=q, unit_fit=unit_fit, block_fit=block_fit)
    return bundle


def build(p: float = 4.0, q: float = 2.0, n: int = 1024) -> WitnessBundle:
    """Registry entry: the blocking demo at the requested scale."""
    return lorentz_blocking_demo(p, q, n)
