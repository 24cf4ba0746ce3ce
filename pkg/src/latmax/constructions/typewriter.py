"""A redundant expansion whose partial sums at the constant oscillate.

Between consecutive wavelet terms the weave inserts a dyadic indicator
and immediately retracts it: (w_1, t_1, -t_1, w_2, t_2, -t_2, ...), with
t_1, t_2, ... sweeping the dyadic intervals level by level, one window at
a time.  The paired functional for every indicator slot is integration
against the constant, so expanding the constant function sends each
partial sum to 1 + (current indicator): the expansion reconstructs the
constant in the limit of full passes, yet pointwise it keeps flickering
between 1 and 2 forever.  The running join of partial-sum moduli settles
at twice the constant.
"""

from __future__ import annotations

import math

import numpy as np

from latmax.constructions.bundles import FramePair, WitnessBundle
from latmax.constructions.haar import haar_matrices
from latmax.spaces import Element, dyadic_lp
from latmax.systems import BiorthogonalSystem

_DEPTH_LIMIT = 12


def indicator_blocks(J: int) -> np.ndarray:
    """Rows t_1..t_{2^J - 1}: all dyadic indicators, coarse to fine.

    t_1 is the constant window; within a level the windows run left to
    right.  Amplitude 1 throughout (these are indicators, not normalized
    wavelets)."""
    if not 1 <= J <= _DEPTH_LIMIT:
        raise ValueError(f"J must be in 1..{_DEPTH_LIMIT}")
    m = 2 ** J
    rows = np.zeros((m - 1, m))
    i = 0
    for level in range(J):
        span = m >> level
        for k in range(2 ** level):
            rows[i, k * span : (k + 1) * span] = 1.0
            i += 1
    return rows


def typewriter_frame(J: int, p: float) -> FramePair:
    """The woven expansion as a redundant system over the dyadic grid.

    Slots 3i hold the i-th wavelet with its true dual; slots 3i+1 and
    3i+2 hold +/- the i-th indicator, both paired with integration
    against the constant.  The trailing wavelets (there are 2^J of them
    against 2^J - 1 indicators) close the weave.
    """
    if not 1 <= J <= _DEPTH_LIMIT:
        raise ValueError(f"J must be in 1..{_DEPTH_LIMIT}")
    if not 1.0 < p < math.inf:
        raise ValueError("p must lie in (1, inf)")
    m = 2 ** J
    W, Wdual = haar_matrices(J, p)
    T = indicator_blocks(J)
    mean = np.full(m, 2.0 ** -J)  # integration against the constant

    count = 3 * (m - 1) + 1
    V = np.zeros((count, m))
    F = np.zeros((count, m))
    for i in range(m - 1):
        V[3 * i], F[3 * i] = W[i], Wdual[i]
        V[3 * i + 1], F[3 * i + 1] = T[i], mean
        V[3 * i + 2], F[3 * i + 2] = -T[i], mean
    V[-1], F[-1] = W[m - 1], Wdual[m - 1]
    system = BiorthogonalSystem(dyadic_lp(J, p), V, F, check=False)
    return FramePair(system=system, frame=True)


def pass_profile(J: int, p: float) -> WitnessBundle:
    """Stream one full pass of partial sums at the constant function.

    Records, per grid point, the high and low water marks of the partial
    sums from the first term onward, plus the running join of moduli.
    The marks pin the oscillation at exactly 1 everywhere while the join
    norm lands on 2.
    """
    pair = typewriter_frame(J, p)
    system = pair.system
    ones = np.ones(system.space.dim)
    coeffs = system.functionals @ ones
    running = np.zeros(system.space.dim)
    join = np.zeros(system.space.dim)
    high = np.full(system.space.dim, -np.inf)
    low = np.full(system.space.dim, np.inf)
    for k in range(len(system)):
        running = running + coeffs[k] * system.vectors[k]
        np.maximum(join, np.abs(running), out=join)
        np.maximum(high, running, out=high)
        np.minimum(low, running, out=low)

    bundle = WitnessBundle(space=system.space)
    bundle.vectors["join"] = Element(system.space, join)
    bundle.expect("join_norm", 2.0, "closed_form")
    bundle.expect("oscillation", 1.0, "closed_form")
    bundle.extras.update(J=J, p=p, oscillation=high - low,
                         terms=len(system), frame=pair)
    return bundle


def build(J: int = 6, p: float = 2.0) -> WitnessBundle:
    """Registry entry: one full pass at the default depth."""
    return pass_profile(J, p)
