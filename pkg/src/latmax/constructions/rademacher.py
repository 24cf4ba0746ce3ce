"""Independent sign vectors over a probability-weighted l1 block.

Coordinate omega of r_k is +1 or -1 according to bit k of omega, so the
2^n coordinates enumerate all sign combinations and the weighted l1 norm
is an exact expectation.  Moduli collapse, |r_k| = ones, which makes
||sum |a_k r_k||| = sum |a_k| on the nose, while the signed sum sits at
the l2 scale (sum a_k^2)^{1/2} up to Khintchine constants.  Flat
coefficients admit an exact binomial mean, so the l1/l2 gap has a
closed-form series.
"""

from __future__ import annotations

import math

import numpy as np

from latmax.constructions.bundles import WitnessBundle
from latmax.spaces import Element, LpBlock
from latmax.systems import BiorthogonalSystem

_SIZE_LIMIT = 20  # 2^20 coordinates, ~8 MB per stored matrix row set


def sign_matrix(n: int) -> np.ndarray:
    """n rows of length 2^n; entry (k, omega) is the sign of bit k of omega."""
    if not 1 <= n <= _SIZE_LIMIT:
        raise ValueError(f"n must be in 1..{_SIZE_LIMIT}")
    omega = np.arange(2 ** n, dtype=np.uint32)
    bits = (omega[None, :] >> np.arange(n, dtype=np.uint32)[:, None]) & 1
    return 1.0 - 2.0 * bits


def rademacher_l1(n: int) -> BiorthogonalSystem:
    """The n sign vectors with their expectation functionals."""
    R = sign_matrix(n)
    host = LpBlock(2 ** n, 1.0, weights=np.full(2 ** n, 2.0 ** -n))
    # E[r_j r_k] = delta: the plain pairing needs the 2^-n weight folded in
    return BiorthogonalSystem(host, R, R * 2.0 ** -n)


def signed_mean(alpha) -> float:
    """E|sum_k alpha_k r_k| by full enumeration of the 2^len sign choices."""
    alpha = np.asarray(alpha, dtype=float)
    S = alpha @ sign_matrix(len(alpha))
    return float(np.mean(np.abs(S)))


def flat_mean(m: int) -> float:
    """E|sum of m independent signs|, exactly: sum_j C(m,j)|m-2j| / 2^m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    total = sum(math.comb(m, j) * abs(m - 2 * j) for j in range(m + 1))
    return total / 2.0 ** m


def flat_ratio_series(ms):
    """(m, m / E|S_m|) pairs: the l1-to-mean gap for flat coefficients.

    The mean is constant across the odd-to-even step (E|S_{2k}| relates to
    E|S_{2k+1}| by the same central binomial), so consecutive ratios move
    in a staircase; growth fits should sample a single parity.
    """
    return [(int(m), m / flat_mean(int(m))) for m in ms]


def build(n: int = 8) -> WitnessBundle:
    """Registry entry: system plus the exact flat-coefficient values."""
    system = rademacher_l1(n)
    bundle = WitnessBundle(space=system.space)
    bundle.vectors["modulus_sum"] = Element(system.space,
                                            float(n) * np.ones(2 ** n))
    bundle.expect("modulus_sum_norm", float(n), "closed_form")
    bundle.expect("flat_mean", flat_mean(n), "closed_form")
    bundle.extras.update(n=n, system=system)
    return bundle
