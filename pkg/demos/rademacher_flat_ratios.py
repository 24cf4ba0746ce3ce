#!/usr/bin/env python3
"""Exact binomial means behind the sqrt(m) democracy gap.

In probability L1 the Rademacher moduli are all the constant 1, so
||sum |a_k r_k||| = sum |a_k| on the nose.  A flat signed sum is much
smaller: E|r_1 + ... + r_m| comes out of the binomial distribution in
closed form, and the ratio m / E|S_m| grows like sqrt(m).

The means pair up (E|S_2k| relates to E|S_2k+1| by the same central
binomial weight), which is why the printed ratios move in steps of two;
growth fits should sample a single parity.
"""

from latmax.constructions.rademacher import flat_mean, signed_mean
from latmax.estimation import growth_fit

import numpy as np


def main():
    print(f"{'m':>3} {'E|S_m|':>12} {'m / E|S_m|':>12}")
    for m in range(2, 21):
        print(f"{m:>3} {flat_mean(m):>12.8f} {m / flat_mean(m):>12.6f}")

    # spot check the closed form against full enumeration
    for m in (4, 8):
        exact = flat_mean(m)
        brute = signed_mean(np.ones(m))
        assert abs(exact - brute) < 1e-12, (m, exact, brute)

    fit = growth_fit([(m, m / flat_mean(m)) for m in range(2, 21, 2)])
    print(f"\neven-grid growth fit: exponent a = {fit.a:.4f} (sqrt growth)")
    print("modulus sums saturate the l1 norm; flat sums lag by sqrt(m)")


if __name__ == "__main__":
    main()
