"""Sign-matrix vectors straddling a sup block and an l2 block.

u_k puts a unit spike at coordinate k of the sup block and a scaled
Walsh row 2^{-n} h_k on the l2 block.  Orthogonality of the rows makes
every signed sum collapse: ||sum_k eps_k u_k|| = max(1, 2^{-n/2}) = 1 for
all 2^(2^n) sign patterns, while the modulus sum fills both blocks with
ones and costs 2^{n/2}.  The gap between those two numbers is the whole
point of the construction.

Large n never materializes the 2^n x 2^n sign matrix; batch Walsh
transforms evaluate the l2 block row by row.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import hadamard as _sylvester

from latmax.constructions.bundles import WitnessBundle
from latmax.spaces import DirectSum, Element, LpBlock, SupBlock
from latmax.systems import BiorthogonalSystem

_MATRIX_LIMIT = 10  # largest n whose 2^n x 2^n matrix we will hold
_SIZE_LIMIT = 14
_EXHAUSTIVE_LIMIT = 4  # 2^(2^4) = 65536 patterns is still enumerable


def walsh_matrix(n: int) -> np.ndarray:
    """Sylvester sign matrix of order 2^n (symmetric, entries +/-1)."""
    if not 0 <= n <= _MATRIX_LIMIT:
        raise ValueError(f"n must be in 0..{_MATRIX_LIMIT} to materialize")
    return _sylvester(2 ** n).astype(float)


def fwht_rows(X) -> np.ndarray:
    """Walsh transform of each row (multiplication by the Sylvester matrix).

    In-place butterflies, n passes over the batch; exact in float64 for
    integer inputs of modest size since every intermediate is an integer.
    """
    X = np.array(X, dtype=float, copy=True)
    if X.ndim != 2:
        raise ValueError("expected a batch of rows")
    m = X.shape[1]
    if m & (m - 1):
        raise ValueError("row length must be a power of two")
    h = 1
    while h < m:
        X = X.reshape(X.shape[0], -1, 2, h)
        a = X[:, :, 0, :].copy()
        b = X[:, :, 1, :].copy()
        X[:, :, 0, :] = a + b
        X[:, :, 1, :] = a - b
        X = X.reshape(X.shape[0], m)
        h *= 2
    return X


def mixed_sum_norms(n: int, rows) -> np.ndarray:
    """Host norms of sum_k rows[i, k] * u_k, one value per batch row.

    The sup block contributes max_k |rows[i, k]| and the l2 block
    2^{-n} * ||row @ H||_2; the host takes the larger.
    """
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    if rows.shape[1] != 2 ** n:
        raise ValueError("coefficient length must be 2^n")
    sup_part = np.max(np.abs(rows), axis=1)
    l2_part = 2.0 ** -n * np.linalg.norm(fwht_rows(rows), axis=1)
    return np.maximum(sup_part, l2_part)


def sign_pattern_sweep(n: int, samples: int = 10000, seed: int = 0) -> dict:
    """Largest and smallest signed-sum norm over sign patterns.

    n <= 4 enumerates every pattern, larger n draws `samples` of them;
    either way the norms land exactly on 1 because the Walsh rows are
    orthogonal, so max == min == 1.0 is the expected outcome.
    """
    if not 1 <= n <= _SIZE_LIMIT:
        raise ValueError(f"n must be in 1..{_SIZE_LIMIT}")
    m = 2 ** n
    if n <= _EXHAUSTIVE_LIMIT:
        idx = np.arange(2 ** m, dtype=np.uint32)
        patterns = (((idx[:, None] >> np.arange(m)) & 1) * 2.0 - 1.0)
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        patterns = rng.integers(0, 2, size=(samples, m)) * 2.0 - 1.0
        mode = "sampled"
    worst, best, count = -np.inf, np.inf, 0
    for start in range(0, len(patterns), 512):
        norms = mixed_sum_norms(n, patterns[start : start + 512])
        worst = max(worst, float(norms.max()))
        best = min(best, float(norms.min()))
        count += len(norms)
    return {"max": worst, "min": best, "count": count, "mode": mode}


def unconditionality_window(n: int, count: int = 1000, seed: int = 0) -> dict:
    """Check max|a| <= ||sum a_k u_k|| <= 3 max|a| on random coefficients.

    The host actually gives equality with the left end; both window ends
    are returned as observed ratios against max|a| = 1.
    """
    rng = np.random.default_rng(seed)
    alphas = rng.standard_normal((count, 2 ** n))
    alphas /= np.max(np.abs(alphas), axis=1, keepdims=True)
    norms = mixed_sum_norms(n, alphas)
    return {"low": float(norms.min()), "high": float(norms.max()),
            "count": count}


def hadamard_mixed(n: int):
    """(system, bundle) for size n; system is None past the matrix limit.

    The bundle's exact values hold for every admissible n; the dense
    biorthogonal system (functionals = sup-block spikes) only exists
    while the sign matrix fits in memory.
    """
    if not 1 <= n <= _SIZE_LIMIT:
        raise ValueError(f"n must be in 1..{_SIZE_LIMIT}")
    m = 2 ** n
    host = DirectSum(np.inf, [SupBlock(m), LpBlock(m, 2.0)])
    system = None
    if n <= _MATRIX_LIMIT:
        H = walsh_matrix(n)
        V = np.hstack([np.eye(m), 2.0 ** -n * H])
        F = np.hstack([np.eye(m), np.zeros((m, m))])
        system = BiorthogonalSystem(host, V, F)

    bundle = WitnessBundle(space=host)
    # sum_k |u_k| is ones on both blocks: each l2 column collects 2^n
    # entries of modulus 2^{-n}
    bundle.vectors["modulus_sum"] = Element(host, np.ones(2 * m))
    bundle.expect("sign_sum_norm", 1.0, "closed_form")
    bundle.expect("modulus_sum_norm", 2.0 ** (n / 2.0), "closed_form")
    bundle.expect("modulus_to_sign_ratio", 2.0 ** (n / 2.0), "closed_form")
    bundle.extras.update(n=n, block=m)
    return system, bundle


def build(n: int = 6) -> WitnessBundle:
    """Registry entry: bundle with the system attached when it exists."""
    system, bundle = hadamard_mixed(n)
    if system is not None:
        bundle.extras["system"] = system
    return bundle
