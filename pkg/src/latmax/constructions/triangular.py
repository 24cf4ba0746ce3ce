"""Harmonic-kernel perturbation of the l_p basis, plus its trace-dual twin.

The antisymmetric kernel T has entries 1/(i - j) off the diagonal.  Scaling
it to S = alpha*T with ||S|| <= 1/2 and placing S-shadows across two l_p
blocks gives a basis of l_p + l_p whose change-of-basis matrix A = I + B is
invertible by Neumann series.  The basis is 3-equivalent to the plain l_p
basis, yet the running join of the first-block prefix sums picks up a
harmonic number in every shadow coordinate, which is what makes the maximal
partial-sum operator large.

All prefix quantities for the constant-coefficient witness reduce to
harmonic-number closed forms, so large-n values need no dense linear
algebra; the dense route exists for cross-checking at small n.
"""

from __future__ import annotations

import math

import numpy as np

from latmax.constructions.bundles import WitnessBundle
from latmax.estimation import nuclear_norm, pnorm_bounds, spectral_norm
from latmax.spaces import DirectSum, Element, LpBlock
from latmax.systems import BiorthogonalSystem

_DENSE_LIMIT = 512


def harmonic_numbers(n: int) -> np.ndarray:
    """H_0..H_n with H_0 = 0."""
    H = np.zeros(n + 1)
    H[1:] = np.cumsum(1.0 / np.arange(1, n + 1))
    return H


def hilbert_kernel(n: int) -> np.ndarray:
    """The n x n antisymmetric matrix with entries 1/(i - j), zero diagonal."""
    if n < 1:
        raise ValueError("n must be >= 1")
    d = np.subtract.outer(np.arange(n, dtype=float), np.arange(n, dtype=float))
    T = np.zeros((n, n))
    nz = d != 0
    T[nz] = 1.0 / d[nz]
    return T


def kernel_gauge(n: int, p: float = 2.0) -> float:
    """Certified upper bound for the l_p operator norm of the kernel.

    p = 2 is the spectral norm itself; other p go through the interpolated
    row/column-sum bound, which is an over-estimate but safe for the
    half-contraction scaling below.
    """
    T = hilbert_kernel(n)
    if p == 2.0:
        return spectral_norm(T)
    return pnorm_bounds(T, p).upper


def neumann_blocks(S: np.ndarray, tol: float = 1e-12, max_iter: int = 200):
    """Invert I + [[0, -S], [S, 0]] by the fixed-point iteration X <- I - BX.

    The inverse inherits the block shape [[E, F], [-F, E]], so only the two
    n x n blocks are iterated.  Converges geometrically at rate ||S|| (< 1/2
    by construction); returns (E, F, iterations, residual) where residual is
    the max-norm of A X - I at exit.

    Raises RuntimeError if the tolerance is not reached, which for a
    half-contraction S would indicate a broken scaling upstream.
    """
    n = len(S)
    eye = np.eye(n)
    E, F = eye.copy(), np.zeros((n, n))
    for it in range(1, max_iter + 1):
        E, F = eye - S @ F, S @ E
        residual = max(np.max(np.abs(E + S @ F - eye)),
                       np.max(np.abs(F - S @ E)))
        if residual < tol:
            return E, F, it, residual
    raise RuntimeError(f"Neumann iteration stalled at residual {residual:.3e}")


def operator_extremes(S: np.ndarray):
    """(||A||_2, ||A^-1||_2) for A = I + [[0, -S], [S, 0]].

    A is symmetric positive definite when S is antisymmetric with norm
    below 1, so both come from one eigenvalue sweep.
    """
    n = len(S)
    A = np.block([[np.eye(n), -S], [S, np.eye(n)]])
    lam = np.linalg.eigvalsh(A)
    return float(lam[-1]), float(1.0 / lam[0])


def _shadow_profiles(n: int, alpha: float, p: float):
    """Closed-form second-block coordinates of the witness and its join.

    Coordinate k of S applied to the full first-block sum is
    alpha*(H_k - H_{n-1-k}); along shorter prefixes the same coordinate
    sweeps up to alpha*H_k, so the prefix-join profile is the max of the
    two magnitudes.
    """
    H = harmonic_numbers(n)
    s = H[:n] - H[n - 1 :: -1]
    M = np.maximum(H[:n], np.abs(s))
    x_norm = (n + alpha ** p * np.sum(np.abs(s) ** p)) ** (1.0 / p)
    join_norm = (n + alpha ** p * np.sum(M ** p)) ** (1.0 / p)
    return s, M, x_norm, join_norm


def prefix_join_norm(n: int, p: float, alpha: float) -> float:
    """||join of |first k basis vectors summed|, k <= n|| in closed form."""
    return _shadow_profiles(n, alpha, p)[3]


def witness_norm(n: int, p: float, alpha: float) -> float:
    """||sum of the first n basis vectors|| in closed form."""
    return _shadow_profiles(n, alpha, p)[2]


def certificate_series(ns, p: float = 2.0, alpha0: float = None):
    """Lower-bound series alpha0*(sum_{j<n} H_j^p)^{1/p}, one value per n.

    Each term bounds the corresponding prefix-join norm from below whenever
    alpha0 is at most every per-n scaling, which the default guarantees:
    the p = 2 kernel norms increase to pi, so 1/(2 pi) under-scales them
    all.  For p != 2 the admissible constant is computed from the largest
    requested n.  A fixed alpha0 keeps the series clean of the drift the
    per-n scaling would add, which matters when fitting its growth.
    """
    ns = sorted(int(n) for n in ns)
    if not ns or ns[0] < 2:
        raise ValueError("need sizes >= 2")
    if alpha0 is None:
        alpha0 = 1.0 / (2.0 * math.pi) if p == 2.0 else 0.5 / kernel_gauge(ns[-1], p)
    H = harmonic_numbers(ns[-1])
    powers = np.cumsum(H[: ns[-1]] ** p)
    return [(n, float(alpha0 * powers[n - 1] ** (1.0 / p))) for n in ns]


def triangular_basis(n: int, p: float = 2.0, alpha: float = None):
    """Build the perturbed basis over l_p^n + l_p^n with its witness data.

    Vectors: v_i = e_i + (shadow S e_i), then w_j = (shadow -S e_j) + e_j.
    Functionals are the rows of the Neumann inverse of A.  Returns
    (system, bundle); the bundle carries the constant-coefficient witness
    x = sum v_i, its prefix join, and their closed-form norms.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 1.0 < p < math.inf:
        raise ValueError("p must lie in (1, inf)")
    if n > _DENSE_LIMIT:
        raise ValueError(f"dense build capped at n = {_DENSE_LIMIT}")
    T = hilbert_kernel(n)
    gauge = kernel_gauge(n, p)
    if alpha is None:
        # shave the certified gauge so ||S|| < 1/2 holds strictly
        alpha = 0.5 / (gauge * (1.0 + 1e-9))
    S = alpha * T

    rng = np.random.default_rng(0)
    for _ in range(8):
        z = rng.standard_normal(n)
        assert np.linalg.norm(S @ z, p) <= 0.5 * np.linalg.norm(z, p)

    E, F, iterations, residual = neumann_blocks(S)
    eye = np.eye(n)
    V = np.vstack([np.hstack([eye, S.T]), np.hstack([-S.T, eye])])
    funcs = np.vstack([np.hstack([E, F]), np.hstack([-F, E])])
    host = DirectSum(p, [LpBlock(n, p), LpBlock(n, p)])
    system = BiorthogonalSystem(host, V, funcs)

    s, M, x_norm, join_norm = _shadow_profiles(n, alpha, p)
    assert x_norm <= 1.5 * n ** (1.0 / p) + 1e-9
    bundle = WitnessBundle(space=host)
    bundle.vectors["witness"] = Element(host, np.concatenate([np.ones(n), alpha * s]))
    bundle.vectors["join"] = Element(host, np.concatenate([np.ones(n), alpha * M]))
    bundle.expect("witness_norm", x_norm, "closed_form")
    bundle.expect("join_norm", join_norm, "closed_form")
    bundle.expect("prefix_ratio", join_norm / x_norm, "closed_form")
    if n >= 4:
        # shadow coordinate 3 of the 4-term prefix: alpha*(1 + 1/2 + 1/3)
        bundle.expect("prefix_coefficient_4", alpha * (11.0 / 6.0), "closed_form")
    bundle.extras.update(alpha=alpha, kernel_gauge=gauge, block=n,
                         neumann_iterations=iterations,
                         neumann_residual=residual)
    return system, bundle


def build(n: int = 64, p: float = 2.0, alpha: float = None) -> WitnessBundle:
    """Registry entry: witness bundle with the system attached."""
    system, bundle = triangular_basis(n, p, alpha)
    bundle.extras["system"] = system
    return bundle


# ----------------------------------------------------------- trace duality


def tau_matrix(n: int) -> np.ndarray:
    """Lower-triangular ones, diagonal included."""
    return np.tril(np.ones((n, n)))


def tau_singular_values(n: int) -> np.ndarray:
    """Exact spectrum of the summation matrix: half inverse sines."""
    k = np.arange(1, n + 1)
    return 0.5 / np.sin((2 * k - 1) * np.pi / (2.0 * (2 * n + 1)))


def trace_dual_certificate(n: int) -> WitnessBundle:
    """Duality floor for the nuclear norm of the summation matrix.

    Pairing the kernel entrywise against tau sums 1/(k - l) over k > l,
    which telescopes to a harmonic double sum; dividing by the kernel's
    uniform spectral bound pi floors ||tau||_nuclear from below.  The
    floor sits well under the actual nuclear norm (both grow like
    n log n), and the function asserts the inequality before returning.

    Two pairing totals are reported: the double sum of H_1..H_n, and the
    strict entrywise sum, which stops one harmonic number earlier at
    H_1..H_{n-1} = n*H_{n-1} - (n-1).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    H = harmonic_numbers(n)
    double_sum = float(H[1:].sum())
    entrywise = float(n * H[n - 1] - (n - 1))
    sigma = tau_singular_values(n)
    nuclear = float(sigma.sum())
    floor = double_sum / math.pi
    assert nuclear >= floor - 1e-6

    bundle = WitnessBundle(space=LpBlock(n, 2.0))
    bundle.expect("harmonic_double_sum", double_sum, "closed_form")
    bundle.expect("entrywise_pairing", entrywise, "closed_form")
    bundle.expect("nuclear_norm", nuclear, "closed_form")
    bundle.expect("duality_floor", floor, "closed_form")
    bundle.extras["singular_values"] = sigma
    if n <= _DENSE_LIMIT:
        bundle.extras["tau"] = tau_matrix(n)
    return bundle
