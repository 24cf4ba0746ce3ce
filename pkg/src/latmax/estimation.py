"""Numerical backends: matrix norms, witness searches, growth-law fits.

Everything here is deterministic for a fixed seed and budget.  Searches only
certify lower bounds; they keep the witness that attained the reported value
so the number can be recomputed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse.linalg

_DENSE_SVD_CUTOFF = 768
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def spectral_norm(M: np.ndarray) -> float:
    """Largest singular value.  Dense SVD below a size cutoff, ARPACK with a
    fixed start vector above it (deterministic, machine-precision tolerance)."""
    M = np.asarray(M, dtype=float)
    if min(M.shape) == 1:
        return float(np.linalg.norm(M))
    if max(M.shape) <= _DENSE_SVD_CUTOFF:
        return float(np.linalg.svd(M, compute_uv=False)[0])
    v0 = np.ones(min(M.shape)) / math.sqrt(min(M.shape))
    s = scipy.sparse.linalg.svds(M, k=1, v0=v0, tol=0, maxiter=5000,
                                 return_singular_vectors=False)
    return float(s[0])


def nuclear_norm(M: np.ndarray) -> float:
    """Sum of singular values (full decomposition; meant for n up to ~4096)."""
    M = np.asarray(M, dtype=float)
    return float(np.linalg.svd(M, compute_uv=False).sum())


@dataclass
class OperatorNormBounds:
    """Two-sided enclosure of an l_p -> l_p operator norm."""

    p: float
    lower: float     # certified by a witness: ||Mx||_p / ||x||_p
    upper: float     # exact for p in {1, 2, inf}, interpolation otherwise
    witness: np.ndarray | None = None

    def to_json(self) -> dict:
        return {"p": self.p, "lower": self.lower, "upper": self.upper}


def _colsum_norm(M):
    return float(np.abs(M).sum(axis=0).max())


def _rowsum_norm(M):
    return float(np.abs(M).sum(axis=1).max())


def pnorm_bounds(M: np.ndarray, p: float, budget: int = 2000,
                 seed: int = 0) -> OperatorNormBounds:
    """Enclose the l_p operator norm of a square matrix.

    p = 1, 2, inf are exact (column sums, SVD, row sums).  Otherwise the upper
    bound interpolates between the exact endpoints (||M||_p lies below
    ||M||_1^(2/p-1) ||M||_2^(2-2/p) for p < 2, dually above 2), and the lower
    bound comes from a seeded random-ascent witness search on ||Mx||_p/||x||_p.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("square matrix required")
    if p == 2:
        s = spectral_norm(M)
        return OperatorNormBounds(2.0, s, s)
    if p == 1:
        v = _colsum_norm(M)
        return OperatorNormBounds(1.0, v, v)
    if math.isinf(p):
        v = _rowsum_norm(M)
        return OperatorNormBounds(p, v, v)
    if not 1 < p < math.inf:
        raise ValueError("p must lie in [1, inf]")
    s2 = spectral_norm(M)
    if p < 2:
        theta = 2.0 - 2.0 / p          # 1/p = (1-theta)/1 + theta/2
        upper = _colsum_norm(M) ** (1.0 - theta) * s2 ** theta
    else:
        theta = 2.0 / p                # 1/p = theta/2 + (1-theta)/inf
        upper = s2 ** theta * _rowsum_norm(M) ** (1.0 - theta)

    def ratio(w):
        w = np.asarray(w, dtype=float)
        nw = np.linalg.norm(w, ord=p)
        return float(np.linalg.norm(M @ w, ord=p) / nw) if nw > 0 else 0.0

    fam = WitnessFamily(random_dim=M.shape[1], random_count=max(8, budget // 40),
                        seed=seed)
    res = sup_search(ratio, fam, budget)
    lower = min(res.value, upper)  # ascent numerics must not cross the certificate
    return OperatorNormBounds(float(p), lower, float(upper), res.witness)


@dataclass
class WitnessFamily:
    """Candidate generator for sup_search.

    structured: explicit coefficient vectors tried first, in order.
    sign_dim: when set (and <= 20), the full sign cube {-1,+1}^sign_dim.
    random_dim / random_count: unit-sphere samples from a seeded generator.
    ascent: refine the best candidates by coordinatewise golden-section ascent.
    """

    structured: tuple = ()
    sign_dim: int | None = None
    random_dim: int | None = None
    random_count: int = 0
    seed: int = 0
    ascent: bool = True
    ascent_sweeps: int = 3
    ascent_top: int = 3


@dataclass
class SearchResult:
    value: float
    witness: np.ndarray
    source: str          # which family produced the best witness
    evaluations: int


def _golden_max(f, lo: float, hi: float, tol: float = 1e-10):
    """Golden-section maximization on [lo, hi]; returns (arg, value, evals)."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while (b - a) > tol:
        if fc < fd:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
        else:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        evals += 1
    if fc >= fd:
        return c, fc, evals
    return d, fd, evals


def sup_search(objective, family: WitnessFamily, budget: int) -> SearchResult:
    """Maximize objective(coeffs) over the family within an evaluation budget.

    Candidates are consumed in a fixed order (structured, sign cube, random),
    then the leaders are polished by coordinate ascent, so enlarging the
    budget never loses a previously found witness.
    """
    best_val = -math.inf
    best_wit = None
    best_src = "structured_family"
    evals = 0

    def consider(w, src):
        nonlocal best_val, best_wit, best_src, evals
        if evals >= budget:
            return False
        v = float(objective(w))
        evals += 1
        if v > best_val:
            best_val, best_wit, best_src = v, np.array(w, dtype=float), src
        return True

    for w in family.structured:
        if not consider(np.asarray(w, dtype=float), "structured_family"):
            break

    if family.sign_dim is not None:
        m = int(family.sign_dim)
        if m > 20:
            raise ValueError("sign cube limited to 20 coordinates")
        for bits in range(2 ** m):
            eps = np.fromiter(((1.0 if bits >> k & 1 else -1.0) for k in range(m)),
                              dtype=float, count=m)
            if not consider(eps, "exhaustive_signs"):
                break

    pool = []
    if family.random_dim and family.random_count:
        rng = np.random.default_rng(family.seed)
        for _ in range(family.random_count):
            w = rng.normal(size=family.random_dim)
            nrm = np.linalg.norm(w)
            if nrm > 0:
                w = w / nrm
            if not consider(w, "random_ascent"):
                break
            pool.append(w)

    if family.ascent and best_wit is not None and evals < budget:
        # polish the current leader (and a couple of random runners-up)
        seeds = [best_wit]
        for w in pool[: max(0, family.ascent_top - 1)]:
            seeds.append(w)
        leader_val, leader = best_val, best_wit.copy()
        for start in seeds:
            x = np.array(start, dtype=float)
            for _ in range(family.ascent_sweeps):
                if evals >= budget:
                    break
                for i in range(len(x)):
                    if evals >= budget:
                        break
                    radius = max(1.0, 2.0 * abs(x[i]))

                    def axis_obj(t, i=i, x=x):
                        y = x.copy()
                        y[i] = t
                        return float(objective(y))

                    t, v, used = _golden_max(axis_obj, x[i] - radius, x[i] + radius)
                    evals += used
                    if v > leader_val:
                        leader_val = v
                        x[i] = t
                        leader = x.copy()
            if leader_val > best_val:
                best_val, best_wit, best_src = leader_val, leader.copy(), "random_ascent"

    if best_wit is None:
        raise ValueError("empty witness family or zero budget")
    return SearchResult(best_val, best_wit, best_src, evals)


@dataclass
class GrowthFit:
    """Least-squares fit of v ~ c * n^a * log(n)^b in log space."""

    c: float
    a: float
    b: float
    residual: float
    sample: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "model": "c * n^a * log(n)^b",
            "c": self.c,
            "a": self.a,
            "b": self.b,
            "residual": self.residual,
            "sample": [[float(n), float(v)] for n, v in self.sample],
        }


def growth_fit(sample) -> GrowthFit:
    """Fit (n, v) pairs to c * n^a * log(n)^b.

    Regression runs on (log n, log log n); a ridge of 1e-9 on b breaks the
    near-collinearity of the regressors toward b = 0.  Needs at least four
    samples with strictly increasing n >= 2 and positive values.
    """
    pts = [(float(n), float(v)) for n, v in sample]
    if len(pts) < 4:
        raise ValueError("growth_fit needs at least 4 samples")
    ns = np.array([n for n, _ in pts])
    vs = np.array([v for _, v in pts])
    if np.any(ns[1:] <= ns[:-1]):
        raise ValueError("sample n must be strictly increasing")
    if np.any(ns < 2) or np.any(vs <= 0):
        raise ValueError("need n >= 2 and values > 0")
    ln = np.log(ns)
    lln = np.log(ln)
    y = np.log(vs)
    X = np.column_stack([np.ones_like(ln), ln, lln])
    G = X.T @ X
    G[2, 2] += 1e-9
    beta = np.linalg.solve(G, X.T @ y)
    r = y - X @ beta
    fit = GrowthFit(float(math.exp(beta[0])), float(beta[1]), float(beta[2]),
                    float(np.sqrt(np.mean(r * r))), tuple(pts))
    return fit


def growth_fit_residual(fit: GrowthFit) -> float:
    """Recompute the log-space RMS residual from the stored sample."""
    ns = np.array([n for n, _ in fit.sample])
    vs = np.array([v for _, v in fit.sample])
    pred = math.log(fit.c) + fit.a * np.log(ns) + fit.b * np.log(np.log(ns))
    r = np.log(vs) - pred
    return float(np.sqrt(np.mean(r * r)))
