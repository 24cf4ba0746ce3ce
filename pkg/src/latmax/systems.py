"""Biorthogonal systems and lower-bound constant reports.

A system pairs vectors x_k with coefficient functionals f_k, both stored as
dense coordinate rows over one host space.  Functionals pair with elements by
the plain (unweighted) dot product; constructions over weighted hosts bake
their weights into the functional coordinates.

Constants (basis, bidemocracy-style joins, absolute bounds, greedy variants)
are always reported as certified lower bounds together with the witness that
attained them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from latmax.spaces import Element, SpaceDescriptor

CONSTANT_NAMES = (
    "basis",
    "bibasis",
    "absolute",
    "quasi_greedy",
    "uniform_quasi_greedy",
    "kvee",
)

SEARCH_TAGS = ("exhaustive_signs", "structured_family", "random_ascent")

_CHECK_CUTOFF = 512  # full gram validation below, sampled above


class BiorthogonalSystem:
    """Vectors and functionals as aligned rows over a common host."""

    def __init__(self, space: SpaceDescriptor, vectors, functionals,
                 labels=None, check: bool = True):
        V = np.asarray(vectors, dtype=float)
        F = np.asarray(functionals, dtype=float)
        if V.ndim != 2 or V.shape[1] != space.dim:
            raise ValueError(f"vectors must be (n, {space.dim})")
        if F.shape != V.shape:
            raise ValueError("functionals must match vectors in shape")
        self.space = space
        self.vectors = V
        self.functionals = F
        n = V.shape[0]
        self.labels = tuple(labels) if labels is not None else tuple(
            f"e{k}" for k in range(n))
        if len(self.labels) != n:
            raise ValueError("labels length mismatch")
        if check:
            self._check_gram()

    def _check_gram(self, tol: float = 1e-9):
        n = len(self)
        if n <= _CHECK_CUTOFF:
            gram = self.functionals @ self.vectors.T
            err = np.abs(gram - np.eye(n)).max()
        else:
            # sampled rows keep the check affordable on big systems
            rng = np.random.default_rng(0)
            rows = np.unique(np.concatenate([
                np.arange(8), rng.integers(0, n, size=64), [n - 1]]))
            gram = self.functionals[rows] @ self.vectors.T
            eye = np.zeros((len(rows), n))
            eye[np.arange(len(rows)), rows] = 1.0
            err = np.abs(gram - eye).max()
        if err > tol:
            raise ValueError(f"biorthogonality violated: max error {err:.3e}")

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def vector(self, k: int) -> Element:
        return Element(self.space, self.vectors[k])

    def functional(self, k: int) -> Element:
        return Element(self.space, self.functionals[k])


def _coords(sys: BiorthogonalSystem, x) -> np.ndarray:
    if isinstance(x, Element):
        if x.space != sys.space:
            raise ValueError("element lives in a different space")
        return x.coords
    return np.asarray(x, dtype=float)


def coefficients(sys: BiorthogonalSystem, x) -> np.ndarray:
    """f_k(x) for every k, via the unweighted pairing."""
    return sys.functionals @ _coords(sys, x)


def reconstruct(sys: BiorthogonalSystem, coeffs) -> Element:
    """sum_k a_k x_k as an element of the host."""
    a = np.asarray(coeffs, dtype=float)
    if len(a) > len(sys):
        raise ValueError("more coefficients than vectors")
    return Element(sys.space, a @ sys.vectors[: len(a)])


def _prefix_rows(sys: BiorthogonalSystem, a: np.ndarray, order=None) -> np.ndarray:
    """Cumulative rows sum_{k<=i} a_{o_k} x_{o_k}, one row per prefix."""
    if order is None:
        cols = sys.vectors[: len(a)]
        coef = a
    else:
        order = np.asarray(order, dtype=int)
        cols = sys.vectors[order]
        coef = a[order] if len(a) == len(sys) else np.asarray(a, dtype=float)
    return np.cumsum(coef[:, None] * cols, axis=0)


def partial_sum(sys: BiorthogonalSystem, x, n: int) -> Element:
    """P_n x = sum_{k<n...} of the first n coefficient terms."""
    if not 1 <= n <= len(sys):
        raise ValueError("n out of range")
    a = coefficients(sys, x)
    return Element(sys.space, a[:n] @ sys.vectors[:n])


def maximal_partial(sys: BiorthogonalSystem, x, m: int) -> Element:
    """Coordinatewise sup of |P_1 x|, ..., |P_m x|."""
    if not 1 <= m <= len(sys):
        raise ValueError("m out of range")
    a = coefficients(sys, x)
    rows = _prefix_rows(sys, a[:m])
    return Element(sys.space, np.max(np.abs(rows), axis=0))


@dataclass
class ConstantReport:
    """A certified lower bound: the value, the witness that attained it, which
    search produced it, and how many ratio evaluations were spent."""

    constant_name: str
    value: float
    witness: np.ndarray
    search: str
    budget: int
    indices: np.ndarray | None = None   # ordered index set, for k-vee style reports
    rows: tuple = field(default=(), repr=False)   # per-witness (id, ratio, m) trace

    def __post_init__(self):
        if self.constant_name not in CONSTANT_NAMES:
            raise ValueError(f"unknown constant name {self.constant_name!r}")
        if self.search not in SEARCH_TAGS:
            raise ValueError(f"unknown search tag {self.search!r}")
        self.witness = np.asarray(self.witness, dtype=float)
        if self.indices is not None:
            self.indices = np.asarray(self.indices, dtype=int)

    def to_json(self) -> dict:
        out = {
            "constant": self.constant_name,
            "value": self.value,
            "witness": self.witness.tolist(),
            "search": self.search,
            "budget": self.budget,
        }
        if self.indices is not None:
            out["indices"] = self.indices.tolist()
        return out


def report_from_json(obj) -> ConstantReport:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return ConstantReport(obj["constant"], obj["value"],
                          np.asarray(obj["witness"], dtype=float),
                          obj["search"], obj["budget"],
                          np.asarray(obj["indices"], dtype=int) if "indices" in obj else None)


def _ratio_search(sys, witnesses, ratio_fn, name, search="structured_family"):
    best_val, best_wit = -np.inf, None
    rows = []
    count = 0
    for wid, w in enumerate(witnesses):
        a = np.asarray(w, dtype=float)
        r = ratio_fn(a)
        rows.append((wid, float(r), int(len(a))))
        count += 1
        if r > best_val:
            best_val, best_wit = r, a
    if best_wit is None:
        raise ValueError("empty witness family")
    return ConstantReport(name, float(best_val), best_wit, search, count,
                          rows=tuple(rows))


def _prefix_norm_ratio(sys, a):
    rows = _prefix_rows(sys, a)
    norms = sys.space.norms(rows)
    return norms.max() / norms[-1]


def _prefix_join_ratio(sys, a):
    rows = _prefix_rows(sys, a)
    peak = np.maximum.accumulate(np.abs(rows), axis=0)[-1]
    return sys.space.norm(peak) / sys.space.norms(rows[-1:])[0]


def _modulus_sum_ratio(sys, a):
    m = len(a)
    total = np.abs(a) @ np.abs(sys.vectors[:m])
    return sys.space.norm(total) / sys.space.norm(a @ sys.vectors[:m])


def basis_constant(sys: BiorthogonalSystem, witnesses) -> ConstantReport:
    """max over witnesses of max_n ||P_n|| / ||full sum||, a lower bound for
    the partial-sum constant."""
    return _ratio_search(sys, witnesses, lambda a: _prefix_norm_ratio(sys, a),
                         "basis")


def bibasis_constant(sys: BiorthogonalSystem, witnesses) -> ConstantReport:
    """max over witnesses of ||join of |P_n||| / ||full sum||."""
    return _ratio_search(sys, witnesses, lambda a: _prefix_join_ratio(sys, a),
                         "bibasis")


def absolute_constant(sys: BiorthogonalSystem, witnesses) -> ConstantReport:
    """max over witnesses of ||sum |a_k x_k||| / ||sum a_k x_k||."""
    return _ratio_search(sys, witnesses, lambda a: _modulus_sum_ratio(sys, a),
                         "absolute")


def recompute_constant(sys: BiorthogonalSystem, report: ConstantReport) -> float:
    """Re-evaluate a stored witness; used to audit report round-trips."""
    a = report.witness
    if report.constant_name == "basis":
        return float(_prefix_norm_ratio(sys, a))
    if report.constant_name == "bibasis":
        return float(_prefix_join_ratio(sys, a))
    if report.constant_name == "absolute":
        return float(_modulus_sum_ratio(sys, a))
    # greedy-flavored reports are recomputed by the greedy module
    from latmax import greedy
    return greedy.recompute_greedy_constant(sys, report)


def witness_rows_csv(report: ConstantReport) -> str:
    """Per-witness trace as CSV text (witness id, ratio, m)."""
    lines = ["witness,ratio,m"]
    for wid, ratio, m in report.rows:
        lines.append(f"{wid},{ratio!r},{m}")
    return "\n".join(lines) + "\n"
