"""Greedy orderings, greedy sums, and their lattice maximal variants.

Orderings are 0-based permutations.  The natural ordering sorts by decreasing
modulus, breaks ties by smaller index, and places zero coefficients after all
nonzero ones in index order; with that convention every greedy sum of x is a
prefix of some enumerated ordering, and permuting the zero tail never changes
a greedy sum, so enumeration only branches inside nonzero tie groups.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from latmax.spaces import Element
from latmax.systems import (BiorthogonalSystem, ConstantReport, coefficients,
                            maximal_partial)


@dataclass(frozen=True)
class GreedyOrdering:
    permutation: tuple
    source: tuple

    def __post_init__(self):
        a = np.asarray(self.source, dtype=float)
        p = np.asarray(self.permutation, dtype=int)
        if sorted(p.tolist()) != list(range(len(a))):
            raise ValueError("permutation must cover all indices exactly once")
        mods = np.abs(a)[p]
        if np.any(np.diff(mods) > 0):
            raise ValueError("moduli must be nonincreasing along the permutation")


def natural_greedy_ordering(coeffs) -> GreedyOrdering:
    a = np.asarray(coeffs, dtype=float)
    # lexsort: last key is primary; -|a| ascending = modulus descending,
    # ties and the zero tail then fall back to index order
    perm = np.lexsort((np.arange(len(a)), -np.abs(a)))
    return GreedyOrdering(tuple(int(i) for i in perm), tuple(a.tolist()))


def count_greedy_orderings(coeffs) -> int:
    a = np.abs(np.asarray(coeffs, dtype=float))
    total = 1
    for v in np.unique(a[a > 0]):
        total *= math.factorial(int(np.sum(a == v)))
    return total


def all_greedy_orderings(coeffs, limit: int = 100000):
    """Every greedy ordering of the nonzero part (zero tail fixed in index
    order; permuting it never changes a greedy sum)."""
    a = np.asarray(coeffs, dtype=float)
    if count_greedy_orderings(a) > limit:
        raise ValueError("too many greedy orderings; raise limit or shrink ties")
    mods = np.abs(a)
    zeros = [int(i) for i in np.flatnonzero(mods == 0)]
    groups = []
    for v in sorted(set(mods[mods > 0]), reverse=True):
        groups.append([int(i) for i in np.flatnonzero(mods == v)])
    pools = [list(itertools.permutations(g)) for g in groups]
    for combo in itertools.product(*pools) if pools else [()]:
        head = [i for block in combo for i in block]
        yield GreedyOrdering(tuple(head + zeros), tuple(a.tolist()))


def _resolve_ordering(a: np.ndarray, ordering) -> np.ndarray:
    if ordering is None:
        ordering = natural_greedy_ordering(a)
    if not np.allclose(np.asarray(ordering.source), a, rtol=0, atol=0):
        raise ValueError("ordering was built from different coefficients")
    return np.asarray(ordering.permutation, dtype=int)


def greedy_sum(sys: BiorthogonalSystem, x, m: int, ordering=None) -> Element:
    """G_m(x): the sum of the first m terms in greedy order."""
    a = coefficients(sys, x)
    if not 0 <= m <= len(sys):
        raise ValueError("m out of range")
    perm = _resolve_ordering(a, ordering)[:m]
    return Element(sys.space, a[perm] @ sys.vectors[perm] if m else
                   np.zeros(sys.space.dim))


def _ordered_join(sys: BiorthogonalSystem, a: np.ndarray, perm: np.ndarray) -> np.ndarray:
    rows = np.cumsum(a[perm][:, None] * sys.vectors[perm], axis=0)
    return np.max(np.abs(rows), axis=0)


def greedy_maximal(sys: BiorthogonalSystem, x, m: int, ordering=None) -> Element:
    """G^v_m(x) = join of |G_1(x)|, ..., |G_m(x)|; coordinatewise
    nondecreasing in m by construction."""
    a = coefficients(sys, x)
    if not 0 <= m <= len(sys):
        raise ValueError("m out of range")
    if m == 0:
        return Element(sys.space, np.zeros(sys.space.dim))
    perm = _resolve_ordering(a, ordering)[:m]
    return Element(sys.space, _ordered_join(sys, a, perm))


def ordered_projection_maximal(sys: BiorthogonalSystem, x, A) -> Element:
    """P_A^v(x): join of prefix sums along the ordered index set A."""
    A = np.asarray(A, dtype=int)
    if len(np.unique(A)) != len(A):
        raise ValueError("repeated indices in A")
    a = coefficients(sys, x)
    return Element(sys.space, _ordered_join(sys, a, A))


def strictify(coeffs, ordering: GreedyOrdering, scale: float = 1e-13):
    """Nudge moduli so the given greedy ordering becomes the unique natural
    one.  The bump at permutation position j is (K - j) * scale, small enough
    to preserve every strict modulus gap but break all exact ties."""
    a = np.asarray(coeffs, dtype=float).copy()
    perm = np.asarray(ordering.permutation, dtype=int)
    K = len(perm)
    for j, idx in enumerate(perm):
        if a[idx] != 0:
            a[idx] += math.copysign((K - j) * scale, a[idx])
    return a


def _support_size(a: np.ndarray) -> int:
    return int(np.sum(a != 0))


def quasi_greedy_constant(sys: BiorthogonalSystem, witnesses) -> ConstantReport:
    """max over witnesses and m of ||G_m(x)|| / ||x||, natural ordering."""
    best, best_w, rows = -np.inf, None, []
    for wid, w in enumerate(witnesses):
        a = np.asarray(w, dtype=float)
        x = Element(sys.space, a @ sys.vectors[: len(a)])
        av = coefficients(sys, x)
        perm = natural_greedy_ordering(av).permutation
        supp = _support_size(av)
        nx = sys.space.norm(x)
        prefix = np.cumsum(av[np.asarray(perm[:supp])][:, None]
                           * sys.vectors[np.asarray(perm[:supp])], axis=0)
        r = sys.space.norms(prefix).max() / nx if supp else 0.0
        rows.append((wid, float(r), supp))
        if r > best:
            best, best_w = r, a
    if best_w is None:
        raise ValueError("empty witness family")
    return ConstantReport("quasi_greedy", float(best), best_w,
                          "structured_family", len(rows), rows=tuple(rows))


def uqg_constant(sys: BiorthogonalSystem, witnesses,
                 enumerate_orderings: bool = False,
                 ordering_limit: int = 40320) -> ConstantReport:
    """max over witnesses of ||G^v_supp(x)|| / ||x||.

    With enumerate_orderings the maximum also runs over every greedy ordering
    of each witness (tie groups permuted; feasible for support <= 12), which
    makes the tie-independence of the supremum checkable exactly.
    """
    best, best_w, rows = -np.inf, None, []
    for wid, w in enumerate(witnesses):
        a = np.asarray(w, dtype=float)
        x = Element(sys.space, a @ sys.vectors[: len(a)])
        av = coefficients(sys, x)
        supp = _support_size(av)
        if supp == 0:
            rows.append((wid, 0.0, 0))
            continue
        nx = sys.space.norm(x)
        if enumerate_orderings:
            orderings = all_greedy_orderings(av, limit=ordering_limit)
        else:
            orderings = [natural_greedy_ordering(av)]
        r = max(sys.space.norm(
            _ordered_join(sys, av, np.asarray(o.permutation[:supp], dtype=int)))
            for o in orderings) / nx
        rows.append((wid, float(r), supp))
        if r > best:
            best, best_w = r, a
    if best_w is None:
        raise ValueError("empty witness family")
    return ConstantReport("uniform_quasi_greedy", float(best), best_w,
                          "structured_family", len(rows), rows=tuple(rows))


def kvee_estimate(sys: BiorthogonalSystem, m: int, budget: int,
                  seed: int = 0, structured=()) -> ConstantReport:
    """Lower bound for sup over ordered A with |A| <= m of ||P_A^v|| via
    structured witnesses, random ordered subsets, and coordinate ascent."""
    if not 1 <= m <= len(sys):
        raise ValueError("m out of range")
    rng = np.random.default_rng(seed)
    state = {"evals": 0, "best": (-np.inf, None, None, None)}

    def consider(a, A, source):
        if state["evals"] >= budget:
            return
        a = np.asarray(a, dtype=float)
        A = np.asarray(A, dtype=int)
        x = a @ sys.vectors[: len(a)]
        nx = sys.space.norm(x)
        if nx == 0:
            return
        state["evals"] += 1
        r = sys.space.norm(_ordered_join(sys, a, A)) / nx
        if r > state["best"][0]:
            state["best"] = (r, a, A, source)

    for a, A in structured:
        if len(A) <= m:
            consider(a, A, "structured_family")

    n = len(sys)
    while state["evals"] < max(0, budget - 2 * m):
        size = int(rng.integers(1, m + 1))
        A = rng.permutation(n)[:size]
        a = np.zeros(n)
        a[A] = rng.standard_normal(size)
        consider(a, A, "random_ascent")

    # coordinate ascent polishes the incumbent: sign flips, then halvings
    # and doublings of single coefficients, keeping improvements
    r0, a0, A0, src0 = state["best"]
    if a0 is not None:
        for factor in (-1.0, 0.5, 2.0):
            for idx in A0:
                if state["evals"] >= budget:
                    break
                trial = a0.copy()
                trial[idx] *= factor
                consider(trial, A0, "random_ascent" if src0 != "structured_family"
                         else "structured_family")
                if state["best"][0] > r0:
                    r0, a0 = state["best"][0], state["best"][1]

    value, wit, A, source = state["best"]
    if wit is None:
        raise ValueError("budget too small to evaluate any witness")
    return ConstantReport("kvee", float(value), wit,
                          source if source == "structured_family" else "random_ascent",
                          state["evals"], indices=A)


def recompute_greedy_constant(sys: BiorthogonalSystem, report: ConstantReport) -> float:
    a = np.asarray(report.witness, dtype=float)
    x = Element(sys.space, a @ sys.vectors[: len(a)])
    av = coefficients(sys, x)
    supp = _support_size(av)
    nx = sys.space.norm(x)
    if report.constant_name == "quasi_greedy":
        perm = np.asarray(natural_greedy_ordering(av).permutation[:supp], dtype=int)
        prefix = np.cumsum(av[perm][:, None] * sys.vectors[perm], axis=0)
        return float(sys.space.norms(prefix).max() / nx)
    if report.constant_name == "uniform_quasi_greedy":
        return float(sys.space.norm(greedy_maximal(sys, x, supp)) / nx)
    if report.constant_name == "kvee":
        return float(sys.space.norm(_ordered_join(sys, av, report.indices)) / nx)
    raise ValueError(f"not a greedy constant: {report.constant_name!r}")


@dataclass
class CheckReport:
    """Worst observed lhs/rhs ratios for the constant-coefficient
    inequalities, evaluated with supplied (lower-bound) constants.

    Keys: join_vs_flat, flat_signed_lower, signed_sum_vs_join,
    signed_join_upper, scaled_join, modulus_ratio_bound.
    """

    worst: dict
    passed: bool
    instances: int

    def to_json(self) -> dict:
        return {"worst": {k: float(v) for k, v in self.worst.items()},
                "passed": self.passed, "instances": self.instances}


def constant_coefficient_checks(sys: BiorthogonalSystem, index_sets,
                                sign_patterns, c_qg: float, c_qg_vee: float,
                                seed: int = 0) -> CheckReport:
    """Constant-coefficient permutability inequalities as observed envelopes.

    For each ordered index set A and sign pattern eps, with 1_A = sum of the
    A-vectors and joins taken along A's order:
      join_vs_flat:        ||join prefix 1_A||            <= Cv ||1_A||
      flat_signed_lower:   ||join prefix 1_A||            <= 2 Cv ||sum eps||
      signed_sum_vs_join:  ||sum eps||                    <= ||join prefix eps|| (constant-free)
      signed_join_upper:   ||join prefix eps||            <= 2 Cv ||1_A||
      scaled_join:         ||join prefix a||              <= 2 max|a| Cv ||1_A||
      modulus_ratio_bound: ||P_A^v x||                    <= 8 C^2 Cv (max|a|/min|a|) ||x||
    with a drawn per instance from a seeded rng.  Supplied constants are lower
    bounds, so ratios above 1 indicate an underestimated constant, not a
    failed theorem; the report records the worst ratio per inequality.
    """
    rng = np.random.default_rng(seed)
    worst = {k: 0.0 for k in ("join_vs_flat", "flat_signed_lower",
                              "signed_sum_vs_join", "signed_join_upper",
                              "scaled_join", "modulus_ratio_bound")}
    count = 0
    for A, eps in zip(index_sets, sign_patterns):
        A = np.asarray(A, dtype=int)
        eps = np.asarray(eps, dtype=float)
        ones = np.zeros(len(sys)); ones[A] = 1.0
        signed = np.zeros(len(sys)); signed[A] = eps
        a_rand = np.zeros(len(sys))
        a_rand[A] = eps * rng.uniform(0.5, 2.0, size=len(A))
        flat = sys.space.norm(ones @ sys.vectors)
        signed_sum = sys.space.norm(signed @ sys.vectors)
        join_flat = sys.space.norm(_ordered_join(sys, ones, A))
        join_signed = sys.space.norm(_ordered_join(sys, signed, A))
        join_rand = sys.space.norm(_ordered_join(sys, a_rand, A))
        x_norm = sys.space.norm(a_rand @ sys.vectors)
        amax, amin = np.abs(a_rand[A]).max(), np.abs(a_rand[A]).min()
        ratios = {
            "join_vs_flat": join_flat / (c_qg_vee * flat),
            "flat_signed_lower": join_flat / (2 * c_qg_vee * signed_sum),
            "signed_sum_vs_join": signed_sum / join_signed,
            "signed_join_upper": join_signed / (2 * c_qg_vee * flat),
            "scaled_join": join_rand / (2 * amax * c_qg_vee * flat),
            "modulus_ratio_bound": join_rand / (8 * c_qg ** 2 * c_qg_vee
                                                * (amax / amin) * x_norm),
        }
        for k, v in ratios.items():
            worst[k] = max(worst[k], float(v))
        count += 1
    return CheckReport(worst, all(v <= 1.0 for v in worst.values()), count)
