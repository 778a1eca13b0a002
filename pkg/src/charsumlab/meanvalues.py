"""Vinogradov system counts and exact double mean values.

J(r, d, V) counts 2r-tuples in [1, V] whose halves share all power sums
up to degree d.  The double mean value W (an integral over the phase
coefficients of the 2r-th moment of a short character sum) is never
integrated numerically on the main path: expanding the power and using
orthogonality of e^(2 pi i alpha k) collapses the integral onto the
Vinogradov solution set, so W is an exact finite sum of complete
character sums.  A Riemann-sum reference exists for d = 1 as an
independent oracle.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .characters import DirichletCharacter
from .errors import (BudgetExceeded, MissingCount, RangeViolation,
                     UnsupportedDegree)
from .ffield import FieldCharacter
from .sums import (TupleSpec, complete_rational_char_sum,
                   complete_rational_char_sum_field, pairwise_sum)

DEFAULT_TUPLE_BUDGET = 10**9
DEFAULT_SOLUTION_BUDGET = 10**7

_REAL_PART_RTOL = 1e-9
_REAL_PART_ATOL = 1e-12


@dataclass(frozen=True)
class VinogradovParams:
    """Parameters (r, d, V) of a Vinogradov system."""

    r: int
    d: int
    V: int

    def __post_init__(self):
        if self.r < 1 or self.d < 1 or self.V < 1:
            raise ValueError("r, d, V must all be >= 1")


@dataclass(frozen=True)
class PowerSumKey:
    """The d-vector of power sums of an r-tuple, the meet-in-the-middle key."""

    sums: tuple[int, ...]


def vinogradov_count_naive(p: VinogradovParams, budget: int = DEFAULT_TUPLE_BUDGET) -> int:
    """Exact J(r, d, V) by full 2r-fold enumeration.

    The 2r-dimensional grid is swept in slices along the first coordinate
    to bound memory; the work is still V^(2r) tuple checks.
    """
    r, d, V = p.r, p.d, p.V
    if V ** (2 * r) > budget:
        raise BudgetExceeded(f"V^(2r) = {V ** (2 * r)} exceeds budget {budget}")
    _check_power_sum_range(p)
    vals = np.arange(1, V + 1, dtype=np.int64)
    powers = [vals**i for i in range(1, d + 1)]
    rest_axes = 2 * r - 1
    shape = (V,) * rest_axes

    def axis_view(arr, axis):
        sh = [1] * rest_axes
        sh[axis] = V
        return arr.reshape(sh)

    total = 0
    for first in range(1, V + 1):
        mask = np.ones(shape, dtype=bool)
        for i in range(1, d + 1):
            diff = np.full(shape, first**i, dtype=np.int64)
            for axis in range(rest_axes):
                sign = 1 if axis < r - 1 else -1
                diff = diff + sign * axis_view(powers[i - 1], axis)
            mask &= diff == 0
        total += int(mask.sum())
    return total


def _check_power_sum_range(p: VinogradovParams):
    # the largest key component is r * V^d; keep it inside int64
    if p.r * p.V**p.d >= 1 << 62:
        raise BudgetExceeded(
            f"power sums up to {p.r} * {p.V}^{p.d} leave the 64-bit range")


def _half_power_sums(p: VinogradovParams) -> np.ndarray:
    """(V^r, d) matrix of power-sum keys over all r-tuples, lexicographic."""
    r, d, V = p.r, p.d, p.V
    _check_power_sum_range(p)
    grids = np.meshgrid(*([np.arange(1, V + 1, dtype=np.int64)] * r), indexing="ij")
    stacked = np.stack([g.ravel() for g in grids], axis=-1)
    return np.stack([(stacked**i).sum(axis=1) for i in range(1, d + 1)], axis=-1)


def vinogradov_count_mitm(p: VinogradovParams, budget: int = DEFAULT_TUPLE_BUDGET) -> int:
    """J(r, d, V) as sum of squared multiplicities of half power-sum keys."""
    r, d, V = p.r, p.d, p.V
    if r * V**r > budget:
        raise BudgetExceeded(f"r * V^r = {r * V ** r} exceeds budget {budget}")
    keys = _half_power_sums(p)
    _, counts = np.unique(keys, axis=0, return_counts=True)
    return int((counts.astype(object) ** 2).sum())


def power_sum_key(half: Sequence[int], d: int) -> PowerSumKey:
    """Power sums of one half-tuple, degrees 1 through d."""
    return PowerSumKey(tuple(sum(x**i for x in half) for i in range(1, d + 1)))


def _solution_groups(p: VinogradovParams) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for half in itertools.product(range(1, p.V + 1), repeat=p.r):
        groups.setdefault(power_sum_key(half, p.d).sums, []).append(half)
    return groups


def iterate_solutions(p: VinogradovParams,
                      budget: int = DEFAULT_SOLUTION_BUDGET) -> Iterator[TupleSpec]:
    """Yield every solution tuple exactly once, in lexicographic order."""
    groups = _solution_groups(p)
    total = sum(len(halves) ** 2 for halves in groups.values())
    if total > budget:
        raise BudgetExceeded(f"J = {total} solutions exceed budget {budget}")

    def gen():
        for key in sorted(groups):
            halves = groups[key]
            for left in halves:
                for right in halves:
                    yield TupleSpec(r=p.r, v=left + right)

    return gen()


def has_many_distinct(v: Sequence[int], r: int) -> bool:
    """True when the tuple has at least r + 1 distinct entries."""
    return len(set(v)) >= r + 1


def split_solutions(p: VinogradovParams, budget: int = DEFAULT_SOLUTION_BUDGET):
    """Partition the solution set by the r + 1 distinct-entries threshold.

    Returns (spread, clustered): tuples with at least r + 1 distinct
    entries, then everything else (the near-diagonal family).
    """
    spread, clustered = [], []
    for t in iterate_solutions(p, budget=budget):
        (spread if has_many_distinct(t.v, p.r) else clustered).append(t)
    return spread, clustered


# ----------------------------------------------------------------------
# exact double mean values

def _check_weights(beta, V: int, allow_large: bool) -> np.ndarray:
    if beta is None:
        return np.ones(V, dtype=np.complex128)
    beta = np.asarray(beta, dtype=np.complex128)
    if beta.shape != (V,):
        raise ValueError(f"need one weight per v in [1, {V}]")
    if not allow_large and np.any(np.abs(beta) > 1 + 1e-9):
        raise ValueError("weights must satisfy |beta_v| <= 1 (or pass allow_large_weights)")
    return beta


def _weighted_expansion(p: VinogradovParams, beta, complete_sum_fn, budget,
                        allow_large_weights=False) -> float:
    """Sum the expansion over canonical (sorted-half) pairs.

    Both the weight product and the complete sum are invariant under
    permuting entries within a half, so each canonical pair is evaluated
    once and weighted by its multiplicity.
    """
    beta = _check_weights(beta, p.V, allow_large_weights)
    groups = _solution_groups(p)
    total_solutions = sum(len(halves) ** 2 for halves in groups.values())
    if total_solutions > budget:
        raise BudgetExceeded(f"J = {total_solutions} solutions exceed budget {budget}")
    terms = []
    for key in sorted(groups):
        tally: dict[tuple[int, ...], int] = {}
        for half in groups[key]:
            canon = tuple(sorted(half))
            tally[canon] = tally.get(canon, 0) + 1
        items = sorted(tally.items())
        weights = []
        for canon, count in items:
            w = 1.0 + 0j
            for v in canon:
                w *= beta[v - 1]
            weights.append(count * w)
        for (left, _), wl in zip(items, weights):
            for (right, _), wr in zip(items, weights):
                csum = complete_sum_fn(TupleSpec(r=p.r, v=left + right))
                terms.append(wl * np.conjugate(wr) * csum)
    total = pairwise_sum(np.asarray(terms, dtype=np.complex128))
    if abs(total.imag) > _REAL_PART_RTOL * abs(total.real) + _REAL_PART_ATOL:
        raise ArithmeticError(f"mean value has imaginary residue {total.imag}")
    return float(total.real)


def exact_W_squarefree(chi: DirichletCharacter, beta, p: VinogradovParams,
                       budget: int = DEFAULT_SOLUTION_BUDGET,
                       allow_large_weights: bool = False) -> float:
    """The double mean value W, exactly, via the solution-set expansion."""
    return _weighted_expansion(
        p, beta, lambda t: complete_rational_char_sum(chi, t), budget,
        allow_large_weights)


def exact_W_multichar(chi_list: Sequence[DirichletCharacter], beta,
                      p: VinogradovParams,
                      budget: int = DEFAULT_SOLUTION_BUDGET,
                      allow_large_weights: bool = False) -> float:
    """Multidimensional W: the per-solution factor is a product of
    complete sums, one per prime modulus."""
    for chi in chi_list:
        if chi.modulus.num_prime_factors != 1:
            raise ValueError("each character must have a prime modulus")
        if p.V > chi.q:
            raise RangeViolation(f"V = {p.V} exceeds q_i = {chi.q}")

    def product_sum(t: TupleSpec) -> complex:
        out = 1.0 + 0j
        for chi in chi_list:
            out *= complete_rational_char_sum(chi, t)
        return out

    return _weighted_expansion(p, beta, product_sum, budget, allow_large_weights)


def exact_W_field(chi: FieldCharacter, beta, p: VinogradovParams,
                  budget: int = DEFAULT_SOLUTION_BUDGET,
                  allow_large_weights: bool = False) -> float:
    """Field version of W, with lambda ranging over GF(q^n)."""
    return _weighted_expansion(
        p, beta, lambda t: complete_rational_char_sum_field(chi, t), budget,
        allow_large_weights)


def lemma_rhs(kind: str, *, q: float, V: int, r: int, d: int | None = None,
              s: int | None = None, j_count: int | None = None) -> float:
    """Main term of the mean-value bound, without any q^o(1) factor.

    kind L3: q V^r + sqrt(q) sqrt(J(r,d,V)) V^r
    kind L4: q V^r + sqrt(q) J(r-s-1,d,V) V^(2s+2)
    kind L5: q V^r + sqrt(q) J(r,d,V)           (q = product of the primes)
    kind L6: Q V^r + sqrt(Q) J(r,d,V)           (q = field size Q = p^n)
    """
    if j_count is None:
        raise MissingCount(f"{kind} needs its Vinogradov count")
    if kind == "L3":
        return q * V**r + math.sqrt(q) * math.sqrt(j_count) * V**r
    if kind == "L4":
        if s is None:
            raise MissingCount("L4 needs the prime-factor cap s")
        return q * V**r + math.sqrt(q) * j_count * V ** (2 * s + 2)
    if kind in ("L5", "L6"):
        return q * V**r + math.sqrt(q) * j_count
    raise ValueError(f"unknown bound kind {kind!r}")


# ----------------------------------------------------------------------
# quadrature reference (d = 1 only)

def _value_matrix(chi, V: int) -> np.ndarray:
    """T[lambda, v] = chi(lambda + v) over the full lambda range."""
    if isinstance(chi, FieldCharacter):
        spec = chi.spec
        encs = np.arange(spec.size, dtype=np.int64)
        cols = [chi.value_many(spec.add_scalar_many(encs, v % spec.q))
                for v in range(1, V + 1)]
        return np.stack(cols, axis=-1)
    if isinstance(chi, DirichletCharacter):
        lam = np.arange(1, chi.q + 1, dtype=np.int64)
        return np.stack([chi.value_many(lam + v) for v in range(1, V + 1)], axis=-1)
    mats = [_value_matrix(c, V) for c in chi]
    T = mats[0]
    for m in mats[1:]:
        T = (T[:, None, :] * m[None, :, :]).reshape(-1, V)
    return T


def quadrature_W_reference(chi, beta, p: VinogradovParams, grid: int = 2**14,
                           allow_large_weights: bool = False) -> float:
    """Riemann-sum approximation of the defining integral of W, d = 1 only.

    The integrand is a trigonometric polynomial of degree below r*V in
    alpha, so the uniform rule is exact once grid > r*(V-1); smaller
    grids show the generic first-order convergence.
    """
    if p.d != 1:
        raise UnsupportedDegree("quadrature reference only supports d = 1")
    if grid < 2:
        raise ValueError("grid must be >= 2")
    beta = _check_weights(beta, p.V, allow_large_weights)
    T = _value_matrix(chi, p.V) * beta[None, :]
    vs = np.arange(1, p.V + 1)
    total = 0.0
    block = max(1, min(grid, (1 << 22) // max(T.shape[0], 1)))
    for start in range(0, grid, block):
        alphas = np.arange(start, min(start + block, grid)) / grid
        phases = np.exp(2j * np.pi * np.outer(vs, alphas))
        S = T @ phases
        total += float((np.abs(S) ** (2 * p.r)).sum())
    return total / grid
