"""Exact lattice searches: closest vectors, min chi, Artin cycle, characteristic vectors.

All optimisation reduces to one problem: minimise the positive definite
norm ``q(v) = -(v, v)`` over a coset ``shift + c*L`` measured from a
rational target.  It is solved by Fincke-Pohst style depth-first
enumeration over the exact LDL factorisation of ``-Gram``, with the
search radius seeded by sequential (Babai) rounding.  No floating point
is involved, so the reported optimum is certified.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

import numpy as np

from .exact import ldl, matvec, round_half_down
from .lattice import (
    Cycle,
    LatticeContext,
    NotUnimodularError,
    as_cycle,
    chi,
    is_unimodular,
    square,
)

DEFAULT_NODE_BUDGET = 10**7
DEFAULT_BOX_BUDGET = 10**7
DEFAULT_MAX_MINIMIZERS = 64


def default_node_budget() -> int:
    return int(os.environ.get("SURFSING_NODE_BUDGET", DEFAULT_NODE_BUDGET))


class BudgetExceededError(RuntimeError):
    def __init__(self, message: str, result: "SearchResult | None" = None):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class CosetCVPProblem:
    """Minimise ``q(x - target)`` over ``x in shift + scale*L``."""

    context: LatticeContext
    target: Cycle
    shift: Cycle
    scale: int = 1

    def __post_init__(self):
        if self.scale < 1:
            raise ValueError("scale must be a positive integer")
        object.__setattr__(self, "target", as_cycle(self.context, self.target))
        object.__setattr__(self, "shift", as_cycle(self.context, self.shift))


@dataclass(frozen=True)
class SearchResult:
    optimum_value: Fraction
    canonical: Cycle
    minimizers: tuple[Cycle, ...]
    nodes_visited: int
    complete: bool = True
    truncated: bool = False  # more optima exist than were kept

    def __post_init__(self):
        if self.canonical not in self.minimizers and not self.truncated:
            raise AssertionError("canonical minimizer missing from minimizers")


# ---------------------------------------------------------------------------
# core enumeration

def _enumerate_closest(
    L: Sequence[Sequence[Fraction]],
    D: Sequence[Fraction],
    target: Sequence[Fraction],
    budget: int,
    max_minimizers: int,
):
    """All integer ``l`` minimising ``sum_k D_k ((L^T (l - t))_k)^2``.

    Returns ``(value, canonical, kept, nodes, complete, truncated)``.
    """
    n = len(D)
    t = [Fraction(x) for x in target]

    def center(k, l):
        return t[k] - sum((L[j][k] * (l[j] - t[j]) for j in range(k + 1, n)), Fraction(0))

    # Babai: sequential rounding from the last coordinate down.
    l0 = [0] * n
    bound = Fraction(0)
    for k in range(n - 1, -1, -1):
        c = center(k, l0)
        l0[k] = round_half_down(c)
        bound += D[k] * (l0[k] - c) ** 2

    best = [bound]
    kept: list[tuple[int, ...]] = []
    canonical = [None]
    truncated = [False]
    nodes = [0]
    l = [0] * n

    def record(value):
        point = tuple(l)
        if value < best[0]:
            best[0] = value
            kept.clear()
            canonical[0] = None
            truncated[0] = False
        if canonical[0] is None or point < canonical[0]:
            canonical[0] = point
        if len(kept) < max_minimizers:
            kept.append(point)
        else:
            truncated[0] = True

    def visit(k, partial):
        c = center(k, l)
        n0 = round_half_down(c)
        for direction in (0, 1):
            step = 1 if direction == 0 else -1
            v = n0 if direction == 0 else n0 - 1
            while True:
                cost = partial + D[k] * (v - c) ** 2
                if cost > best[0]:
                    break
                nodes[0] += 1
                if nodes[0] > budget:
                    raise _Stop
                l[k] = v
                if k == 0:
                    record(cost)
                else:
                    visit(k - 1, cost)
                v += step
        l[k] = 0

    complete = True
    try:
        visit(n - 1, Fraction(0))
    except _Stop:
        complete = False
    if canonical[0] is None:
        # Budget ran out before even the Babai point was revisited.
        canonical[0] = tuple(l0)
        kept[:] = [tuple(l0)]
        best[0] = bound
    kept.sort()
    return best[0], canonical[0], kept, nodes[0], complete, truncated[0]


class _Stop(Exception):
    pass


def closest_in_form(form: Sequence[Sequence], target: Sequence, budget: int | None = None,
                    max_minimizers: int = DEFAULT_MAX_MINIMIZERS):
    """Integer vectors minimising ``(k - target)^T form (k - target)`` for a positive definite form."""
    L, D = ldl(form)
    return _enumerate_closest(L, D, target, budget or default_node_budget(), max_minimizers)


def solve_coset_cvp(problem: CosetCVPProblem, budget: int | None = None,
                    max_minimizers: int = DEFAULT_MAX_MINIMIZERS,
                    require_complete: bool = False) -> SearchResult:
    """Exact minimum of ``q(x - target)`` over ``x in shift + scale*L``.

    The canonical minimizer is the lexicographically smallest optimal ``x``.
    With ``require_complete`` a budget overrun raises
    :class:`BudgetExceededError` (carrying the best-so-far result) instead of
    returning it flagged ``complete=False``.
    """
    ctx, c = problem.context, problem.scale
    budget = default_node_budget() if budget is None else budget
    reduced = (problem.target - problem.shift) / c
    value, canon, kept, nodes, complete, truncated = _enumerate_closest(
        ctx.ldl_l, ctx.ldl_d, reduced.coords, budget, max_minimizers
    )
    lift = lambda p: problem.shift + c * Cycle(p)
    result = SearchResult(
        optimum_value=value * c * c,
        canonical=lift(canon),
        minimizers=tuple(lift(p) for p in kept),
        nodes_visited=nodes,
        complete=complete,
        truncated=truncated,
    )
    if require_complete and not complete:
        raise BudgetExceededError(f"enumeration budget of {budget} nodes exceeded", result)
    return result


# ---------------------------------------------------------------------------
# min chi

def minimize_chi(ctx: LatticeContext, budget: int | None = None,
                 max_minimizers: int = DEFAULT_MAX_MINIMIZERS,
                 require_complete: bool = False) -> SearchResult:
    """``min chi`` over L, as the closest lattice point to ``Z_K / 2``.

    ``chi(l) = q(l - Z_K/2)/2 + K^2/8``, so the returned ``optimum_value`` is
    min chi itself and the minimizers are the optimal cycles.
    """
    half = ctx.z_k / 2
    res = solve_coset_cvp(CosetCVPProblem(ctx, half, Cycle.zero(ctx.s), 1), budget,
                          max_minimizers, require_complete)
    value = res.optimum_value / 2 + ctx.k_squared / 8
    assert chi(ctx, res.canonical) == value
    return SearchResult(value, res.canonical, res.minimizers, res.nodes_visited,
                        res.complete, res.truncated)


def arithmetic_genus(min_chi: Fraction) -> Fraction:
    return 1 - min_chi


def _box_bounds(low, high):
    lo = [ceil(Fraction(x)) for x in low]
    hi = [floor(Fraction(x)) for x in high]
    return lo, hi


def brute_force_min_chi(ctx: LatticeContext, box_low, box_high, budget: int = DEFAULT_BOX_BUDGET,
                        max_minimizers: int = DEFAULT_MAX_MINIMIZERS) -> SearchResult:
    """Exhaustive scan of the integral cycles in ``[box_low, box_high]``.

    Uses ``2 chi(l) = -(l, l) + sum_i l_i (Z_K, E_i)`` with integer numpy
    arithmetic, independent of the enumeration code above.  Non-integral
    bounds are rounded inward.
    """
    lo, hi = _box_bounds(as_cycle(ctx, box_low), as_cycle(ctx, box_high))
    sizes = [h - l + 1 for l, h in zip(lo, hi)]
    if any(sz <= 0 for sz in sizes):
        raise ValueError("empty box")
    volume = int(np.prod(sizes, dtype=object))
    if volume > budget:
        raise BudgetExceededError(f"box volume {volume} exceeds budget {budget}")
    G = np.array(ctx.gram, dtype=np.int64)
    b = np.array(ctx.adjunction, dtype=np.int64)
    n = ctx.s
    # Vectorise the trailing coordinates, loop over the leading ones.
    split = n
    inner = 1
    while split > 0 and inner * sizes[split - 1] <= 1 << 18:
        split -= 1
        inner *= sizes[split]
    inner_grid = np.stack(
        np.meshgrid(*[np.arange(lo[j], hi[j] + 1) for j in range(split, n)], indexing="ij"), -1
    ).reshape(-1, n - split) if split < n else np.zeros((1, 0), dtype=np.int64)
    best = None
    found: list[tuple[int, ...]] = []
    for outer in itertools.product(*[range(lo[j], hi[j] + 1) for j in range(split)]):
        pts = np.hstack([np.tile(np.array(outer, dtype=np.int64), (len(inner_grid), 1)), inner_grid])
        twice = -np.einsum("ij,jk,ik->i", pts, G, pts) + pts @ b
        m = int(twice.min())
        if best is None or m < best:
            best = m
            found = []
        if m == best:
            found.extend(tuple(int(x) for x in row) for row in pts[twice == m])
    found.sort()
    value = Fraction(best, 2)
    kept = found[:max_minimizers]
    return SearchResult(value, Cycle(found[0]), tuple(Cycle(p) for p in kept), volume,
                        True, len(found) > max_minimizers)


def lemma_box(ctx: LatticeContext) -> tuple[Cycle, Cycle]:
    """The box ``Z_K/2 <= l <= Z_K`` known to contain a min chi minimizer."""
    return ctx.z_k / 2, ctx.z_k


def minimizer_in_lemma_box(ctx: LatticeContext, result: SearchResult) -> bool:
    low, high = lemma_box(ctx)
    return any(low <= l <= high for l in result.minimizers)


# ---------------------------------------------------------------------------
# Artin cycle

def is_anti_nef(ctx: LatticeContext, z) -> bool:
    return all(x <= 0 for x in matvec(ctx.gram, as_cycle(ctx, z)))


def artin_cycle(ctx: LatticeContext, trace: list | None = None) -> Cycle:
    """Laufer's algorithm for the minimal (Artin, fundamental) cycle.

    Start from the reduced cycle and repeatedly add the lowest-index curve
    ``E_j`` with ``(z, E_j) > 0``.  If ``trace`` is a list, the sequence of
    added indices is appended to it.
    """
    n = ctx.s
    z = [1] * n
    gz = [sum(row) for row in ctx.gram]
    while True:
        j = next((i for i in range(n) if gz[i] > 0), None)
        if j is None:
            break
        z[j] += 1
        for i in range(n):
            gz[i] += ctx.gram[i][j]
        if trace is not None:
            trace.append(j)
    out = Cycle(z)
    assert is_anti_nef(ctx, out) and out >= ctx.reduced_cycle
    return out


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` positive integers summing to ``total``, lexicographic."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def brute_force_artin_cycle(ctx: LatticeContext, max_degree: int = 200) -> Cycle:
    """Anti-nef cycle with full support of least total degree, by enumeration."""
    G = ctx.gram
    for total in range(ctx.s, max_degree + 1):
        for z in _compositions(total, ctx.s):
            if all(sum(a * b for a, b in zip(row, z)) <= 0 for row in G):
                return Cycle(z)
    raise BudgetExceededError(f"no anti-nef cycle of degree <= {max_degree}")


def anti_nef_cycles_in_box(ctx: LatticeContext, high) -> list[Cycle]:
    """Every anti-nef integral cycle ``z`` with ``E <= z <= high``."""
    hi = [floor(Fraction(x)) for x in as_cycle(ctx, high)]
    return [Cycle(z) for z in itertools.product(*[range(1, h + 1) for h in hi]) if is_anti_nef(ctx, z)]


# ---------------------------------------------------------------------------
# characteristic vectors

def _solve_mod2(A: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    n = len(A)
    rows = [[A[i][j] & 1 for j in range(n)] + [rhs[i] & 1] for i in range(n)]
    pivots = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, n) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(n):
            if i != r and rows[i][col]:
                rows[i] = [a ^ b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[n] and not any(row[:n]) for row in rows):
        return None
    x = [0] * n
    for i, col in enumerate(pivots):
        x[col] = rows[i][n]
    return x


def is_characteristic(ctx: LatticeContext, xi) -> bool:
    """``(xi, E_i) == E_i^2 (mod 2)`` for every curve, with integral pairings."""
    vals = matvec(ctx.gram, as_cycle(ctx, xi))
    return all(v.denominator == 1 and (v - ctx.gram[i][i]) % 2 == 0 for i, v in enumerate(vals))


def characteristic_base(ctx: LatticeContext) -> Cycle:
    """An integral characteristic vector; all of them form ``xi0 + 2L``."""
    if not is_unimodular(ctx):
        raise NotUnimodularError(f"discriminant is {ctx.discriminant}")
    diag = [ctx.gram[i][i] for i in range(ctx.s)]
    x = _solve_mod2(ctx.gram, diag)
    assert x is not None
    xi0 = Cycle(x)
    assert is_characteristic(ctx, xi0)
    return xi0


@dataclass(frozen=True)
class ElkiesResult:
    xi: Cycle
    xi_squared: Fraction
    slack: Fraction
    search: SearchResult

    @property
    def nonnegative(self) -> bool:
        return self.slack >= 0


def elkies_min_square(ctx: LatticeContext, budget: int | None = None,
                      require_complete: bool = False) -> ElkiesResult:
    """Characteristic vector of largest square (smallest norm) in a unimodular lattice."""
    xi0 = characteristic_base(ctx)
    res = solve_coset_cvp(CosetCVPProblem(ctx, Cycle.zero(ctx.s), xi0, 2), budget,
                          require_complete=require_complete)
    xi = res.canonical
    xi2 = square(ctx, xi)
    assert xi2 == -res.optimum_value
    return ElkiesResult(xi, xi2, xi2 + ctx.s, res)


@dataclass(frozen=True)
class ConjectureResult:
    xi: Cycle
    xi_squared: Fraction
    z_min: Cycle
    z_min_squared: Fraction
    search: SearchResult

    @property
    def margin(self) -> Fraction:
        return self.xi_squared + len(self.xi) - self.z_min_squared

    @property
    def holds(self) -> bool:
        return self.margin >= 0


def conjecture_check(ctx: LatticeContext, budget: int | None = None,
                       require_complete: bool = False) -> ConjectureResult:
    """Best ``xi`` in ``Z_K + 2L`` against ``xi^2 + s >= Z_min^2``."""
    res = solve_coset_cvp(CosetCVPProblem(ctx, Cycle.zero(ctx.s), ctx.z_k, 2), budget,
                          require_complete=require_complete)
    xi = res.canonical
    z = artin_cycle(ctx)
    return ConjectureResult(xi, square(ctx, xi), z, square(ctx, z), res)


@dataclass(frozen=True)
class DualCharacteristicResult:
    xi: Cycle
    xi_squared: Fraction
    slack: Fraction
    half_difference_integral: bool  # whether (Z_K - xi)/2 lies in L, not just L'
    complete: bool


def dual_characteristic_min_square(ctx: LatticeContext, budget: int | None = None) -> DualCharacteristicResult:
    """Largest ``xi^2`` over ``xi in Z_K + 2L'`` (characteristic elements of L').

    Writes ``xi = 2 G^{-1}(k + b/2)`` with ``b_i = (Z_K, E_i)`` and minimises
    the dual form over integer k.
    """
    ginv = ctx.gram_inverse
    form = [[-x for x in row] for row in ginv]
    target = [Fraction(-bi, 2) for bi in ctx.adjunction]
    value, canon, _, _, complete, _ = closest_in_form(form, target, budget, 1)
    y = [Fraction(k) + Fraction(bi, 2) for k, bi in zip(canon, ctx.adjunction)]
    xi = Cycle(2 * v for v in matvec(ginv, y))
    xi2 = square(ctx, xi)
    assert xi2 == -4 * value
    return DualCharacteristicResult(xi, xi2, xi2 + ctx.s, ((ctx.z_k - xi) / 2).integral(), complete)
