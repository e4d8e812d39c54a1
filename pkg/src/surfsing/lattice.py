"""Exact arithmetic in the resolution lattice L and its dual L'.

Cycles are rational vectors in the basis of exceptional curves; L is the
integral ones.  Everything here is exact (``int``/``Fraction``).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Iterable, Sequence

from .exact import determinant, fraction_str, inverse, ldl, matvec
from .graphs import ResolutionGraph, intersection_matrix


class NotNumericallyGorensteinError(ValueError):
    pass


class NotUnimodularError(ValueError):
    pass


@dataclass(frozen=True)
class Cycle:
    """Rational cycle ``sum coords[i] * E_i``.

    ``a <= b`` is the coordinatewise partial order used for effective cycles.
    """

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in coords))

    @classmethod
    def zero(cls, n: int) -> Cycle:
        return cls([0] * n)

    @classmethod
    def ones(cls, n: int) -> Cycle:
        return cls([1] * n)

    @classmethod
    def basis(cls, n: int, i: int) -> Cycle:
        return cls([int(j == i) for j in range(n)])

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: Cycle):
        if len(other) != len(self):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other: Cycle) -> Cycle:
        self._check(other)
        return Cycle(a + b for a, b in zip(self, other))

    def __sub__(self, other: Cycle) -> Cycle:
        self._check(other)
        return Cycle(a - b for a, b in zip(self, other))

    def __neg__(self) -> Cycle:
        return Cycle(-a for a in self)

    def __mul__(self, c) -> Cycle:
        return Cycle(Fraction(c) * a for a in self)

    __rmul__ = __mul__

    def __truediv__(self, c) -> Cycle:
        return Cycle(a / Fraction(c) for a in self)

    def __le__(self, other: Cycle) -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def __ge__(self, other: Cycle) -> bool:
        return other <= self

    def integral(self) -> bool:
        return all(a.denominator == 1 for a in self)

    def effective(self) -> bool:
        return all(a >= 0 for a in self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def floor(self) -> Cycle:
        return Cycle(floor(a) for a in self)

    def fractional(self) -> Cycle:
        return Cycle(a - floor(a) for a in self)

    def as_ints(self) -> tuple[int, ...]:
        if not self.integral():
            raise ValueError("cycle is not integral")
        return tuple(int(a) for a in self)

    def to_strings(self) -> list[str]:
        return [fraction_str(a) for a in self]

    def __repr__(self):
        return "Cycle(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class LatticeContext:
    graph: ResolutionGraph
    gram: tuple[tuple[int, ...], ...]
    gram_inverse: tuple[tuple[Fraction, ...], ...]
    discriminant: int
    adjunction: tuple[int, ...]  # (Z_K, E_i) = E_i^2 + 2 - 2 g_i
    z_k: Cycle
    reduced_cycle: Cycle
    k_squared: Fraction
    ldl_l: tuple[tuple[Fraction, ...], ...]  # -gram = L D L^T
    ldl_d: tuple[Fraction, ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def s(self) -> int:
        return self.graph.s

    @property
    def k2_plus_s(self) -> Fraction:
        return self.k_squared + self.s


def build_context(g: ResolutionGraph) -> LatticeContext:
    gram = intersection_matrix(g)
    n = g.s
    try:
        ginv = inverse(gram)
    except ZeroDivisionError:  # pragma: no cover - excluded by graph validation
        raise RuntimeError("singular intersection form on a validated graph") from None
    disc = determinant(gram)
    b = tuple(v.self_intersection + 2 - 2 * v.genus for v in g.vertices)
    z_k = Cycle(matvec(ginv, b))
    k2 = sum((z * bi for z, bi in zip(z_k, b)), Fraction(0))
    L, D = ldl([[-x for x in row] for row in gram])
    warnings = list(g.warnings)
    if not z_k.effective():
        warnings.append("Z_K is not effective (resolution not minimal?)")
    return LatticeContext(
        graph=g,
        gram=gram,
        gram_inverse=tuple(tuple(r) for r in ginv),
        discriminant=int(disc),
        adjunction=b,
        z_k=z_k,
        reduced_cycle=Cycle.ones(n),
        k_squared=k2,
        ldl_l=tuple(tuple(r) for r in L),
        ldl_d=tuple(D),
        warnings=tuple(warnings),
    )


def as_cycle(ctx: LatticeContext, a) -> Cycle:
    c = a if isinstance(a, Cycle) else Cycle(a)
    if len(c) != ctx.s:
        raise ValueError(f"dimension mismatch: cycle of length {len(c)} on a graph with {ctx.s} vertices")
    return c


def pairing(ctx: LatticeContext, a, b) -> Fraction:
    a, b = as_cycle(ctx, a), as_cycle(ctx, b)
    return sum((ai * x for ai, x in zip(a, matvec(ctx.gram, b))), Fraction(0))


def square(ctx: LatticeContext, a) -> Fraction:
    return pairing(ctx, a, a)


def norm(ctx: LatticeContext, a) -> Fraction:
    """Positive definite norm ``q(a) = -(a, a)``."""
    return -pairing(ctx, a, a)


def chi(ctx: LatticeContext, l) -> Fraction:
    """Riemann-Roch quadratic ``-(l, l - Z_K) / 2``."""
    l = as_cycle(ctx, l)
    return -pairing(ctx, l, l - ctx.z_k) / 2


def is_numerically_gorenstein(ctx: LatticeContext) -> bool:
    return ctx.z_k.integral()


def is_unimodular(ctx: LatticeContext) -> bool:
    return abs(ctx.discriminant) == 1


def is_du_val(ctx: LatticeContext) -> bool:
    return ctx.z_k.is_zero()


def parity_decomposition(ctx: LatticeContext) -> tuple[Cycle, Cycle, Cycle]:
    """``(x, x_bar, m)`` with ``x = 2 {Z_K/2}``, ``x_bar = E - x``, ``m = floor(Z_K/2)``."""
    if not is_numerically_gorenstein(ctx):
        raise NotNumericallyGorensteinError("Z_K is not integral")
    half = ctx.z_k / 2
    x = 2 * half.fractional()
    x_bar = ctx.reduced_cycle - x
    m = (ctx.z_k - x) / 2
    assert all(c in (0, 1) for c in x), x
    assert m.integral() and m == half.floor()
    return x, x_bar, m


def cycle_from_strings(values: Sequence[str]) -> Cycle:
    return Cycle(Fraction(v) for v in values)
