"""Monomial ideals, staircase colengths and the product-colength inequality.

An m-primary monomial ideal in e variables is stored by its minimal
generators (exponent vectors).  Its colength is the number of standard
monomials, i.e. lattice points of the orthant not dominating any generator.
For ideals a_1..a_d the inequality

    d^(e-1) * sum_i colength(a_i) >= colength(a_1 * ... * a_d)

holds, strictly when d >= 2 and e >= 2.  The proof compares staircases ray
by ray; :func:`ray_entry` and :func:`radial_containment_check` expose those
per-ray quantities in exact rational arithmetic.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

DEFAULT_COUNT_BUDGET = 10**8
INFINITY = math.inf


class IdealError(ValueError):
    pass


class CountBudgetError(RuntimeError):
    pass


def _minimalize(gens: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    gens = sorted(set(gens), key=lambda u: (sum(u), u))
    kept: list[tuple[int, ...]] = []
    for u in gens:
        if not any(all(a <= b for a, b in zip(v, u)) for v in kept):
            kept.append(u)
    return tuple(sorted(kept, reverse=True))


@dataclass(frozen=True)
class MonomialIdeal:
    num_vars: int
    generators: tuple[tuple[int, ...], ...]

    @property
    def pure_powers(self) -> list[int | None]:
        """Exponent of the pure power of each variable in the ideal (None if absent)."""
        out: list[int | None] = []
        for j in range(self.num_vars):
            exps = [u[j] for u in self.generators if all(u[k] == 0 for k in range(self.num_vars) if k != j)]
            out.append(min(exps) if exps else None)
        return out

    @property
    def is_m_primary(self) -> bool:
        return all(p is not None for p in self.pure_powers)

    def contains(self, u: Sequence[int]) -> bool:
        """Whether ``x^u`` lies in the ideal."""
        return any(all(a <= b for a, b in zip(g, u)) for g in self.generators)

    def __mul__(self, other: MonomialIdeal) -> MonomialIdeal:
        return product(self, other)

    def __str__(self):
        names = "xyzw" if self.num_vars <= 4 else None

        def mono(u):
            parts = []
            for j, a in enumerate(u):
                if a:
                    v = names[j] if names else f"x{j + 1}"
                    parts.append(v if a == 1 else f"{v}^{a}")
            return "*".join(parts) or "1"

        return "(" + ", ".join(mono(u) for u in self.generators) + ")"


def make_ideal(e: int, gens: Iterable[Sequence[int]]) -> MonomialIdeal:
    gens = [tuple(int(a) for a in u) for u in gens]
    if e < 1:
        raise IdealError("need at least one variable")
    if not gens:
        raise IdealError("empty generator set")
    for u in gens:
        if len(u) != e:
            raise IdealError(f"generator {u} has length {len(u)}, expected {e}")
        if any(a < 0 for a in u):
            raise IdealError(f"generator {u} has a negative exponent")
        if not any(u):
            raise IdealError("the unit ideal is not a proper m-primary ideal")
    return MonomialIdeal(e, _minimalize(gens))


def maximal_ideal(e: int) -> MonomialIdeal:
    return make_ideal(e, [tuple(int(i == j) for j in range(e)) for i in range(e)])


def product(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.num_vars != b.num_vars:
        raise IdealError(f"dimension mismatch: {a.num_vars} vs {b.num_vars} variables")
    return MonomialIdeal(a.num_vars, _minimalize(
        tuple(x + y for x, y in zip(u, v)) for u in a.generators for v in b.generators
    ))


def product_all(ideals: Sequence[MonomialIdeal]) -> MonomialIdeal:
    return reduce(product, ideals)


def power(a: MonomialIdeal, d: int) -> MonomialIdeal:
    return product_all([a] * d)


def colength(a: MonomialIdeal, budget: int = DEFAULT_COUNT_BUDGET) -> int:
    """Number of standard monomials, by scanning the box below the pure powers."""
    if not a.is_m_primary:
        raise IdealError(f"{a} is not m-primary")
    box = a.pure_powers
    volume = math.prod(box)
    if volume > budget:
        raise CountBudgetError(f"bounding box of {volume} points exceeds budget {budget}")
    gens = np.array(a.generators, dtype=np.int64)
    e = a.num_vars
    # Stream over the first coordinate(s); vectorise the rest.
    split = e
    inner = 1
    while split > 0 and inner * box[split - 1] <= 1 << 20:
        split -= 1
        inner *= box[split]
    if split < e:
        grid = np.stack(np.meshgrid(*[np.arange(box[j]) for j in range(split, e)], indexing="ij"), -1)
        grid = grid.reshape(-1, e - split)
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    total = 0
    for outer in itertools.product(*[range(box[j]) for j in range(split)]):
        head = np.array(outer, dtype=np.int64)
        # A generator is dominated iff head part and tail part both dominate.
        head_ok = np.all(gens[:, :split] <= head, axis=1) if split else np.ones(len(gens), bool)
        g = gens[head_ok][:, split:]
        if len(g) == 0:
            total += len(grid)
            continue
        inside = np.zeros(len(grid), dtype=bool)
        for row in g:
            inside |= np.all(grid >= row, axis=1)
        total += int(len(grid) - inside.sum())
    return total


def standard_monomials(a: MonomialIdeal) -> list[tuple[int, ...]]:
    if not a.is_m_primary:
        raise IdealError(f"{a} is not m-primary")
    return [u for u in itertools.product(*[range(n) for n in a.pure_powers]) if not a.contains(u)]


def colength_inclusion_exclusion(a: MonomialIdeal) -> int:
    """Volume of the staircase complement by inclusion-exclusion over generators.

    Independent of :func:`colength`; exponential in the number of generators.
    """
    if not a.is_m_primary:
        raise IdealError(f"{a} is not m-primary")
    box = a.pure_powers
    total = 0
    gens = a.generators
    for k in range(len(gens) + 1):
        for subset in itertools.combinations(gens, k):
            if subset:
                corner = [max(u[j] for u in subset) for j in range(a.num_vars)]
            else:
                corner = [0] * a.num_vars
            total += (-1) ** k * math.prod(max(n - c, 0) for n, c in zip(box, corner))
    return total


@dataclass(frozen=True)
class LemmaCheck:
    lhs: int
    rhs: int
    d: int
    e: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def strict(self) -> bool:
        return self.lhs > self.rhs

    @property
    def margin(self) -> int:
        return self.lhs - self.rhs

    @property
    def strict_expected(self) -> bool:
        return self.d >= 2 and self.e >= 2


def verify_colength_lemma(ideals: Sequence[MonomialIdeal], budget: int = DEFAULT_COUNT_BUDGET) -> LemmaCheck:
    if not ideals:
        raise IdealError("need at least one ideal")
    e = ideals[0].num_vars
    if any(a.num_vars != e for a in ideals):
        raise IdealError("ideals live in different numbers of variables")
    d = len(ideals)
    lhs = d ** (e - 1) * sum(colength(a, budget) for a in ideals)
    rhs = colength(product_all(ideals), budget)
    check = LemmaCheck(lhs, rhs, d, e)
    assert check.holds, check
    if check.strict_expected:
        assert check.strict, check
    return check


# ---------------------------------------------------------------------------
# radial geometry

def ray_entry(a: MonomialIdeal, theta: Sequence) -> Fraction | float:
    """Smallest ``rho`` with ``rho * theta`` in the staircase region of ``a``.

    Returns :data:`INFINITY` when the ray never enters (only possible if
    ``theta`` has zero coordinates).  Satisfies ``ray_entry(a, c*theta) ==
    ray_entry(a, theta) / c``.
    """
    theta = [Fraction(t) for t in theta]
    if len(theta) != a.num_vars or any(t < 0 for t in theta):
        raise ValueError("theta must be a nonnegative vector of the right length")
    best: Fraction | float = INFINITY
    for u in a.generators:
        need = Fraction(0)
        for uj, tj in zip(u, theta):
            if uj > 0:
                if tj == 0:
                    need = INFINITY
                    break
                need = max(need, Fraction(uj) / tj)
        if need < best:
            best = need
    return best


def in_region(a: MonomialIdeal, point: Sequence) -> bool:
    """Whether a real (rational) point lies in ``Q = union of u + R_{>=0}^e``."""
    return any(all(Fraction(p) >= g for p, g in zip(point, u)) for u in a.generators)


@dataclass(frozen=True)
class RaySample:
    direction: tuple[Fraction, ...]
    entry_radii: tuple[Fraction, ...]
    sum_radius: Fraction
    contained: bool  # sum_radius * direction lies in Q of the product
    holder_lhs: Fraction
    holder_rhs: Fraction

    @property
    def holder_ok(self) -> bool:
        return self.holder_lhs >= self.holder_rhs


@dataclass(frozen=True)
class RadialReport:
    samples: tuple[RaySample, ...]

    @property
    def all_contained(self) -> bool:
        return all(s.contained for s in self.samples)

    @property
    def all_holder(self) -> bool:
        return all(s.holder_ok for s in self.samples)


def sample_directions(e: int, samples: int, seed: int, max_coord: int = 64) -> list[tuple[Fraction, ...]]:
    rng = np.random.default_rng(seed)
    return [tuple(Fraction(int(x)) for x in rng.integers(1, max_coord + 1, size=e)) for _ in range(samples)]


def ray_sample(ideals: Sequence[MonomialIdeal], theta: Sequence, prod_ideal: MonomialIdeal | None = None) -> RaySample:
    d = len(ideals)
    e = ideals[0].num_vars
    prod_ideal = prod_ideal or product_all(ideals)
    theta = tuple(Fraction(t) for t in theta)
    radii = tuple(ray_entry(a, theta) for a in ideals)
    r = sum(radii, Fraction(0))
    point = [r * t for t in theta]
    return RaySample(
        direction=theta,
        entry_radii=radii,
        sum_radius=r,
        contained=in_region(prod_ideal, point),
        holder_lhs=Fraction(d) ** (e - 1) * sum(ri ** e for ri in radii),
        holder_rhs=r ** e,
    )


def radial_containment_check(ideals: Sequence[MonomialIdeal], samples: int, seed: int) -> RadialReport:
    """Per-ray check that the radial sum of staircases sits inside the product staircase.

    For each seeded positive direction the point at radius ``sum_i r_i``
    must lie in the region of the product ideal (checked exactly on the
    boundary, which implies it for every larger radius), and the power-mean
    inequality ``d^(e-1) sum r_i^e >= (sum r_i)^e`` must hold.
    """
    if not ideals:
        raise IdealError("need at least one ideal")
    prod_ideal = product_all(ideals)
    dirs = sample_directions(ideals[0].num_vars, samples, seed)
    return RadialReport(tuple(ray_sample(ideals, th, prod_ideal) for th in dirs))


@dataclass(frozen=True)
class StrictnessWitness:
    vector: tuple[int, ...]
    a: int
    a_prime: int
    b: int
    in_power: bool  # x^v lies in a^d
    in_radial_sum: bool  # v lies in the d-fold radial sum of Q(a), i.e. d*Q(a)


def strictness_witness(a: MonomialIdeal, d: int) -> StrictnessWitness:
    """A point of ``Q(a^d)`` outside the radial sum ``d * Q(a)``.

    ``a`` is the pure-power exponent of x_1; ``b`` the least x_2-exponent of a
    monomial ``x_1^a' x_2^b`` in the ideal with ``a' < a``, and ``a'`` the
    least such x_1-exponent.  The witness is ``((d-1) a + a', b, 0, ...)``.
    """
    e = a.num_vars
    if e < 2 or d < 2:
        raise ValueError("need e >= 2 and d >= 2")
    if not a.is_m_primary:
        raise IdealError(f"{a} is not m-primary")
    pa = a.pure_powers[0]
    plane = [u for u in a.generators if all(x == 0 for x in u[2:]) and u[0] < pa]
    if not plane:
        raise IdealError("no witness on this coordinate plane")
    b = min(u[1] for u in plane)
    a_prime = min(u[0] for u in a.generators if all(x == 0 for x in u[2:]) and u[1] <= b)
    v = ((d - 1) * pa + a_prime, b) + (0,) * (e - 2)
    ad = power(a, d)
    in_power = ad.contains(v)
    entry = ray_entry(a, v)
    in_radial = entry != INFINITY and d * entry <= 1
    assert in_power, (v, entry)
    return StrictnessWitness(v, pa, a_prime, b, in_power, in_radial)


def random_m_primary(e: int, max_exp: int, density: float = 0.3, seed: int = 0) -> MonomialIdeal:
    """Pure powers ``x_j^{n_j}`` with ``n_j`` uniform in ``[1, max_exp]``, plus
    each monomial strictly inside that box added with probability ``density``."""
    if e < 1 or max_exp < 1:
        raise IdealError("need e >= 1 and max_exp >= 1")
    rng = np.random.default_rng(seed)
    n = rng.integers(1, max_exp + 1, size=e).tolist()
    gens = [tuple(n[i] if j == i else 0 for j in range(e)) for i in range(e)]
    if density > 0:
        for u in itertools.product(*[range(k) for k in n]):
            if any(u) and rng.random() < density:
                gens.append(u)
    return make_ideal(e, gens)


# ---------------------------------------------------------------------------
# file format

def parse_ideal(text: str) -> MonomialIdeal:
    """``vars <e>`` then one generator (e integers) per line; ``#`` comments."""
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        raise IdealError("empty ideal file")
    i0, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "vars":
        raise IdealError(f"line {i0}: expected 'vars <e>'")
    try:
        e = int(parts[1])
    except ValueError:
        raise IdealError(f"line {i0}: number of variables must be an integer") from None
    gens = []
    for i, ln in lines[1:]:
        try:
            u = [int(x) for x in ln.split()]
        except ValueError:
            raise IdealError(f"line {i}: exponents must be integers") from None
        if len(u) != e:
            raise IdealError(f"line {i}: expected {e} exponents, got {len(u)}")
        gens.append(u)
    return make_ideal(e, gens)


def serialize_ideal(a: MonomialIdeal) -> str:
    return "\n".join([f"vars {a.num_vars}"] + [" ".join(map(str, u)) for u in a.generators]) + "\n"


def read_ideal(path) -> MonomialIdeal:
    with open(path, encoding="utf-8") as fh:
        return parse_ideal(fh.read())
