"""Signature inequalities for smoothings and the invariants behind them.

For a Gorenstein smoothing the Milnor number and signature are determined
by ``p_g``, ``mu_0`` and ``K^2 + s``::

    mu = 12 p_g + K^2 + s - mu_0,     -sigma = 8 p_g + K^2 + s.

:func:`evaluate_bounds` checks every inequality of the theory against one
set of inputs and returns a row per bound.  A bound whose hypotheses are not
met is reported as not applicable rather than failed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import Sequence

from .graphs import ResolutionGraph, cone, graph_euler_characteristic, link_first_betti
from .lattice import (
    Cycle,
    LatticeContext,
    build_context,
    chi,
    is_du_val,
    is_numerically_gorenstein,
    is_unimodular,
    pairing,
    parity_decomposition,
    square,
)

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not applicable"


def binom3(n: int) -> int:
    """``C(n, 3)``, zero for n < 3."""
    return comb(n, 3) if n >= 3 else 0


def pow2(k: int) -> Fraction:
    return Fraction(2) ** k


@dataclass(frozen=True)
class SmoothingInvariants:
    mu: Fraction
    sigma: Fraction
    mu_plus: Fraction
    mu_zero: Fraction
    mu_minus: Fraction

    @property
    def realizable(self) -> bool:
        return self.mu >= 0 and self.mu_plus >= 0 and self.mu_minus >= 0


def smoothing_invariants(p_g: int, mu0: int, k2_plus_s) -> SmoothingInvariants:
    """Milnor number, signature and Sylvester triple of a Gorenstein smoothing."""
    k2s = Fraction(k2_plus_s)
    mu = 12 * p_g + k2s - mu0
    sigma = -(8 * p_g + k2s)
    inv = sylvester_from_milnor(p_g, mu, mu0)
    assert inv.sigma == sigma, (inv.sigma, sigma)
    return inv


def sylvester_from_milnor(p_g: int, mu, mu0: int) -> SmoothingInvariants:
    """Sylvester invariants from ``2 p_g = mu_0 + mu_+`` and ``mu = mu_+ + mu_0 + mu_-``."""
    mu = Fraction(mu)
    mu_plus = Fraction(2 * p_g - mu0)
    mu_minus = mu - mu0 - mu_plus
    return SmoothingInvariants(mu, mu_plus - mu_minus, mu_plus, Fraction(mu0), mu_minus)


@dataclass(frozen=True)
class SmoothingData:
    """Analytic inputs next to the graph invariants.

    ``nu_source`` is ``"user"``, ``"family"`` (exact, from a built-in
    family) or ``"proxy"`` (``-Z_min^2`` in place of the multiplicity).
    ``mu`` may be given directly for non-Gorenstein input, where the
    Laufer-Steenbrink formula does not apply.
    """

    p_g: int
    mu0: int
    k2_plus_s: Fraction
    e: int
    epsilon: int
    nu: int | None = None
    nu_source: str = "user"
    mu: int | None = None

    def __post_init__(self):
        if self.p_g < 0:
            raise ValueError("p_g must be nonnegative")
        if self.epsilon not in (0, 1):
            raise ValueError("epsilon must be 0 or 1")
        if self.e < 3:
            raise ValueError("embedding dimension of a singular surface is at least 3")
        if self.e == 3 and self.epsilon != 1:
            raise ValueError("hypersurfaces are Gorenstein: e = 3 requires epsilon = 1")
        if self.nu is not None and self.nu < 1:
            raise ValueError("multiplicity must be positive")
        object.__setattr__(self, "k2_plus_s", Fraction(self.k2_plus_s))

    @property
    def sigma_total(self) -> Fraction:
        """``8 p_g + K^2 + s``; equals ``-sigma`` in the Gorenstein case."""
        return 8 * self.p_g + self.k2_plus_s

    @property
    def hypersurface(self) -> bool:
        return self.e == 3

    def invariants(self) -> SmoothingInvariants | None:
        if self.epsilon == 1:
            inv = smoothing_invariants(self.p_g, self.mu0, self.k2_plus_s)
            if self.mu is not None and inv.mu != self.mu:
                raise ValueError(f"supplied mu = {self.mu} disagrees with 12 p_g + K^2 + s - mu_0 = {inv.mu}")
            return inv
        if self.mu is not None:
            return sylvester_from_milnor(self.p_g, self.mu, self.mu0)
        return None


def smoothing_data_for(ctx: LatticeContext, p_g: int, e: int, epsilon: int,
                       nu: int | None = None, mu: int | None = None,
                       nu_source: str | None = None) -> SmoothingData:
    """Combine graph invariants with user inputs; ``nu`` defaults to the ``-Z_min^2`` proxy."""
    from .search import artin_cycle

    if epsilon == 1 and not is_numerically_gorenstein(ctx):
        raise ValueError("Gorenstein input requires a numerically Gorenstein graph (Z_K integral)")
    if nu is None:
        nu = int(-square(ctx, artin_cycle(ctx)))
        nu_source = "proxy"
    return SmoothingData(p_g, link_first_betti(ctx.graph), ctx.k2_plus_s, e, epsilon, nu,
                         nu_source or "user", mu)


# ---------------------------------------------------------------------------
# bound rows

@dataclass
class BoundRow:
    id: str
    name: str
    inequality: str
    lhs: Fraction | None = None
    rhs: Fraction | None = None
    status: str = NOT_APPLICABLE
    assumptions_violated: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    identity_ok: bool | None = None

    @property
    def margin(self) -> Fraction | None:
        return None if self.lhs is None else self.lhs - self.rhs

    @property
    def holds(self) -> bool | None:
        return None if self.status == NOT_APPLICABLE else self.status == HOLDS

    def settle(self, lhs, rhs):
        self.lhs, self.rhs = Fraction(lhs), Fraction(rhs)
        self.status = HOLDS if self.lhs >= self.rhs else FAILS
        return self


@dataclass
class BoundReport:
    rows: list[BoundRow]
    invariants: SmoothingInvariants | None
    warnings: list[str] = field(default_factory=list)

    def __getitem__(self, bound_id: str) -> BoundRow:
        for row in self.rows:
            if row.id == bound_id:
                return row
        raise KeyError(bound_id)

    def applicable(self) -> list[BoundRow]:
        return [r for r in self.rows if r.status != NOT_APPLICABLE]

    def failures(self) -> list[BoundRow]:
        return [r for r in self.rows if r.status == FAILS]


_BOUNDS = [
    ("B1", "min chi vs p_g", "p_g + min chi >= 2^(eps-e) (p_g+1)"),
    ("B2", "unimodular min chi", "(K^2+s)/8 >= min chi"),
    ("B3", "unimodular p_g", "p_g + (K^2+s)/8 >= 2^(eps-e) (p_g+1)"),
    ("B4", "strong unimodular", "-sigma >= 2^(4-e) (p_g+1)"),
    ("B5", "parity x", "Sigma >= 2^(eps+3-e) (p_g+1) + x^2 + s"),
    ("B6", "parity x_bar", "Sigma >= 2^(eps+3-e) (p_g+1) + E^2 + x_bar^2 + s"),
    ("B7", "reduced cycle", "Sigma >= 2^(eps+3-e) (p_g+1) - 1 + b_1 + (E, Z_K)"),
    ("B8", "multiplicity, level t", "Sigma >= (2^(eps+3-e) - 2^-t + 2^-(t+e-eps)) p_g - 2^(t+1) nu + A + 2^-(t+e-eps)"),
    ("B9", "hypersurface, cycle Z", "Sigma >= 2 (p_g + chi(Z)) + 1 + b_1 - nu"),
    ("B10", "hypersurface, p_g and nu", "-sigma >= (p_g+1)/2 + 1 + mu_0 - nu"),
    ("B11", "hypersurface weak", "-sigma >= 1 + mu_0"),
    ("B12", "hypersurface sharp", "-sigma >= 2/3 (p_g - C(nu,3)) + 2 C(nu-1,3) - nu + 3 + mu_0"),
    ("B13", "weak inequality", "mu + mu_0 >= 4 p_g  (sigma <= 0)"),
]


def _check_maximal_cycle(ctx: LatticeContext, z: Cycle) -> None:
    """A maximal cycle is integral, has full support and is anti-nef."""
    if len(z) != ctx.s or not z.integral():
        raise ValueError("Z must be an integral cycle with one coefficient per curve")
    if not ctx.reduced_cycle <= z:
        raise ValueError("Z must have every coefficient >= 1")
    if any(pairing(ctx, z, Cycle.basis(ctx.s, i)) > 0 for i in range(ctx.s)):
        raise ValueError("Z must satisfy (Z, E_i) <= 0 for every curve")


def evaluate_bounds(ctx: LatticeContext | None, data: SmoothingData, min_chi=None,
                    z: Cycle | None = None, t: int | None = None,
                    z_source: str = "proxy") -> BoundReport:
    """Evaluate B1-B13.

    ``ctx`` may be ``None`` when only the numeric data is known; graph-side
    bounds are then not applicable.  ``z`` is the cycle used in B9 (the
    maximal cycle if known, else the Artin cycle as a proxy); ``t`` is the
    level in B8 and defaults to its smallest allowed value ``e - eps - 3``.
    """
    rows = {bid: BoundRow(bid, name, ineq) for bid, name, ineq in _BOUNDS}
    warnings: list[str] = []
    e, eps, p_g = data.e, data.epsilon, data.p_g
    Sigma = data.sigma_total
    inv = data.invariants()
    minus_sigma = None if inv is None else -inv.sigma
    mu0 = data.mu0
    nu = data.nu

    def need(row, cond, reason):
        if not cond:
            row.assumptions_violated.append(reason)
        return cond

    graph_ok = ctx is not None
    unimod = graph_ok and is_unimodular(ctx)
    numgor = graph_ok and is_numerically_gorenstein(ctx)
    duval = graph_ok and numgor and is_du_val(ctx)
    if graph_ok:
        if data.k2_plus_s != ctx.k2_plus_s:
            raise ValueError("SmoothingData.k2_plus_s does not match the graph")
        if z is not None:
            _check_maximal_cycle(ctx, z)
        if not ctx.graph.is_minimal:
            warnings.append("non-minimal input: bounds assume the minimal resolution")
        b1 = link_first_betti(ctx.graph)
        if b1 != mu0:
            raise ValueError(f"mu_0 = {mu0} differs from b_1 of the link = {b1}")
    if nu is not None and data.nu_source == "proxy":
        warnings.append("nu is the proxy -Z_min^2, not the multiplicity")

    def numgor_nonduval(row):
        ok = need(row, graph_ok, "graph required")
        ok = ok and need(row, numgor, "numerically Gorenstein required")
        return ok and need(row, not duval, "Du Val singularities excluded")

    def sigma_known(row):
        return need(row, minus_sigma is not None, "sigma unknown (non-Gorenstein without mu)")

    def hyper(row):
        return need(row, data.hypersurface, "hypersurface (e = 3) required")

    def nu_known(row, exact=False):
        ok = need(row, nu is not None, "multiplicity required")
        if ok and exact:
            ok = need(row, data.nu_source != "proxy", "exact multiplicity required (proxy given)")
        elif ok and data.nu_source == "proxy":
            row.notes.append("nu is a proxy")
        return ok

    c_eps = pow2(eps - e) * (p_g + 1)
    c_sig = pow2(eps + 3 - e) * (p_g + 1)

    # B1
    r = rows["B1"]
    if numgor_nonduval(r) and need(r, min_chi is not None, "min chi required"):
        r.settle(p_g + Fraction(min_chi), c_eps)
    # B2, B3
    for bid in ("B2", "B3"):
        r = rows[bid]
        if need(r, graph_ok, "graph required") and need(r, unimod, "unimodular lattice required"):
            if bid == "B2":
                if need(r, min_chi is not None, "min chi required"):
                    r.settle(data.k2_plus_s / 8, min_chi)
            else:
                r.settle(p_g + data.k2_plus_s / 8, c_eps)
    # B4
    r = rows["B4"]
    if (need(r, graph_ok, "graph required") and need(r, unimod, "unimodular lattice required")
            and need(r, eps == 1, "Gorenstein required")):
        r.settle(minus_sigma, pow2(4 - e) * (p_g + 1))

    # B5-B7: parity cycles
    if graph_ok and numgor and not duval:
        x, x_bar, m = parity_decomposition(ctx)
        E = ctx.reduced_cycle
        s = ctx.s
        r = rows["B5"]
        r.settle(Sigma, c_sig + square(ctx, x) + s)
        r.identity_ok = Sigma == 8 * (p_g + chi(ctx, m)) + square(ctx, x) + s
        r = rows["B6"]
        r.settle(Sigma, c_sig + square(ctx, E) + square(ctx, x_bar) + s)
        r.identity_ok = Sigma == 8 * (p_g + chi(ctx, m + E)) + square(ctx, E + x_bar) + s
        r = rows["B7"]
        ez = pairing(ctx, E, ctx.z_k)
        r.settle(Sigma, c_sig - 1 + mu0 + ez)
        r.identity_ok = (ez == square(ctx, E) + 2 * chi(ctx, E)
                         and -1 + mu0 + ez == square(ctx, E) + graph_euler_characteristic(ctx.graph))
    else:
        for bid in ("B5", "B6", "B7"):
            numgor_nonduval(rows[bid])

    # B8
    r = rows["B8"]
    t0 = e - eps - 3
    t = t0 if t is None else t
    if numgor_nonduval(r) and nu_known(r) and need(r, t >= t0, f"t >= {t0} required"):
        A = pow2(eps + 3 - e) - 1 + mu0
        tail = pow2(-(t + e - eps))
        coeff = pow2(eps + 3 - e) - pow2(-t) + tail
        r.settle(Sigma, coeff * p_g - pow2(t + 1) * nu + A + tail)
        r.notes.append(f"t = {t}")

    # B9
    r = rows["B9"]
    if numgor_nonduval(r) and hyper(r) and nu_known(r):
        zc = z
        if zc is None:
            from .search import artin_cycle

            zc = artin_cycle(ctx)
        if z_source == "proxy":
            r.notes.append("Z is the Artin cycle (proxy for the maximal cycle)")
        r.settle(Sigma, 2 * (p_g + chi(ctx, zc)) + 1 + mu0 - nu)

    # B10
    r = rows["B10"]
    if (numgor_nonduval(r) and hyper(r) and sigma_known(r) and nu_known(r, exact=True)):
        r.settle(minus_sigma, Fraction(p_g + 1, 2) + 1 + mu0 - nu)
    # B11
    r = rows["B11"]
    if hyper(r) and sigma_known(r):
        r.settle(minus_sigma, 1 + mu0)
    # B12
    r = rows["B12"]
    if hyper(r) and sigma_known(r) and nu_known(r, exact=True) and need(r, nu >= 4, "nu >= 4 required"):
        r.settle(minus_sigma, Fraction(2, 3) * (p_g - binom3(nu)) + 2 * binom3(nu - 1) - nu + 3 + mu0)
    # B13
    r = rows["B13"]
    if sigma_known(r):
        r.settle(inv.mu + mu0, 4 * p_g)

    if graph_ok and not ctx.graph.is_minimal:
        for row in rows.values():
            if row.status != NOT_APPLICABLE:
                row.notes.append("non-minimal input")
    return BoundReport(list(rows.values()), inv, warnings)


# ---------------------------------------------------------------------------
# closed forms for homogeneous complete intersections and cones

@dataclass(frozen=True)
class HomogeneousICIS:
    degrees: tuple[int, ...]
    r: int
    e: int
    nu: int
    p_g: int
    mu: int | None
    weak_coefficient_ok: bool | None  # 4 p_g <= mu + 1 - nu
    refined_coefficient: Fraction | None
    refined_ok: bool | None

    @property
    def mu_plus_one_minus_nu(self) -> int | None:
        return None if self.mu is None else self.mu + 1 - self.nu


def homogeneous_icis(degrees: Sequence[int]) -> HomogeneousICIS:
    """Invariants of a homogeneous complete intersection of the given degrees."""
    ds = tuple(int(d) for d in degrees)
    if not ds or any(d < 2 for d in ds):
        raise ValueError("need at least one degree, all >= 2")
    r = len(ds)
    nu = prod(ds)
    ratio = sum(Fraction((d - 1) * (d - 2), 6) for d in ds)
    ratio += sum(Fraction((ds[i] - 1) * (ds[j] - 1), 4) for i in range(r) for j in range(i + 1, r))
    p_g_exact = nu * ratio
    if p_g_exact.denominator != 1:
        raise ArithmeticError(f"geometric genus came out non-integral: {p_g_exact}")
    p_g = int(p_g_exact)
    mu = coeff = weak_ok = refined_ok = None
    if len(set(ds)) == 1:
        d = ds[0]
        rhs = nu * (Fraction(r * (d * d - 3 * d + 2)) + Fraction(r * (r - 1) * (d - 1) ** 2, 2))
        assert rhs.denominator == 1
        mu = int(rhs) - 1 + nu
        weak_ok = 4 * p_g <= mu + 1 - nu
        den = Fraction((d - 1) * (r - 1)) + Fraction(4, 3) * (d - 2)
        if den != 0:
            coeff = 4 * ((d - 1) * (r - 1) + 2 * (d - 2)) / den
            refined_ok = coeff * p_g <= mu + 1 - nu
    return HomogeneousICIS(ds, r, r + 2, nu, p_g, mu, weak_ok, coeff, refined_ok)


def asymptotic_ratio(r: int) -> Fraction:
    """Limit of ``mu / p_g`` for equal degrees ``d -> infinity``."""
    return Fraction(4 * (r + 1)) / (r + Fraction(1, 3))


def cone_singularity(d: int) -> tuple[ResolutionGraph, SmoothingData]:
    """Cone over a smooth plane curve of degree d, with all invariants exact."""
    g = cone(d)
    ctx = build_context(g)
    data = SmoothingData(
        p_g=binom3(d),
        mu0=link_first_betti(g),
        k2_plus_s=ctx.k2_plus_s,
        e=3,
        epsilon=1,
        nu=d,
        nu_source="family",
    )
    assert data.mu0 == (d - 1) * (d - 2)
    assert data.invariants().mu == (d - 1) ** 3
    return g, data


@dataclass(frozen=True)
class AsymptoticsRow:
    d: int
    nu: int
    p_g: int
    mu: int
    nu_minus_one: int
    lower_bound: int | None  # nu - 1 + mu_0 when mu_0 is supplied


def strict_icis_asymptotics(r: int, d_max: int, mu0=None) -> list[AsymptoticsRow]:
    """Tabulate equal-degree homogeneous ICIS of codimension r, d = 2..d_max.

    From ``sigma = 4 p_g - mu_0 - mu`` and ``4 p_g <= mu + 1 - nu`` one gets
    ``-sigma >= nu - 1 + mu_0``; ``mu0`` may be an int or a callable of d.
    """
    if r < 1:
        raise ValueError("r >= 1 required")
    rows = []
    for d in range(2, d_max + 1):
        h = homogeneous_icis([d] * r)
        m0 = mu0(d) if callable(mu0) else mu0
        rows.append(AsymptoticsRow(d, h.nu, h.p_g, h.mu, h.nu - 1, None if m0 is None else h.nu - 1 + m0))
    seq = [row.nu_minus_one for row in rows]
    assert all(a < b for a, b in zip(seq, seq[1:]))
    return rows
