from fractions import Fraction
from math import comb

import numpy as np
import pytest

from surfsing.bounds import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    SmoothingData,
    asymptotic_ratio,
    cone_singularity,
    evaluate_bounds,
    homogeneous_icis,
    smoothing_data_for,
    smoothing_invariants,
    strict_icis_asymptotics,
    sylvester_from_milnor,
)
from surfsing.graphs import cone, dynkin, from_matrix, graph_euler_characteristic
from surfsing.lattice import build_context, square
from surfsing.search import minimize_chi


def test_indefinite_form_example():
    inv = smoothing_invariants(1, 0, -9)
    assert (inv.mu, inv.sigma, inv.mu_plus, inv.mu_minus) == (3, 1, 2, 1)
    data = SmoothingData(p_g=1, mu0=0, k2_plus_s=-9, e=4, epsilon=1)
    rep = evaluate_bounds(None, data)
    assert rep["B13"].status == FAILS
    assert rep["B13"].margin == -1


def test_rational_line():
    for t in range(-5, 6):
        inv = smoothing_invariants(0, 0, t)
        assert inv.mu == t and inv.sigma == -t


def test_not_realizable_flag():
    assert not smoothing_invariants(0, 3, 1).realizable
    assert smoothing_invariants(4, 6, -15).realizable


def test_sigma_routes_agree_on_random_inputs():
    rng = np.random.default_rng(11)
    for p_g, mu0, k2s in rng.integers(-50, 200, size=(1000, 3)):
        p_g, mu0 = abs(int(p_g)), abs(int(mu0))
        inv = smoothing_invariants(p_g, mu0, int(k2s))
        assert -(8 * p_g + int(k2s)) == 4 * p_g - mu0 - inv.mu == inv.sigma


def test_sylvester_from_milnor():
    inv = sylvester_from_milnor(4, 27, 6)
    assert inv.sigma == -17 and inv.mu_plus == 2


def test_smoothing_data_validation():
    with pytest.raises(ValueError):
        SmoothingData(p_g=1, mu0=0, k2_plus_s=0, e=3, epsilon=0)
    with pytest.raises(ValueError):
        SmoothingData(p_g=-1, mu0=0, k2_plus_s=0, e=3, epsilon=1)
    with pytest.raises(ValueError):
        SmoothingData(p_g=1, mu0=0, k2_plus_s=0, e=2, epsilon=1)
    with pytest.raises(ValueError, match="numerically Gorenstein"):
        smoothing_data_for(build_context(from_matrix([-3], [])), 0, 3, 1)


def test_cone4_rows():
    g, data = cone_singularity(4)
    ctx = build_context(g)
    rep = evaluate_bounds(ctx, data, minimize_chi(ctx).optimum_value)
    assert rep.invariants.mu == 27 and rep.invariants.sigma == -17
    b7 = rep["B7"]
    assert (b7.lhs, b7.rhs, b7.margin, b7.status) == (17, 7, 10, HOLDS)
    assert rep["B11"].lhs == 17 and rep["B11"].rhs == 7
    assert rep["B5"].identity_ok and rep["B6"].identity_ok and rep["B7"].identity_ok
    assert rep["B2"].status == NOT_APPLICABLE
    assert "unimodular lattice required" in rep["B2"].assumptions_violated
    assert not rep.failures()


@pytest.mark.parametrize("d", range(2, 21))
def test_cone_family_all_applicable_bounds_hold(d):
    g, data = cone_singularity(d)
    ctx = build_context(g)
    assert data.p_g == comb(d, 3)
    assert ctx.z_k == (d - 2) * ctx.reduced_cycle
    rep = evaluate_bounds(ctx, data, minimize_chi(ctx).optimum_value)
    assert rep.invariants.mu == (d - 1) ** 3
    for row in rep.applicable():
        assert row.margin >= 0, row
        assert row.identity_ok in (None, True)
    # second form of the reduced-cycle bound
    if rep["B7"].status != NOT_APPLICABLE:
        E = ctx.reduced_cycle
        c = Fraction(2) ** (data.epsilon + 3 - data.e) * (data.p_g + 1)
        assert rep["B7"].rhs == c + square(ctx, E) + graph_euler_characteristic(g)
    # multiplicity bound is never sharper than the cycle bound on cones
    if rep["B8"].status != NOT_APPLICABLE:
        assert rep["B8"].margin >= rep["B9"].margin


def test_du_val_rows_are_not_applicable():
    g, data = cone_singularity(2)
    rep = evaluate_bounds(build_context(g), data, 0)
    applicable = {r.id for r in rep.applicable()}
    assert applicable == {"B11", "B13"}
    assert "Du Val singularities excluded" in rep["B5"].assumptions_violated


def test_cubic_cone_ashikaga():
    # multiplicity 3: 6 p_g <= mu - 2
    g, data = cone_singularity(3)
    inv = data.invariants()
    assert data.p_g == 1 and inv.mu == 8
    assert 6 * data.p_g <= inv.mu - 2


def test_unimodular_rows():
    # E8 singularity with a fake p_g: graph-side rows evaluate, margins exact
    ctx = build_context(dynkin("E", 8))
    data = smoothing_data_for(ctx, 0, 3, 1, nu=2)
    rep = evaluate_bounds(ctx, data, 0)
    assert rep["B2"].status == HOLDS and rep["B2"].lhs == 1
    assert rep["B4"].lhs == 8 * 0 + ctx.k2_plus_s == 8
    assert rep.invariants.mu == 8 and rep.invariants.sigma == -8
    assert rep["B1"].status == NOT_APPLICABLE


def test_proxy_nu_notes():
    ctx = build_context(cone(5))
    data = smoothing_data_for(ctx, comb(5, 3), 3, 1)
    assert data.nu == 5 and data.nu_source == "proxy"
    rep = evaluate_bounds(ctx, data, minimize_chi(ctx).optimum_value)
    assert rep["B10"].status == NOT_APPLICABLE and rep["B12"].status == NOT_APPLICABLE
    assert "nu is a proxy" in rep["B8"].notes
    assert any("proxy" in w for w in rep.warnings)


def test_b8_level_validation():
    g, data = cone_singularity(5)
    ctx = build_context(g)
    rep = evaluate_bounds(ctx, data, minimize_chi(ctx).optimum_value, t=-2)
    assert rep["B8"].status == NOT_APPLICABLE
    rep = evaluate_bounds(ctx, data, minimize_chi(ctx).optimum_value, t=3)
    assert rep["B8"].status == HOLDS


def test_non_gorenstein_with_mu():
    ctx = build_context(from_matrix([-3], []))
    data = smoothing_data_for(ctx, 0, 4, 0, mu=0)
    rep = evaluate_bounds(ctx, data, minimize_chi(ctx).optimum_value)
    assert rep.invariants is not None
    assert rep["B13"].status == HOLDS
    data = smoothing_data_for(ctx, 0, 4, 0)
    rep = evaluate_bounds(ctx, data)
    assert rep.invariants is None
    assert rep["B13"].status == NOT_APPLICABLE


def test_inconsistent_mu_rejected():
    g, data = cone_singularity(4)
    bad = SmoothingData(data.p_g, data.mu0, data.k2_plus_s, 3, 1, 4, "user", mu=26)
    with pytest.raises(ValueError):
        bad.invariants()


def test_mismatched_graph_data_rejected():
    g, data = cone_singularity(4)
    with pytest.raises(ValueError):
        evaluate_bounds(build_context(cone(5)), data)


def test_non_minimal_notes():
    # a genus-2 (-1)-curve is minimal
    ctx = build_context(from_matrix([-1], [], [2]))
    rep = evaluate_bounds(ctx, smoothing_data_for(ctx, 1, 4, 1), minimize_chi(ctx).optimum_value)
    assert not rep.warnings or not any("non-minimal" in w for w in rep.warnings)
    # cubic cone blown up at a point: Z_K = (1, 0)
    ctx = build_context(from_matrix([-4, -1], [(0, 1)], [1, 0]))
    assert ctx.z_k.as_ints() == (1, 0)
    rep = evaluate_bounds(ctx, smoothing_data_for(ctx, 1, 3, 1), minimize_chi(ctx).optimum_value)
    assert any("non-minimal" in w for w in rep.warnings)
    assert rep.applicable() and all("non-minimal input" in r.notes for r in rep.applicable())


def test_homogeneous_icis_examples():
    h = homogeneous_icis([4])
    assert (h.nu, h.p_g, h.mu, h.e) == (4, 4, 27, 3)
    assert 6 * h.p_g == h.mu + 1 - h.nu == 24
    h = homogeneous_icis([2, 2])
    assert h.refined_coefficient == 4 and h.p_g == 1 and h.mu == 7
    h = homogeneous_icis([200, 200])
    assert abs(Fraction(h.mu, h.p_g) / asymptotic_ratio(2) - 1) < Fraction(1, 100)
    assert asymptotic_ratio(2) == Fraction(36, 7)


def test_homogeneous_icis_mixed_degrees():
    h = homogeneous_icis([2, 3])
    assert h.nu == 6 and h.p_g == 6 * (Fraction(1, 3) + Fraction(2, 4)) == 5
    assert h.mu is None
    with pytest.raises(ValueError):
        homogeneous_icis([1])


def test_icis_weak_inequality_grid():
    for r in range(1, 7):
        for d in range(2, 21):
            h = homogeneous_icis([d] * r)
            assert h.p_g >= 0
            assert h.weak_coefficient_ok
            if r == 1:
                assert 6 * h.p_g == h.mu + 1 - h.nu
            if h.refined_ok is not None:
                assert h.refined_ok


def test_icis_cone_agreement():
    for d in range(2, 10):
        g, data = cone_singularity(d)
        h = homogeneous_icis([d])
        assert h.p_g == data.p_g and h.mu == data.invariants().mu


def test_asymptotics_tables():
    rows = strict_icis_asymptotics(1, 10)
    assert [r.nu_minus_one for r in rows] == list(range(1, 10))
    assert [r.nu for r in strict_icis_asymptotics(2, 6)] == [4, 9, 16, 25, 36]
    rows = strict_icis_asymptotics(1, 10, mu0=lambda d: (d - 1) * (d - 2))
    row = rows[2]
    assert row.d == 4 and row.lower_bound == 4 - 1 + 6
    assert -cone_singularity(4)[1].invariants().sigma == 17 >= row.lower_bound
    for row in rows:
        sigma = cone_singularity(row.d)[1].invariants().sigma
        assert -sigma >= row.lower_bound
