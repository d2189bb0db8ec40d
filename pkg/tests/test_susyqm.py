"""Tests for the SUSY QM layer: gauged supercharge, Scarf wavefunctions,
intertwiners, operator relations, and the oscillator."""

import math
from fractions import Fraction as F

import numpy as np
import pytest

from dunklqm import grid as gridmod
from dunklqm.exact import DomainError
from dunklqm.jacobi import (
    FUZZ_PARAMS,
    construct_oracle,
    eigenvalue,
)
from dunklqm.opalg import Poly, matrix_on_basis
from dunklqm.susyqm import (
    FockVector,
    ScarfParams,
    bracket_n,
    gauged_supercharge,
    generic_H_parts,
    ground_state,
    ground_state_fn,
    ground_state_norm_sq,
    hermite_superposition,
    intertwiner,
    osc_energy,
    osc_h_apply,
    osc_mixed_state,
    osc_q_apply,
    osc_r_apply,
    osc_wavefunction,
    scarf_H_parts_explicit,
    scarf_energy,
    scarf_potential,
    supercharge_eigenvalue_scaled,
    verify_lowering,
    verify_operator_relations,
    verify_raising,
    wavefunction,
)
from dunklqm.opalg import dunkl


def pars(a, b):
    return ScarfParams(F(a), F(b))


# -- generic construction ----------------------------------------------------

def test_generic_h_parts_oscillator():
    from dunklqm.susyqm import SusyPotential

    p = SusyPotential(u=lambda x: 0.0 * x, v=lambda x: x,
                      du=lambda x: 0.0 * x, dv=lambda x: 1.0 + 0.0 * x,
                      params={})
    scalar, refl = generic_H_parts(p)
    x = np.linspace(-1, 1, 11)
    assert np.allclose(scalar(x), 0.5 * x**2)
    assert np.allclose(refl(x), -0.5)


def test_generic_h_parts_constant_u():
    from dunklqm.susyqm import SusyPotential

    p = SusyPotential(u=lambda x: 3.0 + 0.0 * x, v=lambda x: 0.0 * x,
                      du=lambda x: 0.0 * x, dv=lambda x: 0.0 * x, params={})
    scalar, refl = generic_H_parts(p)
    x = np.linspace(-1, 1, 5)
    assert np.allclose(scalar(x), 4.5)
    assert np.allclose(refl(x), 0.0)


def test_generic_h_parts_match_bracketed_scarf_form():
    p = pars(1, 2)
    scalar_g, refl_g = generic_H_parts(scarf_potential(p))
    scalar_e, refl_e = scarf_H_parts_explicit(p)
    x = np.array([0.5, -0.9, 1.2])
    assert np.allclose(scalar_g(x), scalar_e(x), atol=1e-13)
    assert np.allclose(refl_g(x), refl_e(x), atol=1e-13)


def test_susy_potential_parity():
    p = scarf_potential(pars("1/2", "3/2"))
    xs = np.linspace(0.1, 1.4, 7)
    assert p.check_parity(xs) < 1e-12


# -- gauged supercharge -------------------------------------------------------

def test_gauged_supercharge_spectrum_exact():
    for a, b in FUZZ_PARAMS:
        p = ScarfParams(a, b)
        q = gauged_supercharge(p)
        for n in range(21):
            pn = construct_oracle(n, p.jacobi())
            s = supercharge_eigenvalue_scaled(n, p)
            assert q.apply(pn) == pn.scale(s)
            assert s * s / 8 == scarf_energy(n, p)


def test_supercharge_consistency_with_eigenvalue_equation():
    # lambda_n = s_n + (a+b+1), with s_n the scaled supercharge eigenvalue
    for a, b in FUZZ_PARAMS:
        p = ScarfParams(a, b)
        for n in range(21):
            assert eigenvalue(n, p.jacobi()) == \
                supercharge_eigenvalue_scaled(n, p) + (a + b + 1)


def test_gauged_supercharge_ground_state_scale():
    q = gauged_supercharge(pars(0, 0))
    assert q.apply(Poly.one()) == Poly((-1,))


def test_scarf_energy_values():
    assert scarf_energy(0, pars(0, 0)) == F(1, 8)
    assert scarf_energy(1, pars(0, 2)) == F(25, 8)
    assert scarf_energy(2, pars(1, 3)) == F(81, 8)
    with pytest.raises(ValueError):
        scarf_energy(-1, pars(0, 0))


# -- wavefunctions ------------------------------------------------------------

def test_ground_state_norm_constants():
    assert abs(ground_state_norm_sq(pars(0, 0)) - 1 / math.pi) < 1e-13
    assert abs(ground_state_norm_sq(pars(1, 1)) - 1.0) < 1e-13


def test_ground_state_values_and_domain():
    p = pars(1, 1)
    assert ground_state(0.0, p) == 0.0
    with pytest.raises(DomainError):
        ground_state(2.0, p)
    g0 = ground_state_fn(p)
    assert abs(g0(np.array([0.7]))[0] - ground_state(0.7, p)) < 1e-14


def test_wavefunction_zero_is_ground_state():
    p = pars("1/2", "3/2")
    for x in (0.3, -0.8):
        assert abs(wavefunction(0, p, x) - ground_state(x, p)) < 1e-14


# -- intertwiners -------------------------------------------------------------

def test_corrected_x_is_dunkl_on_polynomials():
    # gauged corrected X equals T_{a/2} as a matrix identity up to degree 20
    for a, b in [(F(0), F(0)), (F(1, 2), F(3, 2)), (F(1), F(1))]:
        p = ScarfParams(a, b)
        op = intertwiner(p, "X", "corrected")
        assert op.gauged is not None
        lhs = matrix_on_basis(op.gauged, 20)
        rhs = matrix_on_basis(dunkl(a / 2), 20)
        assert lhs == rhs


def test_lowering_map_exact():
    for a, b in FUZZ_PARAMS:
        res = verify_lowering(ScarfParams(a, b), 20)
        assert all(res)


def test_bracket_values():
    assert bracket_n(0, F(1)) == 0
    assert bracket_n(1, F(0)) == 1
    assert bracket_n(3, F(1, 2)) == F(7, 2)
    assert bracket_n(4, F(1, 2)) == 4


def test_raising_map_corrected_scalar():
    for a, b in FUZZ_PARAMS:
        res = verify_raising(ScarfParams(a, b), 12, "corrected")
        checked = [r for r in res if r is not None]
        assert checked and all(checked)


def test_raising_map_printed_scalar_fails():
    res = verify_raising(pars("1/2", "3/2"), 4, "printed")
    checked = [r for r in res if r is not None]
    assert not any(checked)


def test_printed_x_fails_to_annihilate_ground_state():
    # grid application of the printed X on Psi_0 equals -(1/2) tan(x) Psi_0
    p = pars(1, 1)
    g = gridmod.Grid(2048, math.pi / 2)
    psi0 = ground_state_fn(p)(g.nodes)
    printed = intertwiner(p, "X", "printed")
    corrected = intertwiner(p, "X", "corrected")
    out_p = printed.apply_grid(psi0, g)
    out_c = corrected.apply_grid(psi0, g)
    mask = (np.abs(g.nodes) > 0.1) & (np.abs(np.abs(g.nodes) - g.halfwidth) > 0.1)
    target = -0.5 * np.tan(g.nodes) * psi0
    # finite-difference application: tolerances at the O(h^2) stencil level
    assert np.abs(out_p[mask] - target[mask]).max() < 1e-3
    assert np.abs(out_c[mask]).max() < 1e-3
    assert np.abs(out_p[mask]).max() > 0.05


def test_intertwiner_variant_validation():
    with pytest.raises(ValueError):
        intertwiner(pars(0, 0), "Z")
    with pytest.raises(ValueError):
        intertwiner(pars(0, 0), "X", "fixed")


# -- operator relations on the grid -------------------------------------------

@pytest.fixture(scope="module")
def relations_report():
    return verify_operator_relations(pars(0, 1), grids=(512, 1024, 2048))


def _pick(report, relation, variant):
    for r in report:
        if r["relation"] == relation and r["variant"] == variant:
            return r
    raise KeyError((relation, variant))


def test_relations_corrected_all_pass(relations_report):
    for rel in ("q_squared_equals_h", "reflection_conjugation_Q",
                "reflection_conjugation_H"):
        assert _pick(relations_report, rel, "n/a")["residual"] < 1e-8
    for rel in ("intertwine_X", "intertwine_Y", "product_repaired_indices"):
        assert _pick(relations_report, rel, "corrected")["residual"] < 1e-8


def test_relations_fd_convergence_order(relations_report):
    r = _pick(relations_report, "q_squared_equals_h", "n/a")
    assert r["order"] >= 1.7
    assert _pick(relations_report, "intertwine_X", "corrected")["order"] >= 1.7 \
        or _pick(relations_report, "intertwine_X", "corrected")["fd_residual"] < 1e-8


def test_relations_printed_defects_recorded(relations_report):
    assert _pick(relations_report, "intertwine_X", "printed")["residual"] > 1e-3
    assert _pick(relations_report, "intertwine_Y", "printed")["residual"] > 1e-3
    # the typeset-index product relation is satisfied by the printed maps
    assert _pick(relations_report, "product_typeset_indices",
                 "printed")["residual"] < 1e-8
    assert _pick(relations_report, "product_typeset_indices",
                 "corrected")["residual"] > 1e-3
    assert _pick(relations_report, "product_repaired_indices",
                 "printed")["residual"] > 1e-3


def test_parity_conjugation_pointwise_example():
    # R Q_{a,b} R + Q_{a,-b} annihilates a generic smooth function on the grid
    p = pars(1, "1/2")
    rep = verify_operator_relations(p, grids=(256, 512, 1024))
    assert _pick(rep, "reflection_conjugation_Q", "n/a")["residual"] < 1e-10


def _qq_vs_h_orders(pot, halfwidth, grids):
    scalar, refl = generic_H_parts(pot)
    errs = []
    for n in grids:
        g = gridmod.Grid(n, halfwidth)
        q = gridmod.supercharge_matrix(pot.u, pot.v, g)
        h = gridmod.assemble(scalar, refl, g)
        f = np.exp(-g.nodes**2) * np.cos(g.nodes * math.pi / (2 * halfwidth)) ** 2
        mask = (np.abs(g.nodes) > 0.06) \
            & (np.abs(np.abs(g.nodes) - g.halfwidth) > 0.06 * halfwidth)
        res = (q.matrix @ (q.matrix @ f) - h.matrix @ f)
        errs.append(np.abs(res[mask]).max())
    return np.log2(errs[0] / errs[1]), np.log2(errs[1] / errs[2])


def test_q_matrix_squared_matches_h_matrix_order():
    # matrix product Q.Q approaches the assembled H at second order on
    # smooth test vectors, for both the Scarf and oscillator systems
    order = _qq_vs_h_orders(scarf_potential(pars(0, 2)), math.pi / 2,
                            (256, 512, 1024))
    assert min(order) >= 1.7
    from dunklqm.susyqm import SusyPotential

    osc = SusyPotential(u=lambda x: 0.0 * x, v=lambda x: x,
                        du=lambda x: 0.0 * x, dv=lambda x: 1.0 + 0.0 * x,
                        params={})
    order = _qq_vs_h_orders(osc, 10.0, (256, 512, 1024))
    assert min(order) >= 1.7


# -- oscillator ---------------------------------------------------------------

def test_osc_q_action_matches_closed_form():
    for n in range(13):
        v = FockVector.basis(n)
        img = osc_q_apply(v)
        if n % 2 == 0:
            expected = FockVector({n - 1: math.sqrt(n)}) if n else FockVector()
        else:
            expected = FockVector({n + 1: math.sqrt(n + 1)})
        assert img.distance(expected) < 1e-12


def test_osc_energy_values():
    assert [osc_energy(n) for n in range(5)] == [0, 2, 2, 4, 4]
    with pytest.raises(ValueError):
        osc_energy(-2)


def test_osc_h_reproduces_energies_and_q_squared():
    for n in range(13):
        v = FockVector.basis(n)
        hv = osc_h_apply(v)
        assert hv.distance(v.scale(osc_energy(n))) < 1e-12
        qqv = osc_q_apply(osc_q_apply(v))
        assert qqv.distance(hv) < 1e-12


def test_osc_mixed_states():
    for n in range(6):
        for eps in (+1, -1):
            st = osc_mixed_state(n, eps)
            assert abs(st.norm() - 1 / math.sqrt(2)) < 1e-14
            qs = osc_q_apply(st)
            assert qs.distance(st.scale(eps * math.sqrt(2 * n + 2))) < 1e-12
            assert osc_r_apply(st).distance(
                osc_mixed_state(n, -eps).scale(-1)) < 1e-14
    with pytest.raises(ValueError):
        osc_mixed_state(0, 2)


def test_osc_wavefunction_vs_hermite_n0():
    # printed Laguerre form at n=0 equals sqrt(2) times the Hermite
    # superposition under the epsilon pairing eps -> -eps
    for eps in (+1, -1):
        for x in (0.5, -0.7, 1.3):
            ratio = osc_wavefunction(0, eps, x) / hermite_superposition(0, -eps, x)
            assert abs(ratio - math.sqrt(2)) < 1e-10


def test_osc_wavefunction_corrected_weight_constant():
    # with relative weight sqrt(n+1) the ratio is exactly 2^(1/2 - n)
    for n in range(4):
        for eps in (+1, -1):
            for x in (0.4, -0.9):
                r = osc_wavefunction(n, eps, x, "corrected") \
                    / hermite_superposition(n, -eps, x)
                assert abs(r - 2.0 ** (0.5 - n)) < 1e-10


def test_osc_wavefunction_printed_weight_breaks_for_n_ge_1():
    vals = [osc_wavefunction(1, 1, x) / hermite_superposition(1, -1, x)
            for x in (0.4, 0.9)]
    assert abs(vals[0] - vals[1]) > 1e-3


def test_osc_wavefunction_measured_norm():
    # quadrature norm of the printed form: (n+2)/2^(2n+1), recorded not assumed
    g = gridmod.Grid(512, 10.0)
    for n in range(3):
        val = gridmod.quadrature(
            lambda x: np.asarray([osc_wavefunction(n, 1, float(t)) for t in
                                  np.atleast_1d(x)]) ** 2, g)
        assert abs(val - (n + 2) / 2.0 ** (2 * n + 1)) < 1e-8
