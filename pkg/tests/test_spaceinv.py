import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from projinv import spaceinv
from projinv.curvemodel import builtin, eval_space_jet, linear_image, parse_curve, random_curve
from projinv.errors import (
    DegeneratePoint,
    DegenerateZ3,
    NegativeKappaBranch,
    SingularPointError,
    ZeroAlpha,
)
from projinv.planeinv import affine_jets, projective_jets
from projinv.projection import central, parallel, project, space_to_graph, to_graph
from projinv.spaceinv import (
    Classification,
    EtaRoute,
    centro_affine,
    centro_equi_affine,
    central_offset_invariants,
    classifier_pullbacks,
    classify,
    eta_hat,
    eta_hat_all,
    frenet_residual,
    normalized_invariants,
    parallel_family_pullback,
    parallel_invariants,
    recover_kappa,
    rel_residual,
    y2_substitution,
    zeta_relation,
)
from projinv.transform import Affine3, act_space, random_group_element, shear_b

SQ3 = math.sqrt(3.0)

# Reference values from a sympy evaluation of the defining determinant
# formulas at 20 digits.  At helix t = 0.3 the curvature is negative and the
# hatted values are taken on the |kappa| branch.
REFERENCE = {
    ("helix", 0.3): {
        "Delta": 0.3,
        "kappa": -11.542897369729589698,
        "tau": 11.111111111111111111,
        "kappa_hat": 4.4749061958168709699,
        "tau_hat": 0.2833252229243094439,
        "alpha": 197.71376314586191129,
        "alpha_hat": 5.0415566416654898577,
        "beta_hat": -0.83048057370372690974,
        "eta_hat": 1.2778977476085777455,
        "zeta_hat1": 0.76057270432239480095,
        "zeta_tilde": 0.11901835616891346899,
    },
    ("helix", 1.0): {
        "Delta": 1.0,
        "kappa": 4.0 / 9.0,
        "tau": 1.0,
        "kappa_hat": 11.0 / 4.0,
        "tau_hat": 27.0 / 8.0,
        "alpha": 2.8148148148148148148,
        "alpha_hat": 19.0 / 2.0,
        "beta_hat": -81.0 / 8.0,
        "eta_hat": 0.68670760575117164488,
        "zeta_hat1": 0.49968476722437817391,
        "zeta_tilde": 0.49106951261706130884,
    },
    ("exp_trig", 0.9): {
        "Delta": 10.181897779093591907,
        "kappa": 0.096070436279077559121,
        "tau": 0.018125776957539541343,
        "kappa_hat": 1.1047934401862442243,
        "tau_hat": 0.60871217345678639537,
        "alpha": 0.069149268720499010644,
        "alpha_hat": 2.3222177870998170151,
        "beta_hat": 1.3193033438489961640,
        "eta_hat": -2.9328008991853749181,
        "zeta_hat1": -0.091730269473380307896,
        "zeta_tilde": 1.6892621497900045761,
    },
}


def jet(name, t, order=None):
    return eval_space_jet(builtin(name), t, order)


@pytest.mark.parametrize("key", list(REFERENCE))
def test_reference_values(key):
    ci = centro_affine(jet(*key))
    for name, expected in REFERENCE[key].items():
        assert ci.require(name).value == pytest.approx(expected, rel=1e-10), name


@pytest.mark.parametrize("t", [0.5, 1.0, 2.0])
def test_twisted_cubic_centro_equi_affine(t):
    ce = centro_equi_affine(jet("twisted_cubic", t))
    assert ce.Delta.value == pytest.approx(2 * t**3)
    assert ce.kappa.value == pytest.approx(3 * 2 ** (-2 / 3) * t**-4, rel=1e-12)
    assert ce.tau.value == pytest.approx(3 * t**-6, rel=1e-12)


def test_twisted_cubic_at_one():
    ce = centro_equi_affine(jet("twisted_cubic", 1.0))
    assert ce.values["kappa"] == pytest.approx(1.889882, abs=1e-6)
    assert ce.values["tau"] == pytest.approx(3.0)


def test_planar_curve_is_degenerate():
    with pytest.raises(DegeneratePoint):
        centro_equi_affine(eval_space_jet(parse_curve("t, t^2, 0*t"), 0.5))


@pytest.mark.parametrize("t", np.linspace(0.2, 1.5, 10))
def test_twisted_cubic_constants(t):
    ci = centro_affine(jet("twisted_cubic", t))
    assert ci.kappa_hat.value == pytest.approx(-4 / SQ3, abs=1e-9)
    assert ci.tau_hat.value == pytest.approx(2 / SQ3, abs=1e-9)
    assert ci.alpha_hat.value == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(ZeroAlpha):
        ci.require("eta_hat")
    with pytest.raises(ZeroAlpha):
        eta_hat(jet("twisted_cubic", t))


def test_alpha_hat_is_kappa_hat_plus_two_tau_hat():
    for t in (0.3, 0.9, 1.4):
        ci = centro_affine(jet("exp_trig", t))
        a = ci.alpha_hat.value
        assert a == pytest.approx(ci.kappa_hat.value + 2 * ci.tau_hat.value, rel=1e-10)
        # zeta_tilde is the real cube root of 1/(3 alpha)
        assert ci.zeta_tilde.value == pytest.approx(np.cbrt(1 / (3 * ci.alpha.value)), rel=1e-12)


@pytest.mark.parametrize("name,t", [("twisted_cubic", 0.5), ("twisted_cubic", 1.0), ("twisted_cubic", 2.0), ("helix", 0.3)])
def test_frenet_examples(name, t):
    assert frenet_residual(jet(name, t)) < 1e-9


def test_frenet_random_curve():
    c = random_curve(11, 3, "poly", 5)
    for t in np.linspace(0.2, 1.5, 10):
        try:
            assert frenet_residual(eval_space_jet(c, t)) < 1e-8
        except SingularPointError:
            pass


@pytest.mark.parametrize("lam", [2.0, 0.5, 3.0])
def test_scaling_laws(lam):
    w = jet("exp_trig", 0.7)
    a = centro_equi_affine(w)
    b = centro_equi_affine(act_space(Affine3(lam * np.eye(3)), w))
    assert b.kappa.value == pytest.approx(a.kappa.value / lam**2, rel=1e-12)
    assert b.tau.value == pytest.approx(a.tau.value / lam**3, rel=1e-12)
    assert b.ds.value == pytest.approx(a.ds.value * lam, rel=1e-12)


def test_zeta_tilde_doubles_with_the_curve():
    w = jet("helix", 0.8)
    z1 = centro_affine(w).zeta_tilde.value
    z2 = centro_affine(act_space(Affine3(2 * np.eye(3)), w)).zeta_tilde.value
    assert z2 == pytest.approx(2 * z1, rel=1e-12)


@pytest.mark.parametrize("t", [0.2, 0.5, 1.0])
def test_eta_routes_agree_on_helix(t):
    vals = {k: v for k, v in eta_hat_all(jet("helix", t)).items() if v is not None}
    assert {"SIGMA", "S", "ZETA", "ZETA_SQRT"} <= set(vals)
    ref = vals["S"]
    for v in vals.values():
        assert rel_residual(v, ref) < 1e-7


def test_normalized_route_needs_positive_kappa():
    w = jet("helix", 0.3)
    with pytest.raises(NegativeKappaBranch):
        eta_hat(w, EtaRoute.NORMALIZED)
    assert eta_hat(jet("helix", 1.0), EtaRoute.NORMALIZED).value == pytest.approx(
        REFERENCE[("helix", 1.0)]["eta_hat"], rel=1e-9
    )


def test_eta_hat_matches_image_on_random_curve():
    c = random_curve(3, 3, "poly", 5)
    checked = 0
    for t in np.linspace(0.2, 1.5, 10):
        w = eval_space_jet(c, t)
        try:
            lhs = eta_hat(w, EtaRoute.SIGMA).value
            rhs = projective_jets(to_graph(project(central(), w), upright_frame=True))[0].value
        except SingularPointError:
            continue
        checked += 1
        assert rel_residual(lhs, rhs) < 1e-7
    assert checked >= 5


def test_twisted_cubic_normalized_invariants():
    n = normalized_invariants(jet("twisted_cubic", 0.9))
    assert n.J3.value == pytest.approx(2 / SQ3, abs=1e-9)
    assert n.I5.value == pytest.approx(-20 / SQ3, abs=1e-9)
    assert n.J4.value == pytest.approx(-4.0, abs=1e-9)
    assert n.phantom == spaceinv.PHANTOM


def test_recurrence_dual_forms_on_helix():
    n = normalized_invariants(jet("helix", 1.2))
    for name, r in n.dual_residuals().items():
        assert r < 1e-9, name


@pytest.mark.parametrize("t", np.linspace(0.3, 1.4, 5))
def test_zeta_relation_helix(t):
    w = jet("helix", t)
    res = zeta_relation(w, to_graph(project(central(), w)))
    assert res["mu_chi"] < 1e-7
    assert res["zeta_hat1"] < 1e-9
    assert res["xi_density"] < 1e-10


def test_zeta_relation_random_curve():
    c = random_curve(5, 3, "poly", 5)
    checked = 0
    for t in np.linspace(0.2, 1.5, 10):
        w = eval_space_jet(c, t)
        try:
            res = zeta_relation(w, to_graph(project(central(), w)))
        except SingularPointError:
            continue
        checked += 1
        assert res["mu_chi"] < 1e-7
    assert checked >= 3


def _recovered(w):
    ci = centro_affine(w)
    return recover_kappa(ci.eta_hat, ci.zeta_tilde, ci.dxi).value, ci.kappa.value


@pytest.mark.parametrize("t", np.linspace(0.3, 1.4, 5))
def test_recover_kappa_helix(t):
    got, kappa = _recovered(jet("helix", t))
    assert rel_residual(got, kappa) < 1e-7


def test_recover_kappa_random_and_sl3():
    c = random_curve(9, 3, "poly", 5)
    g = random_group_element(4, "SL3")
    checked = 0
    for t in np.linspace(0.2, 1.5, 10):
        w = eval_space_jet(c, t)
        try:
            got, kappa = _recovered(w)
            moved, _ = _recovered(act_space(g, w))
        except SingularPointError:
            continue
        checked += 1
        assert rel_residual(got, kappa) < 1e-7
        assert rel_residual(moved, kappa) < 1e-7
    assert checked >= 3


def test_classify_examples():
    ts = np.linspace(0.2, 1.5, 10)
    assert classify(builtin("planar_origin"), ts) is Classification.TOTALLY_DEGENERATE
    assert classify(builtin("twisted_cubic"), ts) is Classification.CONIC_IMAGE
    assert classify(builtin("helix"), ts) is Classification.REGULAR


@pytest.mark.parametrize("t", np.linspace(0.2, 1.5, 6))
def test_classifier_pullbacks_helix(t):
    w = jet("helix", t)
    res = classifier_pullbacks(w, to_graph(project(central(), w)))
    assert res["Y2"] < 1e-8 and res["A"] < 1e-8


def test_central_offset():
    w = jet("helix", 0.8)
    a, b = centro_affine(w), central_offset_invariants(w, (0.0, 0.0, 0.0))
    assert a.eta_hat.value == b.eta_hat.value
    c = (0.0, 0.0, -1.0)
    for t in np.linspace(0.3, 1.4, 5):
        w = jet("helix", t)
        lhs = central_offset_invariants(w, c).eta_hat.value
        rhs = projective_jets(to_graph(project(central(c), w), upright_frame=True))[0].value
        assert rel_residual(lhs, rhs) < 1e-7


def test_central_offset_of_shifted_twisted_cubic():
    c = np.array([0.4, -0.3, 0.2])
    shifted = linear_image(builtin("twisted_cubic"), np.eye(3), offset=c)
    for t in (0.5, 1.0):
        ci = central_offset_invariants(eval_space_jet(shifted, t), c)
        ref = centro_affine(jet("twisted_cubic", t))
        assert ci.kappa_hat.value == pytest.approx(ref.kappa_hat.value, rel=1e-10)
        assert ci.alpha_hat.value == pytest.approx(0.0, abs=1e-9)
        assert not ci.valid("eta_hat")


def test_flat_curve_parallel():
    g = space_to_graph(eval_space_jet(parse_curve("cos(t) + 0.2*cos(2*t), sin(t), 0*t"), 0.7))
    p = parallel_invariants(g)
    for k in ("z1", "z2", "z3", "z4"):
        assert p.lifted[k].value == 0.0
    assert p.iota_hat_z4 is None
    with pytest.raises(DegenerateZ3):
        spaceinv.iota_hat_z4(g)


def test_nu_hat_is_nu_of_parallel_image():
    w = jet("exp_trig", 0.8)
    nu_hat = parallel_invariants(space_to_graph(w)).nu_hat.value
    nu = affine_jets(to_graph(project(parallel(), w)))[0].value
    assert nu_hat == pytest.approx(nu, rel=1e-12)


def test_lifted_forms_random_curve():
    c = random_curve(13, 3, "poly", 5)
    checked = 0
    for t in np.linspace(0.2, 1.5, 10):
        try:
            p = parallel_invariants(space_to_graph(eval_space_jet(c, t)), check=False)
        except SingularPointError:
            continue
        checked += 1
        assert p.dual_residuals()["z2"] < 1e-9
    assert checked >= 3


def test_parallel_family():
    w = jet("helix", 0.6)
    assert parallel_family_pullback(w, (0.0, 0.0)).value == pytest.approx(
        parallel_invariants(space_to_graph(w)).nu_hat.value, rel=1e-14
    )
    b = (0.3, -0.2)
    for t in np.linspace(0.3, 1.4, 5):
        w = jet("helix", t)
        lhs = parallel_family_pullback(w, b).value
        rhs = affine_jets(to_graph(project(parallel(b), w)))[0].value
        assert rel_residual(lhs, rhs) < 1e-7
        straight = space_to_graph(act_space(shear_b(b).inverse(), w))
        assert rel_residual(y2_substitution(space_to_graph(w), b).value, straight.y[2].value) < 1e-10


def test_record_reports_reasons():
    rec = centro_affine(jet("twisted_cubic", 1.0)).record()
    assert rec["eta_hat"] is None and "κ_s + 2τ" in rec["eta_hat_reason"]
    assert rec["kappa_hat"] == pytest.approx(-4 / SQ3)


@given(st.integers(0, 2**31 - 1), st.floats(0.2, 1.5))
def test_kappa_tau_sl3_invariant(seed, t):
    g = random_group_element(seed, "SL3")
    w = jet("exp_trig", t)
    a, b = centro_equi_affine(w), centro_equi_affine(act_space(g, w))
    assert rel_residual(a.kappa.value, b.kappa.value) < 1e-8
    assert rel_residual(a.tau.value, b.tau.value) < 1e-8


@given(st.integers(0, 2**31 - 1), st.floats(0.2, 1.5))
def test_hatted_gl3_invariant(seed, t):
    g = random_group_element(seed, "GL3+")
    w = jet("helix", t)
    a, b = centro_affine(w), centro_affine(act_space(g, w))
    for name in ("kappa_hat", "tau_hat", "alpha_hat", "beta_hat", "eta_hat", "zeta_hat1"):
        assert rel_residual(a.require(name).value, b.require(name).value) < 1e-7, name
