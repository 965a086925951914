import json
import math

import pytest

from projinv.curvemodel import builtin, eval_space_jet, parse_curve, random_curve
from projinv.errors import AllPointsSingular, CenterPlaneSingularity, DimensionMismatch
from projinv.verify import (
    IdentityCheck,
    builtin_corpus,
    check_identity,
    default_samples,
    equivariance_residual,
    finite_difference_estimate,
    finite_difference_oracle,
    fuzz_invariance,
    oracle_agreement,
)


def test_default_samples():
    ts = default_samples()
    assert len(ts) == 10 and ts[0] == 0.2 and ts[-1] == 1.5


def test_corpus_is_deterministic():
    a = [c.text for c in builtin_corpus(42)]
    assert a == [c.text for c in builtin_corpus(42)]
    assert a != [c.text for c in builtin_corpus(43)]
    assert len(a) == 9


def test_helix_eta_pullback_passes():
    rep = check_identity(builtin("helix"), IdentityCheck.ETA_PULLBACK)
    assert rep.passed and rep.tolerance == 1e-7
    assert len(rep.evaluated) == 10


def test_twisted_cubic_frenet_tight():
    rep = check_identity(builtin("twisted_cubic"), "FRENET", tolerances={"frenet": 1e-9})
    assert rep.passed


def test_twisted_cubic_eta_pullback_is_singular():
    with pytest.raises(AllPointsSingular):
        check_identity(builtin("twisted_cubic"), IdentityCheck.ETA_PULLBACK)


def test_plane_curve_rejected():
    with pytest.raises(DimensionMismatch):
        check_identity(builtin("parabola"), "FRENET")


def test_skips_carry_reasons():
    # Delta = t on the helix, so t = 0 is a degenerate point
    rep = check_identity(builtin("helix"), "FRENET", samples=[0.0, 0.5, 1.0])
    skipped = [p for p in rep.points if p.status == "skip"]
    assert skipped and all(p.reason for p in skipped)
    assert rep.verdict == "pass"


def test_report_schema():
    doc = check_identity(builtin("helix"), "BETA_DUAL").to_dict()
    assert set(doc) == {"check", "curve", "tolerance", "points", "verdict"}
    assert {"t", "residual", "status"} <= set(doc["points"][0])
    json.dumps(doc)


def test_impossible_tolerance_fails():
    rep = check_identity(builtin("helix"), "FRENET", tolerances={"frenet": 0.0})
    assert rep.verdict == "fail"


def test_fuzz_examples():
    rep = fuzz_invariance(builtin("helix"), "eta_hat", "GL3+", trials=100)
    assert rep.passed(1e-7)
    rep = fuzz_invariance(builtin("unit_circle"), "mu", "SA2", trials=100)
    assert rep.passed(1e-8)


def test_kappa_is_not_gl3_invariant_but_scales():
    plain = fuzz_invariance(builtin("helix"), "kappa", "GL3+", trials=20, scaling_law=False)
    assert not plain.passed(1e-8)
    scaled = fuzz_invariance(builtin("helix"), "kappa", "GL3+", trials=20, scaling_law=True)
    assert scaled.passed(1e-8)


def test_fuzz_report_deterministic():
    a = fuzz_invariance(builtin("exp_trig"), "tau_hat", "GL3+", trials=10, master_seed=5)
    b = fuzz_invariance(builtin("exp_trig"), "tau_hat", "GL3+", trials=10, master_seed=5)
    assert a.to_json() == b.to_json()
    c = fuzz_invariance(builtin("exp_trig"), "tau_hat", "GL3+", trials=10, master_seed=6)
    assert c.to_json() != a.to_json()


def test_fuzz_dimension_check():
    with pytest.raises(DimensionMismatch):
        fuzz_invariance(builtin("helix"), "mu", "SA2", trials=1)


def test_fd_examples():
    f = lambda t: t * t  # noqa: E731
    assert finite_difference_estimate(f, 3.0, 1, h=1e-3)[0] == pytest.approx(6.0, abs=1e-8)
    assert finite_difference_estimate(math.sin, 0.0, 4)[0] == pytest.approx(0.0, abs=1e-5)
    tc = builtin("twisted_cubic")
    est = finite_difference_oracle(tc, 1.0, 2, component=2)
    assert est == pytest.approx(6.0, abs=1e-6)
    assert est == pytest.approx(eval_space_jet(tc, 1.0).z[2], abs=1e-6)


def test_fd_bounds_are_honest():
    # true errors sit inside the reported bounds for exp, whose derivatives are known
    for k in range(8):
        est, bound = finite_difference_estimate(math.exp, 0.3, k)
        assert abs(est - math.exp(0.3)) <= bound


def test_fd_argument_checks():
    with pytest.raises(ValueError):
        finite_difference_estimate(math.sin, 0.0, 8)
    with pytest.raises(ValueError):
        finite_difference_estimate(math.sin, 0.0, 2, h=0.0)


def test_oracle_agreement_random_curve():
    c = random_curve(21, 3, "trig-poly", 4)
    assert oracle_agreement(c, 0.6) <= 1.0


def test_equivariance_residual_is_small():
    w = eval_space_jet(builtin("exp_trig"), 0.5)
    for kind in ("central", "parallel"):
        res = equivariance_residual(w, kind, seed=3)
        assert max(res.values()) < 1e-9


def test_equivariance_skips_center_plane():
    w = eval_space_jet(parse_curve("t, t^2, t - 0.5"), 0.5)
    with pytest.raises(CenterPlaneSingularity):
        equivariance_residual(w, "central", seed=1)


def test_check_tolerances_documented():
    for check in IdentityCheck:
        assert check.tolerance == next(iter(check.tolerances.values()))
    assert IdentityCheck.BETA_DUAL.tolerance == 1e-9
    assert IdentityCheck.ZETA_RELATION.tolerances["xi_density"] == 1e-10
