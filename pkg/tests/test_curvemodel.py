import json

import numpy as np
import pytest

from projinv.curvemodel import (
    BUILTINS,
    builtin,
    curve_from_dict,
    eval_jet,
    eval_plane_jet,
    eval_space_jet,
    load_curve,
    parse_curve,
    random_curve,
    resolve_curve,
    sample_points,
)
from projinv.errors import DimensionMismatch, DomainError, ExpressionSyntaxError


def test_parse_twisted_cubic_and_helix():
    assert parse_curve("t, t^2, t^3").dimension == 3
    helix = parse_curve("cos(t), sin(t), t")
    assert helix.dimension == 3
    np.testing.assert_allclose(sample_points(helix, [0.0]), [[1.0, 0.0, 0.0]])


def test_parse_error_position():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_curve("t, t*")
    assert err.value.offset == 6


def test_component_count():
    with pytest.raises(DimensionMismatch):
        parse_curve("t")
    with pytest.raises(DimensionMismatch):
        parse_curve("t, t, t, t")


def test_twisted_cubic_jet():
    w = eval_space_jet(builtin("twisted_cubic"), 1.0, 3)
    np.testing.assert_allclose(w.x.coeffs, [1, 1, 0, 0])
    np.testing.assert_allclose(w.y.coeffs, [1, 2, 2, 0])
    np.testing.assert_allclose(w.z.coeffs, [1, 3, 6, 6])


def test_helix_jet():
    w = eval_space_jet(builtin("helix"), 0.0, 2)
    np.testing.assert_allclose(w.x.coeffs, [1, 0, -1], atol=1e-15)
    np.testing.assert_allclose(w.y.coeffs, [0, 1, 0], atol=1e-15)
    np.testing.assert_allclose(w.z.coeffs, [0, 1, 0], atol=1e-15)


def test_domain_error_propagates():
    with pytest.raises(DomainError):
        eval_plane_jet(parse_curve("t, log(t)"), 0.0)


def test_dimension_checks():
    with pytest.raises(DimensionMismatch):
        eval_space_jet(builtin("parabola"), 0.0)
    with pytest.raises(DimensionMismatch):
        eval_plane_jet(builtin("helix"), 0.0)


def test_default_order():
    assert eval_jet(builtin("helix"), 0.5).order == 10


def test_random_curve_deterministic():
    a, b = random_curve(7, 3, "poly", 5), random_curve(7, 3, "poly", 5)
    assert a.text == b.text
    assert random_curve(8, 3, "poly", 5).text != a.text


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("kind", ["poly", "trig-poly"])
def test_random_curve_z0(seed, kind):
    c = random_curve(seed, 3, kind, 5)
    assert abs(sample_points(c, [0.0])[0, 2]) >= 0.5


def test_random_curve_degree():
    with pytest.raises(ValueError):
        random_curve(1, 3, "poly", 2)


def test_json_loading(tmp_path):
    doc = {"label": "cubic", "dim": 3, "components": ["t", "t^2", "t^3"]}
    path = tmp_path / "c.json"
    path.write_text(json.dumps(doc))
    c = load_curve(path)
    assert c.label == "cubic" and c.dimension == 3
    assert resolve_curve(str(path)).text == c.text
    with pytest.raises(DimensionMismatch):
        curve_from_dict({"dim": 2, "components": ["t", "t", "t"]})


def test_resolve_builtin_or_text():
    assert resolve_curve("helix").label == "helix"
    assert resolve_curve("t, t^2").dimension == 2


def test_text_roundtrip():
    for name in BUILTINS:
        c = builtin(name)
        assert parse_curve(c.text).text == c.text
