import numpy as np
import pytest

from projinv.curvemodel import builtin, linear_image, parse_curve, projective_image
from projinv.errors import DimensionMismatch, GroupMismatch, InsufficientRegularSamples
from projinv.projection import central
from projinv.signature import Signature, SignatureGroup, compare, sample_signature, signature_point
from projinv.transform import random_group_element

HELIX_IMAGE = parse_curve("cos(t)/t, sin(t)/t", label="helix image")


def test_group_metadata():
    assert SignatureGroup.GL3_space.dimension == 3
    assert SignatureGroup.PGL3_plane.coordinates == ("eta", "eta_xi")
    assert SignatureGroup.SA2_plane.coordinates == ("mu", "mu_chi")


def test_twisted_cubic_collapses():
    sig = sample_signature(builtin("twisted_cubic"), "GL3_space", n=50)
    assert sig.degenerate and sig.diameter < 1e-8
    np.testing.assert_allclose(sig.points[0], [2 / np.sqrt(3), -4 / np.sqrt(3)], atol=1e-9)


def test_circle_collapses():
    sig = sample_signature(builtin("unit_circle"), "SA2_plane", n=40)
    assert sig.degenerate
    np.testing.assert_allclose(sig.points.mean(axis=0), [3.0, 0.0], atol=1e-9)


def test_helix_image_signature_is_an_arc():
    sig = sample_signature(builtin("helix"), "PGL3_plane", n=50, projection=central())
    assert not sig.degenerate and sig.diameter > 0.1
    direct = sample_signature(HELIX_IMAGE, "PGL3_plane", n=50)
    assert compare(sig, direct).distance < 1e-9


def test_self_comparison_and_symmetry():
    a = sample_signature(builtin("wobble"), "A2_plane", n=60)
    b = sample_signature(builtin("log_spiral"), "A2_plane", n=60)
    assert compare(a, a).distance == 0.0 and compare(a, a).equivalent
    assert compare(a, b).distance == compare(b, a).distance


def test_pgl3_transform_is_equivalent():
    # a map that keeps the whole arc away from the line sent to infinity, so
    # both signatures cover the same samples
    g = random_group_element(17, "PGL3")
    window = (0.5, 1.5)
    a = sample_signature(HELIX_IMAGE, "PGL3_plane", window=window, n=200)
    b = sample_signature(projective_image(HELIX_IMAGE, g.A), "PGL3_plane", window=window, n=200)
    assert not a.dropped and not b.dropped
    assert compare(a, b, tol=1e-4).equivalent


def test_partial_coverage_is_not_equivalent():
    # this map sends part of the arc near infinity, where A underflows the
    # odd-root guard; the missing stretch shows up in the Hausdorff distance
    g = random_group_element(15, "PGL3")
    window = (0.5, 1.5)
    a = sample_signature(HELIX_IMAGE, "PGL3_plane", window=window, n=200)
    b = sample_signature(projective_image(HELIX_IMAGE, g.A), "PGL3_plane", window=window, n=200)
    assert b.dropped
    assert not compare(a, b, tol=1e-4).equivalent


def test_different_curves_are_not_equivalent():
    a = sample_signature(HELIX_IMAGE, "PGL3_plane", n=200)
    b = sample_signature(builtin("exp_curve"), "PGL3_plane", n=200)
    assert not compare(a, b, tol=1e-4).equivalent


def test_gl3_transform_is_equivalent():
    g = random_group_element(2, "GL3+")
    a = sample_signature(builtin("exp_trig"), "GL3_space", n=200)
    b = sample_signature(linear_image(builtin("exp_trig"), g.A), "GL3_space", n=200)
    assert compare(a, b).equivalent


def test_group_mismatch():
    a = sample_signature(builtin("wobble"), "A2_plane", n=10)
    b = sample_signature(builtin("wobble"), "SA2_plane", n=10)
    with pytest.raises(GroupMismatch):
        compare(a, b)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        signature_point(builtin("parabola"), "GL3_space", 0.5)
    with pytest.raises(DimensionMismatch):
        signature_point(builtin("helix"), "GL3_space", 0.5, projection=central())


def test_too_few_regular_samples():
    with pytest.raises(InsufficientRegularSamples):
        sample_signature(builtin("plane_line"), "SA2_plane", n=20)


def test_dropped_samples_are_listed():
    # Delta = t vanishes at t = 0
    sig = sample_signature(builtin("helix"), "GL3_space", window=(0.0, 1.0), n=11)
    assert sig.dropped and sig.dropped[0][0] == 0.0
    assert len(sig.points) + len(sig.dropped) == 11


def test_serialization_roundtrip():
    sig = sample_signature(builtin("wobble"), "SA2_plane", n=25)
    back = Signature.from_json(sig.to_json())
    np.testing.assert_array_equal(back.points, sig.points)
    np.testing.assert_array_equal(back.ts, sig.ts)
    assert back.group is sig.group and back.label == sig.label
    rows = sig.to_csv().splitlines()
    assert rows[0] == "t,inv1,inv2" and len(rows) == 26
    vals = np.array([[float(x) for x in r.split(",")] for r in rows[1:]])
    np.testing.assert_array_equal(vals[:, 1:], sig.points)
