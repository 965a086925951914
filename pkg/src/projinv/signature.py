"""Differential invariant signature curves and their comparison.

A signature is the image of a curve in the plane of two generating
invariants.  Two curves that differ by a group element trace the same set,
so equivalence is tested by the symmetric Hausdorff distance between the
sampled point clouds, normalized by the signature diameter.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from . import planeinv, spaceinv
from .curvemodel import eval_jet
from .errors import (
    DimensionMismatch,
    GroupMismatch,
    InsufficientRegularSamples,
    SingularPointError,
)
from .projection import project, to_graph

__all__ = [
    "SignatureGroup",
    "Signature",
    "Comparison",
    "sample_signature",
    "signature_point",
    "compare",
    "DEGENERATE_DIAMETER",
]

log = logging.getLogger(__name__)

# signatures whose diameter is below this (relative to 1 + their size) are points
DEGENERATE_DIAMETER = 1e-8


class SignatureGroup(str, enum.Enum):
    PGL3_plane = "PGL3_plane"
    GL3_space = "GL3_space"
    A2_plane = "A2_plane"
    SA2_plane = "SA2_plane"

    @property
    def dimension(self):
        return 3 if self is SignatureGroup.GL3_space else 2

    @property
    def coordinates(self):
        return _COORDS[self]


_COORDS = {
    SignatureGroup.PGL3_plane: ("eta", "eta_xi"),
    SignatureGroup.GL3_space: ("tau_hat", "kappa_hat"),
    SignatureGroup.A2_plane: ("nu", "nu_rho"),
    SignatureGroup.SA2_plane: ("mu", "mu_chi"),
}


def _pgl3(jet):
    g = to_graph(jet, upright_frame=True)
    eta, xi, *_ = planeinv.projective_jets(g)
    return eta.value, planeinv.invariant_derivative(eta, xi).value


def _a2(jet):
    g = to_graph(jet, upright_frame=True)
    nu, rho = planeinv.affine_jets(g)
    return nu.value, planeinv.invariant_derivative(nu, rho).value


def _sa2(jet):
    e = planeinv.equi_affine(to_graph(jet, upright_frame=True))
    return e["mu"].value, e["mu_chi"].value


def _gl3(jet):
    ci = spaceinv.centro_affine(jet, with_eta=False)
    return ci.require("tau_hat").value, ci.require("kappa_hat").value


_EVAL = {
    SignatureGroup.PGL3_plane: _pgl3,
    SignatureGroup.GL3_space: _gl3,
    SignatureGroup.A2_plane: _a2,
    SignatureGroup.SA2_plane: _sa2,
}


def signature_point(curve, group, t, order=None, projection=None):
    """The invariant pair of ``curve`` at ``t``; raises the guard failure if singular."""
    group = SignatureGroup(group)
    jet = eval_jet(curve, t, order)
    if projection is not None:
        if curve.dimension != 3:
            raise DimensionMismatch("only space curves are projected")
        jet = project(projection, jet)
    elif curve.dimension != group.dimension:
        raise DimensionMismatch(
            f"{group.value} needs a {group.dimension}-d curve, got {curve.dimension}-d"
        )
    if projection is not None and group.dimension != 2:
        raise DimensionMismatch(f"{group.value} signatures are taken on space curves")
    return _EVAL[group](jet)


@dataclass
class Signature:
    group: SignatureGroup
    points: np.ndarray  # (n, 2)
    ts: np.ndarray
    label: str = ""
    window: tuple = ()
    dropped: list = field(default_factory=list)

    @property
    def diameter(self):
        if len(self.points) < 2:
            return 0.0
        lo, hi = self.points.min(axis=0), self.points.max(axis=0)
        # bounding-box diagonal; within a factor sqrt(2) of the true diameter
        return float(np.linalg.norm(hi - lo))

    @property
    def size(self):
        return float(np.max(np.abs(self.points))) if len(self.points) else 0.0

    @property
    def degenerate(self):
        return self.diameter <= DEGENERATE_DIAMETER * (1.0 + self.size)

    def to_dict(self):
        return {
            "group": self.group.value,
            "label": self.label,
            "window": list(self.window),
            "coordinates": list(self.group.coordinates),
            "t": self.ts.tolist(),
            "points": self.points.tolist(),
            "dropped": self.dropped,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, doc):
        pts = np.asarray(doc["points"], dtype=float).reshape(-1, 2)
        return cls(
            SignatureGroup(doc["group"]),
            pts,
            np.asarray(doc["t"], dtype=float),
            doc.get("label", ""),
            tuple(doc.get("window", ())),
            list(doc.get("dropped", [])),
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "inv1", "inv2"])
        for t, (a, b) in zip(self.ts, self.points):
            w.writerow(["%.17g" % t, "%.17g" % a, "%.17g" % b])
        return buf.getvalue()


def sample_signature(curve, group, window=(0.2, 1.5), n=200, order=None, projection=None):
    """Sample the signature at ``n`` equally spaced parameters (endpoints included).

    Singular samples are dropped and listed in ``dropped`` as ``(t, reason)``.
    Space curves can be projected first for the plane groups.
    """
    group = SignatureGroup(group)
    a, b = window
    pts, ts, dropped = [], [], []
    for t in np.linspace(a, b, n):
        try:
            p = signature_point(curve, group, float(t), order, projection)
        except SingularPointError as exc:
            dropped.append((float(t), f"{type(exc).__name__}: {exc}"))
            continue
        pts.append(p)
        ts.append(float(t))
    if dropped:
        log.info("%s: dropped %d singular samples", curve.label, len(dropped))
    if len(pts) < 2:
        raise InsufficientRegularSamples(
            f"{len(pts)} regular samples of {curve.label} in [{a}, {b}] for {group.value}"
        )
    return Signature(group, np.array(pts), np.array(ts), curve.label, (a, b, n), dropped)


@dataclass(frozen=True)
class Comparison:
    distance: float
    equivalent: bool

    def to_dict(self):
        return {"distance": self.distance, "equivalent": self.equivalent}


def compare(a, b, tol=1e-4):
    """Normalized symmetric Hausdorff distance between two signatures."""
    if a.group != b.group:
        raise GroupMismatch(f"cannot compare {a.group.value} with {b.group.value}")
    if a.degenerate and b.degenerate:
        pa, pb = a.points.mean(axis=0), b.points.mean(axis=0)
        d = float(np.linalg.norm(pa - pb)) / (1.0 + max(np.linalg.norm(pa), np.linalg.norm(pb)))
    else:
        h = max(directed_hausdorff(a.points, b.points)[0], directed_hausdorff(b.points, a.points)[0])
        d = float(h) / max(a.diameter, b.diameter)
    return Comparison(d, d < tol)
