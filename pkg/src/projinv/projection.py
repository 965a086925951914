"""Central and parallel projections of space curves, and graph-form jets."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import taylor
from .curvemodel import PlaneCurveJet
from .errors import CenterPlaneSingularity, DepthExhausted, VerticalTangent
from .taylor import TaylorJet

__all__ = [
    "ProjectionSpec",
    "central",
    "parallel",
    "projection_from_json",
    "project",
    "PlaneGraphJet",
    "SpaceGraphJet",
    "to_graph",
    "upright",
    "space_to_graph",
    "RegularityReport",
    "regularity",
    "corresponding_jet",
]

REG_TOL = 1e-8


@dataclass(frozen=True)
class ProjectionSpec:
    """``kind`` is ``"central"`` (uses ``center``) or ``"parallel"`` (uses ``b``)."""

    kind: str
    center: tuple = (0.0, 0.0, 0.0)
    b: tuple = (0.0, 0.0)

    def __post_init__(self):
        if self.kind not in ("central", "parallel"):
            raise ValueError(f"unknown projection kind {self.kind!r}")
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        object.__setattr__(self, "b", tuple(float(c) for c in self.b))
        if len(self.center) != 3 or len(self.b) != 2:
            raise ValueError("center needs 3 entries and b needs 2")

    @property
    def direction(self):
        """Fibre direction of a parallel projection, ``(b1, b2, 1)``."""
        return (self.b[0], self.b[1], 1.0)

    def to_dict(self):
        if self.kind == "central":
            return {"central": {"center": list(self.center)}}
        return {"parallel": {"b": list(self.b)}}


def central(center=(0.0, 0.0, 0.0)):
    return ProjectionSpec("central", center=tuple(center))


def parallel(b=(0.0, 0.0)):
    return ProjectionSpec("parallel", b=tuple(b))


def projection_from_json(doc):
    """Parse ``{"central": {"center": [...]}}`` or ``{"parallel": {"b": [...]}}``."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if not isinstance(doc, dict) or len(doc) != 1:
        raise ValueError("projection JSON must have exactly one key")
    (kind, params), = doc.items()
    keys = {"central": "center", "parallel": "b"}
    if kind not in keys:
        raise ValueError(f"unknown projection {kind!r}")
    params = params or {}
    extra = set(params) - {keys[kind]}
    if extra:
        raise ValueError(f"unknown {kind} parameter(s) {sorted(extra)}; expected {keys[kind]!r}")
    if kind == "central":
        return central(params.get("center", (0.0, 0.0, 0.0)))
    return parallel(params.get("b", (0.0, 0.0)))


def _guard_center(z, c3, t):
    d = z - c3
    if abs(d.value) <= taylor.settings.eps_div * (1.0 + abs(z.value) + abs(c3)):
        raise CenterPlaneSingularity(f"z = c3 at t={t}")
    return d


def project(p, w):
    """Image of a space-curve jet; the image keeps the parameter ``t``."""
    x, y, z = w.components
    if p.kind == "central":
        c1, c2, c3 = p.center
        d = _guard_center(z, c3, w.t)
        return PlaneCurveJet(w.t, (x - c1) / d + c1, (y - c2) / d + c2)
    b1, b2 = p.b
    return PlaneCurveJet(w.t, x - z * b1, y - z * b2)


@dataclass(frozen=True)
class PlaneGraphJet:
    """``Y[i]`` is ``d^i Y / dX^i`` as a jet in ``t``; ``Y[i]`` has order ``N - i``."""

    X: TaylorJet
    Y: list = field(default_factory=list)

    @property
    def K(self):
        return len(self.Y) - 1

    @property
    def t(self):
        return self.X.base_point

    @property
    def xdot(self):
        return self.X.derivative()

    def values(self):
        return np.array([j.value for j in self.Y])


@dataclass(frozen=True)
class SpaceGraphJet:
    """Derivatives ``y[i] = d^i y/dx^i`` and ``z[i] = d^i z/dx^i`` as jets in ``t``."""

    x: TaylorJet
    y: list = field(default_factory=list)
    z: list = field(default_factory=list)

    @property
    def K(self):
        return len(self.y) - 1

    @property
    def t(self):
        return self.x.base_point

    @property
    def xdot(self):
        return self.x.derivative()


def _graph_chain(X, comps, K, t):
    if X.order < 1:
        raise DepthExhausted("need a jet of order >= 1 for graph coordinates")
    xdot = X.derivative()
    if abs(xdot.value) <= taylor.settings.eps_div:
        raise VerticalTangent(f"dX/dt vanishes at t={t}")
    K = X.order - 1 if K is None else K
    if K > X.order:
        raise DepthExhausted(f"K={K} exceeds jet order {X.order}")
    out = []
    for c in comps:
        seq = [c]
        for _ in range(K):
            seq.append(seq[-1].derivative() / xdot)
        out.append(seq)
    return out


def upright(c):
    """Rotate a plane-curve jet about the origin so its tangent at ``t`` points along +X.

    Rotations lie in every plane group used here, so invariants are
    unchanged while the graph jets avoid powers of a small ``dX/dt``.
    """
    X, Y = c.components
    xd, yd = X[1], Y[1]
    r = np.hypot(xd, yd)
    if r <= taylor.settings.eps_div:
        raise VerticalTangent(f"stationary point at t={c.t}")
    co, si = float(xd / r), float(yd / r)
    return PlaneCurveJet(c.t, co * X + si * Y, co * Y - si * X)


def to_graph(c, K=None, upright_frame=False):
    """Graph-form jet ``(X, Y_0..Y_K)`` of a plane-curve jet, by repeated division by dX/dt.

    ``upright_frame`` first applies :func:`upright`; use it when only
    rotation-invariant quantities are wanted.
    """
    if upright_frame:
        c = upright(c)
    (Y,) = _graph_chain(c.X, (c.Y,), K, c.t)
    return PlaneGraphJet(c.X, Y)


def space_to_graph(w, K=None):
    """Graph-form jet with ``x`` as independent variable."""
    y, z = _graph_chain(w.x, (w.y, w.z), K, w.t)
    return SpaceGraphJet(w.x, y, z)


@dataclass(frozen=True)
class RegularityReport:
    transversal: bool
    nonvertical: bool
    quantities: dict

    @property
    def ok(self):
        return self.transversal and self.nonvertical


def _small(v, scale):
    return abs(v) <= REG_TOL * (1.0 + scale)


def regularity(p, w):
    """Transversality of the curve to the projection fibres at ``w.t``.

    For central projections the reported quantities are the numerators of
    the image velocity, ``x' u - x u'`` and ``y' u - y u'`` with ``u = z - c3``
    (coordinates taken relative to the center).  For parallel projections
    they are the image velocity components themselves.
    """
    x, y, z = (j.truncate(1) for j in w.components)
    if p.kind == "central":
        c1, c2, c3 = p.center
        u1, u2, u3 = x - c1, y - c2, z - c3
        a = u1.derivative().value * u3.value
        b = u1.value * u3.derivative().value
        c = u2.derivative().value * u3.value
        d = u2.value * u3.derivative().value
        n1, n2 = a - b, c - d
        s1, s2 = max(abs(a), abs(b)), max(abs(c), abs(d))
        off_plane = not _small(u3.value, abs(z.value) + abs(c3))
        q = {"numerator_x": n1, "numerator_y": n2, "depth": u3.value}
    else:
        b1, b2 = p.b
        xd, yd, zd = (j.derivative().value for j in (x, y, z))
        n1, n2 = xd - b1 * zd, yd - b2 * zd
        s1 = max(abs(xd), abs(b1 * zd))
        s2 = max(abs(yd), abs(b2 * zd))
        off_plane = True
        q = {"velocity_x": n1, "velocity_y": n2}
    transversal = off_plane and not (_small(n1, s1) and _small(n2, s2))
    nonvertical = off_plane and not _small(n1, s1)
    return RegularityReport(transversal, nonvertical, q)


def corresponding_jet(p, w, K=None):
    """Image and source graph jets at the same parameter value."""
    rep = regularity(p, w)
    if p.kind == "central" and "depth" in rep.quantities and not rep.nonvertical:
        if _small(rep.quantities["depth"], abs(w.z.value) + abs(p.center[2])):
            raise CenterPlaneSingularity(f"z = c3 at t={w.t}")
    if not rep.nonvertical:
        raise VerticalTangent(f"projected curve has a vertical tangent at t={w.t}")
    return to_graph(project(p, w), K), space_to_graph(w, K)
