"""Differential invariants of plane curves.

All quantities are returned as jets in the curve parameter ``t``, so their
invariant derivatives are jet quotients ``(d/dt f) / density``.  Fractional
powers of ``Y2`` use the real odd root, so convex arcs with ``Y2 < 0`` are
handled without flipping the orientation.

``mu`` is normalized so that the unit circle has ``mu = 3``; Blaschke's
equi-affine curvature is ``mu / 3``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import taylor
from .errors import (
    ConicPoint,
    DepthExhausted,
    InflectionPoint,
    NonConvexPoint,
    SingularPointError,
    ZeroDensity,
)
from .taylor import TaylorJet, jet_rpow

__all__ = [
    "PlaneInvariantJet",
    "ArcDensity",
    "equi_affine",
    "invariant_A",
    "invariant_B",
    "projective",
    "affine",
    "affine_normalized_higher",
    "invariant_derivative",
    "GUARD_Y2",
    "GUARD_A",
]

GUARD_Y2 = 1e-8
GUARD_A = 1e-8


@dataclass(frozen=True)
class PlaneInvariantJet:
    name: str
    value_jet: TaylorJet | None
    valid: bool = True
    reason: str = ""

    @property
    def value(self):
        return self.require().value

    def require(self):
        """The jet, or raise the guard failure that invalidated it."""
        if not self.valid:
            raise _REASONS.get(self.reason.split(":")[0], SingularPointError)(self.reason)
        return self.value_jet

    def record(self, t):
        j = self.value_jet
        ok = self.valid and j is not None
        return {
            "name": self.name,
            "t": t,
            "value": j.value if ok else None,
            "d1": j[1] if ok and j.order >= 1 else None,
            "d2": j[2] if ok and j.order >= 2 else None,
            "valid": self.valid,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class ArcDensity:
    """``d(arc)/dt`` as a jet; ``kind`` is equi_affine_chi, projective_xi or affine_rho."""

    kind: str
    density_jet: TaylorJet

    @property
    def value(self):
        return self.density_jet.value


_REASONS = {
    "inflection": InflectionPoint,
    "conic": ConicPoint,
    "nonconvex": NonConvexPoint,
}


def _invalid(name, exc):
    tag = {InflectionPoint: "inflection", ConicPoint: "conic", NonConvexPoint: "nonconvex"}
    return PlaneInvariantJet(name, None, False, f"{tag.get(type(exc), 'singular')}: {exc}")


def _need(g, k):
    if g.K < k:
        raise DepthExhausted(f"graph jet has Y up to order {g.K}, need {k}")


def _scale(g, upto):
    return 1.0 + max(abs(g.Y[i].value) for i in range(1, upto + 1))


def _check_y2(g):
    y2 = g.Y[2]
    if abs(y2.value) <= GUARD_Y2 * _scale(g, 2):
        raise InflectionPoint(f"Y2 = {y2.value:.3g} at t={g.t}")
    return y2


def invariant_B(g):
    _need(g, 4)
    Y = g.Y
    return 3.0 * Y[2] * Y[4] - 5.0 * Y[3] * Y[3]


def _A(g):
    _need(g, 5)
    Y = g.Y
    return 9.0 * Y[5] * Y[2] * Y[2] - 45.0 * Y[4] * Y[3] * Y[2] + 40.0 * Y[3] ** 3


def invariant_A(g):
    """``A = 9 Y5 Y2^2 - 45 Y4 Y3 Y2 + 40 Y3^3`` (vanishes identically on conics)."""
    return PlaneInvariantJet("A", _A(g))


def _A_scale(g):
    Y = [y.value for y in g.Y]
    return max(abs(9.0 * Y[5] * Y[2] ** 2), abs(45.0 * Y[4] * Y[3] * Y[2]), abs(40.0 * Y[3] ** 3))


def _check_A(g, A):
    scale = _A_scale(g)
    if abs(A.value) <= GUARD_A * scale:
        raise ConicPoint(f"A = {A.value:.3g} at t={g.t}")


def invariant_derivative(f, density, k=1):
    """Apply ``D = (1/density) d/dt`` ``k`` times."""
    lam = density.density_jet if isinstance(density, ArcDensity) else density
    if abs(lam.value) <= taylor.settings.eps_div:
        raise ZeroDensity(f"arc-length density vanishes at t={lam.base_point}")
    for _ in range(k):
        if f.order < 1:
            raise DepthExhausted("no jet depth left for another invariant derivative")
        f = f.derivative() / lam
    return f


# -- equi-affine -------------------------------------------------------------


def _equi_affine(g):
    y2 = _check_y2(g)
    B = invariant_B(g)
    mu = B * jet_rpow(y2, -8, 3) / 3.0
    chi = ArcDensity("equi_affine_chi", jet_rpow(y2, 1, 3) * g.xdot)
    out = {"B": PlaneInvariantJet("B", B), "mu": PlaneInvariantJet("mu", mu), "chi": chi}
    if g.K >= 5:
        y2l = y2.truncate(y2.order)
        out["mu_chi"] = PlaneInvariantJet("mu_chi", _A(g) * jet_rpow(y2l, -4) / 9.0)
    return out


def equi_affine(g):
    """``B``, ``mu = B / (3 Y2^(8/3))``, ``mu_chi = A / (9 Y2^4)`` and ``d chi = Y2^(1/3) dX``.

    At an inflection every entry is invalid and ``chi`` is None.
    """
    try:
        return _equi_affine(g)
    except InflectionPoint as exc:
        return {
            "B": PlaneInvariantJet("B", invariant_B(g)),
            "mu": _invalid("mu", exc),
            "mu_chi": _invalid("mu_chi", exc),
            "chi": None,
        }


# -- projective --------------------------------------------------------------


def projective_jets(g):
    """``(eta, xi, mu, mu_chi, chi)`` jets; raises on guard failures."""
    _need(g, 7)
    e = _equi_affine(g)
    A = _A(g)
    _check_A(g, A)
    mu = e["mu"].value_jet
    mu_c = e["mu_chi"].value_jet
    chi = e["chi"]
    mu_cc = invariant_derivative(mu_c, chi)
    mu_ccc = invariant_derivative(mu_cc, chi)
    n = mu_ccc.order
    mu_c, mu = mu_c.truncate(n), mu.truncate(n)
    mu_cc = mu_cc.truncate(n)
    num = 6.0 * mu_ccc * mu_c - 7.0 * mu_cc * mu_cc - 3.0 * mu * mu_c * mu_c
    eta = num * jet_rpow(mu_c, -8, 3) / 6.0
    y2 = g.Y[2]
    xi = ArcDensity(
        "projective_xi", jet_rpow(A, 1, 3) / (3.0 ** (2.0 / 3.0) * y2) * g.xdot
    )
    return eta, xi, mu, mu_c, chi


def projective(g):
    """Projective curvature ``eta`` and the projective arc-length density ``d xi``."""
    try:
        eta, xi, *_ = projective_jets(g)
    except (InflectionPoint, ConicPoint) as exc:
        return {"eta": _invalid("eta", exc), "xi": None}
    return {"eta": PlaneInvariantJet("eta", eta), "xi": xi}


# -- affine ------------------------------------------------------------------


def affine_jets(g):
    """``(nu, rho)`` with ``nu = 3 A / B^(3/2)`` and ``d rho = sqrt(B) / (3 Y2) dX``."""
    B = invariant_B(g)
    scale = max(abs(3.0 * g.Y[2].value * g.Y[4].value), 5.0 * g.Y[3].value ** 2)
    if B.value <= GUARD_A * scale:
        raise NonConvexPoint(f"B = {B.value:.3g} <= 0 at t={g.t}")
    y2 = _check_y2(g)
    nu = 3.0 * _A(g) * taylor.jet_powf(B, -1.5)
    rho = ArcDensity("affine_rho", taylor.jet_powf(B, 0.5) / (3.0 * y2) * g.xdot)
    return nu, rho


def affine(g):
    try:
        nu, rho = affine_jets(g)
    except (NonConvexPoint, InflectionPoint) as exc:
        return {"nu": _invalid("nu", exc), "rho": None}
    return {"nu": PlaneInvariantJet("nu", nu), "rho": rho}


def affine_normalized_higher(g):
    """Normalized invariants of ``Y6`` and ``Y7`` through ``nu`` and its ``rho`` derivatives."""
    nu, rho = affine_jets(g)
    nu1 = invariant_derivative(nu, rho)
    nu2 = invariant_derivative(nu1, rho)
    n1 = nu.truncate(nu1.order)
    i6 = nu1 + 0.5 * n1 * n1 + 45.0
    n2, m1 = nu.truncate(nu2.order), nu1.truncate(nu2.order)
    i7 = nu2 + (5.0 / 3.0) * n2 * m1 + 0.5 * n2**3 + 51.0 * n2
    return {"iota_Y6": i6, "iota_Y7": i7, "nu": nu, "nu_rho": nu1, "nu_rhorho": nu2}
