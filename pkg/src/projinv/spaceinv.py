"""Differential invariants of space curves.

Centro-equi-affine (SL(3)) and centro-affine (GL(3)) invariants, the gauge
invariants that govern central projection, and the invariants of the
projectable subgroup for parallel projection.

Every quantity is a :class:`~projinv.taylor.TaylorJet` in the curve
parameter.  Arc-length derivatives are jet quotients, e.g.
``D_s f = f' / (ds/dt)``.  Cube roots are real odd roots, so Δ < 0 and
α < 0 need no special casing.  For κ < 0 the centro-affine quantities use
``|κ|^(3/2)`` and record ``kappa_sign``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegeneratePoint,
    DegenerateZ3,
    DepthExhausted,
    FoldSingularity,
    InternalInconsistency,
    NegativeAlphaBranch,
    NegativeKappaBranch,
    NonConvexProjection,
    SingularPointError,
    ZeroAlpha,
    ZeroKappa,
)
from .projection import space_to_graph
from .taylor import TaylorJet, jet_powf, jet_rpow
from .transform import act_space, shear_b, translation

__all__ = [
    "centro_equi_affine",
    "frenet_residual",
    "CentroInvariants",
    "centro_affine",
    "EtaRoute",
    "eta_hat",
    "eta_hat_all",
    "NormalizedInvariants",
    "normalized_invariants",
    "zeta_relation",
    "recover_kappa",
    "Classification",
    "classify",
    "classifier_pullbacks",
    "central_offset_invariants",
    "ParallelInvariants",
    "parallel_invariants",
    "parallel_family_pullback",
    "y2_substitution",
    "PHANTOM",
]

DELTA_TOL = 1e-9
KAPPA_TOL = 1e-8
ALPHA_TOL = 1e-8
KAPPA_CHECK_TOL = 1e-9
BETA_CHECK_TOL = 1e-9
DUAL_CHECK_TOL = 1e-9
# the z4 recurrence needs nu_rhorho, i.e. order-7 graph jets
LIFTED_CHECK_TOL = {"z1": 1e-9, "z2": 1e-9, "z3": 1e-9, "z4": 1e-7}

C23 = 3.0 ** (2.0 / 3.0)


def rel_residual(a, b):
    return abs(a - b) / (1.0 + max(abs(a), abs(b)))


def _triple(a, b, c):
    """Jet of ``det[a, b, c]`` for 3-tuples of jets."""
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _triple_scale(a, b, c):
    return (
        np.linalg.norm([j.value for j in a])
        * np.linalg.norm([j.value for j in b])
        * np.linalg.norm([j.value for j in c])
    )


def _d(f, density):
    """``(1/density) d/dt``."""
    return f.derivative() / density


def _dvec(v, density):
    return tuple(_d(c, density) for c in v)


# -- centro-equi-affine ------------------------------------------------------


@dataclass(frozen=True)
class CentroEquiAffine:
    Delta: TaylorJet
    ds: TaylorJet
    kappa: TaylorJet
    tau: TaylorJet
    kappa_frenet: TaylorJet
    kappa_scale: float

    @property
    def values(self):
        return {"Delta": self.Delta.value, "ds": self.ds.value,
                "kappa": self.kappa.value, "tau": self.tau.value}


def centro_equi_affine(w, check=True):
    """``Δ = [w, w', w'']``, ``ds = Δ^(1/3) dt``, curvature ``κ`` and torsion ``τ``.

    ``κ`` is evaluated from ``-½ D_t²(Δ^(-2/3)) + [w, w'', w''']/Δ^(5/3)`` and
    again as ``[w, w_ss, w_sss]``; with ``check`` the two must agree to
    ``KAPPA_CHECK_TOL`` or :class:`InternalInconsistency` is raised.
    """
    if w.order < 4:
        raise DepthExhausted("need a curve jet of order >= 4")
    w0 = w.components
    w1 = w.derivative(1)
    w2 = w.derivative(2)
    w3 = w.derivative(3)
    Delta = _triple(w0, w1, w2)
    if abs(Delta.value) <= DELTA_TOL * max(_triple_scale(w0, w1, w2), 1e-300):
        raise DegeneratePoint(f"Δ = {Delta.value:.3g} at t={w.t}")
    cbrt_d = jet_rpow(Delta, 1, 3)
    term1 = -0.5 * jet_rpow(Delta, -2, 3).derivative().derivative()
    term2 = _triple(w0, w2, w3) * jet_rpow(Delta, -5, 3)
    kappa = term1 + term2
    tau = _triple(w1, w2, w3) / (Delta * Delta)

    ws = _dvec(w0, cbrt_d)
    wss = _dvec(ws, cbrt_d)
    wsss = _dvec(wss, cbrt_d)
    kappa_f = _triple(w0, wss, wsss)
    scale = max(abs(term1.value), abs(term2.value))
    if check:
        r = abs(kappa.value - kappa_f.value) / (1.0 + scale)
        if r > KAPPA_CHECK_TOL:
            raise InternalInconsistency(
                f"curvature routes disagree by {r:.3g} at t={w.t}"
            )
    return CentroEquiAffine(Delta, cbrt_d, kappa, tau, kappa_f, scale)


def frenet_residual(w):
    """``|w_sss - τ w + κ w_s|`` at the base point."""
    ce = centro_equi_affine(w)
    ds = ce.ds
    ws = _dvec(w.components, ds)
    wss = _dvec(ws, ds)
    wsss = _dvec(wss, ds)
    k, t = ce.kappa.value, ce.tau.value
    r = [wsss[i].value - t * w.components[i].value + k * ws[i].value for i in range(3)]
    return float(np.linalg.norm(r))


# -- centro-affine -----------------------------------------------------------

CENTRO_FIELDS = (
    "Delta", "kappa", "tau", "alpha", "kappa_hat", "tau_hat", "alpha_hat",
    "beta_hat", "zeta_tilde", "zeta_hat1", "eta_hat", "ds", "dsigma", "dxi",
)


@dataclass
class CentroInvariants:
    """Centro-affine invariant jets at one parameter value.

    Fields that failed a guard are None; ``reasons`` maps the field name to
    the guard error and :meth:`require` re-raises it.
    """

    t: float
    Delta: TaylorJet
    ds: TaylorJet
    kappa: TaylorJet
    tau: TaylorJet
    kappa_sign: int
    kappa_hat: TaylorJet = None
    tau_hat: TaylorJet = None
    dsigma: TaylorJet = None
    beta_hat: TaylorJet = None
    alpha: TaylorJet = None
    alpha_hat: TaylorJet = None
    zeta_tilde: TaylorJet = None
    zeta_hat1: TaylorJet = None
    dxi: TaylorJet = None
    eta_hat: TaylorJet = None
    beta_hat_dual: TaylorJet = None
    zeta_hat1_closed: TaylorJet = None
    reasons: dict = field(default_factory=dict)

    def valid(self, name):
        return getattr(self, name) is not None

    def require(self, name):
        v = getattr(self, name)
        if v is None:
            raise self.reasons.get(name) or SingularPointError(f"{name} unavailable")
        return v

    def record(self):
        """Flat JSON-ready record of values and validity."""
        out = {"t": self.t, "kappa_sign": self.kappa_sign}
        for name in CENTRO_FIELDS:
            j = getattr(self, name)
            out[name] = None if j is None else j.value
            if j is None:
                out[f"{name}_reason"] = str(self.reasons.get(name, "unavailable"))
        return out


def _alpha_guard(ci, alpha):
    ks, tau = ci.kappa.derivative() / ci.ds, ci.tau
    scale = abs(ks.value) + 2.0 * abs(tau.value)
    if abs(alpha.value) <= ALPHA_TOL * max(scale, 1e-300):
        raise ZeroAlpha(f"κ_s + 2τ = {alpha.value:.3g} at t={ci.t}")


def centro_affine(w, check=True, with_eta=True):
    """All centro-affine invariants of a space-curve jet.

    Raises :class:`DegeneratePoint` or :class:`ZeroKappa`; α-dependent
    fields are left None (with a :class:`ZeroAlpha` reason) when κ_s + 2τ
    vanishes.
    """
    ce = centro_equi_affine(w, check=check)
    kappa, tau, ds = ce.kappa, ce.tau, ce.ds
    if abs(kappa.value) <= KAPPA_TOL * max(ce.kappa_scale, 1e-300):
        raise ZeroKappa(f"κ = {kappa.value:.3g} at t={w.t}")
    sgn = 1 if kappa.value > 0 else -1
    akappa = kappa * float(sgn)
    k32 = jet_powf(akappa, 1.5)
    k_s = _d(kappa, ds)
    ci = CentroInvariants(w.t, ce.Delta, ds, kappa, tau, sgn)
    ci.kappa_hat = k_s / k32
    ci.tau_hat = tau / k32
    ci.dsigma = jet_powf(akappa, 0.5) * ds
    tau_s = _d(tau, ds)
    ci.beta_hat = tau_s / (kappa * kappa)
    ci.beta_hat_dual = _d(ci.tau_hat, ci.dsigma) + (1.5 * sgn) * ci.kappa_hat * ci.tau_hat
    if check:
        r = rel_residual(ci.beta_hat.value, ci.beta_hat_dual.value)
        if r > BETA_CHECK_TOL:
            raise InternalInconsistency(f"β̂ forms disagree by {r:.3g} at t={w.t}")
    alpha = k_s + 2.0 * tau
    ci.alpha = alpha
    ci.alpha_hat = alpha / k32
    try:
        _alpha_guard(ci, alpha)
    except ZeroAlpha as exc:
        for name in ("zeta_tilde", "zeta_hat1", "dxi", "eta_hat"):
            ci.reasons[name] = exc
        return ci
    three_a = 3.0 * alpha
    ci.zeta_tilde = jet_rpow(three_a, -1, 3)
    ci.zeta_hat1 = _d(ci.zeta_tilde, ds)
    ci.zeta_hat1_closed = -_d(alpha, ds) * jet_rpow(three_a, -4, 3)
    ci.dxi = jet_rpow(three_a, 1, 3) * ds
    if with_eta:
        ci.eta_hat = _eta_s(ci)
    return ci


# -- projective curvature of the central image, four ways ---------------------


class EtaRoute(str, enum.Enum):
    SIGMA = "SIGMA"
    S = "S"
    ZETA = "ZETA"
    NORMALIZED = "NORMALIZED"


def _require_alpha(ci):
    if ci.zeta_tilde is None:
        raise ci.reasons["zeta_tilde"]


def _eta_s(ci):
    """Arc-length form ``(α_ss α - 7/6 α_s² - 3/2 κ α²) / (3^(2/3) α^(8/3))``."""
    a = ci.alpha
    a_s = _d(a, ci.ds)
    a_ss = _d(a_s, ci.ds)
    num = a_ss * a - (7.0 / 6.0) * a_s * a_s - 1.5 * ci.kappa * a * a
    return num * jet_rpow(a, -8, 3) / C23


def _eta_sigma(ci):
    """Centro-affine arc-length form in ``α̂`` and ``κ̂``.

    For κ < 0 the terms ``κ̂_σ`` and ``-1`` change sign; the odd-root powers
    of α̂ handle either sign of α.
    """
    ah = ci.alpha_hat
    ds = ci.dsigma
    ah_s = _d(ah, ds)
    ah_ss = _d(ah_s, ds)
    kh = ci.kappa_hat
    kh_s = _d(kh, ds)
    cbrt = jet_rpow(ah, 1, 3)
    e = float(ci.kappa_sign)
    inner = e * kh_s + 0.25 * kh * kh - e
    total = (
        ah_ss / (ah * cbrt * cbrt)
        - (7.0 / 6.0) * ah_s * ah_s / (ah * ah * cbrt * cbrt)
        + 1.5 * inner / (cbrt * cbrt)
    )
    return total / C23


def _eta_zeta(ci, sqrt_form=False):
    """``-3 ζ̃ ζ̃_ss + 3/2 ζ̃_s² - 3/2 κ ζ̃²``.

    This is ``-6 ζ̃^(3/2) (D_s² + κ/4) ζ̃^(1/2)`` expanded; ``sqrt_form``
    evaluates the unexpanded version, which needs ζ̃ > 0 (α > 0).
    """
    z = ci.zeta_tilde
    if sqrt_form:
        if z.value <= 0:
            raise NegativeAlphaBranch(f"α < 0 at t={ci.t}")
        u = jet_powf(z, 0.5)
        u_ss = _d(_d(u, ci.ds), ci.ds)
        return -6.0 * jet_powf(z, 1.5) * (u_ss + 0.25 * ci.kappa * u)
    z_s = ci.zeta_hat1
    z_ss = _d(z_s, ci.ds)
    return -3.0 * z * z_ss + 1.5 * z_s * z_s - 1.5 * ci.kappa * z * z


def eta_hat(w, route=EtaRoute.S, ci=None):
    """Projective curvature of the central image expressed on the space curve."""
    route = EtaRoute(route)
    ci = centro_affine(w) if ci is None else ci
    _require_alpha(ci)
    if route is EtaRoute.S:
        return ci.eta_hat if ci.eta_hat is not None else _eta_s(ci)
    if route is EtaRoute.SIGMA:
        return _eta_sigma(ci)
    if route is EtaRoute.ZETA:
        return _eta_zeta(ci)
    return normalized_invariants(w, ci=ci).eta_hat()


def eta_hat_all(w, ci=None):
    """Value of each route (None where a route's guard fails) plus the zeta sqrt form."""
    ci = centro_affine(w) if ci is None else ci
    _require_alpha(ci)
    out = {}
    for r in EtaRoute:
        try:
            out[r.value] = eta_hat(w, r, ci).value
        except SingularPointError:
            out[r.value] = None
    try:
        out["ZETA_SQRT"] = _eta_zeta(ci, sqrt_form=True).value
    except SingularPointError:
        out["ZETA_SQRT"] = None
    return out


# -- normalized invariants ----------------------------------------------------

# values of the cross-section coordinates (I0, J0, I1, J1, I2, J2, I3, J3?, I4)
PHANTOM = {"I0": 0.0, "J0": 1.0, "I1": 0.0, "J1": 0.0, "I2": 1.0, "J2": 0.0, "I3": 0.0, "I4": 3.0}


@dataclass(frozen=True)
class NormalizedInvariants:
    I5: TaylorJet
    I6: TaylorJet
    I7: TaylorJet
    J3: TaylorJet
    J4: TaylorJet
    J5: TaylorJet
    dual: dict
    phantom: dict = field(default_factory=lambda: dict(PHANTOM))

    def eta_hat(self):
        a3 = self.I5 + 10.0 * self.J3
        p = 2.0 * self.I7 + 42.0 * self.J5 - 105.0 * (self.I5 + 4.0 * self.J3)
        q = self.I6 + 15.0 * self.J4 - 45.0
        return (3.0 * a3 * p - 7.0 * q * q) * jet_rpow(a3, -8, 3) / 6.0

    def dual_residuals(self):
        return {k: rel_residual(getattr(self, k).value, v.value) for k, v in self.dual.items()}


def normalized_invariants(w, ci=None, check=True):
    """Normalized invariants ``I5..I7`` and ``J3..J5`` in terms of κ̂, τ̂.

    The recurrence relations are checked against the closed forms when
    ``check`` is set.  The closed forms belong to the κ > 0 cross-section,
    so κ < 0 raises :class:`NegativeKappaBranch`.
    """
    ci = centro_affine(w) if ci is None else ci
    if ci.kappa_sign < 0:
        raise NegativeKappaBranch(f"κ < 0 at t={ci.t}")
    ds = ci.dsigma
    k, tt = ci.kappa_hat, ci.tau_hat
    k1, t1 = _d(k, ds), _d(tt, ds)
    k2, t2 = _d(k1, ds), _d(t1, ds)
    J3 = tt
    J4 = t1 + 1.5 * k * tt
    J5 = t2 + 1.5 * k1 * tt + 3.5 * k * t1 + 3.0 * k * k * tt + 9.0 * tt
    I5 = 3.0 * k - 4.0 * tt
    I6 = 3.0 * k1 - 9.0 * t1 + 4.5 * k * k - 13.5 * k * tt + 45.0
    I7 = (
        3.0 * k2 - 15.0 * t2 + 15.0 * k * k1 - 22.5 * k1 * tt - 52.5 * k * t1
        + 9.0 * k**3 - 45.0 * k * k * tt + 153.0 * k - 198.0 * tt
    )
    dual = {
        "J4": _d(J3, ds) + 0.5 * I5 * J3 + 2.0 * J3 * J3,
        "J5": _d(J4, ds) + (2.0 / 3.0) * I5 * J4 + (8.0 / 3.0) * J3 * J4 + 9.0 * J3,
        "I6": _d(I5, ds) + 0.5 * I5 * I5 + 2.0 * I5 * J3 - 5.0 * J4 + 45.0,
        "I7": _d(I6, ds) + (2.0 / 3.0) * I5 * I6 + (8.0 / 3.0) * I6 * J3
        + 21.0 * I5 - 6.0 * J5 - 60.0 * J3,
    }
    out = NormalizedInvariants(I5, I6, I7, J3, J4, J5, dual)
    if check:
        for name, r in out.dual_residuals().items():
            if r > DUAL_CHECK_TOL:
                raise InternalInconsistency(f"{name} recurrence off by {r:.3g} at t={ci.t}")
    return out


# -- image-side relations ----------------------------------------------------


def zeta_relation(w, image, ci=None):
    """Residuals tying ζ̃ to the central image at the same parameter value.

    ``image`` is the graph jet of the central projection through the origin.
    Returns ``mu_chi`` (relative to ``1 + |μ_χ|``), the two forms of ζ̂₁,
    ``ζ̂₁`` against the image-side formula, the arc-length density identity
    ``dξ̂ = (3α)^(1/3) ds = (3α̂)^(1/3) dσ`` and ``D_s = ζ̃⁻¹ D_ξ̂``.
    """
    from .planeinv import projective_jets

    ci = centro_affine(w) if ci is None else ci
    _require_alpha(ci)
    eta, xi, mu, mu_c, chi = projective_jets(image)
    z = w.z
    lhs = 3.0 * z**3 * ci.alpha
    res = {}
    res["mu_chi"] = abs(lhs.value - mu_c.value) / (1.0 + abs(mu_c.value))
    res["zeta_hat1"] = rel_residual(ci.zeta_hat1.value, ci.zeta_hat1_closed.value)
    ah = ci.alpha_hat
    ah_s = _d(ah, ci.dsigma)
    via_sigma = -(ah_s + 1.5 * ci.kappa_sign * ci.kappa_hat * ah) / (
        3.0 ** (4.0 / 3.0) * jet_rpow(ah, 4, 3)
    )
    res["zeta_hat1_sigma"] = rel_residual(ci.zeta_hat1.value, via_sigma.value)
    # image side: Z = z, Z1 = dz/dX along the image
    z1 = _d(z, image.xdot)
    mu_cc = _d(mu_c, chi.density_jet)
    y2 = image.Y[2]
    img = (z1 / z) / jet_rpow(y2 * mu_c, 1, 3) - mu_cc * jet_rpow(mu_c, -4, 3) / 3.0
    res["zeta_hat1_image"] = rel_residual(ci.zeta_hat1.value, img.value)
    res["zeta_tilde_image"] = rel_residual(
        ci.zeta_tilde.value, (z / jet_rpow(mu_c, 1, 3)).value
    )
    sigma_form = jet_rpow(3.0 * ci.alpha_hat, 1, 3) * ci.dsigma
    res["xi_density"] = max(
        rel_residual(ci.dxi.value, sigma_form.value),
        rel_residual(ci.dxi.value, xi.density_jet.value),
    )
    # D_s f = ζ̃^{-1} D_ξ̂ f, tested on f = κ
    lhs_op = _d(ci.kappa, ci.ds)
    rhs_op = _d(ci.kappa, ci.dxi) / ci.zeta_tilde
    res["ds_operator"] = rel_residual(lhs_op.value, rhs_op.value)
    return res


def recover_kappa(eta, zeta, dxi):
    """κ from ``η̂``, ``ζ̃`` and the ``dξ̂`` density.

    ``κ = -(2 η̂ ζ̃² + 6 ζ̃ ζ̃_ξξ - 9 ζ̃_ξ²) / (3 ζ̃⁴)``.
    """
    z1 = _d(zeta, dxi)
    z2 = _d(z1, dxi)
    return -(2.0 * eta * zeta * zeta + 6.0 * zeta * z2 - 9.0 * z1 * z1) * jet_rpow(zeta, -4) / 3.0


# -- degeneracy classification ------------------------------------------------


class Classification(str, enum.Enum):
    TOTALLY_DEGENERATE = "TOTALLY_DEGENERATE"
    CONIC_IMAGE = "CONIC_IMAGE"
    REGULAR = "REGULAR"


def classifier_pullbacks(w, image):
    """Relative residuals of the pulled-back ``Y2`` and ``A`` of the central image.

    Both are written in the graph form of the space curve, with ``x`` as
    independent variable: ``Δ_x = Δ / x'^3`` and ``z1 = dz/dx``.
    """
    from .planeinv import GUARD_A, _A_scale, invariant_A

    xd = w.x.derivative()
    w0, w1, w2 = w.components, w.derivative(1), w.derivative(2)
    delta_x = _triple(w0, w1, w2) * jet_rpow(xd, -3)
    x, z = w.x, w.z
    z1 = _d(z, xd)
    den = x * z1 - z
    y2_pull = -(z**3) * delta_x * jet_rpow(den, -3)
    res = {"Y2": rel_residual(y2_pull.value, image.Y[2].value)}
    ci = centro_affine(w)
    a_pull = 27.0 * z**15 * delta_x**4 * ci.alpha * jet_rpow(den, -12)
    a_img = invariant_A(image).value_jet
    res["A"] = rel_residual(a_pull.value, a_img.value)
    scale = _A_scale(image)
    if abs(a_img.value) <= GUARD_A * scale:
        # at a conic point A is pure cancellation; compare in units of its terms
        res["A"] = abs(a_pull.value - a_img.value) / (1.0 + scale)
    return res


def classify(curve, ts, order=None, tol=1e-8):
    """Classify a curve on a window by whether Δ and α vanish at every sample."""
    from .curvemodel import eval_space_jet

    delta_zero = alpha_zero = True
    for t in ts:
        w = eval_space_jet(curve, t, order)
        w0, w1, w2 = w.components, w.derivative(1), w.derivative(2)
        d = _triple(w0, w1, w2)
        if abs(d.value) > tol * max(_triple_scale(w0, w1, w2), 1e-300):
            delta_zero = False
            try:
                ci = centro_affine(w, with_eta=False)
                ks = _d(ci.kappa, ci.ds).value
                scale = abs(ks) + 2.0 * abs(ci.tau.value)
                if abs(ci.alpha.value) > tol * max(scale, 1e-300):
                    alpha_zero = False
            except ZeroKappa:
                alpha_zero = False
    if delta_zero:
        return Classification.TOTALLY_DEGENERATE
    if alpha_zero:
        return Classification.CONIC_IMAGE
    return Classification.REGULAR


def central_offset_invariants(w, center):
    """Centro-affine invariants for central projection from ``center``.

    Computed on the curve translated so the center sits at the origin.
    """
    return centro_affine(act_space(translation(-np.asarray(center, float)), w))


# -- parallel projection -----------------------------------------------------


@dataclass(frozen=True)
class ParallelInvariants:
    nu_hat: TaylorJet
    lifted: dict
    lifted_recurrence: dict
    iota_hat_z4: TaylorJet | None
    iota_hat_z4_alt: TaylorJet | None
    rho_hat_density: TaylorJet
    reason: str = ""

    def dual_residuals(self):
        return {
            k: rel_residual(self.lifted[k].value, v.value)
            for k, v in self.lifted_recurrence.items()
        }


def _graph_B(y):
    return 3.0 * y[2] * y[4] - 5.0 * y[3] * y[3]


def parallel_invariants(g, check=True):
    """Invariants of the projectable subgroup for parallel projection along z.

    ``g`` is the space graph jet (x independent).  ``nu_hat`` is the affine
    curvature of the image written on the space curve; ``lifted`` holds the
    lifted invariants of ``z, z1..z4`` in closed form and ``lifted_recurrence``
    the same quantities from ``nu_hat`` and ``D_ρ̂`` derivatives of ``z``.
    """
    y, z = g.y, g.z
    if g.K < 5:
        raise DepthExhausted("need y up to order 5")
    B = _graph_B(y)
    scale = (1.0 + max(abs(y[i].value) for i in range(1, 5))) ** 2
    if B.value <= 1e-8 * scale:
        raise NonConvexProjection(f"3 y2 y4 - 5 y3² = {B.value:.3g} at t={g.t}")
    sB = jet_powf(B, 0.5)
    A = 9.0 * y[5] * y[2] * y[2] - 45.0 * y[4] * y[3] * y[2] + 40.0 * y[3] ** 3
    nu = 3.0 * A * jet_powf(B, -1.5)
    rho = sB / (3.0 * y[2]) * g.xdot
    lifted = {
        "z": z[0],
        "z1": 3.0 * y[2] * z[1] / sB,
        "z2": 3.0 * y[2] * (3.0 * y[2] * z[2] - y[3] * z[1]) / B,
        "z3": 27.0 * y[2] ** 2 * (y[2] * z[3] - y[3] * z[2]) * jet_powf(B, -1.5),
        "z4": (
            81.0 * y[2] ** 3 * (y[2] * z[4] - 2.0 * y[3] * z[3])
            + 27.0 * y[2] ** 2 * y[3] ** 2 * z[2]
            - (27.0 * y[2] * y[4] - 45.0 * y[3] ** 2) * y[2] * y[3] * z[1]
        ) * jet_powf(B, -2),
    }
    zr = [z[0]]
    for _ in range(4):
        zr.append(_d(zr[-1], rho))
    nr = _d(nu, rho)
    nrr = _d(nr, rho)
    rec = {
        "z1": zr[1],
        "z2": zr[2] + nu * zr[1] / 6.0,
        "z3": zr[3] + 0.5 * nu * zr[2] + (nr / 6.0 + nu * nu / 18.0 + 1.0) * zr[1],
        "z4": zr[4] + nu * zr[3]
        + ((2.0 / 3.0) * nr + (11.0 / 36.0) * nu * nu + 4.0) * zr[2]
        + (nrr / 6.0 + (7.0 / 36.0) * nu * nr + nu**3 / 36.0 + nu) * zr[1],
    }
    w23 = y[2] * z[3] - y[3] * z[2]
    reason = ""
    ih = ih_alt = None
    zscale = (1.0 + max(abs(y[i].value) for i in range(2, 4))) * (
        1.0 + max(abs(z[i].value) for i in range(2, 4))
    )
    if abs(w23.value) <= 1e-8 * zscale:
        reason = f"DegenerateZ3: y2 z3 - y3 z2 = {w23.value:.3g} at t={g.t}"
    else:
        ih = 3.0 * (y[2] * (y[2] * z[4] - y[4] * z[2]) - 2.0 * y[3] * w23) / w23 / sB
        ih_alt = (lifted["z4"] - 3.0 * lifted["z2"]) / lifted["z3"]
    out = ParallelInvariants(nu, lifted, rec, ih, ih_alt, rho, reason)
    if check:
        for name, r in out.dual_residuals().items():
            if r > LIFTED_CHECK_TOL[name]:
                raise InternalInconsistency(f"lifted {name} forms differ by {r:.3g} at t={g.t}")
    return out


def iota_hat_z4(g):
    p = parallel_invariants(g, check=False)
    if p.iota_hat_z4 is None:
        raise DegenerateZ3(p.reason)
    return p.iota_hat_z4


def _straighten(w, b):
    x, z = w.x, w.z
    xd = x.derivative() - z.derivative() * float(b[0])
    if abs(xd.value) <= 1e-8 * (1.0 + abs(x[1]) + abs(b[0] * z[1])):
        raise FoldSingularity(f"1 - b1 z1 vanishes at t={w.t}")
    return act_space(shear_b(b).inverse(), w)


def parallel_family_pullback(w, b, K=None):
    """ν̂_b: the affine curvature of the ``P_b`` image, written on the space curve."""
    g = space_to_graph(_straighten(w, b), K)
    return parallel_invariants(g, check=False).nu_hat


def y2_substitution(g, b):
    """Second graph derivative of ``y - b2 z`` w.r.t. ``x - b1 z``, from the printed substitution."""
    b1, b2 = b
    y, z = g.y, g.z
    f = 1.0 - b1 * z[1]
    return (y[2] * f + z[2] * (b1 * y[1] - b2)) * jet_rpow(f, -3)


__all__ += ["iota_hat_z4", "rel_residual", "CentroEquiAffine"]
