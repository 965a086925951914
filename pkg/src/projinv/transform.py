"""Affine, linear and projective group elements and their action on curve jets."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .curvemodel import PlaneCurveJet, SpaceCurveJet
from .errors import DimensionMismatch, OnHyperplaneAtInfinity
from . import taylor

__all__ = [
    "Affine3",
    "Affine2",
    "Projective2",
    "act_space",
    "act_plane_affine",
    "act_projective",
    "conjugate",
    "translation",
    "shear_b",
    "h_element",
    "induced_projective",
    "random_group_element",
    "GROUP_KINDS",
    "element_from_json",
]

DET_EPS = 1e-9


def _as_matrix(a, n):
    m = np.array(a, dtype=float)
    if m.shape != (n, n):
        raise DimensionMismatch(f"expected a {n}x{n} matrix, got shape {m.shape}")
    return m


@dataclass(frozen=True, eq=False)
class Affine3:
    """``w -> A w + b`` on R^3.  ``b = 0`` gives the linear (centro-affine) action."""

    A: np.ndarray
    b: np.ndarray

    def __init__(self, A, b=None):
        A = _as_matrix(A, 3)
        b = np.zeros(3) if b is None else np.array(b, dtype=float).reshape(3)
        if abs(np.linalg.det(A)) <= DET_EPS:
            raise ValueError("singular matrix")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls):
        return cls(np.eye(3))

    @property
    def det(self):
        return float(np.linalg.det(self.A))

    @property
    def is_linear(self):
        return not np.any(self.b)

    def __matmul__(self, other):
        """Composition ``self o other``."""
        return Affine3(self.A @ other.A, self.A @ other.b + self.b)

    compose = __matmul__

    def inverse(self):
        Ai = np.linalg.inv(self.A)
        return Affine3(Ai, -Ai @ self.b)

    def __call__(self, p):
        return self.A @ np.asarray(p, dtype=float) + self.b

    def allclose(self, other, atol=1e-12):
        return np.allclose(self.A, other.A, atol=atol) and np.allclose(self.b, other.b, atol=atol)

    def to_dict(self):
        return {"A": self.A.tolist(), "b": self.b.tolist()}

    def __repr__(self):
        return f"Affine3(A={self.A.tolist()}, b={self.b.tolist()})"


@dataclass(frozen=True, eq=False)
class Affine2:
    A: np.ndarray
    b: np.ndarray

    def __init__(self, A, b=None):
        A = _as_matrix(A, 2)
        b = np.zeros(2) if b is None else np.array(b, dtype=float).reshape(2)
        if abs(np.linalg.det(A)) <= DET_EPS:
            raise ValueError("singular matrix")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls):
        return cls(np.eye(2))

    @property
    def det(self):
        return float(np.linalg.det(self.A))

    def __matmul__(self, other):
        return Affine2(self.A @ other.A, self.A @ other.b + self.b)

    compose = __matmul__

    def inverse(self):
        Ai = np.linalg.inv(self.A)
        return Affine2(Ai, -Ai @ self.b)

    def __call__(self, p):
        return self.A @ np.asarray(p, dtype=float) + self.b

    def as_projective(self):
        m = np.eye(3)
        m[:2, :2] = self.A
        m[:2, 2] = self.b
        return Projective2(m)

    def allclose(self, other, atol=1e-12):
        return np.allclose(self.A, other.A, atol=atol) and np.allclose(self.b, other.b, atol=atol)

    def to_dict(self):
        return {"A": self.A.tolist(), "b": self.b.tolist()}

    def __repr__(self):
        return f"Affine2(A={self.A.tolist()}, b={self.b.tolist()})"


@dataclass(frozen=True, eq=False)
class Projective2:
    """Element of PGL(3) acting on the plane by linear fractional maps.

    The stored representative is scaled so that its largest-magnitude entry
    equals +1, which makes equality of classes a matrix comparison.
    """

    A: np.ndarray

    def __init__(self, A):
        A = _as_matrix(A, 3)
        if abs(np.linalg.det(A)) <= DET_EPS * np.max(np.abs(A)) ** 3:
            raise ValueError("singular matrix")
        A = A / A.flat[np.argmax(np.abs(A))]
        A.setflags(write=False)
        object.__setattr__(self, "A", A)

    @classmethod
    def identity(cls):
        return cls(np.eye(3))

    def __matmul__(self, other):
        return Projective2(self.A @ other.A)

    compose = __matmul__

    def inverse(self):
        return Projective2(np.linalg.inv(self.A))

    def __call__(self, p):
        h = self.A @ np.array([p[0], p[1], 1.0])
        return h[:2] / h[2]

    def allclose(self, other, atol=1e-12):
        return np.allclose(self.A, other.A, atol=atol)

    def to_dict(self):
        return {"A": self.A.tolist()}

    def __repr__(self):
        return f"Projective2(A={self.A.tolist()})"


def element_from_json(doc):
    """Rebuild a group element from ``to_dict`` output (dict or JSON text)."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    A = np.asarray(doc["A"], dtype=float)
    if "b" not in doc:
        return Projective2(A)
    return Affine3(A, doc["b"]) if A.shape == (3, 3) else Affine2(A, doc["b"])


# -- actions on jets ---------------------------------------------------------


def _lincomb(row, jets, offset):
    out = jets[0] * float(row[0])
    for c, j in zip(row[1:], jets[1:]):
        out = out + j * float(c)
    return out + float(offset)


def act_space(g, w):
    """Apply an :class:`Affine3` to a space-curve jet (the parameter is untouched)."""
    comps = w.components
    x, y, z = (_lincomb(g.A[i], comps, g.b[i]) for i in range(3))
    return SpaceCurveJet(w.t, x, y, z)


def act_plane_affine(g, c):
    comps = c.components
    X, Y = (_lincomb(g.A[i], comps, g.b[i]) for i in range(2))
    return PlaneCurveJet(c.t, X, Y)


def act_projective(g, c):
    """Linear fractional action of a :class:`Projective2` on a plane-curve jet."""
    A = g.A
    X, Y = c.components
    den = _lincomb(A[2, :2], (X, Y), A[2, 2])
    scale = 1.0 + abs(A[2, 0] * X.value) + abs(A[2, 1] * Y.value) + abs(A[2, 2])
    if abs(den.value) <= taylor.settings.eps_div * scale:
        raise OnHyperplaneAtInfinity(f"denominator {den.value!r} vanishes at t={c.t}")
    num_x = _lincomb(A[0, :2], (X, Y), A[0, 2])
    num_y = _lincomb(A[1, :2], (X, Y), A[1, 2])
    return PlaneCurveJet(c.t, num_x / den, num_y / den)


def conjugate(g, h):
    """``g h g^-1``."""
    return g @ h @ g.inverse()


# -- special elements --------------------------------------------------------


def translation(c):
    """Translation ``w -> w + c`` of R^3."""
    return Affine3(np.eye(3), c)


def shear_b(b):
    """``(x, y, z) -> (x + b1 z, y + b2 z, z)``; its inverse straightens the family ``P_b``."""
    A = np.eye(3)
    A[0, 2], A[1, 2] = b[0], b[1]
    return Affine3(A)


def h_element(planar, a3, a33, c):
    """Element of the projectable subgroup for parallel projection along z.

    ``(x, y, z) -> (L(x, y) + c12, a31 x + a32 y + a33 z + c3)``.
    """
    A = np.zeros((3, 3))
    A[:2, :2] = planar
    A[2, :2] = a3
    A[2, 2] = a33
    return Affine3(A, c)


def h_planar_part(g):
    """Planar affine map induced by an element of the projectable subgroup."""
    if np.any(g.A[:2, 2]):
        raise ValueError("element does not preserve the vertical fibres")
    return Affine2(g.A[:2, :2], g.b[:2])


def induced_projective(A):
    """PGL(3) element induced on the image plane ``z = 1`` by a linear map of R^3."""
    if isinstance(A, Affine3):
        if not A.is_linear:
            raise ValueError("only linear maps descend through the central projection")
        A = A.A
    return Projective2(A)


# -- random elements ---------------------------------------------------------

GROUP_KINDS = ("GL3+", "GL3", "SL3", "PGL3", "A2", "SA2", "A3", "H")


def _sample_matrix(rng, n):
    while True:
        m = rng.uniform(-1.0, 1.0, (n, n))
        d = abs(np.linalg.det(m))
        if 0.1 <= d <= 10.0:
            return m


def _positive(m):
    """Flip one row so that ``det > 0``."""
    if np.linalg.det(m) < 0:
        m = m.copy()
        m[0] = -m[0]
    return m


def random_group_element(seed, kind="GL3+"):
    """Seeded random group element.

    Entries are uniform in [-1, 1], resampled until ``|det|`` lies in
    [0.1, 10].  SL3/SA2 are rescaled to unit determinant, GL3+ is flipped
    to positive determinant.  The planar parts of A2 and H elements are
    orientation preserving as well, since the affine curvature is odd
    under reflections.
    """
    rng = np.random.default_rng(seed)
    if kind in ("GL3+", "GL3", "SL3", "PGL3", "A3"):
        m = _sample_matrix(rng, 3)
        if kind == "GL3+":
            return Affine3(_positive(m))
        if kind == "GL3":
            return Affine3(m)
        if kind == "SL3":
            m = _positive(m)
            return Affine3(m / np.cbrt(np.linalg.det(m)))
        if kind == "PGL3":
            return Projective2(m)
        return Affine3(m, rng.uniform(-1.0, 1.0, 3))
    if kind in ("A2", "SA2"):
        m = _positive(_sample_matrix(rng, 2))
        if kind == "SA2":
            m = m / np.sqrt(np.linalg.det(m))
        return Affine2(m, rng.uniform(-1.0, 1.0, 2))
    if kind == "H":
        while True:
            planar = _positive(_sample_matrix(rng, 2))
            a3 = rng.uniform(-1.0, 1.0, 2)
            a33 = rng.uniform(-1.0, 1.0)
            c = rng.uniform(-1.0, 1.0, 3)
            if 0.1 <= abs(np.linalg.det(planar) * a33) <= 10.0:
                return h_element(planar, a3, a33, c)
    raise ValueError(f"unknown group kind {kind!r}")


__all__ += ["h_planar_part"]
