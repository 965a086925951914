"""Closed-form plane and space curves and their jets."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import taylor
from .errors import DimensionMismatch
from .expr import BinOp, Num, evaluate_jet, parse_list, to_text
from .taylor import TaylorJet

__all__ = [
    "CurveSpec",
    "SpaceCurveJet",
    "PlaneCurveJet",
    "parse_curve",
    "load_curve",
    "builtin",
    "BUILTINS",
    "eval_space_jet",
    "eval_plane_jet",
    "eval_jet",
    "random_curve",
    "sample_points",
]


@dataclass(frozen=True)
class CurveSpec:
    dimension: int
    components: tuple
    label: str = ""

    def __post_init__(self):
        if self.dimension not in (2, 3):
            raise DimensionMismatch(f"curves have dimension 2 or 3, not {self.dimension}")
        if len(self.components) != self.dimension:
            raise DimensionMismatch(
                f"{len(self.components)} components for a {self.dimension}-d curve"
            )

    @property
    def text(self):
        return ", ".join(to_text(c) for c in self.components)

    def to_dict(self):
        return {"label": self.label, "dim": self.dimension,
                "components": [to_text(c) for c in self.components]}

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class SpaceCurveJet:
    t: float
    x: TaylorJet
    y: TaylorJet
    z: TaylorJet

    def __post_init__(self):
        orders = {self.x.order, self.y.order, self.z.order}
        points = {self.x.base_point, self.y.base_point, self.z.base_point}
        if len(orders) != 1 or points != {self.t}:
            raise ValueError("component jets must share order and base point")

    @property
    def order(self):
        return self.x.order

    @property
    def components(self):
        return (self.x, self.y, self.z)

    def derivative(self, k=1):
        """Coordinates of the k-th derivative vector, as jets."""
        out = self.components
        for _ in range(k):
            out = tuple(c.derivative() for c in out)
        return out


@dataclass(frozen=True)
class PlaneCurveJet:
    t: float
    X: TaylorJet
    Y: TaylorJet

    def __post_init__(self):
        if self.X.order != self.Y.order or {self.X.base_point, self.Y.base_point} != {self.t}:
            raise ValueError("component jets must share order and base point")

    @property
    def order(self):
        return self.X.order

    @property
    def components(self):
        return (self.X, self.Y)


def parse_curve(source, label=""):
    """Parse ``"t, t^2, t^3"`` style input into a :class:`CurveSpec`."""
    nodes = parse_list(source)
    if len(nodes) not in (2, 3):
        raise DimensionMismatch(f"expected 2 or 3 components, got {len(nodes)}")
    return CurveSpec(len(nodes), tuple(nodes), label or source)


def curve_from_dict(doc):
    comps = doc["components"]
    curve = parse_curve(", ".join(comps), doc.get("label", ""))
    dim = doc.get("dim", curve.dimension)
    if dim != curve.dimension:
        raise DimensionMismatch(f"dim={dim} but {curve.dimension} components given")
    return curve


def load_curve(path):
    """Load a curve from a JSON document ``{label, dim, components: [text]}``."""
    with open(path) as fh:
        return curve_from_dict(json.load(fh))


BUILTINS = {
    "twisted_cubic": (3, "t, t^2, t^3"),
    "helix": (3, "cos(t), sin(t), t"),
    "line": (3, "t, 1 + 2*t, 3 + 0.5*t"),
    "circle_z1": (3, "cos(t), sin(t), 1"),
    "planar_origin": (3, "t, t^2, 2*t + 3*t^2"),
    "exp_blend": (3, "t, exp(t/2), 1 + t^2/3"),
    "exp_trig": (3, "t + sin(t)/4, exp(-t) + t^2, 2 + cos(t)"),
    "unit_circle": (2, "cos(t), sin(t)"),
    "lower_circle": (2, "t, -sqrt(1 - t^2)"),
    "parabola": (2, "t, t^2"),
    "ellipse": (2, "2*cos(t), sin(t)"),
    "exp_curve": (2, "t, exp(t)"),
    "plane_line": (2, "t, 1 + 2*t"),
    "cubic": (2, "t, t^3"),
    "log_spiral": (2, "exp(t/4)*cos(t), exp(t/4)*sin(t)"),
    "wobble": (2, "cos(t) + 0.2*cos(2*t), sin(t)"),
}


def builtin(name):
    dim, text = BUILTINS[name]
    return parse_curve(text, label=name)


def resolve_curve(text_or_path):
    """Builtin name, JSON file path, or literal curve text."""
    if text_or_path in BUILTINS:
        return builtin(text_or_path)
    p = Path(text_or_path)
    if p.suffix == ".json" and p.exists():
        return load_curve(p)
    return parse_curve(text_or_path)


def _component_jets(curve, t, order):
    order = taylor.settings.default_order if order is None else order
    tj = taylor.variable(float(t), order)
    return [evaluate_jet(c, tj) for c in curve.components]


def eval_space_jet(curve, t, order=None):
    if curve.dimension != 3:
        raise DimensionMismatch("eval_space_jet needs a space curve")
    x, y, z = _component_jets(curve, t, order)
    return SpaceCurveJet(float(t), x, y, z)


def eval_plane_jet(curve, t, order=None):
    if curve.dimension != 2:
        raise DimensionMismatch("eval_plane_jet needs a plane curve")
    X, Y = _component_jets(curve, t, order)
    return PlaneCurveJet(float(t), X, Y)


def eval_jet(curve, t, order=None):
    if curve.dimension == 3:
        return eval_space_jet(curve, t, order)
    return eval_plane_jet(curve, t, order)


def sample_points(curve, ts):
    """Curve points at the parameter values ``ts`` as an ``(n, dim)`` array."""
    return np.array([[j.value for j in _component_jets(curve, t, 0)] for t in ts])


def _poly_text(coeffs):
    terms = []
    for k, c in enumerate(coeffs):
        lit = repr(float(c))
        if k == 0:
            terms.append(f"({lit})")
        elif k == 1:
            terms.append(f"({lit})*t")
        else:
            terms.append(f"({lit})*t^{k}")
    return " + ".join(terms)


def _trig_text(const, a, b):
    terms = [f"({const!r})"]
    for k, (ak, bk) in enumerate(zip(a, b), start=1):
        arg = "t" if k == 1 else f"{k}*t"
        terms.append(f"({float(ak)!r})*cos({arg})")
        terms.append(f"({float(bk)!r})*sin({arg})")
    return " + ".join(terms)


def random_curve(seed, dimension=3, kind="poly", degree=5):
    """Seeded random polynomial or trigonometric-polynomial curve.

    Coefficients are uniform in [-1, 1].  The constant term of the last
    coordinate is shifted so that it is at least 0.5 at ``t = 0``, which
    keeps the central projection through the origin away from ``z = 0``.
    """
    if degree < 3:
        raise ValueError("degree must be at least 3")
    if dimension not in (2, 3):
        raise DimensionMismatch("dimension must be 2 or 3")
    rng = np.random.default_rng(seed)
    texts = []
    for i in range(dimension):
        last = i == dimension - 1
        if kind == "poly":
            c = rng.uniform(-1.0, 1.0, degree + 1)
            if last and c[0] < 0.5:
                c[0] += 0.5 - c[0] + abs(c[0])
            texts.append(_poly_text(c))
        elif kind == "trig-poly":
            const = float(rng.uniform(-1.0, 1.0))
            a = rng.uniform(-1.0, 1.0, degree)
            b = rng.uniform(-1.0, 1.0, degree)
            if last:
                z0 = const + a.sum()
                if z0 < 0.5:
                    const += 0.5 - z0 + abs(const)
            texts.append(_trig_text(float(const), a, b))
        else:
            raise ValueError(f"unknown curve kind {kind!r}")
    return parse_curve(", ".join(texts), label=f"random-{kind}-{degree}-seed{seed}")


# -- symbolic helpers used by projections and transforms ---------------------


def _lin(coeffs, nodes, offset=0.0):
    """Expression tree for ``sum(c_i * node_i) + offset`` (zero terms dropped)."""
    out = None
    for c, n in zip(coeffs, nodes):
        c = float(c)
        if c == 0.0:
            continue
        term = n if c == 1.0 else BinOp("*", Num(c), n)
        out = term if out is None else BinOp("+", out, term)
    if offset != 0.0 or out is None:
        off = Num(float(offset))
        out = off if out is None else BinOp("+", out, off)
    return out


def linear_image(curve, matrix, offset=None, label=None):
    """Curve ``t -> M @ curve(t) + offset`` built as expression trees."""
    matrix = np.asarray(matrix, dtype=float)
    offset = np.zeros(matrix.shape[0]) if offset is None else np.asarray(offset, float)
    comps = tuple(_lin(row, curve.components, o) for row, o in zip(matrix, offset))
    return CurveSpec(matrix.shape[0], comps, label or f"{curve.label} (transformed)")


def projective_image(curve, matrix, label=None):
    """Plane curve under the linear fractional map of a 3x3 matrix."""
    if curve.dimension != 2:
        raise DimensionMismatch("projective_image needs a plane curve")
    m = np.asarray(matrix, dtype=float)
    homog = curve.components + (Num(1.0),)
    num = [_lin(m[i], homog) for i in range(3)]
    comps = (BinOp("/", num[0], num[2]), BinOp("/", num[1], num[2]))
    return CurveSpec(2, comps, label or f"{curve.label} (projective)")


__all__ += ["curve_from_dict", "resolve_curve", "linear_image", "projective_image"]
