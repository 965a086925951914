"""Differential invariants of space curves and of their central and parallel projections.

Jets are truncated Taylor series (:mod:`projinv.taylor`); curves are parsed
from text (:mod:`projinv.curvemodel`); plane and space invariants live in
:mod:`projinv.planeinv` and :mod:`projinv.spaceinv`; :mod:`projinv.verify`
cross-checks the identities that connect them.
"""

from . import errors
from .curvemodel import builtin, eval_jet, parse_curve, resolve_curve
from .projection import central, parallel, project, to_graph
from .taylor import TaylorJet, settings

__version__ = "0.1.0"

__all__ = [
    "errors",
    "builtin",
    "eval_jet",
    "parse_curve",
    "resolve_curve",
    "central",
    "parallel",
    "project",
    "to_graph",
    "TaylorJet",
    "settings",
    "__version__",
]
