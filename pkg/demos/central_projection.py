"""Projective curvature of a central image, computed on the space curve.

The helix (cos t, sin t, t) projects from the origin to the plane curve
(cos t / t, sin t / t).  Its projective curvature eta matches the gauge
invariant eta_hat evaluated on the helix itself.  A route whose guard
fails at a point (the normalized route needs kappa > 0) is shown as "-".

Run: python3 demos/central_projection.py
"""

from projinv import builtin
from projinv.curvemodel import eval_space_jet
from projinv.planeinv import projective
from projinv.projection import central, project, to_graph
from projinv.spaceinv import eta_hat_all, rel_residual

helix = builtin("helix")
for t in (0.2, 0.5, 1.0, 1.3):
    w = eval_space_jet(helix, t)
    eta = projective(to_graph(project(central(), w), upright_frame=True))["eta"].value
    routes = eta_hat_all(w)
    worst = max(rel_residual(eta, v) for v in routes.values() if v is not None)
    print(f"t={t:.1f}  eta of image {eta:.12f}  max rel deviation of eta_hat {worst:.1e}")
    for name, v in routes.items():
        print(f"        {name:>10}: {'-' if v is None else f'{v:.12f}'}")
