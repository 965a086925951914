"""The twisted cubic has constant centro-affine curvature and torsion.

Run: python3 demos/twisted_cubic.py
"""

import math

import numpy as np

from projinv import builtin
from projinv.curvemodel import eval_space_jet
from projinv.projection import central, project, to_graph
from projinv.planeinv import invariant_A
from projinv.spaceinv import centro_affine, classify

curve = builtin("twisted_cubic")
print(f"curve: {curve.label} = ({curve.text})")
print(f"expected kappa_hat = {-4 / math.sqrt(3):.12f}, tau_hat = {2 / math.sqrt(3):.12f}")
print(f"{'t':>5} {'kappa_hat':>16} {'tau_hat':>16} {'alpha_hat':>10}")
for t in np.linspace(0.2, 1.5, 6):
    ci = centro_affine(eval_space_jet(curve, t), with_eta=False)
    print(f"{t:5.2f} {ci.kappa_hat.value:16.12f} {ci.tau_hat.value:16.12f} {ci.alpha_hat.value:10.1e}")

# alpha_hat = 0 means the central image is a conic, so A vanishes there too
img = to_graph(project(central(), eval_space_jet(curve, 0.7)))
print(f"\nA of the central image at t=0.7: {invariant_A(img).value:.1e}")
print("classification:", classify(curve, np.linspace(0.2, 1.5, 10)).value)
