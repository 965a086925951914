"""Recognizing a curve up to a group action from its signature.

The signature of the helix image under a random projective map coincides
with that of the original, while a different curve lands elsewhere.

Run: python3 demos/signature_matching.py
"""

from projinv.curvemodel import parse_curve, projective_image
from projinv.signature import compare, sample_signature
from projinv.transform import random_group_element

base = parse_curve("cos(t)/t, sin(t)/t", label="helix image")
g = random_group_element(17, "PGL3")
moved = projective_image(base, g.A)
other = parse_curve("cos(t)/t, sin(2*t)/t", label="other")

window = (0.5, 1.5)
sigs = {c.label: sample_signature(c, "PGL3_plane", window=window, n=200) for c in (base, moved, other)}
ref = sigs[base.label]
for label, sig in sigs.items():
    res = compare(ref, sig)
    verdict = "equivalent" if res.equivalent else "different"
    print(f"{label:>28}: distance {res.distance:.2e}  {verdict}  (dropped {len(sig.dropped)})")
