"""Variation of the Hodge star under a coframe change, two ways.

The closed formula is compared with a dual-number evaluation of the star on
the perturbed coframe (t^2 = 0).
"""

import numpy as np

from noetherforms.geometry import FrameGeometry, hodge_variation, lift, perturbed, slope_part
from noetherforms.harness.generate import Bounds, random_coframe, random_form

rng = np.random.default_rng(11)
bounds = Bounds(degree=1, coeff=3)
for n in (2, 3, 4):
    g = FrameGeometry(random_coframe(rng, n, bounds), (-1,) + (1,) * (n - 1))
    dtheta = [random_form(rng, n, 1, bounds) for _ in range(n)]
    agree = []
    for p in range(n + 1):
        alpha = random_form(rng, n, p, bounds)
        formula = hodge_variation(g, dtheta, alpha)
        jets = slope_part(perturbed(g, dtheta).hodge(lift(alpha)))
        agree.append(formula == jets)
    print(f"n={n}: formula == jet oracle for degrees 0..{n}:", agree)
