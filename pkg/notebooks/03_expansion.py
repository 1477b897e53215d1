"""
Expanding prod_i G(t_i) in characters
=====================================

The coefficient of each character is a determinant of the sequence A_n.
"""

# %%
import numpy as np

from charexp import EigenvalueSet, expand, geometric, quadratic, reconstruct
from charexp.expansion import direct_product

# Only single-row characters survive for 1/det(1 - zU).
e = expand(geometric(0.5), N=2, max_boxes=3)
for term in e.nonzero():
    print(term.label, term.coefficient)

# %%
# det(1 - 2xU + U^2) never needs a row longer than two boxes.
e = expand(quadratic(0.3), N=3, max_boxes=6)
print(max(max(term.label.exponents) for term in e.nonzero()))

# %%
# Summing the truncated expansion recovers the product.
t = EigenvalueSet.from_phases([1.0, -1.0])
seq = geometric(0.5)
print(reconstruct(expand(seq, 2, 60), seq, t), direct_product(seq, t))

# %%
# A two-sided series needs a det_power window; at N = 1 this is I_n(2x).
from charexp import bessel_like

e = expand(bessel_like(0.5), N=1, max_boxes=0, det_power_range=(-3, 3))
print(np.round(e.coefficients, 12))
