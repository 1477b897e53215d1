"""
Coefficient sequences
=====================

Each builtin binds its parameter at construction and hands out A_n on demand.
"""

# %%
import numpy as np

from charexp import chebyshev_u, geometric, quadratic, series_product

u = chebyshev_u(0.2)
print(np.round(u.table(0, 5).real, 6))
print(geometric(0.5).table(0, 5))

# %%
# 1 - 2xt + t^2 and the Chebyshev series multiply to one.
p = series_product(quadratic(0.2), u, (0, 10))
print(np.round([p.eval(n) for n in range(11)], 15))
