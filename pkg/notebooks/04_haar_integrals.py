"""
Integrals over U(N)
===================

Monte Carlo over Haar-random matrices and quadrature on the eigenvalue torus
give an independent route to the expansion coefficients.
"""

# %%
import numpy as np

from charexp import coefficient, exponential, parse_label
from charexp.haar import bessel_check, extract_coefficient, gram_matrix, mc_integrate
from charexp.partitions import enumerate_partitions, from_exponents
from charexp.symfunc import char_values

labels = [from_exponents(p.parts) for p in enumerate_partitions(2, 2)]
gram, _ = gram_matrix(labels, 2, "torus", grid=64)
print(np.round(gram.real, 12))

# %%
est = mc_integrate(lambda t: np.abs(char_values(np.array([1, 0]), t)) ** 2, 2, 50_000,
                   seed=1, vectorized=True)
print(est.value, est.std_error)

# %%
g = parse_label("1,0@1")
seq = exponential(1.0)
print(extract_coefficient(seq, g), coefficient(seq, g))
print(bessel_check(0.5))
