"""
Characters of U(N) two ways
===========================

A character depends only on the eigenvalues of U. Here it is computed both
as a ratio of alternants and as a determinant of complete symmetric
functions, and the two are compared on random points of the torus.
"""

# %%
import numpy as np

from charexp import EigenvalueSet, Partition, char, char_jacobi_trudi, char_weyl
from charexp.partitions import enumerate_partitions

rng = np.random.default_rng(0)
t = EigenvalueSet.from_phases(rng.uniform(0, 2 * np.pi, 3))
p = Partition([2, 1, 0])
print(char_weyl(p, t), char_jacobi_trudi(p, t))

# %%
# At the identity the character is the dimension of the representation.
for p in enumerate_partitions(3, 3):
    print(p.parts, round(char(p, np.ones(3)).real))

# %%
# Near-coincident eigenvalues make the alternant ratio 0/0, so ``char``
# switches to the determinant of h_n there.
t = np.exp(1j * np.array([0.4, 0.4 + 1e-9, 2.0]))
print(char(Partition([3, 1, 0]), t))
