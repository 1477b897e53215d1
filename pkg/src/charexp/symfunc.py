"""Characters of U(N) at given eigenvalues.

Two independent routes are provided: Weyl's ratio of alternants and the
Jacobi-Trudi determinant of complete homogeneous symmetric functions. The
ratio is undefined at coincident eigenvalues, so :func:`char` falls back to
Jacobi-Trudi there.

The ``*_values`` functions are the array kernels. They broadcast over any
number of leading eigenvalue axes, ``t.shape == (..., N)``, which is what the
group integrators feed them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateEigenvaluesError, InvalidLabelError, SingularInputError
from .partitions import GeneralizedLabel, Partition

__all__ = [
    "EigenvalueSet",
    "DEGENERATE_TOL",
    "vandermonde",
    "vandermonde_product",
    "complete_symmetric",
    "complete_symmetric_table",
    "char_weyl",
    "char_jacobi_trudi",
    "char",
    "char_generalized",
    "weyl_values",
    "jacobi_trudi_values",
    "char_values",
    "generalized_char_values",
    "min_separation",
]

DEGENERATE_TOL = 1e-6
UNIT_CIRCLE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class EigenvalueSet:
    """Eigenvalues ``t_1..t_N`` of a group element in the fundamental rep."""

    values: np.ndarray
    unit_circle: bool = False

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).reshape(-1).copy()
        if vals.size == 0:
            raise ValueError("an eigenvalue set needs at least one value")
        if self.unit_circle and np.any(np.abs(np.abs(vals) - 1.0) > UNIT_CIRCLE_TOL):
            raise ValueError("eigenvalues flagged unit_circle are off the circle")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_phases(cls, phases: Sequence[float]) -> "EigenvalueSet":
        return cls(np.exp(1j * np.asarray(phases, dtype=float)), unit_circle=True)

    @property
    def N(self) -> int:
        return self.values.size

    def conjugate(self) -> "EigenvalueSet":
        return EigenvalueSet(self.values.conj(), self.unit_circle)

    def __len__(self) -> int:
        return self.N

    def __repr__(self) -> str:
        return f"EigenvalueSet({self.values.tolist()!r}, unit_circle={self.unit_circle})"


def _as_array(t) -> np.ndarray:
    if isinstance(t, EigenvalueSet):
        return t.values
    return np.asarray(t, dtype=complex)


def _parts(p) -> np.ndarray:
    if isinstance(p, Partition):
        return np.asarray(p.parts, dtype=np.int64)
    return np.asarray(p, dtype=np.int64)


def _check_rank(p, t: np.ndarray):
    if _parts(p).shape[-1] != t.shape[-1]:
        raise InvalidLabelError(
            f"label has {_parts(p).shape[-1]} rows but {t.shape[-1]} eigenvalues given"
        )


def min_separation(t) -> np.ndarray:
    """Smallest pairwise distance ``|t_i - t_j|`` (``inf`` for a single value)."""
    t = _as_array(t)
    N = t.shape[-1]
    if N < 2:
        return np.full(t.shape[:-1], np.inf)
    i, j = np.triu_indices(N, k=1)
    return np.abs(t[..., i] - t[..., j]).min(axis=-1)


def _alternant(t: np.ndarray, exps: np.ndarray) -> np.ndarray:
    # det(t_i ** exps_j); exps has shape (..., N) and broadcasts against t
    mat = t[..., :, None] ** exps[..., None, :]
    return np.linalg.det(mat)


def vandermonde(t) -> complex:
    """``det(t_i ** (N - j))``."""
    t = _as_array(t)
    N = t.shape[-1]
    return complex(_alternant(t, np.arange(N - 1, -1, -1)))


def vandermonde_product(t) -> complex:
    """``prod_{i<j} (t_i - t_j)``; same value as :func:`vandermonde`."""
    t = _as_array(t)
    N = t.shape[-1]
    out = 1.0 + 0.0j
    for i in range(N):
        for j in range(i + 1, N):
            out *= t[i] - t[j]
    return complex(out)


def complete_symmetric_table(max_degree: int, t) -> np.ndarray:
    """``h_0 .. h_max_degree`` at ``t``; result has shape ``(..., max_degree+1)``.

    Adds one variable at a time: ``h_n[k vars] = h_n[k-1 vars] + t_k h_{n-1}[k vars]``.
    """
    t = _as_array(t)
    lead = t.shape[:-1]
    h = np.zeros(lead + (max_degree + 1,), dtype=complex)
    h[..., 0] = 1.0
    for k in range(t.shape[-1]):
        tk = t[..., k]
        for n in range(1, max_degree + 1):
            h[..., n] = h[..., n] + tk * h[..., n - 1]
    return h


def complete_symmetric(n: int, t) -> complex:
    """Complete homogeneous symmetric polynomial ``h_n(t)``; zero for ``n < 0``."""
    if n < 0:
        return 0.0 + 0.0j
    return complex(complete_symmetric_table(n, t)[..., n])


def weyl_values(parts, t) -> np.ndarray:
    """Weyl's ratio for each eigenvalue row of ``t`` (no degeneracy check).

    ``parts`` may carry leading axes of its own (one row per label); they
    broadcast against the leading axes of ``t``.
    """
    t = _as_array(t)
    n = _parts(parts)
    N = t.shape[-1]
    rho = np.arange(N - 1, -1, -1)
    return _alternant(t, n + rho) / _alternant(t, rho)


def jacobi_trudi_values(parts, t) -> np.ndarray:
    """``det(h_{n_j + i - j})`` for each eigenvalue row of ``t``."""
    t = _as_array(t)
    n = _parts(parts)
    N = t.shape[-1]
    top = int(n.max()) + N - 1 if n.size else 0
    h = complete_symmetric_table(max(top, 0), t)
    ii, jj = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    idx = n[..., None, :] + ii - jj  # (..., N, N)
    mask = idx >= 0
    lead = np.broadcast_shapes(h.shape[:-1], idx.shape[:-2])
    hb = np.broadcast_to(h[..., None, :], lead + (1, h.shape[-1]))
    flat = np.where(mask, idx, 0).reshape(idx.shape[:-2] + (N * N,))
    flat = np.broadcast_to(flat, lead + (N * N,))
    gathered = np.take_along_axis(hb[..., 0, :], flat, axis=-1).reshape(lead + (N, N))
    mat = np.where(np.broadcast_to(mask, lead + (N, N)), gathered, 0.0)
    return np.linalg.det(mat)


def char_values(parts, t) -> np.ndarray:
    """Character values, Weyl where eigenvalues separate and Jacobi-Trudi elsewhere."""
    t = _as_array(t)
    n = _parts(parts)
    _check_rank(n, t)
    sep = min_separation(t)
    good = sep >= DEGENERATE_TOL
    if np.all(good):
        return weyl_values(n, t)
    if not np.any(good):
        return jacobi_trudi_values(n, t)
    out = jacobi_trudi_values(n, t)
    lead = out.shape
    good = np.broadcast_to(good, lead)
    tb = np.broadcast_to(t, lead + (t.shape[-1],))
    nb = np.broadcast_to(n, lead + (n.shape[-1],))
    out = np.array(out)
    out[good] = weyl_values(nb[good], tb[good])
    return out


def generalized_char_values(labels_or_exps, t) -> np.ndarray:
    """Characters for signed highest weights (one row per label in ``exps``)."""
    t = _as_array(t)
    if isinstance(labels_or_exps, GeneralizedLabel):
        exps = np.asarray(labels_or_exps.exponents, dtype=np.int64)
    else:
        exps = np.asarray(labels_or_exps, dtype=np.int64)
    d = exps[..., -1]
    shape = exps - d[..., None]
    det = np.prod(t, axis=-1)
    if np.any(d < 0) and np.any(det == 0):
        raise SingularInputError("zero eigenvalue with a negative det power")
    return det ** d * char_values(shape, t)


def char_weyl(p: Partition, t) -> complex:
    """``det(t_i ** (n_j + N - j)) / det(t_i ** (N - j))``."""
    t = _as_array(t)
    _check_rank(p, t)
    if min_separation(t) < DEGENERATE_TOL:
        raise DegenerateEigenvaluesError(
            "eigenvalues closer than %g; use char() or char_jacobi_trudi()" % DEGENERATE_TOL
        )
    return complex(weyl_values(p, t))


def char_jacobi_trudi(p: Partition, t) -> complex:
    """Jacobi-Trudi determinant; valid at coincident eigenvalues."""
    t = _as_array(t)
    _check_rank(p, t)
    return complex(jacobi_trudi_values(p, t))


def char(p: Partition, t) -> complex:
    """Character of the irrep ``p`` at eigenvalues ``t``."""
    return complex(char_values(p, t))


def char_generalized(g: GeneralizedLabel, t) -> complex:
    """``(det U) ** det_power * char(shape)``."""
    t = _as_array(t)
    _check_rank(g.shape, t)
    det = complex(np.prod(t))
    if g.det_power < 0 and det == 0:
        raise SingularInputError("zero eigenvalue with a negative det power")
    return det ** g.det_power * char(g.shape, t)
