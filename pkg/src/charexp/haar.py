"""Integration of class functions over U(N).

Two backends share one integrand interface, a function of the eigenvalues:

* Monte Carlo over Haar-random unitaries (QR of a complex Ginibre matrix with
  the phase of ``diag(R)`` divided out), any ``N``;
* the Weyl integration formula on a uniform grid of eigenphases, ``N <= 3``.

Integrands are called either once per point with an :class:`EigenvalueSet`
or, with ``vectorized=True``, once per block with an ``(M, N)`` array of
eigenvalues; vectorized integrands must return an array of shape ``(M,)``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import UnsupportedRankError
from .expansion import coefficient
from .genfunc import CoefficientSequence
from .partitions import GeneralizedLabel, boxes
from .symfunc import EigenvalueSet, generalized_char_values

__all__ = [
    "UnitaryMatrix",
    "IntegralEstimate",
    "haar_sample",
    "haar_samples",
    "eigenphases",
    "sample_eigenvalues",
    "mc_integrate",
    "torus_integrate",
    "torus_grid",
    "extract_coefficient",
    "gram_matrix",
    "bessel_check",
    "default_grid",
    "INTEGRAL_SCHEMA",
]

UNITARITY_TOL = 1e-10
MAX_TORUS_RANK = 3
BLOCK_SIZE = 1 << 14


@dataclass(frozen=True, eq=False)
class UnitaryMatrix:
    entries: np.ndarray

    def __post_init__(self):
        u = np.array(self.entries, dtype=complex)
        if u.ndim != 2 or u.shape[0] != u.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {u.shape}")
        dev = np.abs(u.conj().T @ u - np.eye(u.shape[0])).max()
        if dev > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (max |U^H U - 1| = {dev:.3g})")
        u.setflags(write=False)
        object.__setattr__(self, "entries", u)

    @property
    def N(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class IntegralEstimate:
    value: complex
    std_error: float
    n_samples: int
    method: str
    seed: Optional[int] = None

    def __post_init__(self):
        if self.method not in ("monte_carlo", "torus_quadrature"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.std_error < 0:
            raise ValueError("std_error must be non-negative")

    def to_json_dict(self) -> dict:
        v = complex(self.value)
        return {
            "value": [v.real, v.imag],
            "std_error": float(self.std_error),
            "n_samples": int(self.n_samples),
            "method": self.method,
            "seed": self.seed,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)


INTEGRAL_SCHEMA = {
    "type": "object",
    "required": ["value", "std_error", "n_samples", "method", "seed"],
    "properties": {
        "value": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "std_error": {"type": "number", "minimum": 0},
        "n_samples": {"type": "integer", "minimum": 1},
        "method": {"enum": ["monte_carlo", "torus_quadrature"]},
        "seed": {"type": ["integer", "null"]},
    },
}


def _rng(rng_state) -> np.random.Generator:
    if isinstance(rng_state, np.random.Generator):
        return rng_state
    return np.random.default_rng(rng_state)


def haar_samples(N: int, n: int, rng_state=None) -> np.ndarray:
    """``n`` Haar-distributed ``N x N`` unitaries, shape ``(n, N, N)``."""
    rng = _rng(rng_state)
    g = rng.standard_normal((n, N, N, 2))
    z = (g[..., 0] + 1j * g[..., 1]) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def haar_sample(N: int, rng_state=None) -> UnitaryMatrix:
    """One Haar-random element of U(N)."""
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    return UnitaryMatrix(haar_samples(N, 1, rng_state)[0])


def _sorted_by_phase(t: np.ndarray) -> np.ndarray:
    phase = np.mod(np.angle(t), 2 * np.pi)
    return np.take_along_axis(t, np.argsort(phase, axis=-1), axis=-1)


def eigenphases(u: UnitaryMatrix) -> EigenvalueSet:
    """Eigenvalues of ``u`` ordered by phase in ``[0, 2 pi)``."""
    m = u.entries if isinstance(u, UnitaryMatrix) else np.asarray(u, dtype=complex)
    t = np.linalg.eigvals(m)
    return EigenvalueSet(_sorted_by_phase(t), unit_circle=True)


def sample_eigenvalues(N: int, n: int, rng_state=None) -> np.ndarray:
    """Eigenvalues of ``n`` Haar-random unitaries, shape ``(n, N)``."""
    return np.linalg.eigvals(haar_samples(N, n, rng_state))


def _blocks(n_samples: int, seed, block_size: int):
    # independent child streams per block; merge order is fixed by block index
    n_blocks = -(-n_samples // block_size)
    children = np.random.SeedSequence(seed).spawn(n_blocks)
    for b, child in enumerate(children):
        size = min(block_size, n_samples - b * block_size)
        yield size, np.random.default_rng(child)


def _evaluate(f, t: np.ndarray, vectorized: bool, unit_circle: bool) -> np.ndarray:
    if vectorized:
        out = np.asarray(f(t), dtype=complex)
        return np.broadcast_to(out, t.shape[:-1])
    return np.array(
        [complex(f(EigenvalueSet(row, unit_circle=unit_circle))) for row in t], dtype=complex
    )


def mc_integrate(
    f: Callable,
    N: int,
    n_samples: int,
    seed: Optional[int] = 0,
    *,
    vectorized: bool = False,
    block_size: int = BLOCK_SIZE,
) -> IntegralEstimate:
    """Monte Carlo estimate of ``int dU f(U)`` with the standard error of the mean."""
    if n_samples < 2:
        raise ValueError("n_samples must be at least 2")
    s1 = 0j
    s2_re = s2_im = 0.0
    for size, rng in _blocks(n_samples, seed, block_size):
        t = sample_eigenvalues(N, size, rng)
        vals = _evaluate(f, t, vectorized, unit_circle=True)
        s1 += vals.sum()
        s2_re += float(np.sum(vals.real**2))
        s2_im += float(np.sum(vals.imag**2))
    n = n_samples
    mean = s1 / n
    var_re = max(s2_re / n - mean.real**2, 0.0) * n / (n - 1)
    var_im = max(s2_im / n - mean.imag**2, 0.0) * n / (n - 1)
    se = math.sqrt((var_re + var_im) / n)
    if se < 1e-14 * max(1.0, abs(mean)):
        se = 0.0
    return IntegralEstimate(complex(mean), se, n, "monte_carlo", seed)


def torus_grid(N: int, grid: int):
    """Eigenvalue grid and Weyl weights for ``N``-dimensional torus quadrature.

    Returns ``(t, w)`` with ``t.shape == (grid**N, N)`` and weights
    ``|Delta(t)|**2 / (N! grid**N)`` summing to one.
    """
    if N > MAX_TORUS_RANK or N < 1:
        raise UnsupportedRankError(f"torus quadrature supports 1 <= N <= {MAX_TORUS_RANK}, got {N}")
    if grid < 8:
        raise ValueError("grid must have at least 8 points per angle")
    theta = 2 * np.pi * np.arange(grid) / grid
    mesh = np.meshgrid(*([theta] * N), indexing="ij")
    t = np.exp(1j * np.stack([m.reshape(-1) for m in mesh], axis=-1))
    vdm = np.ones(t.shape[0], dtype=complex)
    for i in range(N):
        for j in range(i + 1, N):
            vdm *= t[:, i] - t[:, j]
    w = np.abs(vdm) ** 2 / (math.factorial(N) * grid**N)
    return t, w


def torus_integrate(
    f: Callable, N: int, grid_points_per_angle: int = 64, *, vectorized: bool = False
) -> IntegralEstimate:
    """Rectangle rule for ``int dU f`` on the eigenvalue torus (Weyl measure)."""
    t, w = torus_grid(N, grid_points_per_angle)
    keep = w > 0
    t, w = t[keep], w[keep]
    total = 0j
    for start in range(0, len(w), BLOCK_SIZE):
        vals = _evaluate(f, t[start : start + BLOCK_SIZE], vectorized, unit_circle=True)
        total += complex(np.sum(vals * w[start : start + BLOCK_SIZE]))
    return IntegralEstimate(total, 0.0, grid_points_per_angle**N, "torus_quadrature", None)


def default_grid(g: GeneralizedLabel) -> int:
    return max(64, 4 * (boxes(g.shape) + abs(g.det_power) + g.N))


def extract_coefficient(
    a: CoefficientSequence,
    g: GeneralizedLabel,
    method: str = "torus",
    *,
    grid: Optional[int] = None,
    n_samples: int = 100_000,
    seed: Optional[int] = 0,
    radius: float = 1.0,
    full: bool = False,
):
    """Coefficient of ``chi_g`` in ``prod_i G(t_i)`` by projecting with orthogonality.

    Integrates ``prod_i G(radius * t_i) * conj(chi_g(t))`` over U(N) and divides
    by ``radius ** degree(g)``. ``radius < 1`` moves the contour inside the
    unit disk, for series whose closed form has poles on the circle.

    Returns the complex estimate, or the :class:`IntegralEstimate` itself
    when ``full`` is set.
    """
    N = g.N
    exps = np.asarray(g.exponents, dtype=np.int64)

    def integrand(t):
        prod = np.prod(a.G(radius * t), axis=-1)
        return prod * np.conj(generalized_char_values(exps, t))

    if method in ("torus", "torus_quadrature"):
        est = torus_integrate(integrand, N, grid or default_grid(g), vectorized=True)
    elif method in ("mc", "monte_carlo"):
        est = mc_integrate(integrand, N, n_samples, seed, vectorized=True)
    else:
        raise ValueError(f"unknown integration method {method!r}")
    scale = radius ** g.degree
    if scale != 1.0:
        est = IntegralEstimate(
            est.value / scale, est.std_error / abs(scale), est.n_samples, est.method, est.seed
        )
    return est if full else complex(est.value)


def gram_matrix(
    labels: Sequence[GeneralizedLabel],
    N: int,
    method: str = "torus",
    *,
    grid: int = 128,
    n_samples: int = 100_000,
    seed: Optional[int] = 0,
):
    """Matrix of ``int chi_r conj(chi_s) dU`` and its entrywise standard errors.

    All entries are estimated from one shared point set.
    """
    exps = np.array([g.exponents for g in labels], dtype=np.int64).reshape(-1, N)
    K = len(exps)
    if method in ("torus", "torus_quadrature"):
        t, w = torus_grid(N, grid)
        keep = w > 0
        t, w = t[keep], w[keep]
        chars = generalized_char_values(exps[:, None, :], t[None, :, :])
        gram = (chars * w) @ chars.conj().T
        return gram, np.zeros((K, K))
    if method not in ("mc", "monte_carlo"):
        raise ValueError(f"unknown integration method {method!r}")
    s1 = np.zeros((K, K), dtype=complex)
    s2_re = np.zeros((K, K))
    s2_im = np.zeros((K, K))
    for size, rng in _blocks(n_samples, seed, BLOCK_SIZE):
        t = sample_eigenvalues(N, size, rng)
        chars = generalized_char_values(exps[:, None, :], t[None, :, :])
        prod = chars[:, None, :] * chars.conj()[None, :, :]
        s1 += prod.sum(axis=-1)
        s2_re += np.sum(prod.real**2, axis=-1)
        s2_im += np.sum(prod.imag**2, axis=-1)
    n = n_samples
    mean = s1 / n
    var = (np.maximum(s2_re / n - mean.real**2, 0) + np.maximum(s2_im / n - mean.imag**2, 0))
    return mean, np.sqrt(var / (n - 1))


def bessel_check(x: float, method: str = "torus", *, grid: int = 64, n_samples: int = 100_000,
                 seed: Optional[int] = 0, full: bool = False):
    """``int dU exp(x (Tr U + Tr U^H))`` over U(1) next to ``I_0(2x)``."""
    from .genfunc import bessel_like

    seq = bessel_like(x)

    def integrand(t):
        return np.exp(x * (t[..., 0] + np.conj(t[..., 0])))

    if method in ("torus", "torus_quadrature"):
        est = torus_integrate(integrand, 1, grid, vectorized=True)
    else:
        est = mc_integrate(integrand, 1, n_samples, seed, vectorized=True)
    ref = seq.eval(0)
    return (est, ref) if full else (complex(est.value), ref)
