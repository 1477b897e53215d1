"""Coefficient sequences ``n -> A_n`` of one-variable generating functions.

A :class:`CoefficientSequence` wraps a coefficient rule with a declared
integer support. Values outside the support are zero no matter what the rule
returns. Builtins also carry the closed form ``G(t)`` so expansions can be
checked against direct evaluation.
"""
from __future__ import annotations

import math
import threading
from typing import Callable, Optional

import numpy as np

from .errors import ConvergenceDomainError, SingularEvaluationError, UnsupportedSupportError

__all__ = [
    "CoefficientSequence",
    "geometric",
    "quadratic",
    "chebyshev_u",
    "exponential",
    "bessel_like",
    "finite",
    "series_product",
    "BUILTINS",
    "from_name",
]

INF = math.inf


class CoefficientSequence:
    """Coefficients of ``G(t) = sum_n A_n t**n`` with a fixed parameter.

    Parameters
    ----------
    rule : callable
        ``rule(n) -> complex``, only called for ``n`` inside ``support``.
    support : (lo, hi)
        Inclusive integer bounds; either may be ``-math.inf`` / ``math.inf``.
    nonneg_coeffs : bool
        Every coefficient is real and non-negative.
    name : str
        Short identifier used in reports.
    closed_form : callable, optional
        ``closed_form(t)`` evaluating ``G`` itself; must accept numpy arrays.
    params : dict, optional
        Parameter values bound into the sequence, for reporting.
    """

    def __init__(
        self,
        rule: Callable[[int], complex],
        support: tuple[float, float],
        *,
        nonneg_coeffs: bool = False,
        name: str = "sequence",
        closed_form: Optional[Callable[[complex], complex]] = None,
        params: Optional[dict] = None,
    ):
        lo, hi = support
        if lo > hi:
            raise ValueError(f"empty support {support}")
        self._rule = rule
        self.support = (lo, hi)
        self.nonneg_coeffs = bool(nonneg_coeffs)
        self.name = name
        self.closed_form = closed_form
        self.params = dict(params or {})
        self._memo: dict[int, complex] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"<CoefficientSequence {self.name}({args}) support={self.support}>"

    def in_support(self, n: int) -> bool:
        return self.support[0] <= n <= self.support[1]

    @property
    def one_sided(self) -> bool:
        """True when ``A_n = 0`` for every negative ``n``."""
        return self.support[0] >= 0

    def eval(self, n: int) -> complex:
        n = int(n)
        if not self.in_support(n):
            return 0j
        val = self._memo.get(n)
        if val is None:
            val = complex(self._rule(n))
            with self._lock:
                self._memo.setdefault(n, val)
        return val

    __call__ = eval

    def table(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients ``A_lo .. A_hi`` as a complex array."""
        return np.array([self.eval(n) for n in range(lo, hi + 1)], dtype=complex)

    def partial_sum(self, t: complex, lo: int, hi: int) -> complex:
        """``sum_{n=lo}^{hi} A_n t**n``."""
        n = np.arange(lo, hi + 1)
        return complex(np.sum(self.table(lo, hi) * np.power(complex(t), n)))

    def G(self, t: complex) -> complex:
        if self.closed_form is None:
            raise NotImplementedError(f"{self.name} has no closed form")
        return self.closed_form(t)


def _guard_pole(den, what: str):
    if np.any(np.abs(den) < 1e-14):
        raise SingularEvaluationError(f"pole of {what}")
    return den


def geometric(z: complex) -> CoefficientSequence:
    """``G(t) = 1 / (1 - z t)``, ``A_n = z**n``."""
    z = complex(z)
    if abs(z) >= 1:
        raise ConvergenceDomainError(f"geometric needs |z| < 1, got {z}")
    nonneg = z.imag == 0 and z.real >= 0
    return CoefficientSequence(
        lambda n: z**n,
        (0, INF),
        nonneg_coeffs=nonneg,
        name="geometric",
        closed_form=lambda t: 1.0 / _guard_pole(1 - z * t, "1/(1-zt)"),
        params={"z": z},
    )


def quadratic(x: float) -> CoefficientSequence:
    """``G(t) = 1 - 2 x t + t**2``."""
    x = float(x)
    coeffs = (1.0, -2.0 * x, 1.0)
    return CoefficientSequence(
        lambda n: coeffs[n],
        (0, 2),
        nonneg_coeffs=x <= 0,
        name="quadratic",
        closed_form=lambda t: 1 - 2 * x * t + t * t,
        params={"x": x},
    )


def chebyshev_u(x: float) -> CoefficientSequence:
    """``G(t) = 1 / (1 - 2 x t + t**2) = sum_n U_n(x) t**n``.

    Coefficients come from ``U_n = 2x U_{n-1} - U_{n-2}``, extended on demand.
    """
    x = float(x)
    if abs(x) >= 1:
        raise ConvergenceDomainError(f"chebyshev-u needs |x| < 1, got {x}")
    cache = [1.0, 2.0 * x]
    lock = threading.Lock()

    def rule(n: int) -> float:
        if n >= len(cache):
            with lock:
                while len(cache) <= n:
                    cache.append(2.0 * x * cache[-1] - cache[-2])
        return cache[n]

    return CoefficientSequence(
        rule,
        (0, INF),
        nonneg_coeffs=False,
        name="chebyshev-u",
        closed_form=lambda t: 1.0 / _guard_pole(1 - 2 * x * t + t * t, "1/(1-2xt+t^2)"),
        params={"x": x},
    )


def exponential(x: complex) -> CoefficientSequence:
    """``G(t) = exp(x t)``, ``A_n = x**n / n!``."""
    x = complex(x)
    cache = [1.0 + 0j]
    lock = threading.Lock()

    def rule(n: int) -> complex:
        if n >= len(cache):
            with lock:
                while len(cache) <= n:
                    k = len(cache)
                    cache.append(cache[-1] * x / k)
        return cache[n]

    return CoefficientSequence(
        rule,
        (0, INF),
        nonneg_coeffs=x.imag == 0 and x.real >= 0,
        name="exponential",
        closed_form=lambda t: np.exp(x * np.asarray(t)),
        params={"x": x},
    )


def _bessel_i(n: int, x: float) -> float:
    # I_n(2x) = sum_k x^(2k+n) / (k! (k+n)!), ascending series
    n = abs(n)
    if x == 0:
        return 1.0 if n == 0 else 0.0
    term = 1.0
    for k in range(1, n + 1):
        term *= x / k
    total = term
    k = 0
    x2 = x * x
    while True:
        k += 1
        term *= x2 / (k * (k + n))
        total += term
        if abs(term) <= 1e-18 * abs(total):
            return total


def bessel_like(x: float) -> CoefficientSequence:
    """``G(t) = exp(x (t + 1/t))``, ``A_n = I_|n|(2x)``; two-sided support."""
    x = float(x)

    def closed(t):
        _guard_pole(t, "exp(x(t+1/t))")
        t = np.asarray(t, dtype=complex)
        return np.exp(x * (t + 1.0 / t))

    return CoefficientSequence(
        lambda n: _bessel_i(n, x),
        (-INF, INF),
        nonneg_coeffs=x >= 0,
        name="bessel",
        closed_form=closed,
        params={"x": x},
    )


def finite(coeffs, start: int = 0, name: str = "finite") -> CoefficientSequence:
    """Laurent polynomial ``sum_k coeffs[k] t**(start + k)``."""
    coeffs = tuple(complex(c) for c in coeffs)
    if not coeffs:
        raise ValueError("finite() needs at least one coefficient")

    def closed(t):
        if start < 0:
            _guard_pole(t, name)
        return sum(c * t ** (start + k) for k, c in enumerate(coeffs))

    return CoefficientSequence(
        lambda n: coeffs[n - start],
        (start, start + len(coeffs) - 1),
        nonneg_coeffs=all(c.imag == 0 and c.real >= 0 for c in coeffs),
        name=name,
        closed_form=closed,
        params={"coeffs": coeffs, "start": start},
    )


def series_product(
    a: CoefficientSequence, b: CoefficientSequence, clip: tuple[int, int]
) -> CoefficientSequence:
    """Cauchy product of two series, restricted to indices in ``clip``."""
    c_lo, c_hi = int(clip[0]), int(clip[1])
    a_lo, a_hi = a.support
    b_lo, b_hi = b.support
    if (a_lo == -INF and b_hi == INF) or (a_hi == INF and b_lo == -INF):
        raise UnsupportedSupportError(
            f"convolution of {a.name} and {b.name} is an infinite sum"
        )

    def rule(n: int) -> complex:
        k_lo = int(max(a_lo, n - b_hi))
        k_hi = int(min(a_hi, n - b_lo))
        return sum((a.eval(k) * b.eval(n - k) for k in range(k_lo, k_hi + 1)), 0j)

    closed = None
    if a.closed_form is not None and b.closed_form is not None:
        closed = lambda t: a.closed_form(t) * b.closed_form(t)  # noqa: E731
    lo = max(c_lo, a_lo + b_lo)
    hi = min(c_hi, a_hi + b_hi)
    if lo > hi:
        lo = hi = c_lo
        rule = lambda n: 0j  # noqa: E731
    return CoefficientSequence(
        rule,
        (lo, hi),
        nonneg_coeffs=a.nonneg_coeffs and b.nonneg_coeffs,
        name=f"{a.name}*{b.name}",
        closed_form=closed,
        params={"left": a.params, "right": b.params},
    )


BUILTINS = {
    "geometric": (geometric, "z"),
    "quadratic": (quadratic, "x"),
    "chebyshev-u": (chebyshev_u, "x"),
    "exponential": (exponential, "x"),
    "bessel": (bessel_like, "x"),
}


def from_name(name: str, params: dict) -> CoefficientSequence:
    """Construct a builtin from its CLI name and a ``{param: value}`` map."""
    try:
        factory, pname = BUILTINS[name]
    except KeyError:
        raise KeyError(f"unknown sequence {name!r}; choose from {sorted(BUILTINS)}") from None
    extra = set(params) - {pname}
    if extra:
        raise ValueError(f"{name} takes only parameter {pname!r}, got {sorted(extra)}")
    if pname not in params:
        raise ValueError(f"{name} needs parameter {pname!r}")
    return factory(params[pname])
