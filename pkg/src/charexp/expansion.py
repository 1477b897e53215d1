"""Character expansions of ``prod_i G(t_i)``.

For a generating function ``G(t) = sum_n A_n t**n`` the product over the
eigenvalues of ``U`` expands as

    prod_i G(t_i) = sum_{labels} det(A_{n_j + i - j}) (det U)**d chi_shape(U)

where ``n_j = shape_j + d``. When ``A_n`` vanishes for ``n < 0`` only
non-negative highest weights contribute and the sum can run directly over
partitions ``(n_1, ..., n_N)``.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import ResourceLimitError
from .genfunc import CoefficientSequence
from .partitions import (
    GeneralizedLabel,
    enumerate_labels,
    enumerate_partitions,
    format_label,
    from_exponents,
)
from .symfunc import EigenvalueSet, generalized_char_values

__all__ = [
    "ExpansionTerm",
    "Expansion",
    "coefficient",
    "coefficients",
    "expand",
    "reconstruct",
    "direct_product",
    "EXPANSION_SCHEMA",
    "MAX_TERMS",
    "PRUNE_RTOL",
]

MAX_TERMS = 10**6
PRUNE_RTOL = 1e-12
_CHUNK = 20000


@dataclass(frozen=True)
class ExpansionTerm:
    label: GeneralizedLabel
    coefficient: complex
    flagged_zero: bool = False

    def __post_init__(self):
        c = complex(self.coefficient)
        if not (np.isfinite(c.real) and np.isfinite(c.imag)):
            raise ValueError(f"non-finite coefficient at {format_label(self.label)}")
        object.__setattr__(self, "coefficient", c)


@dataclass
class Expansion:
    """Truncated character expansion, terms in enumeration order."""

    terms: list[ExpansionTerm]
    N: int
    source_name: str
    max_boxes: int
    det_power_range: tuple[int, int]
    mode: str = "generalized"
    prune_tol: float = 0.0
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def labels(self) -> list[GeneralizedLabel]:
        return [t.label for t in self.terms]

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t.coefficient for t in self.terms], dtype=complex)

    def exponents(self) -> np.ndarray:
        return np.array([t.label.exponents for t in self.terms], dtype=np.int64).reshape(
            -1, self.N
        )

    def __getitem__(self, label) -> complex:
        if self._index is None:
            self._index = {t.label: t.coefficient for t in self.terms}
        return self._index[label]

    def as_dict(self) -> dict[GeneralizedLabel, complex]:
        return {t.label: t.coefficient for t in self.terms}

    def nonzero(self) -> list[ExpansionTerm]:
        return [t for t in self.terms if not t.flagged_zero]

    # serialization -----------------------------------------------------

    def header(self) -> dict:
        return {
            "N": self.N,
            "source_name": self.source_name,
            "cutoffs": {
                "max_boxes": self.max_boxes,
                "det_power_range": list(self.det_power_range),
            },
            "mode": self.mode,
        }

    def to_json_dict(self) -> dict:
        out = self.header()
        out["terms"] = [
            {
                "label": format_label(t.label),
                "coefficient": [t.coefficient.real, t.coefficient.imag],
                "flagged_zero": t.flagged_zero,
            }
            for t in self.terms
        ]
        return out

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_json_dict(), indent=indent)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "re", "im", "flagged_zero"])
        for t in self.terms:
            writer.writerow(
                [
                    format_label(t.label),
                    repr(t.coefficient.real),
                    repr(t.coefficient.imag),
                    "true" if t.flagged_zero else "false",
                ]
            )
        return buf.getvalue()


EXPANSION_SCHEMA = {
    "type": "object",
    "required": ["N", "source_name", "cutoffs", "terms"],
    "properties": {
        "N": {"type": "integer", "minimum": 1},
        "source_name": {"type": "string"},
        "cutoffs": {
            "type": "object",
            "required": ["max_boxes", "det_power_range"],
            "properties": {
                "max_boxes": {"type": "integer", "minimum": 0},
                "det_power_range": {
                    "type": "array",
                    "items": {"type": "integer"},
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
        "mode": {"enum": ["generalized", "partition"]},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["label", "coefficient", "flagged_zero"],
                "additionalProperties": False,
                "properties": {
                    "label": {"type": "string", "pattern": r"^-?\d+(,-?\d+)*(@-?\d+)?$"},
                    "coefficient": {
                        "type": "array",
                        "items": {"type": "number"},
                        "minItems": 2,
                        "maxItems": 2,
                    },
                    "flagged_zero": {"type": "boolean"},
                },
            },
        },
    },
}


def _coefficient_matrices(a: CoefficientSequence, exps: np.ndarray):
    # exps: (K, N) highest weights -> (K, N, N) matrices A_{n_j + i - j}, plus max |A|
    N = exps.shape[-1]
    ii, jj = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    idx = exps[:, None, :] + ii - jj
    lo, hi = int(idx.min()), int(idx.max())
    tab = a.table(lo, hi)
    return tab[idx - lo], float(np.abs(tab).max(initial=0.0))


def coefficients(a: CoefficientSequence, labels: Iterable[GeneralizedLabel]) -> np.ndarray:
    """Vectorized :func:`coefficient` over many labels of the same rank."""
    exps = np.array([g.exponents for g in labels], dtype=np.int64)
    if exps.size == 0:
        return np.zeros(0, dtype=complex)
    mats, _ = _coefficient_matrices(a, exps)
    return np.linalg.det(mats)


def coefficient(a: CoefficientSequence, g: GeneralizedLabel) -> complex:
    """Expansion coefficient ``det(A_{n_j + i - j})`` of the irrep ``g``."""
    return complex(coefficients(a, [g])[0])


def _labels_for(a, N, max_boxes, det_power_range, max_terms):
    if det_power_range is None:
        if not a.one_sided:
            raise ValueError(
                f"{a.name} has negative-index coefficients; pass det_power_range"
            )
        source = (from_exponents(p.parts) for p in enumerate_partitions(N, max_boxes))
        mode, dpr = "partition", (0, max_boxes)
    else:
        lo, hi = (int(v) for v in det_power_range)
        if lo > hi:
            raise ValueError(f"empty det_power_range {det_power_range}")
        source = enumerate_labels(N, max_boxes, (lo, hi))
        mode, dpr = "generalized", (lo, hi)
    labels = []
    for g in source:
        labels.append(g)
        if len(labels) > max_terms:
            raise ResourceLimitError(
                f"expansion exceeds {max_terms} terms; lower max_boxes or the det_power range"
            )
    return labels, mode, dpr


def expand(
    a: CoefficientSequence,
    N: int,
    max_boxes: int,
    det_power_range: Optional[tuple[int, int]] = None,
    *,
    max_terms: int = MAX_TERMS,
) -> Expansion:
    """Truncated expansion of ``prod_i G(t_i)`` over U(N) characters.

    With ``det_power_range`` given, the sum runs over every label whose shape
    has at most ``max_boxes`` boxes and whose det power lies in the range.
    Without it (allowed only when ``A_n = 0`` for ``n < 0``) the sum runs over
    partitions ``(n_1, ..., n_N)`` with at most ``max_boxes`` boxes in total,
    and the recorded det power range is ``[0, max_boxes]``.

    Coefficients below ``1e-12 * max|A_n|`` are kept but flagged as zero.
    """
    if N < 1:
        raise ValueError(f"N must be positive, got {N}")
    if max_boxes < 0:
        raise ValueError(f"max_boxes must be non-negative, got {max_boxes}")
    labels, mode, dpr = _labels_for(a, N, max_boxes, det_power_range, max_terms)
    exps = np.array([g.exponents for g in labels], dtype=np.int64).reshape(-1, N)
    vals = np.empty(len(labels), dtype=complex)
    scale = 0.0
    for start in range(0, len(labels), _CHUNK):
        mats, s = _coefficient_matrices(a, exps[start : start + _CHUNK])
        vals[start : start + _CHUNK] = np.linalg.det(mats)
        scale = max(scale, s)
    tol = PRUNE_RTOL * scale
    terms = [
        ExpansionTerm(g, c, bool(abs(c) < tol) if tol > 0 else c == 0)
        for g, c in zip(labels, vals)
    ]
    return Expansion(
        terms=terms,
        N=N,
        source_name=a.name,
        max_boxes=max_boxes,
        det_power_range=dpr,
        mode=mode,
        prune_tol=tol,
    )


def reconstruct(e: Expansion, a: CoefficientSequence, t) -> complex:
    """Partial sum ``sum coefficient * chi_label(t)`` of the expansion."""
    vals = t.values if isinstance(t, EigenvalueSet) else np.asarray(t, dtype=complex)
    if vals.shape[-1] != e.N:
        raise ValueError(f"expansion is for N={e.N}, got {vals.shape[-1]} eigenvalues")
    exps = e.exponents()
    coeffs = e.coefficients
    total = 0j
    for start in range(0, len(coeffs), _CHUNK):
        chars = generalized_char_values(exps[start : start + _CHUNK], vals)
        total += complex(np.sum(coeffs[start : start + _CHUNK] * chars))
    return total


def direct_product(a: CoefficientSequence, t) -> complex:
    """``prod_i G(t_i)`` from the closed form of ``G``."""
    vals = t.values if isinstance(t, EigenvalueSet) else np.asarray(t, dtype=complex)
    out = 1.0 + 0j
    for ti in vals:
        out *= a.G(complex(ti))
    return out
