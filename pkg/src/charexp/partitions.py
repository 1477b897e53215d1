"""Partitions, U(N) representation labels and their enumeration.

A U(N) irrep with non-negative highest weight is a :class:`Partition` of
exactly ``N`` parts. Irreps whose last row may be negative are written as a
:class:`GeneralizedLabel`: a shape with vanishing last row times an integer
power of ``det U``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvalidLabelError

__all__ = [
    "Partition",
    "GeneralizedLabel",
    "boxes",
    "from_m_vector",
    "from_exponents",
    "enumerate_labels",
    "enumerate_partitions",
    "parse_label",
    "format_label",
]


@dataclass(frozen=True, order=False)
class Partition:
    """Weakly decreasing non-negative row lengths, trailing zeros included."""

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int]):
        parts = tuple(int(p) for p in parts)
        if len(parts) == 0:
            raise InvalidLabelError("a partition needs at least one row")
        if any(p < 0 for p in parts):
            raise InvalidLabelError(f"negative part in {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidLabelError(f"parts {parts} are not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def N(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class GeneralizedLabel:
    """``(det U)**det_power`` times the irrep ``shape`` (whose last row is 0)."""

    shape: Partition
    det_power: int = 0

    def __post_init__(self):
        if not isinstance(self.shape, Partition):
            object.__setattr__(self, "shape", Partition(self.shape))
        if self.shape.parts[-1] != 0:
            raise InvalidLabelError(
                f"shape {self.shape.parts} must end in 0; move the common "
                "part into det_power"
            )
        object.__setattr__(self, "det_power", int(self.det_power))

    @property
    def N(self) -> int:
        return self.shape.N

    @property
    def exponents(self) -> tuple[int, ...]:
        """Highest weight ``n_i = l_i + det_power``."""
        return tuple(p + self.det_power for p in self.shape.parts)

    @property
    def m_vector(self) -> tuple[int, ...]:
        """Row differences ``m_i = l_i - l_{i+1}`` for ``i < N``."""
        p = self.shape.parts
        return tuple(p[i] - p[i + 1] for i in range(len(p) - 1))

    @property
    def degree(self) -> int:
        """Total polynomial degree ``sum(n_i)`` (may be negative)."""
        return boxes(self.shape) + self.N * self.det_power

    def __str__(self) -> str:
        return format_label(self)


def boxes(p: Partition) -> int:
    """Number of boxes in the Young diagram of ``p``."""
    parts = p.parts if isinstance(p, Partition) else p.shape.parts
    return sum(parts)


def from_m_vector(m: Sequence[int], det_power: int, N: int) -> GeneralizedLabel:
    """Build the label with row lengths ``l_i = m_i + ... + m_{N-1}``."""
    m = [int(v) for v in m]
    if N < 1:
        raise InvalidLabelError(f"N must be positive, got {N}")
    if len(m) != N - 1:
        raise InvalidLabelError(f"expected {N - 1} m-values for N={N}, got {len(m)}")
    if any(v < 0 for v in m):
        raise InvalidLabelError(f"m-vector {tuple(m)} has a negative entry")
    rows = [0] * N
    for i in range(N - 2, -1, -1):
        rows[i] = rows[i + 1] + m[i]
    return GeneralizedLabel(Partition(rows), det_power)


def from_exponents(n: Sequence[int]) -> GeneralizedLabel:
    """Split a (possibly negative) highest weight into shape and det power."""
    n = [int(v) for v in n]
    if any(a < b for a, b in zip(n, n[1:])):
        raise InvalidLabelError(f"exponents {tuple(n)} are not weakly decreasing")
    last = n[-1]
    return GeneralizedLabel(Partition([v - last for v in n]), last)


def _bounded_partitions(total: int, rows: int, largest: int) -> Iterator[tuple[int, ...]]:
    # partitions of `total` into exactly `rows` non-negative parts, each <= largest,
    # produced in ascending lexicographic order
    if rows == 0:
        if total == 0:
            yield ()
        return
    lo = -(-total // rows)
    for first in range(lo, min(total, largest) + 1):
        for rest in _bounded_partitions(total - first, rows - 1, first):
            yield (first,) + rest


def enumerate_partitions(N: int, max_boxes: int) -> Iterator[Partition]:
    """All partitions with at most ``N`` rows and at most ``max_boxes`` boxes.

    Graded order: total boxes ascending, then ascending lexicographic order
    on the parts.
    """
    if N < 1:
        raise InvalidLabelError(f"N must be positive, got {N}")
    for total in range(max_boxes + 1):
        for parts in _bounded_partitions(total, N, total):
            yield Partition(parts)


def enumerate_labels(
    N: int, max_boxes: int, det_power_range: tuple[int, int]
) -> Iterator[GeneralizedLabel]:
    """Every label with ``boxes(shape) <= max_boxes`` and det power in range.

    The shapes are the partitions with at most ``N - 1`` nonzero rows. Order is
    total boxes of the shape ascending, then lexicographic on the parts, then
    det power ascending.
    """
    lo, hi = (int(v) for v in det_power_range)
    if N < 1:
        raise InvalidLabelError(f"N must be positive, got {N}")
    for total in range(max_boxes + 1):
        if N == 1 and total > 0:
            break
        for head in _bounded_partitions(total, N - 1, total):
            shape = Partition(head + (0,))
            for d in range(lo, hi + 1):
                yield GeneralizedLabel(shape, d)


def format_label(label: GeneralizedLabel | Partition) -> str:
    """Text form ``"3,2,0"`` or ``"3,2,0@-1"``."""
    if isinstance(label, Partition):
        return str(label)
    text = str(label.shape)
    if label.det_power != 0:
        text += f"@{label.det_power}"
    return text


def parse_label(text: str) -> GeneralizedLabel:
    """Inverse of :func:`format_label`.

    A bare partition whose last part is nonzero (``"2,1"``) is accepted and
    normalized, so ``"2,1"`` and ``"1,0@1"`` parse to the same label.
    """
    text = text.strip()
    shape_text, sep, power_text = text.partition("@")
    try:
        parts = [int(tok) for tok in shape_text.split(",")]
        power = int(power_text) if sep else 0
    except ValueError:
        raise InvalidLabelError(f"malformed label {text!r}") from None
    if sep and parts[-1] != 0:
        raise InvalidLabelError(f"shape in {text!r} must end in 0")
    try:
        base = from_exponents(parts)
    except InvalidLabelError as exc:
        raise InvalidLabelError(f"malformed label {text!r}: {exc}") from None
    if not sep and any(p < 0 for p in parts):
        raise InvalidLabelError(f"negative part in {text!r}; use the '@' form")
    return GeneralizedLabel(base.shape, base.det_power + power)
