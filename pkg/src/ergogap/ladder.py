"""Energy ladder of three non-interacting d-level systems.

Each party carries ``H_X = diag(0, E, ..., (d-1)E)``, so the joint basis
state ``|abc>`` sits at energy ``(a + b + c) E``. Everything here works in
integer multiples of ``E``; the quantum itself only enters when a matrix is
materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OutOfRange
from .linalg import SIZE_CAP, tensor_product


@dataclass(frozen=True)
class LadderSpec:
    d: int
    quantum: float = 1.0

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise OutOfRange(f"local dimension must be an integer >= 2, got {self.d!r}")
        if not self.quantum > 0:
            raise OutOfRange(f"energy quantum must be positive, got {self.quantum!r}")

    @property
    def top_level(self) -> int:
        return 3 * (self.d - 1)


@dataclass(frozen=True)
class Level:
    energy: int
    degeneracy: int
    start: int


@dataclass(frozen=True)
class SlotTable:
    d: int
    levels: tuple[Level, ...]
    slot_energies: tuple[int, ...]

    def energies(self, quantum: float = 1.0) -> np.ndarray:
        return np.asarray(self.slot_energies, dtype=float) * quantum


def local_hamiltonian(spec: LadderSpec) -> np.ndarray:
    return np.diag(np.arange(spec.d) * spec.quantum).astype(np.complex128)


def level_diagonal(d: int) -> np.ndarray:
    """``a + b + c`` for every basis index ``a*d^2 + b*d + c``."""
    r = np.arange(d)
    return (r[:, None, None] + r[None, :, None] + r[None, None, :]).reshape(-1)


def global_hamiltonian(spec: LadderSpec, cap: int = SIZE_CAP) -> np.ndarray:
    h = local_hamiltonian(spec)
    eye = np.eye(spec.d, dtype=np.complex128)
    return (
        tensor_product(tensor_product(h, eye), eye, cap=cap)
        + tensor_product(tensor_product(eye, h), eye, cap=cap)
        + tensor_product(tensor_product(eye, eye), h, cap=cap)
    )


def degeneracy(e: int, d: int) -> int:
    """Number of ``(a, b, c)`` in ``[0, d-1]^3`` with ``a + b + c = e``."""
    if e < 0 or e > 3 * (d - 1):
        raise OutOfRange(f"level {e} outside [0, {3 * (d - 1)}] for d={d}")
    count = 0
    for a in range(d):
        lo = max(0, e - a - (d - 1))
        hi = min(d - 1, e - a)
        if hi >= lo:
            count += hi - lo + 1
    return count


def degeneracy_closed_form(e: int, d: int) -> int:
    """Per-level slot counts from the three piecewise composition formulas."""
    if e < 0 or e > 3 * (d - 1):
        raise OutOfRange(f"level {e} outside [0, {3 * (d - 1)}] for d={d}")
    if e <= d - 1:
        return (e + 1) * (e + 2) // 2
    if e <= 2 * d - 2:
        i = e - (d - 1)
        return (d + i) * (d + i + 1) // 2 - 3 * i * (i + 1) // 2
    i = e - (2 * d - 2)
    return (d - i) * (d - i + 1) // 2


def cumulative_D(i: int) -> int:
    """Tetrahedral number ``i(i+1)(i+2)/6``."""
    if i < 0:
        raise OutOfRange(f"index must be >= 0, got {i}")
    return i * (i + 1) * (i + 2) // 6


def total_D(d: int) -> int:
    """``(2d-1)2d(2d+1)/6 - (d-1)d(d+1)/3``; algebraically equal to ``d**3``."""
    return (2 * d - 1) * 2 * d * (2 * d + 1) // 6 - (d - 1) * d * (d + 1) // 3


def level_start_closed_form(e: int, d: int) -> int:
    """Index of the first slot at level ``e`` from the tetrahedral-number formulas."""
    if e < 0 or e > 3 * (d - 1):
        raise OutOfRange(f"level {e} outside [0, {3 * (d - 1)}] for d={d}")
    if e <= d - 1:
        return cumulative_D(e)
    if e <= 2 * d - 2:
        i = e - (d - 1)
        return cumulative_D(d + i - 1) - 3 * cumulative_D(i - 1)
    i = e - (2 * d - 2)
    return total_D(d) - cumulative_D(d - i)


@lru_cache(maxsize=None)
def _slot_table(d: int) -> SlotTable:
    levels = []
    start = 0
    for e in range(3 * (d - 1) + 1):
        g = degeneracy(e, d)
        levels.append(Level(e, g, start))
        start += g
    slots = tuple(lv.energy for lv in levels for _ in range(lv.degeneracy))
    return SlotTable(d, tuple(levels), slots)


def slot_table(spec: LadderSpec) -> SlotTable:
    return _slot_table(spec.d)


def decompose_level(n: int) -> tuple[int, int]:
    """Split ``n`` as ``D_l + m`` with the largest admissible ``l``.

    The result satisfies ``0 <= m < (l+1)(l+2)/2``, i.e. ``m`` indexes a
    slot inside level ``l``.
    """
    if n < 0:
        raise OutOfRange(f"n must be >= 0, got {n}")
    l = 0
    while cumulative_D(l + 1) <= n:
        l += 1
    return l, n - cumulative_D(l)
