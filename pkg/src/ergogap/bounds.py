"""Upper bounds on the ergotropic gap of separable states, and the witnesses built on them."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InternalInconsistency, LengthMismatch, OutOfRange, UnsupportedDimension
from .ergotropy import ergotropic_gap
from .ladder import LadderSpec, cumulative_D, decompose_level, slot_table, total_D
from .state import DensityMatrix, global_spectrum, marginal_spectrum

log = logging.getLogger(__name__)

ENTANGLED = "Entangled"
INCONCLUSIVE = "Inconclusive"
DEFAULT_DECISION_TOL = 1e-9
MAJORIZATION_SLACK = 1e-9
Z_ROUTE_TOL = 1e-9


@dataclass(frozen=True)
class WitnessVerdict:
    """Bounds and verdict for one state, all energies in units of E.

    ``gap``, ``verdict`` and ``margin`` are ``None`` when only the bounds
    were requested.
    """

    y: float
    z: float
    y_minus_z: float
    m_d: float
    min_bound: float
    gap: float | None = None
    verdict: str | None = None
    margin: float | None = None

    def as_dict(self) -> dict:
        return asdict(self)


def _check_length(x: np.ndarray, d: int) -> None:
    if x.size != d**3:
        raise LengthMismatch(f"spectrum length {x.size} != d^3 = {d**3}")


def bound_Y(spectrum, d: int) -> float:
    """``3 * sum_{i<d} i x_i + 3(d-1) * sum_{i>=d} x_i``."""
    x = np.asarray(spectrum, dtype=float)
    _check_length(x, d)
    return float(3.0 * np.dot(np.arange(d), x[:d]) + 3.0 * (d - 1) * x[d:].sum())


def z_triple_sum(spectrum, d: int) -> float:
    """Global passive energy summed level block by level block.

    Walks the three index families of the passive assignment (levels up to
    ``d-1``, levels ``d .. 2d-2``, levels ``2d-1 .. 3d-3``) using only the
    tetrahedral-number offsets, independent of :func:`slot_table`.
    """
    x = np.asarray(spectrum, dtype=float)
    _check_length(x, d)
    D = total_D(d)
    total = 0.0
    for i in range(1, d):
        start = cumulative_D(i)
        for j in range((i + 1) * (i + 2) // 2):
            total += i * x[start + j]
    for i in range(1, d):
        start = cumulative_D(d + i - 1) - 3 * cumulative_D(i - 1)
        for k in range((d + i) * (d + i + 1) // 2 - 3 * i * (i + 1) // 2):
            total += (d - 1 + i) * x[start + k]
    for i in range(1, d):
        start = D - cumulative_D(d - i)
        for l in range((d - i) * (d - i + 1) // 2):
            total += (2 * d - 2 + i) * x[start + l]
    return total


def bound_Z(spectrum, d: int) -> float:
    """Global passive energy in units of E, cross-checked against :func:`z_triple_sum`."""
    x = np.asarray(spectrum, dtype=float)
    _check_length(x, d)
    paired = float(np.dot(x, slot_table(LadderSpec(d)).slot_energies))
    walked = z_triple_sum(x, d)
    if abs(paired - walked) > Z_ROUTE_TOL:
        raise InternalInconsistency(f"passive pairing {paired!r} != level walk {walked!r} for d={d}")
    return paired


def m_bound_sum(d: int) -> Fraction:
    """``3(d-1)/2 - (sum_{i=1}^{l-1} i(i+1)(i+2)/2 + l(m+1)) / d`` with ``(l, m)`` from ``d-1``."""
    l, m = decompose_level(d - 1)
    inner = sum(i * (i + 1) * (i + 2) // 2 for i in range(1, l)) + l * (m + 1)
    return Fraction(3 * (d - 1), 2) - Fraction(inner, d)


def m_bound_lowest_slots(d: int) -> Fraction:
    """``3(d-1)/2`` minus the mean of the ``d`` lowest ladder slots."""
    lowest = sum(slot_table(LadderSpec(d)).slot_energies[:d])
    return Fraction(3 * (d - 1), 2) - Fraction(lowest, d)


def m_bound_polynomial(d: int) -> Fraction:
    """The quartic shorthand ``3(d-1)/2 - (l/d)((l^3+2l^2-5l+2)/8 + m + 1)``.

    Kept for comparison only; it departs from :func:`m_bound_sum` from d=5 on.
    """
    l, m = decompose_level(d - 1)
    return Fraction(3 * (d - 1), 2) - Fraction(l, d) * (Fraction(l**3 + 2 * l**2 - 5 * l + 2, 8) + m + 1)


@lru_cache(maxsize=None)
def bound_M(d: int) -> float:
    if d < 2:
        raise OutOfRange(f"d must be >= 2, got {d}")
    summed = m_bound_sum(d)
    lowest = m_bound_lowest_slots(d)
    if summed != lowest:
        raise InternalInconsistency(f"M({d}) routes disagree: {summed} != {lowest}")
    poly = m_bound_polynomial(d)
    if poly != summed:
        log.warning("M(%d): closed-form polynomial gives %s, summation gives %s; using the summation", d, poly, summed)
    return float(summed)


def _bounds(rho: DensityMatrix) -> WitnessVerdict:
    x = global_spectrum(rho)
    y = bound_Y(x, rho.d)
    z = bound_Z(x, rho.d)
    m_d = bound_M(rho.d)
    return WitnessVerdict(y=y, z=z, y_minus_z=y - z, m_d=m_d, min_bound=min(y - z, m_d))


def separable_bound(rho: DensityMatrix, spec: LadderSpec | None = None) -> WitnessVerdict:
    """Bound fields only; ``min_bound * E`` caps the gap of any separable state."""
    return _bounds(rho)


def witness(
    rho: DensityMatrix,
    spec: LadderSpec | None = None,
    decision_tol: float = DEFAULT_DECISION_TOL,
) -> WitnessVerdict:
    """Flag ``rho`` as entangled when its gap beats the separable bound by more than ``decision_tol``.

    A negative outcome certifies nothing.
    """
    if decision_tol < 0:
        raise OutOfRange(f"decision tolerance must be >= 0, got {decision_tol}")
    b = _bounds(rho)
    gap = ergotropic_gap(rho, spec).gap
    margin = gap - b.min_bound
    verdict = ENTANGLED if margin > decision_tol else INCONCLUSIVE
    return WitnessVerdict(
        y=b.y, z=b.z, y_minus_z=b.y_minus_z, m_d=b.m_d, min_bound=b.min_bound,
        gap=gap, verdict=verdict, margin=margin,
    )


def majorizes(a, b, slack: float = MAJORIZATION_SLACK) -> bool:
    """True when ``a`` majorizes ``b`` (``a ≻ b``), zero-padding the shorter vector."""
    a = np.sort(np.asarray(a, dtype=float))[::-1]
    b = np.sort(np.asarray(b, dtype=float))[::-1]
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    ca, cb = np.cumsum(a), np.cumsum(b)
    if abs(ca[-1] - cb[-1]) > slack:
        return False
    return bool(np.all(ca[:-1] >= cb[:-1] - slack))


def nielsen_kempe_check(rho: DensityMatrix) -> tuple[bool, list[str]]:
    """Every marginal must majorize the global spectrum if ``rho`` is separable."""
    x = global_spectrum(rho)
    failing = [k for k in "ABC" if not majorizes(marginal_spectrum(rho, k), x)]
    return not failing, failing


_I2 = np.eye(2, dtype=np.complex128)
_SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def _kron3(a, b, c):
    return np.kron(np.kron(a, b), c)


OPERATOR_FAMILIES = {
    "GHZ-type": (_kron3(_SX, _SX, _SX), _kron3(_I2, _SZ, _SZ), _kron3(_SY, _SY, _SX)),
    "W-type": (_kron3(_I2, _SX, _SX), _kron3(_I2, _SY, _SY), _kron3(_SZ, _SZ, _SZ)),
}


def fixed_operator_witness(rho: DensityMatrix, family: str) -> tuple[float, bool]:
    """Largest ``|<O1> ± <O2> ± <O3>|`` over the four sign choices; separable qubit states stay <= 1."""
    if rho.d != 2:
        raise UnsupportedDimension(f"fixed-operator witnesses need d=2, got d={rho.d}")
    try:
        ops = OPERATOR_FAMILIES[family]
    except KeyError:
        raise OutOfRange(f"unknown operator family {family!r}") from None
    e1, e2, e3 = (float(np.trace(rho.mat @ op).real) for op in ops)
    value = max(abs(e1 + s2 * e2 + s3 * e3) for s2 in (1, -1) for s3 in (1, -1))
    return value, value > 1.0 + 1e-9
