"""Validated tripartite density matrices and their spectra."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    BadLength,
    DimensionMismatch,
    InvalidState,
    NotNormalized,
    WeightSum,
)
from .linalg import DEFAULT_TOL, as_matrix, hermitian_deviation, hermitian_eigenvalues, partial_trace

TRACE_TOL = 1e-9
NEGATIVITY_TOL = 1e-9
RENORMALIZE_TOL = 1e-6


@dataclass
class ValidationReport:
    d: int
    side: int
    hermitian_deviation: float
    trace: float
    min_eigenvalue: float | None
    problems: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.problems

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "d": self.d,
            "side": self.side,
            "hermitian_deviation": self.hermitian_deviation,
            "trace": self.trace,
            "min_eigenvalue": self.min_eigenvalue,
            "problems": list(self.problems),
        }


def cube_root(n: int) -> int | None:
    r = round(n ** (1.0 / 3.0))
    for c in (r - 1, r, r + 1):
        if c >= 1 and c**3 == n:
            return c
    return None


def validate_matrix(mat, d: int, tol: float = DEFAULT_TOL) -> tuple[ValidationReport, np.ndarray | None]:
    """Check that ``mat`` is a d x d x d density matrix.

    Returns the report and, when the matrix is Hermitian, its eigenvalues
    (nonincreasing) so callers need not diagonalize twice.
    """
    a = as_matrix(mat)
    side = a.shape[0]
    dev = hermitian_deviation(a)
    tr = complex(np.trace(a))
    report = ValidationReport(d=d, side=side, hermitian_deviation=dev, trace=tr.real, min_eigenvalue=None)

    if d < 2 or side != d**3:
        report.problems.append(f"matrix side {side} is not d^3 for d={d}")
    if abs(tr.imag) > TRACE_TOL or abs(tr.real - 1.0) > TRACE_TOL:
        report.problems.append(f"trace {tr.real:.12g} differs from 1 by more than {TRACE_TOL:g}")
    if dev > tol:
        report.problems.append(f"not Hermitian: max deviation {dev:.3e} exceeds {tol:g}")
        return report, None

    evals = hermitian_eigenvalues(a, tol=tol)
    report.min_eigenvalue = float(evals[-1])
    if evals[-1] < -NEGATIVITY_TOL:
        report.problems.append(f"negative eigenvalue {evals[-1]:.3e}")
    return report, evals


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated state on ``C^d ⊗ C^d ⊗ C^d``.

    Basis order is ``|i_A i_B i_C>`` at index ``i_A*d^2 + i_B*d + i_C``.
    """

    d: int
    mat: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        a = np.array(as_matrix(self.mat), copy=True)
        a.setflags(write=False)
        object.__setattr__(self, "mat", a)
        report, evals = validate_matrix(a, self.d, self.tol)
        if not report.valid:
            raise InvalidState("; ".join(report.problems))
        self.__dict__["eigenvalues"] = evals

    @property
    def side(self) -> int:
        return self.mat.shape[0]

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return hermitian_eigenvalues(self.mat, tol=self.tol)

    def populations(self) -> np.ndarray:
        return np.diagonal(self.mat).real.copy()

    def reduced(self, which) -> np.ndarray:
        return partial_trace(self.mat, (self.d,) * 3, which)


def to_spectrum(evals, tol: float = NEGATIVITY_TOL) -> np.ndarray:
    """Clamp rounding noise to [0, 1] and renormalize to unit sum."""
    x = np.sort(np.asarray(evals, dtype=float))[::-1]
    if x.size and x[-1] < -tol:
        raise InvalidState(f"eigenvalue {x[-1]:.3e} below -{tol:g}")
    if x.size and x[0] > 1.0 + tol:
        raise InvalidState(f"eigenvalue {x[0]:.12g} above 1 + {tol:g}")
    x = np.clip(x, 0.0, 1.0)
    total = x.sum()
    if total <= 0.0:
        raise InvalidState("spectrum has zero total weight")
    return x / total


def from_pure(amplitudes) -> DensityMatrix:
    """``|psi><psi|`` from ``d^3`` amplitudes; near-unit vectors are renormalized."""
    psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    d = cube_root(psi.size)
    if d is None or d < 2:
        raise BadLength(f"amplitude count {psi.size} is not a cube of an integer >= 2")
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > RENORMALIZE_TOL:
        raise NotNormalized(f"amplitude norm {norm:.12g} deviates from 1 by more than {RENORMALIZE_TOL:g}")
    psi = psi / norm
    return DensityMatrix(d, np.outer(psi, psi.conj()))


def mix(components) -> DensityMatrix:
    """Convex combination of ``(weight, DensityMatrix)`` pairs."""
    components = list(components)
    if not components:
        raise WeightSum("no components to mix")
    weights = [float(w) for w, _ in components]
    if min(weights) < 0:
        raise WeightSum(f"negative weight {min(weights)}")
    if abs(sum(weights) - 1.0) > TRACE_TOL:
        raise WeightSum(f"weights sum to {sum(weights):.12g}, not 1")
    d = components[0][1].d
    if any(rho.d != d for _, rho in components):
        raise DimensionMismatch("components have different local dimensions")
    acc = np.zeros((d**3, d**3), dtype=np.complex128)
    for w, rho in components:
        acc += w * rho.mat
    return DensityMatrix(d, acc)


def global_spectrum(rho: DensityMatrix) -> np.ndarray:
    return to_spectrum(rho.eigenvalues)


def marginal_spectrum(rho: DensityMatrix, which) -> np.ndarray:
    return to_spectrum(hermitian_eigenvalues(rho.reduced(which), tol=rho.tol))
