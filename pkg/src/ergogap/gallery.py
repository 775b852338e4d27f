"""Constructors for the three-party state families and seeded random states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange, UnsupportedDimension
from .state import DensityMatrix, from_pure

FAMILIES = (
    "ghz",
    "w",
    "ghz-w-superposition",
    "ghz-colored-noise",
    "ghz-white-noise",
    "classical-ghz-diag",
    "random-pure",
    "random-mixed",
    "product-mixture",
)
P_FAMILIES = ("ghz-w-superposition", "ghz-colored-noise", "ghz-white-noise")
QUBIT_ONLY = ("w", "ghz-w-superposition", "ghz-colored-noise", "ghz-white-noise")


class SeededStream:
    """Portable pseudo-random stream.

    Uniform doubles come from PCG64 (XSL-RR 128/64) seeded with the 64-bit
    integer ``seed``, each formed as ``(next_uint64 >> 11) * 2**-53``.
    Gaussians are drawn in pairs by Box-Muller from two consecutive uniforms
    ``u1, u2``: ``r = sqrt(-2 ln(1 - u1))``, ``(r cos 2πu2, r sin 2πu2)``.
    A standard complex Gaussian uses one pair as (real, imaginary).
    Flat Dirichlet weights are normalized ``-ln(1 - u)`` draws.
    """

    def __init__(self, seed: int):
        if not 0 <= int(seed) < 2**64:
            raise OutOfRange(f"seed must be a 64-bit unsigned integer, got {seed}")
        self._gen = np.random.Generator(np.random.PCG64(int(seed)))

    def uniform(self) -> float:
        return float(self._gen.random())

    def gaussian_pair(self) -> tuple[float, float]:
        u1, u2 = self.uniform(), self.uniform()
        r = math.sqrt(-2.0 * math.log(1.0 - u1))
        return r * math.cos(2.0 * math.pi * u2), r * math.sin(2.0 * math.pi * u2)

    def complex_gaussians(self, n: int) -> np.ndarray:
        out = np.empty(n, dtype=np.complex128)
        for k in range(n):
            re, im = self.gaussian_pair()
            out[k] = complex(re, im)
        return out

    def unit_vector(self, n: int) -> np.ndarray:
        v = self.complex_gaussians(n)
        return v / np.linalg.norm(v)

    def dirichlet_flat(self, k: int) -> np.ndarray:
        w = np.array([-math.log(1.0 - self.uniform()) for _ in range(k)])
        return w / w.sum()


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise OutOfRange(f"p must lie in [0, 1], got {p}")
    return p


def _check_d(d: int) -> int:
    if int(d) != d or d < 2:
        raise OutOfRange(f"d must be an integer >= 2, got {d}")
    return int(d)


def ghz_vector(d: int = 2) -> np.ndarray:
    d = _check_d(d)
    psi = np.zeros(d**3, dtype=np.complex128)
    for i in range(d):
        psi[i * (d * d + d + 1)] = 1.0
    return psi / math.sqrt(d)


def w_vector() -> np.ndarray:
    psi = np.zeros(8, dtype=np.complex128)
    psi[[4, 2, 1]] = 1.0 / math.sqrt(3.0)
    return psi


def ghz(d: int = 2) -> DensityMatrix:
    """``(1/sqrt d) sum_i |iii>``; beyond qubits this is an extension of the two-level GHZ state."""
    return from_pure(ghz_vector(d))


def w_state() -> DensityMatrix:
    return from_pure(w_vector())


def ghz_w_superposition(p: float) -> DensityMatrix:
    """``sqrt(p)|GHZ> + sqrt(1-p)|W>``, real relative amplitude."""
    p = _check_p(p)
    return from_pure(math.sqrt(p) * ghz_vector(2) + math.sqrt(1.0 - p) * w_vector())


def _basis_projector(index: int, d: int = 2) -> np.ndarray:
    m = np.zeros((d**3, d**3), dtype=np.complex128)
    m[index, index] = 1.0
    return m


def ghz_colored_noise(p: float) -> DensityMatrix:
    """``p/2 (|000><000| + |111><111|) + (1-p) |GHZ><GHZ|``."""
    p = _check_p(p)
    g = ghz_vector(2)
    m = 0.5 * p * (_basis_projector(0) + _basis_projector(7)) + (1.0 - p) * np.outer(g, g.conj())
    return DensityMatrix(2, m)


def ghz_white_noise(p: float) -> DensityMatrix:
    """``(1-p) I/8 + p |GHZ><GHZ|``."""
    p = _check_p(p)
    g = ghz_vector(2)
    return DensityMatrix(2, (1.0 - p) * np.eye(8) / 8.0 + p * np.outer(g, g.conj()))


def classical_ghz_diag(d: int) -> DensityMatrix:
    """``(1/d) sum_i |iii><iii|``: separable, with maximally mixed marginals."""
    d = _check_d(d)
    m = np.zeros((d**3, d**3), dtype=np.complex128)
    for i in range(d):
        k = i * (d * d + d + 1)
        m[k, k] = 1.0 / d
    return DensityMatrix(d, m)


def random_pure(d: int, seed: int) -> DensityMatrix:
    d = _check_d(d)
    return from_pure(SeededStream(seed).unit_vector(d**3))


def random_mixed(d: int, rank: int, seed: int) -> DensityMatrix:
    """Flat-Dirichlet mixture of ``rank`` random pure states.

    Stream order: all ``rank`` amplitude vectors, then the weights.
    """
    d = _check_d(d)
    if rank < 1:
        raise OutOfRange(f"rank must be >= 1, got {rank}")
    stream = SeededStream(seed)
    vecs = [stream.unit_vector(d**3) for _ in range(rank)]
    weights = stream.dirichlet_flat(rank)
    m = sum(w * np.outer(v, v.conj()) for w, v in zip(weights, vecs))
    return DensityMatrix(d, m)


def product_mixture(d: int, k_components: int, seed: int) -> DensityMatrix:
    """Flat-Dirichlet mixture of ``k_components`` random pure product states.

    Stream order: for each component the A, B, C factors, then the weights.
    """
    d = _check_d(d)
    if k_components < 1:
        raise OutOfRange(f"k_components must be >= 1, got {k_components}")
    stream = SeededStream(seed)
    vecs = []
    for _ in range(k_components):
        a, b, c = (stream.unit_vector(d) for _ in range(3))
        vecs.append(np.kron(np.kron(a, b), c))
    weights = stream.dirichlet_flat(k_components)
    m = sum(w * np.outer(v, v.conj()) for w, v in zip(weights, vecs))
    return DensityMatrix(d, m)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    d: int = 2
    p: float = 0.0
    seed: int = 0
    rank: int = 2
    k_components: int = 3

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise OutOfRange(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        _check_p(self.p)
        _check_d(self.d)
        if self.family in QUBIT_ONLY and self.d != 2:
            raise UnsupportedDimension(f"family {self.family!r} is defined for d=2 only")


def build(spec: FamilySpec) -> DensityMatrix:
    f = spec.family
    if f == "ghz":
        return ghz(spec.d)
    if f == "w":
        return w_state()
    if f == "ghz-w-superposition":
        return ghz_w_superposition(spec.p)
    if f == "ghz-colored-noise":
        return ghz_colored_noise(spec.p)
    if f == "ghz-white-noise":
        return ghz_white_noise(spec.p)
    if f == "classical-ghz-diag":
        return classical_ghz_diag(spec.d)
    if f == "random-pure":
        return random_pure(spec.d, spec.seed)
    if f == "random-mixed":
        return random_mixed(spec.d, spec.rank, spec.seed)
    return product_mixture(spec.d, spec.k_components, spec.seed)

