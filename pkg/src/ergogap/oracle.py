"""Brute-force cross-checks for the analytic machinery.

Because ``H_ABC`` is diagonal, the minimum of ``Tr(U rho U^† H)`` over
unitaries is reached by a ``U`` that sends the eigenvectors of ``rho`` onto
energy basis states: the energy is then ``sum_k x_k e_sigma(k)`` for some
permutation ``sigma``. Minimizing over all permutations is therefore exact.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from .errors import OutOfRange, TooLarge
from .gallery import SeededStream
from .ladder import LadderSpec, level_diagonal
from .state import DensityMatrix

MAX_PERMUTATION_LENGTH = 8


@lru_cache(maxsize=None)
def _permutations(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.intp)


def brute_force_passive_energy(spectrum, energies) -> float:
    """Minimum of ``sum_k x[sigma(k)] * e[k]`` over every permutation ``sigma``."""
    x = np.asarray(spectrum, dtype=float)
    e = np.asarray(energies, dtype=float)
    if x.size != e.size:
        raise OutOfRange(f"spectrum length {x.size} != ladder length {e.size}")
    if x.size > MAX_PERMUTATION_LENGTH:
        raise TooLarge(f"exhaustive search limited to {MAX_PERMUTATION_LENGTH} slots, got {x.size}")
    return float((x[_permutations(x.size)] @ e).min())


def brute_force_degeneracy(e: int, d: int) -> int:
    if e < 0 or e > 3 * (d - 1):
        raise OutOfRange(f"level {e} outside [0, {3 * (d - 1)}] for d={d}")
    count = 0
    for a in range(d):
        for b in range(d):
            for c in range(d):
                if a + b + c == e:
                    count += 1
    return count


def _random_two_level_unitary_apply(m: np.ndarray, stream: SeededStream, rotations: int) -> np.ndarray:
    n = m.shape[0]
    for _ in range(rotations):
        p = int(stream.uniform() * n)
        q = int(stream.uniform() * (n - 1))
        if q >= p:
            q += 1
        theta = 0.5 * math.pi * stream.uniform()
        alpha = 2.0 * math.pi * stream.uniform()
        beta = 2.0 * math.pi * stream.uniform()
        g = np.array(
            [
                [math.cos(theta) * np.exp(1j * alpha), math.sin(theta) * np.exp(1j * beta)],
                [-math.sin(theta) * np.exp(-1j * beta), math.cos(theta) * np.exp(-1j * alpha)],
            ]
        )
        idx = [p, q]
        m[idx, :] = g @ m[idx, :]
        m[:, idx] = m[:, idx] @ g.conj().T
    return m


def random_unitary_energy_probe(rho: DensityMatrix, spec: LadderSpec, trials: int, seed: int) -> float:
    """Lowest ``Tr(U rho U^† H)`` seen over ``trials`` random unitaries.

    Each unitary is a product of ``2 n`` random two-level rotations. The
    result can only sit above the true passive energy.
    """
    if trials < 1:
        raise OutOfRange(f"trials must be >= 1, got {trials}")
    stream = SeededStream(seed)
    levels = level_diagonal(rho.d) * spec.quantum
    n = rho.side
    best = math.inf
    for _ in range(trials):
        m = _random_two_level_unitary_apply(np.array(rho.mat), stream, 2 * n)
        best = min(best, float(np.dot(np.diagonal(m).real, levels)))
    return best
