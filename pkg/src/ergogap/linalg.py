"""Dense complex linear algebra on small Hermitian matrices.

Matrices are plain ``numpy`` ``complex128`` arrays of shape ``(n, n)``.
Eigenvalues come from a cyclic Jacobi iteration written here rather than
LAPACK, so the test suite can hold it against ``numpy.linalg.eigvalsh`` as
an independent reference.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, SizeOverflow

DEFAULT_TOL = 1e-10
MAX_SWEEPS = 100
SIZE_CAP = 4096

SUBSYSTEMS = {"A": 0, "B": 1, "C": 2}


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a square complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {a.shape}")
    return a


def hermitian_deviation(m) -> float:
    """Largest entrywise ``|M[i, j] - conj(M[j, i])|``."""
    a = as_matrix(m)
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    return hermitian_deviation(m) <= tol


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # Circle-method tournament: every (p, q) pair appears exactly once per
    # sweep and pairs within a round are disjoint, so a whole round can be
    # applied as one vectorized similarity transform.
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _jacobi_round(a: np.ndarray, p: np.ndarray, q: np.ndarray) -> None:
    app = a[p, p].real
    aqq = a[q, q].real
    apq = a[p, q]
    mag = np.abs(apq)
    active = mag > 0.0
    safe = np.where(active, mag, 1.0)
    phase = np.where(active, apq / safe, 1.0)

    theta = (aqq - app) / (2.0 * safe)
    t = np.where(theta >= 0.0, 1.0, -1.0) / (np.abs(theta) + np.hypot(1.0, theta))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    # V = diag(1, conj(phase)) @ [[c, s], [-s, c]] on each (p, q) block.
    cols_p = a[:, p].copy()
    cols_q = a[:, q]
    a[:, p] = cols_p * c - cols_q * (s * phase.conj())
    a[:, q] = cols_p * s + cols_q * (c * phase.conj())

    rows_p = a[p, :].copy()
    rows_q = a[q, :]
    a[p, :] = rows_p * c[:, None] - rows_q * (s * phase)[:, None]
    a[q, :] = rows_p * s[:, None] + rows_q * (c * phase)[:, None]

    a[p, q] = 0.0
    a[q, p] = 0.0


def hermitian_eigenvalues(m, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted nonincreasing.

    Cyclic Jacobi rotations, stopping once the off-diagonal Frobenius norm
    drops to ``tol * ||m||_F``.

    Raises:
        NotHermitian: if ``m`` deviates from its adjoint by more than ``tol``.
        NoConvergence: if ``max_sweeps`` sweeps do not reach the target.
    """
    a = as_matrix(m)
    dev = hermitian_deviation(a)
    if dev > tol:
        raise NotHermitian(dev)

    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    target = tol * float(np.linalg.norm(a))
    rounds = _round_robin(n)

    sweeps = 0
    while _off_norm(a) > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(sweeps)
        for p, q in rounds:
            if p.size:
                _jacobi_round(a, p, q)
        a = 0.5 * (a + a.conj().T)
        sweeps += 1

    return np.sort(np.diagonal(a).real)[::-1].copy()


def tensor_product(a, b, cap: int = SIZE_CAP) -> np.ndarray:
    """Kronecker product with ``(a⊗b)[i*nb + k, j*nb + l] = a[i, j] * b[k, l]``."""
    a = as_matrix(a)
    b = as_matrix(b)
    n = a.shape[0] * b.shape[0]
    if n > cap:
        raise SizeOverflow(f"tensor product side {n} exceeds cap {cap}")
    return np.kron(a, b)


def _subsystem_index(keep) -> int:
    if isinstance(keep, str):
        try:
            return SUBSYSTEMS[keep.upper()]
        except KeyError:
            raise DimensionMismatch(f"unknown subsystem {keep!r}") from None
    if keep not in (0, 1, 2):
        raise DimensionMismatch(f"unknown subsystem {keep!r}")
    return int(keep)


_TRACE_SPECS = ("abcxbc->ax", "abcayc->by", "abcabz->cz")


def partial_trace(m, dims: tuple[int, int, int], keep) -> np.ndarray:
    """Reduced matrix of one subsystem of a tripartite operator.

    ``keep`` is ``"A"``, ``"B"``, ``"C"`` or the index 0, 1, 2. Basis order
    is ``|i_A i_B i_C>`` at flat index ``i_A*dB*dC + i_B*dC + i_C``.
    """
    a = as_matrix(m)
    dims = tuple(int(x) for x in dims)
    if len(dims) != 3 or min(dims) < 1 or a.shape[0] != dims[0] * dims[1] * dims[2]:
        raise DimensionMismatch(f"matrix side {a.shape[0]} does not match dims {dims}")
    k = _subsystem_index(keep)
    t = a.reshape(dims + dims)
    return np.einsum(_TRACE_SPECS[k], t)
