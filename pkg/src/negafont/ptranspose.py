"""Global and K-way partial transposes of a state operator."""
from __future__ import annotations

import numpy as np

from .errors import DomainError
from .qstate import DensityOperator, PureState, density, qubit_mask


def _require_state(rho: DensityOperator, p: int) -> None:
    if rho.kind != "state":
        raise DomainError(f"expected a state operator, got kind {rho.kind!r}")
    if not 1 <= p <= rho.n:
        raise DomainError(f"qubit {p} out of range for {rho.n} qubits")


def _as_rho(x) -> DensityOperator:
    return density(x) if isinstance(x, PureState) else x


def _transposed(mat: np.ndarray, n: int, p: int) -> np.ndarray:
    t = mat.reshape((2,) * (2 * n))
    return np.swapaxes(t, p - 1, n + p - 1).reshape(2**n, 2**n)


def distance_masks(n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Hamming distance between row and column labels, and whether they differ at ``p``."""
    idx = np.arange(2**n)
    x = idx[:, None] ^ idx[None, :]
    dist = np.zeros_like(x)
    for m in range(n):
        dist += (x >> m) & 1
    return dist, (x & qubit_mask(n, p)) != 0


def global_pt(rho: DensityOperator | PureState, p: int) -> DensityOperator:
    """Partial transpose of the whole operator in the indices of qubit ``p``."""
    rho = _as_rho(rho)
    _require_state(rho, p)
    return DensityOperator(rho.n, _transposed(rho.mat, rho.n, p), kind="global-pt", transposed_qubit=p)


def kway_pt(rho: DensityOperator | PureState, p: int, k: int) -> DensityOperator:
    """Selective transpose: only elements off-diagonal in exactly ``k`` qubits, ``p`` among them."""
    rho = _as_rho(rho)
    _require_state(rho, p)
    if not 2 <= k <= rho.n:
        raise DomainError(f"K must be in 2..{rho.n}, got {k}")
    dist, at_p = distance_masks(rho.n, p)
    sel = (dist == k) & at_p
    mat = np.where(sel, _transposed(rho.mat, rho.n, p), rho.mat)
    return DensityOperator(rho.n, mat, kind="kway-pt", transposed_qubit=p, k=k)


def decomposition_residual(rho: DensityOperator | PureState, p: int) -> tuple[np.ndarray, float]:
    """Residual of  GPT = sum_{K=2..n} KPT_K - (n-2) rho.

    Nonzero only where row and column differ solely at qubit ``p``; there it
    equals ``rho[J, I] - rho[I, J]``, which vanishes for real amplitudes.
    """
    rho = _as_rho(rho)
    _require_state(rho, p)
    # written as (GPT - rho) - sum_K (KPT_K - rho): the K terms have disjoint
    # supports, so everything except the distance-1 elements cancels exactly
    n = rho.n
    r = global_pt(rho, p).mat - rho.mat
    for k in range(2, n + 1):
        r = r - (kway_pt(rho, p, k).mat - rho.mat)
    return r, float(np.abs(r).max())


def matrix_to_json(mat: np.ndarray) -> list[list[float]]:
    """Row-major list of ``[re, im]`` pairs."""
    return [[float(c.real), float(c.imag)] for c in np.asarray(mat).reshape(-1)]
