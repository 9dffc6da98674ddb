"""Trace-norm negativity of state operators and their partial transposes."""
from __future__ import annotations

import numpy as np

from .errors import DomainError, NumericError
from .ptranspose import global_pt, kway_pt
from .qstate import DensityOperator, PureState

HERMITIAN_TOL = 1e-10


def eigvals_hermitian(mat) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, in descending order.

    The result is checked against the trace and the Frobenius norm
    (sum of eigenvalues and of their squares) before being returned.
    """
    a = np.asarray(mat, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError("expected a square matrix")
    scale = max(1.0, float(np.abs(a).max())) if a.size else 1.0
    if a.size and np.abs(a - a.conj().T).max() > HERMITIAN_TOL * scale:
        raise DomainError("matrix is not Hermitian within tolerance")
    w = np.linalg.eigvalsh(a)[::-1]
    fro2 = float(np.sum(np.abs(a) ** 2))
    if abs(w.sum() - np.trace(a).real) > HERMITIAN_TOL * max(1.0, scale * len(w)) or abs(
        np.sum(w**2) - fro2
    ) > HERMITIAN_TOL * max(1.0, fro2):
        raise NumericError("eigenvalues fail the trace / Frobenius consistency check")
    return w


def negativity_of(op: DensityOperator) -> float:
    """``||op||_1 - 1``, i.e. twice the summed magnitude of the negative eigenvalues."""
    w = eigvals_hermitian(op.mat)
    return float(2 * np.sum(np.clip(-w, 0, None)))


def global_negativity(state: PureState, p: int) -> float:
    return negativity_of(global_pt(state, p))


def kpt_negativity(state: PureState, p: int, k: int) -> float:
    """Negativity of the K-way partial transpose (not the "partial K-way negativity" of earlier work)."""
    return negativity_of(kway_pt(state, p, k))


def min_eigenvalue(op: DensityOperator) -> float:
    return float(eigvals_hermitian(op.mat)[-1])
