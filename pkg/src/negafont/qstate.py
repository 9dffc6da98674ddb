"""N-qubit pure states, local operators and state operators.

Bit convention: qubit 1 is the most significant bit, so the ket
``|i1 i2 ... iN>`` sits at integer index ``sum(i_m * 2**(N - m))`` and the
bit strings used throughout read literally left to right.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError, InvalidStateError

DEFAULT_TOL = 1e-10
UNITARY_TOL = 1e-12


def max_qubits() -> int:
    """Qubit-count cap; ``NEGAFONT_MAX_QUBITS`` overrides the default of 8."""
    return int(os.environ.get("NEGAFONT_MAX_QUBITS", "8"))


def _check_n(n: int) -> None:
    cap = max_qubits()
    if not isinstance(n, (int, np.integer)) or n < 2 or n > cap:
        raise DomainError(f"qubit count must be in 2..{cap}, got {n!r}")


@dataclass(frozen=True, order=True)
class BasisIndex:
    """A computational basis ket ``|i1...iN>``."""

    n: int
    value: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("BasisIndex needs n >= 1")
        if not 0 <= self.value < 2**self.n:
            raise DomainError(f"index {self.value} out of range for {self.n} qubits")

    @classmethod
    def from_bits(cls, bits: str) -> "BasisIndex":
        if not bits or any(c not in "01" for c in bits):
            raise DomainError(f"bad bit string {bits!r}")
        return cls(len(bits), int(bits, 2))

    @property
    def bits(self) -> str:
        return format(self.value, f"0{self.n}b")

    def bit(self, qubit: int) -> int:
        """Value of ``i_qubit`` (1-based)."""
        return (self.value >> (self.n - qubit)) & 1

    def hamming(self, other: "BasisIndex") -> int:
        return bin(self.value ^ other.value).count("1")

    def __str__(self):
        return f"|{self.bits}>"


def hamming(i: int, j: int) -> int:
    return bin(i ^ j).count("1")


def qubit_mask(n: int, qubit: int) -> int:
    """Integer mask of the bit holding ``i_qubit``."""
    return 1 << (n - qubit)


IndexLike = Union[BasisIndex, str, int]


def _as_index(n: int, idx: IndexLike) -> int:
    if isinstance(idx, BasisIndex):
        if idx.n != n:
            raise DomainError(f"{idx} has {idx.n} qubits, expected {n}")
        return idx.value
    if isinstance(idx, str):
        b = BasisIndex.from_bits(idx)
        if b.n != n:
            raise DomainError(f"|{idx}> has {b.n} qubits, expected {n}")
        return b.value
    if isinstance(idx, (int, np.integer)) and 0 <= idx < 2**n:
        return int(idx)
    raise DomainError(f"index {idx!r} out of range for {n} qubits")


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector of an n-qubit pure state.

    Construct through :func:`make_state` or :meth:`from_amplitudes`; the
    amplitude array is read-only.
    """

    n: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        _check_n(self.n)
        a = np.array(self.amps, dtype=complex).reshape(-1)
        if a.shape != (2**self.n,):
            raise DomainError(f"expected {2**self.n} amplitudes, got {a.size}")
        norm = np.linalg.norm(a)
        if not np.isfinite(norm) or norm == 0.0:
            raise InvalidStateError("state has zero (or non-finite) norm")
        a = a / norm
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    @classmethod
    def from_amplitudes(cls, amps: Sequence[complex]) -> "PureState":
        a = np.asarray(amps, dtype=complex).reshape(-1)
        n = int(round(np.log2(a.size))) if a.size else 0
        if a.size == 0 or 2**n != a.size:
            raise DomainError(f"amplitude count {a.size} is not a power of two")
        return cls(n, a)

    @classmethod
    def _relabeled(cls, n: int, amps: np.ndarray) -> "PureState":
        """Wrap an already-normalized vector without rescaling (exact for permutations)."""
        obj = object.__new__(cls)
        a = np.array(amps, dtype=complex)
        a.setflags(write=False)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "amps", a)
        return obj

    def __getitem__(self, idx: IndexLike) -> complex:
        return complex(self.amps[_as_index(self.n, idx)])

    def tensor(self) -> np.ndarray:
        """Amplitudes as an n-index tensor, axis m-1 holding ``i_m``."""
        return self.amps.reshape((2,) * self.n)

    def support(self, tol: float = DEFAULT_TOL) -> list[int]:
        """Indices whose amplitude exceeds ``tol`` times the largest one."""
        mags = np.abs(self.amps)
        return [int(i) for i in np.flatnonzero(mags > tol * mags.max())]

    def lbp_count(self, tol: float = DEFAULT_TOL) -> int:
        return len(self.support(tol))

    def terms(self, tol: float = DEFAULT_TOL) -> list[tuple[str, complex]]:
        return [(format(i, f"0{self.n}b"), complex(self.amps[i])) for i in self.support(tol)]

    def allclose(self, other: "PureState", atol: float = 1e-12) -> bool:
        return self.n == other.n and bool(np.allclose(self.amps, other.amps, rtol=0, atol=atol))

    def __repr__(self):
        body = " + ".join(f"({a:.4g})|{b}>" for b, a in self.terms())
        return f"PureState(n={self.n}, {body})"


def make_state(n: int, terms: Iterable[tuple[IndexLike, complex]]) -> PureState:
    """Build a normalized state from ``(index, amplitude)`` terms.

    Repeated indices are summed. Raises :class:`InvalidStateError` if the
    terms cancel to the zero vector.
    """
    _check_n(n)
    amps = np.zeros(2**n, dtype=complex)
    seen = False
    for idx, coeff in terms:
        amps[_as_index(n, idx)] += complex(coeff)
        seen = True
    if not seen:
        raise InvalidStateError("no terms given")
    return PureState(n, amps)


def random_state(n: int, seed: int | None = 0) -> PureState:
    """Haar-random state: i.i.d. standard complex Gaussians from PCG64(seed), normalized."""
    _check_n(n)
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return PureState(n, z / np.sqrt(2))


def random_real_state(n: int, seed: int | None = 0) -> PureState:
    _check_n(n)
    rng = np.random.default_rng(seed)
    return PureState(n, rng.standard_normal(2**n))


@dataclass(frozen=True, eq=False)
class LocalOperator:
    """A 2x2 operator acting on one qubit (1-based ``qubit``)."""

    qubit: int
    matrix: np.ndarray
    kind: str = "unitary"

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (2, 2):
            raise DomainError("local operator must be 2x2")
        if self.kind == "unitary":
            if not np.allclose(m.conj().T @ m, np.eye(2), rtol=0, atol=UNITARY_TOL):
                raise DomainError("matrix is not unitary within 1e-12")
        elif self.kind == "invertible":
            if abs(np.linalg.det(m)) <= UNITARY_TOL:
                raise DomainError("invertible local operator is singular")
        else:
            raise DomainError(f"unknown operator kind {self.kind!r}")
        if self.qubit < 1:
            raise DomainError("qubits are numbered from 1")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def to_json(self) -> dict:
        return {
            "qubit": self.qubit,
            "matrix": [[c.real, c.imag] for c in self.matrix.reshape(-1)],
            "kind": self.kind,
        }


def apply_matrix(amps: np.ndarray, n: int, qubit: int, matrix: np.ndarray) -> np.ndarray:
    """Raw (unnormalized) action of a 2x2 matrix on one qubit of an amplitude vector."""
    t = np.asarray(amps).reshape((2,) * n)
    t = np.tensordot(matrix, t, axes=([1], [qubit - 1]))
    return np.moveaxis(t, 0, qubit - 1).reshape(-1)


def apply_local(state: PureState, op: LocalOperator) -> PureState:
    if op.qubit > state.n:
        raise DomainError(f"qubit {op.qubit} out of range for {state.n} qubits")
    return PureState(state.n, apply_matrix(state.amps, state.n, op.qubit, op.matrix))


def apply_ops(state: PureState, ops: Iterable[LocalOperator]) -> PureState:
    for op in ops:
        state = apply_local(state, op)
    return state


def permute_qubits(state: PureState, perm: Sequence[int]) -> PureState:
    """Relabel qubits: qubit ``m`` of the input becomes qubit ``perm[m-1]``.

    >>> permute_qubits(make_state(3, [("100", 1)]), [3, 2, 1])["001"]
    (1+0j)
    """
    n = state.n
    if sorted(perm) != list(range(1, n + 1)):
        raise DomainError(f"{list(perm)} is not a permutation of 1..{n}")
    # output axis perm[m-1]-1 takes input axis m-1
    src = [0] * n
    for m, target in enumerate(perm):
        src[target - 1] = m
    out = np.transpose(state.tensor(), src).reshape(-1)
    return PureState._relabeled(n, out)


def inverse_permutation(perm: Sequence[int]) -> list[int]:
    inv = [0] * len(perm)
    for m, target in enumerate(perm, start=1):
        inv[target - 1] = m
    return inv


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """A 2^n x 2^n state operator or one of its partial transposes.

    ``kind`` is ``"state"``, ``"global-pt"`` or ``"kway-pt"``; ``k`` is set
    for K-way transposes and ``transposed_qubit`` for both transposes.
    """

    n: int
    mat: np.ndarray = field(repr=False)
    kind: str = "state"
    transposed_qubit: int | None = None
    k: int | None = None

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        d = 2**self.n
        if m.shape != (d, d):
            raise DomainError(f"expected a {d}x{d} matrix")
        if self.kind not in ("state", "global-pt", "kway-pt"):
            raise DomainError(f"unknown operator kind {self.kind!r}")
        if np.abs(m - m.conj().T).max() > UNITARY_TOL:
            raise DomainError("operator is not Hermitian within 1e-12")
        if abs(np.trace(m) - 1) > UNITARY_TOL:
            raise DomainError("operator trace differs from 1")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)


def density(state: PureState) -> DensityOperator:
    a = state.amps
    return DensityOperator(state.n, np.outer(a, a.conj()), kind="state")
