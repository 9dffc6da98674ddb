"""Negativity fonts: 2x2 amplitude blocks whose determinants feed the partial transpose.

For a transposed qubit ``p`` the amplitudes form a 2 x 2^(n-1) matrix with
rows ``i_p``. Every unordered pair of distinct columns is one font; the
qubits where the two column labels differ, together with ``p``, are the
font's flips, and its order K is their number.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import DomainError
from .qstate import DEFAULT_TOL, PureState


@dataclass(frozen=True, eq=False)
class NegativityFont:
    p: int
    flips: tuple[int, ...]
    spectators: tuple[tuple[int, int], ...]
    base: str
    entries: np.ndarray
    det: complex

    @property
    def k(self) -> int:
        return len(self.flips)

    def indices(self, n: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """Basis indices of the entries, laid out like ``entries``."""
        base_col, comp_col = _font_columns(self, n)
        return (
            (_join(n, self.p, 0, base_col), _join(n, self.p, 0, comp_col)),
            (_join(n, self.p, 1, base_col), _join(n, self.p, 1, comp_col)),
        )

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "K": self.k,
            "flips": list(self.flips),
            "spectators": {str(q): v for q, v in self.spectators},
            "base": self.base,
            "entries": [[float(c.real), float(c.imag)] for c in self.entries.reshape(-1)],
            "det": [float(self.det.real), float(self.det.imag)],
        }


@dataclass(frozen=True)
class FontCensus:
    p: int
    counts: dict[int, int]
    total_sq: float

    def to_json(self) -> dict:
        return {"p": self.p, "counts": {str(k): c for k, c in sorted(self.counts.items())}, "total_sq": self.total_sq}


def _others(n: int, p: int) -> list[int]:
    return [q for q in range(1, n + 1) if q != p]


def _join(n: int, p: int, ip: int, col: int) -> int:
    """Full basis index from the bit of ``p`` and an (n-1)-bit column label."""
    low = n - p  # bits of qubits after p
    return ((col >> low) << (low + 1)) | (ip << low) | (col & ((1 << low) - 1))


def amplitude_matrix(state: PureState, p: int) -> np.ndarray:
    """2 x 2^(n-1) matrix of amplitudes, rows indexed by ``i_p``, columns by the other qubits in order."""
    if not 1 <= p <= state.n:
        raise DomainError(f"qubit {p} out of range for {state.n} qubits")
    return np.moveaxis(state.tensor(), p - 1, 0).reshape(2, -1)


def _font_columns(font: NegativityFont, n: int) -> tuple[int, int]:
    others = _others(n, font.p)
    fixed = dict(font.spectators)
    base_bits = iter(font.base)
    base_col = comp_col = 0
    for q in others:
        if q in fixed:
            b = c = fixed[q]
        else:
            b = int(next(base_bits))
            c = 1 - b
        base_col = (base_col << 1) | b
        comp_col = (comp_col << 1) | c
    return base_col, comp_col


def _make_font(m: np.ndarray, n: int, p: int, c1: int, c2: int) -> NegativityFont:
    # c1 < c2, so c1 is the lexicographically smaller label and becomes the base column
    others = _others(n, p)
    width = n - 1
    flips = [p]
    spectators = []
    base = []
    for pos, q in enumerate(others):
        shift = width - 1 - pos
        b1, b2 = (c1 >> shift) & 1, (c2 >> shift) & 1
        if b1 == b2:
            spectators.append((q, b1))
        else:
            flips.append(q)
            base.append(str(b1))
    entries = np.array([[m[0, c1], m[0, c2]], [m[1, c1], m[1, c2]]])
    det = complex(entries[0, 0] * entries[1, 1] - entries[1, 0] * entries[0, 1])
    entries.setflags(write=False)
    return NegativityFont(p, tuple(sorted(flips)), tuple(spectators), "".join(base), entries, det)


def enumerate_fonts(state: PureState, p: int, k: int | None = None) -> list[NegativityFont]:
    """All fonts for transposed qubit ``p`` (of order ``k`` only, if given)."""
    n = state.n
    if k is not None and not 2 <= k <= n:
        raise DomainError(f"K must be in 2..{n}, got {k}")
    m = amplitude_matrix(state, p)
    fonts = []
    for c1, c2 in combinations(range(m.shape[1]), 2):
        if k is not None and bin(c1 ^ c2).count("1") + 1 != k:
            continue
        fonts.append(_make_font(m, n, p, c1, c2))
    fonts.sort(key=lambda f: (f.flips, f.spectators, f.base))
    return fonts


def find_font(state: PureState, p: int, flips, spectators: dict[int, int] | None = None) -> NegativityFont:
    """The font with given flips and spectator values, base column chosen by the usual rule."""
    n = state.n
    flips = tuple(sorted(set(flips) | {p}))
    spectators = dict(spectators or {})
    if set(spectators) | set(flips) != set(range(1, n + 1)) or set(spectators) & set(flips):
        raise DomainError("flips and spectators must partition the qubits")
    others = _others(n, p)
    c1 = 0
    c2 = 0
    for q in others:
        if q in spectators:
            b1 = b2 = spectators[q]
        else:
            b1, b2 = 0, 1
        c1 = (c1 << 1) | b1
        c2 = (c2 << 1) | b2
    return _make_font(amplitude_matrix(state, p), n, p, min(c1, c2), max(c1, c2))


def font_at(state: PureState, p: int, label: str) -> NegativityFont:
    """Font whose top-left entry is the amplitude ``a_label`` and whose flips are all qubits.

    With ``label = '00...0'`` this is the n-way font holding ``a_{00..0}`` and ``a_{11..1}``.
    """
    n = state.n
    if len(label) != n:
        raise DomainError("label length must equal the qubit count")
    others = _others(n, p)
    col = int("".join(label[q - 1] for q in others), 2)
    comp = col ^ ((1 << (n - 1)) - 1)
    return _make_font(amplitude_matrix(state, p), n, p, min(col, comp), max(col, comp))


def pair_determinants(state: PureState, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Determinants of all fonts (column pairs c1 < c2) and their orders, vectorized."""
    m = amplitude_matrix(state, p)
    cols = m.shape[1]
    i, j = np.triu_indices(cols, k=1)
    dets = m[0, i] * m[1, j] - m[1, i] * m[0, j]
    x = i ^ j
    order = np.ones_like(x)
    for b in range(state.n - 1):
        order += (x >> b) & 1
    return dets, order


def font_census(state: PureState, p: int, tol: float = DEFAULT_TOL) -> FontCensus:
    dets, order = pair_determinants(state, p)
    scale = np.abs(state.amps).max() ** 2
    mags = np.abs(dets)
    nonzero = mags > tol * scale
    counts = {k: int(np.count_nonzero(nonzero & (order == k))) for k in range(2, state.n + 1)}
    return FontCensus(p, counts, float(np.sum(mags**2)))


def font_count(n: int, k: int) -> int:
    """Number of order-K fonts per transposed qubit."""
    return comb(n - 1, k - 1) * 2 ** (n - 2)


def font_total_identity(state: PureState, p: int) -> tuple[float, float]:
    """``(N_G**2, 4 * sum |D|**2)`` for qubit ``p``; the two agree for pure states."""
    from .negativity import global_negativity

    return global_negativity(state, p) ** 2, 4 * font_census(state, p).total_sq
