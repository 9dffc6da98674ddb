"""Local-unitary canonical forms and the single-qubit operators that build them.

* :func:`zero_slot_unitary` rotates one qubit so a chosen amplitude vanishes
  while every font determinant on that qubit is preserved.
* :func:`font_ilo` is the invertible (SLOCC) step that diagonalizes a font
  with a zero corner.
* :func:`annihilate_font_unitary` rotates a different qubit until a given
  font's determinant vanishes.
* :func:`canonicalize3` is the exact five-term three-qubit form;
  :func:`canonicalize_heuristic` is a seeded multi-start search for n >= 4.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import DegenerateSlotError, DomainError, NoSolutionError, NumericError
from .fonts import NegativityFont, amplitude_matrix, find_font, font_census, font_at
from .qstate import (
    DEFAULT_TOL,
    LocalOperator,
    PureState,
    apply_local,
    apply_matrix,
    apply_ops,
)

T_MAX = 1e3
PATTERN3 = (0b000, 0b100, 0b101, 0b110, 0b111)



@dataclass
class CanonicalForm:
    state: PureState
    ops: list[LocalOperator]
    lbp_count: int
    objective: tuple[int, int, int]
    method: str
    restarts_used: int = 0
    objective_trace: list[tuple[int, int, int]] = field(default_factory=list)
    converged: bool = True
    snapped: float = 0.0

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "canonical_amps": [[float(a.real), float(a.imag)] for a in self.state.amps],
            "lbp_count": self.lbp_count,
            "ops": [op.to_json() for op in self.ops],
            "objective": list(self.objective),
            "restarts_used": self.restarts_used,
            "converged": self.converged,
        }


def _scale(state: PureState) -> float:
    return float(np.abs(state.amps).max())


def _snap(amps: np.ndarray, tol: float) -> tuple[PureState, float]:
    """Zero amplitudes below ``tol`` times the largest; return the state and the discarded weight."""
    a = np.array(amps, dtype=complex)
    small = np.abs(a) <= tol * np.abs(a).max()
    lost = float(np.linalg.norm(a[small]))
    a[small] = 0
    return PureState.from_amplitudes(a), lost


# -- single-qubit building blocks ---------------------------------------------


def zero_slot_unitary(state: PureState, p: int, column: str | int, tol: float = DEFAULT_TOL) -> LocalOperator:
    """Unitary on qubit ``p`` that zeroes the amplitude ``a_{0 J}`` (``J = column``).

    Its determinant is 1, so every font determinant for qubit ``p`` survives
    unchanged; with the top-right entry gone, ``b_{0I} b_{1J}`` equals the
    original font determinant for every other column ``I``.
    """
    m = amplitude_matrix(state, p)
    col = int(column, 2) if isinstance(column, str) else int(column)
    if isinstance(column, str) and len(column) != state.n - 1:
        raise DomainError(f"column label must have {state.n - 1} bits")
    a0, a1 = m[0, col], m[1, col]
    if abs(a1) <= tol * _scale(state):
        raise DegenerateSlotError(f"amplitude a_1J at column {col} vanishes; pick another slot")
    r = a0 / a1
    u = np.array([[1, -r], [np.conj(r), 1]]) / np.sqrt(1 + abs(r) ** 2)
    return LocalOperator(p, u, "unitary")


def font_ilo(state: PureState, font: NegativityFont, tol: float = DEFAULT_TOL) -> LocalOperator:
    """Invertible operator on ``font.p`` taking ``[[b00, 0], [b10, b11]]`` to ``[[1, 0], [0, b11]]``."""
    e = font.entries
    scale = _scale(state)
    if abs(e[0, 1]) > tol * scale:
        raise DomainError("font must have a zero top-right entry (apply zero_slot_unitary first)")
    if abs(e[0, 0]) <= tol * scale:
        raise DegenerateSlotError("font top-left entry vanishes")
    o = np.array([[1 / e[0, 0], 0], [-e[1, 0] / e[0, 0], 1]])
    return LocalOperator(font.p, o, "invertible")


def _t_unitary(t: complex) -> np.ndarray:
    return np.array([[1, -np.conj(t)], [t, 1]]) / np.sqrt(1 + abs(t) ** 2)


def _det_polynomial(state: PureState, q: int, font: NegativityFont) -> np.ndarray:
    """Coefficients of (1+|t|^2) * det for U(t) on qubit ``q``.

    Order: 1, t, conj(t), t^2, conj(t)^2, |t|^2.
    """
    n = state.n
    amps = state.amps
    mask = 1 << (n - q)
    forms = []
    for row in font.indices(n):
        for idx in row:
            a, b = amps[idx], amps[idx ^ mask]
            # new a(q=0) = a - conj(t) a(q=1);  new a(q=1) = t a(q=0) + a
            forms.append((a, 0j, -b) if not idx & mask else (a, b, 0j))

    def mul(x, y):
        return np.array([
            x[0] * y[0],
            x[0] * y[1] + x[1] * y[0],
            x[0] * y[2] + x[2] * y[0],
            x[1] * y[1],
            x[2] * y[2],
            x[1] * y[2] + x[2] * y[1],
        ])

    e00, e01, e10, e11 = forms
    return mul(e00, e11) - mul(e10, e01)


def _eval_poly(c: np.ndarray, t: complex) -> complex:
    tb = np.conj(t)
    return c[0] + c[1] * t + c[2] * tb + c[3] * t * t + c[4] * tb * tb + c[5] * abs(t) ** 2


def _newton(c: np.ndarray, t0: complex, iters: int = 100) -> complex:
    t = t0
    f = _eval_poly(c, t)
    for _ in range(iters):
        x, y = t.real, t.imag
        fx = c[1] + c[2] + 2 * c[3] * t + 2 * c[4] * np.conj(t) + 2 * c[5] * x
        fy = 1j * (c[1] - c[2]) + 2j * c[3] * t - 2j * c[4] * np.conj(t) + 2 * c[5] * y
        jac = np.array([[fx.real, fy.real], [fx.imag, fy.imag]])
        try:
            step = np.linalg.solve(jac, [-f.real, -f.imag])
        except np.linalg.LinAlgError:
            break
        lam = 1.0
        while lam > 1e-6:
            cand = t + lam * complex(step[0], step[1])
            fc = _eval_poly(c, cand)
            if abs(fc) < abs(f):
                t, f = cand, fc
                break
            lam /= 2
        else:
            break
        if abs(f) < 1e-16 or abs(t) > T_MAX:
            break
    return t


def annihilate_font_unitary(
    state: PureState,
    q: int,
    font: NegativityFont,
    tol: float = DEFAULT_TOL,
    restarts: int = 64,
    seed: int = 0,
) -> LocalOperator:
    """Unitary ``[[1, -conj(t)], [t, 1]] / sqrt(1+|t|^2)`` on qubit ``q`` killing ``font``'s determinant.

    Quadratic closed form when the determinant depends on ``t`` (or on
    ``conj(t)``) alone, damped Newton over ``(Re t, Im t)`` from random
    starts in the unit disk otherwise. ``|t|`` is capped at ``T_MAX``.
    """
    if q == font.p or not 1 <= q <= state.n:
        raise DomainError("annihilating qubit must differ from the transposed qubit")
    scale = _scale(state) ** 2
    if abs(font.det) <= tol * scale:
        return LocalOperator(q, np.eye(2), "unitary")
    c = _det_polynomial(state, q, font)
    cmax = np.abs(c).max()
    small = np.abs(c) <= 1e-14 * cmax

    candidates: list[complex] = []
    if small[2] and small[4] and small[5]:
        candidates += [complex(r) for r in np.roots(np.trim_zeros([c[3], c[1], c[0]], "f"))]
    elif small[1] and small[3] and small[5]:
        candidates += [complex(np.conj(r)) for r in np.roots(np.trim_zeros([c[4], c[2], c[0]], "f"))]
    else:
        rng = np.random.default_rng(seed)
        starts = [0j] + [complex(*_disk_point(rng)) for _ in range(restarts)]
        candidates += [_newton(c, t0) for t0 in starts]

    best, best_res = None, np.inf
    for t in candidates:
        if not np.isfinite(t) or abs(t) > T_MAX:
            continue
        res = abs(_eval_poly(c, t)) / (1 + abs(t) ** 2)
        if res < best_res:
            best, best_res = t, res
    if best is None or best_res > 10 * tol * scale:
        raise NoSolutionError(
            f"no unitary on qubit {q} annihilates the font (best residual {best_res:.3g})"
        )
    return LocalOperator(q, _t_unitary(best), "unitary")


def _disk_point(rng) -> tuple[float, float]:
    r = np.sqrt(rng.uniform())
    phi = rng.uniform(0, 2 * np.pi)
    return r * np.cos(phi), r * np.sin(phi)


# -- objective shared by the canonicalizers -----------------------------------


def objective(state: PureState, tol: float = DEFAULT_TOL) -> tuple[int, int, int]:
    """``(LBP count, -highest font order, fonts at the anchoring qubit)``; lower is better.

    The anchoring qubit is the one whose census reaches the highest order
    (lowest index on ties).
    """
    best_k, best_count = 0, 0
    for p in range(1, state.n + 1):
        counts = font_census(state, p, tol).counts
        ks = [k for k, v in counts.items() if v > 0]
        kmax = max(ks, default=0)
        if kmax > best_k:
            best_k, best_count = kmax, sum(counts.values())
    return state.lbp_count(tol), -best_k, best_count


def _phase_fix(state: PureState) -> LocalOperator:
    """Global phase making the largest-magnitude amplitude real and nonnegative."""
    i = int(np.argmax(np.abs(state.amps)))
    ph = np.exp(-1j * np.angle(state.amps[i]))
    return LocalOperator(1, ph * np.eye(2), "unitary")


def _slocc_step(state: PureState, tol: float) -> list[LocalOperator]:
    font = font_at(state, 1, "0" * state.n)
    try:
        return [font_ilo(state, font, tol)]
    except DomainError:
        return []


# -- three qubits --------------------------------------------------------------


def _rank_one_root(t0: np.ndarray, t1: np.ndarray, tol: float) -> np.ndarray:
    """Unit row ``(u, v)`` with ``det(u T0 + v T1) = 0``, closest to ``(1, 0)``.

    ``det(u T0 + v T1) = c u^2 + b u v + a v^2``. A discriminant below ``tol``
    is treated as an exact double root; this is the W-type (zero 3-tangle)
    case, where the generic formula loses half the digits.
    """
    c = np.linalg.det(t0)
    a = np.linalg.det(t1)
    b = t0[0, 0] * t1[1, 1] + t1[0, 0] * t0[1, 1] - t0[0, 1] * t1[1, 0] - t1[0, 1] * t0[1, 0]
    disc = b * b - 4 * a * c
    tiny = 1e-14
    if max(abs(a), abs(b), abs(c)) <= tiny:
        # every row is a root; align qubit 1's dominant Schmidt vector with |0>,
        # which empties the i1 = 1 block when qubit 1 is separable
        left = np.linalg.svd(np.stack([t0.reshape(-1), t1.reshape(-1)]))[0][:, 0]
        cands = [left.conj()]
    elif 4 * abs(disc) < tol:
        cands = [np.array([2 * a, -b]), np.array([-b, 2 * c])]
        cands = [max(cands, key=np.linalg.norm)]
        if np.linalg.norm(cands[0]) <= tiny:
            cands = [np.array([1, 0], dtype=complex) if abs(c) <= abs(a) else np.array([0, 1], dtype=complex)]
    else:
        s = np.sqrt(disc)
        if (np.conj(b) * s).real < 0:
            s = -s
        qq = -(b + s) / 2
        cands = [np.array([a, qq]), np.array([qq, c])]
        cands = [v for v in cands if np.linalg.norm(v) > tiny]
    out = []
    for v in cands:
        v = np.asarray(v, dtype=complex) / np.linalg.norm(v)
        if abs(v[0]) > tiny:
            v = v * np.conj(v[0]) / abs(v[0])
        out.append(v)
    return max(out, key=lambda v: abs(v[0]))


def canonicalize3(state: PureState, tol: float = DEFAULT_TOL, slocc: bool = False) -> CanonicalForm:
    """Five-term form ``a000|000> + a100|100> + a101|101> + a110|110> + a111|111>``.

    Qubit 1 is rotated so its ``i1 = 0`` block becomes rank one, qubits 2 and 3
    align that block with ``|00>``, and diagonal phases make ``a000``,
    ``a101``, ``a110``, ``a111`` real and nonnegative. Unitary only, unless
    ``slocc`` appends the invertible step that removes ``a100``.
    """
    if state.n != 3:
        raise DomainError("canonicalize3 needs exactly three qubits")
    t = state.tensor()
    u, v = _rank_one_root(t[0], t[1], tol)
    u1 = np.array([[u, v], [-np.conj(v), np.conj(u)]])
    amps = apply_matrix(state.amps, 3, 1, u1).reshape(2, 2, 2)

    block = amps[0] if np.linalg.norm(amps[0]) > 1e-12 else amps[1]
    w, _, vh = np.linalg.svd(block)
    u2 = w.conj().T
    u3 = vh.conj()  # V^T
    amps = apply_matrix(apply_matrix(amps.reshape(-1), 3, 2, u2), 3, 3, u3)

    th = np.angle(amps)
    a0 = -th[0b000]
    a1 = -th[0b101] - th[0b110] + th[0b111]
    g1 = th[0b110] - th[0b111]
    b1 = th[0b101] - th[0b111]
    ops = [
        LocalOperator(1, np.diag([np.exp(1j * a0), np.exp(1j * a1)]) @ u1),
        LocalOperator(2, np.diag([1, np.exp(1j * b1)]) @ u2),
        LocalOperator(3, np.diag([1, np.exp(1j * g1)]) @ u3),
    ]
    raw = apply_ops(state, ops)
    out, lost = _snap(raw.amps, tol)
    off = [i for i in np.flatnonzero(out.amps) if i not in PATTERN3]
    if off:
        raise NumericError(f"three-qubit canonicalization left amplitude at slots {off}")
    if slocc:
        extra = _slocc_step(out, tol)
        if extra:
            ops += extra
            out, more = _snap(apply_ops(out, extra).amps, tol)
            lost += more
    obj = objective(out, tol)
    return CanonicalForm(out, ops, out.lbp_count(tol), obj, "exact3", snapped=lost)


# -- n >= 4: seeded multi-start search ---------------------------------------


_Z = np.diag([1, -1]).astype(complex)
_Y = np.array([[0, -1j], [1j, 0]])


def _euler(params: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """ZYZ rotations ``Rz(a) Ry(b) Rz(c)`` per qubit, plus the left factor ``Rz(a)``."""
    p = params.reshape(-1, 3)
    a, b, c = p[:, 0], p[:, 1], p[:, 2]
    rz_a = np.zeros((len(p), 2, 2), dtype=complex)
    rz_a[:, 0, 0] = np.exp(-0.5j * a)
    rz_a[:, 1, 1] = np.exp(0.5j * a)
    cb, sb = np.cos(b / 2), np.sin(b / 2)
    u = np.empty((len(p), 2, 2), dtype=complex)
    e_m, e_p = np.exp(-0.5j * c), np.exp(0.5j * c)
    u[:, 0, 0] = rz_a[:, 0, 0] * cb * e_m
    u[:, 0, 1] = -rz_a[:, 0, 0] * sb * e_p
    u[:, 1, 0] = rz_a[:, 1, 1] * sb * e_m
    u[:, 1, 1] = rz_a[:, 1, 1] * cb * e_p
    return u, rz_a, p


def _apply2(m: np.ndarray, t: np.ndarray, q: int) -> np.ndarray:
    # elementwise on purpose: BLAS kernels for tiny contractions round
    # differently depending on memory alignment, which breaks seeded replay
    t0, t1 = np.moveaxis(t, q, 0)
    return np.moveaxis(np.stack([m[0, 0] * t0 + m[0, 1] * t1, m[1, 0] * t0 + m[1, 1] * t1]), 0, q)


def _apply_all(t: np.ndarray, mats: np.ndarray) -> np.ndarray:
    for q, m in enumerate(mats):
        t = _apply2(m, t, q)
    return t


def _mul2(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Stacked 2x2 products without matmul (see :func:`_apply2`)."""
    out = np.empty(np.broadcast_shapes(a.shape, b.shape), dtype=complex)
    for i in (0, 1):
        for j in (0, 1):
            out[..., i, j] = a[..., i, 0] * b[..., 0, j] + a[..., i, 1] * b[..., 1, j]
    return out


def _generators(u: np.ndarray, rz_a: np.ndarray) -> np.ndarray:
    """Left generators G with dU/dtheta = G U, shape (n, 3, 2, 2)."""
    ga = np.broadcast_to(-0.5j * _Z, u.shape)
    gb = _mul2(_mul2(rz_a, -0.5j * _Y), rz_a.conj().transpose(0, 2, 1))
    gc = _mul2(_mul2(u, -0.5j * _Z), u.conj().transpose(0, 2, 1))
    return np.stack([ga, gb, gc], axis=1)


class _Rotated:
    """Amplitudes of ``(U_1 x ... x U_n) |psi>`` and their parameter derivatives."""

    def __init__(self, amps: np.ndarray, n: int):
        self.t = amps.reshape((2,) * n)
        self.n = n

    def amps(self, params: np.ndarray) -> np.ndarray:
        u, _, _ = _euler(params)
        return _apply_all(self.t, u)

    def jacobian(self, params: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """State tensor and d(state)/d(params) as a (2^n, 3n) matrix."""
        u, rz_a, _ = _euler(params)
        b = _apply_all(self.t, u)
        gens = _generators(u, rz_a)
        cols = []
        for q in range(self.n):
            for j in range(3):
                d = _apply2(gens[q, j], b, q)
                cols.append(d.reshape(-1))
        return b.reshape(-1), np.stack(cols, axis=1)

    def sparsity(self, params: np.ndarray, eps: float) -> tuple[float, np.ndarray]:
        """Smoothed L1 norm of the amplitudes and its gradient."""
        u, rz_a, _ = _euler(params)
        b = _apply_all(self.t, u)
        phi = np.sqrt(np.abs(b) ** 2 + eps * eps)
        w = b / phi
        gens = _generators(u, rz_a)
        grad = np.empty(3 * self.n)
        for q in range(self.n):
            wq = np.moveaxis(w.conj(), q, 0).reshape(2, -1)
            bq = np.moveaxis(b, q, 0).reshape(2, -1)
            cross = np.array([[np.sum(wq[s] * bq[t]) for t in (0, 1)] for s in (0, 1)])
            g = gens[q]
            grad[3 * q : 3 * q + 3] = (g[:, 0, 0] * cross[0, 0] + g[:, 0, 1] * cross[0, 1] + g[:, 1, 0] * cross[1, 0] + g[:, 1, 1] * cross[1, 1]).real
        return float(phi.sum()), grad


def _ops_from_params(n: int, params: np.ndarray) -> list[LocalOperator]:
    u, _, _ = _euler(params)
    return [LocalOperator(q + 1, u[q]) for q in range(n)]


def _solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Gaussian elimination with partial pivoting, using row operations only.

    LAPACK's blocked kernels round differently with memory alignment; for the
    small damped normal equations here this keeps seeded runs bit-identical.
    """
    a = a.copy()
    b = b.copy()
    m = len(b)
    for c in range(m):
        r = c + int(np.argmax(np.abs(a[c:, c])))
        if a[r, c] == 0:
            raise np.linalg.LinAlgError("singular")
        if r != c:
            a[[c, r]] = a[[r, c]]
            b[[c, r]] = b[[r, c]]
        f = a[c + 1 :, c] / a[c, c]
        a[c + 1 :] -= f[:, None] * a[c]
        b[c + 1 :] -= f * b[c]
    x = np.zeros(m)
    for c in range(m - 1, -1, -1):
        x[c] = (b[c] - np.sum(a[c, c + 1 :] * x[c + 1 :])) / a[c, c]
    return x


def _levenberg_marquardt(resid, jac, x, max_iter=200):
    """Damped Gauss-Newton (Nielsen's damping update) with deterministic arithmetic."""
    r = resid(x)
    cost = np.sum(r * r)
    lam, nu = None, 2.0
    for _ in range(max_iter):
        if cost == 0:
            break
        j = jac(x)
        jtj = (j[:, :, None] * j[:, None, :]).sum(axis=0)
        g = (j * r[:, None]).sum(axis=0)
        if lam is None:
            lam = 1e-3 * float(np.max(np.diag(jtj)))
        if np.max(np.abs(g)) <= 1e-15 * max(cost, 1e-300) ** 0.5:
            break
        try:
            step = _solve(jtj + lam * np.diag(np.maximum(np.diag(jtj), 1e-12)), -g)
        except np.linalg.LinAlgError:
            lam *= nu
            nu *= 2
            continue
        x_new = x + step
        r_new = resid(x_new)
        cost_new = np.sum(r_new * r_new)
        pred = -np.sum(step * g) + lam * np.sum(step * step * np.maximum(np.diag(jtj), 1e-12))
        if cost_new < cost:
            rho = (cost - cost_new) / pred if pred > 0 else 1.0
            lam *= max(1 / 3, 1 - (2 * rho - 1) ** 3)
            nu = 2.0
            done = np.max(np.abs(step)) <= 1e-15 * (1 + np.max(np.abs(x)))
            x, r, cost = x_new, r_new, cost_new
            if done:
                break
        else:
            lam *= nu
            nu *= 2
            if lam > 1e30:
                break
    return x


def _polish(rot: _Rotated, params, support, tol):
    off = np.ones(2**rot.n, dtype=bool)
    off[list(support)] = False

    def resid(x):
        b = rot.amps(x).reshape(-1)[off]
        return np.concatenate([b.real, b.imag])

    def jac(x):
        _, d = rot.jacobian(x)
        d = d[off]
        return np.concatenate([d.real, d.imag])

    x = _levenberg_marquardt(resid, jac, np.asarray(params, dtype=float))
    b = rot.amps(x).reshape(-1)
    ok = np.abs(b[off]).max(initial=0.0) <= 0.1 * tol * np.abs(b).max()
    return ok, x


def canonicalize_heuristic(
    state: PureState,
    max_restarts: int = 32,
    tol: float = DEFAULT_TOL,
    seed: int = 0,
    slocc: bool = False,
) -> CanonicalForm:
    """Best-effort canonical form for n >= 3 by multi-start local search.

    Each restart minimizes a smoothed L1 norm of the amplitudes over
    products of single-qubit SU(2) rotations (ZYZ Euler angles), then tries to zero all but the
    k largest amplitudes exactly (Levenberg-Marquardt) for increasing k.
    Candidates are ranked by :func:`objective`; the input itself is the first
    candidate and is only replaced by a strictly better one, so the result
    never worsens. ``converged`` means the winning objective was reached
    from at least two independent starts.
    """
    n = state.n
    if n < 3:
        raise DomainError("heuristic canonicalization needs n >= 3")
    fix = _phase_fix(state)
    start_state = apply_local(state, fix)
    best_obj = objective(start_state, tol)
    best = (best_obj, start_state, [fix])
    hits = {best_obj: 1}
    trace = [best_obj]
    rng = np.random.default_rng(seed)
    rot = _Rotated(state.amps, n)
    dim = 3 * n
    for r in range(max_restarts):
        x0 = np.zeros(dim) if r == 0 else rng.uniform(-np.pi, np.pi, dim)
        res = minimize(rot.sparsity, x0, args=(1e-3,), jac=True, method="BFGS", options={"gtol": 1e-8})
        params = res.x
        b = rot.amps(params).reshape(-1)
        order = np.argsort(-np.abs(b), kind="stable")
        limit = best[0][0]
        found = None
        for k in range(1, limit + 1):
            tail = np.abs(b[order[k:]])
            if tail.size and np.sum(tail**2) > 0.05:
                continue
            ok, x = _polish(rot, params, order[:k], tol)
            if ok:
                found = x
                break
        if found is None:
            trace.append(best[0])
            continue
        ops = _ops_from_params(n, found)
        cand = apply_ops(state, ops)
        fix = _phase_fix(cand)
        cand, _ = _snap(apply_local(cand, fix).amps, tol)
        obj = objective(cand, tol)
        hits[obj] = hits.get(obj, 0) + 1
        if obj < best[0]:
            best = (obj, cand, ops + [fix])
        trace.append(best[0])
    obj, out, ops = best
    raw = apply_ops(state, ops)
    out, lost = _snap(raw.amps, tol)
    if slocc:
        extra = _slocc_step(out, tol)
        if extra:
            ops = ops + extra
            out, more = _snap(apply_ops(out, extra).amps, tol)
            lost += more
            obj = objective(out, tol)
    return CanonicalForm(
        out,
        ops,
        out.lbp_count(tol),
        obj,
        "heuristic",
        restarts_used=max_restarts,
        objective_trace=trace,
        converged=hits.get(best[0], 0) >= 2,
        snapped=lost,
    )


def canonicalize(state: PureState, tol: float = DEFAULT_TOL, restarts: int = 32, seed: int = 0, slocc: bool = False) -> CanonicalForm:
    if state.n == 3:
        return canonicalize3(state, tol, slocc=slocc)
    return canonicalize_heuristic(state, restarts, tol, seed, slocc=slocc)


# -- invariant ---------------------------------------------------------------


def cluster_invariant(state: PureState) -> complex:
    """``(D^{0..0} - D^{0011..1})^2 - 4 D_{(A2)0}^{0..0} D_{(A2)1}^{0..0}`` for transposed qubit 1.

    Invariant under SU(2) rotations of qubits 1 and 2 (its modulus under U(2)).
    """
    n = state.n
    if n < 3:
        raise DomainError("cluster invariant needs n >= 3")
    d_zero = font_at(state, 1, "0" * n).det
    d_alt = font_at(state, 1, "00" + "1" * (n - 2)).det
    rest = list(range(3, n + 1))
    d_a20 = find_font(state, 1, [1] + rest, {2: 0}).det
    d_a21 = find_font(state, 1, [1] + rest, {2: 1}).det
    return complex((d_zero - d_alt) ** 2 - 4 * d_a20 * d_a21)
