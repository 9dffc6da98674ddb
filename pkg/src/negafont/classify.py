"""Class and subclass assignment from the partial-transpose structure of canonical states."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .canonical import CanonicalForm, canonicalize3, canonicalize_heuristic
from .errors import ClassificationError, DomainError
from .fonts import FontCensus, find_font, font_at, font_census
from .negativity import global_negativity, kpt_negativity
from .ptranspose import distance_masks
from .qstate import DEFAULT_TOL, PureState

SCHEMA_VERSION = "negafont/1"

CLASS3 = {
    frozenset({2, 3}): "CI",
    frozenset({3}): "CII",
    frozenset({2}): "CIII",
}
CLASS4 = {
    frozenset({2, 3, 4}): "CI",
    frozenset({3, 4}): "CII",
    frozenset({2, 4}): "CIII",
    frozenset({2, 3}): "CIV",
    frozenset({4}): "CV",
    frozenset({3}): "CVI",
    frozenset({2}): "CVII",
}
FULLY_SEPARABLE = "FS"
TAU_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class GptSignature:
    p: int
    ks: tuple[int, ...]

    @property
    def rank(self) -> tuple[int, int]:
        """Ordering used to pick the anchoring qubit: highest K, then number of K values."""
        return (max(self.ks, default=0), len(self.ks))


@dataclass
class QubitReport:
    qubit: int
    signature: GptSignature
    census: FontCensus
    negativity: float
    kpt_negativity: dict[int, float]

    def to_json(self) -> dict:
        return {
            "qubit": self.qubit,
            "signature": list(self.signature.ks),
            "census": {str(k): v for k, v in sorted(self.census.counts.items())},
            "font_sq_sum": self.census.total_sq,
            "negativity": self.negativity,
            "kpt_negativity": {str(k): v for k, v in sorted(self.kpt_negativity.items())},
        }


@dataclass
class ClassReport:
    n: int
    class_label: str
    headline_qubit: int
    per_qubit: list[QubitReport]
    subclass: dict[str, int]
    separable_qubits: list[int]
    fully_separable: bool
    genuinely_entangled: bool
    signature_disagreement: bool
    tau3: float | None = None
    canonical: CanonicalForm | None = None
    provisional: bool = False
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "class": self.class_label,
            "subclass": dict(self.subclass),
            "headline_qubit": self.headline_qubit,
            "per_qubit": [q.to_json() for q in self.per_qubit],
            "tau3": self.tau3,
            "separable_qubits": list(self.separable_qubits),
            "fully_separable": self.fully_separable,
            "genuinely_entangled": self.genuinely_entangled,
            "signature_disagreement": self.signature_disagreement,
            "canonicalization": None if self.canonical is None else self.canonical.to_json(),
            "provisional": self.provisional,
            "notes": list(self.notes),
        }


@lru_cache(maxsize=64)
def _pair_masks(n: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    dist, at_p = distance_masks(n, p)
    dist.setflags(write=False)
    at_p.setflags(write=False)
    return dist, at_p


def gpt_signature(state: PureState, p: int, tol: float = DEFAULT_TOL) -> GptSignature:
    """K values (>= 2) of nonzero coherences ``a_I a_J`` whose labels differ at qubit ``p``."""
    if not 1 <= p <= state.n:
        raise DomainError(f"qubit {p} out of range for {state.n} qubits")
    mags = np.abs(state.amps)
    prod = np.outer(mags, mags)
    dist, at_p = _pair_masks(state.n, p)
    live = (prod > tol * mags.max() ** 2) & at_p & (dist >= 2)
    return GptSignature(p, tuple(sorted({int(k) for k in np.unique(dist[live])})))


def three_tangle(state: PureState) -> float:
    """``4 |(D^000 + D^001)^2 - 4 D_(A3)0^00 D_(A3)1^00|`` with qubit 1 transposed."""
    if state.n != 3:
        raise DomainError("three_tangle needs exactly three qubits")
    d000 = font_at(state, 1, "000").det
    d001 = font_at(state, 1, "001").det
    d30 = find_font(state, 1, [1, 2], {3: 0}).det
    d31 = find_font(state, 1, [1, 2], {3: 1}).det
    return float(4 * abs((d000 + d001) ** 2 - 4 * d30 * d31))


def schmidt_ranks(state: PureState, tol: float = DEFAULT_TOL) -> dict[tuple[int, ...], int]:
    """Schmidt rank across every cut ``A | rest`` with qubit 1 in ``A``."""
    n = state.n
    t = state.tensor()
    out = {}
    for size in range(1, n):
        for part in combinations(range(1, n + 1), size):
            if 1 not in part:
                continue
            rest = [q for q in range(1, n + 1) if q not in part]
            m = np.transpose(t, [q - 1 for q in part] + [q - 1 for q in rest]).reshape(2**size, -1)
            s = np.linalg.svd(m, compute_uv=False)
            out[part] = int(np.count_nonzero(s > tol * s[0]))
    return out


def _qubit_reports(state: PureState, tol: float) -> list[QubitReport]:
    reports = []
    for p in range(1, state.n + 1):
        kneg = {k: kpt_negativity(state, p, k) for k in range(2, state.n + 1)}
        reports.append(
            QubitReport(p, gpt_signature(state, p, tol), font_census(state, p, tol), global_negativity(state, p), kneg)
        )
    return reports


def _headline(reports: list[QubitReport]) -> QubitReport:
    # max() keeps the first maximum, i.e. the lowest qubit on ties
    return max(reports, key=lambda r: r.signature.rank)


def _assemble(canonical_state: PureState, table: dict, tol: float) -> ClassReport:
    n = canonical_state.n
    reports = _qubit_reports(canonical_state, tol)
    head = _headline(reports)
    label = table.get(frozenset(head.signature.ks), FULLY_SEPARABLE)
    separable = [r.qubit for r in reports if r.negativity < tol]
    entangled_sigs = {r.signature.ks for r in reports if r.qubit not in separable}
    subclass = {f"N{k}": head.census.counts[k] for k in range(n, 1, -1)}
    genuine = all(rank > 1 for rank in schmidt_ranks(canonical_state, tol).values())
    return ClassReport(
        n=n,
        class_label=label,
        headline_qubit=head.qubit,
        per_qubit=reports,
        subclass=subclass,
        separable_qubits=separable,
        fully_separable=len(separable) == n,
        genuinely_entangled=genuine,
        signature_disagreement=len(entangled_sigs) > 1,
    )


def classify3(state: PureState, tol: float = DEFAULT_TOL) -> ClassReport:
    """Three-qubit class (CI/CII/CIII) of the exact canonical form, checked against the 3-tangle."""
    if state.n != 3:
        raise DomainError("classify3 needs exactly three qubits")
    cf = canonicalize3(state, tol)
    report = _assemble(cf.state, CLASS3, tol)
    report.canonical = cf
    tau = three_tangle(cf.state)
    report.tau3 = tau
    # N_G^2 through the font sum, which carries no eigensolver error
    ng2 = 4 * report.per_qubit[report.headline_qubit - 1].census.total_sq
    label = report.class_label
    consistent = {
        "CI": ng2 - tau > tol * tol,
        "CII": abs(tau - ng2) <= TAU_MATCH_TOL,
        "CIII": tau < tol,
        FULLY_SEPARABLE: tau < tol,
    }[label]
    if not consistent:
        raise ClassificationError(
            f"signature says {label} but tau3={tau:.6g}, N_G^2={ng2:.6g}; tolerance too loose or too tight"
        )
    if report.separable_qubits and not report.fully_separable:
        report.notes.append(f"qubits {report.separable_qubits} are separable; label describes the entangled remainder")
    return report


def classify4(
    state: PureState,
    tol: float = DEFAULT_TOL,
    assume_canonical: bool = False,
    restarts: int = 32,
    seed: int = 0,
) -> ClassReport:
    """Four-qubit class CI..CVII from the GPT signature of a (heuristically) canonical form."""
    if state.n != 4:
        raise DomainError("classify4 needs exactly four qubits")
    cf = None
    canonical_state = state
    if not assume_canonical:
        cf = canonicalize_heuristic(state, restarts, tol, seed)
        canonical_state = cf.state
    report = _assemble(canonical_state, CLASS4, tol)
    report.canonical = cf
    report.provisional = cf is not None and not cf.converged
    if report.class_label == "CVI":
        report.notes.append("CVI contains no genuinely four-partite entangled states")
    if report.signature_disagreement:
        report.notes.append("per-qubit signatures differ; class taken from the highest-order one")
    return report


def classify(state: PureState, tol: float = DEFAULT_TOL, **kwargs) -> ClassReport:
    if state.n == 3:
        return classify3(state, tol)
    if state.n == 4:
        return classify4(state, tol, **kwargs)
    raise DomainError(f"class labels exist for 3 and 4 qubits only (got {state.n}); use count_classes")


def count_classes(n: int) -> tuple[int, int]:
    """``(major classes, N-partite entanglement types)`` = ``(2^(n-1) - 1, 2^(n-1) - n + 2)``.

    The type count drops the ``n - 3`` singletons ``{K}`` with ``2 < K < n``;
    for ``n = 2`` there are none to drop, so both counts are 1.
    """
    if n < 2:
        raise DomainError("need at least two qubits")
    major = 2 ** (n - 1) - 1
    return major, major - max(0, n - 3)


def enumerate_signatures(n: int) -> tuple[list[frozenset], list[frozenset]]:
    """All nonempty subsets of ``{2..n}``, and those that can hold N-partite entanglement.

    A lone ``{K}`` with ``2 < K < n`` leaves some qubit out of every coherence.
    """
    ks = range(2, n + 1)
    subsets = [frozenset(c) for size in range(1, n) for c in combinations(ks, size)]
    types = [s for s in subsets if not (len(s) == 1 and 2 < next(iter(s)) < n)]
    return subsets, types
