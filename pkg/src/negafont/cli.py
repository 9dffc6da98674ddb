"""Command-line front end.

Usage:
    negafont classify --state "|000>+|111>" --json
    negafont classify --file states.txt          # one JSON report per line
    negafont fonts --state "|000>+|111>+|110>" --qubit 1
    negafont transpose --state "|00>+|11>" --qubit 2 --dump
    negafont negativity --state "|001>+|010>+|100>"
    negafont canonicalize --state "|0000>-|0011>+|1110>+|1101>" --json
    negafont invariants --state "|000>+|111>"
    negafont count --n 5

Exit codes: 0 ok, 1 parse error, 2 invalid state, 3 numeric failure, 4 bad flags.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .canonical import canonicalize, cluster_invariant
from .classify import SCHEMA_VERSION, classify, count_classes, three_tangle
from .errors import DomainError, InvalidStateError, NegafontError, NumericError, ParseError
from .fonts import enumerate_fonts, font_census, font_total_identity
from .ketparse import format_ket, parse_state, read_lines
from .negativity import global_negativity, kpt_negativity, negativity_of
from .ptranspose import decomposition_residual, global_pt, kway_pt, matrix_to_json

EXIT_OK, EXIT_PARSE, EXIT_STATE, EXIT_NUMERIC, EXIT_FLAGS = 0, 1, 2, 3, 4


class FlagError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise FlagError(message)


def _num(x: float) -> str:
    return repr(float(x))


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _emit(obj: dict) -> None:
    print(json.dumps(obj))


def _table(rows: list[list[str]], header: list[str]) -> str:
    cols = [header] + rows
    widths = [max(len(r[i]) for r in cols) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cols]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _inputs(args) -> list[tuple[int, str]]:
    if args.state is not None:
        return [(1, args.state)]
    try:
        with open(args.file, encoding="utf-8") as fh:
            return list(read_lines(fh.read()))
    except OSError as exc:
        raise FlagError(f"cannot read {args.file}: {exc}") from exc


def _check_qubit(state, q, name="--qubit"):
    if q is not None and not 1 <= q <= state.n:
        raise FlagError(f"{name} {q} out of range for {state.n} qubits")


def _check_k(state, k):
    if k is not None and not 2 <= k <= state.n:
        raise FlagError(f"--k {k} must lie in 2..{state.n}")


# -- subcommands ---------------------------------------------------------------


def _classify_one(text: str, args) -> dict:
    state = parse_state(text)
    kwargs = {}
    if state.n == 4:
        kwargs = dict(assume_canonical=args.assume_canonical, restarts=args.restarts, seed=args.seed)
    return classify(state, args.tol, **kwargs).to_json()


def _print_class(rep: dict, show_canonical: bool) -> None:
    print(f"class: {rep['class']}   subclass: " + ", ".join(f"{k}={v}" for k, v in rep["subclass"].items()))
    if rep["tau3"] is not None:
        print(f"tau3: {_num(rep['tau3'])}")
    print(f"headline qubit: {rep['headline_qubit']}   provisional: {rep['provisional']}")
    print(f"separable qubits: {rep['separable_qubits'] or 'none'}   genuinely entangled: {rep['genuinely_entangled']}")
    rows = []
    for q in rep["per_qubit"]:
        rows.append([
            str(q["qubit"]),
            "{" + ",".join(map(str, q["signature"])) + "}",
            " ".join(f"{k}:{v}" for k, v in q["census"].items()),
            _num(q["negativity"]),
            " ".join(f"{k}:{_num(v)}" for k, v in q["kpt_negativity"].items()),
        ])
    print(_table(rows, ["qubit", "signature", "census", "negativity", "KPT negativity"]))
    for note in rep["notes"]:
        print(f"note: {note}")
    if show_canonical and rep["canonicalization"] is not None:
        amps = [complex(*a) for a in rep["canonicalization"]["canonical_amps"]]
        from .qstate import PureState

        print("canonical form: " + format_ket(PureState.from_amplitudes(amps)))


def cmd_classify(args) -> int:
    if args.canonicalize and args.assume_canonical:
        raise FlagError("--canonicalize and --assume-canonical are mutually exclusive")
    if args.file is not None:
        return _batch(args)
    rep = _classify_one(args.state, args)
    if args.json:
        _emit(rep)
    else:
        _print_class(rep, args.canonicalize)
    return EXIT_OK


def _error_record(lineno: int, text: str, exc: Exception) -> dict:
    kind = {ParseError: "parse", InvalidStateError: "invalid-state", DomainError: "domain"}.get(type(exc))
    if kind is None:
        kind = "numeric" if isinstance(exc, NumericError) else "error"
    err = {"type": kind, "message": exc.message if isinstance(exc, ParseError) else str(exc)}
    if isinstance(exc, ParseError):
        err["offset"] = exc.offset
    return {"schema": SCHEMA_VERSION, "line": lineno, "input": text, "error": err}


def _batch(args) -> int:
    lines = _inputs(args)

    def work(item):
        lineno, text = item
        try:
            rep = _classify_one(text, args)
            rep["line"] = lineno
            return rep
        except NegafontError as exc:
            return _error_record(lineno, text, exc)

    workers = max(1, min(args.workers, len(lines) or 1))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for rec in pool.map(work, lines):
            _emit(rec)
    return EXIT_OK


def cmd_fonts(args) -> int:
    for _, text in _inputs(args):
        state = parse_state(text)
        _check_qubit(state, args.qubit)
        _check_k(state, args.k)
        fonts = enumerate_fonts(state, args.qubit, args.k)
        census = font_census(state, args.qubit, args.tol)
        if args.json:
            _emit({
                "schema": SCHEMA_VERSION,
                "n": state.n,
                "p": args.qubit,
                "fonts": [f.to_json() for f in fonts],
                "census": census.to_json(),
            })
            continue
        scale = np.abs(state.amps).max() ** 2
        rows = [
            [
                str(f.k),
                ",".join(map(str, f.flips)),
                " ".join(f"A{q}={v}" for q, v in f.spectators) or "-",
                f.base,
                f"{_num(f.det.real)}{'+' if f.det.imag >= 0 else '-'}{_num(abs(f.det.imag))}i",
                "*" if abs(f.det) > args.tol * scale else "",
            ]
            for f in fonts
        ]
        print(_table(rows, ["K", "flips", "spectators", "base", "det", "nonzero"]))
        nonzero = sum(census.counts.values())
        print(f"{len(fonts)} fonts, {nonzero} with nonzero determinant; census "
              + " ".join(f"N{k}={v}" for k, v in sorted(census.counts.items(), reverse=True)))
    return EXIT_OK


def cmd_transpose(args) -> int:
    for _, text in _inputs(args):
        state = parse_state(text)
        _check_qubit(state, args.qubit)
        _check_k(state, args.k)
        op = global_pt(state, args.qubit) if args.k is None else kway_pt(state, args.qubit, args.k)
        neg = negativity_of(op)
        _, resid = decomposition_residual(state, args.qubit)
        out = {
            "schema": SCHEMA_VERSION,
            "n": state.n,
            "p": args.qubit,
            "kind": op.kind,
            "K": args.k,
            "negativity": neg,
            "decomposition_residual": resid,
        }
        if args.dump:
            out["matrix"] = matrix_to_json(op.mat)
        if args.json:
            _emit(out)
            continue
        what = "global partial transpose" if args.k is None else f"{args.k}-way partial transpose"
        print(f"{what} on qubit {args.qubit}")
        print(f"negativity: {_num(neg)}")
        print(f"decomposition residual (max abs): {_num(resid)}")
        if args.dump:
            print(json.dumps(out["matrix"]))
    return EXIT_OK


def cmd_negativity(args) -> int:
    for _, text in _inputs(args):
        state = parse_state(text)
        _check_qubit(state, args.qubit)
        qubits = [args.qubit] if args.qubit else range(1, state.n + 1)
        recs = [
            {
                "qubit": p,
                "negativity": global_negativity(state, p),
                "kpt_negativity": {str(k): kpt_negativity(state, p, k) for k in range(2, state.n + 1)},
            }
            for p in qubits
        ]
        if args.json:
            _emit({"schema": SCHEMA_VERSION, "n": state.n, "qubits": recs})
            continue
        rows = [[str(r["qubit"]), _num(r["negativity"])] + [_num(v) for v in r["kpt_negativity"].values()] for r in recs]
        print(_table(rows, ["qubit", "global"] + [f"K={k}" for k in range(2, state.n + 1)]))
    return EXIT_OK


def cmd_canonicalize(args) -> int:
    for _, text in _inputs(args):
        state = parse_state(text)
        if state.n < 3:
            raise DomainError("canonicalization needs at least three qubits")
        cf = canonicalize(state, args.tol, restarts=args.restarts, seed=args.seed, slocc=args.slocc)
        rec = cf.to_json()
        rec["schema"] = SCHEMA_VERSION
        rec["canonical_ket"] = format_ket(cf.state)
        if args.json:
            _emit(rec)
            continue
        print(f"canonical form: {rec['canonical_ket']}")
        print(f"method: {cf.method}   LBP terms: {cf.lbp_count}   objective: {cf.objective}")
        if cf.method == "heuristic":
            print(f"restarts: {cf.restarts_used}   converged: {cf.converged}")
        for op in cf.ops:
            m = op.matrix
            print(f"  {op.kind} on qubit {op.qubit}: " + json.dumps([_cplx(z) for z in m.reshape(-1)]))
    return EXIT_OK


def cmd_invariants(args) -> int:
    for _, text in _inputs(args):
        state = parse_state(text)
        rec = {"schema": SCHEMA_VERSION, "n": state.n}
        if state.n == 3:
            rec["tau3"] = three_tangle(state)
        if state.n >= 3:
            rec["cluster_invariant"] = _cplx(cluster_invariant(state))
        ident = []
        for p in range(1, state.n + 1):
            lhs, rhs = font_total_identity(state, p)
            ident.append({"qubit": p, "negativity_sq": lhs, "four_font_sq_sum": rhs, "difference": abs(lhs - rhs)})
        rec["font_sum_identity"] = ident
        if args.json:
            _emit(rec)
            continue
        if "tau3" in rec:
            print(f"tau3: {_num(rec['tau3'])}")
        if "cluster_invariant" in rec:
            ci = rec["cluster_invariant"]
            print(f"cluster invariant: {_num(ci[0])} {'+' if ci[1] >= 0 else '-'} {_num(abs(ci[1]))}i")
        rows = [[str(r["qubit"]), _num(r["negativity_sq"]), _num(r["four_font_sq_sum"]), _num(r["difference"])] for r in ident]
        print(_table(rows, ["qubit", "N_G^2", "4 sum|D|^2", "difference"]))
    return EXIT_OK


def cmd_count(args) -> int:
    if args.n < 2:
        raise FlagError("--n must be at least 2")
    major, types = count_classes(args.n)
    if args.json:
        _emit({"schema": SCHEMA_VERSION, "n": args.n, "major_classes": major, "n_partite_types": types})
    else:
        print(f"major classes: {major}, N-partite types: {types}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="negafont", description="Negativity-font classification of multiqubit pure states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(p, qubit_required=False):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--state", help="ket expression, e.g. '|000>+|111>'")
        src.add_argument("--file", help="file with one ket expression per line")
        p.add_argument("--tol", type=float, default=1e-10, help="relative zero tolerance (default 1e-10)")
        p.add_argument("--json", action="store_true", help="emit JSON instead of tables")
        return p

    p = with_input(sub.add_parser("classify", help="assign class and subclass"))
    p.add_argument("--canonicalize", action="store_true", help="also print the canonical form")
    p.add_argument("--assume-canonical", action="store_true", help="skip canonicalization (4 qubits)")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=min(4, os.cpu_count() or 1), help="batch worker threads")
    p.set_defaults(func=cmd_classify)

    p = with_input(sub.add_parser("fonts", help="list negativity fonts"))
    p.add_argument("--qubit", type=int, required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_fonts)

    p = with_input(sub.add_parser("transpose", help="global or K-way partial transpose"))
    p.add_argument("--qubit", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--dump", action="store_true", help="print the matrix as [re, im] pairs")
    p.set_defaults(func=cmd_transpose)

    p = with_input(sub.add_parser("negativity", help="global and K-way negativities"))
    p.add_argument("--qubit", type=int)
    p.set_defaults(func=cmd_negativity)

    p = with_input(sub.add_parser("canonicalize", help="local-unitary canonical form"))
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--slocc", action="store_true", help="allow the invertible (SLOCC) diagonalizing step")
    p.set_defaults(func=cmd_canonicalize)

    p = with_input(sub.add_parser("invariants", help="3-tangle, cluster invariant, font-sum identity"))
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("count", help="number of classes and N-partite types")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "restarts", 1) < 1 or getattr(args, "workers", 1) < 1:
            raise FlagError("--restarts and --workers must be positive")
        if getattr(args, "tol", 1.0) <= 0:
            raise FlagError("--tol must be positive")
        return args.func(args)
    except FlagError as exc:
        print(f"negafont: {exc}", file=sys.stderr)
        return EXIT_FLAGS
    except ParseError as exc:
        print(f"negafont: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidStateError, DomainError) as exc:
        print(f"negafont: invalid state: {exc}", file=sys.stderr)
        return EXIT_STATE
    except NumericError as exc:
        print(f"negafont: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())
