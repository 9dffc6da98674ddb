"""JSON Schemas (draft 2020-12) for every record the command line emits."""
from .classify import SCHEMA_VERSION

_NUM = {"type": "number"}
_CPLX = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}
_COUNTS = {"type": "object", "patternProperties": {"^[0-9]+$": {"type": "integer", "minimum": 0}}, "additionalProperties": False}
_REALS = {"type": "object", "patternProperties": {"^[0-9]+$": _NUM}, "additionalProperties": False}
_VERSION = {"const": SCHEMA_VERSION}

LOCAL_OPERATOR = {
    "type": "object",
    "required": ["qubit", "matrix", "kind"],
    "properties": {
        "qubit": {"type": "integer", "minimum": 1},
        "matrix": {"type": "array", "items": _CPLX, "minItems": 4, "maxItems": 4},
        "kind": {"enum": ["unitary", "invertible"]},
    },
    "additionalProperties": False,
}

CANONICALIZATION = {
    "type": "object",
    "required": ["method", "canonical_amps", "lbp_count", "ops", "objective", "restarts_used", "converged"],
    "properties": {
        "schema": _VERSION,
        "method": {"enum": ["exact3", "heuristic"]},
        "canonical_amps": {"type": "array", "items": _CPLX},
        "lbp_count": {"type": "integer", "minimum": 1},
        "ops": {"type": "array", "items": LOCAL_OPERATOR},
        "objective": {"type": "array", "items": {"type": "integer"}, "minItems": 3, "maxItems": 3},
        "restarts_used": {"type": "integer", "minimum": 0},
        "converged": {"type": "boolean"},
        "canonical_ket": {"type": "string"},
    },
    "additionalProperties": False,
}

QUBIT_REPORT = {
    "type": "object",
    "required": ["qubit", "signature", "census", "font_sq_sum", "negativity", "kpt_negativity"],
    "properties": {
        "qubit": {"type": "integer", "minimum": 1},
        "signature": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "census": _COUNTS,
        "font_sq_sum": _NUM,
        "negativity": _NUM,
        "kpt_negativity": _REALS,
    },
    "additionalProperties": False,
}

CLASS_REPORT = {
    "type": "object",
    "required": [
        "schema", "n", "class", "subclass", "headline_qubit", "per_qubit", "tau3",
        "separable_qubits", "fully_separable", "genuinely_entangled",
        "signature_disagreement", "canonicalization", "provisional", "notes",
    ],
    "properties": {
        "schema": _VERSION,
        "n": {"enum": [3, 4]},
        "class": {"enum": ["CI", "CII", "CIII", "CIV", "CV", "CVI", "CVII", "FS"]},
        "subclass": {"type": "object", "patternProperties": {"^N[2-4]$": {"type": "integer", "minimum": 0}}, "additionalProperties": False},
        "headline_qubit": {"type": "integer", "minimum": 1},
        "per_qubit": {"type": "array", "items": QUBIT_REPORT},
        "tau3": {"type": ["number", "null"]},
        "separable_qubits": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "fully_separable": {"type": "boolean"},
        "genuinely_entangled": {"type": "boolean"},
        "signature_disagreement": {"type": "boolean"},
        "canonicalization": {"oneOf": [{"type": "null"}, CANONICALIZATION]},
        "provisional": {"type": "boolean"},
        "notes": {"type": "array", "items": {"type": "string"}},
        "line": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

ERROR_RECORD = {
    "type": "object",
    "required": ["schema", "line", "input", "error"],
    "properties": {
        "schema": _VERSION,
        "line": {"type": "integer", "minimum": 1},
        "input": {"type": "string"},
        "error": {
            "type": "object",
            "required": ["type", "message"],
            "properties": {
                "type": {"enum": ["parse", "invalid-state", "domain", "numeric", "error"]},
                "message": {"type": "string"},
                "offset": {"type": "integer", "minimum": 0},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

FONT = {
    "type": "object",
    "required": ["p", "K", "flips", "spectators", "base", "entries", "det"],
    "properties": {
        "p": {"type": "integer", "minimum": 1},
        "K": {"type": "integer", "minimum": 2},
        "flips": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "spectators": {"type": "object", "patternProperties": {"^[0-9]+$": {"enum": [0, 1]}}, "additionalProperties": False},
        "base": {"type": "string", "pattern": "^[01]*$"},
        "entries": {"type": "array", "items": _CPLX, "minItems": 4, "maxItems": 4},
        "det": _CPLX,
    },
    "additionalProperties": False,
}

FONT_LIST = {
    "type": "object",
    "required": ["schema", "n", "p", "fonts", "census"],
    "properties": {
        "schema": _VERSION,
        "n": {"type": "integer", "minimum": 2},
        "p": {"type": "integer", "minimum": 1},
        "fonts": {"type": "array", "items": FONT},
        "census": {
            "type": "object",
            "required": ["p", "counts", "total_sq"],
            "properties": {"p": {"type": "integer"}, "counts": _COUNTS, "total_sq": _NUM},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

TRANSPOSE = {
    "type": "object",
    "required": ["schema", "n", "p", "kind", "K", "negativity", "decomposition_residual"],
    "properties": {
        "schema": _VERSION,
        "n": {"type": "integer"},
        "p": {"type": "integer"},
        "kind": {"enum": ["global-pt", "kway-pt"]},
        "K": {"type": ["integer", "null"]},
        "negativity": _NUM,
        "decomposition_residual": _NUM,
        "matrix": {"type": "array", "items": _CPLX},
    },
    "additionalProperties": False,
}

NEGATIVITY = {
    "type": "object",
    "required": ["schema", "n", "qubits"],
    "properties": {
        "schema": _VERSION,
        "n": {"type": "integer"},
        "qubits": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["qubit", "negativity", "kpt_negativity"],
                "properties": {"qubit": {"type": "integer"}, "negativity": _NUM, "kpt_negativity": _REALS},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

INVARIANTS = {
    "type": "object",
    "required": ["schema", "n", "font_sum_identity"],
    "properties": {
        "schema": _VERSION,
        "n": {"type": "integer"},
        "tau3": _NUM,
        "cluster_invariant": _CPLX,
        "font_sum_identity": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["qubit", "negativity_sq", "four_font_sq_sum", "difference"],
                "properties": {
                    "qubit": {"type": "integer"},
                    "negativity_sq": _NUM,
                    "four_font_sq_sum": _NUM,
                    "difference": _NUM,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

COUNT = {
    "type": "object",
    "required": ["schema", "n", "major_classes", "n_partite_types"],
    "properties": {
        "schema": _VERSION,
        "n": {"type": "integer", "minimum": 2},
        "major_classes": {"type": "integer"},
        "n_partite_types": {"type": "integer"},
    },
    "additionalProperties": False,
}

BY_COMMAND = {
    "classify": CLASS_REPORT,
    "fonts": FONT_LIST,
    "transpose": TRANSPOSE,
    "negativity": NEGATIVITY,
    "canonicalize": CANONICALIZATION,
    "invariants": INVARIANTS,
    "count": COUNT,
}
