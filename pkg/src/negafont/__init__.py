"""Negativity fonts, partial transposes and entanglement classes of multiqubit pure states."""
__version__ = "0.1.0"

from .canonical import (
    CanonicalForm,
    annihilate_font_unitary,
    canonicalize,
    canonicalize3,
    canonicalize_heuristic,
    cluster_invariant,
    font_ilo,
    zero_slot_unitary,
)
from .classify import (
    ClassReport,
    classify,
    classify3,
    classify4,
    count_classes,
    gpt_signature,
    three_tangle,
)
from .errors import (
    ClassificationError,
    DegenerateSlotError,
    DomainError,
    InvalidStateError,
    NegafontError,
    NoSolutionError,
    NumericError,
    ParseError,
)
from .fonts import NegativityFont, enumerate_fonts, font_at, font_census, font_count, find_font
from .ketparse import format_ket, parse_ket, parse_state
from .negativity import global_negativity, kpt_negativity, min_eigenvalue, negativity_of
from .ptranspose import decomposition_residual, global_pt, kway_pt
from .qstate import DensityOperator, LocalOperator, PureState, density, make_state, random_state
