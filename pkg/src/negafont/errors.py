"""Exception hierarchy shared by every negafont module."""


class NegafontError(Exception):
    """Base class for all library errors."""


class DomainError(NegafontError, ValueError):
    """An argument lies outside the domain of the operation."""


class InvalidStateError(NegafontError, ValueError):
    """The amplitudes do not describe a valid pure state (e.g. zero norm)."""


class NumericError(NegafontError, ArithmeticError):
    """A numerical routine failed its own accuracy contract."""


class DegenerateSlotError(DomainError):
    """The slot used to build a zeroing unitary has vanishing amplitude."""


class NoSolutionError(NumericError):
    """No local unitary annihilating the requested font was found."""


class ClassificationError(NumericError):
    """Signature-based label and invariant relation disagree."""


class ParseError(NegafontError, ValueError):
    """Malformed ket expression; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.message = message
        self.offset = offset
