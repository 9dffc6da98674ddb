"""Parser and printer for ket expressions such as ``(0.5+0.5i)|01> - 1/sqrt(2)|10>``.

Grammar (whitespace is ignored between tokens)::

    expr   := sign? term (sign term)*
    term   := coeff? ket | coeff '*'? ket
    ket    := '|' [01]+ '>'
    coeff  := number | number 'i' | 'i' | '(' number (sign number 'i')? ')'
            | number '/sqrt(' uint ')'
    number := decimal literal, optional exponent

Signs fold into the coefficients and repeated kets are summed, keeping the
position of their first occurrence.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import ParseError
from .qstate import PureState, make_state

_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?", re.ASCII)
_UINT = re.compile(r"\d+", re.ASCII)
_BITS = re.compile(r"[01]+")


@dataclass(frozen=True)
class KetTerm:
    coeff: complex
    bits: str


@dataclass(frozen=True)
class KetExpression:
    terms: tuple[KetTerm, ...]

    @property
    def n(self) -> int:
        return len(self.terms[0].bits)


def _byte_len(text: str) -> int:
    # undecodable input bytes were carried through as escape surrogates
    try:
        return len(text.encode("utf-8", "surrogateescape"))
    except UnicodeEncodeError:
        return len(text.encode("utf-8", "surrogatepass"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, pos: int | None = None) -> ParseError:
        at = self.pos if pos is None else pos
        return ParseError(message, _byte_len(self.text[:at]))

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r\n":
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def eat(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str, what: str) -> None:
        if not self.eat(literal):
            raise self.error(f"expected {what}")

    def match(self, pattern: re.Pattern) -> str | None:
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def number(self) -> float:
        tok = self.match(_NUMBER)
        if tok is None:
            raise self.error("expected a number")
        return float(tok)

    def sign(self) -> int | None:
        if self.eat("+"):
            return 1
        if self.eat("-"):
            return -1
        return None

    def coeff(self) -> complex:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            re_part = self.number()
            if self.eat("i"):
                value = complex(0, re_part)
            else:
                value = complex(re_part)
                s = self.sign()
                if s is not None:
                    im = self.number()
                    self.expect("i", "'i' after imaginary part")
                    value += complex(0, s * im)
            self.expect(")", "')'")
            return value
        if ch == "i":
            self.pos += 1
            return 1j
        if ch and ch in "0123456789.":
            x = self.number()
            if self.eat("i"):
                return complex(0, x)
            if self.eat("/"):
                self.expect("sqrt", "'sqrt'")
                self.expect("(", "'(' after sqrt")
                start = self.pos
                tok = self.match(_UINT)
                if tok is None:
                    raise self.error("expected an unsigned integer inside sqrt()")
                if int(tok) == 0:
                    raise self.error("division by sqrt(0)", start)
                self.expect(")", "')'")
                return complex(x / math.sqrt(int(tok)))
            return complex(x)
        raise self.error("expected a coefficient or '|'")

    def ket(self) -> str:
        self.expect("|", "'|' opening a ket")
        start = self.pos
        bits = self.match(_BITS)
        if bits is None:
            raise self.error("empty or non-binary ket", start)
        self.expect(">", "'>' closing the ket")
        return bits

    def term(self) -> tuple[complex, str, int]:
        self.skip_ws()
        start = self.pos
        coeff = 1 + 0j
        if self.peek() != "|":
            coeff = self.coeff()
            self.eat("*")
        return coeff, self.ket(), start

    def expr(self) -> KetExpression:
        if not self.text.strip():
            raise self.error("empty expression")
        sums: dict[str, complex] = {}
        width = None
        sign = self.sign() or 1
        while True:
            coeff, bits, start = self.term()
            if width is None:
                width = len(bits)
                if width < 2:
                    raise self.error("kets need at least two qubits", start)
            elif len(bits) != width:
                raise self.error(f"ket |{bits}> has {len(bits)} qubits, expected {width}", start)
            sums[bits] = sums.get(bits, 0j) + sign * coeff
            self.skip_ws()
            if self.pos == len(self.text):
                break
            s = self.sign()
            if s is None:
                raise self.error("unexpected trailing input")
            sign = s
        return KetExpression(tuple(KetTerm(c, b) for b, c in sums.items()))


def parse_ket(text: str | bytes) -> KetExpression:
    """Parse an expression; bytes are decoded as UTF-8 and error offsets count input bytes."""
    if isinstance(text, (bytes, bytearray)):
        text = bytes(text).decode("utf-8", "surrogateescape")
    return _Parser(text).expr()


def to_state(expr: KetExpression) -> PureState:
    return make_state(expr.n, [(t.bits, t.coeff) for t in expr.terms])


def parse_state(text: str | bytes) -> PureState:
    return to_state(parse_ket(text))


def _fmt(x: float) -> str:
    return repr(float(x))


def _format_term(coeff: complex, bits: str) -> tuple[str, str]:
    """Sign and unsigned body of one printed term."""
    re_, im = coeff.real, coeff.imag
    if im == 0:
        return ("-" if math.copysign(1, re_) < 0 else "+"), f"{_fmt(abs(re_))}|{bits}>"
    if re_ == 0:
        return ("-" if im < 0 else "+"), f"{_fmt(abs(im))}i|{bits}>"
    sign = "-" if re_ < 0 else "+"
    if re_ < 0:
        re_, im = -re_, -im
    op = "-" if im < 0 else "+"
    return sign, f"({_fmt(re_)}{op}{_fmt(abs(im))}i)|{bits}>"


def format_ket(expr: KetExpression | PureState) -> str:
    """Canonical text form; ``parse_ket(format_ket(e))`` reproduces the terms exactly."""
    if isinstance(expr, PureState):
        terms = [KetTerm(complex(a), format(i, f"0{expr.n}b")) for i, a in enumerate(expr.amps) if a != 0]
    else:
        terms = list(expr.terms)
    parts = []
    for i, t in enumerate(terms):
        sign, body = _format_term(t.coeff, t.bits)
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def read_lines(text: str):
    """Yield ``(line_number, expression_text)`` for non-blank lines, '#' comments removed."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            yield lineno, body
