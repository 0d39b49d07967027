"""
Parser for inequality text such as `I(X1:Y1,M) + 2 H(A|B) <= H(M)`.

Terms: `H(S)`, `H(S|T)`, `I(S:T)`, `I(S:T|U)` and `I(S:T:U)` (triple
information), each with an optional rational coefficient `p` or `p/q`,
optionally followed by `*`. A side may be the constant `0`.
"""
import re
from fractions import Fraction
from typing import List, NamedTuple, Optional

from shared.schemas.certificate import Candidate, LinearExpression
from shared.schemas.constraint import Relation
from shared.utils.exceptions import ParseError
from services.scenarios.services.inequalities_service import get_inequality, is_named_inequality

_TOKEN_RE = re.compile(
    r"(?P<rel><=|>=|=<|=>|=)|(?P<num>\d+(?:\s*/\s*\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[-+*(),:|])"
)


class Token(NamedTuple):
    kind: str
    value: str
    column: int


def _tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"Unexpected character {text[pos]!r}", column=pos + 1)
        kind = match.lastgroup
        value = match.group(kind)
        if kind == "rel":
            value = {"=<": "<=", "=>": ">="}.get(value, value)
        tokens.append(Token(kind, value, pos + 1))
        pos = match.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message: str):
        raise ParseError(message, column=self.current.column)

    def take(self, kind: str, value: Optional[str] = None) -> Token:
        tok = self.current
        if tok.kind != kind or (value is not None and tok.value != value):
            wanted = value or kind
            found = tok.value or "end of input"
            self.error(f"Expected {wanted!r}, found {found!r}")
        self.pos += 1
        return tok

    def accept(self, kind: str, value: Optional[str] = None) -> Optional[Token]:
        tok = self.current
        if tok.kind == kind and (value is None or tok.value == value):
            self.pos += 1
            return tok
        return None

    def names(self) -> List[str]:
        out = [self.take("name").value]
        while self.accept("sym", ","):
            out.append(self.take("name").value)
        return out

    def atom(self) -> LinearExpression:
        head = self.take("name")
        if head.value not in ("H", "I"):
            raise ParseError(f"Unknown term {head.value!r}, expected H or I", column=head.column)
        self.take("sym", "(")
        if head.value == "H":
            subset = self.names()
            expr = (
                LinearExpression.conditional_entropy(subset, self.names())
                if self.accept("sym", "|")
                else LinearExpression.entropy(subset)
            )
        else:
            parts = [self.names()]
            self.take("sym", ":")
            parts.append(self.names())
            if self.accept("sym", ":"):
                parts.append(self.names())
                expr = LinearExpression.triple_information(*parts)
            elif self.accept("sym", "|"):
                expr = LinearExpression.mutual_information(parts[0], parts[1], self.names())
            else:
                expr = LinearExpression.mutual_information(parts[0], parts[1])
        self.take("sym", ")")
        return expr

    def term(self) -> Optional[LinearExpression]:
        """A coefficient-weighted atom, or None for the constant 0."""
        coefficient = Fraction(1)
        number = self.accept("num")
        if number is not None:
            num, _, den = number.value.replace(" ", "").partition("/")
            if den and int(den) == 0:
                raise ParseError("Zero denominator", column=number.column)
            coefficient = Fraction(int(num), int(den) if den else 1)
            star = self.accept("sym", "*")
            if not star and self.current.kind != "name":
                if coefficient != 0:
                    raise ParseError("Constant terms other than 0 are not allowed", column=number.column)
                return None
        return self.atom().scale(coefficient)

    def side(self) -> LinearExpression:
        total = LinearExpression.zero()
        sign = -1 if self.accept("sym", "-") else 1
        if sign == 1:
            self.accept("sym", "+")
        while True:
            term = self.term()
            if term is not None:
                total = total + term.scale(sign)
            if self.accept("sym", "+"):
                sign = 1
            elif self.accept("sym", "-"):
                sign = -1
            else:
                return total

    def parse(self) -> Candidate:
        lhs = self.side()
        rel = self.take("rel").value
        rhs = self.side()
        self.take("end")
        text = self.text.strip()
        if rel == "<=":
            return Candidate.less_equal(lhs, rhs, text=text)
        if rel == ">=":
            return Candidate.less_equal(rhs, lhs, text=text)
        return Candidate(expression=lhs - rhs, relation=Relation.EQ_ZERO, text=text)


def parse_inequality(text: str) -> Candidate:
    """
    Parse inequality text into a candidate `expression >= 0` (or `= 0`).

    Raises ParseError with the 1-based column of the offending token.
    """
    return _Parser(text).parse()


def resolve_inequality(text: str) -> Candidate:
    """A registry name such as `IC_tight_n(3)`, or inequality text."""
    if is_named_inequality(text):
        return get_inequality(text).candidate
    return parse_inequality(text)
