"""
Recursive-descent parser for the state description language.

    state    := mixture | super
    mixture  := "mix" weighted (";" weighted)*
    weighted := number ":" super
    super    := term (("+" | "-") term)*
    term     := ["+" | "-"] ( [scalar "*"] ket
                            | [scalar "*"] "(" super ")" ["/" scalar] )
    ket      := "|" slot ("," slot)* ">"
    slot     := integer | "c" ":" complex
    complex  := ["-"] number [("+" | "-") (number "i" | "i")] | ["-"] number "i" | ["-"] "i"

A sign written directly in front of a number belongs to that number, so
"-0.3-0.2i*|1>" has the coefficient -0.3-0.2i.
"""
import re
from dataclasses import dataclass

from apps.states.models import Coherent, Fock, ProductKet
from config.exceptions import DslParseError

PROBABILITY_TOLERANCE = 1e-9
MAX_NESTING = 64

TOKEN_PATTERN = re.compile(r'''
    (?P<WS>\s+)
  | (?P<NUMBER>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<WORD>[A-Za-z_]\w*)
  | (?P<PUNCT>[|>,+\-*/():;])
''', re.VERBOSE)

DISPLAY = {
    'NUMBER': 'number',
    'MIX': "'mix'",
    'I': "'i'",
    'C': "'c'",
    'EOF': 'end of input',
}
KEYWORDS = {'mix': 'MIX', 'i': 'I', 'c': 'C'}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


@dataclass(frozen=True)
class Position:
    offset: int
    line: int
    column: int

    @classmethod
    def at(cls, text, offset):
        line = text.count('\n', 0, offset) + 1
        column = offset - text.rfind('\n', 0, offset)
        return cls(offset, line, column)


@dataclass(frozen=True)
class KetNode:
    ket: ProductKet
    position: Position


@dataclass(frozen=True)
class ScaledNode:
    coefficient: complex
    child: object
    position: Position


@dataclass(frozen=True)
class SumNode:
    children: tuple
    position: Position


@dataclass(frozen=True)
class StateExpr:
    """
    Parsed state: (probability, vector expression) components.

    A plain superposition is a single component with probability 1 and
    `is_mixture` False.
    """
    components: tuple
    mode_count: int
    kind: str
    is_mixture: bool = False


def display(kind):
    return DISPLAY.get(kind, f"'{kind}'")


def tokenize(text):
    """Split `text` into tokens, ending with an EOF token."""
    tokens = []
    offset = 0
    while offset < len(text):
        match = TOKEN_PATTERN.match(text, offset)
        if not match:
            position = Position.at(text, offset)
            raise DslParseError(
                f'Unexpected character {text[offset]!r}', code='lexical_error',
                offset=offset, line=position.line, column=position.column,
            )
        group = match.lastgroup
        value = match.group()
        if group == 'WORD':
            if value not in KEYWORDS:
                position = Position.at(text, offset)
                raise DslParseError(
                    f'Unknown word {value!r}', code='lexical_error',
                    offset=offset, line=position.line, column=position.column,
                    expected=[display(kind) for kind in KEYWORDS.values()],
                )
            tokens.append(Token(KEYWORDS[value], value, offset))
        elif group == 'NUMBER':
            tokens.append(Token('NUMBER', value, offset))
        elif group == 'PUNCT':
            tokens.append(Token(value, value, offset))
        offset = match.end()
    tokens.append(Token('EOF', '', len(text)))
    return tokens


class Parser:
    """Single-use parser over one input text."""

    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0
        self.depth = 0
        self.mode_count = None
        self.kind = None

    # Token helpers

    def peek(self, ahead=0):
        return self.tokens[min(self.index + ahead, len(self.tokens) - 1)]

    def advance(self):
        token = self.peek()
        self.index += 1
        return token

    def position(self, token=None):
        return Position.at(self.text, (token or self.peek()).offset)

    def error(self, message, expected=(), code='syntax_error', token=None):
        position = self.position(token)
        return DslParseError(
            message, code=code, offset=position.offset, line=position.line,
            column=position.column, expected=[display(kind) for kind in expected],
        )

    def expect(self, kind):
        token = self.peek()
        if token.kind != kind:
            raise self.error(f'Unexpected {display(token.kind)}', expected=[kind])
        return self.advance()

    # Grammar

    def parse(self):
        if self.peek().kind == 'MIX':
            return self.mixture()
        node = self.superposition()
        if self.peek().kind != 'EOF':
            raise self.error(f'Unexpected {display(self.peek().kind)}', expected=['+', '-', 'EOF'])
        return StateExpr(((1.0, node),), self.mode_count, self.kind)

    def mixture(self):
        mix_token = self.expect('MIX')
        components = []
        while True:
            components.append(self.weighted())
            if self.peek().kind == ';':
                self.advance()
                continue
            if self.peek().kind != 'EOF':
                raise self.error(f'Unexpected {display(self.peek().kind)}', expected=[';', '+', '-', 'EOF'])
            break
        total = sum(p for p, _ in components)
        if not abs(total - 1.0) <= PROBABILITY_TOLERANCE:
            raise self.error(
                f'Mixture probabilities sum to {total!r}, not 1', code='probability_sum', token=mix_token
            )
        return StateExpr(tuple(components), self.mode_count, self.kind, is_mixture=True)

    def weighted(self):
        token = self.expect('NUMBER')
        probability = float(token.text)
        if not probability > 0:
            raise self.error(
                f'Mixture probability must be positive, got {token.text}', code='probability_sum', token=token
            )
        self.expect(':')
        return probability, self.superposition()

    def superposition(self):
        start = self.position()
        children = [self.term()]
        while self.peek().kind in ('+', '-'):
            sign = -1.0 if self.advance().kind == '-' else 1.0
            child = self.term()
            children.append(child if sign > 0 else ScaledNode(-1.0 + 0j, child, child.position))
        return children[0] if len(children) == 1 else SumNode(tuple(children), start)

    def term(self):
        start = self.position()
        token = self.peek()
        if token.kind in ('+', '-') and self.peek(1).kind in ('|', '('):
            self.advance()
            child = self.term()
            return child if token.kind == '+' else ScaledNode(-1.0 + 0j, child, start)

        coefficient = None
        if self.starts_scalar():
            coefficient = self.scalar()
            self.expect('*')

        if self.peek().kind == '|':
            node = self.ket()
        elif self.peek().kind == '(':
            node = self.group()
        else:
            expected = ['|', '('] if coefficient is not None else ['|', '(', 'NUMBER', 'I', '+', '-']
            raise self.error(f'Unexpected {display(self.peek().kind)}', expected=expected)
        return node if coefficient is None else ScaledNode(coefficient, node, start)

    def group(self):
        start = self.position()
        self.expect('(')
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self.error('Parentheses nested too deeply')
        node = self.superposition()
        self.depth -= 1
        self.expect(')')
        if self.peek().kind == '/':
            self.advance()
            divisor_token = self.peek()
            divisor = self.scalar(compound=False)
            if divisor == 0:
                raise self.error('Division by zero', token=divisor_token)
            node = ScaledNode(1.0 / divisor, node, start)
        return node

    def starts_scalar(self):
        kinds = (self.peek().kind, self.peek(1).kind)
        return kinds[0] in ('NUMBER', 'I') or (kinds[0] in ('+', '-') and kinds[1] in ('NUMBER', 'I'))

    def scalar(self, compound=True):
        """Complex literal; with `compound` off only a single real or imaginary part is read."""
        sign = 1.0
        if self.peek().kind in ('+', '-'):
            sign = -1.0 if self.advance().kind == '-' else 1.0
        token = self.peek()
        if token.kind == 'I':
            self.advance()
            return complex(0.0, sign)
        if token.kind != 'NUMBER':
            raise self.error(f'Unexpected {display(token.kind)}', expected=['NUMBER', 'I'])
        value = sign * float(self.advance().text)
        if self.peek().kind == 'I':
            self.advance()
            return complex(0.0, value)
        if compound and self.peek().kind in ('+', '-'):
            after = (self.peek(1).kind, self.peek(2).kind)
            if after[0] == 'I' or after == ('NUMBER', 'I'):
                imag_sign = -1.0 if self.advance().kind == '-' else 1.0
                imag = 1.0 if self.peek().kind == 'I' else float(self.advance().text)
                self.expect('I')
                return complex(value, imag_sign * imag)
        return complex(value, 0.0)

    def ket(self):
        start_token = self.expect('|')
        slots = [self.slot()]
        while self.peek().kind == ',':
            self.advance()
            slots.append(self.slot())
        if self.peek().kind != '>':
            raise self.error(f'Unexpected {display(self.peek().kind)}', expected=[',', '>'])
        self.advance()

        slot_tokens = [token for token, _ in slots]
        slots = [slot for _, slot in slots]
        kinds = {slot.kind for slot in slots}
        if len(kinds) > 1:
            odd = next(token for token, slot in zip(slot_tokens, slots) if slot.kind != slots[0].kind)
            raise self.error('Fock and coherent slots cannot share a ket', code='dsl_kind_mismatch', token=odd)
        kind = kinds.pop()
        if self.kind is None:
            self.kind, self.mode_count = kind, len(slots)
        elif kind != self.kind:
            raise self.error(
                f'Expected {self.kind} kets, found {kind}', code='dsl_kind_mismatch', token=start_token
            )
        elif len(slots) != self.mode_count:
            raise self.error(
                f'Expected {self.mode_count} modes, found {len(slots)}', code='dsl_mode_mismatch',
                token=start_token,
            )
        return KetNode(ProductKet(tuple(slots)), self.position(start_token))

    def slot(self):
        token = self.peek()
        if token.kind == 'C':
            self.advance()
            self.expect(':')
            return token, Coherent(self.scalar())
        if token.kind == 'NUMBER':
            if not token.text.isdigit():
                raise self.error(f'Occupation must be a nonnegative integer, got {token.text}')
            self.advance()
            return token, Fock(int(token.text))
        raise self.error(f'Unexpected {display(token.kind)}', expected=['NUMBER', 'C'])


def parse(text):
    """Parse state text into a StateExpr, raising DslParseError with position on failure."""
    return Parser(text).parse()
