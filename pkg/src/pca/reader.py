"""Prolog tokenizer and operator-precedence reader.

The tokenizer drops comments and layout but remembers whether layout
preceded each token, which the parser needs to tell ``-(1)`` from ``- (1)``
and ``-1`` from ``- 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InvalidCharacter,
    InvalidEscape,
    OperatorClash,
    UnbalancedDelimiter,
    UnexpectedToken,
    UnterminatedBlockComment,
    UnterminatedQuotedAtom,
)
from .ops import OpTable, apply_directive
from .terms import NIL, Atom, Compound, Float, Int, Term, Var, make_list

# token kinds
NAME = "name"
QUOTED = "quoted"
VAR = "var"
INT = "int"
FLOAT = "float"
STRING = "string"
OPEN = "("
OPEN_CT = "open_ct"
CLOSE = ")"
OPEN_LIST = "["
CLOSE_LIST = "]"
OPEN_CURLY = "{"
CLOSE_CURLY = "}"
COMMA = ","
BAR = "|"
END = "end"

SYMBOL_CHARS = frozenset("+-*/\\^<>=~:.?@#&$")
SOLO_CHARS = frozenset("!;")
_PUNCT = {"(": OPEN, ")": CLOSE, "[": OPEN_LIST, "]": CLOSE_LIST,
          "{": OPEN_CURLY, "}": CLOSE_CURLY, ",": COMMA, "|": BAR}
_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "a": "\a", "b": "\b", "f": "\f",
            "v": "\v", "0": "\0", "e": "\x1b", "s": " ", "\\": "\\", "'": "'",
            '"': '"', "`": "`"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    layout_before: bool = field(default=False, compare=False)


def is_alnum(ch: str) -> bool:
    return ch == "_" or ch.isalnum()


def is_layout(ch: str) -> bool:
    return ch.isspace()


class _Scanner:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def peek(self, offset=0) -> str:
        i = self.pos + offset
        return self.src[i] if i < len(self.src) else ""

    def advance(self, n=1) -> str:
        chunk = self.src[self.pos:self.pos + n]
        for ch in chunk:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return chunk

    def skip_layout(self) -> bool:
        """Skip whitespace and comments; report whether anything was skipped."""
        start = self.pos
        while self.pos < len(self.src):
            ch = self.peek()
            if is_layout(ch):
                self.advance()
            elif ch == "%":
                while self.pos < len(self.src) and self.peek() != "\n":
                    self.advance()
            elif ch == "/" and self.peek(1) == "*":
                line, col = self.line, self.col
                end = self.src.find("*/", self.pos + 2)
                if end < 0:
                    raise UnterminatedBlockComment("unterminated block comment", line, col)
                self.advance(end + 2 - self.pos)
            else:
                break
        return self.pos > start

    def read_escape(self, quote_line, quote_col) -> str | None:
        """Read the escape after a backslash. None means a line continuation."""
        line, col = self.line, self.col - 1
        ch = self.peek()
        if ch == "":
            raise UnterminatedQuotedAtom("unterminated quoted item", quote_line, quote_col)
        if ch == "\n":
            self.advance()
            return None
        if ch == "x":
            self.advance()
            digits = ""
            while self.peek() and self.peek() in "0123456789abcdefABCDEF":
                digits += self.advance()
            if not digits or self.peek() != "\\":
                raise InvalidEscape("malformed \\x escape", line, col)
            self.advance()
            return self._code_point(int(digits, 16), line, col)
        if ch.isdigit() and ch in "01234567":
            digits = ""
            while self.peek() and self.peek() in "01234567":
                digits += self.advance()
            if self.peek() == "\\":
                self.advance()
                return self._code_point(int(digits, 8), line, col)
            if digits == "0":
                return "\0"
            raise InvalidEscape("malformed octal escape", line, col)
        if ch in _ESCAPES:
            self.advance()
            return _ESCAPES[ch]
        raise InvalidEscape(f"unknown escape \\{ch}", line, col)

    @staticmethod
    def _code_point(value, line, col) -> str:
        if value > 0x10FFFF or 0xD800 <= value <= 0xDFFF:
            raise InvalidEscape("escape is not a valid character code", line, col)
        return chr(value)

    def read_quoted(self, quote: str) -> str:
        line, col = self.line, self.col
        self.advance()
        chars = []
        while True:
            ch = self.peek()
            if ch == "":
                raise UnterminatedQuotedAtom("unterminated quoted item", line, col)
            if ch == quote:
                if self.peek(1) == quote:
                    chars.append(quote)
                    self.advance(2)
                    continue
                self.advance()
                return "".join(chars)
            if ch == "\\":
                self.advance()
                esc = self.read_escape(line, col)
                if esc is not None:
                    chars.append(esc)
                continue
            if ch == "\n":
                raise UnterminatedQuotedAtom("newline inside quoted item", line, col)
            chars.append(self.advance())

    def read_number(self) -> tuple[str, str]:
        """Return (kind, canonical text) for a numeric literal."""
        line, col = self.line, self.col
        if self.peek() == "0" and self.peek(1) == "'":
            self.advance(2)
            ch = self.peek()
            if ch == "\\":
                self.advance()
                esc = self.read_escape(line, col)
                if esc is None:
                    raise InvalidEscape("line continuation in character code", line, col)
                return INT, str(ord(esc))
            if ch == "'":
                self.advance()
                if self.peek() == "'":
                    self.advance()
                return INT, "39"
            if ch == "":
                raise UnexpectedToken("end of input in character code", line, col)
            self.advance()
            return INT, str(ord(ch))
        if self.peek() == "0" and self.peek(1) in ("x", "o", "b"):
            base = {"x": 16, "o": 8, "b": 2}[self.peek(1)]
            valid = "0123456789abcdefABCDEF"[: base + (6 if base == 16 else 0)]
            if self.peek(2) and self.peek(2) in valid:
                self.advance(2)
                digits = ""
                while self.peek() and self.peek() in valid:
                    digits += self.advance()
                return INT, str(int(digits, base))
        digits = ""
        while self.peek().isdigit() and self.peek().isascii():
            digits += self.advance()
        if self.peek() == "." and self.peek(1).isdigit() and self.peek(1).isascii():
            text = digits + self.advance()
            while self.peek().isdigit() and self.peek().isascii():
                text += self.advance()
            if self.peek() in ("e", "E"):
                k = 1
                if self.peek(1) in ("+", "-"):
                    k = 2
                if self.peek(k).isdigit() and self.peek(k).isascii():
                    text += self.advance(k)
                    while self.peek().isdigit() and self.peek().isascii():
                        text += self.advance()
            return FLOAT, text
        return INT, str(int(digits))


def tokenize(source: str) -> list[Token]:
    """Split Prolog source into tokens, discarding comments and layout."""
    sc = _Scanner(source)
    tokens: list[Token] = []
    while True:
        layout = sc.skip_layout()
        if sc.pos >= len(sc.src):
            return tokens
        line, col = sc.line, sc.col
        ch = sc.peek()
        if ch.isdigit() and ch.isascii():
            kind, text = sc.read_number()
        elif ch == "_" or ch.isupper():
            text = sc.advance()
            while is_alnum(sc.peek()):
                text += sc.advance()
            kind = VAR
        elif ch.isalpha():
            text = sc.advance()
            while is_alnum(sc.peek()):
                text += sc.advance()
            kind = NAME
        elif ch == "'":
            kind, text = QUOTED, sc.read_quoted("'")
        elif ch in ('"', "`"):
            kind, text = STRING, sc.read_quoted(ch)
        elif ch in _PUNCT:
            text = sc.advance()
            kind = _PUNCT[ch]
            if kind == OPEN and not layout and tokens and tokens[-1].kind in (NAME, QUOTED):
                kind = OPEN_CT
        elif ch in SOLO_CHARS:
            kind, text = NAME, sc.advance()
        elif ch in SYMBOL_CHARS:
            text = ""
            while sc.peek() in SYMBOL_CHARS and sc.peek():
                if text and sc.peek() == "/" and sc.peek(1) == "*":
                    break
                text += sc.advance()
            kind = NAME
            if text == ".":
                nxt = sc.peek()
                if nxt == "" or is_layout(nxt) or nxt == "%":
                    kind = END
        else:
            raise InvalidCharacter(f"invalid character {ch!r}", line, col)
        tokens.append(Token(kind, text, line, col, layout))


class Parser:
    """Reads terms from a token list, one clause at a time."""

    def __init__(self, tokens: list[Token], ops: OpTable | None = None):
        self.tokens = tokens
        self.pos = 0
        self.ops = ops if ops is not None else OpTable.standard()
        self._varmap: dict[str, int] = {}
        self.var_names: list[str] = []

    # cursor helpers

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def peek(self, offset=0) -> Token | None:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            raise UnexpectedToken("unexpected end of input",
                                  last.line if last else 1, last.column if last else 1)
        self.pos += 1
        return tok

    def expect(self, kind: str, opener: Token | None = None) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            if opener is not None:
                where = tok or opener
                raise UnbalancedDelimiter(
                    f"expected {kind!r} to close {opener.text!r} opened at "
                    f"{opener.line}:{opener.column}", where.line, where.column)
            self._unexpected(tok, f"expected {kind!r}")
        return self.next()

    def _unexpected(self, tok: Token | None, why: str = ""):
        if tok is None:
            self.next()  # raises the end-of-input error
        msg = f"unexpected {tok.text!r}" + (f" ({why})" if why else "")
        raise UnexpectedToken(msg, tok.line, tok.column)

    # public entry points

    def read_clause(self) -> Term:
        """Read one term terminated by an end token; variables numbered afresh."""
        self._varmap = {}
        self.var_names = []
        term = self.parse(1200)
        tok = self.peek()
        if tok is None or tok.kind != END:
            if tok is not None and self._is_operator_token(tok):
                raise OperatorClash(f"operator priority clash at {tok.text!r}",
                                    tok.line, tok.column)
            if tok is not None and tok.kind in (CLOSE, CLOSE_LIST, CLOSE_CURLY):
                raise UnbalancedDelimiter(f"unmatched {tok.text!r}", tok.line, tok.column)
            self._unexpected(tok, "expected end of clause")
        self.next()
        return term

    # grammar

    def parse(self, max_prec: int) -> Term:
        left, left_prec = self.parse_primary(max_prec)
        return self.parse_infix(left, left_prec, max_prec)

    def _infix_name(self, tok: Token) -> str | None:
        if tok.kind == COMMA:
            return ","
        if tok.kind == BAR:
            return "|"
        if tok.kind in (NAME, QUOTED) and tok.text != ",":
            return tok.text
        return None

    def _is_operator_token(self, tok: Token) -> bool:
        name = self._infix_name(tok)
        if name in (",", "|"):
            return True
        return name is not None and bool(self.ops.infix(name) or self.ops.postfix(name))

    def parse_infix(self, left: Term, left_prec: int, max_prec: int) -> Term:
        while True:
            tok = self.peek()
            if tok is None:
                return left
            name = self._infix_name(tok)
            if name is None:
                return left
            if name == "|":
                # a bar in operator position behaves as disjunction
                if max_prec < 1100 or left_prec > 1099:
                    return left
                self.next()
                right = self.parse(1100)
                left, left_prec = Compound(";", (left, right)), 1100
                continue
            op = self.ops.infix(name)
            if op is not None:
                lmax, rmax = op.argument_priorities()
                if op.priority <= max_prec and left_prec <= lmax:
                    self.next()
                    right = self.parse(rmax)
                    left, left_prec = Compound(name, (left, right)), op.priority
                    continue
                return left
            op = self.ops.postfix(name)
            if op is not None:
                (lmax,) = op.argument_priorities()
                if op.priority <= max_prec and left_prec <= lmax:
                    self.next()
                    left, left_prec = Compound(name, (left,)), op.priority
                    continue
            return left

    def _variable(self, name: str) -> Var:
        if name == "_":
            ordinal = len(self.var_names)
            self.var_names.append("_")
            return Var(ordinal)
        if name not in self._varmap:
            self._varmap[name] = len(self.var_names)
            self.var_names.append(name)
        return Var(self._varmap[name])

    def _starts_term(self, offset: int) -> bool:
        """Whether the token at ``offset`` can begin an operand of a prefix operator."""
        tok = self.peek(offset)
        if tok is None or tok.kind in (END, CLOSE, CLOSE_LIST, CLOSE_CURLY, COMMA, BAR):
            return False
        if tok.kind in (NAME, QUOTED):
            after = self.peek(offset + 1)
            if after is not None and after.kind == OPEN_CT:
                return True
            if self.ops.prefix(tok.text):
                return True
            if self.ops.infix(tok.text) or self.ops.postfix(tok.text):
                return False
        return True

    def parse_primary(self, max_prec: int) -> tuple[Term, int]:
        tok = self.next()
        kind = tok.kind
        if kind == INT:
            return Int(int(tok.text)), 0
        if kind == FLOAT:
            return Float(float(tok.text)), 0
        if kind == VAR:
            return self._variable(tok.text), 0
        if kind == STRING:
            return make_list([Int(ord(c)) for c in tok.text]), 0
        if kind in (OPEN, OPEN_CT):
            term = self.parse(1200)
            self.expect(CLOSE, tok)
            return term, 0
        if kind == OPEN_LIST:
            nxt = self.peek()
            if nxt is not None and nxt.kind == CLOSE_LIST:
                self.next()
                return self._after_name("[]", max_prec)
            return self._parse_list(tok), 0
        if kind == OPEN_CURLY:
            nxt = self.peek()
            if nxt is not None and nxt.kind == CLOSE_CURLY:
                self.next()
                return self._after_name("{}", max_prec)
            term = self.parse(1200)
            self.expect(CLOSE_CURLY, tok)
            return Compound("{}", (term,)), 0
        if kind in (NAME, QUOTED):
            name = tok.text
            nxt = self.peek()
            if kind == NAME and name == "-" and nxt is not None \
                    and nxt.kind in (INT, FLOAT) and not nxt.layout_before:
                self.next()
                if nxt.kind == INT:
                    return Int(-int(nxt.text)), 0
                return Float(-float(nxt.text)), 0
            return self._after_name(name, max_prec, tok)
        if kind == END:
            raise UnexpectedToken("unexpected end of clause", tok.line, tok.column)
        if kind in (CLOSE, CLOSE_LIST, CLOSE_CURLY):
            raise UnexpectedToken(f"expected a term before {tok.text!r}", tok.line, tok.column)
        raise UnexpectedToken(f"unexpected {tok.text!r}", tok.line, tok.column)

    def _after_name(self, name: str, max_prec: int, tok: Token | None = None) -> tuple[Term, int]:
        nxt = self.peek()
        if nxt is not None and nxt.kind == OPEN_CT:
            self.next()
            args = [self.parse(999)]
            while self.peek() is not None and self.peek().kind == COMMA:
                self.next()
                args.append(self.parse(999))
            self.expect(CLOSE, nxt)
            return Compound(name, tuple(args)), 0
        op = self.ops.prefix(name) if tok is not None and name != "," else None
        if op is not None and self._starts_term(0):
            if op.priority > max_prec:
                raise OperatorClash(
                    f"prefix operator {name!r} (priority {op.priority}) where at most "
                    f"{max_prec} is allowed", tok.line, tok.column)
            (amax,) = op.argument_priorities()
            arg = self.parse(amax)
            return Compound(name, (arg,)), op.priority
        return Atom(name), 0

    def _parse_list(self, opener: Token) -> Term:
        items = [self.parse(999)]
        tail: Term = NIL
        while True:
            tok = self.peek()
            if tok is not None and tok.kind == COMMA:
                self.next()
                items.append(self.parse(999))
                continue
            if tok is not None and tok.kind == BAR:
                self.next()
                tail = self.parse(999)
            self.expect(CLOSE_LIST, opener)
            return make_list(items, tail)


def read_term(parser: Parser) -> Term:
    """Read the next clause from ``parser``; the cursor advances past its end token."""
    return parser.read_clause()


def read_terms(source: str, ops: OpTable | None = None):
    """Read every clause of ``source``.

    Returns ``(terms, ops, var_names)`` where ``var_names[i]`` lists the
    source name of each variable ordinal of ``terms[i]`` (``_`` for
    anonymous variables). ``op/3`` directives take effect before the next
    clause is read.
    """
    ops = ops.copy() if ops is not None else OpTable.standard()
    parser = Parser(tokenize(source), ops)
    terms, names = [], []
    while not parser.at_end():
        term = parser.read_clause()
        terms.append(term)
        names.append(tuple(parser.var_names))
        apply_directive(term, ops)
    return terms, ops, names


def read_program(source: str, ops: OpTable | None = None) -> tuple[list[Term], OpTable]:
    """Read all top-level terms and return them with the final operator table."""
    terms, ops, _ = read_terms(source, ops)
    return terms, ops
