"""Recursive-descent parser.

Precedence, lowest to highest: ``<-`` (right associative), ``%>%``,
comparison, additive, multiplicative, unary minus, call. Newlines end an
expression at top level and inside braces, but not inside parentheses.
"""
from __future__ import annotations

from typing import List, Optional

from fcl.errors import ParseError
from fcl.syntax import lexer
from fcl.syntax.lexer import Token, tokenize
from fcl.syntax.nodes import (
    Arg, Assign, Block, BoolLit, Call, Lambda, NullLit, NumberLit, Param, Pipe,
    SourceSpan, StringLit, Symbol,
)

COMPARISON = (">", "<", ">=", "<=", "==", "!=")
ADDITIVE = ("+", "-")
MULTIPLICATIVE = ("*", "/")


def _describe(tok: Optional[Token]) -> str:
    return "end of input" if tok is None else repr(tok.lexeme)


class Parser:
    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.pos = 0
        # Stack of newline sensitivity: True at top level and in braces.
        self.nl = [True]

    # token helpers

    def peek(self, offset=0) -> Optional[Token]:
        i = self.pos + offset
        return self.tokens[i] if i < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def at(self, lexeme: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.lexeme == lexeme and tok.kind != lexer.STRING

    def newline_before(self) -> bool:
        if self.pos == 0 or self.pos >= len(self.tokens):
            return False
        prev_end = self.tokens[self.pos - 1].end
        return "\n" in self.source[prev_end:self.tokens[self.pos].start]

    def continues(self, lexemes) -> bool:
        """True if the next token is one of ``lexemes`` on the same logical line."""
        tok = self.peek()
        if tok is None or tok.kind not in (lexer.OPERATOR, lexer.PUNCTUATION):
            return False
        if tok.lexeme not in lexemes:
            return False
        return not (self.nl[-1] and self.newline_before())

    def error(self, expected: str) -> ParseError:
        tok = self.peek()
        if tok is None:
            end = len(self.source)
            return ParseError(f"expected {expected}, got end of input",
                              SourceSpan(end, end), incomplete=True)
        return ParseError(f"expected {expected}, got {_describe(tok)}", tok.span)

    def expect(self, lexeme: str) -> Token:
        if not self.at(lexeme):
            raise self.error(repr(lexeme))
        return self.advance()

    def span_from(self, start: int) -> SourceSpan:
        return SourceSpan(start, self.tokens[self.pos - 1].end)

    # grammar

    def parse_program(self) -> Block:
        exprs = self.statements(closing=None)
        return Block(tuple(exprs), braced=False, span=SourceSpan(0, len(self.source)))

    def statements(self, closing: Optional[str]) -> List:
        exprs = []
        while True:
            while self.at(";"):
                self.advance()
            tok = self.peek()
            if tok is None:
                if closing is not None:
                    raise self.error(repr(closing))
                return exprs
            if closing is not None and self.at(closing):
                return exprs
            exprs.append(self.expression())
            tok = self.peek()
            if tok is None or self.at(";") or (closing is not None and self.at(closing)):
                continue
            if not self.newline_before():
                raise self.error("newline or ';' between expressions")

    def expression(self):
        return self.assignment()

    def assignment(self):
        start_tok = self.peek()
        lhs = self.pipe()
        if self.continues(("<-",)):
            op = self.advance()
            if not isinstance(lhs, Symbol):
                raise ParseError("assignment target must be a symbol", op.span)
            value = self.assignment()
            return Assign(lhs.name, value, span=self.span_from(start_tok.start))
        return lhs

    def pipe(self):
        start = self.peek().start if self.peek() else len(self.source)
        lhs = self.binary(0)
        while self.continues(("%>%",)):
            self.advance()
            rhs = self.binary(0)
            lhs = Pipe(lhs, rhs, span=self.span_from(start))
        return lhs

    _LEVELS = (COMPARISON, ADDITIVE, MULTIPLICATIVE)

    def binary(self, level: int):
        if level == len(self._LEVELS):
            return self.unary()
        start = self.peek().start if self.peek() else len(self.source)
        lhs = self.binary(level + 1)
        ops = self._LEVELS[level]
        while self.continues(ops):
            op = self.advance()
            rhs = self.binary(level + 1)
            lhs = Call(Symbol(op.lexeme, span=op.span), (Arg(None, lhs), Arg(None, rhs)),
                       span=self.span_from(start))
        return lhs

    def unary(self):
        if self.at("-"):
            op = self.advance()
            operand = self.unary()
            return Call(Symbol("-", span=op.span), (Arg(None, operand),),
                        span=self.span_from(op.start))
        return self.postfix()

    def postfix(self):
        start = self.peek().start if self.peek() else len(self.source)
        expr = self.primary()
        while self.continues(("(",)):
            self.advance()
            args = self.arguments()
            expr = Call(expr, tuple(args), span=self.span_from(start))
        return expr

    def arguments(self) -> List[Arg]:
        self.nl.append(False)
        args: List[Arg] = []
        seen = set()
        if not self.at(")"):
            while True:
                tok, nxt = self.peek(), self.peek(1)
                if (tok is not None and tok.kind == lexer.IDENTIFIER
                        and nxt is not None and nxt.lexeme == "=" and nxt.kind == lexer.OPERATOR):
                    if tok.lexeme in seen:
                        raise ParseError(f"duplicate argument name '{tok.lexeme}'", tok.span)
                    seen.add(tok.lexeme)
                    self.advance()
                    self.advance()
                    args.append(Arg(tok.lexeme, self.expression()))
                else:
                    args.append(Arg(None, self.expression()))
                if self.at(","):
                    self.advance()
                    continue
                break
        self.expect(")")
        self.nl.pop()
        return args

    def params(self) -> List[Param]:
        self.nl.append(False)
        self.expect("(")
        params: List[Param] = []
        if not self.at(")"):
            while True:
                tok = self.peek()
                if tok is None or tok.kind != lexer.IDENTIFIER:
                    raise self.error("parameter name")
                self.advance()
                if any(p.name == tok.lexeme for p in params):
                    raise ParseError(f"duplicate parameter '{tok.lexeme}'", tok.span)
                default = None
                if self.at("="):
                    self.advance()
                    default = self.expression()
                params.append(Param(tok.lexeme, default))
                if self.at(","):
                    self.advance()
                    continue
                break
        self.expect(")")
        self.nl.pop()
        return params

    def primary(self):
        tok = self.peek()
        if tok is None:
            raise self.error("an expression")
        kind = tok.kind
        if kind == lexer.NUMBER:
            self.advance()
            return NumberLit(float(tok.lexeme), span=tok.span)
        if kind == lexer.STRING:
            self.advance()
            return StringLit(lexer.unescape(tok.lexeme), span=tok.span)
        if kind == lexer.IDENTIFIER:
            self.advance()
            return Symbol(tok.lexeme, span=tok.span)
        if kind == lexer.KEYWORD:
            self.advance()
            if tok.lexeme == "TRUE":
                return BoolLit(True, span=tok.span)
            if tok.lexeme == "FALSE":
                return BoolLit(False, span=tok.span)
            if tok.lexeme == "NULL":
                return NullLit(span=tok.span)
            params = self.params()
            # The body may start on the next line.
            self.nl.append(self.nl[-1])
            body = self.expression()
            self.nl.pop()
            return Lambda(tuple(params), body, span=self.span_from(tok.start))
        if tok.lexeme == "(":
            self.advance()
            self.nl.append(False)
            inner = self.expression()
            self.expect(")")
            self.nl.pop()
            return inner
        if tok.lexeme == "{":
            self.advance()
            self.nl.append(True)
            exprs = self.statements(closing="}")
            self.expect("}")
            self.nl.pop()
            return Block(tuple(exprs), braced=True, span=self.span_from(tok.start))
        raise self.error("an expression")


def parse(source: str) -> Block:
    """Parse a whole program into an unbraced Block of top-level expressions."""
    return Parser(source).parse_program()


def parse_expr(source: str):
    """Parse a source string holding exactly one expression."""
    block = parse(source)
    if len(block.exprs) != 1:
        raise ParseError(f"expected one expression, found {len(block.exprs)}",
                         SourceSpan(0, len(source)))
    return block.exprs[0]
