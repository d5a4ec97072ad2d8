from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from fcl.errors import LexError
from fcl.syntax.nodes import SourceSpan

IDENTIFIER = "identifier"
NUMBER = "number"
STRING = "string"
PUNCTUATION = "punctuation"
OPERATOR = "operator"
KEYWORD = "keyword"

KEYWORDS = frozenset({"function", "TRUE", "FALSE", "NULL"})

# Longest first so that `<-` wins over `<` and `<=` over `<`.
OPERATORS = ("%>%", "<-", ">=", "<=", "==", "!=", "+", "-", "*", "/", ">", "<", "=")
PUNCT = "(),{};"

_SKIP = re.compile(r"(?:[ \t\r\n]+|#[^\n]*)+")
_NUMBER = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"(?:[A-Za-z]|\.(?!\d))[A-Za-z0-9._]*|\.")

ESCAPES = {"\\": "\\", '"': '"', "'": "'", "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class Token:
    kind: str
    lexeme: str
    span: SourceSpan

    @property
    def start(self) -> int:
        return self.span.start

    @property
    def end(self) -> int:
        return self.span.end


def _scan_string(source: str, start: int) -> int:
    """Return the offset one past the closing quote."""
    quote = source[start]
    i = start + 1
    while i < len(source):
        ch = source[i]
        if ch == "\\":
            if i + 1 >= len(source):
                break
            if source[i + 1] not in ESCAPES:
                raise LexError(f"unsupported escape '\\{source[i + 1]}' in string",
                               SourceSpan(i, i + 2))
            i += 2
            continue
        if ch == quote:
            return i + 1
        i += 1
    raise LexError("unterminated string", SourceSpan(start, len(source)))


def unescape(lexeme: str) -> str:
    body = lexeme[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            out.append(ESCAPES[body[i + 1]])
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def tokenize(source: str) -> List[Token]:
    tokens: List[Token] = []
    pos = 0
    n = len(source)
    while True:
        m = _SKIP.match(source, pos)
        if m:
            pos = m.end()
        if pos >= n:
            return tokens
        ch = source[pos]
        if ch in "\"'":
            end = _scan_string(source, pos)
            kind = STRING
        elif ch.isdigit() or (ch == "." and pos + 1 < n and source[pos + 1].isdigit()):
            end = _NUMBER.match(source, pos).end()
            kind = NUMBER
        elif (ch.isascii() and ch.isalpha()) or ch == ".":
            end = _IDENT.match(source, pos).end()
            kind = KEYWORD if source[pos:end] in KEYWORDS else IDENTIFIER
        elif ch in PUNCT:
            end = pos + 1
            kind = PUNCTUATION
        else:
            for op in OPERATORS:
                if source.startswith(op, pos):
                    end = pos + len(op)
                    kind = OPERATOR
                    break
            else:
                raise LexError(f"illegal character {ch!r}", SourceSpan(pos, pos + 1))
        tokens.append(Token(kind, source[pos:end], SourceSpan(pos, end)))
        pos = end
