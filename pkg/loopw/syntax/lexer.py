"""
Analizador léxico de Loop^ω (ficheros .loopw).

Produce tokens (kind, value, span). Los comentarios `--` llegan hasta el
final de la línea.
"""

import re
from dataclasses import dataclass
from typing import Iterator, List

from .ast import Span
from ..errors import LoopSyntaxError

KEYWORDS = {
    'sig', 'eq', 'proc', 'in', 'out', 'pre', 'post', 'skip', 'call', 'for',
    'until', 'invariant', 'label', 'jump', 'claim', 'unpack', 'pack', 'nat',
    'exists', 'not', 'true', 'forall', 'assert', 's',
}

# Orden importa: los símbolos de dos caracteres primero
TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<newline>\n)
  | (?P<comment>--[^\n]*)
  | (?P<nat>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>:=|=>|&&|[()\[\]{};,:/=.])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str      # 'ident', 'nat', 'kw', 'sym', 'eof'
    value: str
    span: Span

    def is_(self, value: str) -> bool:
        return self.kind in ('kw', 'sym') and self.value == value


def tokenize(text: str) -> List[Token]:
    """
    Divide el texto fuente en tokens.

    Args:
        text: Texto fuente

    Returns:
        Lista de tokens terminada en un token 'eof'

    Raises:
        LoopSyntaxError: Si aparece un carácter no reconocido
    """
    return list(_iter_tokens(text))


def _iter_tokens(text: str) -> Iterator[Token]:
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        span = Span(line, pos - line_start + 1)
        if match is None:
            raise LoopSyntaxError(f"carácter inesperado {text[pos]!r}", span)
        kind = match.lastgroup
        value = match.group()
        pos = match.end()
        if kind == 'newline':
            line += 1
            line_start = pos
        elif kind in ('ws', 'comment'):
            continue
        elif kind == 'ident':
            yield Token('kw' if value in KEYWORDS else 'ident', value, span)
        else:
            yield Token(kind, value, span)
    yield Token('eof', '', Span(line, pos - line_start + 1))
