# -*- coding: utf-8 -*-

import re
from dataclasses import dataclass

from .exceptions import PresentationSyntaxError


@dataclass(frozen=True)
class Token(object):
    type: str
    text: str
    offset: int
    line: int
    column: int


def position(text, offset):
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


class PresentationLexer(object):
    """Split presentation text into tokens, tracking line and column.

    Each rule ``NAME`` has a pattern attribute ``NAME`` and a handler
    ``parse_name``; text that no rule matches is a syntax error.
    """

    RULE_NAMES = ("name", "int", "punct", "space")

    NAME = r"[A-Za-z_][A-Za-z0-9_]*(?:@-?\d+)?"
    INT = r"-?\d+"
    PUNCT = r"[<>|,\[\]()^]"
    SPACE = r"\s+"

    def __init__(self):
        lexicon = [
            (getattr(self, n.upper()), getattr(self, "parse_" + n))
            for n in self.RULE_NAMES
        ]
        self._scanner = re.Scanner(lexicon)

    def _matches(self, text):
        search = self._scanner.scanner.scanner(text).search
        pos = 0
        for match in iter(search, None):
            if match.start() > pos:
                self.parse_text(text, pos)
            handler = self._scanner.lexicon[match.lastindex - 1][1]
            yield handler(text, match)
            pos = match.end()
        if pos < len(text):
            self.parse_text(text, pos)

    def _token(self, type, text, match):
        line, column = position(text, match.start())
        return Token(type, match.group(0), match.start(), line, column)

    def parse_name(self, text, m):
        return self._token("name", text, m)

    def parse_int(self, text, m):
        return self._token("int", text, m)

    def parse_punct(self, text, m):
        return self._token(m.group(0), text, m)

    def parse_space(self, text, m):
        return None

    def parse_text(self, text, pos):
        line, column = position(text, pos)
        raise PresentationSyntaxError(
            f"Unexpected character {text[pos]!r}", line=line, column=column
        )

    def tokenize(self, text):
        tokens = [tok for tok in self._matches(text) if tok is not None]
        line, column = position(text, len(text))
        tokens.append(Token("end", "", len(text), line, column))
        return tokens
