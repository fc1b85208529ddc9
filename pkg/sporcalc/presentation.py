# -*- coding: utf-8 -*-

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .exceptions import (
    CertificateError,
    PreconditionError,
    PresentationSyntaxError,
    UnknownGeneratorError,
    UnsupportedInputError,
)
from .scanner import PresentationLexer
from .words import (
    GeneratorSymbol,
    Word,
    commutator,
    conjugate,
    exponent_sum,
    invert,
    multiply,
    product,
    substitute,
)


logger = logging.getLogger(__name__)

ORIENTABLE = "orientable"
NON_ORIENTABLE = "non-orientable"

X = GeneratorSymbol("x")
Y = GeneratorSymbol("y")


def z(t, level=None):
    return GeneratorSymbol(f"z{t}", level)


@dataclass(frozen=True)
class Presentation(object):
    generators: Tuple[GeneratorSymbol, ...]
    relators: Tuple[Word, ...] = ()

    def __post_init__(self):
        if not self.generators:
            raise PresentationSyntaxError("Empty generator list")
        names = [str(g) for g in self.generators]
        if len(set(names)) != len(names):
            raise PresentationSyntaxError(f"Generator names {names} are not distinct")
        allowed = set(self.generators)
        for r in self.relators:
            unknown = r.symbols - allowed
            if unknown:
                raise UnknownGeneratorError(
                    f"Generator {sorted(map(str, unknown))[0]} is not declared"
                )

    def __str__(self):
        return print_presentation(self)


class PresentationParser(object):
    """Recursive descent over the tokens of the presentation grammar.

    presentation := '<' gens '|' relators? '>'
    gens         := name (',' name)*
    relators     := word (',' word)*
    word         := term+
    term         := name ('^' int)? | '1' | '[' word ',' word ']' ('^' int)?
                  | '(' word ')' ('^' int)?
    """

    def __init__(self, text):
        self.text = text
        self.tokens = PresentationLexer().tokenize(text)
        self.pos = 0
        self.generators = {}

    @property
    def current(self):
        return self.tokens[self.pos]

    def error(self, message, token=None):
        token = token or self.current
        return PresentationSyntaxError(message, line=token.line, column=token.column)

    def expect(self, type):
        token = self.current
        if token.type != type:
            found = token.text or "end of input"
            raise self.error(f"Expected {type!r}, found {found!r}")
        self.pos += 1
        return token

    def accept(self, type):
        if self.current.type == type:
            self.pos += 1
            return True
        return False

    def symbol(self, token):
        name, _, level = token.text.partition("@")
        return GeneratorSymbol(name, int(level) if level else None)

    def parse_presentation(self):
        self.expect("<")
        gens = [self.symbol(self.expect("name"))]
        while self.accept(","):
            gens.append(self.symbol(self.expect("name")))
        self.generators = {str(g): g for g in gens}
        if len(self.generators) != len(gens):
            raise self.error("Generator names are not distinct")
        self.expect("|")
        relators = []
        if self.current.type != ">":
            relators.append(self.parse_word())
            while self.accept(","):
                relators.append(self.parse_word())
        self.expect(">")
        self.expect("end")
        return Presentation(tuple(gens), tuple(relators))

    def parse_word(self):
        terms = [self.parse_term()]
        while self.current.type in ("name", "int", "[", "("):
            terms.append(self.parse_term())
        return product(terms)

    def parse_exponent(self, w):
        if self.accept("^"):
            e = int(self.expect("int").text)
            return _power(w, e)
        return w

    def parse_term(self):
        token = self.current
        if token.type == "name":
            self.pos += 1
            symbol = self.symbol(token)
            if self.generators and str(symbol) not in self.generators:
                raise UnknownGeneratorError(
                    f"(Line {token.line}, column {token.column}) "
                    f"Generator {symbol} is not declared"
                )
            return self.parse_exponent(Word.from_letter(symbol))
        if token.type == "int":
            if token.text != "1":
                raise self.error(f"Integer {token.text} is not a term")
            self.pos += 1
            return Word()
        if self.accept("["):
            a = self.parse_word()
            self.expect(",")
            b = self.parse_word()
            self.expect("]")
            return self.parse_exponent(commutator(a, b))
        if self.accept("("):
            w = self.parse_word()
            self.expect(")")
            return self.parse_exponent(w)
        found = token.text or "end of input"
        raise self.error(f"Expected a term, found {found!r}")


def _power(w, e):
    result = Word()
    base = w if e >= 0 else invert(w)
    for _ in range(abs(e)):
        result = multiply(result, base)
    return result


def parse(text):
    return PresentationParser(text).parse_presentation()


def parse_word(text, generators=None):
    """Parse a bare word, checking names against ``generators`` when given."""
    parser = PresentationParser(text)
    if generators is not None:
        parser.generators = {str(g): g for g in generators}
    if parser.current.type == "end":
        return Word()
    w = parser.parse_word()
    parser.expect("end")
    return w


def format_word(w):
    """Print a word in grammar form, collapsing runs into powers."""
    if not w:
        return "1"
    terms = []
    letters = w.letters
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        e = (j - i) * letters[i].sign
        terms.append(str(letters[i].symbol) if e == 1 else f"{letters[i].symbol}^{e}")
        i = j
    return " ".join(terms)


def print_presentation(p):
    gens = ", ".join(str(g) for g in p.generators)
    rels = ", ".join(format_word(r) for r in p.relators)
    if rels:
        return f"< {gens} | {rels} >"
    return f"< {gens} | >"


def surface_word(orientability, gens):
    if orientability == ORIENTABLE:
        pairs = zip(gens[0::2], gens[1::2])
        return product(
            commutator(Word.from_letter(a), Word.from_letter(b)) for a, b in pairs
        )
    return product(Word.power(g, 2) for g in gens)


@dataclass(frozen=True)
class SporInput(object):
    k: int
    orientability: str
    r: Word
    generators: Tuple[GeneratorSymbol, ...] = ()

    def __post_init__(self):
        if self.orientability not in (ORIENTABLE, NON_ORIENTABLE):
            raise ValueError(f"Orientability {self.orientability} is not supported")
        if self.k < 1:
            raise PreconditionError(f"k = {self.k} must be at least 1")
        if self.orientability == ORIENTABLE and self.k % 2:
            raise PreconditionError(f"Orientable surfaces need even k, got {self.k}")
        if not self.generators:
            names = tuple(GeneratorSymbol(f"x{i}") for i in range(1, self.k + 1))
            object.__setattr__(self, "generators", names)
        if len(self.generators) != self.k:
            raise PreconditionError(f"Expected {self.k} generators")
        unknown = self.r.symbols - set(self.generators)
        if unknown:
            raise UnknownGeneratorError(
                f"Relator uses {sorted(map(str, unknown))[0]} outside x1..x{self.k}"
            )

    @property
    def w(self):
        return surface_word(self.orientability, self.generators)

    @property
    def presentation(self):
        return Presentation(self.generators, (self.w, self.r))


def default_generators(k, hint=()):
    """Name generators a, b, c, ... when the hint uses only those letters."""
    letters = [chr(ord("a") + i) for i in range(min(k, 26))]
    names = {str(s) for s in hint}
    if k <= 26 and names and names <= set(letters):
        return tuple(GeneratorSymbol(n) for n in letters)
    return tuple(GeneratorSymbol(f"x{i}") for i in range(1, k + 1))


def surface_input(orientability, n, r=None, generators=()):
    """Build a SporInput from genus g (orientable) or k (non-orientable)."""
    r = r if r is not None else Word()
    if orientability == ORIENTABLE:
        if n < 1:
            raise PreconditionError(f"Genus {n} must be at least 1")
        k = 2 * n
    else:
        if n < 1:
            raise PreconditionError(f"k = {n} must be at least 1")
        k = n
    return SporInput(k, orientability, r, tuple(generators))


def surface_from_presentation(p):
    """Recognize ``< x1..xk | w, r >`` with a literal surface relator w."""
    if len(p.relators) not in (1, 2):
        raise UnsupportedInputError(
            f"Expected a surface relator and one extra relator, "
            f"got {len(p.relators)} relators"
        )
    gens = p.generators
    w = p.relators[0]
    r = p.relators[1] if len(p.relators) == 2 else Word()
    k = len(gens)
    if w == surface_word(NON_ORIENTABLE, gens):
        return SporInput(k, NON_ORIENTABLE, r, gens)
    if k % 2 == 0 and w == surface_word(ORIENTABLE, gens):
        return SporInput(k, ORIENTABLE, r, gens)
    raise UnsupportedInputError(
        f"First relator {format_word(w)} is not a literal surface word "
        f"over {', '.join(map(str, gens))}"
    )


@dataclass(frozen=True)
class BasisChange(object):
    """forward: old generator -> word in new generators.
    backward: new generator -> word in old generators.
    conjugator: word in old generators.
    """

    forward: Dict[GeneratorSymbol, Word]
    backward: Dict[GeneratorSymbol, Word]
    conjugator: Word

    def apply_forward(self, w):
        return substitute(w, self.forward)

    def apply_backward(self, w):
        return substitute(w, self.backward)

    def verify(self):
        for old in self.forward:
            if self.apply_backward(self.forward[old]) != Word.from_letter(old):
                return False
        for new in self.backward:
            if self.apply_forward(self.backward[new]) != Word.from_letter(new):
                return False
        return True


@dataclass(frozen=True)
class CommutatorForm(object):
    d: int
    u: Word
    r: Word
    basis: Optional[BasisChange] = None
    source: Optional[SporInput] = None

    def __post_init__(self):
        bad = self.u.symbols - set(self.z_generators)
        if bad:
            raise PreconditionError(f"u uses {sorted(map(str, bad))[0]} outside z1..z{self.d}")
        bad = self.r.symbols - set(self.generators)
        if bad:
            raise UnknownGeneratorError(f"r uses {sorted(map(str, bad))[0]}")

    @property
    def k(self):
        return self.d + 2

    @property
    def z_generators(self):
        return tuple(z(t) for t in range(1, self.d + 1))

    @property
    def generators(self):
        return (X, Y) + self.z_generators

    @property
    def relator(self):
        """The surface relator ``[x,y]u``."""
        return multiply(commutator(Word.from_letter(X), Word.from_letter(Y)), self.u)

    @property
    def presentation(self):
        return Presentation(self.generators, (self.relator, self.r))

    def verify(self):
        """Check ``conjugator^-1 forward(w) conjugator = [x,y]u`` exactly."""
        if self.basis is None or self.source is None:
            return True
        image = self.basis.apply_forward(self.source.w)
        g = self.basis.apply_forward(self.basis.conjugator)
        return conjugate(invert(g), image) == self.relator and self.basis.verify()


def to_commutator_form(spor):
    if spor.k < 3:
        raise UnsupportedInputError(f"unsupported: k ≤ 2 (k = {spor.k})")

    old = spor.generators
    d = spor.k - 2
    zs = [z(t) for t in range(1, d + 1)]
    x, y = Word.from_letter(X), Word.from_letter(Y)
    zw = [Word.from_letter(s) for s in zs]

    if spor.orientability == ORIENTABLE:
        forward = {old[0]: x, old[1]: y}
        backward = {X: Word.from_letter(old[0]), Y: Word.from_letter(old[1])}
        for i in range(d):
            forward[old[i + 2]] = zw[i]
            backward[zs[i]] = Word.from_letter(old[i + 2])
        u = product(commutator(zw[i], zw[i + 1]) for i in range(0, d, 2))
        conj = Word()
    else:
        a, b, c = (Word.from_letter(s) for s in old[:3])
        g = product([a, b, c, a, b])
        forward = {
            old[0]: product([y, zw[0], x]),
            old[1]: product([invert(x), invert(zw[0])]),
            old[2]: product([zw[0], invert(y)]),
        }
        fg = product([y, zw[0]])
        backward = {
            X: product([invert(b), invert(a), invert(c), invert(b)]),
            Y: product([a, b]),
            zs[0]: product([c, a, b]),
        }
        for i in range(1, d):
            forward[old[i + 2]] = conjugate(fg, zw[i])
            backward[zs[i]] = conjugate(invert(g), Word.from_letter(old[i + 2]))
        u = product(Word.power(s, 2) for s in zs)
        conj = g

    basis = BasisChange(forward, backward, conj)
    cf = CommutatorForm(d, u, basis.apply_forward(spor.r), basis, spor)
    if not cf.verify():
        raise CertificateError(f"Basis change for k = {spor.k} failed verification")
    logger.debug("commutator form: d=%d u=%s r=%s", d, u, cf.r)
    return cf


def commutator_form_from_presentation(p):
    """Recognize ``< x, y, z1..zd | [x,y]u, r >`` given directly."""
    d = len(p.generators) - 2
    expected = (X, Y) + tuple(z(t) for t in range(1, d + 1))
    if d < 1 or p.generators != expected or len(p.relators) not in (1, 2):
        return None
    head = commutator(Word.from_letter(X), Word.from_letter(Y))
    u = multiply(invert(head), p.relators[0])
    if u.symbols - set(expected[2:]):
        return None
    r = p.relators[1] if len(p.relators) == 2 else Word()
    return CommutatorForm(d, u, r)


@dataclass(frozen=True)
class BalanceResult(object):
    alpha_x: Word
    alpha_y: Word
    r_balanced: Word
    moves: Tuple[Tuple[str, int], ...] = field(default=())

    @property
    def alpha(self):
        return {X: self.alpha_x, Y: self.alpha_y}

    def apply(self, w):
        return substitute(w, self.alpha)

    @property
    def exponents(self):
        return exponent_sum(self.r_balanced, X), exponent_sum(self.r_balanced, Y)


# move -> effect on the exponent pair (a, b)
MOVES = (
    (("x", 1), lambda a, b: (a, b + a)),
    (("x", -1), lambda a, b: (a, b - a)),
    (("y", 1), lambda a, b: (a + b, b)),
    (("y", -1), lambda a, b: (a - b, b)),
)


def _move_images(move):
    gen, sign = move
    x, y = Word.from_letter(X), Word.from_letter(Y)
    if gen == "x":
        return {X: multiply(x, Word.power(Y, sign))}
    return {Y: multiply(y, Word.power(X, sign))}


def balance_exponents(r):
    a, b = exponent_sum(r, X), exponent_sum(r, Y)
    moves = []

    while a * b != 0:
        candidates = []
        for i, (_, effect) in enumerate(MOVES):
            a2, b2 = effect(a, b)
            candidates.append((abs(a2) + abs(b2), i))
        best, i = min(candidates)
        if best >= abs(a) + abs(b):
            raise AssertionError(f"No move reduces |a|+|b| at ({a},{b})")
        moves.append(MOVES[i][0])
        a, b = MOVES[i][1](a, b)

    if a == 0 and b != 0:
        moves.extend([("y", 1), ("x", -1)])
        a = b
    if a < 0:
        moves.extend([("x", 1), ("y", -1), ("y", -1), ("x", 1)])
        a = -a

    alpha_x, alpha_y = Word.from_letter(X), Word.from_letter(Y)
    for move in moves:
        images = _move_images(move)
        alpha_x = substitute(alpha_x, images)
        alpha_y = substitute(alpha_y, images)

    result = BalanceResult(alpha_x, alpha_y, Word(), tuple(moves))
    result = BalanceResult(alpha_x, alpha_y, result.apply(r), tuple(moves))
    if result.exponents != (a, 0):
        raise AssertionError(f"Balancing ended at {result.exponents}, expected ({a}, 0)")
    logger.debug("balanced exponents with moves %s", moves)
    return result
