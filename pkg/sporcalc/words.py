# -*- coding: utf-8 -*-
"""Free-group words over named, optionally level-indexed generators.

Words are stored freely reduced, so equality and hashing are structural.
The serialized form is a space-separated list of ``name``, ``name^-1``,
``name@i`` and ``name@i^-1`` terms.
"""

import re
from dataclasses import dataclass
from typing import Optional

from .arith import ExtendedNat
from .exceptions import PreconditionError, PresentationSyntaxError


TERM = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:@(-?\d+))?(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class GeneratorSymbol(object):
    name: str
    level: Optional[int] = None

    def __post_init__(self):
        if not self.name:
            raise ValueError("Generator name must be nonempty")

    @property
    def key(self):
        return (self.name, self.level is not None, self.level or 0)

    def shifted(self, k):
        if self.level is None:
            raise PreconditionError(f"{self.name} carries no level to shift")
        return GeneratorSymbol(self.name, self.level + k)

    def at(self, level):
        return GeneratorSymbol(self.name, level)

    def __str__(self):
        if self.level is None:
            return self.name
        return f"{self.name}@{self.level}"


@dataclass(frozen=True)
class Letter(object):
    symbol: GeneratorSymbol
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"Letter sign {self.sign} is not supported")

    @property
    def key(self):
        return self.symbol.key + (-self.sign,)

    def inverse(self):
        return Letter(self.symbol, -self.sign)

    def is_inverse_of(self, other):
        return self.sign == -other.sign and self.symbol == other.symbol

    def __str__(self):
        if self.sign == 1:
            return str(self.symbol)
        return f"{self.symbol}^-1"


def reduce(raw):
    """Freely reduce a sequence of letters."""
    stack = []
    for letter in raw:
        if stack and stack[-1].is_inverse_of(letter):
            stack.pop()
        else:
            stack.append(letter)
    return Word._trusted(tuple(stack))


class Word(object):
    __slots__ = ("letters", "_hash")

    def __init__(self, letters=()):
        self.letters = reduce(letters).letters
        self._hash = None

    @classmethod
    def _trusted(cls, letters):
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    @classmethod
    def from_letter(cls, symbol, sign=1):
        return cls._trusted((Letter(symbol, sign),))

    @classmethod
    def power(cls, symbol, e):
        sign = 1 if e > 0 else -1
        return cls._trusted((Letter(symbol, sign),) * abs(e))

    @classmethod
    def from_string(cls, text):
        """Parse the serialized form produced by ``str``."""
        letters = []
        for term in text.split():
            m = TERM.match(term)
            if m is None:
                raise PresentationSyntaxError(f"Term {term!r} is not supported")
            name, level, e = m.groups()
            symbol = GeneratorSymbol(name, None if level is None else int(level))
            e = 1 if e is None else int(e)
            letters.extend([Letter(symbol, 1 if e > 0 else -1)] * abs(e))
        return cls(letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word(self.letters[i])
        return self.letters[i]

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, e):
        if e < 0:
            return invert(self) ** (-e)
        c, t = cyclic_reduce(self)
        core = c.representative.letters * e
        return conjugate(t, Word._trusted(core))

    def inverse(self):
        return invert(self)

    @property
    def symbols(self):
        return {letter.symbol for letter in self.letters}

    @property
    def key(self):
        return tuple(letter.key for letter in self.letters)

    def __str__(self):
        return " ".join(str(letter) for letter in self.letters)

    def __repr__(self):
        return f"<Word {str(self) or '1'}>"


def multiply(a, b):
    i = 0
    la, lb = a.letters, b.letters
    while i < len(la) and i < len(lb) and la[-1 - i].is_inverse_of(lb[i]):
        i += 1
    return Word._trusted(la[: len(la) - i] + lb[i:])


def invert(a):
    return Word._trusted(tuple(letter.inverse() for letter in reversed(a.letters)))


def conjugate(g, w):
    """Return ``g w g^-1``."""
    return multiply(multiply(g, w), invert(g))


def commutator(a, b):
    """Return ``[a,b] = a b a^-1 b^-1``."""
    return multiply(multiply(a, b), multiply(invert(a), invert(b)))


def product(words):
    result = Word()
    for w in words:
        result = multiply(result, w)
    return result


def substitute(w, images):
    """Apply the homomorphism given by ``images`` (symbol -> Word) letterwise.

    Symbols without an image are kept.
    """
    raw = []
    for letter in w.letters:
        image = images.get(letter.symbol)
        if image is None:
            raw.append(letter)
        elif letter.sign == 1:
            raw.extend(image.letters)
        else:
            raw.extend(invert(image).letters)
    return Word(raw)


def is_cyclically_reduced(w):
    return len(w) < 2 or not w.letters[0].is_inverse_of(w.letters[-1])


def _least_rotation(letters):
    n = len(letters)
    if n == 0:
        return 0
    keys = [letter.key for letter in letters]
    doubled = keys + keys
    return min(range(n), key=lambda i: doubled[i : i + n])


class CyclicWord(object):
    """A conjugacy class of cyclically reduced words, up to rotation.

    ``representative`` keeps the rotation it was built from; ``canonical``
    is the lexicographically least rotation and decides equality.
    """

    __slots__ = ("representative", "canonical")

    def __init__(self, representative):
        if not isinstance(representative, Word):
            representative = Word(representative)
        if not is_cyclically_reduced(representative):
            raise PreconditionError(
                f"{representative} is not cyclically reduced"
            )
        self.representative = representative
        letters = representative.letters
        i = _least_rotation(letters)
        self.canonical = Word._trusted(letters[i:] + letters[:i])

    def __len__(self):
        return len(self.representative)

    def __eq__(self, other):
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def inverse(self):
        return CyclicWord(invert(self.representative))

    def rotation_index(self):
        """Offset of the canonical rotation inside the representative."""
        return _least_rotation(self.representative.letters)

    def period(self):
        """Smallest d dividing the length with rotation by d fixing the word."""
        letters = self.representative.letters
        n = len(letters)
        for d in range(1, n + 1):
            if n % d == 0 and letters[d:] + letters[:d] == letters:
                return d
        return n

    @property
    def symbols(self):
        return self.representative.symbols

    def __str__(self):
        return str(self.representative)

    def __repr__(self):
        return f"<CyclicWord {str(self) or '1'}>"


def cyclic_reduce(w):
    """Return ``(c, t)`` with ``w = t c t^-1`` and ``c`` cyclically reduced."""
    letters = w.letters
    n = len(letters)
    i = 0
    while i < n - 1 - i and letters[i].is_inverse_of(letters[n - 1 - i]):
        i += 1
    core = Word._trusted(letters[i : n - i])
    return CyclicWord(core), Word._trusted(letters[:i])


def exponent_sum(w, g):
    return sum(letter.sign for letter in w.letters if letter.symbol == g)


def involves(c, symbols):
    return any(letter.symbol in symbols for letter in c.representative.letters)


@dataclass(frozen=True)
class RootResult(object):
    root: Word
    exponent: ExtendedNat

    def to_json(self):
        return {"root": str(self.root), "log": self.exponent.to_json()}


def free_root(w):
    if not w:
        return RootResult(Word(), ExtendedNat.infinity())
    c, t = cyclic_reduce(w)
    d = c.period()
    letters = c.representative.letters
    root = conjugate(t, Word._trusted(letters[:d]))
    return RootResult(root, ExtendedNat(len(letters) // d))


def conjugate_to_power_of(r, s):
    """Return t with r conjugate to s^t, or None."""
    if not s:
        raise PreconditionError("conjugate_to_power_of needs s != 1")
    if not r:
        return 0
    target, _ = cyclic_reduce(r)
    base, _ = cyclic_reduce(s)
    step = len(base)
    bound = -(-len(target) // step) + 1
    for t in range(1, bound + 1):
        if t * step != len(target):
            continue
        power = base.representative.letters * t
        if CyclicWord(Word._trusted(power)) == target:
            return t
        if CyclicWord(invert(Word._trusted(power))) == target:
            return -t
    return None


def generators(*names):
    return tuple(GeneratorSymbol(name) for name in names)
