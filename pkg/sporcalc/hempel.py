# -*- coding: utf-8 -*-
"""Normalization of the extra relator into Hempel form.

The relator ``r`` of ``< (x,y) v z | [x,y]u, r >`` is balanced so that its
y-exponent sum vanishes, lifted into the shifted alphabet ``^i x, ^i z_t``
(with ``^i g = y^i g y^-i``) and then rewritten basis by basis using
``^(j+1)x = ^j u . ^j x``. Every substitution inserts a conjugate of
``[x,y]u``; those conjugates are collected into a Certificate so that the
result can be checked exactly in the free group on ``x, y, z``.
"""

import re
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from .exceptions import CapExceededError, CertificateError, PreconditionError
from .presentation import X, Y, BalanceResult, balance_exponents
from .words import (
    CyclicWord,
    GeneratorSymbol,
    Letter,
    Word,
    conjugate,
    conjugate_to_power_of,
    cyclic_reduce,
    free_root,
    invert,
    is_cyclically_reduced,
    multiply,
    product,
    reduce,
)


logger = logging.getLogger(__name__)

Z_NAME = re.compile(r"^z\d+$")


@dataclass(frozen=True)
class ShiftedAlphabet(object):
    d: int
    u: Word

    def x(self, i):
        return GeneratorSymbol("x", i)

    def z(self, t, i):
        return GeneratorSymbol(f"z{t}", i)

    def is_z(self, symbol):
        if self.d:
            return symbol.name in {f"z{t}" for t in range(1, self.d + 1)}
        return bool(Z_NAME.match(symbol.name))

    def contains(self, symbol):
        return symbol.level is not None and (symbol.name == "x" or self.is_z(symbol))

    def u_at(self, i):
        return Word._trusted(
            tuple(Letter(l.symbol.at(i), l.sign) for l in self.u.letters)
        )

    def expand_letter(self, letter):
        i = letter.symbol.level
        core = Letter(GeneratorSymbol(letter.symbol.name), letter.sign)
        return Word.power(Y, i) * Word._trusted((core,)) * Word.power(Y, -i)

    def expand(self, w):
        """Read a shifted word back in F through ``^i g = y^i g y^-i``."""
        raw = []
        for letter in w.letters:
            i = letter.symbol.level
            step = Letter(Y, 1 if i > 0 else -1)
            raw.extend([step] * abs(i))
            raw.append(Letter(GeneratorSymbol(letter.symbol.name), letter.sign))
            raw.extend([step.inverse()] * abs(i))
        return Word(raw)


def shift_word(w, k):
    return Word._trusted(
        tuple(Letter(l.symbol.shifted(k), l.sign) for l in w.letters)
    )


@dataclass(frozen=True)
class IntervalState(object):
    mu: int
    nu: int


def interval_of(w):
    levels = [l.symbol.level for l in w.letters if l.symbol.name != "x"]
    if not levels:
        return None
    return IntervalState(min(levels), max(levels))


@dataclass(frozen=True)
class NWord(object):
    word: Word
    basis: Optional[int]
    alphabet: ShiftedAlphabet

    def __post_init__(self):
        for letter in self.word.letters:
            symbol = letter.symbol
            if not self.alphabet.contains(symbol):
                raise PreconditionError(f"{symbol} is not a shifted generator")
            if self.basis is not None and symbol.name == "x":
                if symbol.level != self.basis:
                    raise PreconditionError(
                        f"{symbol} is outside basis {self.basis}"
                    )

    @property
    def interval(self):
        return interval_of(self.word)

    def __str__(self):
        return str(self.word)


@dataclass(frozen=True)
class TraceStep(object):
    action: str
    basis: Optional[int]
    word: str
    mu: Optional[int]
    nu: Optional[int]

    def to_json(self):
        return {
            "action": self.action,
            "basis": self.basis,
            "word": self.word,
            "mu": self.mu,
            "nu": self.nu,
        }


@dataclass(frozen=True)
class PowerOfX(object):
    m: int

    def relator(self):
        return Word.power(X, self.m)


@dataclass(frozen=True)
class Hempel(object):
    r: CyclicWord
    nu: int


NormalizationResult = Union[PowerOfX, Hempel]


@dataclass(frozen=True)
class Certificate(object):
    """``relator = v . ^(w alpha)(r)`` in F, with v a product of signed
    conjugates of the surface relator R = [x,y]u."""

    R: Word
    v: Tuple[Tuple[Word, int], ...]
    w: Word
    alpha: BalanceResult
    relator: Word
    trace: Tuple[TraceStep, ...] = field(default=(), compare=False)

    def evaluate(self, r):
        normal = product(
            conjugate(c, self.R if s == 1 else invert(self.R)) for c, s in self.v
        )
        return multiply(normal, conjugate(self.w, self.alpha.apply(r)))

    def verify(self, r):
        return self.evaluate(r) == self.relator

    def to_json(self):
        return {
            "v": [[str(c), s] for c, s in self.v],
            "w": str(self.w),
            "alpha": {"x": str(self.alpha.alpha_x), "y": str(self.alpha.alpha_y)},
            "relator": str(self.relator),
        }


def lift_to_shifted(r, alphabet):
    """Rewrite a word with zero y-exponent sum in the shifted alphabet."""
    i = 0
    out = []
    for letter in r.letters:
        symbol = letter.symbol
        if symbol == Y:
            i += letter.sign
        elif symbol.level is None:
            out.append(Letter(symbol.at(i), letter.sign))
        else:
            raise PreconditionError(f"{symbol} is already shifted")
    if i != 0:
        raise PreconditionError(f"{r} has y-exponent sum {i}, expected 0")
    return NWord(Word(out), None, alphabet)


class _Rewriter(object):
    """Mutable working state of a normalization run.

    When ``track`` is set, every change of the working word W keeps
    ``E(W) = prod(reversed(stack)) . w alpha(r) w^-1`` in F.
    """

    def __init__(self, alphabet, letters, basis=None, track=False, R=None):
        self.alphabet = alphabet
        self.letters = list(letters)
        self.basis = basis
        self.track = track
        self.R = R
        self.stack = []
        self.w = Word()
        self.trace = []

    @property
    def word(self):
        return Word._trusted(tuple(self.letters))

    def record(self, action):
        st = interval_of(self.word)
        self.trace.append(
            TraceStep(
                action,
                self.basis,
                str(self.word),
                st.mu if st else None,
                st.nu if st else None,
            )
        )
        logger.debug("%s: basis=%s word=%s", action, self.basis, self.word)

    def conjugate_all(self, h):
        if not self.track or not h:
            return
        self.stack = [(multiply(h, c), s) for c, s in self.stack]
        self.w = multiply(h, self.w)

    def substitute(self, pick):
        """Replace x-letters chosen by ``pick`` one level up or down."""
        a = self.alphabet
        out = []
        prefix = Word()
        for letter in self.letters:
            direction = pick(letter)
            if direction is None:
                out.append(letter)
                if self.track:
                    prefix = multiply(prefix, a.expand_letter(letter))
                continue

            level = letter.symbol.level
            i = level - 1 if direction == "down" else level
            u = a.u_at(i).letters
            ubar = invert(a.u_at(i)).letters
            if direction == "down":
                if letter.sign == 1:
                    repl = u + (Letter(a.x(i), 1),)
                else:
                    repl = (Letter(a.x(i), -1),) + ubar
            else:
                if letter.sign == 1:
                    repl = ubar + (Letter(a.x(i + 1), 1),)
                else:
                    repl = (Letter(a.x(i + 1), -1),) + u

            if self.track:
                c = multiply(Word.power(Y, i), Word.from_letter(X, -1))
                # c R c^-1 = E(^(i+1)x)^-1 E(^i u ^i x) with c = y^i x^-1
                if letter.sign == 1:
                    conj = multiply(multiply(prefix, a.expand_letter(letter)), c)
                else:
                    conj = multiply(prefix, c)
                sign = 1 if (direction == "down") == (letter.sign == 1) else -1
                self.stack.append((conj, sign))
                prefix = multiply(prefix, a.expand(Word._trusted(repl)))
            out.extend(repl)
        self.letters = out

    def reduce(self):
        w = reduce(self.letters)
        c, t = cyclic_reduce(w)
        if t:
            self.conjugate_all(invert(self.alphabet.expand(t)))
        self.letters = list(c.representative.letters)

    def shift(self, direction):
        j = self.basis
        self.substitute(
            lambda l: direction if l.symbol.name == "x" and l.symbol.level == j else None
        )
        self.basis = j - 1 if direction == "down" else j + 1
        self.reduce()

    def rewrite_into_basis(self, j):
        def pick(letter):
            if letter.symbol.name != "x" or letter.symbol.level == j:
                return None
            return "down" if letter.symbol.level > j else "up"

        while any(pick(l) for l in self.letters):
            self.substitute(pick)
        self.basis = j
        self.reduce()

    def translate(self, k):
        self.letters = [Letter(l.symbol.shifted(k), l.sign) for l in self.letters]
        self.basis += k
        self.conjugate_all(Word.power(Y, k))

    def rotate(self, i):
        if i == 0:
            return
        head = Word._trusted(tuple(self.letters[:i]))
        self.letters = self.letters[i:] + self.letters[:i]
        self.conjugate_all(invert(self.alphabet.expand(head)))

    def x_power(self):
        if all(l.symbol.name == "x" for l in self.letters):
            return sum(l.sign for l in self.letters)
        return None


def shift_basis(nw, direction):
    if nw.basis is None:
        raise PreconditionError("shift_basis needs a word in a basis")
    if direction not in ("up", "down"):
        raise ValueError(f"Direction {direction} is not supported")
    rw = _Rewriter(nw.alphabet, nw.word.letters, nw.basis)
    rw.shift(direction)
    return NWord(rw.word, rw.basis, nw.alphabet)


def rewrite_into_basis(nw, j):
    rw = _Rewriter(nw.alphabet, nw.word.letters, nw.basis)
    rw.rewrite_into_basis(j)
    return NWord(rw.word, j, nw.alphabet)


def default_cap(r, lifted):
    st = lifted.interval
    span = max(abs(st.mu), abs(st.nu)) if st else 0
    return 10 * (len(r) + span + 10)


def normalize(cf, cap=None, trace=False):
    """Return ``(PowerOfX | Hempel, Certificate)`` for a CommutatorForm."""
    alphabet = ShiftedAlphabet(cf.d, cf.u)
    balance = balance_exponents(cf.r)
    lifted = lift_to_shifted(balance.r_balanced, alphabet)
    if cap is None:
        cap = default_cap(balance.r_balanced, lifted)

    rw = _Rewriter(alphabet, lifted.word.letters, track=True, R=cf.relator)
    rw.record("lift")
    rw.rewrite_into_basis(0)
    rw.record("rewrite")
    steps = 0
    signed = {}

    def finish_power(m):
        rw.translate(-rw.basis)
        rw.record("translate")
        signed["m"] = m
        return PowerOfX(abs(m))

    result = None
    m = rw.x_power()
    if m is not None:
        result = finish_power(m)

    while result is None and rw.basis > interval_of(rw.word).mu:
        steps += 1
        if steps > cap:
            raise CapExceededError(f"Normalization exceeded {cap} shifts")
        rw.shift("down")
        rw.record("down")
        m = rw.x_power()
        if m is not None:
            result = finish_power(m)

    while result is None:
        steps += 1
        if steps > cap:
            raise CapExceededError(f"Normalization exceeded {cap} shifts")
        rw.shift("up")
        rw.record("up")
        m = rw.x_power()
        if m is not None:
            result = finish_power(m)
        elif interval_of(rw.word).mu == rw.basis - 1:
            rw.translate(1 - rw.basis)
            rw.record("translate")
            rw.rotate(CyclicWord(rw.word).rotation_index())
            rw.record("rotate")
            result = Hempel(CyclicWord(rw.word), interval_of(rw.word).nu)

    if isinstance(result, PowerOfX):
        # PowerOfX holds |m|; the certificate keeps the sign
        relator = Word.power(X, signed["m"])
    else:
        relator = alphabet.expand(rw.word)

    certificate = Certificate(
        R=cf.relator,
        v=tuple(reversed(rw.stack)),
        w=rw.w,
        alpha=balance,
        relator=relator,
        trace=tuple(rw.trace) if trace else (),
    )
    if not certificate.verify(cf.r):
        raise CertificateError(f"Certificate for r = {cf.r} does not evaluate to {relator}")
    if isinstance(result, Hempel) and not check_hempel(result.r, cf.u, cf.d).passed:
        raise CertificateError(f"Output {result.r} is not a Hempel relator")

    logger.debug("normalized %s -> %s after %d shifts", cf.r, result, steps)
    return result, certificate


@dataclass(frozen=True)
class HempelCheck(object):
    R1: bool
    R2: bool
    R3: bool
    R4: bool

    @property
    def passed(self):
        return self.R1 and self.R2 and self.R3 and self.R4

    def to_json(self):
        return {"R1": self.R1, "R2": self.R2, "R3": self.R3, "R4": self.R4}


def _representative(r):
    return r.representative if isinstance(r, CyclicWord) else r


def check_hempel(r, u, d=0):
    w = _representative(r)
    alphabet = ShiftedAlphabet(d, u)

    def in_x1(symbol):
        if symbol.level is None:
            return False
        if symbol.name == "x":
            return symbol.level == 1
        return alphabet.is_z(symbol) and symbol.level >= 0

    r1 = all(in_x1(l.symbol) for l in w.letters)
    s = multiply(invert(alphabet.u_at(0)), Word.from_letter(alphabet.x(1)))
    r2 = conjugate_to_power_of(w, s) is None
    r3 = is_cyclically_reduced(w)
    r4 = any(l.symbol.name != "x" and l.symbol.level == 0 for l in w.letters)
    return HempelCheck(r1, r2, r3, r4)


def _require_hempel(r, u, d):
    check = check_hempel(r, u, d)
    if not check.passed:
        raise PreconditionError(f"{_representative(r)} is not a Hempel relator: {check}")


def nu_of(r, u, d=0):
    _require_hempel(r, u, d)
    return interval_of(_representative(r)).nu


@dataclass(frozen=True)
class HNNData(object):
    nu: int
    vertex_generators: Tuple[GeneratorSymbol, ...]
    vertex_relator: Word
    lower_basis: Tuple[GeneratorSymbol, ...]
    upper_basis: Tuple[GeneratorSymbol, ...]
    upper_basis_words: Tuple[Word, ...]

    @property
    def stable_map(self):
        """The stable letter y sends ``^i g`` to ``^(i+1) g``."""
        return dict(zip(self.lower_basis, self.upper_basis))

    def to_json(self):
        return {
            "nu": self.nu,
            "vertex": {
                "generators": [str(g) for g in self.vertex_generators],
                "relator": str(self.vertex_relator),
            },
            "edge_lower": [str(g) for g in self.lower_basis],
            "edge_upper": [str(g) for g in self.upper_basis],
            "edge_upper_words": [str(w) for w in self.upper_basis_words],
            "stable_letter": {str(a): str(b) for a, b in self.stable_map.items()},
        }


def hnn_data(r, cf):
    nu = nu_of(r, cf.u, cf.d)
    a = ShiftedAlphabet(cf.d, cf.u)
    zs = range(1, cf.d + 1)
    x0 = a.x(0)
    up_x = multiply(a.u_at(0), Word.from_letter(x0))

    vertex = (x0,) + tuple(a.z(t, i) for i in range(nu + 1) for t in zs)
    relator = Word(
        letter
        for l in _representative(r).letters
        for letter in (
            (up_x if l.sign == 1 else invert(up_x)).letters
            if l.symbol.name == "x"
            else (l,)
        )
    )
    lower = (x0,) + tuple(a.z(t, i) for i in range(nu) for t in zs)
    upper = (a.x(1),) + tuple(a.z(t, i) for i in range(1, nu + 1) for t in zs)
    upper_words = (up_x,) + tuple(Word.from_letter(g) for g in upper[1:])
    return HNNData(nu, vertex, relator, lower, upper, upper_words)


@dataclass(frozen=True)
class TorsionData(object):
    m: int
    root: CyclicWord

    def to_json(self):
        return {"m": self.m, "root": str(self.root)}


def torsion_data(r, u, d=0):
    _require_hempel(r, u, d)
    w = _representative(r)
    rr = free_root(w)
    root = CyclicWord(rr.root)
    if not check_hempel(root, u, d).passed or nu_of(root, u, d) != nu_of(w, u, d):
        raise CertificateError(f"Root {root} of {w} is not a Hempel relator")
    return TorsionData(rr.exponent.value, root)


def shifted_family(r, count):
    """Translates ``^i r`` for i in [0, count) and the level order of their
    generators."""
    w = _representative(r)
    family = [shift_word(w, i) for i in range(count)]
    symbols = set().union(*(f.symbols for f in family)) if family else set()
    order = sorted(symbols, key=lambda g: (g.level, g.name))
    return family, order
