# -*- coding: utf-8 -*-
"""Finite witnesses for residual properties.

A free group embeds in the units of noncommutative power series through
``g -> 1 + b_g``; truncating at a fixed degree gives finite nilpotent
images, and over ``Z/p`` finite p-group images. For the group
``S = < (x,y) v z | [x,y]u >`` the same idea runs over a skew group ring
whose coefficient ring carries the action of ``y``.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from sympy import isprime

from .exceptions import CapExceededError, CertificateError, PreconditionError
from .presentation import X, Y
from .words import GeneratorSymbol, Word, commutator


logger = logging.getLogger(__name__)


def monomial_order(m):
    """Lowest degree first, then lexicographic on variable names."""
    return (len(m), m)


def format_monomial(m):
    return " ".join(m) or "1"


class TruncSeries(object):
    """A noncommutative power series truncated above ``degree``.

    Coefficients are integers, or canonical residues in ``[0, p)`` when
    ``modulus`` is a prime ``p``. Zero coefficients are never stored.
    """

    __slots__ = ("coeffs", "degree", "modulus")

    def __init__(self, coeffs, degree, modulus=None):
        if degree < 0:
            raise ValueError(f"Truncation degree {degree} must be non-negative")
        self.degree = degree
        self.modulus = modulus
        clean = {}
        for m, c in coeffs.items():
            if len(m) > degree:
                continue
            if modulus is not None:
                c %= modulus
            if c:
                clean[tuple(m)] = c
        self.coeffs = clean

    @classmethod
    def constant(cls, c, degree, modulus=None):
        return cls({(): c}, degree, modulus)

    @classmethod
    def one(cls, degree, modulus=None):
        return cls.constant(1, degree, modulus)

    @classmethod
    def variable(cls, name, degree, modulus=None):
        """``1 + b``, the image of a generator."""
        return cls({(): 1, (name,): 1}, degree, modulus)

    def _like(self, coeffs):
        return TruncSeries(coeffs, self.degree, self.modulus)

    def _check(self, other):
        if (self.degree, self.modulus) != (other.degree, other.modulus):
            raise ValueError(
                f"Series over (degree {self.degree}, modulus {self.modulus}) and "
                f"(degree {other.degree}, modulus {other.modulus}) do not combine"
            )

    @property
    def constant_term(self):
        return self.coeffs.get((), 0)

    def __add__(self, other):
        self._check(other)
        coeffs = dict(self.coeffs)
        for m, c in other.coeffs.items():
            coeffs[m] = coeffs.get(m, 0) + c
        return self._like(coeffs)

    def __neg__(self):
        return self._like({m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        n = self.degree
        coeffs = {}
        for m1, c1 in self.coeffs.items():
            room = n - len(m1)
            for m2, c2 in other.coeffs.items():
                if len(m2) <= room:
                    m = m1 + m2
                    coeffs[m] = coeffs.get(m, 0) + c1 * c2
        return self._like(coeffs)

    def scale(self, c):
        return self._like({m: c * v for m, v in self.coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.degree, self.modulus, self.coeffs) == (
            other.degree,
            other.modulus,
            other.coeffs,
        )

    def __hash__(self):
        return hash((self.degree, self.modulus, frozenset(self.coeffs.items())))

    def is_one(self):
        return self.coeffs == {(): 1}

    def variables(self):
        return sorted({v for m in self.coeffs for v in m})

    def lowest_term(self):
        """The least monomial under ``monomial_order`` and its coefficient."""
        if not self.coeffs:
            return None
        m = min(self.coeffs, key=monomial_order)
        return m, self.coeffs[m]

    def substitute(self, images):
        """Apply the ring endomorphism sending each variable to ``images[v]``.

        Variables missing from ``images`` are fixed. Images must have no
        constant term for the result to respect the truncation.
        """
        result = self._like({})
        one = TruncSeries.one(self.degree, self.modulus)
        for m, c in self.coeffs.items():
            term = one
            for v in m:
                term = term * images.get(v, self._like({(v,): 1}))
            result = result + term.scale(c)
        return result

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m in sorted(self.coeffs, key=monomial_order):
            c = self.coeffs[m]
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(format_monomial(m))
            else:
                parts.append(f"{c} {format_monomial(m)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"TruncSeries({self}, degree={self.degree}, modulus={self.modulus})"


def _unit_inverse(c, modulus):
    if modulus is None:
        if c not in (1, -1):
            raise PreconditionError(f"Constant term {c} is not a unit of Z")
        return c
    if c % modulus == 0:
        raise PreconditionError(f"Constant term {c} is not a unit of Z/{modulus}")
    return pow(c, -1, modulus)


def series_inverse(f):
    c0 = _unit_inverse(f.constant_term, f.modulus)
    one = TruncSeries.one(f.degree, f.modulus)
    # f = c0^-1 (1 + g) with g free of constant term, so g^(degree+1) = 0
    g = f.scale(c0) - one
    result = one
    power = one
    for _ in range(f.degree):
        power = power * (-g)
        result = result + power
    result = result.scale(c0)
    if not (f * result).is_one():
        raise CertificateError(f"Inverse of {f} failed to verify")
    return result


def magnus_variable(symbol):
    return f"b_{symbol}"


def magnus_image(w, degree, modulus=None, variables=None):
    """The truncated image of ``w`` under ``g -> 1 + b_g``."""
    variables = variables or {}
    cache = {}
    result = TruncSeries.one(degree, modulus)
    for letter in w.letters:
        if letter not in cache:
            name = variables.get(letter.symbol) or magnus_variable(letter.symbol)
            image = TruncSeries.variable(name, degree, modulus)
            cache[letter] = image if letter.sign == 1 else series_inverse(image)
        result = result * cache[letter]
    return result


@dataclass(frozen=True)
class WitnessReport(object):
    element: Word
    prime: Optional[int]
    degree: int
    image_nontrivial: bool
    witness_monomial: Optional[str] = None
    coefficient: Optional[int] = None
    n: Optional[int] = None
    order: Optional[int] = None

    def __post_init__(self):
        if self.image_nontrivial and self.witness_monomial is None:
            raise CertificateError(f"Nontrivial image of {self.element} has no witness")

    def to_json(self):
        doc = {
            "element": str(self.element),
            "prime": self.prime,
            "degree": self.degree,
            "image_nontrivial": self.image_nontrivial,
            "witness_monomial": self.witness_monomial,
            "coefficient": self.coefficient,
        }
        if self.n is not None:
            doc["n"] = self.n
        if self.order is not None:
            doc["order"] = self.order
        return doc


def nontriviality_witness(w, modulus=None):
    """Find the least truncation degree at which ``w`` maps away from 1."""
    if not w:
        raise PreconditionError("The trivial word has no witness")
    if Word(w.letters) != w:
        raise PreconditionError(f"{w} is not freely reduced")
    for degree in range(1, len(w) + 1):
        image = magnus_image(w, degree, modulus)
        if not image.is_one():
            m, c = (image - TruncSeries.one(degree, modulus)).lowest_term()
            if len(m) != degree:
                raise CertificateError(f"Witness {m} of {w} is below degree {degree}")
            logger.debug("%s survives at degree %d via %s", w, degree, m)
            return WitnessReport(w, modulus, degree, True, format_monomial(m), c)
    raise CapExceededError(f"{w} maps to 1 up to degree {len(w)}")


def skew_variable(t, i):
    return f"b_z{t}_{i}"


class SkewRing(object):
    """``(Z/p<<b>> / J) [C_{q^2}]`` with ``q = p^n``.

    The coefficient ring has variables ``b_x`` and ``b_z{t}_{i}`` for
    ``i`` in ``Z/q``; ``y`` acts by the automorphism ``sigma`` that shifts
    the z-levels and sends ``1 + b_x`` to ``U (1 + b_x)`` with ``U`` the
    image of ``u`` at level 0.
    """

    def __init__(self, d, u, p, n, degree=None, monomial_cap=200000):
        if d < 1:
            raise PreconditionError(f"d = {d}: the free factor z must be nontrivial")
        if not isprime(p):
            raise PreconditionError(f"{p} is not prime")
        if n < 1:
            raise PreconditionError(f"n = {n} must be at least 1")
        self.d, self.u, self.p, self.n = d, u, p, n
        self.q = p ** n
        self.period = self.q ** 2
        self.degree = n if degree is None else degree
        if self.degree >= self.q:
            raise PreconditionError(
                f"Truncation degree {self.degree} must be below p^n = {self.q}"
            )

        self.z_symbols = tuple(GeneratorSymbol(f"z{t}") for t in range(1, d + 1))
        for letter in u.letters:
            if letter.symbol not in self.z_symbols:
                raise PreconditionError(f"u involves {letter.symbol}, which is not in z")
        self.variables = ("b_x",) + tuple(
            skew_variable(t, i) for t in range(1, d + 1) for i in range(self.q)
        )
        size = sum(len(self.variables) ** i for i in range(self.degree + 1))
        if size > monomial_cap:
            raise CapExceededError(
                f"{size} monomials exceed the cap of {monomial_cap}"
            )

        self.U = magnus_image(
            u,
            self.degree,
            p,
            {g: skew_variable(t, 0) for t, g in enumerate(self.z_symbols, 1)},
        )
        sigma = {
            skew_variable(t, i): self.series({(skew_variable(t, (i + 1) % self.q),): 1})
            for t in range(1, d + 1)
            for i in range(self.q)
        }
        sigma["b_x"] = self.U * self.generator("b_x") - self.series({(): 1})
        self._powers = [{}]
        for _ in range(1, self.period):
            previous = self._powers[-1]
            self._powers.append(
                {v: (previous.get(v) or self.series({(v,): 1})).substitute(sigma)
                 for v in self.variables}
            )
        wrapped = self._powers[-1]["b_x"].substitute(sigma)
        if wrapped != self.series({("b_x",): 1}):
            raise CertificateError(f"sigma^{self.period} does not fix b_x")
        logger.debug(
            "skew ring over Z/%d with q=%d, %d variables, degree %d",
            p, self.q, len(self.variables), self.degree,
        )

        relator = commutator(Word.from_letter(X), Word.from_letter(Y)) * u
        if not self.image(relator).is_one():
            raise CertificateError(f"{relator} does not map to 1")

    def series(self, coeffs):
        return TruncSeries(coeffs, self.degree, self.p)

    def generator(self, v):
        return TruncSeries.variable(v, self.degree, self.p)

    def act(self, s, f):
        """``sigma^s (f)``."""
        s %= self.period
        if s == 0:
            return f
        return f.substitute(self._powers[s])

    def element(self, components):
        return SkewRingElt(self, components)

    def one(self):
        return self.element({0: TruncSeries.one(self.degree, self.p)})

    def letter_image(self, letter):
        symbol = letter.symbol
        if symbol == Y:
            return self.element({letter.sign % self.period: TruncSeries.one(self.degree, self.p)})
        if symbol == X:
            f = self.generator("b_x")
        elif symbol in self.z_symbols:
            f = self.generator(skew_variable(self.z_symbols.index(symbol) + 1, 0))
        else:
            raise PreconditionError(f"{symbol} is not a generator of (x,y) v z")
        if letter.sign == -1:
            f = series_inverse(f)
        return self.element({0: f})

    def image(self, w):
        result = self.one()
        for letter in w.letters:
            result = result * self.letter_image(letter)
        return result


class SkewRingElt(object):
    __slots__ = ("ring", "components")

    def __init__(self, ring, components):
        self.ring = ring
        self.components = {
            t % ring.period: f for t, f in components.items() if f.coeffs
        }

    def __add__(self, other):
        components = dict(self.components)
        for t, g in other.components.items():
            components[t] = components[t] + g if t in components else g
        return SkewRingElt(self.ring, components)

    def __mul__(self, other):
        ring = self.ring
        components = {}
        for s, f in self.components.items():
            for t, g in other.components.items():
                key = (s + t) % ring.period
                term = f * ring.act(s, g)
                components[key] = components[key] + term if key in components else term
        return SkewRingElt(ring, components)

    def __pow__(self, e):
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, SkewRingElt):
            return NotImplemented
        return self.ring is other.ring and self.components == other.components

    def __hash__(self):
        return hash(frozenset(self.components.items()))

    def is_one(self):
        return self == self.ring.one()

    def __str__(self):
        return " + ".join(
            f"({self.components[t]}) y^{t}" for t in sorted(self.components)
        ) or "0"


def image_order(element, cap=64):
    """Multiplicative order of a unit in the p-group of ``SkewRingElt``.

    Orders there are powers of ``p``, found by repeated p-th powers.
    """
    p = element.ring.p
    order = 1
    current = element
    for _ in range(cap + 1):
        if current.is_one():
            return order
        current = current ** p
        order *= p
    raise CapExceededError(f"Order of {element} exceeds {p}^{cap}")


def potency_s_witness(s, d, u, p, n, degree=None, order=False, monomial_cap=200000,
                      order_cap=64):
    ring = SkewRing(d, u, p, n, degree=degree, monomial_cap=monomial_cap)
    image = ring.image(s)
    nontrivial = not image.is_one()
    monomial = coefficient = None
    if nontrivial:
        shifts = sorted(t for t in image.components if t)
        if shifts:
            monomial = f"y^{shifts[0]}"
            coefficient = 1
        else:
            base = image.components[0] - TruncSeries.one(ring.degree, p)
            m, coefficient = base.lowest_term()
            monomial = format_monomial(m)
    found = image_order(image, order_cap) if order else None
    return WitnessReport(s, p, ring.degree, nontrivial, monomial, coefficient, n, found)


def potency_search(s, d, u, primes=(2, 3), max_n=2, **kwargs):
    """The least ``(p, n)`` whose skew ring separates ``s`` from 1."""
    report = None
    for p in primes:
        for n in range(1, max_n + 1):
            report = potency_s_witness(s, d, u, p, n, **kwargs)
            if report.image_nontrivial:
                return report
    return report
