# -*- coding: utf-8 -*-
"""Integer group rings of free groups, Fox derivatives and the boundary
matrices of the two-relator chain complex."""

import logging
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple

from sympy import Matrix, Rational, eye, zeros

from .exceptions import (
    CertificateError,
    PreconditionError,
    QuotientError,
    UnknownGeneratorError,
)
from .hempel import Hempel, ShiftedAlphabet
from .homology import free_abelian_images
from .words import Word, multiply


logger = logging.getLogger(__name__)


class GroupRingElt(object):
    """A finite formal sum of words with nonzero integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({Word(): 1})

    @classmethod
    def word(cls, w, coefficient=1):
        return cls({w: coefficient})

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0) + c
        return GroupRingElt(terms)

    def __neg__(self):
        return GroupRingElt({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElt({w: c * other for w, c in self.terms.items()})
        terms = {}
        for a, c in self.terms.items():
            for b, e in other.terms.items():
                ab = multiply(a, b)
                terms[ab] = terms.get(ab, 0) + c * e
        return GroupRingElt(terms)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, GroupRingElt):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def augmentation(self):
        return sum(self.terms.values())

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0].key))

    def to_json(self):
        return [[str(w), c] for w, c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            name = str(w) or "1"
            parts.append(name if c == 1 else f"{c}*({name})")
        return " + ".join(parts)

    def __repr__(self):
        return f"<GroupRingElt {self}>"


@dataclass(frozen=True)
class FoxJet(object):
    generators: tuple
    components: Dict = field(compare=False)

    def __getitem__(self, g):
        return self.components[g]

    def row(self):
        return tuple(self.components[g] for g in self.generators)

    def to_json(self):
        return {str(g): self.components[g].to_json() for g in self.generators}


def fox_derivative(r, gens):
    """Total Fox derivative with the left convention d(uv) = du + u dv."""
    gens = tuple(gens)
    known = set(gens)
    parts = {g: {} for g in gens}
    prefix = Word()
    for letter in r.letters:
        g = letter.symbol
        if g not in known:
            raise UnknownGeneratorError(f"{g} is not one of {', '.join(map(str, gens))}")
        if letter.sign == 1:
            term, c = prefix, 1
        else:
            term, c = multiply(prefix, Word._trusted((letter,))), -1
        parts[g][term] = parts[g].get(term, 0) + c
        prefix = multiply(prefix, Word._trusted((letter,)))
    return FoxJet(gens, {g: GroupRingElt(parts[g]) for g in gens})


def generator_minus_one(g):
    return GroupRingElt({Word.from_letter(g): 1, Word(): -1})


def fundamental_identity_check(r, gens, jet=None):
    jet = jet or fox_derivative(r, gens)
    total = GroupRingElt.zero()
    for g in jet.generators:
        total = total + jet[g] * generator_minus_one(g)
    return total == GroupRingElt.word(r) - GroupRingElt.one()


@dataclass(frozen=True)
class BoundaryMatrices(object):
    generators: tuple
    relators: Tuple[Word, Word]
    d2: tuple
    d1: tuple
    m: int
    root: Word
    averaged_row: int = 1

    @property
    def averaged_over(self):
        return f"C_{self.m}"

    def to_json(self):
        return {
            "generators": [str(g) for g in self.generators],
            "d2": [[entry.to_json() for entry in row] for row in self.d2],
            "d1": [entry.to_json() for entry in self.d1],
            "averaged_row": self.averaged_row,
            "averaged_over": self.averaged_over,
            "m": self.m,
            "root": str(self.root),
        }


def chain_complex(cf, result, torsion):
    """Boundary matrices for ``< (x,y) v z | [x,y]u, r >``.

    Row 2 is the Fox jet of the Hempel relator read back in F through
    ``^i g = y^i g y^-i`` and is flagged as averaged over C_m.
    """
    if not isinstance(result, Hempel):
        raise PreconditionError("chain_complex needs a Hempel relator")
    alphabet = ShiftedAlphabet(cf.d, cf.u)
    relator = alphabet.expand(result.r.representative)
    root = alphabet.expand(torsion.root.representative)
    gens = cf.generators
    rows = []
    for w in (cf.relator, relator):
        jet = fox_derivative(w, gens)
        if not fundamental_identity_check(w, gens, jet):
            raise CertificateError(f"Fundamental identity fails for {w}")
        rows.append(jet.row())
    d1 = tuple(generator_minus_one(g) for g in gens)
    return BoundaryMatrices(gens, (cf.relator, relator), tuple(rows), d1, torsion.m, root)


class LaurentPoly(object):
    """Rational Laurent polynomial keyed by exponent vectors."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {e: Fraction(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exponents, c=1):
        return cls({tuple(exponents): c})

    def __add__(self, other):
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            coeffs[e] = coeffs.get(e, 0) + c
        return LaurentPoly(coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()})
        coeffs = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                coeffs[e] = coeffs.get(e, 0) + c1 * c2
        return LaurentPoly(coeffs)

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def augmentation(self):
        return sum(self.coeffs.values(), Fraction(0))

    def to_json(self):
        return [[list(e), str(c)] for e, c in sorted(self.coeffs.items())]

    def __repr__(self):
        return f"<LaurentPoly {self.to_json()}>"


@dataclass(frozen=True)
class QuotientMap(object):
    """A homomorphism from F to the free part of H1 or to a permutation group."""

    kind: str
    generators: tuple
    images: Dict = field(compare=False)
    degree: int = 0

    @classmethod
    def abelianization(cls, p):
        images = free_abelian_images(p)
        rank = len(next(iter(images.values()))) if images else 0
        q = cls("abelian", p.generators, images, rank)
        q.check(p)
        return q

    @classmethod
    def finite(cls, p, images):
        images = {g: tuple(images[g]) for g in p.generators}
        degree = len(next(iter(images.values())))
        for g, perm in images.items():
            if sorted(perm) != list(range(degree)):
                raise QuotientError(f"Image of {g} is not a permutation of 0..{degree - 1}")
        q = cls("finite", p.generators, images, degree)
        q.check(p)
        return q

    def check(self, p):
        for r in p.relators:
            if self.kind == "finite" and self.permutation(r) != tuple(range(self.degree)):
                raise QuotientError(f"Relator {r} does not map to the identity")
            if self.kind == "abelian" and any(self.exponents(r)):
                raise QuotientError(f"Relator {r} does not vanish in H1")

    def exponents(self, w):
        total = [0] * self.degree
        for letter in w.letters:
            for i, e in enumerate(self.images[letter.symbol]):
                total[i] += letter.sign * e
        return tuple(total)

    def permutation(self, w):
        state = list(range(self.degree))
        for letter in w.letters:
            perm = self.images[letter.symbol]
            if letter.sign == -1:
                inverse = [0] * self.degree
                for i, j in enumerate(perm):
                    inverse[j] = i
                perm = inverse
            state = [perm[s] for s in state]
        return tuple(state)

    def matrix(self, w):
        P = zeros(self.degree, self.degree)
        for i, j in enumerate(self.permutation(w)):
            P[i, j] = 1
        return P

    def is_trivial(self):
        identity = tuple(range(self.degree))
        return self.kind == "finite" and all(p == identity for p in self.images.values())


@dataclass(frozen=True)
class EvaluatedComplex(object):
    kind: str
    d2: object
    d1: object

    def composite(self):
        if self.kind == "finite":
            return self.d2 * self.d1
        return [
            _laurent_sum(row[j] * self.d1[j] for j in range(len(self.d1)))
            for row in self.d2
        ]

    def is_complex(self):
        c = self.composite()
        if self.kind == "finite":
            return c.is_zero_matrix
        return all(entry.is_zero() for entry in c)

    def specialize(self):
        """Augmentation values of the abelian evaluation (all generators -> 1)."""
        if self.kind != "abelian":
            raise PreconditionError("Only abelian evaluations can be specialized")
        d2 = Matrix([[Rational(e.augmentation()) for e in row] for row in self.d2])
        d1 = Matrix([[Rational(e.augmentation())] for e in self.d1])
        return d2, d1


def _laurent_sum(polys):
    total = LaurentPoly()
    for p in polys:
        total = total + p
    return total


def _averaging_power_sum(m, step, one):
    total = None
    power = one
    for _ in range(m):
        total = power if total is None else total + power
        power = power * step
    return total


def evaluate(M, q):
    """Image of the boundary matrices under the quotient ``q``.

    Fox derivatives here act on the left, so the averaged row is
    multiplied by the idempotent ``e = (1/m) sum root^i`` on the left:
    each entry ``a`` of that row becomes ``e a``.
    """
    if q.kind == "finite":
        N = q.degree

        def image(elt):
            total = zeros(N, N)
            for w, c in elt.terms.items():
                total += c * q.matrix(w)
            return total

        root = q.matrix(M.root)
        e = _averaging_power_sum(M.m, root, eye(N)) * Rational(1, M.m)
        blocks = []
        for i, row in enumerate(M.d2):
            entries = [image(elt) for elt in row]
            if i == M.averaged_row:
                entries = [e * entry for entry in entries]
            blocks.append(Matrix.hstack(*entries))
        d2 = Matrix.vstack(*blocks)
        d1 = Matrix.vstack(*[image(elt) for elt in M.d1])
        return EvaluatedComplex("finite", d2, d1)

    def laurent(elt):
        total = LaurentPoly()
        for w, c in elt.terms.items():
            total = total + LaurentPoly.monomial(q.exponents(w), c)
        return total

    one = LaurentPoly.monomial((0,) * q.degree)
    root = LaurentPoly.monomial(q.exponents(M.root))
    e = _averaging_power_sum(M.m, root, one) * Fraction(1, M.m)
    d2 = []
    for i, row in enumerate(M.d2):
        entries = [laurent(elt) for elt in row]
        if i == M.averaged_row:
            entries = [e * entry for entry in entries]
        d2.append(entries)
    d1 = [laurent(elt) for elt in M.d1]
    return EvaluatedComplex("abelian", d2, d1)


def trivial_quotient(p):
    return QuotientMap.finite(p, {g: (0,) for g in p.generators})


def cyclic_quotient(p, n):
    """Map onto Z/n through the first free coordinate of H1, if any."""
    images = free_abelian_images(p)
    if not images or not len(next(iter(images.values()))):
        return None
    return QuotientMap.finite(
        p,
        {
            g: tuple((i + v[0]) % n for i in range(n))
            for g, v in images.items()
        },
    )


def permutation_quotients(p, degree, limit=200000):
    """Brute-force search for homomorphisms onto subgroups of S_degree."""
    perms = list(itertools.permutations(range(degree)))
    if len(perms) ** len(p.generators) > limit:
        logger.debug("skipping S_%d search over %d generators", degree, len(p.generators))
        return
    identity = tuple(range(degree))
    for choice in itertools.product(perms, repeat=len(p.generators)):
        if all(c == identity for c in choice):
            continue
        images = dict(zip(p.generators, choice))
        try:
            yield QuotientMap.finite(p, images)
        except QuotientError:
            continue


def registered_quotients(p):
    """Finite quotients used for consistency checks, trivial one last."""
    found = []
    cyclic = cyclic_quotient(p, 3)
    if cyclic is not None:
        found.append(cyclic)
    for degree in (2, 3):
        q = next(permutation_quotients(p, degree), None)
        if q is not None:
            found.append(q)
    found.append(trivial_quotient(p))
    logger.debug("registered %d quotients", len(found))
    return found
