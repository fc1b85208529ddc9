# -*- coding: utf-8 -*-

from fractions import Fraction

import pytest
from sympy import Matrix, zeros

from sporcalc.exceptions import PreconditionError, QuotientError, UnknownGeneratorError
from sporcalc.fox import (
    GroupRingElt,
    LaurentPoly,
    QuotientMap,
    chain_complex,
    cyclic_quotient,
    evaluate,
    fox_derivative,
    fundamental_identity_check,
    registered_quotients,
    trivial_quotient,
)
from sporcalc.hempel import Hempel, PowerOfX, normalize, torsion_data
from sporcalc.presentation import (
    NON_ORIENTABLE,
    CommutatorForm,
    Presentation,
    SporInput,
    parse,
    to_commutator_form,
)
from sporcalc.words import Word, cyclic_reduce, generators


def test_group_ring_arithmetic(w):
    a = GroupRingElt.word(w("a"))
    one = GroupRingElt.one()
    square = (a - one) * (a + one)
    assert square == GroupRingElt.word(w("a a")) - one
    assert square.augmentation() == 0
    assert (a - a) == GroupRingElt.zero()
    assert not GroupRingElt.zero()
    assert str(2 * a - one) == "-1*(1) + 2*(a)"


def test_fox_derivative_examples(w, ab):
    a, b = ab
    jet = fox_derivative(w("a b a^-1"), (a, b))
    assert jet[a] == GroupRingElt.one() - GroupRingElt.word(w("a b a^-1"))
    assert jet[b] == GroupRingElt.word(w("a"))

    jet = fox_derivative(w("a^-1"), (a, b))
    assert jet[a] == -GroupRingElt.word(w("a^-1"))
    assert not jet[b]


def test_fox_derivative_of_identity(ab):
    jet = fox_derivative(Word(), ab)
    assert all(not entry for entry in jet.row())


def test_fox_derivative_rejects_foreign_letters(w, ab):
    with pytest.raises(UnknownGeneratorError):
        fox_derivative(w("a c"), ab)


def test_fundamental_identity_on_random_words(rng, random_word):
    alphabets = [generators("a"), generators("a", "b"), generators("a", "b", "c", "d")]
    for i in range(200):
        gens = alphabets[i % len(alphabets)]
        r = random_word(rng, gens, rng.randint(0, 30))
        assert fundamental_identity_check(r, gens)


def test_laurent_arithmetic():
    one = LaurentPoly.monomial((0,))
    t = LaurentPoly.monomial((1,))
    minus_t = LaurentPoly.monomial((1,), -1)
    product = (one + t) * (one + minus_t)
    assert product == one + LaurentPoly.monomial((2,), -1)
    assert (t * Fraction(1, 2)).augmentation() == Fraction(1, 2)
    assert (t + LaurentPoly.monomial((1,), -1)).is_zero()


def test_finite_quotient_validation():
    p = parse("< a, b | a b a^-1 b^-1 >")
    with pytest.raises(QuotientError):
        QuotientMap.finite(p, {p.generators[0]: (0, 0), p.generators[1]: (0, 1)})

    q = parse("< a | a^3 >")
    with pytest.raises(QuotientError):
        QuotientMap.finite(q, {q.generators[0]: (1, 0)})
    assert QuotientMap.finite(q, {q.generators[0]: (1, 2, 0)}).degree == 3


def test_permutation_matrices_are_homomorphic(w):
    p = parse("< a, b | >")
    a, b = p.generators
    q = QuotientMap.finite(p, {a: (1, 2, 0), b: (1, 0, 2)})
    assert q.matrix(w("a")) * q.matrix(w("b")) == q.matrix(w("a b"))
    assert q.matrix(w("a a a")) == q.matrix(Word())
    assert q.matrix(w("b^-1")) == q.matrix(w("b"))


def test_cyclic_quotient_needs_free_part():
    assert cyclic_quotient(parse("< a | a^2 >"), 3) is None
    q = cyclic_quotient(parse("< a, b | a b >"), 3)
    assert q is not None and q.degree == 3


def _hempel_forms(w):
    a, b, c = generators("a", "b", "c")
    yield to_commutator_form(SporInput(3, NON_ORIENTABLE, w("a b c"), (a, b, c)))
    yield CommutatorForm(1, w("z1 z1"), w("z1 y x y^-1"))
    yield CommutatorForm(1, w("z1 z1"), w("z1 y x y^-1 z1 y x y^-1 z1 y x y^-1"))
    yield CommutatorForm(1, w("z1 z1 z1"), w("z1 y x y^-1"))
    yield CommutatorForm(1, w("z1 z1"), w("z1 y^2 x y^-2"))
    yield CommutatorForm(2, w("z1 z2 z1^-1 z2^-1"), w("z1 y z2 x y^-1"))
    yield CommutatorForm(2, w("z1 z1 z2 z2"), w("z2 y x y^-1"))
    yield CommutatorForm(2, w("z1 z1 z2 z2"), w("z1 y z1 x y^-1"))
    yield CommutatorForm(3, w("z1 z1 z2 z2 z3 z3"), w("z3 y x y^-1"))
    yield CommutatorForm(1, w("z1 z1"), w("z1 z1 y x y^-1"))


def _complexes(w):
    for cf in _hempel_forms(w):
        result, _ = normalize(cf)
        assert isinstance(result, Hempel)
        td = torsion_data(result.r, cf.u, cf.d)
        M = chain_complex(cf, result, td)
        yield cf, M


def test_chain_complex_shape(w):
    cf = CommutatorForm(1, w("z1 z1"), w("z1 y x y^-1"))
    result, _ = normalize(cf)
    M = chain_complex(cf, result, torsion_data(result.r, cf.u, cf.d))
    assert len(M.d2) == 2
    assert all(len(row) == 3 for row in M.d2)
    assert len(M.d1) == 3
    assert M.m == 1
    assert M.averaged_over == "C_1"
    doc = M.to_json()
    assert doc["generators"] == ["x", "y", "z1"]
    assert doc["averaged_row"] == 1


def test_chain_complex_needs_hempel_result(w):
    cf = CommutatorForm(1, w("z1 z1"), w("y"))
    result, _ = normalize(cf)
    assert isinstance(result, PowerOfX)
    with pytest.raises(PreconditionError):
        chain_complex(cf, result, None)


def test_boundaries_compose_to_zero(w):
    checked = 0
    for cf, M in _complexes(w):
        p = Presentation(M.generators, M.relators)
        assert evaluate(M, QuotientMap.abelianization(p)).is_complex()
        if M.m == 1:
            for q in registered_quotients(p):
                assert evaluate(M, q).is_complex()
        else:
            assert evaluate(M, trivial_quotient(p)).is_complex()
        checked += 1
    assert checked == 10


def test_torsion_complex_averages_the_second_row(w):
    cf = CommutatorForm(1, w("z1 z1"), w("z1 y x y^-1 z1 y x y^-1 z1 y x y^-1"))
    result, _ = normalize(cf)
    M = chain_complex(cf, result, torsion_data(result.r, cf.u, cf.d))
    assert M.m == 3
    assert cyclic_reduce(M.root)[0] == cyclic_reduce(w("z1 y x y^-1"))[0]
    evaluated = evaluate(M, trivial_quotient(Presentation(M.generators, M.relators)))
    # averaging over C_3 is the identity in the trivial quotient
    assert evaluated.d2.row(1) == Matrix([[3, 0, 3]])


def test_averaged_row_is_multiplied_on_the_left(w):
    cf = CommutatorForm(1, w("z1 z1"), w("z1 y x y^-1 z1 y x y^-1 z1 y x y^-1"))
    result, _ = normalize(cf)
    M = chain_complex(cf, result, torsion_data(result.r, cf.u, cf.d))
    p = Presentation(M.generators, M.relators)
    for q in registered_quotients(p):
        N = q.degree
        root = q.matrix(M.root)
        e = sum((root ** i for i in range(M.m)), zeros(N, N)) / M.m
        blocks = evaluate(M, q).d2[M.averaged_row * N : (M.averaged_row + 1) * N, :]
        for j, elt in enumerate(M.d2[M.averaged_row]):
            image = sum((c * q.matrix(g) for g, c in elt.terms.items()), zeros(N, N))
            assert blocks[:, j * N : (j + 1) * N] == e * image
