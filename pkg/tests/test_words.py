# -*- coding: utf-8 -*-

import pytest

from sporcalc.arith import ExtendedNat
from sporcalc.exceptions import PreconditionError, PresentationSyntaxError
from sporcalc.words import (
    CyclicWord,
    GeneratorSymbol,
    Letter,
    Word,
    commutator,
    conjugate,
    conjugate_to_power_of,
    cyclic_reduce,
    exponent_sum,
    free_root,
    generators,
    invert,
    involves,
    is_cyclically_reduced,
    product,
    substitute,
)


def test_reduce_cancels_adjacent_inverses(w):
    assert w("a a^-1 b") == w("b")
    assert w("a b b^-1 a^-1") == Word()
    assert len(w("a b a^-1 b^-1")) == 4


def test_multiply_reduces_at_the_seam(w):
    assert w("a b") * w("b^-1 a") == w("a a")
    assert w("a b") * invert(w("a b")) == Word()


def test_conjugate_and_commutator(w):
    assert conjugate(w("a"), w("b")) == w("a b a^-1")
    assert commutator(w("a"), w("b")) == w("a b a^-1 b^-1")


def test_serialization_round_trip_with_levels(w):
    text = "x@1 z1@-2^-1 y^-1 z1@0"
    assert str(w(text)) == text
    word = w("z2@3^-3")
    assert len(word) == 3
    assert word[0] == Letter(GeneratorSymbol("z2", 3), -1)


def test_from_string_rejects_bad_terms():
    with pytest.raises(PresentationSyntaxError):
        Word.from_string("a^")


def test_cyclic_reduce_examples(w):
    c, t = cyclic_reduce(w("a b c a^-1"))
    assert c.representative == w("b c")
    assert t == w("a")

    c, t = cyclic_reduce(w("b c"))
    assert c.representative == w("b c")
    assert t == Word()


def test_cyclic_reduce_reconstructs(rng, random_word):
    gens = generators("a", "b", "c")
    for _ in range(200):
        word = random_word(rng, gens, rng.randint(0, 20))
        c, t = cyclic_reduce(word)
        assert is_cyclically_reduced(c.representative)
        assert conjugate(t, c.representative) == word


def test_cyclic_word_equality_up_to_rotation(w):
    assert CyclicWord(w("a b c")) == CyclicWord(w("b c a"))
    assert CyclicWord(w("a b c")) != CyclicWord(w("a c b"))
    assert hash(CyclicWord(w("a b c"))) == hash(CyclicWord(w("c a b")))
    with pytest.raises(PreconditionError):
        CyclicWord(w("a b a^-1"))


def test_rotation_index_points_at_canonical_rotation(w):
    c = CyclicWord(w("b c a"))
    i = c.rotation_index()
    letters = c.representative.letters
    assert Word(letters[i:] + letters[:i]) == c.canonical


def test_exponent_sum_and_involves(w, ab):
    a, b = ab
    assert exponent_sum(w("a b a^-1 a a"), a) == 2
    assert exponent_sum(w("a b a^-1 a a"), b) == 1
    c, _ = cyclic_reduce(w("a b a^-1"))
    assert involves(c, {b})
    assert not involves(c, {a})


def test_substitute_applies_homomorphism(w, ab):
    a, b = ab
    images = {a: w("b a"), b: w("a^-1")}
    assert substitute(w("a b^-1"), images) == w("b a a")
    assert substitute(w("a b"), images) == w("b")


def test_free_root_examples(w):
    result = free_root(w("a b a b"))
    assert result.root == w("a b")
    assert result.exponent == 2
    assert result.to_json() == {"root": "a b", "log": 2}

    result = free_root(w("c a b a b c^-1"))
    assert result.root == w("c a b c^-1")
    assert result.exponent == 2

    assert free_root(w("a b")).exponent == 1
    assert free_root(w("a^6")).root == w("a")
    assert free_root(w("a^6")).exponent == 6


def test_free_root_of_identity_is_infinite():
    result = free_root(Word())
    assert result.root == Word()
    assert result.exponent == ExtendedNat.infinity()
    assert result.to_json() == {"root": "", "log": "inf"}


def test_conjugate_to_power_of(w):
    s = w("a b")
    assert conjugate_to_power_of(w("b a b a"), s) == 2
    assert conjugate_to_power_of(w("c a b a b c^-1"), s) == 2
    assert conjugate_to_power_of(invert(w("a b a b")), s) == -2
    assert conjugate_to_power_of(Word(), s) == 0
    assert conjugate_to_power_of(w("a"), w("b")) is None
    assert conjugate_to_power_of(w("a b a"), s) is None
    with pytest.raises(PreconditionError):
        conjugate_to_power_of(w("a"), Word())


def test_product_and_power(w):
    assert product([w("a"), w("b"), w("b^-1 c")]) == w("a c")
    assert w("c a b c^-1") ** 3 == w("c a b a b a b c^-1")
    assert w("a b") ** -1 == w("b^-1 a^-1")
    assert w("a b") ** 0 == Word()


def _divisor_oracle(word):
    c, t = cyclic_reduce(word)
    letters = c.representative.letters
    n = len(letters)
    for d in range(1, n + 1):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return conjugate(t, Word(letters[:d])), n // d


@pytest.mark.slow
def test_free_root_matches_divisor_oracle(reduced_words):
    a, b = generators("a", "b")
    checked = 0
    for word in reduced_words((a, b), 12):
        if not word:
            continue
        result = free_root(word)
        root, log = _divisor_oracle(word)
        assert result.root == root
        assert result.exponent == log
        checked += 1
    assert checked == 2 * (3 ** 12 - 1)
