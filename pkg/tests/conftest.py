# -*- coding: utf-8 -*-

import random

import pytest

from sporcalc.words import GeneratorSymbol, Letter, Word


def _random_word(rng, gens, length):
    letters = []
    while len(letters) < length:
        letter = Letter(rng.choice(gens), rng.choice((1, -1)))
        if letters and letters[-1].is_inverse_of(letter):
            continue
        letters.append(letter)
    return Word(letters)


def _reduced_words(gens, max_length):
    alphabet = [Letter(g, s) for g in gens for s in (1, -1)]
    layer = [()]
    yield Word()
    for _ in range(max_length):
        layer = [
            w + (letter,)
            for w in layer
            for letter in alphabet
            if not w or not w[-1].is_inverse_of(letter)
        ]
        for w in layer:
            yield Word._trusted(w)


@pytest.fixture
def rng():
    return random.Random(20200827)


@pytest.fixture
def random_word():
    """``random_word(rng, gens, length)``: a reduced word of that length."""
    return _random_word


@pytest.fixture
def reduced_words():
    """``reduced_words(gens, n)``: every reduced word of length at most n."""
    return _reduced_words


@pytest.fixture
def ab():
    return GeneratorSymbol("a"), GeneratorSymbol("b")


@pytest.fixture
def w():
    return Word.from_string
