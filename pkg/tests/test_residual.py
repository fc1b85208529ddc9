# -*- coding: utf-8 -*-

import pytest

from sporcalc.exceptions import CapExceededError, CertificateError, PreconditionError
from sporcalc.presentation import X, Y, z
from sporcalc.residual import (
    SkewRing,
    TruncSeries,
    WitnessReport,
    image_order,
    magnus_image,
    nontriviality_witness,
    potency_s_witness,
    potency_search,
    series_inverse,
)
from sporcalc.words import Word, generators


def test_truncation_drops_high_degree_and_zero_terms():
    f = TruncSeries({(): 1, ("a",): 0, ("a", "b"): 3, ("a", "b", "c"): 1}, 2)
    assert f.coeffs == {(): 1, ("a", "b"): 3}
    g = TruncSeries({(): 3, ("a",): 2}, 2, modulus=2)
    assert g.coeffs == {(): 1}
    assert g.is_one()


def test_series_arithmetic():
    a = TruncSeries.variable("a", 2)
    b = TruncSeries.variable("b", 2)
    assert (a * b).coeffs == {(): 1, ("a",): 1, ("b",): 1, ("a", "b"): 1}
    assert (a - a).coeffs == {}
    assert str(a) == "1 + a"
    assert (a * b).lowest_term() == ((), 1)
    with pytest.raises(ValueError):
        a + TruncSeries.one(3)


def test_substitute_is_a_ring_map():
    f = TruncSeries({("a",): 1, ("a", "a"): 1}, 2)
    images = {"a": TruncSeries({("a",): 1, ("b",): 1}, 2)}
    assert f.substitute(images).coeffs == {
        ("a",): 1,
        ("b",): 1,
        ("a", "a"): 1,
        ("a", "b"): 1,
        ("b", "a"): 1,
        ("b", "b"): 1,
    }


def test_series_inverse():
    a = TruncSeries.variable("a", 3)
    assert series_inverse(a).coeffs == {
        (): 1,
        ("a",): -1,
        ("a", "a"): 1,
        ("a", "a", "a"): -1,
    }
    mod3 = TruncSeries({(): 2, ("a",): 1}, 2, modulus=3)
    assert (mod3 * series_inverse(mod3)).is_one()
    with pytest.raises(PreconditionError):
        series_inverse(TruncSeries({(): 2, ("a",): 1}, 2))
    with pytest.raises(PreconditionError):
        series_inverse(TruncSeries({("a",): 1}, 2, modulus=2))


def test_magnus_examples(w):
    assert magnus_image(w("x^-1"), 3).coeffs == {
        (): 1,
        ("b_x",): -1,
        ("b_x", "b_x"): 1,
        ("b_x", "b_x", "b_x"): -1,
    }
    assert magnus_image(w("x^-1"), 3, modulus=2).coeffs == {
        (): 1,
        ("b_x",): 1,
        ("b_x", "b_x"): 1,
        ("b_x", "b_x", "b_x"): 1,
    }
    assert magnus_image(w("x y x^-1 y^-1"), 2).coeffs == {
        (): 1,
        ("b_x", "b_y"): 1,
        ("b_y", "b_x"): -1,
    }


def test_magnus_is_multiplicative(rng, random_word):
    gens = generators("x", "y", "z")
    for modulus in (None, 3):
        for _ in range(30):
            u = random_word(rng, gens, rng.randint(0, 6))
            v = random_word(rng, gens, rng.randint(0, 6))
            left = magnus_image(u * v, 4, modulus)
            assert left == magnus_image(u, 4, modulus) * magnus_image(v, 4, modulus)


def test_nontriviality_witness_examples(w):
    report = nontriviality_witness(w("x"))
    assert (report.degree, report.witness_monomial, report.coefficient) == (1, "b_x", 1)

    report = nontriviality_witness(w("x y x^-1 y^-1"))
    assert report.degree == 2
    assert report.witness_monomial == "b_x b_y"
    assert report.to_json()["prime"] is None

    report = nontriviality_witness(w("x x"), modulus=2)
    assert report.degree == 2
    assert report.witness_monomial == "b_x b_x"

    with pytest.raises(PreconditionError):
        nontriviality_witness(Word())


def test_witness_report_needs_monomial(w):
    with pytest.raises(CertificateError):
        WitnessReport(w("x"), 2, 1, True)


@pytest.mark.slow
@pytest.mark.parametrize("modulus", [None, 2])
def test_every_short_word_has_a_witness(reduced_words, modulus):
    x, y = generators("x", "y")
    for word in reduced_words((x, y), 7):
        if not word:
            continue
        report = nontriviality_witness(word, modulus)
        assert report.image_nontrivial
        assert report.degree <= len(word)


@pytest.fixture
def u(w):
    return w("z1 z1")


def test_skew_ring_kills_the_surface_relator(w, u):
    ring = SkewRing(1, u, 2, 1)
    assert ring.q == 2
    assert ring.period == 4
    assert ring.image(w("x y x^-1 y^-1 z1 z1")).is_one()
    assert ring.variables == ("b_x", "b_z1_0", "b_z1_1")


def test_skew_ring_is_multiplicative(w, u, rng, random_word):
    ring = SkewRing(1, u, 3, 1)
    gens = (X, Y, z(1))
    for _ in range(20):
        a = random_word(rng, gens, rng.randint(0, 6))
        b = random_word(rng, gens, rng.randint(0, 6))
        c = random_word(rng, gens, rng.randint(0, 4))
        ia, ib, ic = ring.image(a), ring.image(b), ring.image(c)
        assert ring.image(a * b) == ia * ib
        assert (ia * ib) * ic == ia * (ib * ic)


def test_skew_ring_preconditions(u, w):
    with pytest.raises(PreconditionError):
        SkewRing(0, Word(), 2, 1)
    with pytest.raises(PreconditionError):
        SkewRing(1, u, 4, 1)
    with pytest.raises(PreconditionError):
        SkewRing(1, u, 2, 1, degree=2)
    with pytest.raises(PreconditionError):
        SkewRing(1, w("x"), 2, 1)
    with pytest.raises(CapExceededError):
        SkewRing(1, u, 2, 1, monomial_cap=2)


def test_potency_witness_for_z(w, u):
    report = potency_s_witness(w("z1"), 1, u, 2, 1)
    assert report.image_nontrivial
    assert report.witness_monomial == "b_z1_0"
    assert report.coefficient == 1
    assert report.to_json()["n"] == 1


def test_potency_witness_for_identity(u):
    report = potency_s_witness(Word(), 1, u, 2, 1)
    assert not report.image_nontrivial
    assert report.witness_monomial is None


def test_potency_witness_for_y(w, u):
    report = potency_s_witness(w("y"), 1, u, 2, 1)
    assert report.witness_monomial == "y^1"
    assert not potency_s_witness(w("y^4"), 1, u, 2, 1).image_nontrivial


def test_potency_order(w, u):
    report = potency_s_witness(w("x"), 1, u, 2, 1, order=True)
    assert report.order == 2
    ring = SkewRing(1, u, 2, 1)
    assert image_order(ring.image(w("y"))) == 4
    with pytest.raises(CapExceededError):
        image_order(ring.image(w("y")), cap=1)


def test_potency_search(w, u):
    report = potency_search(w("x"), 1, u)
    assert (report.prime, report.n) == (2, 1)
    assert report.witness_monomial == "b_x"

    report = potency_search(w("y^4"), 1, u, primes=(2,))
    assert report.image_nontrivial
    assert report.n == 2
    assert report.witness_monomial == "y^4"
