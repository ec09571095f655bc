import pytest

from endosign.localfield import (ALL_CLASSES, PI_CLASS, TRIVIAL, XI, XI_PI,
                                 ResidueParam, SquareClass, legendre,
                                 sgn_minus_one, sq_mul)


def brute_squares(q):
    return {(x * x) % q for x in range(1, q)}


def test_legendre_examples():
    assert legendre(4, ResidueParam(5)) == 1
    assert legendre(2, ResidueParam(5)) == -1  # squares mod 5 are {1, 4}
    assert legendre(12, ResidueParam(13)) == 1  # (-1)^((13-1)/2)


def test_legendre_against_square_sets():
    for q in (5, 7, 13):
        rp = ResidueParam(q)
        squares = brute_squares(q)
        for x in range(1, q):
            assert legendre(x, rp) == (1 if x in squares else -1)
        assert sum(1 for x in range(1, q) if legendre(x, rp) == 1) == (q - 1) // 2


def test_legendre_multiplicative():
    for q in (5, 7, 13):
        rp = ResidueParam(q)
        for x in range(1, q):
            for y in range(1, q):
                assert legendre(x * y, rp) == legendre(x, rp) * legendre(y, rp)


def test_legendre_rejects_zero():
    with pytest.raises(ValueError):
        legendre(0, ResidueParam(5))
    with pytest.raises(ValueError):
        legendre(10, ResidueParam(5))


def test_residue_param_validation():
    for bad in (3, 4, 9, 1):
        with pytest.raises(ValueError):
            ResidueParam(bad)


def test_sgn_minus_one():
    assert sgn_minus_one(ResidueParam(5)) == 1
    assert sgn_minus_one(ResidueParam(7)) == -1
    assert sgn_minus_one(ResidueParam(13)) == 1


def test_square_class_group_law():
    assert sq_mul(TRIVIAL, XI_PI) == XI_PI
    assert sq_mul(XI_PI, XI_PI) == TRIVIAL
    assert sq_mul(XI, PI_CLASS) == XI_PI
    for a in ALL_CLASSES:
        assert sq_mul(a, a) == TRIVIAL
        for b in ALL_CLASSES:
            assert sq_mul(a, b) == sq_mul(b, a)
            assert sq_mul(a, b) in ALL_CLASSES


def test_klein_group_structure():
    # four elements, exponent two, closed: the Klein group
    assert len(set(ALL_CLASSES)) == 4
    for a in ALL_CLASSES:
        assert sq_mul(TRIVIAL, a) == a


def test_serialization_roundtrip():
    names = [c.name() for c in ALL_CLASSES]
    assert names == ["1", "xi", "pi", "xi.pi"]
    for c in ALL_CLASSES:
        assert SquareClass.from_name(c.name()) == c
    with pytest.raises(ValueError):
        SquareClass.from_name("nope")


def test_square_class_validation():
    with pytest.raises(ValueError):
        SquareClass(2, 1)
    with pytest.raises(ValueError):
        SquareClass(0, 0)
