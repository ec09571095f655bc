from fractions import Fraction

import pytest

from endosign.constants import (W_MINUS, W_PLUS, QuadrupleGamma, branch_switch,
                                chain_sign_constants, collapse_and_product_constants,
                                cuspidal_class_constant, even_case_transfer_constant,
                                factorwise_transfer_check, odd_case_transfer_constant,
                                pair_power_constant, r_plus_minus,
                                split_pair_identities, split_pair_values,
                                split_quadruple, transfer_factor_sign, u_exponent,
                                u_sign, alpha_constant, weil_ratio_sign)
from endosign.exact import ExactValue
from endosign.families import (EVector, GammaVector, LPair, SplitShape, UVector,
                               enumerate_L, eta_of_L2)
from endosign.localfield import ResidueParam, SquareClass
from endosign.weyl import WeylClassB

F5 = ResidueParam(5)
F7 = ResidueParam(7)


def test_split_quadruple_values():
    res = split_quadruple(QuadrupleGamma(0, 0, 2, 1))
    assert (res.n1, res.n2) == (2, 1)
    assert res.g1 == QuadrupleGamma(0, 0, 2, 0)
    assert res.g2 == QuadrupleGamma(0, 0, 1, 0)

    res = split_quadruple(QuadrupleGamma(1, -1, 0, 0))
    assert (res.n1, res.n2) == (0, 3)
    assert res.g2 == QuadrupleGamma(1, 1, 0, 0)

    res = split_quadruple(QuadrupleGamma(0, 0, 0, 0))
    assert (res.n1, res.n2) == (0, 0)


def test_split_sum_identity_sample():
    for rp in range(6):
        for rpp in range(-6, 7):
            g = QuadrupleGamma(rp, rpp, 2, 3)
            res = split_quadruple(g)
            assert res.n1 + res.n2 == g.n
            # companion membership: n_j = r'_j^2 + r'_j + r''_j^2 + N_j' + 0
            assert res.n1 == res.g1.rp ** 2 + res.g1.rp + res.g1.rpp ** 2 + res.g1.Np
            assert res.n2 == res.g2.rp ** 2 + res.g2.rp + res.g2.rpp ** 2 + res.g2.Np


def test_r_plus_minus():
    assert r_plus_minus(1, 1) == (2, 1)
    assert r_plus_minus(1, 0) == (1, 2)
    assert r_plus_minus(0, 0) == (1, 0)


def test_aux_identities_worked_points():
    rep = split_pair_identities(1, 2)
    assert rep.passed
    assert rep.checks["companion_sums"]["lhs"][0] == 3  # = |r'_+ + r''| with r'_+ = 1
    assert rep.checks["companion_sums"]["lhs"][3] == 0  # = |r'_- - r''| with r'_- = 2

    assert u_exponent(1, 0) == 0
    assert u_sign(1, 0, -1) == 1
    r1 = split_pair_values(1, 0)
    assert u_sign(r1[0], r1[1], -1) * u_sign(r1[2], r1[3], -1) == 1

    assert split_pair_identities(0, 0).passed


def test_cuspidal_class_constant():
    assert cuspidal_class_constant(W_PLUS, F5) == ExactValue(1)
    got = cuspidal_class_constant(WeylClassB((), (1,)), F5)
    assert got == ExactValue(Fraction(1, 12), q_half=1, q=5)
    # class (empty, [1,1]): size 1, |W_2| = 8, two factors (q + 1)
    got = cuspidal_class_constant(WeylClassB((), (1, 1)), F5)
    assert got == ExactValue(Fraction(1, 8) * Fraction(5, 36), q=5)
    with pytest.raises(ValueError):
        cuspidal_class_constant(WeylClassB((1,), ()), F5)


def test_alpha_constant():
    eta = SquareClass(0, 1)
    assert alpha_constant(0, 0, W_PLUS, W_PLUS, eta, F5) == 1
    assert alpha_constant(2, 0, W_PLUS, W_PLUS, eta, F7) == -1  # m^(1) * unit
    eta_odd = SquareClass(1, 1)
    assert alpha_constant(1, 1, W_MINUS, W_PLUS, eta_odd, F5) == -1
    with pytest.raises(ValueError):
        alpha_constant(1, 1, W_PLUS, W_PLUS, SquareClass(0, 1), F5)


def test_pair_power_constant():
    assert pair_power_constant(0, 0, F5) == ExactValue(2)
    assert pair_power_constant(2, 0, F5) == ExactValue(Fraction(1, 64))
    assert pair_power_constant(1, 1, F5) == ExactValue(Fraction(1, 2))
    with pytest.raises(ValueError):
        pair_power_constant(1, 0, F5)


def test_odd_case_transfer_constant():
    eta_even = SquareClass(0, 1)
    eta2 = SquareClass(0, 1)
    assert odd_case_transfer_constant(1, 0, W_PLUS, eta2, eta_even, F5) == 1
    # r' < r'': constant picks up sgn_cd(w''); exponent 1 + val(eta) is even
    eta_odd = SquareClass(1, 1)
    assert odd_case_transfer_constant(0, 1, W_MINUS, eta2, eta_odd, F5) == -1
    with pytest.raises(ValueError):
        odd_case_transfer_constant(0, 0, W_PLUS, eta2, eta_even, F5)


def test_even_case_transfer_constant():
    eta = SquareClass(0, 1)
    one = SquareClass(0, 1)
    pi = SquareClass(1, 1)
    # (r', r'') = (2, 0): t1 = t2 = 1, classes of odd valuation; val(eta) even
    assert even_case_transfer_constant(pi, pi, 2, 0, W_PLUS, eta, F5) == 1
    # odd valuation of eta with eta2 unit sign -1
    eta_o = SquareClass(1, 1)
    eta2 = SquareClass(0, -1)
    eta1 = eta_o * eta2
    assert even_case_transfer_constant(eta1, eta2, 1, 1, W_PLUS, eta_o, F5) == -1
    # r' < r'' branch at q = 7 (m = -1): m^val(eta2) * sgn_cd(w'') * unit^(1+val)
    eta2b = SquareClass(1, -1)
    eta1b = eta_o * eta2b
    got = even_case_transfer_constant(eta1b, eta2b, 1, 3, W_MINUS, eta_o, F7)
    assert got == (-1) * (-1) * 1  # m * sgn_cd, exponent 1 + 1 even
    with pytest.raises(ValueError):
        even_case_transfer_constant(one, one, 1, 1, W_PLUS, eta_o, F5)


def test_weil_ratio_table():
    even_p = SquareClass(0, 1)
    even_m = SquareClass(0, -1)
    odd_p = SquareClass(1, 1)
    odd_m = SquareClass(1, -1)
    assert weil_ratio_sign(1, even_p, 1, even_m, F5) == 1
    assert weil_ratio_sign(1, even_m, 1, odd_p, F5) == -1  # unit of the first class
    assert weil_ratio_sign(1, odd_p, 1, even_m, F5) == -1  # unit of the second class
    # both odd: sgn(-unit(eta)); at q = 7, m = -1
    assert weil_ratio_sign(1, odd_m, 1, odd_p, F7) == (-1) * (-1) * 1


def test_transfer_factor_sign_degenerate():
    shape = SplitShape(1, 1)
    gamma = GammaVector((), (1,))
    pair = LPair((), ())
    eta = SquareClass(1, 1)
    eta2L = eta_of_L2(gamma, pair, shape, W_MINUS, F5)
    # everything collapses to sgn_cd(w'')^val(eta)
    assert transfer_factor_sign(shape, gamma, pair, W_PLUS, W_MINUS, eta, eta2L, F5) == -1
    assert transfer_factor_sign(shape, gamma, pair, W_PLUS, W_PLUS, eta,
                                eta_of_L2(gamma, pair, shape, W_PLUS, F5), F5) == 1


def test_transfer_factor_sign_pair_slot_factor():
    # single even pair slot at q = 5: difference sign legendre(1 - 4) = legendre(2)
    shape = SplitShape(2, 0)
    pair = enumerate_L(shape)[0]
    eta = SquareClass(0, 1)
    gamma = GammaVector((1, 4), ())
    eta2L = eta_of_L2(gamma, pair, shape, W_PLUS, F5)
    got = transfer_factor_sign(shape, gamma, pair, W_PLUS, W_PLUS, eta, eta2L, F5)
    # t2 odd: unit(eta), sgn_cd factors trivial here; j/2-1 = 0 kills the
    # product sign; remaining factors: legendre(1-4) * top-product (empty)
    assert got == -1


def test_collapse_constant_values():
    one = SquareClass(0, 1)
    collapse, product = collapse_and_product_constants(
        0, 0, W_PLUS, W_PLUS, one, one, one, 0, F5)
    assert collapse == ExactValue(1)
    odd = SquareClass(1, 1)
    collapse, _ = collapse_and_product_constants(
        2, 0, W_PLUS, W_PLUS, one, odd, odd, 1, F5)
    assert collapse.rational == 2  # ((q-3)/4)^(-1) at q = 5


def test_product_identity_base_point():
    one = SquareClass(0, 1)
    _, product = collapse_and_product_constants(
        0, 0, W_PLUS, W_PLUS, one, one, one, 0, F5)
    lhs = ExactValue(Fraction(1, 2)) * product  # family count is 1
    rhs = even_case_transfer_constant(one, one, 0, 0, W_PLUS, one, F5)
    assert lhs == ExactValue.from_sign(rhs) == ExactValue(1)


def test_branch_switch():
    assert branch_switch(2, 1) == 0
    assert branch_switch(2, 0) == 0
    assert branch_switch(1, 0) == 1
    assert branch_switch(2, -1) == 1


def test_chain_sign_constants_worked():
    signs = chain_sign_constants(1, 0, W_PLUS, W_PLUS, 0, 2, 0, F5)
    assert signs.base == 1 and signs.u_value == 1
    # branch r'' < -r': the endoscopic sign carries (-1)^(d r'') sgn_cd(w')
    signs = chain_sign_constants(1, -2, W_MINUS, W_PLUS, 0, 0, 1, F5)
    assert signs.endo == (-1) ** ((1 * -2) % 2) * (-1)
    # 0 < r'' <= r': trivial sharp sign
    signs = chain_sign_constants(3, 2, W_MINUS, W_MINUS, 1, 1, 1, F7, sharp_sign=-1)
    assert signs.sharp == 1
    # -r' <= r'' < 0 uses the supplied group-form sign
    signs = chain_sign_constants(3, -2, W_MINUS, W_MINUS, 1, 1, 1, F7, sharp_sign=-1)
    assert signs.sharp == -1


def test_chain_reduces_to_u():
    # the worked branch: for r'' <= r' the chain telescopes to (-1)^n U
    for q in (5, 7):
        field = ResidueParam(q)
        for rp in range(4):
            for rpp in range(-3, 4):
                for d2 in (0, 1):
                    for d1 in (0, 1):
                        signs = chain_sign_constants(rp, rpp, W_MINUS, W_MINUS,
                                                     d2, 1, d1 + d2, field)
                        chain = signs.base * signs.endo * signs.reduction \
                            * (-1) ** ((d2 * rpp) % 2)
                        assert chain == -signs.u_value  # n = 1


def test_factorwise_check_degenerate():
    shape = SplitShape(1, 1)
    gamma = GammaVector((), (1,))
    pair = LPair((), ())
    e = EVector((1,))
    u = UVector((1,), ((), (1,)))
    eta = SquareClass(1, 1)
    fw, cl = factorwise_transfer_check(shape, gamma, e, u, pair, W_PLUS, W_MINUS,
                                       eta, F5)
    # only the unramified block factor survives: (-1)^(val + u_1) = +1
    assert fw == cl == 1
    u0 = UVector((0,), ((), (1,)))
    fw, cl = factorwise_transfer_check(shape, gamma, e, u0, pair, W_PLUS, W_MINUS,
                                       eta, F5)
    assert fw == cl == -1


def test_quadruple_validation():
    with pytest.raises(ValueError):
        QuadrupleGamma(1, 0, -1, 0)
