from fractions import Fraction

import pytest

from instanton_zeta.errors import InstantonZetaError
from instanton_zeta.forms import (FormProvider, gen_form, p_weight,
                                  verify_section1)
from instanton_zeta.lattice import zn_shell_counts_dp


def test_e2_expansion():
    e2 = gen_form("E2", 3)
    assert [(e, c) for e, c in e2.pairs()] == [
        (0, 1), (1, -24), (2, -72), (3, -96)]


def test_theta2_expansion():
    th2 = gen_form("theta2", 2)
    assert th2.pairs() == [(Fraction(1, 8), 2), (Fraction(9, 8), 2)]


def test_f_form_odd_divisor_sums():
    f = gen_form("F", 5)
    assert f.pairs() == [(1, 1), (3, 4), (5, 6)]


def test_eta_coefficients():
    eta24 = gen_form("eta", 6) ** 24
    assert eta24.coeff(1) == 1
    assert eta24.coeff(2) == -24
    assert eta24.coeff(3) == 252
    assert eta24.coeff(4) == -1472


def test_bigtheta_is_dilated_theta3():
    big = gen_form("BigTheta", 9)
    th3 = gen_form("theta3", 9)
    assert big.first_difference(th3.dilate(2)) is None


def test_p0_expansion():
    p0 = p_weight("P0", 2)
    assert p0.pairs() == [(0, 1), (2, 240)]


def test_podd_leading():
    podd = p_weight("Podd", Fraction(1, 2))
    assert podd.pairs() == [(Fraction(1, 2), 240)]


def test_peven_constant_vanishes_and_q1():
    pev = p_weight("Peven", 2)
    assert pev.coeff(0) == 0
    assert pev.coeff(1) == 240 * 9  # 240 * sigma3(2)


def test_peven_via_explicit_composition():
    e4 = gen_form("E4", 4)
    comp = ((e4 + e4.half_period_shift()).dilate(Fraction(1, 2))
            .scale(Fraction(1, 2)) - e4.dilate(2))
    assert comp.first_difference(p_weight("Peven", 2), upto=2) is None


def test_unknown_form_rejected():
    with pytest.raises(InstantonZetaError):
        gen_form("E6", 4)


def test_gen_form_deterministic():
    a = gen_form("theta3", 7, Fraction(3, 2))
    b = gen_form("theta3", 7, Fraction(3, 2))
    assert a.terms == b.terms and a.denom == b.denom and a.trunc == b.trunc


def test_theta3_eighth_power_counts_lattice_points():
    th38 = gen_form("theta3", 6) ** 8
    counts = zn_shell_counts_dp((0,) * 8, None, 4 * 12)
    for n in range(13):
        # theta3^8 coefficient at q^(n/2) counts integer 8-vectors of norm n
        got = th38.coeff(Fraction(n, 2))
        want = counts.get(4 * n, 0)
        assert got == want, n


def test_verify_section1_passes():
    report = verify_section1(12)
    assert report.ok
    names = [r.name for r in report.results]
    assert len(names) == 15
    assert all(r.max_exponent == 12 for r in report.results)


def test_verify_section1_rejects_tiny_order():
    with pytest.raises(ValueError):
        verify_section1(Fraction(1, 2))


def test_negative_control_perturbed_e1():
    provider = FormProvider().perturbed("e1", 1, Fraction(1, 7))
    report = verify_section1(8, provider=provider)
    assert not report.ok
    first = next(r for r in report.results if not r.passed)
    assert first.name.startswith("e1 =")
    assert first.first_difference == 1


def test_negative_control_perturbed_theta():
    provider = FormProvider().perturbed("theta3", Fraction(1, 2), 1)
    report = verify_section1(8, provider=provider)
    assert not report.ok
    failing = [r for r in report.results if not r.passed]
    corollary = next(r for r in failing
                     if r.name == "theta2^4 = theta3^4 - theta4^4")
    assert corollary.first_difference == Fraction(1, 2)


def test_corollary_first_coefficient():
    # both sides of the quartic theta identity carry 16 at q^(1/2):
    # (2 q^(1/8))^4 on the left, 2 * 4 * theta3-cross-terms on the right
    th2 = gen_form("theta2", 1)
    th3 = gen_form("theta3", 1)
    th4 = gen_form("theta4", 1)
    assert (th2 ** 4).coeff(Fraction(1, 2)) == 16
    assert (th3 ** 4 - th4 ** 4).coeff(Fraction(1, 2)) == 16


def test_denominator_preserved_by_ring_ops():
    a = gen_form("theta2", 3)         # D = 48
    b = gen_form("theta3", 3)
    assert (a * b).denom == 48 and (a + b).denom == 48
    assert (a * a).denom == 48
