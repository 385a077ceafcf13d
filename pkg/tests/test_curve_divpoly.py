"""Group-law arithmetic and division polynomials, cross-checked both ways."""

from fractions import Fraction

import pytest

from divimat.curve import Curve, RatPoint, multiples, point_mul
from divimat.divpoly import DivisionPolynomials, DivisionPolyValues
from divimat.errors import PointAtInfinityError, SingularCurveError
from divimat.poly import ring


RUN_CURVE = Curve(-1, 1)
RUN_POINT = RatPoint(RUN_CURVE, Fraction(1), Fraction(1))


# -- curve and point basics -------------------------------------------------

def test_singular_curve_rejected():
    with pytest.raises(SingularCurveError):
        Curve(0, 0)
    with pytest.raises(SingularCurveError):
        Curve(-3, 2)  # 4*(-27) + 27*4 = 0


def test_discriminant_of_running_curve():
    assert RUN_CURVE.discriminant() == -16 * (4 * (-1) ** 3 + 27) == -368


def test_point_must_lie_on_curve():
    with pytest.raises(ValueError):
        RatPoint(RUN_CURVE, Fraction(2), Fraction(2))


def test_hand_computed_multiples():
    # chord-tangent arithmetic done by hand for y² = x³ - x + 1, P = (1, 1)
    expected = {
        2: (Fraction(-1), Fraction(1)),
        3: (Fraction(0), Fraction(-1)),
        4: (Fraction(3), Fraction(-5)),
        5: (Fraction(5), Fraction(11)),
        6: (Fraction(1, 4), Fraction(7, 8)),
    }
    recs = multiples(RUN_POINT, 6)
    for n, (x, y) in expected.items():
        assert (recs[n].x, recs[n].y) == (x, y)
    assert recs[1].b == 1
    assert recs[6].a == 1 and recs[6].b == 2


def test_point_mul_matches_multiples():
    recs = multiples(RUN_POINT, 9)
    for n in (1, 4, 7, 9):
        one = point_mul(n, RUN_POINT)
        assert (one.x, one.y, one.a, one.b) == (recs[n].x, recs[n].y, recs[n].a, recs[n].b)


def test_torsion_point_detected():
    # (2, 3) on y² = x³ + 1 has order 6
    c = Curve(0, 1)
    p = RatPoint(c, Fraction(2), Fraction(3))
    with pytest.raises(PointAtInfinityError):
        multiples(p, 12)


def test_multiple_denominators_are_squares_with_coprime_split():
    from math import gcd

    for rec in multiples(RUN_POINT, 15).values():
        assert rec.x == Fraction(rec.a, rec.b**2)
        assert gcd(rec.a, rec.b) == 1 and rec.b >= 1


# -- division polynomial base cases ------------------------------------------

def test_symbolic_base_polynomials():
    dp = DivisionPolynomials(Curve.symbolic())
    x, y, A, B = ring("x", "y", "A", "B")
    assert dp.psi(1) == 1
    assert dp.psi(2) == 2 * y
    assert dp.psi(3) == 3 * x**4 + 6 * A * x**2 + 12 * B * x - A**2
    assert dp.phi(1) == x
    assert dp.psi_tilde(1) == 1
    assert dp.phi(2) == x**4 - 2 * A * x**2 - 8 * B * x + A**2
    assert dp.psi_tilde(2) == 4 * x**3 + 4 * A * x + 4 * B
    assert dp.omega(1) == y
    assert dp.eta(1) == 1


def test_psi_zero_index_rejected():
    dp = DivisionPolynomials(RUN_CURVE)
    with pytest.raises(ValueError):
        dp.psi(0)


def test_psi_parity_structure():
    dp = DivisionPolynomials(Curve.symbolic())
    for n in range(1, 13):
        p = dp.psi(n)
        ydegs = {e[1] for e in p.terms}
        assert ydegs == ({0} if n % 2 else {1})
        assert dp.phi(n).degree_in("y") == 0
        assert dp.psi_tilde(n).degree_in("y") == 0


def test_degrees_and_leading_coefficients():
    dp = DivisionPolynomials(Curve.symbolic())
    for n in range(1, 13):
        phi = dp.phi(n)
        pt = dp.psi_tilde(n)
        assert phi.degree_in("x") == n * n
        assert phi.coefficient((n * n, 0, 0, 0)) == 1
        assert pt.degree_in("x") == n * n - 1
        assert pt.coefficient((n * n - 1, 0, 0, 0)) == n * n


def test_eta_properties():
    dp = DivisionPolynomials(Curve.symbolic())
    for n in range(1, 9):
        eta = dp.eta(n)
        assert eta.degree_in("y") == 0
        assert dp._reduce(eta * dp.psi(2)) == dp.psi(2 * n)
    assert dp.eta(2).degree_in("x") == 6


def test_eta_numeric_values_are_integral_at_running_point():
    dp = DivisionPolynomials(RUN_CURVE)
    for n in range(1, 11):
        v = dp.eta(n).eval({"x": 1, "y": 1})
        assert v.denominator == 1


# -- group-law oracle ----------------------------------------------------------

def test_x_of_np_matches_phi_over_psi_tilde():
    dp = DivisionPolynomials(RUN_CURVE)
    recs = multiples(RUN_POINT, 12)
    pt = {"x": Fraction(1), "y": Fraction(1)}
    for n in range(2, 13):
        x_poly = dp.phi(n).eval(pt) / dp.psi_tilde(n).eval(pt)
        assert x_poly == recs[n].x


def test_y_of_np_matches_omega_over_psi_cubed():
    # pins the sign convention of omega
    dp = DivisionPolynomials(RUN_CURVE)
    recs = multiples(RUN_POINT, 10)
    pt = {"x": Fraction(1), "y": Fraction(1)}
    for n in range(2, 11):
        y_poly = dp.omega(n).eval(pt) / dp.psi(n).eval(pt) ** 3
        assert y_poly == recs[n].y


def test_group_law_oracle_on_second_curve():
    c = Curve(0, -2)
    p = RatPoint(c, Fraction(3), Fraction(5))
    dp = DivisionPolynomials(c)
    recs = multiples(p, 8)
    pt = {"x": Fraction(3), "y": Fraction(5)}
    for n in range(2, 9):
        assert dp.phi(n).eval(pt) / dp.psi_tilde(n).eval(pt) == recs[n].x
        assert dp.omega(n).eval(pt) / dp.psi(n).eval(pt) ** 3 == recs[n].y


def test_psi5_value_consistent_with_5p():
    # 5P = (5, 11) on the running curve, so phi_5/psi_5² must evaluate to 5
    dp = DivisionPolynomials(RUN_CURVE)
    pt = {"x": Fraction(1), "y": Fraction(1)}
    assert dp.phi(5).eval(pt) / dp.psi(5).eval(pt) ** 2 == 5


# -- value recurrences vs polynomial route ---------------------------------------

def test_value_recurrence_matches_polynomials():
    # Polynomial caches are curve-reduced, so the two routes agree exactly at
    # on-curve points (and only there); check two curves.
    cases = [
        (RUN_CURVE, RUN_POINT),
        (Curve(0, -2), RatPoint(Curve(0, -2), Fraction(3), Fraction(5))),
    ]
    for curve, p in cases:
        dp = DivisionPolynomials(curve)
        vals = DivisionPolyValues(curve, p.x, p.y)
        pt = {"x": p.x, "y": p.y}
        for n in range(1, 16):
            assert vals.psi(n) == dp.psi(n).eval(pt)
            assert vals.phi(n) == dp.phi(n).eval(pt)
            assert vals.psi_tilde(n) == dp.psi_tilde(n).eval(pt)
            assert vals.omega(n) == dp.omega(n).eval(pt)
            assert vals.eta(n) == dp.eta(n).eval(pt)


def test_cassels_coefficient_divisibility():
    # all coefficients of phi_n' and (psi_n²)' are divisible by n
    dp = DivisionPolynomials(Curve.symbolic())
    for n in range(2, 13):
        for p in (dp.phi(n), dp.psi_tilde(n)):
            dpdx = p.derivative("x")
            assert all(c % n == 0 for c in dpdx.terms.values())
