"""Endomorphism families, their Jacobians, and the chain-rule factorization."""

import random

import pytest
from helpers import displayed_borel_jacobian

from divimat.curve import Curve
from divimat.endo import (
    borel_power_sum,
    family_borel,
    family_elliptic,
    family_gl2,
    family_multiplicative,
    verify_chain_rule,
)
from divimat.errors import IdentityViolationError
from divimat.intmat import IMat, right_divides
from divimat.poly import SPoly, ring


RUN_CURVE = Curve(-1, 1)


def all_families():
    return [
        family_multiplicative(),
        family_borel(),
        family_gl2(),
        family_elliptic(RUN_CURVE),
    ]


def seed_point(fam, rng):
    if fam.name == "gm":
        return (rng.choice([2, 3, -2, 5]),)
    return tuple(rng.choice([-3, -2, -1, 1, 2, 3, 4]) for _ in fam.vars)


# -- identity map -----------------------------------------------------------

def test_index_one_is_identity_map():
    for fam in all_families():
        cs = fam.coords(1)
        for i, c in enumerate(cs):
            assert c == SPoly.var(fam.vars, fam.vars[i])
        d = fam.dim
        jac = fam.jacobian(1)
        for i in range(d):
            for j in range(d):
                expected = 1 if i == j else 0
                assert jac.entries[i][j] == SPoly.const(fam.vars, expected)


# -- multiplicative family ----------------------------------------------------

def test_gm_jacobian_is_n_x_to_n_minus_1():
    fam = family_multiplicative()
    (x,) = ring("x")
    for n in range(1, 8):
        assert fam.jacobian(n).entries[0][0] == n * x ** (n - 1)


def test_gm_at_one_gives_the_integers():
    fam = family_multiplicative()
    assert [fam.jacobian_at(n, (1,)).entries[0][0] for n in range(1, 9)] == list(range(1, 9))


def test_gm_composition():
    fam = family_multiplicative()
    (x,) = ring("x")
    assert fam.compose(2, 3) == (x**6,)
    assert fam.compose(2, 3)[0] == fam.coords(6)[0]


# -- Borel family ---------------------------------------------------------------

def test_borel_square():
    fam = family_borel()
    X, Y, Z = ring("X", "Y", "Z")
    assert fam.coords(2) == (X**2, Y * (X + Z), Z**2)


def test_borel_jacobian_at_2_1_1():
    fam = family_borel()
    assert fam.jacobian_at(2, (2, 1, 1)) == IMat([[4, 0, 0], [1, 3, 1], [0, 0, 2]])


def test_borel_jacobian_matches_displayed_matrix():
    # includes the (2,3) entry Y·P(Z,X): direct differentiation is the authority
    fam = family_borel()
    for n in range(1, 11):
        assert fam.jacobian(n).entries == displayed_borel_jacobian(n)


def test_displayed_p_equals_quotient_definition():
    # P(X,Z)·(X−Z)² must reproduce nX^{n−1}(X−Z) − (Xⁿ−Zⁿ)
    vars = ("X", "Y", "Z")
    X, Y, Z = (SPoly.var(vars, v) for v in vars)
    for n in range(2, 9):
        p_xz = SPoly(vars, {(i - 1, 0, n - 1 - i): i for i in range(1, n)})
        lhs = n * X ** (n - 1) * (X - Z) - (X**n - Z**n)
        assert p_xz * (X - Z) ** 2 == lhs


# -- GL(2) family ------------------------------------------------------------------

def test_gl2_square_coordinates():
    fam = family_gl2()
    a, b, c, d = ring("a", "b", "c", "d")
    assert fam.coords(2) == (a * a + b * c, a * b + b * d, c * a + d * c, c * b + d * d)


def test_gl2_power_matches_integer_matrix_power():
    fam = family_gl2()
    rng = random.Random(8)
    for _ in range(5):
        m = IMat([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        p = IMat.identity(2)
        for n in range(1, 7):
            p = p * m
            flat = fam.apply(n, (m[0, 0], m[0, 1], m[1, 0], m[1, 1]))
            assert flat == (p[0, 0], p[0, 1], p[1, 0], p[1, 1])


# -- elliptic family ------------------------------------------------------------------

def test_elliptic_index_one_and_two():
    fam = family_elliptic(RUN_CURVE)
    X, Z = ring("X", "Z")
    assert fam.coords(1) == (X, Z)
    # [2](1,1) = (phi_2(1), psi_tilde_2(1)) = (-4, 4): x(2P) = -1
    moved = fam.apply(2, (1, 1))
    assert moved == (-4, 4)
    assert moved[0] / moved[1] == -1


def test_elliptic_symbolic_composition_small():
    fam = family_elliptic(Curve.symbolic())
    for m, n in [(2, 2), (2, 3), (3, 2)]:
        assert fam.compose(m, n) == fam.coords(m * n)


def test_composition_law_all_families():
    rng = random.Random(17)
    for fam in all_families():
        pairs = [(m, n) for m in range(1, 13) for n in range(1, 13) if m * n <= 12]
        for m, n in pairs:
            assert fam.compose(m, n) == fam.coords(m * n), (fam.name, m, n)


# -- chain rule -------------------------------------------------------------------------

def test_chain_rule_symbolic_small():
    for fam in all_families():
        rep = verify_chain_rule(fam, 2, 3)
        assert rep.ok and rep.detail == "symbolic"


def test_chain_rule_at_points_with_divisibility():
    rng = random.Random(20250806)
    for fam in all_families():
        for m, n in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 4), (4, 3), (2, 6)]:
            pt = seed_point(fam, rng)
            rep = verify_chain_rule(fam, m, n, pt)
            assert rep.ok
            jm = fam.jacobian_at(m * n, pt)
            jn = fam.jacobian_at(n, pt)
            q = right_divides(jn, jm)
            assert q is not None and q * jn == jm
            if jn.det() != 0:
                assert q == rep.quotient or rep.quotient * jn == jm
            # determinant divisibility
            if jn.det() != 0:
                assert jm.det() % jn.det() == 0


def test_chain_rule_budget_guard():
    fam = family_elliptic(RUN_CURVE)
    with pytest.raises(ValueError):
        verify_chain_rule(fam, 5, 5)  # degree 625 > default budget, no point given


def test_cassels_entrywise_divisibility_at_points():
    fam = family_elliptic(RUN_CURVE)
    for n in range(2, 13):
        j = fam.jacobian_at(n, (1, 1))
        assert all(x % n == 0 for row in j.entries for x in row)
        q = right_divides(IMat.diagonal([n, n]), j)
        assert q is not None
