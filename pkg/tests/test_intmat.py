"""Tests for exact integer matrix algebra: HNF, SNF, division, divisor classes."""

import random

import pytest
from helpers import hnf_divisor_enumeration, random_unimodular, subgroup_count_formula

from divimat.intmat import (
    EnumerationBoundError,
    IMat,
    cokernel,
    count_subgroups_bruteforce,
    divisor_classes,
    hnf,
    hnf_with_transform,
    right_divides,
    snf,
)


# -- HNF ---------------------------------------------------------------------

def test_hnf_of_identity():
    i3 = IMat.identity(3)
    assert hnf(i3) == i3


def test_hnf_of_unimodular_is_identity():
    assert hnf(IMat([[0, 1], [1, 0]])) == IMat.identity(2)


def test_hnf_left_invariance_and_idempotence():
    rng = random.Random(20240811)
    for d in (2, 3, 4):
        for _ in range(25):
            m = IMat([[rng.randint(-9, 9) for _ in range(d)] for _ in range(d)])
            h, u = hnf_with_transform(m)
            assert u.is_unimodular()
            assert u * m == h
            assert hnf(random_unimodular(d, rng) * m) == h
            assert hnf(h) == h


def test_hnf_shape_convention():
    rng = random.Random(7)
    for _ in range(40):
        m = IMat([[rng.randint(-9, 9) for _ in range(3)] for _ in range(3)])
        if m.det() == 0:
            continue
        h = hnf(m)
        for i in range(3):
            assert h.entries[i][i] > 0
            for j in range(i):
                assert h.entries[j][i] >= 0 # reduced above the pivot
                assert h.entries[j][i] < h.entries[i][i]
            for j in range(i):
                assert h.entries[i][j] == 0 # upper triangular


# -- SNF ---------------------------------------------------------------------

def test_snf_diag_4_6():
    # gcd of entries is 2 and the product of divisors is |det| = 24
    d, u, v = snf(IMat.diagonal([4, 6]))
    assert d == IMat.diagonal([2, 12])


def test_snf_identity():
    d, u, v = snf(IMat.identity(3))
    assert d == IMat.identity(3)
    assert u == IMat.identity(3)
    assert v == IMat.identity(3)


def test_snf_zero_matrix():
    d, u, v = snf(IMat.zero(2))
    assert d == IMat.zero(2)
    assert u.is_unimodular() and v.is_unimodular()


def test_snf_transformation_identity_random():
    rng = random.Random(99)
    for d in (2, 3, 4):
        for _ in range(25):
            m = IMat([[rng.randint(-9, 9) for _ in range(d)] for _ in range(d)])
            dd, u, v = snf(m)
            assert u * m * v == dd
            assert u.is_unimodular() and v.is_unimodular()
            diag = [dd.entries[i][i] for i in range(d)]
            assert all(x >= 0 for x in diag)
            for a, b in zip(diag, diag[1:]):
                if a != 0:
                    assert b % a == 0
                else:
                    assert b == 0


# -- right division ------------------------------------------------------------

def test_diag12_diag21_do_not_divide_each_other():
    m = IMat.diagonal([1, 2])
    n = IMat.diagonal([2, 1])
    assert right_divides(m, n) is None
    assert right_divides(n, m) is None


def test_identity_divides_everything():
    n = IMat([[3, 1], [4, 1]])
    assert right_divides(IMat.identity(2), n) == n


def test_quotient_reproduces_dividend():
    rng = random.Random(5)
    hits = 0
    for _ in range(200):
        m = IMat([[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)])
        q0 = IMat([[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)])
        n = q0 * m
        q = right_divides(m, n)
        assert q is not None
        assert q * m == n
        if m.det() != 0:
            assert q == q0
            hits += 1
        assert n.det() % (m.det() or 1) == 0 or m.det() == 0
    assert hits > 50


def test_singular_divisor_cases():
    z = IMat.zero(2)
    assert right_divides(z, z) is not None
    assert right_divides(z, IMat.identity(2)) is None
    m = IMat([[1, 2], [2, 4]])  # rank 1
    assert right_divides(m, m.scale(3)) is not None
    assert right_divides(m, IMat.identity(2)) is None


# -- cokernel --------------------------------------------------------------------

def test_cokernel_examples():
    assert cokernel(IMat.diagonal([2, 3])).elementary_divisors == (6,)
    assert cokernel(IMat([[0, 1], [1, 0]])).elementary_divisors == ()
    assert cokernel(IMat.diagonal([2, 2])).elementary_divisors == (2, 2)
    assert cokernel(IMat.diagonal([4, 6])).elementary_divisors == (2, 12)


def test_cokernel_free_rank():
    c = cokernel(IMat([[1, 2], [2, 4]]))
    assert c.free_rank == 1
    assert c.order() is None


def test_cokernel_order_is_abs_det():
    rng = random.Random(11)
    for _ in range(30):
        m = IMat([[rng.randint(-6, 6) for _ in range(3)] for _ in range(3)])
        if m.det() == 0:
            continue
        assert cokernel(m).order() == abs(m.det())


# -- divisor classes ----------------------------------------------------------------

def test_identity_has_one_class():
    assert divisor_classes(IMat.identity(3)) == [IMat.identity(3)]


def test_prime_cyclic_cokernel_has_two_classes():
    m = IMat([[1, 0], [0, 5]])
    classes = divisor_classes(m)
    assert len(classes) == 2


def test_diag22_has_five_classes():
    classes = divisor_classes(IMat.diagonal([2, 2]))
    assert len(classes) == 5
    assert classes == hnf_divisor_enumeration(IMat.diagonal([2, 2]))


def test_classes_match_hnf_enumeration_oracle():
    rng = random.Random(20250809)
    checked = 0
    while checked < 12:
        m = IMat([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)])
        if not (0 < abs(m.det()) <= 12):
            continue
        assert divisor_classes(m) == hnf_divisor_enumeration(m)
        checked += 1


def test_every_class_divides_m():
    rng = random.Random(13)
    for _ in range(10):
        m = IMat([[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)])
        if not (0 < abs(m.det()) <= 16):
            continue
        for rep in divisor_classes(m):
            assert right_divides(rep, m) is not None
            assert abs(m.det()) % abs(rep.det()) == 0


def test_class_count_equals_subgroup_count_formula():
    rng = random.Random(20250810)
    checked = 0
    while checked < 20:
        d = rng.choice([2, 3])
        m = IMat([[rng.randint(-5, 5) for _ in range(d)] for _ in range(d)])
        if not (0 < abs(m.det()) <= 24):
            continue
        eldiv = cokernel(m.transpose()).elementary_divisors
        assert len(divisor_classes(m)) == subgroup_count_formula(eldiv)
        checked += 1


def test_bruteforce_subgroup_count_agrees_with_formula():
    for orders in [(2, 2), (2, 4), (6,), (2, 2, 2), (2, 6), (12,), (2, 2, 4), (3, 3)]:
        assert count_subgroups_bruteforce(orders) == subgroup_count_formula(list(orders))


def test_divisor_classes_rejections():
    with pytest.raises(ValueError):
        divisor_classes(IMat([[1, 2], [2, 4]]))
    with pytest.raises(EnumerationBoundError):
        divisor_classes(IMat.diagonal([101, 101]), bound=100)


# -- JSON --------------------------------------------------------------------------

def test_matrix_json_roundtrip():
    m = IMat([[10**30, -1], [0, 2]])
    j = m.to_json()
    assert j["entries"][0][0] == str(10**30)
    assert IMat.from_json(j) == m
