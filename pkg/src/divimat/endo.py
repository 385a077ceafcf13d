"""Families of polynomial self-maps of affine space with [m]∘[n] = [mn].

Each family represents the positive integers under multiplication as
endomorphisms of affine d-space; differentiating produces the associated
sequence of Jacobian matrices, whose right-divisibility structure is what the
rest of the package studies.  Four families are provided:

* multiplicative: x ↦ xⁿ on the line,
* borel: (X, Y, Z) ↦ (Xⁿ, Y·(Xⁿ−Zⁿ)/(X−Z), Zⁿ) with the quotient expanded to
  the homogeneous sum, so X = Z is an ordinary point,
* gl2: the four entries of the n-th power of a generic 2×2 matrix,
* elliptic: (X, Z) ↦ (Z^{n²}φ_n(X/Z), Z^{n²}ψ_n²(X/Z)) for a Weierstrass curve.

Coordinates are stored as SPoly over the family's variable tuple; for the
symbolic elliptic family the tuple carries the curve coefficients as two
extra parameter variables, which are never differentiated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .curve import Curve
from .divpoly import DivisionPolynomials
from .errors import IdentityViolationError
from .intmat import IMat
from .poly import SPoly

DEGREE_BUDGET_ENV = "DIVIMAT_MAX_DEGREE"
DEFAULT_DEGREE_BUDGET = 150


def degree_budget() -> int:
    """Max total degree for symbolic verification; DIVIMAT_MAX_DEGREE overrides."""
    raw = os.environ.get(DEGREE_BUDGET_ENV)
    if raw is None:
        return DEFAULT_DEGREE_BUDGET
    return int(raw)


@dataclass(frozen=True)
class JacobianTerm:
    """One term of a matrix divisibility sequence: the Jacobian of [n]."""

    index: int
    entries: tuple[tuple[SPoly, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.entries)

    def det(self) -> SPoly:
        return _poly_det([list(row) for row in self.entries])

    def at_point(self, point: Sequence[int], vars: tuple[str, ...]) -> IMat:
        env = dict(zip(vars, point))
        return IMat([[e.eval_int(env) for e in row] for row in self.entries])


def _poly_det(rows: list[list[SPoly]]) -> SPoly:
    d = len(rows)
    if d == 1:
        return rows[0][0]
    vars = rows[0][0].vars
    total = SPoly.zero(vars)
    for j in range(d):
        entry = rows[0][j]
        if entry.is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = entry * _poly_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


class EndoFamily:
    """A rule n ↦ [n] plus memoized coordinates and Jacobians."""

    def __init__(self, name: str, dim: int, vars: tuple[str, ...], rule: Callable[[int], tuple[SPoly, ...]]):
        self.name = name
        self.dim = dim
        self.vars = tuple(vars)
        self._rule = rule
        self._coords: dict[int, tuple[SPoly, ...]] = {}
        self._jacobians: dict[int, JacobianTerm] = {}

    def __repr__(self):
        return f"EndoFamily({self.name}, dim={self.dim})"

    def coords(self, n: int) -> tuple[SPoly, ...]:
        """The d coordinate polynomials of [n]."""
        if n < 1:
            raise ValueError("family indices are positive integers")
        if n not in self._coords:
            self._coords[n] = tuple(self._rule(n))
        return self._coords[n]

    def apply(self, n: int, point: Sequence[int]) -> tuple[int, ...]:
        """[n](point) for an integer point (parameters included, if any)."""
        env = dict(zip(self.vars, point))
        moved = tuple(c.eval_int(env) for c in self.coords(n))
        return moved + tuple(point[self.dim :])

    def apply_exact(self, n: int, point: Sequence[Fraction]) -> tuple[Fraction, ...]:
        env = dict(zip(self.vars, point))
        moved = tuple(c.eval(env) for c in self.coords(n))
        return moved + tuple(Fraction(x) for x in point[self.dim :])

    def jacobian(self, n: int) -> JacobianTerm:
        """Symbolic d×d Jacobian of [n] (entry (i,j) = ∂[n]_i/∂x_j)."""
        if n not in self._jacobians:
            cs = self.coords(n)
            coord_vars = self.vars[: self.dim]
            self._jacobians[n] = JacobianTerm(
                index=n,
                entries=tuple(tuple(c.derivative(v) for v in coord_vars) for c in cs),
            )
        return self._jacobians[n]

    def jacobian_at(self, n: int, point: Sequence[int]) -> IMat:
        """Exact integer Jacobian matrix at an integer point."""
        return self.jacobian(n).at_point(point, self.vars)

    def compose(self, m: int, n: int) -> tuple[SPoly, ...]:
        """[m]∘[n] as polynomials (parameters substituted identically)."""
        inner = self.coords(n)
        sigma = dict(zip(self.vars[: self.dim], inner))
        for par in self.vars[self.dim :]:
            sigma[par] = SPoly.var(self.vars, par)
        return tuple(c.substitute(sigma) for c in self.coords(m))


@dataclass
class ChainRuleReport:
    """Outcome of one chain-rule check J_{mn}(x) = J_m([n]x)·J_n(x)."""

    family: str
    m: int
    n: int
    point: tuple[int, ...] | None
    ok: bool
    quotient: IMat | None  # J_m([n]x) when checked at a point
    detail: str = ""


def verify_chain_rule(
    family: EndoFamily, m: int, n: int, point: Sequence[int] | None = None
) -> ChainRuleReport:
    """Check the chain-rule factorization of J_{mn}, symbolically or at a point.

    Symbolic checking is attempted when no point is given and the coordinate
    degree of [mn] fits the degree budget; it raises IdentityViolationError
    on failure, naming the offending entry.
    """
    if m < 1 or n < 1:
        raise ValueError("indices must be positive")
    if point is None:
        deg = max(c.total_degree() for c in family.coords(m * n))
        if deg > degree_budget():
            raise ValueError(
                f"symbolic check of degree {deg} exceeds budget {degree_budget()}; pass a point"
            )
        jm = family.jacobian(m)
        jn = family.jacobian(n)
        inner = family.coords(n)
        sigma = dict(zip(family.vars[: family.dim], inner))
        for par in family.vars[family.dim :]:
            sigma[par] = SPoly.var(family.vars, par)
        jm_moved = [[e.substitute(sigma) for e in row] for row in jm.entries]
        jmn = family.jacobian(m * n)
        d = family.dim
        for i in range(d):
            for j in range(d):
                got = SPoly.zero(family.vars)
                for k in range(d):
                    got = got + jm_moved[i][k] * jn.entries[k][j]
                if got != jmn.entries[i][j]:
                    raise IdentityViolationError(
                        f"{family.name}: chain rule fails symbolically at entry ({i},{j}), m={m}, n={n}"
                    )
        return ChainRuleReport(family.name, m, n, None, True, None, "symbolic")
    pt = tuple(int(x) for x in point)
    jn_at = family.jacobian_at(n, pt)
    jmn_at = family.jacobian_at(m * n, pt)
    moved = family.apply(n, pt)
    q = family.jacobian_at(m, moved)
    if q * jn_at != jmn_at:
        raise IdentityViolationError(
            f"{family.name}: chain rule fails at point {pt}, m={m}, n={n}"
        )
    return ChainRuleReport(family.name, m, n, pt, True, q, "evaluated")


# -- the four families ---------------------------------------------------


def family_multiplicative() -> EndoFamily:
    """x ↦ xⁿ on the affine line; Jacobian n·x^{n−1}."""
    vars = ("x",)
    x = SPoly.var(vars, "x")

    def rule(n: int):
        return (x**n,)

    return EndoFamily("gm", 1, vars, rule)


def borel_power_sum(n: int, vars=("X", "Y", "Z")) -> SPoly:
    """(Xⁿ − Zⁿ)/(X − Z) expanded: Σ_{i<n} X^i Z^{n−1−i}."""
    return SPoly(vars, {(i, 0, n - 1 - i): 1 for i in range(n)})


def family_borel() -> EndoFamily:
    """Powers in the group of upper-triangular 2×2 matrices (X, Y; 0, Z)."""
    vars = ("X", "Y", "Z")
    X = SPoly.var(vars, "X")
    Y = SPoly.var(vars, "Y")
    Z = SPoly.var(vars, "Z")

    def rule(n: int):
        return (X**n, Y * borel_power_sum(n, vars), Z**n)

    return EndoFamily("borel", 3, vars, rule)


def family_gl2() -> EndoFamily:
    """Entries of the n-th power of a generic 2×2 matrix, as a 4-dim family."""
    vars = ("a", "b", "c", "d")
    gens = [SPoly.var(vars, v) for v in vars]
    powers: dict[int, list[SPoly]] = {1: gens}

    def matpow(n: int) -> list[SPoly]:
        if n not in powers:
            p = matpow(n - 1)
            a, b, c, d = powers[1]
            pa, pb, pc, pd = p
            powers[n] = [pa * a + pb * c, pa * b + pb * d, pc * a + pd * c, pc * b + pd * d]
        return powers[n]

    def rule(n: int):
        return tuple(matpow(n))

    return EndoFamily("gl2", 4, vars, rule)


def homogenize_x(p: SPoly, degree: int, vars: tuple[str, ...]) -> SPoly:
    """Map a polynomial in x (plus parameters) to X, Z-homogeneous form.

    x^i becomes X^i Z^{degree−i}; parameter exponents (positions 2+ of the
    source, which must be y-free with y at index 1) carry over.
    """
    terms = {}
    for exps, coeff in p.terms.items():
        if exps[1] != 0:
            raise ValueError("cannot homogenize a polynomial containing y")
        i = exps[0]
        if i > degree:
            raise ValueError("degree bound smaller than actual degree")
        terms[(i, degree - i) + tuple(exps[2:])] = coeff
    return SPoly(vars, terms)


def family_elliptic(curve: Curve) -> EndoFamily:
    """(X, Z) ↦ (Z^{n²}φ_n(X/Z), Z^{n²}ψ̃_n(X/Z)) for a Weierstrass curve.

    For a symbolic curve the variables are (X, Z, A, B) with A, B inert
    parameters; for a numeric curve just (X, Z).
    """
    dp = DivisionPolynomials(curve)
    if curve.is_numeric():
        vars: tuple[str, ...] = ("X", "Z")
    else:
        vars = ("X", "Z", str(curve.a), str(curve.b))

    def rule(n: int):
        d = n * n
        return (
            homogenize_x(dp.phi(n), d, vars),
            homogenize_x(dp.psi_tilde(n), d, vars),
        )

    fam = EndoFamily("elliptic", 2, vars, rule)
    fam.curve = curve
    fam.divpolys = dp
    return fam


def standard_families(curve: Curve | None = None) -> dict[str, EndoFamily]:
    fams = {
        "gm": family_multiplicative(),
        "borel": family_borel(),
        "gl2": family_gl2(),
    }
    if curve is not None:
        fams["elliptic"] = family_elliptic(curve)
    return fams
