"""Division polynomials ψ_n, φ_n, ω_n, ψ̃_n = ψ_n² over a Weierstrass curve.

Built with the classical recurrences

    ψ_1 = 1,  ψ_2 = 2y,
    ψ_3 = 3x⁴ + 6ax² + 12bx − a²,
    ψ_4 = 4y(x⁶ + 5ax⁴ + 20bx³ − 5a²x² − 4abx − 8b² − a³),
    ψ_{2m+1} = ψ_{m+2}ψ_m³ − ψ_{m−1}ψ_{m+1}³,
    ψ_{2m}   = ψ_m(ψ_{m+2}ψ_{m−1}² − ψ_{m−2}ψ_{m+1}²)/ψ_2,

plus φ_n = x·ψ_n² − ψ_{n+1}ψ_{n−1} and ω_n = (ψ_{n+2}ψ_{n−1}² − ψ_{n−2}ψ_{n+1}²)/(2ψ_2),
normalized so that n·(x, y) = (φ_n/ψ_n², ω_n/ψ_n³).  ψ_0 = 0 and ψ_{−1} = −1
feed the recurrences but are not exposed.

Every ring operation is followed by reduction modulo y² = x³ + a·x + b, so
cached polynomials are canonical representatives with y-degree at most 1.
The divisions by ψ_2 land in the reduced ring: a canonical polynomial of the
form y·f is divided by c·y directly, while a y-free one picks up its y by
exact division against c·(x³ + a·x + b) — both divisions must be exact, and a
failed division means a recurrence identity broke.

Everything exists in two parallel forms: polynomials (symbolic or numeric
curve) and plain Fraction values at a fixed point, which is what the large-
index numeric scans use.
"""

from __future__ import annotations

from fractions import Fraction

from .curve import Curve
from .errors import IdentityViolationError
from .poly import SPoly, reduce_mod_curve


class DivisionPolynomials:
    """Memoized ψ/φ/ω/ψ̃/η polynomials for one curve.

    The caches behave as pure functions of the index, so concurrent reads and
    idempotent re-fills are safe.
    """

    def __init__(self, curve: Curve):
        self.curve = curve
        if curve.is_numeric():
            self.vars: tuple[str, ...] = ("x", "y")
        else:
            self.vars = ("x", "y", str(curve.a), str(curve.b))
        self.x = SPoly.var(self.vars, "x")
        self.y = SPoly.var(self.vars, "y")
        a = self._coeff(curve.a)
        b = self._coeff(curve.b)
        self.curve_poly = self.x**3 + a * self.x + b  # x³ + a·x + b
        one = SPoly.const(self.vars, 1)
        x = self.x
        self._psi: dict[int, SPoly] = {
            -1: -one,
            0: SPoly.zero(self.vars),
            1: one,
            2: 2 * self.y,
            3: 3 * x**4 + 6 * a * x**2 + 12 * b * x - a * a,
            4: 4
            * self.y
            * (
                x**6
                + 5 * a * x**4
                + 20 * b * x**3
                - 5 * a * a * x**2
                - 4 * a * b * x
                - 8 * b * b
                - a * a * a
            ),
        }
        self._phi: dict[int, SPoly] = {}
        self._omega: dict[int, SPoly] = {}
        self._psi_tilde: dict[int, SPoly] = {}
        self._eta: dict[int, SPoly] = {}

    def _coeff(self, c: int | str) -> SPoly:
        if isinstance(c, str):
            return SPoly.var(self.vars, c)
        return SPoly.const(self.vars, c)

    def _reduce(self, p: SPoly) -> SPoly:
        return reduce_mod_curve(p, self.curve.a, self.curve.b)

    def _div_by_cy(self, p: SPoly, c: int) -> SPoly:
        """Exact p/(c·y) in the reduced ring.

        p = y·f divides to f/c; a y-free p equals c·y·(y·g) with
        g = p/(c·(x³+ax+b)), so the quotient is y·g.
        """
        if p.is_zero():
            return p
        if p.degree_in("y") == 0:
            return self.y * p.exact_div(c * self.curve_poly)
        return p.exact_div(c * self.y)

    # -- ψ and friends --------------------------------------------------

    def psi(self, n: int) -> SPoly:
        """ψ_n, curve-reduced canonical form; n ≥ 1."""
        if n < 1:
            raise ValueError("psi is defined for positive indices only")
        return self._psi_internal(n)

    def _psi_internal(self, n: int) -> SPoly:
        cached = self._psi.get(n)
        if cached is not None:
            return cached
        m = n // 2
        if n % 2 == 1:
            p = self._reduce(
                self._psi_internal(m + 2) * self._psi_internal(m) ** 3
                - self._psi_internal(m - 1) * self._psi_internal(m + 1) ** 3
            )
        else:
            bracket = self._reduce(
                self._psi_internal(m + 2) * self._psi_internal(m - 1) ** 2
                - self._psi_internal(m - 2) * self._psi_internal(m + 1) ** 2
            )
            p = self._div_by_cy(self._reduce(self._psi_internal(m) * bracket), 2)
        self._psi[n] = p
        return p

    def psi_tilde(self, n: int) -> SPoly:
        """ψ̃_n = ψ_n², y-free after reduction."""
        if n not in self._psi_tilde:
            self._psi_tilde[n] = self._reduce(self.psi(n) ** 2)
        return self._psi_tilde[n]

    def phi(self, n: int) -> SPoly:
        """φ_n = x·ψ_n² − ψ_{n+1}ψ_{n−1}, y-free, monic of degree n²."""
        if n < 1:
            raise ValueError("phi is defined for positive indices only")
        if n not in self._phi:
            self._phi[n] = self._reduce(
                self.x * self.psi_tilde(n) - self._psi_internal(n + 1) * self._psi_internal(n - 1)
            )
        return self._phi[n]

    def omega(self, n: int) -> SPoly:
        """ω_n with the sign convention y(nP) = ω_n/ψ_n³."""
        if n < 1:
            raise ValueError("omega is defined for positive indices only")
        if n not in self._omega:
            bracket = self._reduce(
                self._psi_internal(n + 2) * self._psi_internal(n - 1) ** 2
                - self._psi_internal(n - 2) * self._psi_internal(n + 1) ** 2
            )
            self._omega[n] = self._div_by_cy(bracket, 4)
        return self._omega[n]

    def eta(self, n: int) -> SPoly:
        """η_n = ψ_{2n}/ψ_2, y-free of degree 2n² − 2.

        Computed as an exact quotient and cross-checked against the
        equivalent route 2ψ_nω_n/ψ_2; a mismatch raises.
        """
        if n < 1:
            raise ValueError("eta is defined for positive indices only")
        if n not in self._eta:
            quotient = self._psi_internal(2 * n).exact_div(self._psi[2])
            other = self._div_by_cy(self._reduce(self.psi(n) * self.omega(n)), 1)
            if quotient != other:
                raise IdentityViolationError(
                    f"psi_(2n)/psi_2 disagrees with 2·psi_n·omega_n/psi_2 at n={n}"
                )
            self._eta[n] = quotient
        return self._eta[n]


class DivisionPolyValues:
    """ψ/φ/ω/ψ̃ values at one rational point, by the same recurrences.

    An independent numeric route: no polynomial is ever constructed.
    Requires y ≠ 0 (the even-index recurrence divides by ψ_2 = 2y).
    """

    def __init__(self, curve: Curve, x: Fraction, y: Fraction):
        if not curve.is_numeric():
            raise ValueError("value recurrences need a numeric curve")
        if y == 0:
            raise ValueError("value recurrences need y != 0 (point is 2-torsion)")
        self.curve = curve
        self.x = Fraction(x)
        self.y = Fraction(y)
        a, b = curve.a, curve.b
        x0 = self.x
        self._psi: dict[int, Fraction] = {
            -1: Fraction(-1),
            0: Fraction(0),
            1: Fraction(1),
            2: 2 * self.y,
            3: 3 * x0**4 + 6 * a * x0**2 + 12 * b * x0 - a * a,
            4: 4
            * self.y
            * (x0**6 + 5 * a * x0**4 + 20 * b * x0**3 - 5 * a * a * x0**2 - 4 * a * b * x0 - 8 * b * b - a**3),
        }

    def psi(self, n: int) -> Fraction:
        cached = self._psi.get(n)
        if cached is not None:
            return cached
        m = n // 2
        if n % 2 == 1:
            v = self.psi(m + 2) * self.psi(m) ** 3 - self.psi(m - 1) * self.psi(m + 1) ** 3
        else:
            v = (
                self.psi(m)
                * (self.psi(m + 2) * self.psi(m - 1) ** 2 - self.psi(m - 2) * self.psi(m + 1) ** 2)
                / self._psi[2]
            )
        self._psi[n] = v
        return v

    def psi_tilde(self, n: int) -> Fraction:
        return self.psi(n) ** 2

    def phi(self, n: int) -> Fraction:
        return self.x * self.psi(n) ** 2 - self.psi(n + 1) * self.psi(n - 1)

    def omega(self, n: int) -> Fraction:
        return (self.psi(n + 2) * self.psi(n - 1) ** 2 - self.psi(n - 2) * self.psi(n + 1) ** 2) / (
            4 * self.y
        )

    def eta(self, n: int) -> Fraction:
        """η_n(x) = ψ_{2n}/ψ_2 evaluated at the point (y cancels)."""
        return self.psi(2 * n) / self._psi[2]
