"""Sparse multivariate polynomials with arbitrary-precision integer coefficients.

A polynomial is a fixed, ordered tuple of variable names together with a dict
mapping exponent tuples (one nonnegative int per variable) to nonzero Python
ints.  The zero polynomial is the empty dict.  Because zero coefficients are
never stored, two polynomials over the same variables are equal iff their
dicts are equal, so dict equality is the canonical-form test used throughout.

Monomials are ordered graded-lexicographically with respect to the declared
variable order: higher total degree first, ties broken by comparing exponent
tuples left to right.  Printing, leading-term extraction and the division
algorithm all use this one order, which keeps text output deterministic.

Coefficients are integers only; rational numbers appear exclusively as
evaluation results (`fractions.Fraction`).  There is no floating point here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial division leaves a remainder.

    Several identities in this package are verified by performing divisions
    that must be exact; this error is the signal that an identity broke.
    """


Exponents = tuple[int, ...]
Scalar = Union[int, "SPoly"]


def _grlex_key(exps: Exponents) -> tuple:
    return (sum(exps), exps)


class SPoly:
    """Immutable sparse polynomial over a fixed tuple of variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: Mapping[Exponents, int] | None = None):
        object.__setattr__(self, "vars", tuple(vars))
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                if coeff != 0:
                    clean[tuple(exps)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, vars: tuple[str, ...]) -> "SPoly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: tuple[str, ...], c: int) -> "SPoly":
        if c == 0:
            return cls(vars, {})
        return cls(vars, {(0,) * len(vars): int(c)})

    @classmethod
    def var(cls, vars: tuple[str, ...], name: str) -> "SPoly":
        idx = cls._var_index(vars, name)
        exps = [0] * len(vars)
        exps[idx] = 1
        return cls(vars, {tuple(exps): 1})

    @staticmethod
    def _var_index(vars: tuple[str, ...], name: str) -> int:
        try:
            return vars.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r} (variables are {vars})") from None

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        idx = self._var_index(self.vars, name)
        if not self.terms:
            return 0
        return max(e[idx] for e in self.terms)

    def coefficient(self, exps: Exponents) -> int:
        return self.terms.get(tuple(exps), 0)

    def leading_term(self) -> tuple[Exponents, int]:
        """Largest monomial under graded lex, with its coefficient."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def content(self) -> int:
        """Nonnegative gcd of all coefficients (0 for the zero polynomial)."""
        from math import gcd

        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = SPoly.const(self.vars, other)
        if not isinstance(other, SPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- ring operations ----------------------------------------------

    def _coerce(self, other: Scalar) -> "SPoly":
        if isinstance(other, int):
            return SPoly.const(self.vars, other)
        if isinstance(other, SPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        raise TypeError(f"cannot combine SPoly with {type(other).__name__}")

    def __add__(self, other: Scalar) -> "SPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            s = out.get(exps, 0) + coeff
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return SPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "SPoly":
        return SPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Scalar) -> "SPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "SPoly":
        return self._coerce(other) - self

    def __mul__(self, other: Scalar) -> "SPoly":
        if isinstance(other, int):
            if other == 0:
                return SPoly(self.vars, {})
            return SPoly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return SPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = SPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and substitution ------------------------------------

    def derivative(self, name: str) -> "SPoly":
        """Formal partial derivative with respect to one variable."""
        idx = self._var_index(self.vars, name)
        out: dict[Exponents, int] = {}
        for exps, coeff in self.terms.items():
            k = exps[idx]
            if k == 0:
                continue
            e = list(exps)
            e[idx] = k - 1
            e = tuple(e)
            s = out.get(e, 0) + coeff * k
            if s:
                out[e] = s
            else:
                del out[e]
        return SPoly(self.vars, out)

    def substitute(self, assignments: Mapping[str, "SPoly"]) -> "SPoly":
        """Replace every variable by an assigned polynomial, fully expanded.

        All variables must be assigned, and all assigned polynomials must
        share one variable tuple, which becomes the result's variable tuple.
        """
        missing = [v for v in self.vars if v not in assignments]
        if missing:
            raise ValueError(f"missing assignment for variable(s) {missing}")
        images = [assignments[v] for v in self.vars]
        target = images[0].vars
        for img in images:
            if img.vars != target:
                raise ValueError("assigned polynomials must share one variable tuple")
        # cache powers of each image up to the largest exponent that occurs
        pow_cache: list[list[SPoly]] = [[SPoly.const(target, 1)] for _ in images]
        result = SPoly.zero(target)
        for exps, coeff in self.terms.items():
            term = SPoly.const(target, coeff)
            for i, k in enumerate(exps):
                cache = pow_cache[i]
                while len(cache) <= k:
                    cache.append(cache[-1] * images[i])
                if k:
                    term = term * cache[k]
            result = result + term
        return result

    def rename(self, vars: tuple[str, ...]) -> "SPoly":
        """Same exponent data over a new variable tuple of equal length."""
        if len(vars) != len(self.vars):
            raise ValueError("variable tuple must have the same length")
        return SPoly(tuple(vars), dict(self.terms))

    def eval(self, point: Mapping[str, Fraction | int]) -> Fraction:
        """Exact value at a rational point; every variable must be assigned."""
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise ValueError(f"missing value for variable(s) {missing}")
        values = [Fraction(point[v]) for v in self.vars]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = Fraction(coeff)
            for val, k in zip(values, exps):
                if k:
                    term *= val**k
            total += term
        return total

    def eval_int(self, point: Mapping[str, int]) -> int:
        """Exact value at an integer point, as an int."""
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise ValueError(f"missing value for variable(s) {missing}")
        values = [int(point[v]) for v in self.vars]
        total = 0
        for exps, coeff in self.terms.items():
            term = coeff
            for val, k in zip(values, exps):
                if k:
                    term *= val**k
            total += term
        return total

    # -- division -----------------------------------------------------

    def exact_div(self, den: Scalar) -> "SPoly":
        """Exact quotient self/den; raises InexactDivisionError otherwise.

        Multivariate long division by a single divisor under graded lex.
        When self = q*den holds over the integers the algorithm always finds
        q; any remainder means the division was not exact.
        """
        den = self._coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lt_e, lt_c = den.leading_term()
        rem = dict(self.terms)
        quot: dict[Exponents, int] = {}
        while rem:
            e = max(rem, key=_grlex_key)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, lt_e))
            if any(x < 0 for x in qe) or c % lt_c != 0:
                raise InexactDivisionError(
                    f"inexact polynomial division: leading term {c}*{e} not divisible by {lt_c}*{lt_e}"
                )
            qc = c // lt_c
            quot[qe] = qc
            for de, dc in den.terms.items():
                se = tuple(a + b for a, b in zip(qe, de))
                s = rem.get(se, 0) - qc * dc
                if s:
                    rem[se] = s
                else:
                    rem.pop(se, None)
        return SPoly(self.vars, quot)

    # -- rendering ----------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, int]]:
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, k in zip(self.vars, exps):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            sign = "-" if coeff < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"SPoly({self.vars}, {self})"

    def to_json(self) -> dict:
        """JSON-friendly form: decimal-string coefficients, sorted terms."""
        return {
            "vars": list(self.vars),
            "terms": [{"exps": list(e), "coeff": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SPoly":
        vars = tuple(data["vars"])
        return cls(vars, {tuple(t["exps"]): int(t["coeff"]) for t in data["terms"]})


def ring(*names: str) -> tuple[SPoly, ...]:
    """Generators of ℤ[names]: ring('x', 'y') gives the polynomials x, y."""
    vars = tuple(names)
    return tuple(SPoly.var(vars, n) for n in names)


def reduce_mod_curve(p: SPoly, a: int | str, b: int | str, x: str = "x", y: str = "y") -> SPoly:
    """Rewrite y^2 -> x^3 + a*x + b until the y-degree is at most 1.

    `a` and `b` may be integers or names of variables of `p`.  The result is
    the canonical representative of `p` in ℤ[...]/(y² − x³ − a·x − b), using
    that the quotient is a free module with basis {1, y} over the y-free part.
    """
    vars = p.vars
    xv = SPoly.var(vars, x)
    rel = xv**3
    for coeff_like, power in ((a, 1), (b, 0)):
        if isinstance(coeff_like, str):
            cpoly = SPoly.var(vars, coeff_like)
        else:
            cpoly = SPoly.const(vars, coeff_like)
        rel = rel + cpoly * xv**power
    y_idx = SPoly._var_index(vars, y)

    out = SPoly.zero(vars)
    rel_pows: list[SPoly] = [SPoly.const(vars, 1)]
    for exps, coeff in p.terms.items():
        k = exps[y_idx]
        base = list(exps)
        base[y_idx] = k % 2
        while len(rel_pows) <= k // 2:
            rel_pows.append(rel_pows[-1] * rel)
        out = out + SPoly(vars, {tuple(base): coeff}) * rel_pows[k // 2]
    return out
