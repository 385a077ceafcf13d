"""Primitive prime divisors and primitive right divisor classes for the
elliptic Jacobian sequence at a rational point.

For a point with x = a/b² in lowest terms, the sequence det J_n(a, b²) is an
integer divisibility sequence.  Each determinant is computed along two
independent routes and compared:

  (i)  evaluate the Jacobian of [n] entrywise at (X, Z) = (a, b²) and take
       the 2×2 determinant (polynomial route);
  (ii) n³ · b^{4(n²−1)} · (ψ_{2n}/ψ_2)(a/b²) via the value recurrences.

A primitive prime of index n divides det J_n but no det J_m with m | n a
proper divisor.  The scan finds the "primitive part" of each term by
stripping the index, the primes of the curve discriminant, the determinant
history at proper divisors, and the denominator-sequence history B_m for
m < 2n (the last two by repeated gcds).  Any prime factor of what survives is
primitive; the certificate then exhibits a witness divisor class built from
the order-p subgroup of the cokernel and re-verifies, directly from the
definition, that the class divides J_n and no J_m.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from .curve import Curve, MultipleRecord, RatPoint, multiples
from .divpoly import DivisionPolyValues
from .endo import EndoFamily, family_elliptic
from .errors import IdentityViolationError, TorsionPointError, PointAtInfinityError
from .factorint import factorize
from .intmat import IMat, class_from_cokernel_subgroup, right_divides, snf


def load_fixture(path: str | Path) -> RatPoint:
    """Read a curve/point fixture: {"curve": {"A","B"}, "point": {...}}.

    All numbers are decimal strings; x is given as x_num over the square of
    x_den_sqrt, and y may be a rational string like "7/8".
    """
    data = json.loads(Path(path).read_text())
    curve = Curve(int(data["curve"]["A"]), int(data["curve"]["B"]))
    p = data["point"]
    x = Fraction(int(p["x_num"]), int(p["x_den_sqrt"]) ** 2)
    y = Fraction(p["y"])
    return RatPoint(curve, x, y)


def _strip(value: int, divisor: int) -> int:
    """Remove from value every prime factor it shares with divisor."""
    if divisor in (0, 1, -1):
        return value
    divisor = abs(divisor)
    g = gcd(value, divisor)
    while g > 1:
        while value % g == 0:
            value //= g
        g = gcd(value, divisor)
    return value


def _proper_divisors(n: int) -> list[int]:
    return [m for m in range(1, n) if n % m == 0]


def delta_primes(curve: Curve) -> tuple[int, ...]:
    factors, rem = factorize(abs(curve.discriminant()))
    if rem != 1:
        raise ArithmeticError(f"could not factor discriminant {curve.discriminant()}")
    return tuple(sorted(factors))


@dataclass
class AyadReport:
    n: int
    q_n: int
    factorization: dict[int, int]


@dataclass
class ScanRecord:
    """Primitive-part data for one index of the determinant sequence."""

    n: int
    det: int
    primitive_part: int
    primes: tuple[int, ...]
    unfactored: int  # composite cofactor left by the factorization budget, or 1


@dataclass
class PrimitivityCertificate:
    """A primitive prime plus a matrix-level witness for index n."""

    n: int
    det: int
    primitive_part: int
    prime: int | None
    witness: IMat | None
    excluded: tuple[tuple[int, str], ...]  # (m, evidence that witness ∤ J_m)
    status: str  # "certified" | "no_prior_terms" | "no_primitive_part" | "unfactored"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "det": str(self.det),
            "primitive_part": str(self.primitive_part),
            "prime": None if self.prime is None else str(self.prime),
            "witness": None if self.witness is None else self.witness.to_json(),
            "excluded": [{"m": m, "evidence": ev} for m, ev in self.excluded],
            "status": self.status,
        }


class EllipticPointScan:
    """Shared state for scanning one curve/point pair up to an index bound.

    Determinants and point multiples at all divisor indices are computed
    before any index is judged; records are then independent of each other
    and deterministic (sorted by n).
    """

    def __init__(self, point: RatPoint, n_max: int):
        if n_max < 1:
            raise ValueError("n_max must be positive")
        self.point = point
        self.curve = point.curve
        self.n_max = n_max
        self.a, self.b = point.square_denominator_split()
        self.family: EndoFamily = family_elliptic(self.curve)
        self.values = DivisionPolyValues(self.curve, point.x, point.y)
        try:
            # B-history runs to 2n−1 for the proof-shaped stripping
            self.mults: dict[int, MultipleRecord] = multiples(point, max(2 * n_max - 1, 12))
        except PointAtInfinityError as exc:
            raise TorsionPointError(f"point {point.x, point.y} is torsion: {exc}") from exc
        self._dets: dict[int, int] = {}
        self._jacobians: dict[int, IMat] = {}
        self._delta_primes = delta_primes(self.curve)

    # -- determinants, both routes --------------------------------------

    def jacobian_at_point(self, n: int) -> IMat:
        if n not in self._jacobians:
            self._jacobians[n] = self.family.jacobian_at(n, (self.a, self.b**2))
        return self._jacobians[n]

    def det_at_point(self, n: int) -> int:
        """det J_n(a, b²), computed by both routes; they must agree in ℤ."""
        if n not in self._dets:
            direct = self.jacobian_at_point(n).det()
            closed = (
                Fraction(n**3)
                * Fraction(self.b) ** (4 * (n * n - 1))
                * self.values.eta(n)
            )
            if closed.denominator != 1:
                raise IdentityViolationError(
                    f"closed-form determinant is not an integer at n={n}: {closed}"
                )
            if direct != closed.numerator:
                raise IdentityViolationError(
                    f"determinant routes disagree at n={n}: direct {direct} vs closed {closed.numerator}"
                )
            self._dets[n] = direct
        return self._dets[n]

    # -- integrality of the psi denominators ----------------------------

    def ayad_check(self, n: int) -> AyadReport:
        """Q_n = b^{2n²}·ψ_n²(a/b²)/B_n² is a positive integer supported on
        the primes of the discriminant."""
        scaled = Fraction(self.b) ** (2 * n * n) * self.values.psi_tilde(n)
        if scaled.denominator != 1:
            raise IdentityViolationError(f"b^(2n²)·ψ̃_n(a/b²) not integral at n={n}")
        b_n = self.mults[n].b
        q_n, rem = divmod(scaled.numerator, b_n**2)
        if rem != 0 or q_n <= 0:
            raise IdentityViolationError(f"Q_{n} = {scaled.numerator}/{b_n}² is not a positive integer")
        left = q_n
        factorization: dict[int, int] = {}
        for p in self._delta_primes:
            while left % p == 0:
                left //= p
                factorization[p] = factorization.get(p, 0) + 1
        if left != 1:
            raise IdentityViolationError(
                f"Q_{n} has a prime factor outside the discriminant support: cofactor {left}"
            )
        return AyadReport(n=n, q_n=q_n, factorization=factorization)

    # -- primitive parts --------------------------------------------------

    def primitive_part(self, n: int) -> int:
        """What remains of |det J_n| after all history stripping."""
        part = abs(self.det_at_point(n))
        part = _strip(part, n**3)
        for p in self._delta_primes:
            part = _strip(part, p)
        for m in _proper_divisors(n):
            part = _strip(part, self.det_at_point(m))
        for m in range(1, 2 * n):
            part = _strip(part, self.mults[m].b)
        return part

    def scan(self, rho_budget: int = 2_000_000) -> list[ScanRecord]:
        records = []
        for n in range(1, self.n_max + 1):
            det = self.det_at_point(n)
            part = self.primitive_part(n) if n > 1 else 1
            primes: tuple[int, ...] = ()
            unfactored = 1
            if part > 1:
                factors, rem = factorize(part, rho_budget=rho_budget)
                primes = tuple(sorted(factors))
                unfactored = rem
            records.append(
                ScanRecord(n=n, det=det, primitive_part=part, primes=primes, unfactored=unfactored)
            )
        return records

    # -- matrix-level certificates ----------------------------------------

    def witness_class(self, n: int, p: int) -> IMat:
        """Divisor class of J_n from the order-p subgroup of its cokernel."""
        j = self.jacobian_at_point(n)
        decomposition = snf(j.transpose())
        d = j.rows
        orders = [decomposition[0].entries[i][i] for i in range(d)]
        k = max(i for i in range(d) if orders[i] % p == 0)
        gen = [0] * d
        gen[k] = orders[k] // p
        return class_from_cokernel_subgroup(j, [gen], decomposition)

    def certify(
        self, n: int, rho_budget: int = 2_000_000, class_enum_bound: int = 10_000
    ) -> PrimitivityCertificate:
        """Build and directly verify a primitivity certificate for index n.

        When |det J_n| is within `class_enum_bound` the witness class is also
        cross-checked against the full divisor-class enumeration.
        """
        det = self.det_at_point(n)
        if n == 1:
            return PrimitivityCertificate(
                n=1, det=det, primitive_part=1, prime=None, witness=None, excluded=(), status="no_prior_terms"
            )
        part = self.primitive_part(n)
        if part == 1:
            return PrimitivityCertificate(
                n=n, det=det, primitive_part=1, prime=None, witness=None, excluded=(), status="no_primitive_part"
            )
        factors, rem = factorize(part, rho_budget=rho_budget)
        if not factors:
            return PrimitivityCertificate(
                n=n, det=det, primitive_part=part, prime=None, witness=None, excluded=(), status="unfactored"
            )
        p = min(factors)
        witness = self.witness_class(n, p)
        evidence = []
        for m in _proper_divisors(n):
            if self.det_at_point(m) % p == 0:
                raise IdentityViolationError(
                    f"prime {p} at n={n} is not primitive: divides det J_{m}"
                )
            q = right_divides(witness, self.jacobian_at_point(m))
            if q is not None:
                raise IdentityViolationError(
                    f"witness class at n={n} right-divides J_{m}: not primitive"
                )
            det_m = self.det_at_point(m)
            if det_m % witness.det() != 0:
                evidence.append((m, f"det {witness.det()} does not divide det J_{m} = {det_m}"))
            else:
                evidence.append((m, "no integer quotient in right division"))
        if right_divides(witness, self.jacobian_at_point(n)) is None:
            raise IdentityViolationError(f"witness class does not divide J_{n}")
        if abs(det) <= class_enum_bound:
            from .intmat import divisor_classes

            if witness not in divisor_classes(self.jacobian_at_point(n), bound=class_enum_bound):
                raise IdentityViolationError(
                    f"witness class at n={n} missing from the full class enumeration"
                )
        return PrimitivityCertificate(
            n=n,
            det=det,
            primitive_part=part,
            prime=p,
            witness=witness,
            excluded=tuple(evidence),
            status="certified",
        )

    def verify_certificate(self, cert: PrimitivityCertificate) -> bool:
        """Re-run every check in a certificate from scratch."""
        if cert.status != "certified":
            return cert.status in ("no_prior_terms", "no_primitive_part", "unfactored")
        p, witness = cert.prime, cert.witness
        j_n = self.family.jacobian_at(cert.n, (self.a, self.b**2))
        if j_n.det() != cert.det or cert.det % p != 0:
            return False
        if right_divides(witness, j_n) is None:
            return False
        for m in _proper_divisors(cert.n):
            j_m = self.family.jacobian_at(m, (self.a, self.b**2))
            if j_m.det() % p == 0:
                return False
            if right_divides(witness, j_m) is not None:
                return False
        return True
