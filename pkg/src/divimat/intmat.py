"""Exact integer linear algebra for divisibility questions.

Everything here is plain Python int arithmetic: Hermite and Smith normal
forms with transformation matrices, right-division testing (N = Q·M), the
cokernel ℤ^d/M^Tℤ^d as a list of elementary divisors, and enumeration of the
right divisor classes of a nonsingular matrix via subgroups of that cokernel.

Conventions, fixed once so that class equality is plain matrix equality:
row-style HNF, upper triangular, positive pivots, entries above each pivot
reduced into [0, pivot).  A right divisor class GL_d(ℤ)·M is represented by
the unique HNF matrix in the coset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

Rows = tuple[tuple[int, ...], ...]


class EnumerationBoundError(ValueError):
    """Requested divisor-class enumeration exceeds the configured bound."""


class IMat:
    """Immutable matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("entries must be a nonempty rectangular array")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", len(rows[0]))

    def __setattr__(self, name, value):
        raise AttributeError("IMat is immutable")

    @classmethod
    def identity(cls, d: int) -> "IMat":
        return cls([[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def zero(cls, d: int) -> "IMat":
        return cls([[0] * d for _ in range(d)])

    @classmethod
    def diagonal(cls, diag) -> "IMat":
        d = len(diag)
        return cls([[diag[i] if i == j else 0 for j in range(d)] for i in range(d)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, IMat) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"IMat({[list(r) for r in self.entries]})"

    def __mul__(self, other: "IMat") -> "IMat":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        ot = other.entries
        return IMat(
            [
                [sum(self.entries[i][k] * ot[k][j] for k in range(self.cols)) for j in range(other.cols)]
                for i in range(self.rows)
            ]
        )

    def __add__(self, other: "IMat") -> "IMat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return IMat(
            [[self.entries[i][j] + other.entries[i][j] for j in range(self.cols)] for i in range(self.rows)]
        )

    def __neg__(self) -> "IMat":
        return IMat([[-x for x in row] for row in self.entries])

    def __sub__(self, other: "IMat") -> "IMat":
        return self + (-other)

    def scale(self, c: int) -> "IMat":
        return IMat([[c * x for x in row] for row in self.entries])

    def transpose(self) -> "IMat":
        return IMat([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def minor(self, i: int, j: int) -> "IMat":
        return IMat(
            [
                [self.entries[r][c] for c in range(self.cols) if c != j]
                for r in range(self.rows)
                if r != i
            ]
        )

    def adjugate(self) -> "IMat":
        """Adjugate: adj(M)·M = M·adj(M) = det(M)·I."""
        if not self.is_square():
            raise ValueError("adjugate of a non-square matrix")
        n = self.rows
        if n == 1:
            return IMat([[1]])
        cof = [
            [(-1) ** (i + j) * self.minor(i, j).det() for j in range(n)]
            for i in range(n)
        ]
        return IMat(cof).transpose()

    def is_unimodular(self) -> bool:
        return self.is_square() and self.det() in (1, -1)

    def inverse_unimodular(self) -> "IMat":
        d = self.det()
        if d not in (1, -1):
            raise ValueError("matrix is not unimodular")
        adj = self.adjugate()
        return adj if d == 1 else adj.scale(-1)

    # -- JSON wire format ----------------------------------------------

    def to_json(self) -> dict:
        """Decimal-string entries: values routinely exceed machine words."""
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[str(x) for x in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IMat":
        m = cls([[int(x) for x in row] for row in data["entries"]])
        if m.rows != data["rows"] or m.cols != data["cols"]:
            raise ValueError("matrix JSON dimensions disagree with entries")
        return m


# -- Hermite normal form ------------------------------------------------


def hnf_with_transform(m: IMat) -> tuple[IMat, IMat]:
    """Row-style HNF: returns (H, U) with H = U·M, U unimodular.

    H is upper echelon with positive pivots and entries above each pivot
    reduced into [0, pivot); zero rows sink to the bottom.
    """
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]

    def rowop_sub(i, j, q):
        # row_i -= q*row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    r = 0
    for c in range(ncols):
        # gcd out column c below row r
        pivot_row = None
        for i in range(r, nrows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        u[r], u[pivot_row] = u[pivot_row], u[r]
        while True:
            nz = [i for i in range(r + 1, nrows) if a[i][c] != 0]
            if not nz:
                break
            for i in nz:
                q = a[i][c] // a[r][c]
                rowop_sub(i, r, q)
                if a[i][c] != 0:
                    a[r], a[i] = a[i], a[r]
                    u[r], u[i] = u[i], u[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        # reduce entries above the pivot into [0, pivot)
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                rowop_sub(i, r, q)
        r += 1
        if r == nrows:
            break
    return IMat(a), IMat(u)


def hnf(m: IMat) -> IMat:
    """Canonical representative of the left coset GL_d(ℤ)·M."""
    return hnf_with_transform(m)[0]


# -- Smith normal form ---------------------------------------------------


def snf(m: IMat) -> tuple[IMat, IMat, IMat]:
    """Smith normal form: returns (D, U, V) with U·M·V = D.

    D is diagonal with nonnegative entries and successive divisibility
    d1 | d2 | ...; U and V are unimodular.
    """
    a = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_sub(i, j, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i, j, q):
        # col_i -= q*col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    n = min(nrows, ncols)
    for t in range(n):
        while True:
            # find entry of least absolute value in the trailing block
            best = None
            for i in range(t, nrows):
                for j in range(t, ncols):
                    if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            bi, bj = best
            if bi != t:
                row_swap(t, bi)
            if bj != t:
                col_swap(t, bj)
            # clear row and column t by the pivot
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_sub(i, t, q)
                    if a[i][t] != 0:
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_sub(j, t, q)
                    if a[t][j] != 0:
                        dirty = True
            if dirty:
                continue
            # pivot must divide the whole trailing block
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_sub(t, offender, -1)  # fold the offending row into row t, redo
        if t < nrows and t < ncols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return IMat(a), IMat(u), IMat(v)


# -- right division -------------------------------------------------------


def right_divides(m: IMat, n: IMat) -> IMat | None:
    """If M right-divides N (meaning N = Q·M), return an integer Q, else None.

    Nonsingular M uses N·adj(M) with an entrywise divisibility check by
    det(M).  Singular M falls back to solving each row of N against the
    column lattice of M^T via a triangular (column-HNF) solve.
    """
    if m.rows != m.cols or n.rows != n.cols or m.rows != n.rows:
        raise ValueError("right division needs equal square dimensions")
    d = m.det()
    if d != 0:
        cand = n * m.adjugate()
        q = []
        for row in cand.entries:
            qrow = []
            for x in row:
                if x % d != 0:
                    return None
                qrow.append(x // d)
            q.append(qrow)
        return IMat(q)
    # Singular: Q·M = N row by row, i.e. M^T q_i = n_i.  Column-HNF of M^T is
    # hnf(M)^T: with H = U·M, the lattice M^T ℤ^d equals H^T ℤ^d and q = U^T z.
    h, u = hnf_with_transform(m)
    lt = h.transpose()  # lower triangular, columns generate M^T ℤ^d
    ddim = m.rows
    qrows = []
    for target_row in n.entries:
        z = [0] * ddim
        b = list(target_row)
        for col in range(ddim):
            # pivot row of column `col` in the lower-triangular lt
            prow = next((i for i in range(ddim) if lt.entries[i][col] != 0), None)
            if prow is None:
                continue
            acc = b[prow] - sum(lt.entries[prow][k] * z[k] for k in range(col))
            piv = lt.entries[prow][col]
            if acc % piv != 0:
                return None
            z[col] = acc // piv
        # full consistency check
        for i in range(ddim):
            if sum(lt.entries[i][k] * z[k] for k in range(ddim)) != b[i]:
                return None
        ut = u.transpose()
        qrows.append([sum(ut.entries[i][k] * z[k] for k in range(ddim)) for i in range(ddim)])
    return IMat(qrows)


# -- cokernel and divisor classes ----------------------------------------


@dataclass(frozen=True)
class Cokernel:
    """Structure of ℤ^d / M^T ℤ^d: elementary divisors > 1 and free rank."""

    elementary_divisors: tuple[int, ...]
    free_rank: int

    def order(self) -> int | None:
        if self.free_rank:
            return None
        n = 1
        for d in self.elementary_divisors:
            n *= d
        return n


def cokernel(m: IMat) -> Cokernel:
    d, _, _ = snf(m.transpose())
    k = min(d.rows, d.cols)
    diag = [d.entries[i][i] for i in range(k)]
    return Cokernel(
        elementary_divisors=tuple(x for x in diag if x > 1),
        free_rank=sum(1 for x in diag if x == 0) + (m.rows - k),
    )


def _subgroups_with_generators(orders: tuple[int, ...]):
    """All subgroups of ⊕ℤ/orders[i], each as (frozenset of elements, gens).

    Breadth-first closure over generating sets; fine for the small group
    orders this package enumerates (the determinant bound caps |G|).
    """
    if not orders:
        return [(frozenset([()]), [])]
    elements = list(itertools.product(*(range(o) for o in orders)))
    zero = tuple([0] * len(orders))

    def close(gens):
        seen = {zero}
        frontier = [zero]
        while frontier:
            cur = frontier.pop()
            for g in gens:
                nxt = tuple((c + x) % o for c, x, o in zip(cur, g, orders))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return frozenset(seen)

    trivial = frozenset([zero])
    found = {trivial: []}
    frontier = [(trivial, [])]
    while frontier:
        sub, gens = frontier.pop()
        for g in elements:
            if g in sub:
                continue
            bigger = close(gens + [g])
            if bigger not in found:
                entry = gens + [g]
                found[bigger] = entry
                frontier.append((bigger, entry))
    return sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def class_from_cokernel_subgroup(
    m: IMat, gens, snf_of_transpose: tuple[IMat, IMat, IMat] | None = None
) -> IMat:
    """HNF representative of the divisor class of M attached to one subgroup.

    The subgroup of the cokernel ℤ^d/M^Tℤ^d is given by generators in SNF
    coordinates (with U·M^T·V = D, the cokernel is ℤ^d/Dℤ^d via y = Ux).  It
    pulls back to a lattice between the row lattice of M and ℤ^d; the HNF
    basis of that lattice is the canonical class representative.
    """
    d = m.rows
    dmat, u, _ = snf_of_transpose if snf_of_transpose is not None else snf(m.transpose())
    orders = tuple(dmat.entries[i][i] for i in range(d))
    uinv = u.inverse_unimodular()
    cols = [list(g) for g in gens] + [
        [orders[i] if i == j else 0 for i in range(d)] for j in range(d)
    ]
    gen_rows = [
        [sum(uinv.entries[i][k] * col[k] for k in range(d)) for i in range(d)] for col in cols
    ]
    h = hnf(IMat(gen_rows))
    return IMat(h.entries[:d])


def divisor_classes(m: IMat, bound: int = 10_000) -> list[IMat]:
    """All right divisor classes of a nonsingular M, as HNF representatives.

    Classes of M biject with subgroups of the cokernel of M^T.  |det M| must
    be nonzero and at most `bound` (subgroup enumeration is exponential past
    that).
    """
    if not m.is_square():
        raise ValueError("divisor classes need a square matrix")
    det = m.det()
    if det == 0:
        raise ValueError("singular matrix has infinitely many divisor classes")
    if abs(det) > bound:
        raise EnumerationBoundError(f"|det| = {abs(det)} exceeds enumeration bound {bound}")
    d = m.rows
    decomposition = snf(m.transpose())
    orders = tuple(decomposition[0].entries[i][i] for i in range(d))
    reps = [
        class_from_cokernel_subgroup(m, gens, decomposition)
        for _, gens in _subgroups_with_generators(orders)
    ]
    reps.sort(key=lambda r: r.entries)
    return reps


def count_subgroups_bruteforce(orders: tuple[int, ...]) -> int:
    """Number of subgroups of ⊕ℤ/orders[i] by explicit enumeration."""
    return len(_subgroups_with_generators(tuple(o for o in orders if o > 1)))
