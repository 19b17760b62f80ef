"""Exact linear algebra over the integers.

Vectors are tuples of Python ints and matrices are tuples of row vectors,
so all arithmetic is arbitrary precision by construction.  The module
provides the lattice toolkit the rest of the package is built on: Hermite
and Smith normal forms with transformation matrices, kernel and congruence
lattices, saturation, lattice indices, and exact system solving.

Conventions: the Hermite normal form is row style with positive pivots,
strictly increasing pivot columns, entries above a pivot reduced into
``[0, pivot)``, and zero rows last.  The Smith normal form has a
nonnegative diagonal in which each entry divides the next.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Vector = tuple
Matrix = tuple


def vector(entries: Iterable[int]) -> Vector:
    return tuple(int(x) for x in entries)


def matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    """Build an immutable matrix, checking that the rows are rectangular."""
    out = tuple(vector(r) for r in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged rows: %s" % (out,))
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(mat: Matrix) -> Matrix:
    if not mat:
        return ()
    return tuple(zip(*mat))


def dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


def mat_vec(mat: Matrix, v: Sequence[int]) -> Vector:
    return tuple(dot(row, v) for row in mat)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def vec_add(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: int, v: Sequence[int]) -> Vector:
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence[int]) -> bool:
    return all(a == 0 for a in v)


def primitive_part(v: Sequence[int]) -> Vector:
    """Divide a vector by the gcd of its entries, keeping its direction.

    The zero vector is returned unchanged.  The sign of the leading entry
    is preserved; orienting support hyperplanes is the caller's business.
    """
    g = 0
    for a in v:
        g = gcd(g, abs(a))
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def _gcdex(a: int, b: int):
    """Extended gcd: (g, s, t) with s*a + t*b == g == gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def det(mat: Matrix) -> int:
    """Determinant of a square integer matrix via fraction-free (Bareiss)
    elimination.  The empty matrix has determinant 1."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    m = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def hnf(mat: Matrix):
    """Row-style Hermite normal form with transformation matrix.

    Args:
        mat: integer matrix (may be empty or rank deficient).

    Returns:
        A pair ``(H, U)`` with ``U @ mat == H``, ``|det U| == 1`` and ``H``
        in canonical row HNF.
    """
    n = len(mat)
    width = len(mat[0]) if n else 0
    rows = [list(r) for r in mat]
    trans = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    piv = 0
    for col in range(width):
        if piv >= n:
            break
        for i in range(piv + 1, n):
            if rows[i][col] == 0:
                continue
            a, b = rows[piv][col], rows[i][col]
            if a and b % a == 0:
                q = b // a
                rows[i] = [y - q * x for x, y in zip(rows[piv], rows[i])]
                trans[i] = [y - q * x for x, y in zip(trans[piv], trans[i])]
                continue
            g, s, t = _gcdex(a, b)
            u, v = -(b // g), a // g
            rows[piv], rows[i] = (
                [s * x + t * y for x, y in zip(rows[piv], rows[i])],
                [u * x + v * y for x, y in zip(rows[piv], rows[i])],
            )
            trans[piv], trans[i] = (
                [s * x + t * y for x, y in zip(trans[piv], trans[i])],
                [u * x + v * y for x, y in zip(trans[piv], trans[i])],
            )
        if rows[piv][col] == 0:
            continue
        if rows[piv][col] < 0:
            rows[piv] = [-x for x in rows[piv]]
            trans[piv] = [-x for x in trans[piv]]
        p = rows[piv][col]
        for j in range(piv):
            q = rows[j][col] // p
            if q:
                rows[j] = [x - q * y for x, y in zip(rows[j], rows[piv])]
                trans[j] = [x - q * y for x, y in zip(trans[j], trans[piv])]
        piv += 1
    return tuple(tuple(r) for r in rows), tuple(tuple(r) for r in trans)


def rank(mat: Matrix) -> int:
    h, _ = hnf(mat)
    return sum(1 for row in h if not is_zero_vector(row))


def snf(mat: Matrix):
    """Smith normal form with transformation matrices.

    Returns ``(S, U, V)`` with ``U @ mat @ V == S``, both transforms
    unimodular, and ``S`` diagonal with nonnegative entries each dividing
    the next (zeros last).
    """
    n = len(mat)
    width = len(mat[0]) if n else 0
    s = [list(r) for r in mat]
    left = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    right = [[1 if i == j else 0 for j in range(width)] for i in range(width)]

    def row_combine(i1, i2, a, b, c, d):
        for m in (s, left):
            m[i1], m[i2] = (
                [a * x + b * y for x, y in zip(m[i1], m[i2])],
                [c * x + d * y for x, y in zip(m[i1], m[i2])],
            )

    def col_combine(j1, j2, a, b, c, d):
        for m in (s, right):
            for row in m:
                row[j1], row[j2] = a * row[j1] + b * row[j2], c * row[j1] + d * row[j2]

    limit = min(n, width)
    t = 0
    while t < limit:
        pivot = None
        for i in range(t, n):
            for j in range(t, width):
                if s[i][j]:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            s[t], s[i] = s[i], s[t]
            left[t], left[i] = left[i], left[t]
        if j != t:
            for m in (s, right):
                for row in m:
                    row[t], row[j] = row[j], row[t]
        while True:
            clean = True
            for i in range(t + 1, n):
                if s[i][t]:
                    a, b = s[t][t], s[i][t]
                    if b % a == 0:
                        row_combine(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, p, q = _gcdex(a, b)
                        row_combine(t, i, p, q, -(b // g), a // g)
                        clean = False
            for j in range(t + 1, width):
                if s[t][j]:
                    a, b = s[t][t], s[t][j]
                    if b % a == 0:
                        col_combine(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, p, q = _gcdex(a, b)
                        col_combine(t, j, p, q, -(b // g), a // g)
                        clean = False
            if clean:
                break
        t += 1

    for i in range(limit):
        if s[i][i] < 0:
            s[i] = [-x for x in s[i]]
            left[i] = [-x for x in left[i]]

    # Enforce the divisibility chain d1 | d2 | ... without disturbing the
    # already-diagonal shape.
    while True:
        stable = True
        for i in range(limit - 1):
            a, b = s[i][i], s[i + 1][i + 1]
            if a and b % a:
                col_combine(i, i + 1, 1, 1, 0, 1)  # add column i+1 to column i
                g, p, q = _gcdex(a, b)
                row_combine(i, i + 1, p, q, -(b // g), a // g)
                off = s[i][i + 1]
                col_combine(i, i + 1, 1, 0, -(off // g), 1)
                if s[i + 1][i + 1] < 0:
                    s[i + 1] = [-x for x in s[i + 1]]
                    left[i + 1] = [-x for x in left[i + 1]]
                stable = False
        if stable:
            break
    return (
        tuple(tuple(r) for r in s),
        tuple(tuple(r) for r in left),
        tuple(tuple(r) for r in right),
    )


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of ZZ^d, stored as an HNF-canonical row basis.

    Two equal lattices always compare equal because the basis is kept in
    canonical form.
    """

    basis: Matrix
    ambient_dim: int

    @staticmethod
    def standard(ambient_dim: int) -> "LatticeBasis":
        return LatticeBasis(identity(ambient_dim), ambient_dim)

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]], ambient_dim: int) -> "LatticeBasis":
        mat = matrix(rows)
        if mat and len(mat[0]) != ambient_dim:
            raise ValueError("rows have width %d, expected %d" % (len(mat[0]), ambient_dim))
        if not mat:
            return LatticeBasis((), ambient_dim)
        h, _ = hnf(mat)
        kept = tuple(row for row in h if not is_zero_vector(row))
        return LatticeBasis(kept, ambient_dim)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_standard(self) -> bool:
        return self.rank == self.ambient_dim and self.basis == identity(self.ambient_dim)

    def coords(self, v: Sequence[int]) -> Optional[Vector]:
        """Integer coordinates of ``v`` in this basis, or None if ``v`` is
        not a lattice member.  Works by staircase substitution on the HNF
        basis."""
        residual = list(v)
        cs = []
        for row in self.basis:
            j = next((k for k, x in enumerate(row) if x), None)
            if j is None:  # pragma: no cover - zero rows never stored
                cs.append(0)
                continue
            q, r = divmod(residual[j], row[j])
            if r:
                return None
            cs.append(q)
            if q:
                residual = [x - q * y for x, y in zip(residual, row)]
        if any(residual):
            return None
        return tuple(cs)

    def contains(self, v: Sequence[int]) -> bool:
        return self.coords(v) is not None

    def to_ambient(self, cs: Sequence[int]) -> Vector:
        out = [0] * self.ambient_dim
        for c, row in zip(cs, self.basis, strict=True):
            if c:
                out = [x + c * y for x, y in zip(out, row)]
        return tuple(out)

    def residue(self, v: Sequence[int]) -> Vector:
        """Canonical representative of ``v`` modulo this lattice.

        Top-down floor reduction against the HNF staircase; equal
        residues characterize equal cosets.
        """
        out = list(v)
        for row in self.basis:
            j = next(k for k, x in enumerate(row) if x)
            q = out[j] // row[j]
            if q:
                out = [x - q * y for x, y in zip(out, row)]
        return tuple(out)


def kernel_lattice(mat: Matrix, ambient_dim: int) -> LatticeBasis:
    """The saturated lattice {x in ZZ^d : mat @ x = 0}.

    An empty constraint matrix yields the full standard lattice.
    """
    if not mat:
        return LatticeBasis.standard(ambient_dim)
    if len(mat[0]) != ambient_dim:
        raise ValueError("constraint width %d, expected %d" % (len(mat[0]), ambient_dim))
    h, u = hnf(transpose(mat))
    rows = [u[i] for i in range(len(h)) if is_zero_vector(h[i])]
    return LatticeBasis.from_rows(rows, ambient_dim)


def congruence_lattice(rows: Matrix, ambient_dim: int) -> LatticeBasis:
    """Solutions of a system of congruences ``c . x == 0 (mod m)``.

    Each row has ``ambient_dim + 1`` entries, the last being the modulus
    (>= 1).  The result is always a full-rank sublattice of ZZ^d.
    """
    from .errors import InvalidInputError

    coeffs = []
    mods = []
    for row in rows:
        if len(row) != ambient_dim + 1:
            raise InvalidInputError(
                "congruence row %s has %d entries, expected %d"
                % (row, len(row), ambient_dim + 1)
            )
        if row[-1] < 1:
            raise InvalidInputError("congruence modulus must be >= 1, got %d" % row[-1])
        coeffs.append(row[:-1])
        mods.append(row[-1])
    if not coeffs:
        return LatticeBasis.standard(ambient_dim)
    count = len(coeffs)
    stacked = matrix(
        tuple(coeffs[i]) + tuple(mods[i] if j == i else 0 for j in range(count))
        for i in range(count)
    )
    kern = kernel_lattice(stacked, ambient_dim + count)
    return LatticeBasis.from_rows([row[:ambient_dim] for row in kern.basis], ambient_dim)


def saturation(lat: LatticeBasis) -> LatticeBasis:
    """Smallest saturated lattice containing ``lat`` (span intersect ZZ^d),
    computed as a double kernel."""
    forms = kernel_lattice(lat.basis, lat.ambient_dim)
    return kernel_lattice(forms.basis, lat.ambient_dim)


def lattice_index(sub: LatticeBasis, sup: LatticeBasis) -> int:
    """Index of ``sub`` inside ``sup``; both must have the same rank and
    ``sub`` must be contained in ``sup``."""
    if sub.ambient_dim != sup.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if sub.rank != sup.rank:
        raise ValueError("index is infinite: ranks %d and %d" % (sub.rank, sup.rank))
    coord_rows = []
    for row in sub.basis:
        cs = sup.coords(row)
        if cs is None:
            raise ValueError("%s is not contained in the larger lattice" % (row,))
        coord_rows.append(cs)
    return abs(det(matrix(coord_rows)))


def solve_rational_system(mat: Matrix, rhs: Sequence[int]):
    """Particular rational solution of ``mat @ x == rhs``.

    Free variables are set to zero; returns a tuple of Fractions, or None
    when the system is inconsistent.
    """
    n = len(mat)
    if n != len(rhs):
        raise ValueError("matrix has %d rows but rhs has %d entries" % (n, len(rhs)))
    width = len(mat[0]) if n else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(mat, rhs)]
    piv_cols = []
    r = 0
    for col in range(width):
        hit = next((i for i in range(r, n) if aug[i][col]), None)
        if hit is None:
            continue
        aug[r], aug[hit] = aug[hit], aug[r]
        p = aug[r][col]
        aug[r] = [x / p for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][col]:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(col)
        r += 1
    for i in range(r, n):
        if aug[i][-1]:
            return None
    x = [Fraction(0)] * width
    for k, col in enumerate(piv_cols):
        x[col] = aug[k][-1]
    return tuple(x)


def solve_integer_system(mat: Matrix, rhs: Sequence[int], width: Optional[int] = None):
    """Canonical integer solution of ``mat @ x == rhs`` or None.

    Solves through the column Hermite form, which yields the particular
    solution with all free parameters equal to zero.  ``width`` is only
    needed to size the answer when ``mat`` has no rows.
    """
    n = len(mat)
    if n != len(rhs):
        raise ValueError("matrix has %d rows but rhs has %d entries" % (n, len(rhs)))
    if n == 0:
        if width is None:
            raise ValueError("width required for an empty system")
        return (0,) * width
    d = len(mat[0])
    ht, ut = hnf(transpose(mat))
    y = [0] * d
    for j in range(d):
        row = ht[j]
        p = next((k for k, x in enumerate(row) if x), None)
        if p is None:
            break
        val = rhs[p] - sum(ht[k][p] * y[k] for k in range(j))
        q, rem = divmod(val, row[p])
        if rem:
            return None
        y[j] = q
    x = tuple(sum(ut[j][i] * y[j] for j in range(d)) for i in range(d))
    if mat_vec(mat, x) != tuple(rhs):
        return None
    return x
