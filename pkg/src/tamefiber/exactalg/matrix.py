"""Exact matrices over any workbench ring.

Immutable, dimension-checked, with the two operations everything else leans
on: characteristic polynomials (cofactor expansion over the polynomial
ring, no division) and inversion (adjugate times the inverse of the
determinant, which over a local ring exists exactly when the residue matrix
is invertible).
"""

from __future__ import annotations

from ..errors import NonUnitError
from .poly import Poly


class Mat:
    __slots__ = ("ring", "rows", "nrows", "ncols")

    def __init__(self, ring, rows):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            width = len(rows[0])
            assert all(len(r) == width for r in rows), "ragged matrix"
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @staticmethod
    def identity(ring, n: int) -> "Mat":
        z, o = ring.zero(), ring.one()
        return Mat(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(ring, n: int, m: int) -> "Mat":
        z = ring.zero()
        return Mat(ring, [[z] * m for _ in range(n)])

    @staticmethod
    def from_int_rows(ring, rows) -> "Mat":
        return Mat(ring, [[ring.from_int(c) for c in r] for r in rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Mat(self.ring, [[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        return Mat(self.ring, [[a - b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Mat(self.ring, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Mat):
            assert self.ncols == other.nrows, "dimension mismatch"
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                out.append([_dot(self.ring, r, c) for c in cols])
            return Mat(self.ring, out)
        return NotImplemented

    def scale(self, c) -> "Mat":
        return Mat(self.ring, [[c * a for a in r] for r in self.rows])

    def __pow__(self, k: int):
        assert self.nrows == self.ncols
        if k < 0:
            return self.inv() ** (-k)
        result = Mat.identity(self.ring, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def transpose(self) -> "Mat":
        return Mat(self.ring, list(zip(*self.rows)))

    def trace(self):
        acc = self.ring.zero()
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def apply(self, vec):
        """Matrix times column vector (a sequence), returns a tuple."""
        return tuple(_dot(self.ring, r, vec) for r in self.rows)

    def column(self, j: int):
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def map(self, ring, fn) -> "Mat":
        return Mat(ring, [[fn(a) for a in r] for r in self.rows])

    # -- determinant / adjugate / inverse -----------------------------------

    def det(self):
        assert self.nrows == self.ncols
        return _det_rows(self.ring, self.rows)

    def adjugate(self) -> "Mat":
        n = self.nrows
        assert n == self.ncols
        if n == 1:
            return Mat.identity(self.ring, 1)
        sign_pos = self.ring.one()
        out = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[self.rows[r][c] for c in range(n) if c != j]
                         for r in range(n) if r != i]
                cof = _det_rows(self.ring, minor)
                if (i + j) % 2:
                    cof = -cof
                out[j][i] = cof  # transposed
        return Mat(self.ring, out)

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.det())

    def inv(self) -> "Mat":
        """Exact inverse; raises NonUnitError if det is not a unit."""
        d = self.det()
        if not self.ring.is_unit(d):
            raise NonUnitError("matrix determinant is not a unit")
        return self.adjugate().scale(self.ring.inv(d))

    # -- characteristic polynomial ------------------------------------------

    def char_poly(self) -> Poly:
        """det(X*I - M), monic, by cofactor expansion over R[X]."""
        n = self.nrows
        assert n == self.ncols, "char_poly needs a square matrix"
        ring = self.ring
        zero_p = Poly(ring, [])
        entries = []
        for i in range(n):
            row = []
            for j in range(n):
                c = -self.rows[i][j]
                if i == j:
                    row.append(Poly(ring, [c, ring.one()]))
                else:
                    row.append(Poly(ring, [c]) if c != ring.zero() else zero_p)
            entries.append(row)
        return _poly_det(ring, entries)

    def char_coeffs_e(self) -> tuple:
        """(e_1, ..., e_n): signed char poly coefficients, the elementary
        symmetric functions of the eigenvalues."""
        cp = self.char_poly()
        n = self.nrows
        out = []
        for i in range(1, n + 1):
            c = cp[n - i]
            out.append(c if i % 2 == 0 else -c)
        return tuple(out)

    # -- block helpers -------------------------------------------------------

    def block(self, rows: range, cols: range) -> "Mat":
        return Mat(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def is_block_diagonal(self, shape) -> bool:
        """True when all entries outside the diagonal blocks of the given
        composition vanish."""
        bounds = _bounds(shape)
        z = self.ring.zero()
        for i in range(self.nrows):
            bi = _block_of(bounds, i)
            for j in range(self.ncols):
                if _block_of(bounds, j) != bi and self.rows[i][j] != z:
                    return False
        return True

    def diagonal_blocks(self, shape) -> list:
        bounds = _bounds(shape)
        return [self.block(range(a, b), range(a, b)) for a, b in zip(bounds, bounds[1:])]

    @staticmethod
    def block_diag(ring, blocks) -> "Mat":
        n = sum(b.nrows for b in blocks)
        out = [[ring.zero()] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out[off + i][off + j] = b.rows[i][j]
            off += b.nrows
        return Mat(ring, out)

    def __repr__(self):
        return "Mat(" + "; ".join(" ".join(repr(a) for a in r) for r in self.rows) + ")"


def _dot(ring, xs, ys):
    acc = ring.zero()
    for a, b in zip(xs, ys):
        acc = acc + a * b
    return acc


def _det_rows(ring, rows):
    n = len(rows)
    if n == 0:
        return ring.one()
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = ring.zero()
    for j in range(n):
        c = rows[0][j]
        if c == ring.zero():
            continue
        minor = [[r[k] for k in range(n) if k != j] for r in rows[1:]]
        term = c * _det_rows(ring, minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _poly_det(ring, entries):
    n = len(entries)
    if n == 1:
        return entries[0][0]
    if n == 2:
        return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]
    acc = Poly(ring, [])
    for j in range(n):
        e = entries[0][j]
        if not e:
            continue
        minor = [[r[k] for k in range(n) if k != j] for r in entries[1:]]
        term = e * _poly_det(ring, minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _bounds(shape):
    bounds = [0]
    for s in shape:
        bounds.append(bounds[-1] + s)
    return bounds


def _block_of(bounds, i):
    for k in range(len(bounds) - 1):
        if bounds[k] <= i < bounds[k + 1]:
            return k
    raise IndexError(i)


def jordan_block(ring, n: int, eigenvalue) -> Mat:
    """n x n Jordan block: eigenvalue on the diagonal, 1 on the superdiagonal."""
    z, o = ring.zero(), ring.one()
    rows = [[z] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = eigenvalue
        if i + 1 < n:
            rows[i][i + 1] = o
    return Mat(ring, rows)


def diag(ring, entries) -> Mat:
    z = ring.zero()
    n = len(entries)
    return Mat(ring, [[entries[i] if i == j else z for j in range(n)]
                      for i in range(n)])
