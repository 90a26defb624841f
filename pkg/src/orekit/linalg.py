"""Exact dense linear algebra over tower fields.

Kernels, determinants, characteristic polynomials (Hessenberg reduction),
minimal polynomials (Krylov local polynomials combined by lcm, then a
verification evaluation), invariant factors via the Smith normal form of
Y*I - M, primary (Jordan-type) data from rank sequences, and the Moore
determinant.
"""

import random

from . import commalg
from .commalg import CommPoly
from .errors import DomainError, TowerMismatchError
from .fields import FieldElem


class Matrix:
    """Rectangular matrix with raw entries over a single field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        self.field = field
        conv = []
        for row in rows:
            out = []
            for c in row:
                if isinstance(c, FieldElem):
                    if c.field.signature != field.signature:
                        raise TowerMismatchError("entry from a different field")
                    out.append(c.raw)
                elif isinstance(c, int):
                    out.append(field.from_int(c))
                else:
                    out.append(c)
            conv.append(out)
        self.rows = conv
        self.nrows = len(conv)
        self.ncols = len(conv[0]) if conv else 0
        if any(len(r) != self.ncols for r in conv):
            raise DomainError("ragged matrix")

    # -- constructors -----------------------------------------------------------

    @classmethod
    def identity(cls, field, n):
        return cls(field, [[field.one if i == j else field.zero
                            for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, n, m=None):
        m = n if m is None else m
        return cls(field, [[field.zero] * m for _ in range(n)])

    @classmethod
    def companion(cls, poly):
        """Companion matrix of a monic polynomial: subdiagonal ones, last
        column the negated coefficients."""
        if not poly.is_monic():
            raise DomainError("companion matrix needs a monic polynomial")
        F = poly.field
        n = poly.degree
        rows = [[F.zero] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = F.one
        for i in range(n):
            rows[i][n - 1] = F.neg(poly.coeffs[i])
        return cls(F, rows)

    @classmethod
    def block_diag(cls, field, blocks):
        n = sum(b.nrows for b in blocks)
        out = cls.zeros(field, n)
        off = 0
        for b in blocks:
            for i in range(b.nrows):
                for j in range(b.ncols):
                    out.rows[off + i][off + j] = b.rows[i][j]
            off += b.nrows
        return out

    def copy(self):
        return Matrix(self.field, [row[:] for row in self.rows])

    # -- basic operations -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected Matrix")
        if other.field.signature != self.field.signature:
            raise TowerMismatchError("matrices over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        F = self.field
        return Matrix(F, [[F.add(a, b) for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        other = self._check(other)
        F = self.field
        return Matrix(F, [[F.sub(a, b) for a, b in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)])

    def __mul__(self, other):
        other = self._check(other)
        if self.ncols != other.nrows:
            raise DomainError("matrix size mismatch")
        F = self.field
        bt = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in bt:
                acc = F.zero
                for a, b in zip(row, col):
                    if a != F.zero and b != F.zero:
                        acc = F.add(acc, F.mul(a, b))
                new.append(acc)
            out.append(new)
        return Matrix(F, out)

    def mat_vec(self, vec):
        F = self.field
        out = []
        for row in self.rows:
            acc = F.zero
            for a, b in zip(row, vec):
                if a != F.zero and b != F.zero:
                    acc = F.add(acc, F.mul(a, b))
            out.append(acc)
        return out

    def pow(self, e):
        if self.nrows != self.ncols:
            raise DomainError("powers need a square matrix")
        out = Matrix.identity(self.field, self.nrows)
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def map_entries(self, fn, field=None):
        return Matrix(field or self.field,
                      [[fn(c) for c in row] for row in self.rows])

    def entry(self, i, j):
        return FieldElem(self.field, self.rows[i][j])

    def is_square(self):
        return self.nrows == self.ncols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field.signature == other.field.signature
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field.signature, tuple(tuple(r) for r in self.rows)))

    def __str__(self):
        F = self.field
        return "\n".join("[" + ", ".join(F.fmt(c) for c in row) + "]"
                         for row in self.rows)

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field!r})"

    def to_json(self):
        F = self.field
        return [[F.fmt(c) for c in row] for row in self.rows]


def _rref(F, rows):
    """Reduced row echelon form in place; returns pivot column list."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != F.zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != F.zero:
                t = rows[i][c]
                rows[i] = [F.sub(x, F.mul(t, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(M):
    rows = [row[:] for row in M.rows]
    return len(_rref(M.field, rows))


def kernel(M):
    """Echelonized basis of the right kernel, as a list of raw vectors."""
    F = M.field
    rows = [row[:] for row in M.rows]
    pivots = _rref(F, rows)
    free = [c for c in range(M.ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [F.zero] * M.ncols
        v[fc] = F.one
        for r, pc in enumerate(pivots):
            v[pc] = F.neg(rows[r][fc])
        basis.append(v)
    return basis


def solve(M, b):
    """One solution x of M x = b, or None when inconsistent."""
    F = M.field
    rows = [row[:] + [bv] for row, bv in zip(M.rows, b)]
    pivots = _rref(F, rows)
    if M.ncols in pivots:
        return None
    x = [F.zero] * M.ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][-1]
    return x


def det(M):
    if not M.is_square():
        raise DomainError("determinant needs a square matrix")
    F = M.field
    rows = [row[:] for row in M.rows]
    n = M.nrows
    sign_flip = False
    acc = F.one
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if rows[i][c] != F.zero:
                pivot = i
                break
        if pivot is None:
            return FieldElem(F, F.zero)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign_flip = not sign_flip
        acc = F.mul(acc, rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c] != F.zero:
                t = F.mul(rows[i][c], inv)
                rows[i] = [F.sub(x, F.mul(t, y))
                           for x, y in zip(rows[i], rows[c])]
    if sign_flip:
        acc = F.neg(acc)
    return FieldElem(F, acc)


def is_invertible(M):
    return M.is_square() and rank(M) == M.nrows


def char_poly(M):
    """det(Y*id - M) by Hessenberg reduction and the leading-minor recurrence."""
    if not M.is_square():
        raise DomainError("characteristic polynomial needs a square matrix")
    F = M.field
    n = M.nrows
    H = [row[:] for row in M.rows]
    for j in range(n - 2):
        pivot = None
        for i in range(j + 1, n):
            if H[i][j] != F.zero:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != j + 1:
            H[j + 1], H[pivot] = H[pivot], H[j + 1]
            for row in H:
                row[j + 1], row[pivot] = row[pivot], row[j + 1]
        inv = F.inv(H[j + 1][j])
        for i in range(j + 2, n):
            if H[i][j] != F.zero:
                t = F.mul(H[i][j], inv)
                H[i] = [F.sub(x, F.mul(t, y)) for x, y in zip(H[i], H[j + 1])]
                for k in range(n):
                    H[k][j + 1] = F.add(H[k][j + 1], F.mul(t, H[k][i]))
    y = CommPoly.gen(F)
    polys = [CommPoly.one(F)]
    for m in range(1, n + 1):
        term = (y - CommPoly(F, [H[m - 1][m - 1]])) * polys[m - 1]
        prod = F.one
        for k in range(m - 1, 0, -1):
            prod = F.mul(prod, H[k][k - 1])
            coef = F.mul(H[k - 1][m - 1], prod)
            if coef != F.zero:
                term = term - CommPoly(F, [coef]) * polys[k - 1]
        polys.append(term)
    return polys[n]


def poly_at(poly, M):
    """Evaluate a commutative polynomial at a square matrix (Horner)."""
    F = M.field
    n = M.nrows
    out = Matrix.zeros(F, n)
    for c in reversed(poly.coeffs):
        out = out * M
        for i in range(n):
            out.rows[i][i] = F.add(out.rows[i][i], c)
    return out


def _local_min_poly(M, v):
    """Minimal monic polynomial annihilating the vector v under M."""
    F = M.field
    n = M.nrows
    basis_rows = []
    history = []
    cur = v
    while True:
        # try to express cur in the span of the previous iterates
        if history:
            cols = list(zip(*history))
            A = Matrix(F, [list(c) for c in cols])
            x = solve(A, cur)
            if x is not None:
                coeffs = [F.neg(c) for c in x] + [F.one]
                return CommPoly(F, coeffs)
        history.append(cur)
        if len(history) > n:
            raise RuntimeError("Krylov iteration exceeded dimension")
        cur = M.mat_vec(cur)


def _lcm(a, b):
    g = commalg.gcd(a, b)
    return ((a * b) // g).monic()


def min_poly(M):
    """Minimal polynomial: lcm of local minimal polynomials of seeded random
    vectors (falling back on the standard basis), then a verification
    evaluation at M."""
    if not M.is_square():
        raise DomainError("minimal polynomial needs a square matrix")
    F = M.field
    n = M.nrows
    if n == 0:
        return CommPoly.one(F)
    rng = random.Random(0x517EC)
    candidates = [[F.rand(rng) for _ in range(n)] for _ in range(3)]
    for i in range(n):
        e = [F.zero] * n
        e[i] = F.one
        candidates.append(e)
    acc = CommPoly.one(F)
    zero = Matrix.zeros(F, n)
    for v in candidates:
        if all(c == F.zero for c in v):
            continue
        acc = _lcm(acc, _local_min_poly(M, v))
        if acc.degree == n:
            break
    assert poly_at(acc, M) == zero, "minimal polynomial failed verification"
    return acc


def _smith_diagonal(entries):
    """Diagonal of the Smith normal form of a square CommPoly matrix."""
    A = [row[:] for row in entries]
    n = len(A)
    diag = []
    for t in range(n):
        while True:
            piv = None
            for i in range(t, n):
                for j in range(t, n):
                    e = A[i][j]
                    if not e.is_zero() and (piv is None
                                            or e.degree < A[piv[0]][piv[1]].degree):
                        piv = (i, j)
            if piv is None:
                break
            i0, j0 = piv
            A[t], A[i0] = A[i0], A[t]
            for row in A:
                row[t], row[j0] = row[j0], row[t]
            dirty = False
            for i in range(t + 1, n):
                if not A[i][t].is_zero():
                    q = A[i][t] // A[t][t]
                    if not q.is_zero():
                        A[i] = [A[i][j] - q * A[t][j] for j in range(n)]
                    if not A[i][t].is_zero():
                        dirty = True
            for j in range(t + 1, n):
                if not A[t][j].is_zero():
                    q = A[t][j] // A[t][t]
                    if not q.is_zero():
                        for i in range(n):
                            A[i][j] = A[i][j] - q * A[i][t]
                    if not A[t][j].is_zero():
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    if not (A[i][j] % A[t][t]).is_zero():
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            A[t] = [A[t][j] + A[offender][j] for j in range(n)]
        diag.append(A[t][t].monic() if not A[t][t].is_zero() else A[t][t])
    return diag


def invariant_factors(M):
    """Invariant factor chain f_1 | f_2 | ... | f_k of a square matrix,
    ascending, with product the characteristic polynomial."""
    if not M.is_square():
        raise DomainError("invariant factors need a square matrix")
    F = M.field
    y = CommPoly.gen(F)
    entries = [[(y if i == j else CommPoly.zero(F)) - CommPoly(F, [M.rows[i][j]])
                for j in range(M.ncols)] for i in range(M.nrows)]
    diag = _smith_diagonal(entries)
    return [d for d in diag if d.degree >= 1]


def frobenius_normal_form(M):
    """(invariant factors, rational canonical form): block-diagonal companion
    matrices of the invariant factors, ordered by increasing degree."""
    factors = invariant_factors(M)
    blocks = [Matrix.companion(f) for f in factors]
    return factors, Matrix.block_diag(M.field, blocks)


def jordan_partition(M, Q):
    """Descending Jordan block-length partition of M for the irreducible
    class polynomial Q (computed from the rank sequence of Q(M)^k)."""
    F = M.field
    n = M.nrows
    delta = Q.degree
    QM = poly_at(Q, M)
    counts = []
    prev_ker = 0
    power = Matrix.identity(F, n)
    while True:
        power = power * QM
        ker = n - rank(power)
        blocks_ge = (ker - prev_ker) // delta
        if blocks_ge == 0:
            break
        counts.append(blocks_ge)
        if ker == n:
            break
        prev_ker = ker
    lengths = []
    for j in range(1, counts[0] + 1 if counts else 0):
        lengths.append(sum(1 for c in counts if c >= j))
    lengths.sort(reverse=True)
    return tuple(lengths)


def primary_type(M):
    """Per irreducible divisor Q of the minimal polynomial, the descending
    Jordan block-length partition; sorted by the class key."""
    mp = min_poly(M)
    out = []
    for Q, _ in commalg.factor(mp):
        out.append((Q, jordan_partition(M, Q)))
    out.sort(key=lambda t: t[0].key())
    return out


def moore_det(elems):
    """Determinant of the matrix with rows (b_i, b_i^q, ..., b_i^(q^(d-1)))."""
    if not elems:
        raise DomainError("moore_det needs at least one element")
    field = elems[0].field
    d = len(elems)
    rows = []
    for b in elems:
        if b.field.signature != field.signature:
            raise TowerMismatchError("elements of different fields")
        row = [b.raw]
        for _ in range(d - 1):
            row.append(field.frobenius(row[-1], 1))
        rows.append(row)
    return det(Matrix(field, rows))
