"""Exact linear algebra over the rationals.

Matrices are immutable, entries are fractions.Fraction.  Everything here is
exact; no floating point anywhere.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction, str]

Q0 = Fraction(0)
Q1 = Fraction(1)


class InvalidInput(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


def rat(x: Scalar) -> Fraction:
    """Coerce ints, fractions or 'p/q' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


# ---------------------------------------------------------------------------
# vectors: plain tuples of Fraction

def vec(*xs: Scalar) -> tuple:
    return tuple(rat(x) for x in xs)


def as_vec(xs: Iterable[Scalar]) -> tuple:
    return tuple(rat(x) for x in xs)


def zero_vec(n: int) -> tuple:
    return (Q0,) * n


def basis_vec(n: int, i: int) -> tuple:
    return tuple(Q1 if j == i else Q0 for j in range(n))


def vadd(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Sequence[Fraction]) -> tuple:
    return tuple(-a for a in u)


def vscale(c: Scalar, u: Sequence[Fraction]) -> tuple:
    c = rat(c)
    return tuple(c * a for a in u)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    s = Q0
    for a, b in zip(u, v, strict=True):
        if a and b:
            s += a * b
    return s


def is_zero_vec(u: Sequence[Fraction]) -> bool:
    return all(not a for a in u)


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Immutable rational matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        rs = tuple(tuple(rat(x) for x in row) for row in rows)
        if rs and any(len(r) != len(rs[0]) for r in rs):
            raise InvalidInput("ragged rows")
        object.__setattr__(self, "rows", rs)
        object.__setattr__(self, "nrows", len(rs))
        object.__setattr__(self, "ncols", len(rs[0]) if rs else 0)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # constructors
    @classmethod
    def zeros(cls, m: int, n: int) -> "Mat":
        return cls([[Q0] * n for _ in range(m)])

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[Q1 if i == j else Q0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Iterable[Scalar]) -> "Mat":
        es = [rat(x) for x in entries]
        n = len(es)
        return cls([[es[i] if i == j else Q0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_cols(cls, cols: Sequence[Sequence[Scalar]]) -> "Mat":
        if not cols:
            return cls([])
        m = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(m)])

    @classmethod
    def block_diag(cls, *blocks: "Mat") -> "Mat":
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        rows = [[Q0] * n for _ in range(m)]
        r = c = 0
        for b in blocks:
            for i in range(b.nrows):
                rows[r + i][c:c + b.ncols] = list(b.rows[i])
            r += b.nrows
            c += b.ncols
        return cls(rows)

    @classmethod
    def block(cls, grid: Sequence[Sequence["Mat"]]) -> "Mat":
        rows = []
        for brow in grid:
            h = brow[0].nrows
            if any(b.nrows != h for b in brow):
                raise InvalidInput("block row height mismatch")
            for i in range(h):
                row = []
                for b in brow:
                    row.extend(b.rows[i])
                rows.append(row)
        return cls(rows)

    # access
    def __getitem__(self, key):
        if isinstance(key, tuple):
            i, j = key
            return self.rows[i][j]
        return self.rows[key]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def cols(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        return Mat([[self.rows[i][j] for j in col_idx] for i in row_idx])

    # algebra
    def __add__(self, other: "Mat") -> "Mat":
        self._shape_check(other)
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._shape_check(other)
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.rows])

    def __mul__(self, c: Scalar) -> "Mat":
        c = rat(c)
        return Mat([[c * a for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.ncols != other.nrows:
                raise InvalidInput("shape mismatch in product")
            ocols = other.rows
            out = []
            for row in self.rows:
                acc = [Q0] * other.ncols
                for k, a in enumerate(row):
                    if a:
                        orow = ocols[k]
                        for j, b in enumerate(orow):
                            if b:
                                acc[j] += a * b
                out.append(acc)
            return Mat(out)
        # matrix times vector
        v = tuple(other)
        if self.ncols != len(v):
            raise InvalidInput("shape mismatch in matvec")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return tuple(sum((row[j] * x for j, x in nz), Q0) for row in self.rows)

    @property
    def T(self) -> "Mat":
        return Mat(list(zip(*self.rows))) if self.rows else Mat([])

    def trace(self) -> Fraction:
        if self.nrows != self.ncols:
            raise InvalidInput("trace of non-square matrix")
        return sum((self.rows[i][i] for i in range(self.nrows)), Q0)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows) for j in range(i))

    def is_skew(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == -self.rows[j][i]
            for i in range(self.nrows) for j in range(i + 1))

    def __eq__(self, other) -> bool:
        return isinstance(other, Mat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Mat[{body}]"


def hstack(a: Mat, b: Mat) -> Mat:
    if a.nrows != b.nrows:
        raise InvalidInput("hstack height mismatch")
    return Mat([list(r1) + list(r2) for r1, r2 in zip(a.rows, b.rows)])


def vstack(a: Mat, b: Mat) -> Mat:
    if a.ncols != b.ncols and a.nrows and b.nrows:
        raise InvalidInput("vstack width mismatch")
    return Mat(list(a.rows) + list(b.rows))


def commutator(a: Mat, b: Mat) -> Mat:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# elimination


def rref(rows: Iterable[Sequence[Fraction]]):
    """Reduced row echelon form.  Returns (rows, pivot column list)."""
    work = [list(r) for r in rows]
    if not work:
        return [], []
    m, n = len(work), len(work[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if work[i][c]), None)
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        inv = Q1 / work[r][c]
        if inv != 1:
            work[r] = [inv * x for x in work[r]]
        prow = work[r]
        for i in range(m):
            if i != r and work[i][c]:
                f = work[i][c]
                row = work[i]
                for j in range(c, n):
                    if prow[j]:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in work if any(row)], pivots


def rank(M: Mat) -> int:
    return len(rref(M.rows)[0])


def nullity(M: Mat) -> int:
    return M.ncols - rank(M)


def nullspace(M: Mat) -> list:
    """Basis of the right kernel, echelon-style vectors."""
    rows, pivots = rref(M.rows)
    n = M.ncols
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Q0] * n
        v[f] = Q1
        for r, p in zip(rows, pivots):
            v[p] = -r[f]
        basis.append(tuple(v))
    return basis


def solve(M: Mat, b: Sequence[Fraction]):
    """One particular solution of M x = b, or None."""
    aug = [list(r) + [bv] for r, bv in zip(M.rows, b)]
    rows, pivots = rref(aug)
    n = M.ncols
    for r, p in zip(rows, pivots):
        if p == n:
            return None
    x = [Q0] * n
    for r, p in zip(rows, pivots):
        x[p] = r[n]
    return tuple(x)


def det(M: Mat) -> Fraction:
    if not M.is_square():
        raise InvalidInput("determinant of non-square matrix")
    n = M.nrows
    work = [list(r) for r in M.rows]
    d = Q1
    for c in range(n):
        p = next((i for i in range(c, n) if work[i][c]), None)
        if p is None:
            return Q0
        if p != c:
            work[c], work[p] = work[p], work[c]
            d = -d
        d *= work[c][c]
        inv = Q1 / work[c][c]
        prow = work[c]
        for i in range(c + 1, n):
            if work[i][c]:
                f = work[i][c] * inv
                row = work[i]
                for j in range(c, n):
                    if prow[j]:
                        row[j] -= f * prow[j]
    return d


def inverse(M: Mat) -> Mat:
    if not M.is_square():
        raise InvalidInput("inverse of non-square matrix")
    n = M.nrows
    aug = [list(r) + [Q1 if i == j else Q0 for j in range(n)]
           for i, r in enumerate(M.rows)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise InvalidInput("singular matrix")
    return Mat([r[n:] for r in rows[:n]])


def row_space_basis(vectors: Iterable[Sequence[Fraction]]) -> list:
    """RREF basis of the span of the given vectors."""
    rows, _ = rref(vectors)
    return list(rows)


def in_span(basis_rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> bool:
    before = row_space_basis(basis_rows)
    after = row_space_basis(list(before) + [tuple(v)])
    return len(after) == len(before)


# ---------------------------------------------------------------------------
# Smith normal form over the integers


@dataclass(frozen=True)
class SNFResult:
    U: Mat
    D: Mat
    V: Mat

    def diagonal(self) -> list:
        k = min(self.D.nrows, self.D.ncols)
        return [self.D.rows[i][i] for i in range(k)]


def snf(M: Mat) -> SNFResult:
    """Smith normal form with unimodular transforms, U @ M @ V == D.

    Diagonal entries are nonnegative and form a divisibility chain; zeros
    come last.
    """
    if not M.is_integer():
        raise InvalidInput("snf needs an integer matrix")
    m, n = M.nrows, M.ncols
    A = [[int(x) for x in row] for row in M.rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, f):
        # row dst += f * row src
        As, Ad = A[src], A[dst]
        for j in range(n):
            if As[j]:
                Ad[j] += f * As[j]
        Us, Ud = U[src], U[dst]
        for j in range(m):
            if Us[j]:
                Ud[j] += f * Us[j]

    def addmul_col(dst, src, f):
        for r in A:
            if r[src]:
                r[dst] += f * r[src]
        for r in V:
            if r[src]:
                r[dst] += f * r[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        # locate a nonzero pivot with smallest absolute value
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    addmul_row(i, t, -q)
                    if A[i][t]:
                        swap_rows(i, t)
                        dirty = True
            if dirty:
                continue
            # clear row t
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    addmul_col(j, t, -q)
                    if A[t][j]:
                        swap_cols(j, t)
                        dirty = True
            if not dirty:
                break
        # pivot must divide the remaining block
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % A[t][t]:
                    addmul_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if A[t][t] < 0:
            negate_row(t)
        t += 1

    return SNFResult(Mat(U), Mat(A), Mat(V))


def torsion_and_rank(M: Mat):
    """Cokernel data of an integer matrix: (free rank of coker, torsion list)."""
    res = snf(M)
    diag = [int(x) for x in res.diagonal()]
    nonzero = [d for d in diag if d]
    free = M.nrows - len(nonzero)
    torsion = [d for d in nonzero if d > 1]
    return free, torsion


# ---------------------------------------------------------------------------
# nilpotent exponential


def exp_nilpotent(N: Mat) -> Mat:
    """exp of a nilpotent rational matrix, exact.  Raises NotNilpotent."""
    if not N.is_square():
        raise InvalidInput("exp of non-square matrix")
    n = N.nrows
    out = Mat.identity(n)
    term = Mat.identity(n)
    for k in range(1, n + 1):
        term = term @ N
        if term.is_zero():
            return out
        out = out + term * Fraction(1, math.factorial(k))
    raise NotNilpotent("matrix is not nilpotent")


def is_nilpotent_mat(N: Mat) -> bool:
    if not N.is_square():
        return False
    P = N
    for _ in range(N.nrows):
        if P.is_zero():
            return True
        P = P @ N
    return P.is_zero()
