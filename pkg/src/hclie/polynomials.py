"""Polynomials over the rationals and matrix similarity invariants.

Coefficients are stored lowest degree first.  Invariant factors are computed
by Smith reduction of x*I - M over Q[x], so conjugacy tests over Q (and hence
over R, the invariants are field stable) are exact.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .linalg import InvalidInput, Mat, Q0, Q1, rat, nullspace, det


class Poly:
    """Dense univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            return Q0
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return Poly([c / lead for c in self.coeffs])

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero() or other.is_zero():
                return Poly()
            out = [Q0] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] += a * b
            return Poly(out)
        c = rat(other)
        return Poly([c * a for a in self.coeffs])

    __rmul__ = __mul__

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lead = other.coeffs[-1]
        if len(rem) - 1 < d:
            return Poly(), self
        quot = [Q0] * (len(rem) - d)
        for k in range(len(rem) - 1, d - 1, -1):
            if rem[k]:
                f = rem[k] / lead
                quot[k - d] = f
                for i, c in enumerate(other.coeffs):
                    rem[k - d + i] -= f * c
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def divides(self, other: "Poly") -> bool:
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def is_squarefree(self) -> bool:
        if self.degree <= 1:
            return True
        return self.gcd(self.derivative()).degree == 0

    def __call__(self, x):
        """Evaluate at a scalar or a square matrix (Horner)."""
        if isinstance(x, Mat):
            acc = Mat.zeros(x.nrows, x.ncols)
            for c in reversed(self.coeffs):
                acc = acc @ x + Mat.identity(x.nrows) * c
            return acc
        acc = Q0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def pow(self, k: int) -> "Poly":
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
                continue
            xs = "x" if i == 1 else f"x^{i}"
            if c == 1:
                parts.append(xs)
            elif c == -1:
                parts.append(f"-{xs}")
            else:
                parts.append(f"{c}{xs}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def poly_from_coeffs_highest(coeffs: Sequence) -> Poly:
    return Poly(list(reversed([rat(c) for c in coeffs])))


def prod(polys, start: Optional[Poly] = None) -> Poly:
    out = Poly((1,)) if start is None else start
    for p in polys:
        out = out * p
    return out


# ---------------------------------------------------------------------------
# matrix invariants


def char_poly(M: Mat) -> Poly:
    """Characteristic polynomial det(x I - M), monic, via Faddeev-LeVerrier."""
    if not M.is_square():
        raise InvalidInput("char_poly of non-square matrix")
    n = M.nrows
    coeffs = [Q0] * (n + 1)
    coeffs[n] = Q1
    Mk = Mat.identity(n)
    for k in range(1, n + 1):
        Mk = M @ Mk
        c = -Mk.trace() / k
        coeffs[n - k] = c
        if k < n:
            Mk = Mk + Mat.identity(n) * c
    return Poly(coeffs)


def min_poly(M: Mat) -> Poly:
    """Minimal polynomial, via the first linear dependence among powers."""
    if not M.is_square():
        raise InvalidInput("min_poly of non-square matrix")
    n = M.nrows
    if n == 0:
        return Poly((1,))

    def flatten(A):
        return [x for row in A.rows for x in row]

    # reduced echelon with expansion bookkeeping: each stored row knows its
    # expression in terms of the original power vectors
    stored = []  # (vector list, pivot index, expansion coeffs)
    P = Mat.identity(n)
    k = 0
    while True:
        v = flatten(P)
        expr = [Q0] * (k + 1)
        expr[k] = Q1
        for row, piv, ex in stored:
            f = v[piv]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
                expr = [a - f * b for a, b in
                        zip(expr, list(ex) + [Q0] * (len(expr) - len(ex)))]
        piv = next((i for i, a in enumerate(v) if a), None)
        if piv is None:
            # M^k = sum of lower powers, min poly found
            return Poly([-c for c in expr[:-1]] + [Q1])
        inv = Q1 / v[piv]
        v = [inv * a for a in v]
        expr = [inv * a for a in expr]
        stored.append((v, piv, expr))
        P = P @ M
        k += 1


def invariant_factors(M: Mat) -> list:
    """Nonconstant invariant factors of x I - M over Q[x], ascending.

    Their product is the characteristic polynomial and the last one is the
    minimal polynomial.
    """
    if not M.is_square():
        raise InvalidInput("invariant_factors of non-square matrix")
    n = M.nrows
    if n == 0:
        return []
    x = Poly.x()
    A = [[(x if i == j else Poly()) - Poly.constant(M.rows[i][j])
          for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]

    def addmul_row(dst, src, f: Poly):
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]

    def addmul_col(dst, src, f: Poly):
        for r in A:
            r[dst] = r[dst] + f * r[src]

    t = 0
    while t < n:
        best = None
        for i in range(t, n):
            for j in range(t, n):
                if not A[i][j].is_zero():
                    if best is None or A[i][j].degree < A[best[0]][best[1]].degree:
                        best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            dirty = False
            for i in range(t + 1, n):
                if not A[i][t].is_zero():
                    q, r = divmod(A[i][t], A[t][t])
                    addmul_row(i, t, -q)
                    if not A[i][t].is_zero():
                        swap_rows(i, t)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, n):
                if not A[t][j].is_zero():
                    q, r = divmod(A[t][j], A[t][t])
                    addmul_col(j, t, -q)
                    if not A[t][j].is_zero():
                        swap_cols(j, t)
                        dirty = True
            if not dirty:
                break
        fixed = True
        for i in range(t + 1, n):
            bad = next((j for j in range(t + 1, n)
                        if not (A[i][j] % A[t][t]).is_zero()), None)
            if bad is not None:
                addmul_row(t, i, Poly((1,)))
                fixed = False
                break
        if not fixed:
            continue
        t += 1

    diag = [A[i][i].monic() for i in range(n)]
    return [p for p in diag if p.degree >= 1]


def conjugate_over_field(M1: Mat, M2: Mat) -> bool:
    """True iff M1 and M2 are conjugate over Q, equivalently over R."""
    if M1.nrows != M2.nrows or not M1.is_square() or not M2.is_square():
        return False
    if char_poly(M1) != char_poly(M2):
        return False
    return invariant_factors(M1) == invariant_factors(M2)


def conjugator(M1: Mat, M2: Mat, tries: int = 200) -> Optional[Mat]:
    """An invertible rational P with P @ M1 == M2 @ P, if the matrices are
    conjugate.  Searches the Sylvester kernel for an invertible element."""
    if not conjugate_over_field(M1, M2):
        return None
    n = M1.nrows
    # kernel of X -> X M1 - M2 X, X flattened row major
    rows = []
    for a in range(n):
        for b in range(n):
            row = [Q0] * (n * n)
            for j in range(n):
                row[a * n + j] += M1.rows[j][b]
            for i in range(n):
                row[i * n + b] -= M2.rows[a][i]
            rows.append(row)
    basis = nullspace(Mat(rows))

    def unflatten(v):
        return Mat([v[i * n:(i + 1) * n] for i in range(n)])

    for v in basis:
        P = unflatten(list(v))
        if det(P):
            return P
    rng = random.Random(20240811)
    for _ in range(tries):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        v = [Q0] * (n * n)
        for c, b in zip(coeffs, basis):
            if c:
                v = [x + c * y for x, y in zip(v, b)]
        P = unflatten(v)
        if det(P):
            return P
    return None


# ---------------------------------------------------------------------------
# rational roots and radicals


def integer_nth_root(a: int, k: int) -> Optional[int]:
    """Exact nonnegative k-th root of a >= 0, or None."""
    if a < 0:
        return None
    if a in (0, 1):
        return a
    r = round(a ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == a:
            return cand
    return None


def rational_kth_roots(r: Fraction, k: int) -> list:
    """All rational solutions c of c**k == r."""
    if k <= 0:
        raise InvalidInput("k must be positive")
    if r == 0:
        return [Q0]
    if r < 0 and k % 2 == 0:
        return []
    p, q = abs(r.numerator), r.denominator
    rp = integer_nth_root(p, k)
    rq = integer_nth_root(q, k)
    if rp is None or rq is None:
        return []
    root = Fraction(rp, rq)
    if k % 2 == 1:
        return [root if r > 0 else -root]
    return [root, -root]


def rational_sqrt(r: Fraction) -> Optional[Fraction]:
    roots = rational_kth_roots(r, 2)
    return max(roots) if roots else None


def rational_roots(p: Poly) -> list:
    """All rational roots of p, each listed once."""
    if p.is_zero():
        raise InvalidInput("zero polynomial")
    # clear denominators
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ics = [int(c * den) for c in p.coeffs]
    # strip x^k factor
    shift = 0
    while ics[shift] == 0:
        shift += 1
    roots = [Q0] if shift else []
    ics = ics[shift:]
    if len(ics) == 1:
        return roots
    a0, an = abs(ics[0]), abs(ics[-1])

    def divisors(m):
        ds = set()
        d = 1
        while d * d <= m:
            if m % d == 0:
                ds.add(d)
                ds.add(m // d)
            d += 1
        return ds

    q = Poly([Fraction(c) for c in ics])
    for num in divisors(a0):
        for dnm in divisors(an):
            for sign in (1, -1):
                c = Fraction(sign * num, dnm)
                if q(c) == 0 and c not in roots:
                    roots.append(c)
    return roots


# ---------------------------------------------------------------------------
# cyclotomic polynomials and finite order


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> Poly:
    num = Poly([-1] + [0] * (k - 1) + [1])  # x^k - 1
    for d in range(1, k):
        if k % d == 0:
            num = num // cyclotomic(d)
    return num


def euler_phi(k: int) -> int:
    out = k
    p = 2
    m = k
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


def matrix_order(M: Mat) -> Optional[int]:
    """Multiplicative order of M, or None if infinite."""
    if not M.is_square():
        raise InvalidInput("order of non-square matrix")
    m = min_poly(M)
    rem = m
    ks = []
    k = 1
    deg = m.degree
    while not rem.is_constant() and k <= 2 * deg * deg + 6:
        if euler_phi(k) <= rem.degree:
            c = cyclotomic(k)
            if c.divides(rem):
                q, r = divmod(rem, c)
                if c.divides(q):
                    return None  # repeated cyclotomic factor, not semisimple
                rem = q
                ks.append(k)
        k += 1
    if not rem.is_constant():
        return None
    out = 1
    for k in ks:
        out = out * k // math.gcd(out, k)
    return out
