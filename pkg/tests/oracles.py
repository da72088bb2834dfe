"""Independent oracles shared by the test modules.

Everything here is deliberately written from first principles (exact
rational surd arithmetic, brute-force enumeration, dense polynomial
expansion) so the tests never reuse the code paths they are checking.
"""

from __future__ import annotations

import math
from fractions import Fraction


class QuadSurd:
    """Exact a + b*sqrt(d) with rational a, b; d a fixed nonsquare."""

    def __init__(self, d, a, b=0):
        self.d = d
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __eq__(self, other):
        return self.d == other.d and self.a == other.a and self.b == other.b

    def __add__(self, other):
        if isinstance(other, int):
            other = QuadSurd(self.d, other)
        return QuadSurd(self.d, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        if isinstance(other, int):
            other = QuadSurd(self.d, other)
        return QuadSurd(self.d, self.a - other.a, self.b - other.b)

    def __mul__(self, other):
        if isinstance(other, int):
            other = QuadSurd(self.d, other)
        return QuadSurd(
            self.d,
            self.a * other.a + self.d * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def inverse(self):
        denom = self.a * self.a - self.d * self.b * self.b
        if denom == 0:
            raise ZeroDivisionError
        return QuadSurd(self.d, self.a / denom, -self.b / denom)

    def floor(self):
        """Exact floor via integer square-root comparisons."""
        # a + b*sqrt(d) >= n  <=>  b*sqrt(d) >= n - a
        lo, hi = -10 ** 18, 10 ** 18
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._ge_int(mid):
                lo = mid
            else:
                hi = mid - 1
        return lo

    def _ge_int(self, n):
        rhs = Fraction(n) - self.a
        if self.b == 0:
            return rhs <= 0
        if self.b > 0:
            if rhs <= 0:
                return True
            # b*sqrt(d) >= rhs > 0  <=>  b^2 d >= rhs^2
            return self.b * self.b * self.d >= rhs * rhs
        if rhs >= 0:
            return False
        return self.b * self.b * self.d <= rhs * rhs


def surd_continued_fraction(d, count):
    """First `count` partial quotients of sqrt(d) by exact surd recursion."""
    alpha = QuadSurd(d, 0, 1)
    out = []
    for _ in range(count):
        a = alpha.floor()
        out.append(a)
        frac = alpha - a
        alpha = frac.inverse()
    return out


def hermite_normal_form(rows):
    """Row-style HNF of an integer matrix (oracle for lattice equality)."""
    m = [list(map(int, r)) for r in rows]
    if not m:
        return []
    n_rows, n_cols = len(m), len(m[0])
    row = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row, n_rows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        # clear below with gcd steps
        for r in range(row + 1, n_rows):
            while m[r][col]:
                q = m[row][col] // m[r][col]
                m[row] = [a - q * b for a, b in zip(m[row], m[r])]
                m[row], m[r] = m[r], m[row]
        if m[row][col] < 0:
            m[row] = [-a for a in m[row]]
        for r in range(row):
            q = m[r][col] // m[row][col]
            if q:
                m[r] = [a - q * b for a, b in zip(m[r], m[row])]
        row += 1
        if row == n_rows:
            break
    return m


def gram_schmidt_fractions(rows):
    """Exact Gram-Schmidt (orthogonal vectors and mu coefficients)."""
    basis = [[Fraction(v) for v in row] for row in rows]
    ortho = []
    mus = []
    for i, vec in enumerate(basis):
        mu_row = []
        w = vec[:]
        for j in range(i):
            denom = sum(o * o for o in ortho[j])
            mu = sum(a * b for a, b in zip(vec, ortho[j])) / denom
            mu_row.append(mu)
            w = [a - mu * b for a, b in zip(w, ortho[j])]
        ortho.append(w)
        mus.append(mu_row)
    return ortho, mus


def brute_force_reduced_forms(D):
    """All primitive reduced forms of discriminant D < 0, by raw scanning."""
    out = []
    a_bound = math.isqrt(abs(D) // 3) + 1
    for a in range(1, a_bound + 1):
        for b in range(-a, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            out.append((a, b, c))
    return sorted(out)


def dense_poly_mul(p, q):
    """Multiply {exponent_tuple: coeff} dicts over any exact coefficient ring."""
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            key = tuple(a + b for a, b in zip(e1, e2))
            v = c1 * c2
            if key in out:
                v = out[key] + v
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def dense_poly_pow(p, e, one_coeff):
    out = {(0,) * len(next(iter(p))): one_coeff}
    for _ in range(e):
        out = dense_poly_mul(out, p)
    return out
