"""Exact and arbitrary-precision scalar kernel.

Integers and rationals use Python's built-in ``int`` and
``fractions.Fraction`` (arbitrary size, always exact, rationals kept in
lowest terms with positive denominator by construction).

``PrecisionComplex`` is an immutable complex scalar backed by gmpy2
(MPFR/MPC) that carries its working precision in bits.  Every operation
goes through an explicit gmpy2 context so the declared precision is
never silently widened or narrowed by ambient state; binary operations
produce results at the minimum of the operand precisions.  Each
transcendental evaluation is repeated at 32 extra bits and the two
results compared; on disagreement beyond ``2**(-prec+8)`` the
higher-precision value (rounded back) wins and a warning string is
attached to the result.

The module also hosts the periodic continued fraction of square roots
(exact surd arithmetic, exact period detection) and lattice-based
integer relation detection (hand-rolled integral LLL, delta = 0.99).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

__all__ = [
    "PrecisionComplex",
    "SqrtContinuedFraction",
    "continued_fraction_sqrt",
    "IntegerRelation",
    "find_integer_relation",
    "relation_candidates",
    "lll_reduce",
]

_MIN_PREC = 2
_GUARD_BITS = 32
_AGREE_SLACK = 8  # disagreement threshold is 2**(-prec + _AGREE_SLACK)


_MPFR = type(gmpy2.mpfr(0))
_MPZ = type(gmpy2.mpz(0))


def _ctx(prec):
    return gmpy2.context(precision=prec)


def _to_mpfr(value, prec):
    """Convert int/Fraction/str/mpfr to an mpfr at the given precision."""
    if isinstance(value, float):
        raise TypeError("binary floats are ambiguous; pass str, int or Fraction")
    if isinstance(value, (int, str, Fraction, _MPFR, _MPZ)):
        return gmpy2.mpfr(value, prec)
    raise TypeError(f"cannot build a precision value from {type(value).__name__}")


def _exact_fraction(x) -> Fraction:
    """The exact rational value of a (finite) mpfr."""
    m, e = x.as_mantissa_exp()
    m = int(m)
    e = int(e)
    if e >= 0:
        return Fraction(m * (1 << e))
    return Fraction(m, 1 << (-e))


class PrecisionComplex:
    """Arbitrary-precision complex number with an explicit bit precision."""

    __slots__ = ("_z", "prec", "warning")

    def __init__(self, real=0, imag=0, prec=256, warning=None):
        if prec < _MIN_PREC:
            raise ValueError(f"precision must be >= {_MIN_PREC} bits, got {prec}")
        re = _to_mpfr(real, prec)
        im = _to_mpfr(imag, prec)
        object.__setattr__(self, "_z", gmpy2.mpc(re, im, precision=(prec, prec)))
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "warning", warning)

    def __setattr__(self, name, value):
        raise AttributeError("PrecisionComplex is immutable")

    @classmethod
    def _wrap(cls, z, prec, warning=None):
        self = object.__new__(cls)
        object.__setattr__(self, "_z", gmpy2.mpc(z, precision=(prec, prec)))
        object.__setattr__(self, "prec", prec)
        object.__setattr__(self, "warning", warning)
        return self

    # -- structure ----------------------------------------------------

    @property
    def real(self):
        return self._z.real

    @property
    def imag(self):
        return self._z.imag

    def is_real(self) -> bool:
        return self._z.imag == 0

    def real_fraction(self) -> Fraction:
        return _exact_fraction(self._z.real)

    def imag_fraction(self) -> Fraction:
        return _exact_fraction(self._z.imag)

    def __repr__(self):
        return f"PrecisionComplex({self._z.real!r}, {self._z.imag!r}, prec={self.prec})"

    def decimal_str(self) -> str:
        """Deterministic decimal rendering 're+imj' at full precision."""
        return f"{self._z.real}{'+' if self._z.imag >= 0 else ''}{self._z.imag}j"

    def __eq__(self, other):
        if not isinstance(other, PrecisionComplex):
            return NotImplemented
        return self.prec == other.prec and self._z == other._z

    __hash__ = None

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, PrecisionComplex):
            return other
        if isinstance(other, (int, Fraction)):
            # exact inputs adopt our precision, so they never narrow it
            return PrecisionComplex(other, 0, prec=self.prec)
        return None

    def _binary(self, other, op):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        prec = min(self.prec, rhs.prec)
        value = op(_ctx(prec), self._z, rhs._z)
        return PrecisionComplex._wrap(value, prec, self.warning or rhs.warning)

    def __add__(self, other):
        return self._binary(other, lambda c, a, b: c.add(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda c, a, b: c.sub(a, b))

    def __rsub__(self, other):
        rhs = self._coerce(other)
        return NotImplemented if rhs is None else rhs.__sub__(self)

    def __mul__(self, other):
        return self._binary(other, lambda c, a, b: c.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda c, a, b: c.div(a, b))

    def __rtruediv__(self, other):
        rhs = self._coerce(other)
        return NotImplemented if rhs is None else rhs.__truediv__(self)

    def __neg__(self):
        return PrecisionComplex._wrap(_ctx(self.prec).minus(self._z), self.prec, self.warning)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        ctx = _ctx(self.prec)
        result = gmpy2.mpc(1, 0, precision=(self.prec, self.prec))
        base = self._z
        e = exponent
        while e:
            if e & 1:
                result = ctx.mul(result, base)
            e >>= 1
            if e:
                base = ctx.mul(base, base)
        return PrecisionComplex._wrap(result, self.prec, self.warning)

    def conjugate(self):
        return PrecisionComplex._wrap(_ctx(self.prec).conj(self._z), self.prec, self.warning)

    def abs(self) -> "PrecisionComplex":
        return PrecisionComplex._wrap(_ctx(self.prec).abs(self._z), self.prec, self.warning)

    # -- transcendentals ----------------------------------------------

    def _checked(self, op):
        """Evaluate op at prec and prec+32; escalate on disagreement."""
        prec = self.prec
        low = op(_ctx(prec), self._z)
        hi_in = gmpy2.mpc(self._z, precision=(prec + _GUARD_BITS, prec + _GUARD_BITS))
        high = op(_ctx(prec + _GUARD_BITS), hi_in)
        cmp_ctx = _ctx(prec + _GUARD_BITS)
        diff = cmp_ctx.abs(cmp_ctx.sub(gmpy2.mpc(low, precision=(prec + _GUARD_BITS,) * 2), high))
        tol = gmpy2.mpfr(1, 16) if prec <= _AGREE_SLACK else gmpy2.exp2(-(prec - _AGREE_SLACK))
        if diff > tol:
            return PrecisionComplex._wrap(
                high, prec,
                warning=f"transcendental check: {prec}-bit and {prec + _GUARD_BITS}-bit "
                        f"evaluations disagreed by {diff}; kept the higher-precision value",
            )
        return PrecisionComplex._wrap(low, prec, self.warning)

    def exp(self):
        return self._checked(lambda c, z: c.exp(z))

    def log(self):
        """Principal branch logarithm."""
        return self._checked(lambda c, z: c.log(z))

    def sqrt(self):
        """Principal square root (complex-aware)."""
        return self._checked(lambda c, z: c.sqrt(z))

    @classmethod
    def pi(cls, prec) -> "PrecisionComplex":
        cmp_ctx = _ctx(prec + _GUARD_BITS)
        low = _ctx(prec).const_pi()
        high = cmp_ctx.const_pi()
        diff = cmp_ctx.abs(cmp_ctx.sub(gmpy2.mpfr(low, prec + _GUARD_BITS), high))
        warning = None
        value = low
        if diff > gmpy2.exp2(-(prec - _AGREE_SLACK)):
            value = gmpy2.mpfr(high, prec)
            warning = "pi evaluations disagreed between precisions"
        return cls._wrap(gmpy2.mpc(value, precision=(prec, prec)), prec, warning)

    @classmethod
    def sqrt_int(cls, n: int, prec) -> "PrecisionComplex":
        """Real square root of a nonnegative integer."""
        if n < 0:
            raise ValueError("sqrt_int takes a nonnegative integer")
        root = _ctx(prec).sqrt(gmpy2.mpfr(n, prec))
        return cls._wrap(gmpy2.mpc(root, precision=(prec, prec)), prec)


# ---------------------------------------------------------------------------
# Continued fraction of sqrt(d)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SqrtContinuedFraction:
    """Periodic continued fraction [a0; a1, ..., al] of sqrt(d)."""

    d: int
    a0: int
    period: tuple

    def __str__(self):
        body = ",".join(str(a) for a in self.period)
        return f"[{self.a0}; ({body})]"

    def terms(self, count: int):
        """First `count` partial quotients a0, a1, ..."""
        out = [self.a0]
        i = 0
        while len(out) < count:
            out.append(self.period[i % len(self.period)])
            i += 1
        return out[:count]

    def convergents(self, count: int):
        """First `count` convergents (p_k, q_k) as exact integer pairs."""
        pairs = []
        p_prev, q_prev = 1, 0
        p, q = self.a0, 1
        pairs.append((p, q))
        i = 0
        while len(pairs) < count:
            a = self.period[i % len(self.period)]
            p, p_prev = a * p + p_prev, p
            q, q_prev = a * q + q_prev, q
            pairs.append((p, q))
            i += 1
        return pairs


def continued_fraction_sqrt(d: int) -> SqrtContinuedFraction:
    """Exact periodic continued fraction expansion of sqrt(d).

    Uses the exact surd recurrence on (P + sqrt(d))/Q triples, so the
    period is detected by state recurrence, never by floating guesses.
    Rejects d < 2 and perfect squares.
    """
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    s = math.isqrt(d)
    if s * s == d:
        raise ValueError(f"d must not be a perfect square, got {d}")
    a0 = s
    # state for the surd (P + sqrt(d)) / Q; invariant Q | d - P*P
    period = []
    p, q = a0, d - a0 * a0
    first_state = (p, q)
    while True:
        a = (p + s) // q
        period.append(a)
        p = a * q - p
        q = (d - p * p) // q
        if (p, q) == first_state:
            break
    return SqrtContinuedFraction(d=d, a0=a0, period=tuple(period))


# ---------------------------------------------------------------------------
# Integral LLL and integer relation detection
# ---------------------------------------------------------------------------


def lll_reduce(rows, delta_num=99, delta_den=100):
    """LLL-reduce integer row vectors in place semantics (returns new list).

    All-integer variant (exact Gram-Schmidt bookkeeping via the d_i and
    lambda_{i,j} integers), so no floating error can corrupt the basis.
    Rows must be linearly independent.
    """
    b = [list(map(int, row)) for row in rows]
    n = len(b)
    if n <= 1:
        return b
    ncols = len(b[0])
    if any(len(row) != ncols for row in b):
        raise ValueError("rows must have equal length")

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    # d[0] = 1, d[i] = Gram determinant of b[0..i-1]; lam[i][j] for j < i
    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = dot(b[i], b[j])
            for k in range(j):
                u = (d[k + 1] * u - lam[i][k] * lam[j][k]) // d[k]
            if j < i:
                lam[i][j] = u
            else:
                d[i + 1] = u
                if u <= 0:
                    raise ValueError("rows are linearly dependent")

    def reduce_row(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap_rows(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        mu = lam[k][k - 1]
        new_dk = (d[k - 1] * d[k + 1] + mu * mu) // d[k]
        for i in range(k + 1, n):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - mu * t) // d[k]
            lam[i][k - 1] = (new_dk * t + mu * lam[i][k]) // d[k + 1]
        d[k] = new_dk

    k = 1
    while k < n:
        reduce_row(k, k - 1)
        mu = lam[k][k - 1]
        if delta_den * d[k + 1] * d[k - 1] < delta_num * d[k] * d[k] - delta_den * mu * mu:
            swap_rows(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                reduce_row(k, l)
            k += 1
    return b


@dataclass(frozen=True)
class IntegerRelation:
    """A detected relation sum(c_i * z**i) ~ 0 with primitive coefficients."""

    coeffs: tuple
    residual: object  # gmpy2.mpfr, nonnegative
    degree_bound: int
    precision: int

    def __post_init__(self):
        if not any(self.coeffs):
            raise ValueError("relation coefficients must not all vanish")
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, abs(c))
        if g != 1:
            raise ValueError("relation coefficients must have content 1")

    @property
    def degree(self) -> int:
        deg = len(self.coeffs) - 1
        while deg > 0 and self.coeffs[deg] == 0:
            deg -= 1
        return deg

    def polynomial_str(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i == 0:
                term = str(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = f"-{mono}"
            else:
                term = f"{c}*{mono}"
            parts.append(term)
        out = " + ".join(parts).replace("+ -", "- ")
        return out


def _normalize_coeffs(coeffs):
    """Strip trailing zeros, divide out content, make the top sign positive."""
    cs = list(coeffs)
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
    g = 0
    for c in cs:
        g = math.gcd(g, abs(c))
    if g == 0:
        return None
    cs = [c // g for c in cs]
    if cs[-1] < 0:
        cs = [-c for c in cs]
    return tuple(cs)


def _scaled_round(x, bits: int) -> int:
    """round(x * 2**bits) computed exactly from the mpfr mantissa."""
    frac = _exact_fraction(x) * (1 << bits)
    n, r = divmod(frac.numerator, frac.denominator)
    # round half away from zero; exactness of the tie direction is immaterial
    if 2 * r >= frac.denominator:
        n += 1
    return n


def _eval_residual(coeffs, z: PrecisionComplex, prec: int):
    ctx = _ctx(prec)
    acc = gmpy2.mpc(0, 0, precision=(prec, prec))
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, z._z), gmpy2.mpc(c, precision=(prec, prec)))
    return ctx.abs(acc)


def relation_candidates(z: PrecisionComplex, max_degree: int, precision: int = 256):
    """LLL-reduced relation candidates for z: [(coeffs, residual)], best first.

    Every reduced lattice row is reported after content/sign
    normalization, with its residual |sum c_i z**i| re-evaluated at the
    working precision; no acceptance thresholds are applied here.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if precision < 64:
        raise ValueError("precision must be >= 64 bits")
    if not isinstance(z, PrecisionComplex):
        raise TypeError("z must be a PrecisionComplex")
    prec = min(precision, z.prec)
    n = max_degree
    ctx = _ctx(prec)

    powers = [gmpy2.mpc(1, 0, precision=(prec, prec))]
    for _ in range(n):
        powers.append(ctx.mul(powers[-1], z._z))

    rows = []
    for i in range(n + 1):
        row = [0] * (n + 1)
        row[i] = 1
        row.append(_scaled_round(powers[i].real, prec))
        row.append(_scaled_round(powers[i].imag, prec))
        rows.append(row)

    reduced = lll_reduce(rows)
    seen = set()
    out = []
    for row in reduced:
        coeffs = _normalize_coeffs(row[: n + 1])
        if coeffs is None or coeffs in seen:
            continue
        seen.add(coeffs)
        out.append((coeffs, _eval_residual(coeffs, z, prec)))
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def _accept_candidate(coeffs, residual, digits: int, max_degree: int, prec: int) -> bool:
    """The relation acceptance gate (residual and height thresholds)."""
    height = max(abs(c) for c in coeffs)
    # |c| < 10**(digits/4), sharpened to |c| < 10**(digits/(2n)) for n > 2.
    # The sharpening is forced by a counting argument: among vectors of
    # height H some achieve residuals of order H**(-n), so beyond
    # 10**(digits/(2n)) pure lattice noise slips under the residual gate
    # (observed in practice for pi at degree 6, 256 bits).
    ten_digits = 10 ** digits
    height_exp = max(4, 2 * max_degree)
    if height ** 4 >= ten_digits or height ** height_exp >= ten_digits:
        return False
    # residual < 10**(-digits/2)  <=>  residual**2 * 10**digits < 1
    ctx = _ctx(prec)
    scaled = ctx.mul(ctx.mul(residual, residual), gmpy2.mpfr(ten_digits, prec))
    return scaled < 1


def find_integer_relation(z, max_degree: int, precision: int = 256):
    """Search for integers c_i, not all zero, with sum(c_i z**i) ~ 0.

    Exact rational inputs (int or Fraction) short-circuit to their
    degree-1 relation with residual 0.  Otherwise the LLL candidates
    are screened through the acceptance gate (residual below
    10**(-digits/2), height below the degree-adjusted bound, digits =
    floor(precision*log10(2))) and the lowest-degree survivor wins.
    Returns None when nothing passes; that is a result, not an error.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    if precision < 64:
        raise ValueError("precision must be >= 64 bits")
    if isinstance(z, (int, Fraction)):
        frac = Fraction(z)
        coeffs = _normalize_coeffs((-frac.numerator, frac.denominator))
        return IntegerRelation(
            coeffs=coeffs,
            residual=gmpy2.mpfr(0, precision),
            degree_bound=max_degree,
            precision=precision,
        )
    prec = min(precision, z.prec)
    digits = int(prec * math.log10(2))
    best = None
    for coeffs, residual in relation_candidates(z, max_degree, precision):
        if not _accept_candidate(coeffs, residual, digits, max_degree, prec):
            continue
        degree = len(coeffs) - 1
        height = max(abs(c) for c in coeffs)
        key = (degree, height, residual, coeffs)
        if best is None or key < best[0]:
            best = (key, coeffs, residual)
    if best is None:
        return None
    _, coeffs, residual = best
    return IntegerRelation(
        coeffs=coeffs, residual=residual, degree_bound=max_degree, precision=prec
    )
