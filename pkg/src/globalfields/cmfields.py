"""Imaginary-quadratic class data and the explicit-generator test harness.

Class numbers come from exhaustive enumeration of primitive reduced
binary quadratic forms.  Fundamental units of the real companion field
are exact (x + y*sqrt(d))/z triples verified against their Pell
relation.  The j-invariant is evaluated from internally regenerated
integer q-series (Eisenstein E4 cubed over the discriminant product),
which makes the classical leading coefficients 744 and 196884 a
correctness gate rather than an input.  On top of these sit three
generator constructions: the classical CM value j(sqrt(-d)), the
exponential value log(eps) * e^(2*pi*i*sqrt(d)), and its degree-two
polynomial generalization.  The harness only ever *reports* whether the
algebraicity detector finds a relation; it never asserts the
conjectural formulas as facts.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .exactnum import (
    IntegerRelation,
    PrecisionComplex,
    continued_fraction_sqrt,
    find_integer_relation,
    relation_candidates,
)

__all__ = [
    "QuadForm",
    "class_number",
    "fundamental_discriminants",
    "QuadUnit",
    "fundamental_unit",
    "j_series_coefficients",
    "j_invariant",
    "ClassPolynomial",
    "hilbert_class_polynomial",
    "QuadFieldData",
    "GeneratorCandidate",
    "cm_generator",
    "exp_generator",
    "conjecture_generator",
    "generator_record",
    "FORMULA_CM",
    "FORMULA_EXP",
    "FORMULA_POLY",
]

FORMULA_CM = "4.0"
FORMULA_EXP = "4.3"
FORMULA_POLY = "4.4"


# ---------------------------------------------------------------------------
# Binary quadratic forms and class numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class QuadForm:
    """Integral binary quadratic form a x^2 + b xy + c y^2, D < 0, a > 0."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("positive definite forms need a > 0")
        if self.discriminant >= 0:
            raise ValueError("form discriminant must be negative")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), self.c) == 1

    def reduce(self) -> "QuadForm":
        """Gauss reduction; preserves the discriminant."""
        a, b, c = self.a, self.b, self.c
        while True:
            if c < a:
                a, b, c = c, -b, a
                continue
            if b > a or b <= -a:
                # normalize b into (-a, a]
                r = (a - b) // (2 * a)
                b2 = b + 2 * r * a
                c = a * r * r + b * r + c
                b = b2
                continue
            break
        if (abs(b) == a or a == c) and b < 0:
            b = -b
        form = QuadForm(a, b, c)
        assert form.discriminant == self.discriminant
        return form

    def cm_point(self, prec: int) -> PrecisionComplex:
        """The root (-b + sqrt(D)) / (2a) in the upper half-plane."""
        D = self.discriminant
        re = PrecisionComplex(Fraction(-self.b, 2 * self.a), 0, prec=prec)
        im = PrecisionComplex.sqrt_int(-D, prec) / (2 * self.a)
        return re + im * PrecisionComplex(0, 1, prec=prec)


def class_number(D: int):
    """(h, reduced forms) for a negative discriminant.

    h counts primitive reduced forms, enumerated exhaustively over
    |b| <= sqrt(|D|/3); this is the form class number of the order of
    discriminant D.
    """
    if D >= 0:
        raise ValueError("discriminant must be negative")
    if D % 4 not in (0, 1):
        raise ValueError(f"invalid discriminant residue: {D} is not 0 or 1 mod 4")
    forms = []
    b_bound = math.isqrt(abs(D) // 3)
    for b in range(D % 2, b_bound + 1, 2):
        m4 = b * b - D
        if m4 % 4:
            continue
        m = m4 // 4
        a = max(b, 1)
        while a * a <= m:
            if m % a == 0:
                c = m // a
                if math.gcd(math.gcd(a, b), c) == 1:
                    forms.append(QuadForm(a, b, c))
                    if 0 < b < a and a < c:
                        forms.append(QuadForm(a, -b, c))
            a += 1
    forms.sort(key=lambda f: (f.a, f.b, f.c))
    return len(forms), forms


def fundamental_discriminants(limit: int):
    """All fundamental D < 0 with |D| <= limit, descending from -3."""
    out = []
    for negD in range(3, limit + 1):
        D = -negD
        if D % 4 == 1 and _is_squarefree(negD):
            out.append(D)
        elif D % 4 == 0:
            m = D // 4
            if m % 4 in (2, 3) and _is_squarefree(abs(m)):
                out.append(D)
    return out


def _is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Fundamental units
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadUnit:
    """Unit (x + y*sqrt(d))/z of a real quadratic order, exact."""

    d: int
    x: int
    y: int
    z: int  # 1 or 2
    order: str  # "maximal" or "pell"

    @property
    def norm(self) -> int:
        num = self.x * self.x - self.d * self.y * self.y
        if num % (self.z * self.z):
            raise ArithmeticError("unit fails integrality of its norm")
        return num // (self.z * self.z)

    def pell_check(self) -> bool:
        return self.norm in (1, -1)

    def value(self, prec: int) -> PrecisionComplex:
        root = PrecisionComplex.sqrt_int(self.d, prec)
        return (PrecisionComplex(self.x, 0, prec=prec) + root * self.y) / self.z

    def regulator(self, prec: int) -> PrecisionComplex:
        return self.value(prec).log()

    def __str__(self):
        core = f"{self.x} + {self.y}*sqrt({self.d})"
        return f"({core})/{self.z}" if self.z != 1 else core


def fundamental_unit(d: int, order: str = "maximal") -> QuadUnit:
    """Smallest unit > 1 of the chosen order of Q(sqrt(d)), exactly.

    order="maximal" uses the ring of integers (half-integer units appear
    for d = 1 mod 4); order="pell" restricts to Z[sqrt(d)].  The Pell
    relation of the result is verified exactly before returning.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    s = math.isqrt(d)
    if s * s == d:
        raise ValueError(f"{d} is a perfect square")
    if not _is_squarefree(d):
        raise ValueError(f"{d} is not squarefree")
    if order not in ("maximal", "pell"):
        raise ValueError(f"unknown order {order!r}")

    cf = continued_fraction_sqrt(d)
    ell = len(cf.period)
    p, q = cf.convergents(ell)[ell - 1]
    assert p * p - d * q * q == (-1) ** ell
    pell_unit = QuadUnit(d=d, x=p, y=q, z=1, order="pell")

    if order == "pell" or d % 4 != 1:
        unit = QuadUnit(d=d, x=p, y=q, z=1, order=order)
        assert unit.pell_check()
        return unit

    # maximal order, d = 1 mod 4: minimal y with x^2 - d y^2 = +-4
    for y in range(1, 2 * q + 1):
        dy2 = d * y * y
        for target in (dy2 - 4, dy2 + 4):
            if target < 0:
                continue
            x = math.isqrt(target)
            if x * x != target:
                continue
            if (x - y) % 2:
                continue
            if x % 2 == 0 and y % 2 == 0:
                unit = QuadUnit(d=d, x=x // 2, y=y // 2, z=1, order="maximal")
            else:
                unit = QuadUnit(d=d, x=x, y=y, z=2, order="maximal")
            assert unit.pell_check()
            return unit
    raise ArithmeticError(f"no fundamental unit found below the Pell bound for d={d}")


# ---------------------------------------------------------------------------
# j-invariant from regenerated integer q-series
# ---------------------------------------------------------------------------


def _mul_trunc(a, b, n):
    out = [0] * n
    for i, x in enumerate(a):
        if x and i < n:
            top = min(len(b), n - i)
            for j in range(top):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _pow_trunc(a, e, n):
    result = [0] * n
    result[0] = 1
    base = list(a[:n]) + [0] * max(0, n - len(a))
    while e:
        if e & 1:
            result = _mul_trunc(result, base, n)
        e >>= 1
        if e:
            base = _mul_trunc(base, base, n)
    return result


def _inv_trunc(u, n):
    if u[0] != 1:
        raise ValueError("series inversion needs unit constant term 1")
    v = [0] * n
    v[0] = 1
    for k in range(1, n):
        acc = 0
        for i in range(1, min(k, len(u) - 1) + 1):
            if u[i]:
                acc += u[i] * v[k - i]
        v[k] = -acc
    return v


@functools.lru_cache(maxsize=8)
def _j_series(n: int):
    """Coefficients (c_-1, c_0, ..., c_{n-2}) of the j q-expansion.

    E4 = 1 + 240 sum sigma_3(m) q^m; the weight-12 cusp form is
    q * prod (1-q^m)^24 with the product generated by the pentagonal
    number recurrence; j = E4^3 / (cusp form), all exact integers.
    """
    sigma3 = [0] * n
    for dd in range(1, n):
        cube = dd * dd * dd
        for m in range(dd, n, dd):
            sigma3[m] += cube
    e4 = [1] + [240 * sigma3[m] for m in range(1, n)]

    euler = [0] * n
    euler[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= n and g2 >= n:
            break
        sign = -1 if k % 2 else 1
        for g in (g1, g2):
            if g < n:
                euler[g] += sign
        k += 1
    disc_over_q = _pow_trunc(euler, 24, n)

    numer = _mul_trunc(_pow_trunc(e4, 3, n), _inv_trunc(disc_over_q, n), n)
    return tuple(numer)  # numer[k] is the coefficient of q^(k-1) in j


def j_series_coefficients(count: int):
    """First `count` coefficients of j starting at the 1/q term."""
    return list(_j_series(max(count, 2))[:count])


def _terms_needed(im_tau: float, bits: int) -> int:
    # the tail term is ~ e^(4 pi sqrt(N)) * |q|^N, so require
    # N*2*pi*Im - 4*pi*sqrt(N) >= bits*ln2 (not just |q|^N < 2^-bits,
    # which undershoots once the coefficient growth kicks in)
    target = bits * math.log(2)
    two_pi_im = 2 * math.pi * im_tau
    n = max(8, int(target / two_pi_im) + 4)
    while n * two_pi_im - 4 * math.pi * math.sqrt(n) < target:
        n += 1 + n // 16
    return n


def _j_eval(tau: PrecisionComplex, bits: int):
    """j(tau) at `bits` working precision, with the truncation order used."""
    im = float(tau.imag)
    n = _terms_needed(im, bits + 32)
    series = _j_series(n)
    ctx = gmpy2.context(precision=bits)
    two_pi = ctx.mul(gmpy2.mpfr(2, bits), ctx.const_pi())
    two_pi_i = gmpy2.mpc(0, two_pi, precision=(bits, bits))
    q = ctx.exp(ctx.mul(two_pi_i, gmpy2.mpc(tau.real, tau.imag, precision=(bits, bits))))
    acc = gmpy2.mpc(0, 0, precision=(bits, bits))
    for c in reversed(series[1:]):
        acc = ctx.add(ctx.mul(acc, q), gmpy2.mpc(c, precision=(bits, bits)))
    acc = ctx.mul(acc, q)
    acc = ctx.add(acc, gmpy2.mpc(series[0], precision=(bits, bits)))
    # series starts at 1/q: shift everything down one power of q
    acc = ctx.div(acc, q)
    return acc, n


def j_invariant(tau: PrecisionComplex, precision: int = None) -> PrecisionComplex:
    """j(tau) for tau in the upper half-plane, validated at two precisions."""
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half-plane")
    prec = precision or tau.prec
    low, _ = _j_eval(tau, prec)
    high, n = _j_eval(tau, prec + 32)
    cmp_ctx = gmpy2.context(precision=prec + 32)
    diff = cmp_ctx.abs(cmp_ctx.sub(gmpy2.mpc(low, precision=(prec + 32,) * 2), high))
    scale = max(1, abs(cmp_ctx.abs(high)))
    warning = None
    value = low
    if diff > gmpy2.exp2(-(prec - 16)) * scale:
        value = high
        warning = (
            f"j evaluations at {prec} and {prec + 32} bits disagreed by {diff}; "
            f"kept the higher precision (truncation order {n})"
        )
    return PrecisionComplex(gmpy2.mpfr(value.real, prec), gmpy2.mpfr(value.imag, prec),
                            prec=prec, warning=warning)


# ---------------------------------------------------------------------------
# Hilbert class polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassPolynomial:
    """Monic integer polynomial with the form j-values as roots."""

    D: int
    h: int
    coeffs: tuple  # c_0 .. c_h, with c_h = 1
    precision_used: int
    max_rounding_distance: Fraction
    forms: tuple

    def __str__(self):
        parts = []
        for i in range(self.h, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "1" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if i == 0:
                parts.append(f"{c:+d}")
            elif c == 1:
                parts.append(f"+{mono}")
            else:
                parts.append(f"{c:+d}*{mono}")
        joined = " ".join(parts)
        return joined[1:] if joined.startswith("+") else joined


class PrecisionExhausted(ArithmeticError):
    """Class polynomial coefficients failed to round to integers."""


def hilbert_class_polynomial(D: int, precision: int = None,
                             max_doublings: int = 8) -> ClassPolynomial:
    """Monic integer polynomial of degree h(D) built from the form j-values.

    Starts at max(256, 20*h*sqrt(|D|)) bits and doubles the precision
    until every coefficient rounds to an integer with distance < 1e-10
    (the distance check is exact rational arithmetic on the mantissas).
    """
    h, forms = class_number(D)
    prec = precision or max(256, int(20 * h * math.isqrt(abs(D))) + 1)
    tolerance = Fraction(1, 10 ** 10)
    for _ in range(max_doublings + 1):
        jvals = [j_invariant(f.cm_point(prec), prec) for f in forms]
        poly = [PrecisionComplex(1, 0, prec=prec)]
        for jv in jvals:
            nxt = [PrecisionComplex(0, 0, prec=prec)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * jv
            poly = nxt
        ints = []
        max_dist = Fraction(0)
        ok = True
        for c in poly:
            re = c.real_fraction()
            im = abs(c.imag_fraction())
            n = _round_fraction(re)
            dist = max(abs(re - n), im)
            max_dist = max(max_dist, dist)
            if dist >= tolerance:
                ok = False
                break
            ints.append(n)
        if ok:
            assert ints[-1] == 1 and len(ints) == h + 1
            return ClassPolynomial(
                D=D,
                h=h,
                coeffs=tuple(ints),
                precision_used=prec,
                max_rounding_distance=max_dist,
                forms=tuple(forms),
            )
        prec *= 2
    raise PrecisionExhausted(
        f"coefficients of the class polynomial for D={D} failed to round "
        f"(last distance {max_dist})"
    )


def _round_fraction(fr: Fraction) -> int:
    n, r = divmod(fr.numerator, fr.denominator)
    if 2 * r >= fr.denominator:
        n += 1
    return n


# ---------------------------------------------------------------------------
# Generator candidates (CM value, exponential value, polynomial form)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadFieldData:
    """Arithmetic data of Q(sqrt(-d)) and its real companion Q(sqrt(d))."""

    d: int
    discriminant: int  # order discriminant used for h
    h: int
    unit: QuadUnit = None
    regulator: PrecisionComplex = None


@dataclass(frozen=True)
class GeneratorCandidate:
    """A candidate generator value with its algebraicity report."""

    value: PrecisionComplex
    formula: str
    field_data: QuadFieldData
    relation: IntegerRelation = None
    degree_scan: tuple = ()  # (degree, accepted?, best residual str)

    def found(self) -> bool:
        return self.relation is not None


def _scan_degrees(value: PrecisionComplex, max_degree: int, precision: int):
    """Per-degree relation search summary for the report."""
    out = []
    for k in range(1, max_degree + 1):
        rel = find_integer_relation(value, k, precision)
        cands = relation_candidates(value, k, precision)
        best = str(cands[0][1]) if cands else "n/a"
        out.append((k, rel is not None, best))
    return tuple(out)


def cm_generator(d: int, precision: int = 256, max_degree: int = None,
                 scan: bool = False) -> GeneratorCandidate:
    """The classical CM generator value j(sqrt(-d)) with its relation report."""
    if d < 1 or not _is_squarefree(d):
        raise ValueError("d must be a squarefree positive integer")
    h, _ = class_number(-4 * d)
    max_degree = max_degree or 2 * h
    tau = PrecisionComplex(0, 0, prec=precision) + \
        PrecisionComplex(0, 1, prec=precision) * PrecisionComplex.sqrt_int(d, precision)
    value = j_invariant(tau, precision)
    relation = find_integer_relation(value, max_degree, precision)
    fd = QuadFieldData(d=d, discriminant=-4 * d, h=h)
    degree_scan = _scan_degrees(value, max_degree, precision) if scan else ()
    return GeneratorCandidate(value=value, formula=FORMULA_CM, field_data=fd,
                              relation=relation, degree_scan=degree_scan)


def _exp_value(theta: PrecisionComplex, mu: PrecisionComplex,
               precision: int) -> PrecisionComplex:
    """mu * e^(2*pi*theta): the shared core of the exponential formulas."""
    two_pi = PrecisionComplex.pi(precision) * 2
    return mu * (two_pi * theta).exp()


def exp_generator(d: int, precision: int = 256, max_degree: int = None,
                  unit_order: str = "maximal", inner_branch: int = 0,
                  scan: bool = True) -> GeneratorCandidate:
    """The exponential candidate log(eps) * e^(2*pi*i*sqrt(d)), reported only.

    inner_branch m replaces log(eps) by log(eps) + 2*pi*i*m (the branch
    choice of the inner logarithm); the principal branch is m = 0.
    """
    if d < 2 or not _is_squarefree(d):
        raise ValueError("d must be squarefree and >= 2")
    unit = fundamental_unit(d, unit_order)
    regulator = unit.regulator(precision)
    if regulator.real == 1 and regulator.imag == 0:
        raise ValueError("log(eps) = 1 makes the iterated logarithm singular")
    mu = regulator
    if inner_branch:
        mu = mu + PrecisionComplex(0, 1, prec=precision) * \
            (PrecisionComplex.pi(precision) * (2 * inner_branch))
    theta = PrecisionComplex(0, 1, prec=precision) * PrecisionComplex.sqrt_int(d, precision)
    value = _exp_value(theta, mu, precision)
    h, _ = class_number(-4 * d)
    max_degree = max_degree or 2 * h
    relation = find_integer_relation(value, max_degree, precision)
    fd = QuadFieldData(d=d, discriminant=-4 * d, h=h, unit=unit, regulator=regulator)
    degree_scan = _scan_degrees(value, max_degree, precision) if scan else ()
    return GeneratorCandidate(value=value, formula=FORMULA_EXP, field_data=fd,
                              relation=relation, degree_scan=degree_scan)


def conjecture_generator(p_coeffs, precision: int = 256, max_degree: int = None,
                         unit_order: str = "maximal",
                         scan: bool = True) -> GeneratorCandidate:
    """Degree-two polynomial form of the exponential generator.

    p_coeffs = (a1, a0) encodes p(x) = x^2 - a1 x + a0 with a1, a0 >= 0;
    the sign-flipped companion q(x) = x^2 - a1 x - a0 must have a real
    quadratic splitting field, whose fundamental unit supplies the
    scaling.  theta is the root of p in the closed upper half-plane.
    Only n = 2 is in scope; longer coefficient lists are rejected.
    """
    coeffs = list(p_coeffs)
    if len(coeffs) != 2:
        raise ValueError(f"only quadratic p(x) is supported, got n = {len(coeffs)}")
    a1, a0 = coeffs
    if a1 < 0 or a0 < 0:
        raise ValueError("coefficients a1, a0 must be nonnegative")
    disc_p = a1 * a1 - 4 * a0
    disc_q = a1 * a1 + 4 * a0
    root = math.isqrt(disc_q) if disc_q >= 0 else -1
    if disc_q <= 0 or root * root == disc_q:
        raise ValueError(
            "the sign-flipped companion polynomial must have a real quadratic "
            "splitting field"
        )
    d_eff = _squarefree_part(disc_q)
    unit = fundamental_unit(d_eff, unit_order)
    regulator = unit.regulator(precision)

    half_a1 = PrecisionComplex(Fraction(a1, 2), 0, prec=precision)
    if disc_p < 0:
        theta = half_a1 + PrecisionComplex(0, 1, prec=precision) * \
            (PrecisionComplex.sqrt_int(-disc_p, precision) / 2)
        h, _ = class_number(disc_p)
    else:
        theta = half_a1 + PrecisionComplex.sqrt_int(disc_p, precision) / 2
        h = 2  # no class-number shortcut on the real boundary; fixed scan depth
    value = _exp_value(theta, regulator, precision)
    max_degree = max_degree or 2 * h
    relation = find_integer_relation(value, max_degree, precision)
    fd = QuadFieldData(d=d_eff, discriminant=disc_p, h=h, unit=unit, regulator=regulator)
    degree_scan = _scan_degrees(value, max_degree, precision) if scan else ()
    return GeneratorCandidate(value=value, formula=FORMULA_POLY, field_data=fd,
                              relation=relation, degree_scan=degree_scan)


def _squarefree_part(n: int) -> int:
    out = 1
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e % 2:
            out *= d
        d += 1
    return out * n


def generator_record(cand: GeneratorCandidate) -> dict:
    """Serializable per-candidate report record (decimal strings only)."""
    fd = cand.field_data
    rel = cand.relation
    return {
        "formula": cand.formula,
        "d": fd.d,
        "discriminant": fd.discriminant,
        "h": fd.h,
        "epsilon": str(fd.unit) if fd.unit else None,
        "regulator": str(fd.regulator.real) if fd.regulator else None,
        "value": cand.value.decimal_str(),
        "precision": cand.value.prec,
        "relation_found": rel is not None,
        "candidate_polynomial": rel.polynomial_str() if rel else None,
        "relation_coefficients": list(rel.coeffs) if rel else None,
        "residual": str(rel.residual) if rel else None,
        "degree_scan": [
            {"degree": k, "accepted": acc, "best_residual": best}
            for k, acc, best in cand.degree_scan
        ],
        "warning": cand.value.warning,
    }
