"""Finite fields F_q (q = p^n), the polynomial ring F_q[T], and extensions.

F_q is modelled as F_p[u]/(modulus) with the lexicographically smallest
monic irreducible modulus of degree n (coefficients read as a base-p
integer), so every construction is deterministic without external
tables.  Elements are immutable coordinate vectors over F_p.

F_q[T] is dense with trimmed trailing zeros.  Factorization follows the
classical pipeline: squarefree decomposition, distinct-degree splitting,
then seeded Cantor-Zassenhaus equal-degree splitting.  Roots of
F_p-linear (additive) polynomials can alternatively be found as the
kernel of the induced F_p-linear map on the field, which serves as an
independent cross-check of the factorization route.
"""

from __future__ import annotations

import functools
import itertools
import random

import gmpy2

__all__ = [
    "FqConfig",
    "FqElement",
    "FqPoly",
    "FqRatFunc",
    "FieldEmbedding",
    "PolySyntaxError",
    "field",
    "residue_count",
    "residues",
    "factor",
    "is_irreducible",
    "extend",
    "poly_roots",
    "frobenius_linear_kernel",
    "parse_poly",
]


# ---------------------------------------------------------------------------
# Coefficient-list helpers over F_p (used for modulus bootstrap and inverses)
# ---------------------------------------------------------------------------


def _trim(cs):
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _padd(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        coef = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        q[shift] = coef
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * y) % p
        _trim(a)
    return _trim(q), a


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _ppowmod(base, e, mod, p):
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _pdivmod(_pmul(base, base, p), mod, p)[1]
    return result


def _p_is_irreducible(f, p):
    """Rabin test for f over F_p."""
    n = len(f) - 1
    if n <= 0:
        return False
    x = [0, 1]
    # x^(p^n) == x (mod f)
    h = x
    for _ in range(n):
        h = _ppowmod(h, p, f, p)
    if _pdivmod(_padd(h, [(-c) % p for c in x], p), f, p)[1]:
        return False
    for r in set(_prime_factors(n)):
        h = x
        for _ in range(n // r):
            h = _ppowmod(h, p, f, p)
        g = _pgcd(_padd(h, [(-c) % p for c in x], p), f, p)
        if len(g) - 1 != 0:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Field configuration
# ---------------------------------------------------------------------------


class FqConfig:
    """Immutable description of F_q = F_p[u]/(modulus), q = p^n."""

    __slots__ = ("p", "n", "q", "modulus", "_reductions")

    def __init__(self, p: int, n: int, modulus=None):
        if not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        if n < 1:
            raise ValueError("extension degree n must be >= 1")
        if modulus is None:
            modulus = _smallest_irreducible(p, n)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not _p_is_irreducible(list(modulus), p):
            raise ValueError("modulus is reducible over F_p")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "q", p ** n)
        object.__setattr__(self, "modulus", modulus)
        # u^k mod modulus for k = n .. 2n-2, as coordinate tuples
        reductions = []
        current = [(-c) % p for c in modulus[:-1]]
        reductions.append(tuple(current))
        for _ in range(n - 2):
            shifted = [0] + current
            if len(shifted) > n:
                top = shifted.pop()
                shifted = [(shifted[i] + top * reductions[0][i]) % p for i in range(n)]
            current = shifted + [0] * (n - len(shifted))
            reductions.append(tuple(current))
        object.__setattr__(self, "_reductions", tuple(reductions))

    def __setattr__(self, name, value):
        raise AttributeError("FqConfig is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, FqConfig)
            and self.p == other.p
            and self.n == other.n
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    def __repr__(self):
        return f"FqConfig(p={self.p}, n={self.n}, q={self.q})"

    # -- element constructors ------------------------------------------

    def element(self, coords) -> "FqElement":
        coords = tuple(c % self.p for c in coords)
        if len(coords) != self.n:
            coords = (coords + (0,) * self.n)[: self.n]
        return FqElement(self, coords)

    def zero(self) -> "FqElement":
        return self.element((0,) * self.n)

    def one(self) -> "FqElement":
        return self.element((1,) + (0,) * (self.n - 1))

    def gen(self) -> "FqElement":
        """The residue of u (a root of the modulus)."""
        if self.n == 1:
            return self.element(((-self.modulus[0]) % self.p,))
        return self.element((0, 1) + (0,) * (self.n - 2))

    def scalar(self, c: int) -> "FqElement":
        """Embed an integer via the prime subfield."""
        return self.element((c % self.p,) + (0,) * (self.n - 1))

    def elements(self):
        """All q elements, in lexicographic coordinate order."""
        for coords in itertools.product(range(self.p), repeat=self.n):
            yield FqElement(self, coords)


@functools.lru_cache(maxsize=None)
def _smallest_irreducible(p, n):
    """Lexicographically smallest monic irreducible of degree n over F_p.

    "Smallest" orders coefficient vectors (c_0, ..., c_{n-1}) by the
    base-p integer sum(c_i p^i), matching the usual minimal-encoding
    convention; Conway compatibility is deliberately not attempted.
    """
    if n == 1:
        return (0, 1)
    for value in range(p ** n):
        coeffs = []
        v = value
        for _ in range(n):
            coeffs.append(v % p)
            v //= p
        candidate = coeffs + [1]
        if _p_is_irreducible(candidate, p):
            return tuple(candidate)
    raise RuntimeError("unreachable: irreducibles of every degree exist")


@functools.lru_cache(maxsize=None)
def field(p: int, n: int = 1) -> FqConfig:
    """Shared FqConfig instances with the default modulus."""
    return FqConfig(p, n)


class FqElement:
    """Element of F_q as a coordinate vector over F_p."""

    __slots__ = ("config", "coords")

    def __init__(self, config: FqConfig, coords):
        object.__setattr__(self, "config", config)
        object.__setattr__(self, "coords", tuple(coords))

    def __setattr__(self, name, value):
        raise AttributeError("FqElement is immutable")

    def _check(self, other):
        if not isinstance(other, FqElement):
            raise TypeError(f"expected FqElement, got {type(other).__name__}")
        if other.config != self.config:
            raise ValueError("elements live in different fields")

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.config.scalar(other)
        if not isinstance(other, FqElement):
            return NotImplemented
        return self.config == other.config and self.coords == other.coords

    def __hash__(self):
        return hash((self.config, self.coords))

    def __add__(self, other):
        self._check(other)
        p = self.config.p
        return FqElement(
            self.config, tuple((a + b) % p for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check(other)
        p = self.config.p
        return FqElement(
            self.config, tuple((a - b) % p for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        p = self.config.p
        return FqElement(self.config, tuple((-a) % p for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            other = self.config.scalar(other)
        self._check(other)
        cfg = self.config
        p, n = cfg.p, cfg.n
        if n == 1:
            return FqElement(cfg, (self.coords[0] * other.coords[0] % p,))
        conv = [0] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    conv[i + j] = (conv[i + j] + a * b) % p
        out = list(conv[:n])
        for k in range(n, 2 * n - 1):
            c = conv[k]
            if c:
                red = cfg._reductions[k - n]
                for i in range(n):
                    out[i] = (out[i] + c * red[i]) % p
        return FqElement(cfg, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        p = self.config.p
        g, s = _p_ext_gcd(list(self.coords), list(self.config.modulus), p)
        if len(g) != 1:
            raise ArithmeticError("element not invertible (modulus reducible?)")
        inv_c = pow(g[0], -1, p)
        s = [x * inv_c % p for x in s]
        return self.config.element(tuple(s))

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self.config.scalar(other)
        self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.config.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self, k: int = 1):
        """self**(p**k)."""
        return self ** (self.config.p ** k)

    def key(self):
        return self.coords

    def __repr__(self):
        return f"FqElement({self.coords} over GF({self.config.q}))"

    def __str__(self):
        if self.config.n == 1:
            return str(self.coords[0])
        parts = []
        for i in range(self.config.n - 1, -1, -1):
            c = self.coords[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "u" if i == 1 else f"u^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts) if parts else "0"


def _p_ext_gcd(a, m, p):
    """(g, s) with s*a == g (mod m) over F_p."""
    r0, r1 = list(m), _trim(list(a))
    s0, s1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, [(-c) % p for c in _pmul(q, s1, p)], p)
    return r0, s0


# ---------------------------------------------------------------------------
# Polynomials over F_q
# ---------------------------------------------------------------------------


class FqPoly:
    """Dense polynomial in T over F_q; trailing zeros trimmed."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FqConfig, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("FqPoly is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_ints(cls, field: FqConfig, int_coeffs) -> "FqPoly":
        return cls(field, [field.scalar(c) for c in int_coeffs])

    @classmethod
    def zero(cls, field: FqConfig) -> "FqPoly":
        return cls(field, [])

    @classmethod
    def one(cls, field: FqConfig) -> "FqPoly":
        return cls(field, [field.one()])

    @classmethod
    def T(cls, field: FqConfig) -> "FqPoly":
        return cls(field, [field.zero(), field.one()])

    @classmethod
    def constant(cls, value: FqElement) -> "FqPoly":
        return cls(value.config, [value])

    # -- structure --------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def is_one(self):
        return len(self.coeffs) == 1 and self.coeffs[0] == self.field.one()

    def leading(self) -> FqElement:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def constant_term(self) -> FqElement:
        return self.coeffs[0] if self.coeffs else self.field.zero()

    def __eq__(self, other):
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def key(self):
        return (self.degree, tuple(c.key() for c in self.coeffs))

    # -- ring operations ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, FqPoly):
            raise TypeError(f"expected FqPoly, got {type(other).__name__}")
        if other.field != self.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        zero = self.field.zero()
        m = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [zero] * (m - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (m - len(other.coeffs))
        return FqPoly(self.field, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        self._check(other)
        zero = self.field.zero()
        m = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [zero] * (m - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (m - len(other.coeffs))
        return FqPoly(self.field, [x - y for x, y in zip(a, b)])

    def __neg__(self):
        return FqPoly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, FqElement):
            other = FqPoly.constant(other)
        self._check(other)
        if not self or not other:
            return FqPoly.zero(self.field)
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return FqPoly(self.field, out)

    def __divmod__(self, other):
        self._check(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        zero = self.field.zero()
        rem = list(self.coeffs)
        quo = [zero] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = other.leading().inverse()
        db = other.degree
        while len(rem) - 1 >= db and rem:
            shift = len(rem) - 1 - db
            c = rem[-1] * inv_lead
            quo[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * b
            while rem and not rem[-1]:
                rem.pop()
        return FqPoly(self.field, quo), FqPoly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = FqPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def pow_mod(self, e: int, mod: "FqPoly") -> "FqPoly":
        result = FqPoly.one(self.field) % mod
        base = self % mod
        while e:
            if e & 1:
                result = (result * base) % mod
            e >>= 1
            if e:
                base = (base * base) % mod
        return result

    def monic(self) -> "FqPoly":
        if not self:
            return self
        lead = self.leading()
        if lead == self.field.one():
            return self
        inv = lead.inverse()
        return FqPoly(self.field, [c * inv for c in self.coeffs])

    def gcd(self, other: "FqPoly") -> "FqPoly":
        self._check(other)
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def derivative(self) -> "FqPoly":
        cs = [
            self.coeffs[i] * i
            for i in range(1, len(self.coeffs))
        ]
        return FqPoly(self.field, cs)

    def evaluate(self, x: FqElement) -> FqElement:
        if x.config != self.field:
            raise ValueError("evaluation point must lie in the coefficient field")
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def frobenius(self, k: int = 1) -> "FqPoly":
        """self**(p**k), via the coefficientwise Frobenius identity."""
        if k == 0 or not self:
            return self
        stretch = self.field.p ** k
        zero = self.field.zero()
        out = [zero] * (self.degree * stretch + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * stretch] = c.frobenius(k)
        return FqPoly(self.field, out)

    # -- text form --------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c)
            wrapped = f"({cs})" if ("+" in cs or " " in cs) else cs
            if i == 0:
                parts.append(wrapped)
            else:
                mono = "T" if i == 1 else f"T^{i}"
                parts.append(mono if c == self.field.one() else f"{wrapped}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"FqPoly({self} over GF({self.field.q}))"


class PolySyntaxError(ValueError):
    """Raised on malformed polynomial text; carries the offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


def parse_poly(field_cfg: FqConfig, text: str) -> FqPoly:
    """Parse 'c_k*T^k + ...' with integer coefficients reduced mod p."""
    compact = []
    positions = []
    for i, ch in enumerate(text):
        if not ch.isspace():
            compact.append(ch)
            positions.append(i)
    s = "".join(compact)
    if not s:
        raise PolySyntaxError("empty polynomial", 0)

    def err(msg, j):
        raise PolySyntaxError(msg, positions[j] if j < len(positions) else len(text))

    coeff_map = {}
    i = 0
    first = True
    while i < len(s):
        sign = 1
        if s[i] in "+-":
            sign = -1 if s[i] == "-" else 1
            i += 1
        elif not first:
            err(f"expected '+' or '-', found {s[i]!r}", i)
        first = False
        if i >= len(s):
            err("dangling sign", i - 1)
        coeff = None
        if s[i].isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            coeff = int(s[i:j])
            i = j
            if i < len(s) and s[i] == "/":
                err("rational coefficients are not allowed over F_q", i)
            if i < len(s) and s[i] == "*":
                i += 1
                if i >= len(s) or s[i] != "T":
                    err("expected 'T' after '*'", i)
        exp = 0
        if i < len(s) and s[i] == "T":
            i += 1
            exp = 1
            if i < len(s) and s[i] == "^":
                i += 1
                if i >= len(s) or not s[i].isdigit():
                    err("expected exponent digits after '^'", i)
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                exp = int(s[i:j])
                i = j
        elif coeff is None:
            err(f"expected coefficient or 'T', found {s[i]!r}", i)
        if coeff is None:
            coeff = 1
        coeff_map[exp] = coeff_map.get(exp, 0) + sign * coeff
    if not coeff_map:
        raise PolySyntaxError("empty polynomial", 0)
    deg = max(coeff_map)
    return FqPoly.from_ints(field_cfg, [coeff_map.get(k, 0) for k in range(deg + 1)])


# ---------------------------------------------------------------------------
# Residue counting (the |F_q[T]/g| formula)
# ---------------------------------------------------------------------------


def residue_count(g: FqPoly) -> int:
    """|F_q[T] / g F_q[T]| = q**deg(g) for nonzero g."""
    if not g:
        raise ValueError("residue ring modulo zero is not finite")
    return g.field.q ** g.degree


def residues(g: FqPoly):
    """Brute-force enumeration of residue representatives mod g."""
    if not g:
        raise ValueError("residue ring modulo zero is not finite")
    cfg = g.field
    all_elems = list(cfg.elements())
    for combo in itertools.product(all_elems, repeat=g.degree):
        yield FqPoly(cfg, list(combo))


# ---------------------------------------------------------------------------
# Factorization: squarefree -> distinct degree -> Cantor-Zassenhaus
# ---------------------------------------------------------------------------


def _pth_root(f: FqPoly) -> FqPoly:
    """Inverse of x -> x**p on polynomials whose exponents are multiples of p."""
    cfg = f.field
    p = cfg.p
    coeffs = []
    for i in range(0, f.degree + 1, p):
        c = f.coeffs[i]
        coeffs.append(c.frobenius(cfg.n - 1) if cfg.n > 1 else c)
    return FqPoly(cfg, coeffs)


def _squarefree_parts(f: FqPoly):
    """Yield (squarefree factor, multiplicity); f monic nonconstant."""
    out = {}

    def accumulate(g, mult):
        if g.degree > 0:
            out[mult] = out.get(mult, FqPoly.one(g.field)) * g

    def run(f, scale):
        d = f.derivative()
        if not d:
            run(_pth_root(f), scale * f.field.p)
            return
        c = f.gcd(d)
        w = f // c
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            accumulate(w // y, i * scale)
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            run(_pth_root(c), scale * f.field.p)

    run(f, 1)
    return [(g, mult) for mult, g in sorted(out.items())]


def _distinct_degree(f: FqPoly):
    """Split squarefree monic f into products of equal-degree irreducibles."""
    cfg = f.field
    q = cfg.q
    out = []
    h = FqPoly.T(cfg)
    x = FqPoly.T(cfg)
    d = 0
    rest = f
    while rest.degree > 2 * (d + 1) - 1 and rest.degree > 0:
        d += 1
        h = h.pow_mod(q, rest)
        g = rest.gcd(h - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            h = h % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _equal_degree_split(f: FqPoly, d: int, rng: random.Random):
    """Cantor-Zassenhaus split of monic squarefree f, all factors of degree d."""
    cfg = f.field
    if f.degree == d:
        return [f]
    q, p, n = cfg.q, cfg.p, cfg.n
    while True:
        r = FqPoly(
            cfg,
            [cfg.element(tuple(rng.randrange(p) for _ in range(n))) for _ in range(f.degree)],
        )
        if r.degree < 1:
            continue
        if p == 2:
            # trace map sum r^(2^i), i < n*d
            s = FqPoly.zero(cfg)
            t = r % f
            for _ in range(n * d):
                s = (s + t) % f
                t = (t * t) % f
        else:
            s = r.pow_mod((q ** d - 1) // 2, f) - FqPoly.one(cfg)
        g = f.gcd(s)
        if 0 < g.degree < f.degree:
            return _equal_degree_split(g, d, rng) + _equal_degree_split(f // g, d, rng)


def is_irreducible(f: FqPoly) -> bool:
    """Rabin irreducibility test over F_q."""
    if f.degree <= 0:
        return False
    cfg = f.field
    q = cfg.q
    n = f.degree
    x = FqPoly.T(cfg)
    h = x
    for _ in range(n):
        h = h.pow_mod(q, f)
    if h % f != x % f:
        return False
    for r in set(_prime_factors(n)):
        h = x
        for _ in range(n // r):
            h = h.pow_mod(q, f)
        if f.gcd(h - x).degree != 0:
            return False
    return True


def factor(f: FqPoly, seed: int = 0):
    """Factor f into monic irreducibles with multiplicities.

    Returns a deterministically sorted list of (factor, multiplicity);
    the product of factor**multiplicity equals f up to the unit lc(f).
    Every returned factor is re-verified irreducible.
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if f.degree == 0:
        return []
    rng = random.Random(seed)
    monic = f.monic()
    out = []
    for sqfree, mult in _squarefree_parts(monic):
        for block, d in _distinct_degree(sqfree):
            for irr in _equal_degree_split(block, d, rng):
                irr = irr.monic()
                if not is_irreducible(irr):
                    raise ArithmeticError(f"factor verification failed for {irr}")
                out.append((irr, mult))
    out.sort(key=lambda t: t[0].key())
    return out


def poly_roots(f: FqPoly, seed: int = 0):
    """All roots of f lying in its own coefficient field, sorted."""
    if not f:
        raise ValueError("zero polynomial")
    cfg = f.field
    x = FqPoly.T(cfg)
    # gcd with x^q - x isolates the part that splits into linear factors
    xq = x.pow_mod(cfg.q, f)
    linear_part = f.gcd(xq - x)
    roots = []
    if f.coeffs and not f.coeffs[0]:
        roots.append(cfg.zero())
        while linear_part.coeffs and not linear_part.coeffs[0]:
            linear_part = FqPoly(cfg, linear_part.coeffs[1:])
    if linear_part.degree >= 1:
        rng = random.Random(seed)
        for g in _equal_degree_split(linear_part.monic(), 1, rng):
            roots.append(-g.constant_term())
    roots = sorted(set(roots), key=lambda e: e.key())
    return roots


# ---------------------------------------------------------------------------
# Field extensions with explicit embeddings
# ---------------------------------------------------------------------------


class FieldEmbedding:
    """Field homomorphism F_q -> F_{q^s} determined by the image of u."""

    __slots__ = ("base", "target", "gen_image")

    def __init__(self, base: FqConfig, target: FqConfig, gen_image: FqElement):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "gen_image", gen_image)

    def __setattr__(self, name, value):
        raise AttributeError("FieldEmbedding is immutable")

    def __call__(self, elem: FqElement) -> FqElement:
        if elem.config != self.base:
            raise ValueError("element does not belong to the embedding's base field")
        acc = self.target.zero()
        power = self.target.one()
        for c in elem.coords:
            if c:
                acc = acc + self.target.scalar(c) * power
            power = power * self.gen_image
        return acc

    def map_poly(self, f: FqPoly) -> FqPoly:
        """Apply the embedding coefficientwise to a polynomial in T."""
        return FqPoly(self.target, [self(c) for c in f.coeffs])


def extend(base: FqConfig, s: int):
    """F_{q^s} together with the embedding of F_q.

    The target field is F_p^(n*s) with the deterministic smallest
    modulus; the embedding sends u to the lexicographically smallest
    root of the base modulus in the target.
    """
    if s < 1:
        raise ValueError("extension degree must be >= 1")
    if s == 1:
        return base, FieldEmbedding(base, base, base.gen())
    target = field(base.p, base.n * s)
    base_modulus_in_target = FqPoly.from_ints(target, list(base.modulus))
    roots = poly_roots(base_modulus_in_target)
    if not roots:
        raise ArithmeticError("base modulus has no root in the extension")
    return target, FieldEmbedding(base, target, roots[0])


# ---------------------------------------------------------------------------
# Additive-polynomial root finding via F_p-linear kernels
# ---------------------------------------------------------------------------


def frobenius_linear_kernel(cfg: FqConfig, terms, enumeration_limit: int = 1 << 22):
    """Kernel of x -> sum c * x**(p**k) on cfg, as an explicit element list.

    `terms` is a list of (coefficient in cfg, frobenius exponent k).
    The map is F_p-linear, so its kernel is the nullspace of an n x n
    matrix over F_p; the returned list enumerates the whole kernel
    subspace, sorted by coordinates.
    """
    p, n = cfg.p, cfg.n
    cols = []
    for j in range(n):
        basis_vec = cfg.element(tuple(1 if i == j else 0 for i in range(n)))
        image = cfg.zero()
        for coeff, k in terms:
            image = image + coeff * basis_vec.frobenius(k)
        cols.append(image.coords)
    # matrix[i][j] = i-th coordinate of image of basis j
    matrix = [[cols[j][i] for j in range(n)] for i in range(n)]
    kernel_basis = _nullspace_mod_p(matrix, p)
    size = p ** len(kernel_basis)
    if size > enumeration_limit:
        raise ValueError(f"kernel too large to enumerate ({size} elements)")
    elems = []
    for combo in itertools.product(range(p), repeat=len(kernel_basis)):
        coords = [0] * n
        for c, vec in zip(combo, kernel_basis):
            if c:
                for i in range(n):
                    coords[i] = (coords[i] + c * vec[i]) % p
        elems.append(cfg.element(tuple(coords)))
    return sorted(set(elems), key=lambda e: e.key())


def _nullspace_mod_p(matrix, p):
    """Basis of the nullspace of a square matrix over F_p."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    pivots = {}
    row = 0
    for col in range(n):
        pivot = None
        for r in range(row, n):
            if m[r][col] % p:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [x * inv % p for x in m[row]]
        for r in range(n):
            if r != row and m[r][col] % p:
                factor_ = m[r][col]
                m[r] = [(a - factor_ * b) % p for a, b in zip(m[r], m[row])]
        pivots[col] = row
        row += 1
    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [0] * n
        vec[fc] = 1
        for col, r in pivots.items():
            vec[col] = (-m[r][fc]) % p
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------
# Rational functions over F_q (the field F_q(T))
# ---------------------------------------------------------------------------


class FqRatFunc:
    """Reduced fraction num/den of FqPoly with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: FqPoly, den: FqPoly = None):
        if den is None:
            den = FqPoly.one(num.field)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num.field != den.field:
            raise ValueError("numerator and denominator over different fields")
        if not num:
            den = FqPoly.one(num.field)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead_inv = den.leading().inverse()
            if den.leading() != den.field.one():
                num = num * FqPoly.constant(lead_inv)
                den = den * FqPoly.constant(lead_inv)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("FqRatFunc is immutable")

    @property
    def field(self):
        return self.num.field

    @classmethod
    def from_poly(cls, f: FqPoly):
        return cls(f)

    def is_polynomial(self):
        return self.den.is_one()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, FqPoly):
            other = FqRatFunc(other)
        if not isinstance(other, FqRatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, FqPoly):
            return FqRatFunc(other)
        if isinstance(other, FqElement):
            return FqRatFunc(FqPoly.constant(other))
        if isinstance(other, FqRatFunc):
            return other
        raise TypeError(f"cannot combine FqRatFunc with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return FqRatFunc(self.num + other.num, self.den)
        return FqRatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        other = self._coerce(other)
        return self + (-other)

    def __neg__(self):
        return FqRatFunc(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        if self.den.is_one() and other.den.is_one():
            out = FqRatFunc.__new__(FqRatFunc)
            object.__setattr__(out, "num", self.num * other.num)
            object.__setattr__(out, "den", self.den)
            return out
        return FqRatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero rational function")
        return FqRatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int):
        if e < 0:
            return (FqRatFunc(self.den, self.num)) ** (-e)
        return FqRatFunc(self.num ** e, self.den ** e)

    def frobenius(self, k: int = 1):
        out = FqRatFunc.__new__(FqRatFunc)
        object.__setattr__(out, "num", self.num.frobenius(k))
        object.__setattr__(out, "den", self.den.frobenius(k))
        return out

    def valuation_at(self, place: FqPoly) -> int:
        """Order of vanishing at the (irreducible) place."""
        if not self:
            raise ValueError("valuation of zero is +infinity")
        v = 0
        n = self.num
        while not n % place:
            n = n // place
            v += 1
        d = self.den
        while not d % place:
            d = d // place
            v -= 1
        return v

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"FqRatFunc({self})"
