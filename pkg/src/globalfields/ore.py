"""Twisted polynomial ring k<tau> with commutation tau*c = c^e*tau.

The twist exponent e is any power of the coefficient characteristic p,
so the same engine covers the Frobenius reading e = p and the classical
Carlitz reading e = q; coefficients may be field scalars, polynomials in
T, or rational functions in T (reduced fractions).  The conversion
between Ore polynomials and additive polynomials sum c_i x^(e^i), and
the skew Laurent normal form under b^sigma * t = t * b, live here too.
"""

from __future__ import annotations

import random

from .ffpoly import FqConfig, FqElement, FqPoly, FqRatFunc

__all__ = [
    "CoefficientRing",
    "scalar_ring",
    "poly_ring",
    "ratfunc_ring",
    "TwistSpec",
    "OrePoly",
    "AdditivePoly",
    "ore_mul",
    "to_additive",
    "from_additive",
    "skew_laurent_normalize",
]


class CoefficientRing:
    """Uniform handle on the coefficient domain of an Ore polynomial."""

    __slots__ = ("kind", "config")

    def __init__(self, kind: str, config: FqConfig):
        if kind not in ("scalar", "poly", "ratfunc"):
            raise ValueError(f"unknown coefficient ring kind {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "config", config)

    def __setattr__(self, name, value):
        raise AttributeError("CoefficientRing is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, CoefficientRing)
            and self.kind == other.kind
            and self.config == other.config
        )

    def __hash__(self):
        return hash((self.kind, self.config))

    def __repr__(self):
        return f"CoefficientRing({self.kind}, GF({self.config.q}))"

    @property
    def p(self) -> int:
        return self.config.p

    def zero(self):
        if self.kind == "scalar":
            return self.config.zero()
        if self.kind == "poly":
            return FqPoly.zero(self.config)
        return FqRatFunc(FqPoly.zero(self.config))

    def one(self):
        if self.kind == "scalar":
            return self.config.one()
        if self.kind == "poly":
            return FqPoly.one(self.config)
        return FqRatFunc(FqPoly.one(self.config))

    def contains(self, value) -> bool:
        if self.kind == "scalar":
            return isinstance(value, FqElement) and value.config == self.config
        if self.kind == "poly":
            return isinstance(value, FqPoly) and value.field == self.config
        return isinstance(value, FqRatFunc) and value.field == self.config

    def coerce(self, value):
        """Lift scalars/polynomials into this ring where that makes sense."""
        if self.contains(value):
            return value
        if isinstance(value, int):
            value = self.config.scalar(value)
        if self.kind == "scalar":
            if isinstance(value, FqElement) and value.config == self.config:
                return value
        elif self.kind == "poly":
            if isinstance(value, FqElement) and value.config == self.config:
                return FqPoly.constant(value)
            if isinstance(value, FqPoly) and value.field == self.config:
                return value
        else:
            if isinstance(value, FqElement) and value.config == self.config:
                return FqRatFunc(FqPoly.constant(value))
            if isinstance(value, (FqPoly, FqRatFunc)):
                return FqRatFunc(value) if isinstance(value, FqPoly) else value
        raise TypeError(f"cannot coerce {value!r} into {self!r}")

    def random_element(self, rng: random.Random, degree: int = 2):
        cfg = self.config
        rand_scalar = lambda: cfg.element(tuple(rng.randrange(cfg.p) for _ in range(cfg.n)))
        if self.kind == "scalar":
            return rand_scalar()
        num = FqPoly(cfg, [rand_scalar() for _ in range(degree + 1)])
        if self.kind == "poly":
            return num
        den = FqPoly.zero(cfg)
        while not den:
            den = FqPoly(cfg, [rand_scalar() for _ in range(rng.randrange(1, degree + 2))])
        return FqRatFunc(num, den)


def scalar_ring(cfg: FqConfig) -> CoefficientRing:
    return CoefficientRing("scalar", cfg)


def poly_ring(cfg: FqConfig) -> CoefficientRing:
    return CoefficientRing("poly", cfg)


def ratfunc_ring(cfg: FqConfig) -> CoefficientRing:
    return CoefficientRing("ratfunc", cfg)


class TwistSpec:
    """Coefficient endomorphism c -> c**e with e a power of char p."""

    __slots__ = ("p", "e", "frob_power")

    def __init__(self, p: int, e: int):
        t = 0
        m = 1
        while m < e:
            m *= p
            t += 1
        if m != e:
            raise ValueError(f"twist exponent {e} is not a power of the characteristic {p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "frob_power", t)

    def __setattr__(self, name, value):
        raise AttributeError("TwistSpec is immutable")

    def __eq__(self, other):
        return isinstance(other, TwistSpec) and self.p == other.p and self.e == other.e

    def __hash__(self):
        return hash((self.p, self.e))

    def __repr__(self):
        return f"TwistSpec(c -> c^{self.e})"

    def apply(self, coeff, times: int = 1):
        """coeff**(e**times)."""
        if times == 0 or self.frob_power == 0:
            return coeff
        return coeff.frobenius(self.frob_power * times)


class OrePoly:
    """Twisted polynomial sum c_i tau^i over a coefficient ring."""

    __slots__ = ("ring", "twist", "coeffs")

    def __init__(self, ring: CoefficientRing, twist: TwistSpec, coeffs):
        if twist.p != ring.p:
            raise ValueError("twist characteristic differs from the coefficient ring's")
        cs = [ring.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "twist", twist)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("OrePoly is immutable")

    @classmethod
    def tau(cls, ring: CoefficientRing, twist: TwistSpec, power: int = 1) -> "OrePoly":
        return cls(ring, twist, [ring.zero()] * power + [ring.one()])

    @classmethod
    def constant(cls, ring: CoefficientRing, twist: TwistSpec, value) -> "OrePoly":
        return cls(ring, twist, [value])

    @property
    def degree(self) -> int:
        """Degree in tau (-1 for the zero element)."""
        return len(self.coeffs) - 1

    def constant_term(self):
        return self.coeffs[0] if self.coeffs else self.ring.zero()

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, OrePoly):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.twist == other.twist
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.twist, self.coeffs))

    def _check(self, other):
        if not isinstance(other, OrePoly):
            raise TypeError(f"expected OrePoly, got {type(other).__name__}")
        if other.ring != self.ring or other.twist != self.twist:
            raise ValueError("Ore polynomials have mismatched twist or coefficient ring")

    def __add__(self, other):
        self._check(other)
        zero = self.ring.zero()
        m = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [zero] * (m - len(self.coeffs))
        b = list(other.coeffs) + [zero] * (m - len(other.coeffs))
        return OrePoly(self.ring, self.twist, [x + y for x, y in zip(a, b)])

    def __sub__(self, other):
        self._check(other)
        return self + (-other)

    def __neg__(self):
        return OrePoly(self.ring, self.twist, [-c for c in self.coeffs])

    def __mul__(self, other):
        """Twisted product: tau^i c = twist^i(c) tau^i."""
        self._check(other)
        if not self or not other:
            return OrePoly(self.ring, self.twist, [])
        zero = self.ring.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                out[i + j] = out[i + j] + a * self.twist.apply(b, i)
        return OrePoly(self.ring, self.twist, out)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of an Ore polynomial")
        result = OrePoly(self.ring, self.twist, [self.ring.one()])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, value) -> "OrePoly":
        """Left multiplication by a plain coefficient."""
        value = self.ring.coerce(value)
        return OrePoly(self.ring, self.twist, [value * c for c in self.coeffs])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            wrapped = f"({cs})" if any(ch in cs for ch in "+-/ ") and i > 0 else cs
            if i == 0:
                parts.append(f"({cs})" if any(ch in cs for ch in "+- ") else cs)
            else:
                mono = "tau" if i == 1 else f"tau^{i}"
                one = self.ring.one()
                parts.append(mono if c == one else f"{wrapped}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"OrePoly({self})"


def ore_mul(f: OrePoly, g: OrePoly) -> OrePoly:
    """Product in k<tau>; deg(fg) = deg f + deg g over a domain."""
    return f * g


# ---------------------------------------------------------------------------
# Additive polynomials
# ---------------------------------------------------------------------------


class AdditivePoly:
    """Sparse polynomial sum c * x**(e**i), the additive image of k<tau>."""

    __slots__ = ("ring", "e", "terms")

    def __init__(self, ring: CoefficientRing, e: int, terms):
        cleaned = {}
        for exp, c in dict(terms).items():
            c = ring.coerce(c)
            if c:
                cleaned[int(exp)] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "terms", dict(sorted(cleaned.items())))

    def __setattr__(self, name, value):
        raise AttributeError("AdditivePoly is immutable")

    def __eq__(self, other):
        if not isinstance(other, AdditivePoly):
            return NotImplemented
        return self.ring == other.ring and self.e == other.e and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max(self.terms) if self.terms else -1

    def coefficient(self, exp: int):
        return self.terms.get(exp, self.ring.zero())

    def evaluate(self, x):
        """Evaluate at x; x must multiply with the coefficients."""
        acc = None
        for exp, c in self.terms.items():
            term = c * _generic_pow(x, exp)
            acc = term if acc is None else acc + term
        if acc is None:
            return self.ring.zero()
        return acc

    def compose(self, other: "AdditivePoly") -> "AdditivePoly":
        """Substitution self(other(x)), computed by honest expansion."""
        if self.ring != other.ring or self.e != other.e:
            raise ValueError("additive polynomials over different settings")
        acc = {}
        for exp, c in self.terms.items():
            powered = _sparse_pow(other.terms, exp, self.ring)
            for k, v in powered.items():
                term = c * v
                if k in acc:
                    term = acc[k] + term
                if term:
                    acc[k] = term
                elif k in acc:
                    del acc[k]
        return AdditivePoly(self.ring, self.e, acc)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.terms.items():
            cs = str(c)
            wrapped = f"({cs})" if any(ch in cs for ch in "+-/ ") else cs
            mono = "x" if exp == 1 else f"x^{exp}"
            parts.append(mono if c == self.ring.one() else f"{wrapped}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"AdditivePoly({self})"


def _generic_pow(x, e: int):
    result = None
    base = x
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    if result is None:
        raise ValueError("zeroth power is ambiguous here")
    return result


def _sparse_mul(a: dict, b: dict):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            v = x * y
            if k in out:
                v = out[k] + v
            if v:
                out[k] = v
            elif k in out:
                del out[k]
    return out


def _sparse_pow(a: dict, e: int, ring: CoefficientRing):
    result = {0: ring.one()}
    base = dict(a)
    while e:
        if e & 1:
            result = _sparse_mul(result, base)
        e >>= 1
        if e:
            base = _sparse_mul(base, base)
    return result


def to_additive(f: OrePoly) -> AdditivePoly:
    """tau^i -> x**(e**i) termwise; requires a nontrivial twist."""
    e = f.twist.e
    if e == 1:
        raise ValueError("the additive correspondence needs a nontrivial twist exponent")
    return AdditivePoly(f.ring, e, {e ** i: c for i, c in enumerate(f.coeffs)})


def from_additive(a: AdditivePoly, ring: CoefficientRing = None, twist: TwistSpec = None) -> OrePoly:
    """Inverse of to_additive; rejects exponents that are not powers of e."""
    ring = ring or a.ring
    twist = twist or TwistSpec(ring.p, a.e)
    if twist.e != a.e:
        raise ValueError("twist exponent differs from the additive base")
    coeffs = {}
    for exp, c in a.terms.items():
        i = 0
        m = 1
        while m < exp:
            m *= a.e
            i += 1
        if m != exp:
            raise ValueError(f"exponent {exp} is not a power of {a.e}")
        coeffs[i] = c
    top = max(coeffs) if coeffs else -1
    return OrePoly(ring, twist, [coeffs.get(i, ring.zero()) for i in range(top + 1)])


# ---------------------------------------------------------------------------
# Skew Laurent normal form: b^sigma t = t b
# ---------------------------------------------------------------------------


def skew_laurent_normalize(words, cfg: FqConfig, frob_power: int = 1):
    """Canonical form sum_i t^i b_i of a sum of words in t, t^(-1), coefficients.

    Each word is a list whose items are either integers (powers of t,
    possibly negative) or FqElement coefficients from `cfg`.  sigma is
    the Frobenius power x -> x**(p**frob_power), an automorphism of the
    finite field, so it is invertible; passing polynomial or rational
    coefficients is rejected because Frobenius is not surjective there.

    Moving a coefficient right past t uses b t = t b^(sigma^-1), the
    rearranged commutation rule; the result maps exponent -> coefficient.
    """
    n = cfg.n
    out = {}
    for word in words:
        tokens = list(word)
        for tok in tokens:
            if isinstance(tok, (FqPoly, FqRatFunc)):
                raise ValueError(
                    "sigma is not invertible on polynomial or rational coefficients"
                )
            if not isinstance(tok, (int, FqElement)):
                raise TypeError(f"word items must be int or FqElement, got {type(tok).__name__}")
        total = sum(tok for tok in tokens if isinstance(tok, int))
        coeff = cfg.one()
        suffix = total
        for tok in tokens:
            if isinstance(tok, int):
                suffix -= tok
            else:
                if tok.config != cfg:
                    raise ValueError("coefficient from a different field")
                # sigma^(-suffix) applied to tok; sigma has order n / gcd
                shift = (-frob_power * suffix) % n
                coeff = coeff * tok.frobenius(shift)
        if total in out:
            merged = out[total] + coeff
        else:
            merged = coeff
        if merged:
            out[total] = merged
        elif total in out:
            del out[total]
    return dict(sorted(out.items()))
