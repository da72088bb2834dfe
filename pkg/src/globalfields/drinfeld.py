"""Rank-1 Drinfeld modules over A = F_q[T] and their torsion.

A Drinfeld module is the ring homomorphism A -> k<tau> determined by
the image of T, which must have constant term T and positive
tau-degree; the Carlitz module T -> T + tau is the default instance.
Torsion sets are made finite by specializing at a good-reduction place
P: coefficients are reduced into the residue field, the residue field
is flattened to F_p^(n deg P), and the roots of the additive polynomial
are read off as the kernel of an F_p-linear map on successively larger
constant-field extensions until the count saturates the degree bound.
A narrow symbolic mode handles the cases whose torsion already lies in
A itself (degree-balance enumeration), e.g. the Carlitz a = T.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .ffpoly import (
    FqConfig,
    FqPoly,
    FqRatFunc,
    extend,
    frobenius_linear_kernel,
    is_irreducible,
    poly_roots,
    residues,
)
from .ore import OrePoly, TwistSpec, ratfunc_ring

__all__ = [
    "DrinfeldModule",
    "TorsionSet",
    "CyclicModuleReport",
    "BadReductionError",
    "SymbolicTorsionUnsupported",
    "rho",
    "torsion",
    "check_cyclic_module",
]


class BadReductionError(ValueError):
    """The chosen place does not give good reduction for rho_a."""


class SymbolicTorsionUnsupported(ValueError):
    """Symbolic torsion only covers small cases rational over A."""


class DrinfeldModule:
    """rho: F_q[T] -> k<tau> with constant term a and positive tau-degree."""

    __slots__ = ("base", "twist", "rho_T", "ring")

    def __init__(self, base: FqConfig, rho_T_coeffs=None, twist_exponent: int = None):
        ring = ratfunc_ring(base)
        e = base.q if twist_exponent is None else twist_exponent
        twist = TwistSpec(base.p, e)
        if rho_T_coeffs is None:
            # Carlitz: rho_T = T + tau
            rho_T_coeffs = [FqRatFunc(FqPoly.T(base)), ring.one()]
        rho_T = OrePoly(ring, twist, rho_T_coeffs)
        T = FqRatFunc(FqPoly.T(base))
        if rho_T.constant_term() != T:
            raise ValueError("the image of T must have constant term T")
        if rho_T.degree < 1:
            raise ValueError("the image of T must have positive tau-degree")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "twist", twist)
        object.__setattr__(self, "rho_T", rho_T)
        object.__setattr__(self, "ring", ring)

    def __setattr__(self, name, value):
        raise AttributeError("DrinfeldModule is immutable")

    @classmethod
    def carlitz(cls, base: FqConfig, twist_exponent: int = None) -> "DrinfeldModule":
        return cls(base, None, twist_exponent)

    def __repr__(self):
        return f"DrinfeldModule(rho_T = {self.rho_T}, e = {self.twist.e}, q = {self.base.q})"


def rho(a: FqPoly, D: DrinfeldModule) -> OrePoly:
    """Image of a under the module: sum c_i * rho_T**i (Horner form)."""
    if a.field != D.base:
        raise ValueError("a must live in the module's base ring F_q[T]")
    ring = D.ring
    acc = OrePoly(ring, D.twist, [])
    for c in reversed(a.coeffs):
        acc = acc * D.rho_T + OrePoly.constant(ring, D.twist, FqRatFunc(FqPoly.constant(c)))
    return acc


# ---------------------------------------------------------------------------
# Reduction at a place and torsion
# ---------------------------------------------------------------------------


class ReductionContext:
    """Reduction F_q[T] -> residue field at P, flattened into F_p^(n dP s)."""

    __slots__ = ("base", "place", "level", "target", "embed", "t_image")

    def __init__(self, base: FqConfig, place: FqPoly, level: int = 1):
        dP = place.degree
        target, embed = extend(base, dP * level)
        place_in_target = embed.map_poly(place)
        roots = poly_roots(place_in_target)
        if not roots:
            raise ArithmeticError("place has no root in its own residue extension")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "place", place)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "embed", embed)
        object.__setattr__(self, "t_image", roots[0])

    def __setattr__(self, name, value):
        raise AttributeError("ReductionContext is immutable")

    def reduce_poly(self, f: FqPoly):
        acc = self.target.zero()
        power = self.target.one()
        for c in f.coeffs:
            if c:
                acc = acc + self.embed(c) * power
            power = power * self.t_image
        return acc

    def reduce_rat(self, r: FqRatFunc):
        den = self.reduce_poly(r.den)
        if not den:
            raise BadReductionError("denominator vanishes at the place")
        return self.reduce_poly(r.num) * den.inverse()


def _check_good_reduction(ore_poly: OrePoly, place: FqPoly):
    for i, c in enumerate(ore_poly.coeffs):
        if c and not c.den % place:
            raise BadReductionError(
                f"coefficient of tau^{i} has a pole at the place {place}"
            )
    top = ore_poly.coeffs[-1]
    if not top.num % place:
        raise BadReductionError("leading coefficient is not a unit at the place")


@dataclass(frozen=True)
class TorsionSet:
    """Roots of the additive polynomial rho_a, with their ambient field."""

    a: FqPoly
    place: object  # FqPoly or None for the symbolic mode
    ambient: object  # FqConfig (place mode) or the base ring marker "A"
    roots: tuple
    cardinality: int
    separable: bool
    extension_degree: int  # s with ambient = residue-field extension of degree s
    definition_degrees: tuple  # per-root degree over the residue field
    reduction: object = dc_field(default=None, repr=False, compare=False)

    def __str__(self):
        where = f"mod {self.place}" if self.place is not None else "symbolic"
        pts = ", ".join(str(r) for r in self.roots)
        return f"Lambda[{self.a}] ({where}): {{{pts}}} (#{self.cardinality})"


def torsion(a: FqPoly, D: DrinfeldModule, place=None) -> TorsionSet:
    """All roots of rho_a(x); specialization at `place` makes the search finite.

    place=None (or "symbolic") asks for the symbolic mode, which is
    only offered when the torsion is rational over A at small degree.
    """
    if not a:
        raise ValueError("torsion of a = 0 is the whole module, not computed")
    if isinstance(place, str):
        if place != "symbolic":
            raise ValueError(f"unknown place spec {place!r}")
        place = None
    rho_a = rho(a, D)
    e = D.twist.e
    if place is None:
        return _symbolic_torsion(a, D, rho_a)

    if not isinstance(place, FqPoly) or place.field != D.base:
        raise TypeError("place must be an FqPoly over the module's base field")
    if not is_irreducible(place):
        raise ValueError(f"place {place} is not irreducible")
    _check_good_reduction(rho_a, place)

    deg_tau = rho_a.degree
    # strip the inseparable prefix: terms below v vanish mod the place
    ctx1 = ReductionContext(D.base, place, 1)
    reduced1 = [(ctx1.reduce_rat(c), i) for i, c in enumerate(rho_a.coeffs)]
    nonzero_i = [i for g, i in reduced1 if g]
    if not nonzero_i:
        raise BadReductionError("rho_a vanishes identically at the place")
    v = min(nonzero_i)
    separable = v == 0
    target = e ** (deg_tau - v)

    t = D.twist.frob_power
    for s in range(1, max(1, target) + 1):
        ctx = ctx1 if s == 1 else ReductionContext(D.base, place, s)
        terms = [
            (ctx.reduce_rat(c), t * i)
            for i, c in enumerate(rho_a.coeffs)
            if c
        ]
        terms = [(g, k) for g, k in terms if g]
        roots = frobenius_linear_kernel(ctx.target, terms)
        if len(roots) == target:
            for lam in roots:
                image = ctx.target.zero()
                for g, k in terms:
                    image = image + g * lam.frobenius(k)
                if image:
                    raise ArithmeticError("kernel element fails exact re-evaluation")
            res_size = D.base.q ** place.degree
            def_degs = tuple(_definition_degree(lam, res_size, s) for lam in roots)
            return TorsionSet(
                a=a,
                place=place,
                ambient=ctx.target,
                roots=tuple(roots),
                cardinality=len(roots),
                separable=separable,
                extension_degree=s,
                definition_degrees=def_degs,
                reduction=ctx,
            )
    raise ArithmeticError(
        f"torsion of {a} did not saturate within {target} constant-field extensions"
    )


def _definition_degree(lam, res_size: int, s: int) -> int:
    """Smallest s' with lam fixed by the residue-field Frobenius s' times."""
    for cand in range(1, s + 1):
        if s % cand:
            continue
        if lam ** (res_size ** cand) == lam:
            return cand
    return s


def _symbolic_torsion(a: FqPoly, D: DrinfeldModule, rho_a: OrePoly) -> TorsionSet:
    base = D.base
    e = D.twist.e
    deg_x = e ** rho_a.degree
    if deg_x > base.q ** 2:
        raise SymbolicTorsionUnsupported(
            f"x-degree {deg_x} exceeds the symbolic bound q^2 = {base.q ** 2}"
        )
    coeffs = []
    for c in rho_a.coeffs:
        if not c.is_polynomial():
            raise SymbolicTorsionUnsupported("rho_a has non-polynomial coefficients")
        coeffs.append(c.num)
    nonzero = [(i, c) for i, c in enumerate(coeffs) if c]
    top_i, top_c = nonzero[-1]
    if top_c.degree != 0:
        raise SymbolicTorsionUnsupported("leading coefficient is not a unit of A")
    v = nonzero[0][0]
    separable = v == 0
    target = e ** (rho_a.degree - v)

    # degree balance: a nonzero root lambda of degree m needs the maximal
    # term degree deg c_i + e^i m to be attained at least twice
    candidate_degrees = set()
    for (i, ci), (j, cj) in itertools.combinations(nonzero, 2):
        num = ci.degree - cj.degree
        den = e ** j - e ** i
        if num >= 0 and num % den == 0:
            candidate_degrees.add(num // den)
    roots = [FqPoly.zero(base)]
    for m in sorted(candidate_degrees):
        if base.q ** (m + 1) > 4096:
            raise SymbolicTorsionUnsupported("symbolic enumeration bound exceeded")
        all_elems = list(base.elements())
        for combo in itertools.product(all_elems, repeat=m + 1):
            if not combo[-1]:
                continue
            lam = FqPoly(base, list(combo))
            value = FqPoly.zero(base)
            for i, c in nonzero:
                value = value + c * lam ** (e ** i)
            if not value:
                roots.append(lam)
    if len(roots) != target:
        raise SymbolicTorsionUnsupported(
            f"only {len(roots)} of {target} torsion points are rational over A; "
            "specialize at a place instead"
        )
    roots.sort(key=lambda f: f.key())
    return TorsionSet(
        a=a,
        place=None,
        ambient="A",
        roots=tuple(roots),
        cardinality=len(roots),
        separable=separable,
        extension_degree=0,
        definition_degrees=tuple(0 for _ in roots),
        reduction=None,
    )


# ---------------------------------------------------------------------------
# Cyclic module structure (Galois-side bookkeeping of the torsion)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclicModuleReport:
    """Outcome of the cyclic A/(a)-module verification on a torsion set."""

    cyclic: bool
    checked_points: int
    residue_count: int
    orbit_size: int
    witness: str = None

    def __str__(self):
        verdict = "cyclic" if self.cyclic else f"NOT cyclic ({self.witness})"
        return (
            f"A/(a)-module on {self.checked_points} nonzero points, "
            f"unit orbit size {self.orbit_size}: {verdict}"
        )


def check_cyclic_module(ts: TorsionSet, a: FqPoly, D: DrinfeldModule) -> CyclicModuleReport:
    """Verify Lambda[a] is cyclic over A/(a) through every nonzero point.

    For each nonzero lam the map b -> rho_b(lam) over residues b mod a
    must be injective with image the whole torsion set; the unit orbit
    then has size |A/(a)| - 1.
    """
    if a.field != D.base:
        raise ValueError("a must live in the module's base ring")
    if not is_irreducible(a):
        raise ValueError(f"a = {a} is not irreducible")
    if ts.a != a:
        raise ValueError("torsion set was computed for a different a")

    reps = list(residues(a))
    evaluators = []
    for b in reps:
        rho_b = rho(b, D)
        if ts.place is not None:
            ctx = ts.reduction
            terms = [
                (ctx.reduce_rat(c), D.twist.frob_power * i)
                for i, c in enumerate(rho_b.coeffs)
                if c
            ]

            def make_eval(terms=terms, ctx=ctx):
                def ev(lam):
                    acc = ctx.target.zero()
                    for g, k in terms:
                        acc = acc + g * lam.frobenius(k)
                    return acc
                return ev
        else:
            if any(c and not c.is_polynomial() for c in rho_b.coeffs):
                raise ValueError(
                    "symbolic cyclic check needs polynomial rho_b coefficients"
                )
            coeff_polys = [(i, c.num) for i, c in enumerate(rho_b.coeffs) if c]
            e = D.twist.e

            def make_eval(coeff_polys=coeff_polys, e=e):
                def ev(lam):
                    acc = FqPoly.zero(a.field)
                    for i, c in coeff_polys:
                        acc = acc + c * lam ** (e ** i)
                    return acc
                return ev
        evaluators.append((b, make_eval()))

    root_set = set(ts.roots)
    nonzero_roots = [r for r in ts.roots if r]
    checked = 0
    for lam in nonzero_roots:
        seen = {}
        images = set()
        for b, ev in evaluators:
            img = ev(lam)
            if img in seen:
                return CyclicModuleReport(
                    cyclic=False,
                    checked_points=checked,
                    residue_count=len(reps),
                    orbit_size=0,
                    witness=f"rho_b collision at lambda={lam}: b={seen[img]} and b={b}",
                )
            seen[img] = b
            images.add(img)
        if images != root_set:
            return CyclicModuleReport(
                cyclic=False,
                checked_points=checked,
                residue_count=len(reps),
                orbit_size=0,
                witness=f"orbit of lambda={lam} misses part of the torsion set",
            )
        checked += 1
    return CyclicModuleReport(
        cyclic=True,
        checked_points=checked,
        residue_count=len(reps),
        orbit_size=max(0, len(reps) - 1),
    )
