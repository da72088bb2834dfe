"""Plane-curve singularities and iterated blow-up resolution, exactly.

Curves are bivariate polynomials over Q (sympy expressions kept in
expanded form).  Singular points are found by resultant elimination
plus exact root isolation of the univariate eliminants; coordinates may
be rational or algebraic (sympy CRootOf), with blow-ups supported up to
algebraic degree 4.  Resolution blows up singular points depth-first in
deterministic order, following only the points on the exceptional
divisor of each chart, so the blow-up count matches the local
resolution process of the affine curve.  The per-step contribution
m(m-1)/2 accumulates the classical delta invariant, whose remaining
total strictly decreases step by step: that is the termination measure
the reports expose.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy import Poly, Rational, diff, expand

__all__ = [
    "PlaneCurve",
    "CurveSyntaxError",
    "EliminationDegreeError",
    "parse_curve",
    "curve_from_terms",
    "singular_points",
    "multiplicity",
    "is_singular_at",
    "BlowUpStep",
    "blow_up",
    "ResolutionReport",
    "resolve",
    "projective_patches",
    "singular_points_at_infinity",
    "delta_invariant",
    "tower_report",
]

# Internal generators carry reserved names: sympy caches CRootOf values
# globally, and a cached root created over a plain Symbol('x') would
# collide with an x-generator in later Poly constructions.
_x, _y = sympy.symbols("x_gf y_gf")
_USER_X, _USER_Y = sympy.symbols("x y")
CURVE_X, CURVE_Y = _x, _y

BLOWUP_DEGREE_CAP = 4  # algebraic degree of centers we agree to blow up
ELIMINANT_DEGREE_CAP = 12


class CurveSyntaxError(ValueError):
    """Malformed curve text; carries the byte offset of the defect."""

    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class EliminationDegreeError(ValueError):
    """The eliminant degree exceeds the supported bound."""


def _reduce_algebraic(expr):
    """Rewrite powers of CRootOf atoms modulo their minimal polynomials.

    sympy does not auto-reduce CRootOf powers the way it reduces
    radicals, and unreduced powers make Poly's extension construction
    fall over; polynomial remainder in each algebraic atom fixes that.
    """
    expr = expand(expr)
    for root in sorted(expr.atoms(sympy.CRootOf), key=sympy.default_sort_key):
        minpoly_in_root = root.poly.as_expr().subs(root.poly.gen, root)
        expr = expand(sympy.rem(expr, minpoly_in_root, root))
    return expr


class PlaneCurve:
    """Squarefree bivariate polynomial over Q with an optional prime tag."""

    __slots__ = ("expr", "prime")

    def __init__(self, expr, prime: int = None, check_squarefree: bool = True):
        expr = sympy.sympify(expr).subs({_USER_X: _x, _USER_Y: _y}, simultaneous=True)
        expr = _reduce_algebraic(expr)
        if expr == 0:
            raise ValueError("the zero polynomial does not define a curve")
        extra = expr.free_symbols - {_x, _y}
        if extra:
            raise ValueError(f"curve involves unexpected symbols {extra}")
        if check_squarefree and not _is_squarefree(expr):
            raise ValueError("curve polynomial must be squarefree")
        if prime is not None and not sympy.isprime(prime):
            raise ValueError(f"{prime} is not prime")
        object.__setattr__(self, "expr", expr)
        object.__setattr__(self, "prime", prime)

    def __setattr__(self, name, value):
        raise AttributeError("PlaneCurve is immutable")

    def as_user_expr(self):
        """The polynomial with the public x, y symbols (for interop)."""
        return self.expr.subs({_x: _USER_X, _y: _USER_Y}, simultaneous=True)

    def with_prime(self, prime: int) -> "PlaneCurve":
        return PlaneCurve(self.expr, prime=prime, check_squarefree=False)

    def partials(self):
        return diff(self.expr, _x), diff(self.expr, _y)

    def terms(self):
        """{(deg_x, deg_y): coefficient} of the expanded polynomial."""
        poly = Poly(self.expr, _x, _y)
        return {monom: coeff for monom, coeff in poly.terms()}

    def total_degree(self) -> int:
        return Poly(self.expr, _x, _y).total_degree()

    def __eq__(self, other):
        if not isinstance(other, PlaneCurve):
            return NotImplemented
        return expand(self.expr - other.expr) == 0

    def __hash__(self):
        return hash(sympy.srepr(self.expr))

    def __str__(self):
        return curve_text(self)

    def __repr__(self):
        return f"PlaneCurve({self})"


def _is_squarefree(expr) -> bool:
    g = sympy.gcd(sympy.gcd(expr, diff(expr, _x)), diff(expr, _y))
    return not (g.free_symbols & {_x, _y})


# ---------------------------------------------------------------------------
# Curve grammar: expr := term (('+'|'-') term)*, coeff? monomial? terms
# ---------------------------------------------------------------------------


def parse_curve(text: str, prime: int = None) -> PlaneCurve:
    """Parse the whitespace-insensitive curve grammar into a PlaneCurve."""
    compact = []
    positions = []
    for i, ch in enumerate(text):
        if not ch.isspace():
            compact.append(ch)
            positions.append(i)
    s = "".join(compact)

    def err(msg, j):
        raise CurveSyntaxError(msg, positions[j] if j < len(positions) else len(text))

    if not s:
        raise CurveSyntaxError("empty curve text", 0)

    terms = {}
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
            numer = int(s[i:j])
            i = j
            denom = 1
            if i < len(s) and s[i] == "/":
                i += 1
                if i >= len(s) or not s[i].isdigit():
                    err("expected denominator digits after '/'", i)
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                denom = int(s[i:j])
                if denom == 0:
                    err("zero denominator", i)
                i = j
            coeff = Fraction(numer, denom)

        dx = dy = 0
        saw_mono = False
        if i < len(s) and s[i] == "x":
            saw_mono = True
            i += 1
            dx = 1
            if i < len(s) and s[i] == "^":
                i += 1
                if i >= len(s) or not s[i].isdigit():
                    err("expected exponent digits after '^'", i)
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                dx = int(s[i:j])
                i = j
        if i < len(s) and s[i] == "y":
            saw_mono = True
            i += 1
            dy = 1
            if i < len(s) and s[i] == "^":
                i += 1
                if i >= len(s) or not s[i].isdigit():
                    err("expected exponent digits after '^'", i)
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                dy = int(s[i:j])
                i = j
        if coeff is None and not saw_mono:
            err(f"expected a term, found {s[i]!r}", i)
        if coeff is None:
            coeff = Fraction(1)
        key = (dx, dy)
        terms[key] = terms.get(key, Fraction(0)) + sign * coeff

    terms = {k: v for k, v in terms.items() if v}
    if not terms:
        raise CurveSyntaxError("curve text reduces to the zero polynomial", 0)
    return curve_from_terms(terms, prime=prime)


def curve_from_terms(terms: dict, prime: int = None) -> PlaneCurve:
    expr = sympy.Add(*[
        Rational(c.numerator, c.denominator) * _x ** i * _y ** j
        if isinstance(c, Fraction) else sympy.sympify(c) * _x ** i * _y ** j
        for (i, j), c in terms.items()
    ])
    return PlaneCurve(expr, prime=prime)


def curve_text(curve: PlaneCurve) -> str:
    """Canonical text form; parse(curve_text(C)) == C."""
    items = sorted(
        Poly(curve.expr, _x, _y).terms(),
        key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]),
    )
    parts = []
    for (i, j), coeff in items:
        coeff = sympy.nsimplify(coeff)
        neg = coeff.could_extract_minus_sign()
        mag = -coeff if neg else coeff
        mono = ""
        if i:
            mono += "x" if i == 1 else f"x^{i}"
        if j:
            mono += "y" if j == 1 else f"y^{j}"
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------
# Exact point predicates
# ---------------------------------------------------------------------------


def _is_zero_exact(value) -> bool:
    """Exact zero test for rational/algebraic sympy scalars."""
    value = _reduce_algebraic(value)
    if value.is_Rational:
        return value == 0
    approx = value.evalf(40)
    try:
        if abs(complex(approx)) > 1e-20:
            return False
    except (TypeError, ValueError):
        pass
    t = sympy.Dummy("t")
    return sympy.minimal_polynomial(value, t) == t


def _point_algebraic_degree(pt) -> int:
    deg = 1
    for coord in pt:
        coord = sympy.sympify(coord)
        if coord.is_Rational:
            continue
        t = sympy.Dummy("t")
        deg *= sympy.degree(sympy.minimal_polynomial(coord, t), t)
    return deg


def on_curve(curve: PlaneCurve, pt) -> bool:
    x0, y0 = pt
    return _is_zero_exact(curve.expr.subs({_x: x0, _y: y0}))


def is_singular_at(curve: PlaneCurve, pt) -> bool:
    fx, fy = curve.partials()
    x0, y0 = pt
    subs = {_x: x0, _y: y0}
    return (
        on_curve(curve, pt)
        and _is_zero_exact(fx.subs(subs))
        and _is_zero_exact(fy.subs(subs))
    )


# ---------------------------------------------------------------------------
# Singular points via resultant elimination
# ---------------------------------------------------------------------------


_ALG = sympy.Symbol("_alg")  # neutral symbol so CRootOf never carries x or y


def _roots_of(expr, var):
    """All roots (rational and algebraic, real and complex) of a QQ poly."""
    poly = Poly(expr, var)
    if poly.degree() <= 0:
        return []
    roots = []
    for fac, _ in poly.factor_list()[1]:
        fac = Poly(fac.as_expr().subs(var, _ALG), _ALG)
        if fac.degree() < 1:
            continue
        roots.extend(r for r, _ in fac.all_roots(multiple=False, radicals=False))
    return roots


def singular_points(curve: PlaneCurve):
    """All affine points with f = f_x = f_y = 0, exactly, sorted.

    Elimination runs over the rationals; an eliminant of degree above
    the supported bound raises EliminationDegreeError.
    """
    f = curve.expr
    fx, fy = curve.partials()
    fp = Poly(f, _x, _y)
    if fp.degree(_y) == 0 or fp.degree(_x) == 0:
        # squarefree product of parallel lines: no common zero with the
        # missing-variable gradient component
        return []
    if not _rational_coeffs(fp):
        return _singular_points_extension(curve)

    eliminant = sympy.resultant(f, fy, _y)
    elim_poly = Poly(eliminant, _x)
    if elim_poly.is_zero:
        raise EliminationDegreeError("degenerate elimination: resultant vanished")
    if elim_poly.degree() > ELIMINANT_DEGREE_CAP:
        raise EliminationDegreeError(
            f"eliminant degree {elim_poly.degree()} exceeds {ELIMINANT_DEGREE_CAP}"
        )
    x_candidates = set(_roots_of(eliminant, _x))
    lc = fp.as_poly(_y).LC()
    if sympy.total_degree(lc, _x) >= 1:
        x_candidates.update(_roots_of(lc, _x))

    points = []
    for x0 in x_candidates:
        if x0.is_Rational:
            points.extend((x0, y0) for y0 in _singular_ys_rational_x(f, fx, fy, x0))
        else:
            points.extend((x0, y0) for y0 in _singular_ys_absolute(f, fx, fy, x0))
    points = _dedupe_points(points)
    points.sort(key=lambda p: (sympy.default_sort_key(p[0]), sympy.default_sort_key(p[1])))
    return points


def _rational_coeffs(poly: Poly) -> bool:
    return all(c.is_Rational for c in poly.coeffs())


def _singular_ys_rational_x(f, fx, fy, x0):
    f0 = Poly(expand(f.subs(_x, x0)), _y)
    fy0 = Poly(expand(fy.subs(_x, x0)), _y)
    fx0 = Poly(expand(fx.subs(_x, x0)), _y)
    g = f0.gcd(fy0)
    ys = []
    for fac, _ in g.factor_list()[1]:
        fac = Poly(fac, _y)
        if fac.degree() < 1:
            continue
        if fx0.is_zero or fx0.rem(fac).is_zero:
            ys.extend(r for r, _ in fac.all_roots(multiple=False, radicals=False))
    return ys


def _singular_ys_absolute(f, fx, fy, x0):
    """Pair an algebraic x0 with roots of the y-eliminant, confirm exactly.

    Elimination stays over Q (CRootOf needs rational coefficients); each
    candidate pair is screened numerically and then confirmed by the
    exact minimal-polynomial zero test.
    """
    elim = sympy.resultant(f, fy, _x)
    if expand(elim) == 0:
        elim = sympy.resultant(f, fx, _x)
    ys = []
    for y0 in _roots_of(elim, _y):
        subs = {_x: x0, _y: y0}
        trio = (f.subs(subs), fx.subs(subs), fy.subs(subs))
        if all(_is_zero_exact(v) for v in trio):
            ys.append(y0)
    return ys


def _singular_points_extension(curve: PlaneCurve):
    """Singular points of a chart curve with algebraic (non-Q) coefficients.

    Supports what the blow-up tree needs: gcd/eliminant arithmetic over
    the coefficient extension, keeping roots that stay in that field.
    """
    f = curve.expr
    fx, fy = curve.partials()
    try:
        eliminant = _reduce_algebraic(sympy.resultant(f, fy, _y))
        elim_poly = Poly(eliminant, _x, extension=True)
        if elim_poly.degree() > ELIMINANT_DEGREE_CAP:
            raise EliminationDegreeError(
                f"eliminant degree {elim_poly.degree()} exceeds {ELIMINANT_DEGREE_CAP}"
            )
        xs = []
        for fac, _ in elim_poly.factor_list()[1]:
            fac = Poly(fac, _x)
            if fac.degree() == 1:
                a1, a0 = fac.all_coeffs()
                xs.append(_reduce_algebraic(-a0 / a1))
            # higher-degree factors over the extension are beyond the
            # supported blow-up degree; they surface through the
            # resolver's unresolved diagnostics when a center is needed
        points = []
        for x0 in xs:
            f0 = Poly(_reduce_algebraic(f.subs(_x, x0)), _y, extension=True)
            fy0 = Poly(_reduce_algebraic(fy.subs(_x, x0)), _y, extension=True)
            fx0 = Poly(_reduce_algebraic(fx.subs(_x, x0)), _y, extension=True)
            g = f0.gcd(fy0)
            for fac, _ in g.factor_list()[1]:
                fac = Poly(fac, _y)
                if fac.degree() != 1:
                    continue
                if not (fx0.is_zero or fx0.rem(fac).is_zero):
                    continue
                a1, a0 = fac.all_coeffs()
                points.append((x0, _reduce_algebraic(-a0 / a1)))
    except (sympy.polys.polyerrors.BasePolynomialError, NotImplementedError,
            ZeroDivisionError) as exc:
        raise EliminationDegreeError(f"extension elimination failed: {exc}")
    points = _dedupe_points(points)
    points.sort(key=lambda p: (sympy.default_sort_key(p[0]), sympy.default_sort_key(p[1])))
    return points


def _dedupe_points(points):
    seen = []
    for p in points:
        if not any(
            _is_zero_exact(p[0] - q[0]) and _is_zero_exact(p[1] - q[1]) for q in seen
        ):
            seen.append(p)
    return seen


# ---------------------------------------------------------------------------
# Multiplicity and blow-up
# ---------------------------------------------------------------------------


def _translate(expr, pt):
    x0, y0 = pt
    if x0 == 0 and y0 == 0:
        return expand(expr)
    return _reduce_algebraic(expr.subs({_x: _x + x0, _y: _y + y0}, simultaneous=True))


def multiplicity(curve: PlaneCurve, pt) -> int:
    """Lowest total degree of f translated to pt; 1 iff pt is smooth."""
    if not on_curve(curve, pt):
        raise ValueError(f"point {pt} does not lie on the curve")
    shifted = _translate(curve.expr, pt)
    poly = Poly(shifted, _x, _y, extension=True)
    # Poly trims coefficients that are zero in its (exact) domain,
    # so every listed monomial genuinely appears
    m = min(i + j for (i, j), _ in poly.terms())
    assert m >= 1, "translated curve must vanish at the origin"
    return m


@dataclass(frozen=True)
class BlowUpStep:
    """One blow-up: center, multiplicity, and the two chart transforms."""

    center: tuple
    center_multiplicity: int
    chart1: PlaneCurve  # substitution (x, x*y), exceptional divisor x = 0
    chart2: PlaneCurve  # substitution (x*y, y), exceptional divisor y = 0
    exceptional: tuple = ("x", "y")

    def __str__(self):
        return (
            f"blow-up at {self.center} (m={self.center_multiplicity}): "
            f"chart1 {self.chart1}, chart2 {self.chart2}"
        )


def blow_up(curve: PlaneCurve, pt) -> BlowUpStep:
    """Blow up a singular point; refuses smooth centers."""
    m = multiplicity(curve, pt)
    if m < 2:
        raise ValueError(f"point {pt} is smooth (m=1); nothing to blow up")
    shifted = _translate(curve.expr, pt)

    def chart(replaced, multiplier, divisor):
        total = expand(shifted.subs(replaced, replaced * multiplier))
        quo, rem = sympy.div(total, divisor ** m, _x, _y)
        if expand(rem) != 0:
            raise ArithmeticError("exceptional factor did not divide to order m")
        quo = expand(quo)
        _, r2 = sympy.div(quo, divisor, _x, _y)
        if expand(r2) == 0:
            raise ArithmeticError("division by the exceptional factor was not maximal")
        return PlaneCurve(quo, prime=curve.prime, check_squarefree=False)

    c1 = chart(_y, _x, _x)   # (x, y) -> (x, x y), strict transform over x = 0
    c2 = chart(_x, _y, _y)   # (x, y) -> (x y, y), strict transform over y = 0
    return BlowUpStep(
        center=(sympy.sympify(pt[0]), sympy.sympify(pt[1])),
        center_multiplicity=m,
        chart1=c1,
        chart2=c2,
    )


# ---------------------------------------------------------------------------
# Resolution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResolutionReport:
    """Full blow-up history of a curve's affine singular locus."""

    curve: PlaneCurve
    steps: tuple
    count: int
    smooth: bool
    terminated: bool
    delta_total: int
    delta_remaining: tuple  # after each step, strictly decreasing
    certificate: tuple  # per terminal chart: residual singular sets checked empty
    unresolved: tuple  # diagnostics for centers we refuse (degree cap etc.)
    prime: int = None
    tower: tuple = ()

    def __str__(self):
        status = "smooth" if self.smooth else "NOT smooth"
        return (
            f"resolution in {self.count} blow-ups ({status}); "
            f"delta={self.delta_total}; tower={list(self.tower)}"
        )


def projective_patches(curve: PlaneCurve):
    """The two extra affine patches of the projective closure.

    Returns (patch_y, patch_x): patch_y is F(x,1,z) with z renamed to y
    (its locus y = 0 carries the points at infinity [X:Y:0], Y != 0);
    patch_x is F(1,y,z) likewise, where only the origin (the point
    [1:0:0]) is invisible in patch_y.
    """
    z = sympy.Dummy("z")
    F = Poly(curve.expr, _x, _y).homogenize(z)
    patch_y = expand(F.as_expr().subs({_y: 1, z: _y}, simultaneous=True))
    patch_x = expand(F.as_expr().subs({_x: 1, _y: _x, z: _y}, simultaneous=True))
    make = lambda e: PlaneCurve(e, prime=curve.prime, check_squarefree=False)
    return make(patch_y), make(patch_x)


def singular_points_at_infinity(curve: PlaneCurve):
    """Singular points of the projective closure on the line at infinity.

    Each entry is (patch, point) with patch in {"y", "x"} naming the
    affine patch whose coordinates the point uses.
    """
    patch_y, patch_x = projective_patches(curve)
    out = []
    for p in singular_points(patch_y):
        if _is_zero_exact(p[1]):
            out.append(("y", p))
    origin = (sympy.Integer(0), sympy.Integer(0))
    if is_singular_at(patch_x, origin):
        out.append(("x", origin))
    return out


def resolve(curve: PlaneCurve, max_steps: int = 64, prime: int = None,
            include_infinity: bool = False) -> ResolutionReport:
    """Iterate blow-ups depth-first until every strict transform is smooth.

    Singular points are processed in lexicographic order; within one
    blow-up, chart 1 is followed before chart 2, and only points on the
    exceptional divisor are followed (chart 2 contributes just its
    origin, the single point chart 1 cannot see).  By default only the
    affine singular locus is resolved; include_infinity=True takes the
    projective closure once and resolves its extra patches too.
    Exhausting max_steps reports non-termination instead of failing
    silently.
    """
    prime = prime if prime is not None else curve.prime
    steps = []
    contributions = []
    certificate = []
    unresolved = []
    budget_left = [max_steps]

    def local_resolve(c: PlaneCurve, pt):
        if budget_left[0] <= 0:
            raise _BudgetExhausted()
        deg = _point_algebraic_degree(pt)
        if deg > BLOWUP_DEGREE_CAP:
            unresolved.append(
                f"center {pt} has algebraic degree {deg} > {BLOWUP_DEGREE_CAP}; not blown up"
            )
            return
        step = blow_up(c, pt)
        budget_left[0] -= 1
        steps.append(step)
        m = step.center_multiplicity
        contributions.append(m * (m - 1) // 2)

        # chart 1: follow singular points on the exceptional divisor x = 0
        chart1_children = []
        for p in singular_points(step.chart1):
            if _is_zero_exact(p[0]):
                mm = multiplicity(step.chart1, p)
                assert mm <= m, "multiplicity must not grow over the center"
                chart1_children.append(p)
        terminal1 = not chart1_children
        for p in chart1_children:
            local_resolve(step.chart1, p)
        if terminal1:
            certificate.append(
                f"chart1 of {pt}: no singular points on the exceptional divisor"
            )
        # chart 2: only the origin is invisible in chart 1
        origin = (sympy.Integer(0), sympy.Integer(0))
        if on_curve(step.chart2, origin) and is_singular_at(step.chart2, origin):
            mm = multiplicity(step.chart2, origin)
            assert mm <= m, "multiplicity must not grow over the center"
            local_resolve(step.chart2, origin)
        else:
            certificate.append(f"chart2 of {pt}: origin is not a singular point")

    terminated = True
    start_points = singular_points(curve)
    infinity_work = []
    if include_infinity:
        patches = dict(zip(("y", "x"), projective_patches(curve)))
        infinity_work = [
            (patches[tag], pt) for tag, pt in singular_points_at_infinity(curve)
        ]
    try:
        for pt in start_points:
            local_resolve(curve, pt)
        for patch_curve, pt in infinity_work:
            local_resolve(patch_curve, pt)
    except _BudgetExhausted:
        terminated = False
    if not start_points:
        certificate.append("input curve has no affine singular points")

    delta_total = sum(contributions)
    remaining = []
    acc = delta_total
    for contrib in contributions:
        acc -= contrib
        remaining.append(acc)
    smooth = terminated and not unresolved
    tower = tuple(tower_report(prime, len(steps))) if prime is not None else ()
    return ResolutionReport(
        curve=curve,
        steps=tuple(steps),
        count=len(steps),
        smooth=smooth,
        terminated=terminated,
        delta_total=delta_total,
        delta_remaining=tuple(remaining),
        certificate=tuple(certificate),
        unresolved=tuple(unresolved),
        prime=prime,
        tower=tower,
    )


class _BudgetExhausted(Exception):
    pass


def delta_invariant(curve: PlaneCurve) -> int:
    """Sum of m(m-1)/2 over all infinitely near singular points."""
    report = resolve(curve)
    if not report.smooth:
        raise ArithmeticError("delta invariant needs a complete resolution")
    return report.delta_total


def tower_report(p: int, count: int):
    """Constant-field tower sizes [p, p^2, ..., p^count]."""
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if count < 0:
        raise ValueError("count must be >= 0")
    return [p ** i for i in range(1, count + 1)]
