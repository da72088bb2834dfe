from fractions import Fraction

import pytest
import sympy

from globalfields.blowup import (
    BLOWUP_DEGREE_CAP,
    CurveSyntaxError,
    EliminationDegreeError,
    PlaneCurve,
    blow_up,
    curve_from_terms,
    delta_invariant,
    is_singular_at,
    multiplicity,
    parse_curve,
    projective_patches,
    resolve,
    singular_points,
    singular_points_at_infinity,
    tower_report,
)

x, y = sympy.symbols("x y")

NODE = "y^2 - x^2 - x^3"
CUSP = "y^2 - x^3"
TACNODE = "y^2 - x^4"

SMOOTH_CORPUS = [
    "y - x^2",
    "y^2 - x^3 - x - 1",
    "x^2 + y^2 - 1",
    "y - x^3 + x",
    "x y - 1",
    "y^2 - x",
    "y^3 - x^2 - 1",
    "x^2 - y^2 - 1",
    "y^2 + y - x^3",
    "2x + 3y - 1",
]


# ---------------------------------------------------------------------------
# Parsing and printing
# ---------------------------------------------------------------------------


def test_parse_nodal_cubic():
    c = parse_curve(NODE)
    assert sympy.expand(c.as_user_expr() - (y ** 2 - x ** 3 - x ** 2)) == 0


def test_parse_cuspidal_cubic():
    c = parse_curve(CUSP)
    assert sympy.expand(c.as_user_expr() - (y ** 2 - x ** 3)) == 0


def test_parse_error_offset():
    with pytest.raises(CurveSyntaxError) as err:
        parse_curve("y^^2")
    assert err.value.position == 2


def test_parse_error_cases():
    for bad in ("", "  ", "x + * y", "1/0x", "x^", "+", "x + )"):
        with pytest.raises(CurveSyntaxError):
            parse_curve(bad)


def test_parse_rejects_zero_polynomial():
    with pytest.raises(CurveSyntaxError):
        parse_curve("x - x")


def test_whitespace_insensitive():
    assert parse_curve(" y ^ 2 - x ^ 3 ") == parse_curve("y^2-x^3")


def test_fractional_coefficients():
    c = parse_curve("1/2x^2 - 3/4y + 2")
    assert sympy.expand(c.as_user_expr() - (sympy.Rational(1, 2) * x ** 2 - sympy.Rational(3, 4) * y + 2)) == 0


@pytest.mark.parametrize("text", [NODE, CUSP, TACNODE, "1/2x^2y^3 - 7xy + 5/3", "x y - 1"])
def test_print_parse_round_trip(text):
    c = parse_curve(text)
    assert parse_curve(str(c)) == c


def test_squarefree_enforced():
    with pytest.raises(ValueError):
        parse_curve("x^2 + 2xy + y^2")  # (x+y)^2
    with pytest.raises(ValueError):
        PlaneCurve((y - x) ** 2 * (y + x))


def test_prime_validation():
    with pytest.raises(ValueError):
        parse_curve(NODE, prime=6)
    assert parse_curve(NODE, prime=7).prime == 7


# ---------------------------------------------------------------------------
# Singular points
# ---------------------------------------------------------------------------


def test_node_singular_at_origin_only():
    pts = singular_points(parse_curve(NODE))
    assert pts == [(0, 0)]
    # independent oracle: sympy's polynomial system solver
    f = y ** 2 - x ** 2 - x ** 3
    sols = sympy.solve([f, f.diff(x), f.diff(y)], [x, y], dict=True)
    assert [(s[x], s[y]) for s in sols] == [(0, 0)]


def test_circle_is_smooth_with_gradient_crosscheck():
    circle = parse_curve("x^2 + y^2 - 1")
    assert singular_points(circle) == []
    # spec oracle: gradient does not vanish on sampled rational points
    for t in (Fraction(1, 2), Fraction(2, 3), Fraction(-3, 5), Fraction(7, 4)):
        px = Fraction(1 - t * t, 1 + t * t)
        py = Fraction(2 * t, 1 + t * t)
        assert px * px + py * py == 1
        grad = (2 * px, 2 * py)
        assert grad != (0, 0)


def test_tacnode_singular_at_origin():
    assert singular_points(parse_curve(TACNODE)) == [(0, 0)]


def test_two_singular_points():
    # (y^2 - x^2)(y^2 - (x-3)^2) style: two separated nodes
    f = (y ** 2 - x ** 3 - x ** 2) * 1
    c = PlaneCurve((y ** 2 - x ** 2) * ((y - 5) ** 2 - (x - 3) ** 2) + 0)
    pts = singular_points(c)
    assert (0, 0) in pts and (3, 5) in pts


def test_algebraic_singular_points():
    # y^2 = (x^2-2)^2 has nodes at (+-sqrt(2), 0)
    c = PlaneCurve(y ** 2 - (x ** 2 - 2) ** 2)
    pts = singular_points(c)
    assert len(pts) == 2
    for px, py in pts:
        assert py == 0
        assert sympy.expand(px ** 2 - 2).is_zero or sympy.simplify(px ** 2 - 2) == 0


def test_elimination_degree_guard():
    c = PlaneCurve(y ** 2 - (x ** 13 - x - 1), check_squarefree=False)
    with pytest.raises(EliminationDegreeError):
        singular_points(c)


def test_univariate_squarefree_curves_are_smooth():
    assert singular_points(PlaneCurve(x ** 2 - 1)) == []
    assert singular_points(PlaneCurve(y ** 3 - y, check_squarefree=False)) == []


# ---------------------------------------------------------------------------
# Multiplicity
# ---------------------------------------------------------------------------


def test_multiplicity_examples():
    assert multiplicity(parse_curve(NODE), (0, 0)) == 2
    assert multiplicity(parse_curve("x^2 + y^2 - 1"), (0, 1)) == 1
    assert multiplicity(parse_curve("y^2 - x^5"), (0, 0)) == 2


def test_multiplicity_triple_point():
    c = PlaneCurve(y ** 3 - x ** 3 - x ** 4)
    assert multiplicity(c, (0, 0)) == 3


def test_multiplicity_requires_point_on_curve():
    with pytest.raises(ValueError):
        multiplicity(parse_curve(NODE), (1, 1))


def test_multiplicity_after_translation():
    c = PlaneCurve((y - 2) ** 2 - (x - 1) ** 2 - (x - 1) ** 3)
    assert multiplicity(c, (1, 2)) == 2


# ---------------------------------------------------------------------------
# Blow-up
# ---------------------------------------------------------------------------


def test_blow_up_node_charts():
    step = blow_up(parse_curve(NODE), (0, 0))
    assert step.center_multiplicity == 2
    assert sympy.expand(step.chart1.as_user_expr() - (y ** 2 - 1 - x)) == 0
    assert singular_points(step.chart1) == []


def test_blow_up_cusp_chart1():
    step = blow_up(parse_curve(CUSP), (0, 0))
    assert sympy.expand(step.chart1.as_user_expr() - (y ** 2 - x)) == 0
    assert singular_points(step.chart1) == []


def test_blow_up_tacnode_still_singular():
    step = blow_up(parse_curve(TACNODE), (0, 0))
    assert sympy.expand(step.chart1.as_user_expr() - (y ** 2 - x ** 2)) == 0
    assert is_singular_at(step.chart1, (0, 0))


def test_blow_up_refuses_smooth_points():
    with pytest.raises(ValueError):
        blow_up(parse_curve("x^2 + y^2 - 1"), (0, 1))


def test_blow_up_is_birational():
    # substituting the chart map back recovers f up to the exceptional factor
    for text in (NODE, CUSP, TACNODE):
        curve = parse_curve(text)
        step = blow_up(curve, (0, 0))
        m = step.center_multiplicity
        recovered1 = sympy.cancel(x ** m * step.chart1.as_user_expr().subs(y, y / x))
        assert sympy.expand(recovered1 - curve.as_user_expr()) == 0
        recovered2 = sympy.cancel(y ** m * step.chart2.as_user_expr().subs(x, x / y))
        assert sympy.expand(recovered2 - curve.as_user_expr()) == 0


def test_blow_up_at_translated_center():
    c = PlaneCurve((y - 2) ** 2 - (x - 1) ** 2 - (x - 1) ** 3)
    step = blow_up(c, (1, 2))
    assert sympy.expand(step.chart1.as_user_expr() - (y ** 2 - 1 - x)) == 0


# ---------------------------------------------------------------------------
# Resolution
# ---------------------------------------------------------------------------


def test_resolution_counts():
    assert resolve(parse_curve(NODE)).count == 1
    assert resolve(parse_curve(CUSP)).count == 1
    assert resolve(parse_curve(TACNODE)).count == 2


@pytest.mark.parametrize("text", SMOOTH_CORPUS)
def test_smooth_curves_resolve_in_zero_steps(text):
    report = resolve(parse_curve(text))
    assert report.count == 0 and report.smooth


def test_delta_invariants_classical_values():
    assert delta_invariant(parse_curve(NODE)) == 1
    assert delta_invariant(parse_curve(CUSP)) == 1
    assert delta_invariant(parse_curve(TACNODE)) == 2
    assert delta_invariant(parse_curve("y^2 - x^5")) == 2  # ramphoid cusp


def test_delta_remaining_strictly_decreases():
    for text in (TACNODE, "y^2 - x^5", "y^3 - x^3 - x^4"):
        report = resolve(parse_curve(text))
        values = [report.delta_total] + list(report.delta_remaining)
        assert all(a > b for a, b in zip(values, values[1:]))
        assert values[-1] == 0


def test_multiplicity_never_grows_along_resolution():
    report = resolve(parse_curve("y^3 - x^3 - x^4"))
    mults = [s.center_multiplicity for s in report.steps]
    assert mults[0] == 3
    assert all(m <= mults[0] for m in mults)


def test_resolution_certificate_mentions_terminal_charts():
    report = resolve(parse_curve(NODE))
    assert report.smooth
    assert any("chart1" in line for line in report.certificate)


def test_max_steps_exhaustion_reported():
    report = resolve(parse_curve(TACNODE), max_steps=1)
    assert not report.terminated
    assert not report.smooth
    assert report.count == 1


def test_high_degree_centers_reported_not_blown():
    # y^2 = h(x)^2 with h an irreducible quintic: singular points of degree 5
    h = x ** 5 - x - 1
    c = PlaneCurve(y ** 2 - h ** 2)
    pts = singular_points(c)
    assert len(pts) == 5
    report = resolve(c)
    assert report.count == 0
    assert len(report.unresolved) == 5
    assert not report.smooth
    assert str(BLOWUP_DEGREE_CAP) in report.unresolved[0]


def test_resolve_at_algebraic_degree_two_center():
    # nodes at (+-sqrt(2), 0): degree 2 <= cap, so they are blown up
    c = PlaneCurve(y ** 2 - (x ** 2 - 2) ** 2)
    report = resolve(c)
    assert report.count == 2
    assert report.smooth


def test_two_rational_nodes_resolve_independently():
    # the two line pairs also cross each other, adding two more nodes
    c = PlaneCurve((y ** 2 - x ** 2) * ((y - 5) ** 2 - (x - 3) ** 2) + 0)
    pts = singular_points(c)
    assert len(pts) == 4 and (0, 0) in pts and (3, 5) in pts
    report = resolve(c)
    assert report.count == 4
    assert report.smooth


def test_tower_attached_via_prime():
    report = resolve(parse_curve(NODE), prime=2)
    assert report.tower == (2,)
    report5 = resolve(parse_curve(TACNODE), prime=5)
    assert report5.tower == (5, 25)


# ---------------------------------------------------------------------------
# Points at infinity
# ---------------------------------------------------------------------------


def test_tacnode_has_one_singularity_at_infinity():
    pts = singular_points_at_infinity(parse_curve(TACNODE))
    assert len(pts) == 1
    patch, point = pts[0]
    assert patch == "y" and point == (0, 0)


def test_node_and_cusp_smooth_at_infinity():
    assert singular_points_at_infinity(parse_curve(NODE)) == []
    assert singular_points_at_infinity(parse_curve(CUSP)) == []


def test_projective_resolution_of_tacnode():
    report = resolve(parse_curve(TACNODE), include_infinity=True)
    assert report.count == 4  # 2 affine + 2 at infinity (z^2 = x^4 pattern)


def test_projective_patches_cover_line_at_infinity():
    patch_y, patch_x = projective_patches(parse_curve("x^3 + y^3 - 1"))
    # Fermat cubic meets infinity at [1:-1:0]: visible in patch_y at (-1, 0)
    assert not patch_y.as_user_expr().subs({x: -1, y: 0})


# ---------------------------------------------------------------------------
# Tower bookkeeping
# ---------------------------------------------------------------------------


def test_tower_examples():
    assert tower_report(2, 1) == [2]
    assert tower_report(3, 0) == []
    assert tower_report(5, 3) == [5, 25, 125]


def test_tower_rejects_composites():
    with pytest.raises(ValueError):
        tower_report(6, 2)
    with pytest.raises(ValueError):
        tower_report(2, -1)


def test_curve_from_terms_round_trip():
    terms = {(2, 0): Fraction(1), (0, 1): Fraction(-3, 2)}
    c = curve_from_terms(terms)
    assert parse_curve(str(c)) == c
