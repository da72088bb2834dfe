import random

import pytest

from globalfields.ffpoly import FqRatFunc, field, parse_poly
from globalfields.ore import (
    AdditivePoly,
    OrePoly,
    TwistSpec,
    from_additive,
    ore_mul,
    poly_ring,
    ratfunc_ring,
    scalar_ring,
    skew_laurent_normalize,
    to_additive,
)

from oracles import dense_poly_pow

F2 = field(2)
F3 = field(3)
F4 = field(2, 2)
F9 = field(3, 2)


def rand_ore(ring, twist, rng, max_deg=3, coeff_deg=1):
    coeffs = [ring.random_element(rng, coeff_deg) for _ in range(rng.randrange(1, max_deg + 2))]
    return OrePoly(ring, twist, coeffs)


# ---------------------------------------------------------------------------
# Twist specification
# ---------------------------------------------------------------------------


def test_twist_must_be_power_of_characteristic():
    TwistSpec(2, 1)
    TwistSpec(2, 4)
    TwistSpec(3, 27)
    with pytest.raises(ValueError):
        TwistSpec(2, 6)
    with pytest.raises(ValueError):
        TwistSpec(3, 2)


def test_twist_is_ring_homomorphism_on_samples():
    tw = TwistSpec(3, 3)
    rng = random.Random(1)
    elems = list(F9.elements())
    for _ in range(100):
        a, b = rng.choice(elems), rng.choice(elems)
        assert tw.apply(a + b) == tw.apply(a) + tw.apply(b)
        assert tw.apply(a * b) == tw.apply(a) * tw.apply(b)


# ---------------------------------------------------------------------------
# Commutation and ring laws
# ---------------------------------------------------------------------------


def test_tau_commutes_with_prime_field():
    ring = scalar_ring(F2)
    tw = TwistSpec(2, 2)
    tau = OrePoly.tau(ring, tw)
    for a in F2.elements():
        ca = OrePoly.constant(ring, tw, a)
        assert tau * ca == ca * tau


def test_noncommutativity_witness_over_f4():
    ring = scalar_ring(F4)
    tw = TwistSpec(2, 2)
    tau = OrePoly.tau(ring, tw)
    witnesses = [
        a for a in F4.elements()
        if tau * OrePoly.constant(ring, tw, a) != OrePoly.constant(ring, tw, a) * tau
    ]
    assert witnesses  # the two non-prime-field elements


def test_commutation_rule_every_element_small_fields():
    for cfg, e in ((F4, 2), (F4, 4), (F9, 3), (field(2, 4), 2)):
        ring = scalar_ring(cfg)
        tw = TwistSpec(cfg.p, e)
        tau = OrePoly.tau(ring, tw)
        for a in cfg.elements():
            lhs = tau * OrePoly.constant(ring, tw, a)
            rhs = OrePoly.constant(ring, tw, a ** e) * tau
            assert lhs == rhs


def test_ctau_dtau_product_matches_hand_formula():
    # (c tau)(d tau) = c d^p tau^2 with p = 2 over F_4
    ring = scalar_ring(F4)
    tw = TwistSpec(2, 2)
    u = F4.gen()
    for c in F4.elements():
        for d in F4.elements():
            prod = OrePoly(ring, tw, [F4.zero(), c]) * OrePoly(ring, tw, [F4.zero(), d])
            assert prod == OrePoly(ring, tw, [F4.zero(), F4.zero(), c * d ** 2])
    assert u  # used implicitly above via enumeration


@pytest.mark.parametrize("cfg,e", [(F4, 4), (F9, 9)])
def test_ring_laws_scalar_coefficients(cfg, e):
    ring = scalar_ring(cfg)
    tw = TwistSpec(cfg.p, e)
    rng = random.Random(42)
    for _ in range(250):
        f, g, h = (rand_ore(ring, tw, rng) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h


def test_ring_laws_rational_function_coefficients():
    ring = ratfunc_ring(F2)
    tw = TwistSpec(2, 2)
    rng = random.Random(7)
    for _ in range(60):
        f, g, h = (rand_ore(ring, tw, rng, max_deg=2) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h


def test_degree_additivity_over_domain():
    ring = poly_ring(F3)
    tw = TwistSpec(3, 3)
    rng = random.Random(3)
    for _ in range(50):
        f, g = rand_ore(ring, tw, rng), rand_ore(ring, tw, rng)
        if f and g:
            assert (f * g).degree == f.degree + g.degree


def test_mismatched_settings_rejected():
    f = OrePoly.tau(scalar_ring(F4), TwistSpec(2, 2))
    g = OrePoly.tau(scalar_ring(F4), TwistSpec(2, 4))
    with pytest.raises(ValueError):
        ore_mul(f, g)
    h = OrePoly.tau(scalar_ring(F2), TwistSpec(2, 2))
    with pytest.raises(ValueError):
        f + h


# ---------------------------------------------------------------------------
# Additive polynomials
# ---------------------------------------------------------------------------


def test_tau_maps_to_frobenius_power():
    ring = scalar_ring(F2)
    tw = TwistSpec(2, 2)
    ad = to_additive(OrePoly.tau(ring, tw))
    assert ad.terms == {2: F2.one()}


def test_identity_maps_to_x():
    ring = scalar_ring(F3)
    tw = TwistSpec(3, 3)
    ad = to_additive(OrePoly.constant(ring, tw, F3.one()))
    assert ad.terms == {1: F3.one()}


def test_carlitz_like_element_expansion():
    ring = ratfunc_ring(F2)
    tw = TwistSpec(2, 2)
    T = FqRatFunc(parse_poly(F2, "T"))
    f = OrePoly(ring, tw, [T, ring.one()])
    ad = to_additive(f)
    assert ad.terms == {1: T, 2: ring.one()}


def test_round_trip_and_exponent_rejection():
    ring = scalar_ring(F9)
    tw = TwistSpec(3, 9)
    rng = random.Random(5)
    for _ in range(20):
        f = rand_ore(ring, tw, rng)
        assert from_additive(to_additive(f)) == f
    bad = AdditivePoly(ring, 9, {3: F9.one()})  # 3 is not a power of 9
    with pytest.raises(ValueError):
        from_additive(bad)


def test_to_additive_rejects_trivial_twist():
    ring = scalar_ring(F2)
    with pytest.raises(ValueError):
        to_additive(OrePoly.tau(ring, TwistSpec(2, 1)))


def _additivity_defect(ad):
    """f(x+y) - f(x) - f(y) expanded honestly with dense bivariate dicts."""
    ring = ad.ring
    one = ring.one()
    total = {}
    for exp, c in ad.terms.items():
        xy = {(1, 0): one, (0, 1): one}
        powered = dense_poly_pow(xy, exp, one)
        for key, v in powered.items():
            term = c * v
            if key in total:
                term = total[key] + term
            if term:
                total[key] = term
            elif key in total:
                del total[key]
    for exp, c in ad.terms.items():
        for key in ((exp, 0), (0, exp)):
            if key in total:
                v = total[key] - c
            else:
                v = -c
            if v:
                total[key] = v
            elif key in total:
                del total[key]
    return total


@pytest.mark.parametrize("cfg,e", [(F2, 2), (F4, 2), (F3, 3)])
def test_additive_polynomials_satisfy_additivity(cfg, e):
    ring = scalar_ring(cfg)
    tw = TwistSpec(cfg.p, e)
    rng = random.Random(13)
    for _ in range(6):
        f = rand_ore(ring, tw, rng, max_deg=2)
        if not f:
            continue
        assert _additivity_defect(to_additive(f)) == {}


def test_multiplication_matches_composition_oracle():
    ring = scalar_ring(F9)
    tw = TwistSpec(3, 3)
    rng = random.Random(21)
    for _ in range(25):
        f = rand_ore(ring, tw, rng, max_deg=3)
        g = rand_ore(ring, tw, rng, max_deg=3)
        if not f or not g:
            continue
        lhs = to_additive(f * g)
        # oracle: substitute g's additive form into f's, expanding each
        # power by honest repeated multiplication
        gd = {(k,): v for k, v in to_additive(g).terms.items()}
        acc = {}
        for exp, c in to_additive(f).terms.items():
            powered = dense_poly_pow(gd, exp, ring.one())
            for (k,), v in powered.items():
                term = c * v
                if (k,) in powered and k in acc:
                    term = acc[k] + term
                elif k in acc:
                    term = acc[k] + term
                if term:
                    acc[k] = term
                elif k in acc:
                    del acc[k]
        assert lhs.terms == acc


def test_additive_evaluation_agrees_with_ore_action():
    # evaluating the additive image at field points = applying the operator
    cfg, _ = field(2, 2), None
    ring = scalar_ring(cfg)
    tw = TwistSpec(2, 4)
    rng = random.Random(2)
    for _ in range(10):
        f = rand_ore(ring, tw, rng)
        if not f:
            continue
        ad = to_additive(f)
        for a in cfg.elements():
            direct = cfg.zero()
            for i, c in enumerate(f.coeffs):
                direct = direct + c * a ** (4 ** i)
            assert ad.evaluate(a) == direct


# ---------------------------------------------------------------------------
# Skew Laurent normal form
# ---------------------------------------------------------------------------


def _rewrite_oracle(word, cfg, frob_power):
    """Normalize by repeated single-rule rewriting: b t^s -> t^s sigma^(-s)(b)."""
    n = cfg.n
    tokens = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(tokens) - 1):
            a, b = tokens[i], tokens[i + 1]
            if isinstance(a, int) and isinstance(b, int):
                tokens[i: i + 2] = [a + b]
                changed = True
                break
            if not isinstance(a, int) and not isinstance(b, int):
                tokens[i: i + 2] = [a * b]
                changed = True
                break
            if not isinstance(a, int) and isinstance(b, int):
                step = 1 if b > 0 else -1
                shift = (-frob_power * step) % n
                replacement = [step, a.frobenius(shift)]
                rest = b - step
                if rest:
                    replacement = [step, a.frobenius(shift), rest]
                    # keep the leftover t-power adjacent for later merging
                    replacement = [step] + ([a.frobenius(shift), rest])
                tokens[i: i + 2] = replacement
                changed = True
                break
    exponent = 0
    coeff = cfg.one()
    for tok in tokens:
        if isinstance(tok, int):
            exponent += tok
        else:
            coeff = coeff * tok
    return exponent, coeff


def test_coefficient_past_t_matches_inverse_twist():
    b = F4.gen()
    nf = skew_laurent_normalize([[b, 1]], F4, 1)
    # sigma = x -> x^2 on F_4 has order 2, so sigma^{-1} = sigma
    assert nf == {1: b.frobenius(1)}


def test_t_times_t_inverse_cancels():
    nf = skew_laurent_normalize([[1, -1]], F4, 1)
    assert nf == {0: F4.one()}


def test_two_letter_word_against_rewriting_oracle():
    b = F4.gen()
    c = b + F4.one()
    word = [1, b, 1, c]
    nf = skew_laurent_normalize([word], F4, 1)
    exp, coeff = _rewrite_oracle(word, F4, 1)
    assert nf == {exp: coeff}


@pytest.mark.parametrize("seed", range(8))
def test_random_words_against_rewriting_oracle(seed):
    rng = random.Random(seed)
    elems = [a for a in F9.elements() if a]
    word = []
    for _ in range(rng.randrange(2, 7)):
        if rng.random() < 0.5:
            word.append(rng.choice([-2, -1, 1, 2]))
        else:
            word.append(rng.choice(elems))
    nf = skew_laurent_normalize([word], F9, 1)
    exp, coeff = _rewrite_oracle(word, F9, 1)
    assert nf == ({exp: coeff} if coeff else {})


def test_sum_of_words_collects_terms():
    b = F4.gen()
    nf = skew_laurent_normalize([[b, 1], [1, b.frobenius(1)]], F4, 1)
    # both words normalize to t * b^2; the sum doubles it away in char 2
    assert nf == {}


def test_sigma_rejected_on_polynomial_coefficients():
    with pytest.raises(ValueError):
        skew_laurent_normalize([[parse_poly(F2, "T")]], F2, 1)


def test_text_rendering():
    ring = ratfunc_ring(F2)
    tw = TwistSpec(2, 2)
    T = FqRatFunc(parse_poly(F2, "T"))
    f = OrePoly(ring, tw, [T, ring.one(), T * T])
    assert str(f) == "T + tau + T^2*tau^2"
    g = OrePoly(ring, tw, [ring.zero(), T + ring.one()])
    assert str(g) == "(T + 1)*tau"
