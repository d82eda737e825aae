import random
from fractions import Fraction

import pytest
from mpmath import mp

from abelint.config import Config
from abelint.cycles import CycleVector, VanishingCycleCombo, continue_fiber_to_real
from abelint.errors import ComputationError
from abelint.hyperelliptic import (OneForm, OvalFamily, cauchy_J, check_exth,
                                   integral_I, integral_I_prime, loop_integral,
                                   main4_limit_check, oval_endpoints,
                                   oval_form_integral, reduce_form,
                                   vanishing_criterion)
from abelint.monodromy import divisor_lattice, monodromy
from abelint.ratpoly import RatPoly, trace_poly

from conftest import QUARTIC_F

X = RatPoly.x()

CENTRAL = OvalFamily(f=QUARTIC_F, pair_index=1, t_min="-0.85", t_max="-0.15")


@pytest.fixture(scope="module")
def quartic_rep(config):
    return monodromy(QUARTIC_F, config)


@pytest.fixture(scope="module")
def quartic_lattice(quartic_rep):
    return divisor_lattice(quartic_rep, QUARTIC_F)


# ---------------------------------------------------------------------------
# form reduction
# ---------------------------------------------------------------------------

def test_reduce_xy_dx():
    omega = OneForm.of(dx={(1, 1): 1})
    red = reduce_form(omega, QUARTIC_F)
    assert red.k == X
    assert red.a_part == {}
    assert red.b_part == {}


def test_reduce_exact_form():
    omega = OneForm.of(dx={(3, 0): 1})
    red = reduce_form(omega, QUARTIC_F)
    assert red.k.is_zero()
    assert red.a_part == {(4, 0): Fraction(1, 4)}
    assert red.b_part == {}


def test_reduce_y2_dy():
    omega = OneForm.of(dy={(0, 2): 1})
    red = reduce_form(omega, QUARTIC_F)
    assert red.verify(omega, QUARTIC_F)
    assert red.k.is_zero()     # y^2 dy is exact, no y dx residue
    assert red.a_part == {(0, 3): Fraction(1, 3)}
    assert red.b_part == {}


def test_reduce_identity_random_forms():
    rng = random.Random(99)
    f = QUARTIC_F
    for _ in range(100):
        dx = {}
        dy = {}
        for _ in range(rng.randint(0, 4)):
            dx[(rng.randint(0, 6), rng.randint(0, 6))] = Fraction(
                rng.randint(-5, 5), rng.randint(1, 3))
        for _ in range(rng.randint(0, 4)):
            dy[(rng.randint(0, 6), rng.randint(0, 6))] = Fraction(
                rng.randint(-5, 5), rng.randint(1, 3))
        omega = OneForm.of(dx=dx, dy=dy)
        red = reduce_form(omega, f)
        assert red.verify(omega, f)


def test_reduce_other_fiber_polynomials():
    rng = random.Random(7)
    for f in (X ** 2 - 1, X ** 3 - 3 * X, X ** 5 + X ** 2 - 2):
        omega = OneForm.of(dx={(2, 4): Fraction(1, 2), (0, 1): 3},
                           dy={(1, 3): -2})
        red = reduce_form(omega, f)
        assert red.verify(omega, f)


# ---------------------------------------------------------------------------
# oval geometry and basic integrals
# ---------------------------------------------------------------------------

def test_oval_endpoints_symmetric(config):
    x1, x2 = oval_endpoints(CENTRAL, mp.mpf("-0.5"), config.precision_bits)
    assert x1 < 0 < x2
    assert abs(x1 + x2) < mp.mpf(2) ** -100


def test_integral_odd_k_vanishes(config):
    for k in (X, X ** 3):
        for t in ("-0.3", "-0.6"):
            val = integral_I(CENTRAL, k, mp.mpf(t), config)
            assert abs(val) < mp.mpf(10) ** -25


def test_integral_area_positive(config):
    val = integral_I(CENTRAL, RatPoly.one(), mp.mpf("-0.5"), config)
    assert val > mp.mpf("1e-3")


def test_integral_matches_loop_oracle(config):
    # second scheme: dogbone contour around the two middle branch points
    t = mp.mpf("-0.4")
    x1, x2 = oval_endpoints(CENTRAL, t, config.precision_bits)
    with mp.workprec(160):
        roots_out = mp.sqrt(2 * (1 + mp.sqrt(-t)))
        radius = (x2 + roots_out) / 2
        direct = integral_I(CENTRAL, RatPoly.one(), t, config)
        loop = loop_integral(QUARTIC_F, RatPoly.one(), t, 0, radius,
                             mode="y_dx", config=config)
        assert abs(abs(loop) - abs(direct)) < mp.mpf(10) ** -10


def test_derivative_ladder(config):
    # finite-difference dI/dt matches the k/y quadrature
    t = mp.mpf("-0.5")
    h = mp.mpf(10) ** -7
    k = RatPoly.one()
    with mp.workprec(200):
        fd = (integral_I(CENTRAL, k, t + h, config)
              - integral_I(CENTRAL, k, t - h, config)) / (2 * h)
        direct = integral_I_prime(CENTRAL, k, t, config)
        assert abs(fd - direct) < mp.mpf(10) ** -8


def test_dropped_pieces_integrate_to_zero(config):
    # dA and B d(y^2 - f) contribute nothing over the closed oval
    omega = OneForm.of(dx={(2, 4): Fraction(1, 2), (1, 1): 2, (3, 0): 1},
                       dy={(1, 3): -2, (0, 0): 1})
    red = reduce_form(omega, QUARTIC_F)
    t = mp.mpf("-0.45")
    val_omega = oval_form_integral(CENTRAL, omega, t, config)
    val_kydx = integral_I(CENTRAL, red.k, t, config)
    assert abs(val_omega - val_kydx) < mp.mpf(10) ** -20
    # isolate dA alone by expanding a reduced form with k = 0, B = 0
    from abelint.hyperelliptic import ReducedForm
    da_form = ReducedForm(RatPoly.zero(), red.a_part, {}).expansion(QUARTIC_F)
    bd_form = ReducedForm(RatPoly.zero(), {}, red.b_part).expansion(QUARTIC_F)
    assert abs(oval_form_integral(CENTRAL, da_form, t, config)) < mp.mpf(10) ** -20
    assert abs(oval_form_integral(CENTRAL, bd_form, t, config)) < mp.mpf(10) ** -20


# ---------------------------------------------------------------------------
# Cauchy integral and the derivative identities
# ---------------------------------------------------------------------------

def test_j_at_zero_is_twice_i_prime(config):
    with mp.workprec(200):
        t = mp.mpf("-0.5")
        for k in (RatPoly.one(), X ** 2):
            j0 = cauchy_J(CENTRAL, k, t, mp.mpf(0), config)
            ip = integral_I_prime(CENTRAL, k, t, config)
            assert abs(j0 - 2 * ip) < mp.mpf(10) ** -20


def test_prop41_first_orders(config):
    # binom(-1/2, k) d^k/dz^k J_t(0) = 2 I^{(k+1)}(t) for k = 1, 2.
    # The z-derivatives need a contour with y != 0, so J is realized on the
    # dogbone loop around the two middle branch points, which agrees with
    # the real-oval value wherever both are defined.
    t = mp.mpf("-0.5")
    k_poly = RatPoly.one()
    with mp.workprec(220):
        x1, x2 = oval_endpoints(CENTRAL, t, config.precision_bits)
        span = x2 - x1
        # tight ellipse around the oval segment: y stays away from zero and
        # the poles of the Cauchy kernel stay inside for small |z|
        a, b = span / 2 + span / 8, span / 8
        j = lambda z: loop_integral(QUARTIC_F, k_poly, t, 0, a,
                                    mode="cauchy", z=z, semi_minor=b,
                                    config=config)
        ip = lambda s: integral_I_prime(CENTRAL, k_poly, s, config)
        j0 = j(mp.mpf(0))
        sign = 1 if abs(j0 - 2 * ip(t)) < abs(j0 + 2 * ip(t)) else -1
        assert abs(sign * j0 - 2 * ip(t)) < mp.mpf(10) ** -20
        hz = mp.mpf(10) ** -6
        dj = (j(hz) - j(-hz)) / (2 * hz)
        d2j = (j(hz) - 2 * j0 + j(-hz)) / hz ** 2
        ht = mp.mpf(10) ** -6
        i2 = (ip(t + ht) - ip(t - ht)) / (2 * ht)
        i3 = (ip(t + ht) - 2 * ip(t) + ip(t - ht)) / ht ** 2
        assert abs(Fraction(-1, 2) * sign * dj - 2 * i2) < mp.mpf(10) ** -8
        # binom(-1/2, 2) = 3/8
        assert abs(Fraction(3, 8) * sign * d2j - 2 * i3) < mp.mpf(10) ** -6


def test_ik1_second_derivative_loop(config):
    # I''(t) = (1/2)(-1/2) contour integral of k/y^3 on the big-loop family
    k = X
    with mp.workprec(220):
        t = mp.mpf("-0.5")
        radius = mp.mpf(4)
        ht = mp.mpf(10) ** -6
        ipr = lambda s: loop_integral(QUARTIC_F, k, s, 0, radius,
                                      mode="dx_over_2y", config=config)
        i2_fd = (ipr(t + ht) - ipr(t - ht)) / (2 * ht)
        i2_loop = Fraction(-1, 4) * loop_integral(QUARTIC_F, k, t, 0, radius,
                                                  mode="dx_over_y3", config=config)
        assert abs(i2_fd - i2_loop) < mp.mpf(10) ** -8


def test_cauchy_pole_rejection(config):
    t = mp.mpf("-0.5")
    with pytest.raises(ComputationError):
        cauchy_J(CENTRAL, RatPoly.one(), t, mp.mpf("0.3"), config)


# ---------------------------------------------------------------------------
# the remark fixture: big loop around all four roots
# ---------------------------------------------------------------------------

def test_remark_zero_dimensional_constant():
    assert trace_poly(X ** 2, QUARTIC_F).value == RatPoly.constant(8)


def test_remark_criterion_constant(config, quartic_rep, quartic_lattice):
    report = vanishing_criterion(QUARTIC_F, X, CycleVector.ones(4),
                                 config, quartic_rep, quartic_lattice)
    assert report.constant
    assert report.constant_value == 4      # sum of x_i^2 / 2


def test_remark_I_linear_in_t(config):
    with mp.workprec(180):
        ts = [mp.mpf("-0.9") + mp.mpf("0.06") * j for j in range(12)]
        vals = [loop_integral(QUARTIC_F, X, t, 0, 4, mode="y_dx", config=config)
                for t in ts]
        # least-squares line fit; residuals must be tiny and slope constant
        n = len(ts)
        sx = sum(ts); sy = sum(vals)
        sxx = sum(t * t for t in ts); sxy = sum(t * v for t, v in zip(ts, vals))
        slope = (n * sxy - sx * sy) / (n * sxx - sx ** 2)
        intercept = (sy - slope * sx) / n
        for t, v in zip(ts, vals):
            assert abs(v - (intercept + slope * t)) < mp.mpf(10) ** -8
        # I'(t) is the nonzero constant 2 pi i (up to orientation)
        iprime = loop_integral(QUARTIC_F, X, mp.mpf("-0.5"), 0, 4,
                               mode="dx_over_2y", config=config)
        assert abs(abs(iprime) - 2 * mp.pi) < mp.mpf(10) ** -8
        assert abs(slope - iprime) < mp.mpf(10) ** -8


# ---------------------------------------------------------------------------
# symmetric pair criterion
# ---------------------------------------------------------------------------

def _symmetric_pair_labels(config, quartic_rep):
    with mp.workprec(160):
        fiber = continue_fiber_to_real(QUARTIC_F, quartic_rep, mp.mpf("0.25"),
                                       config)
        outer = max(range(4), key=lambda i: mp.re(fiber[i]))
        partner = min(range(4),
                      key=lambda i: abs(fiber[i] + fiber[outer]))
        return outer + 1, partner + 1


def test_symmetric_pair_even_k(config, quartic_rep, quartic_lattice):
    i, j = _symmetric_pair_labels(config, quartic_rep)
    v = [0, 0, 0, 0]
    v[i - 1], v[j - 1] = 1, -1
    report = vanishing_criterion(QUARTIC_F, X, CycleVector(4, v),
                                 config, quartic_rep, quartic_lattice)
    assert report.constant
    assert report.constant_value == 0


def test_symmetric_pair_odd_k_fails(config, quartic_rep, quartic_lattice):
    i, j = _symmetric_pair_labels(config, quartic_rep)
    v = [0, 0, 0, 0]
    v[i - 1], v[j - 1] = 1, -1
    report = vanishing_criterion(QUARTIC_F, RatPoly.one(), CycleVector(4, v),
                                 config, quartic_rep, quartic_lattice)
    assert not report.constant
    assert report.residual > mp.mpf(2) ** -12


# ---------------------------------------------------------------------------
# the pullback witness search
# ---------------------------------------------------------------------------

def test_exth_witness_for_odd_k(config):
    witness = check_exth(CENTRAL, X, config)
    assert witness is not None
    assert witness.r == X ** 2
    assert witness.exact
    for t in CENTRAL.t_samples(16, 160):
        assert abs(integral_I(CENTRAL, X, t, config)) < mp.mpf(10) ** -10


def test_exth_no_witness_for_constant_k(config):
    witness = check_exth(CENTRAL, RatPoly.one(), config)
    assert witness is None
    for t in CENTRAL.t_samples(4, 160):
        assert abs(integral_I(CENTRAL, RatPoly.one(), t, config)) > mp.mpf("1e-3")


def test_exth_empty_candidates():
    family = OvalFamily(f=X ** 3 - 3 * X, pair_index=0, t_min="-1.9", t_max="-0.1")
    assert check_exth(family, RatPoly.one(), Config()) is None


# ---------------------------------------------------------------------------
# the confluence limit (main4)
# ---------------------------------------------------------------------------

def test_main4_morse_confluence(config):
    combo = VanishingCycleCombo(2, {(1, 2): Fraction(1)})
    with mp.workprec(200):
        report = main4_limit_check(QUARTIC_F, X, combo,
                                   [mp.mpf("-0.01"), mp.mpf("-0.02")],
                                   mp.sqrt(2), config)
    assert report.max_relative_deviation < mp.mpf(10) ** -6


def test_main4_even_confluence_pullback(config):
    # even f with a Morse point at x = 0 and K in C[x^2]: the symmetric
    # confluent roots give an identically zero formula side, and the
    # numeric limit agrees
    f_even = X ** 2 * (X ** 2 / 4 + 1)
    k = X ** 3 + 2 * X             # K = x^4/4 + x^2
    combo = VanishingCycleCombo(2, {(1, 2): Fraction(1)})
    with mp.workprec(200):
        report = main4_limit_check(f_even, k, combo, [mp.mpf("-0.01")],
                                   mp.mpf(0), config)
    for row in report.per_sample:
        assert abs(row["formula"]) < mp.mpf(10) ** -40
        assert abs(row["limit"]) < mp.mpf(10) ** -8


def test_main4_zero_combo_trivial(config):
    combo = VanishingCycleCombo(2, {})
    with mp.workprec(200):
        report = main4_limit_check(QUARTIC_F, X ** 3 + 2 * X, combo,
                                   [mp.mpf("-0.01")], mp.sqrt(2), config)
    for row in report.per_sample:
        assert abs(row["limit"]) == 0
        assert abs(row["formula"]) == 0


def test_main4_multiplicity_orders_match(config):
    # k with k(sqrt(2)) = 0: both I' at t=0 and J_0 at z=0 vanish to first
    # order; with k = x neither vanishes (order 0)
    with mp.workprec(220):
        for k, expected_order in [(X, 0), (X ** 2 - 2, 1)]:
            zs = [mp.mpf(-1) / 4 ** j for j in range(3, 6)]
            j_vals = []
            for z in zs:
                order = local_order_data(k, z, config)
                j_vals.append(order)
            # fit the slope of log|J_0(z)| against log|z|
            slopes = []
            for a in range(len(zs) - 1):
                num = mp.log(abs(j_vals[a + 1])) - mp.log(abs(j_vals[a]))
                den = mp.log(abs(zs[a + 1])) - mp.log(abs(zs[a]))
                slopes.append(num / den)
            for s in slopes:
                assert abs(s - expected_order) < mp.mpf("0.05")

            t_vals = []
            ts = [mp.mpf(-1) / 4 ** j for j in range(3, 6)]
            for t in ts:
                spread = abs(mp.sqrt(2 * (1 + mp.sqrt(mp.mpc(-t)))) - mp.sqrt(2))
                val = loop_integral(QUARTIC_F, k, t, mp.sqrt(2), 6 * spread,
                                    mode="dx_over_2y", config=config)
                t_vals.append(val)
            slopes_t = []
            for a in range(len(ts) - 1):
                num = mp.log(abs(t_vals[a + 1])) - mp.log(abs(t_vals[a]))
                den = mp.log(abs(ts[a + 1])) - mp.log(abs(ts[a]))
                slopes_t.append(num / den)
            for s in slopes_t:
                assert abs(s - expected_order) < mp.mpf("0.05")


def local_order_data(k, z, config):
    """J_0(z) from the closed zero-dimensional formula at the confluence."""
    from abelint.numerics import roots_of_shifted
    df = QUARTIC_F.derivative()
    from abelint.numerics import eval_poly
    fiber = roots_of_shifted(QUARTIC_F, z, mp.prec)
    cluster = sorted(range(4), key=lambda i: abs(fiber[i] - mp.sqrt(2)))[:2]
    x_a, x_b = fiber[cluster[0]], fiber[cluster[1]]
    deriv = (eval_poly(k, x_a, mp.prec) / eval_poly(df, x_a, mp.prec)
             - eval_poly(k, x_b, mp.prec) / eval_poly(df, x_b, mp.prec))
    return 2 * mp.pi * mp.sqrt(-z) * deriv
