from fractions import Fraction

import pytest
from mpmath import mp

from abelint.cycles import CycleVector, IntervalSystem
from abelint.errors import InputError
from abelint.invariant import pairing_is_zero
from abelint.ratpoly import RatPoly, chebyshev, compose
from abelint.solver import (classify,
                            common_right_factor, puiseux,
                            solve_moment_problem, verify_vanishing_numeric,
                            z_delta_basis, z_ud_basis, z_vd_basis)

from conftest import QUINTIC

X = RatPoly.x()
PAPER_V1 = CycleVector(6, (0, -1, -1, 0, 1, 1))
PAPER_V2 = CycleVector(6, (1, -1, 1, -1, 1, -1))


def sqrt3_over_2():
    with mp.workprec(200):
        return mp.sqrt(3) / 2


def t3_t2_span(bound):
    """All A(T_3) + B(T_2) of degree <= bound."""
    polys = []
    t2n, t3n = X ** 2, chebyshev(3).normalized()
    for w in (t3n, t2n):
        power = RatPoly.one()
        while power.is_constant() or power.degree <= bound:
            polys.append(power)
            power = power * w
            if not power.is_constant() and power.degree > bound:
                break
    return polys


# ---------------------------------------------------------------------------
# Z_{V_d}
# ---------------------------------------------------------------------------

def test_z_vd_t6_d2_bound2(t6, t6_lattice):
    basis = z_vd_basis(t6, 2, t6_lattice, 2)
    assert basis.same_span([X, X ** 2 - RatPoly.constant(Fraction(1, 2))])
    assert all(tag == "trace-kernel(2)" for tag in basis.provenance)


def test_z_vd_t6_d6_trivial(t6, t6_lattice):
    basis = z_vd_basis(t6, 6, t6_lattice, 8)
    assert basis.dim == 0


def test_z_vd_t6_d1(t6, t6_lattice):
    basis = z_vd_basis(t6, 1, t6_lattice, 3)
    assert basis.contains(X)                    # odd, full trace vanishes
    assert not basis.contains(RatPoly.one())    # constants never do


def test_z_vd_membership_via_oracle(t6, t6_lattice, t6_rep, config):
    # every basis element also vanishes numerically on a V_2-compatible cycle
    basis = z_vd_basis(t6, 2, t6_lattice, 6)
    for q in basis.basis:
        chk = verify_vanishing_numeric(t6, PAPER_V2, q, config=config, rep=t6_rep)
        assert chk.vanishes, f"{q} residual {chk.residual}"


# ---------------------------------------------------------------------------
# Z_{U_d}
# ---------------------------------------------------------------------------

def test_z_ud_t6_top(t6, t6_lattice):
    basis = z_ud_basis(t6, 6, t6_lattice, 6)
    # T_3^2 = 2 T_2^3 - (3/2) T_2 + 1/2, so the span has dimension 5
    assert basis.dim == 5
    assert basis.same_span(t3_t2_span(6))
    for gen in (chebyshev(2), chebyshev(3), chebyshev(2) ** 2,
                chebyshev(2) ** 3, chebyshev(3) ** 2):
        assert basis.contains(gen)
    assert not basis.contains(X ** 3)


def test_z_ud_t6_d2(t6, t6_lattice):
    basis = z_ud_basis(t6, 2, t6_lattice, 6)
    # Z_{V_2} + C[T_6] at bound 6: the trace kernel plus {1, T_6}
    vd = z_vd_basis(t6, 2, t6_lattice, 6)
    expected = list(vd.basis) + [RatPoly.one(), chebyshev(6).normalized()]
    assert basis.same_span(expected)
    assert basis.contains(chebyshev(6))
    assert basis.contains(X)
    assert basis.contains(X ** 2)       # = (x^2 - 1/2) + (1/2) * 1
    assert not basis.contains(X ** 3)   # odd part is spanned by x and x^5-...


def test_z_ud_indecomposable_top(quintic_lattice):
    basis = z_ud_basis(QUINTIC, 5, quintic_lattice, 10)
    w = QUINTIC.normalized()
    assert basis.same_span([RatPoly.one(), w, w ** 2])


# ---------------------------------------------------------------------------
# Z_delta
# ---------------------------------------------------------------------------

def test_z_delta_paper_example_1(t6, t6_rep, t6_lattice, config):
    basis = z_delta_basis(t6, PAPER_V1, 6, config, t6_rep, t6_lattice)
    assert basis.same_span(t3_t2_span(6))
    assert not basis.contains(X)
    assert not basis.contains(X ** 3)


def test_z_delta_paper_example_2(t6, t6_rep, t6_lattice, config):
    basis = z_delta_basis(t6, PAPER_V2, 6, config, t6_rep, t6_lattice)
    ud2 = z_ud_basis(t6, 2, t6_lattice, 6)
    assert basis.same_span(ud2.basis)


def test_z_delta_zero_cycle_full_space(t6, t6_rep, t6_lattice, config):
    basis = z_delta_basis(t6, CycleVector.zero(6), 4, config, t6_rep, t6_lattice)
    assert basis.dim == 5


def test_z_delta_all_ones(t6, t6_rep, t6_lattice, config):
    # non-reduced full-fiber cycle: the total-trace kernel; no pullback
    # R(T_6) can belong because its integral is 6 R(z)
    basis = z_delta_basis(t6, CycleVector.ones(6), 8, config, t6_rep, t6_lattice)
    vd1 = z_vd_basis(t6, 1, t6_lattice, 8)
    assert basis.same_span(vd1.basis)
    assert not basis.contains(chebyshev(6))
    assert not basis.contains(RatPoly.one())


def test_z_delta_monotone_in_bound(t6, t6_rep, t6_lattice, config):
    small = z_delta_basis(t6, PAPER_V1, 4, config, t6_rep, t6_lattice)
    large = z_delta_basis(t6, PAPER_V1, 8, config, t6_rep, t6_lattice)
    for q in small.basis:
        assert large.contains(q)


# ---------------------------------------------------------------------------
# Puiseux expansions
# ---------------------------------------------------------------------------

def test_puiseux_exact_square():
    exp = puiseux(X, X ** 2, 8)
    assert exp.exact
    assert exp.coeffs == {-1: Fraction(1)}


def test_puiseux_binomial_oracle():
    # q=x, p=x^2+1: x = (z-1)^{1/2} = z^{1/2} * sum binom(1/2,j) (-1/z)^j
    exp = puiseux(X, X ** 2 + 1, 9)
    assert exp.exact

    def binom_half(j):
        num = Fraction(1)
        for i in range(j):
            num *= Fraction(1, 2) - i
        fact = 1
        for i in range(1, j + 1):
            fact *= i
        return num / fact

    for j in range(5):
        k = 2 * j - 1
        expected = binom_half(j) * (-1) ** j
        assert exp.s(k) == expected
    assert exp.s(0) == 0 and exp.s(2) == 0


def test_puiseux_numeric_matches_exact():
    p = X ** 3 - 2 * X + 1
    q = X ** 2 + X
    ex = puiseux(q, p, 7, exact=True)
    nu = puiseux(q, p, 7, exact=False)
    with mp.workprec(200):
        for k in range(ex.k_min, 8):
            want = ex.s(k)
            got = nu.s(k)
            assert abs(mp.mpf(want.numerator) / want.denominator - got) < mp.mpf(10) ** -40


def test_puiseux_nonmonic_rescaling():
    # T_2 = 2x^2 - 1 has lc 2, not a square: falls back to numeric
    exp = puiseux(X, chebyshev(2), 5)
    assert not exp.exact
    # but 4x^2 rescales exactly: lambda = 1/2
    exp2 = puiseux(X, RatPoly.of(0, 0, 4), 5, exact=True)
    assert exp2.exact
    assert exp2.coeffs == {-1: Fraction(1, 2)}


@pytest.mark.parametrize("v,cases", [
    (PAPER_V1, [(chebyshev(2), True), (chebyshev(3), True), (X, False),
                (compose(chebyshev(2), chebyshev(2)), True)]),
    (PAPER_V2, [(chebyshev(6), True), (X, True),
                (X ** 2 - RatPoly.constant(Fraction(1, 2)), True),
                (chebyshev(2), True),       # = 2(x^2 - 1/2)
                (X ** 3, False), (X ** 5, False)]),
])
def test_puiseux_pairing_criterion(t6, v, cases):
    # membership in Z_delta shows up as the joint vanishing of (v,w_k) s_k
    # for all k, in both directions
    k_max = 24
    for q, member in cases:
        exp = puiseux(q, t6, k_max, exact=False)
        with mp.workprec(200):
            tol = mp.mpf(10) ** -30
            ok = True
            for k in range(exp.k_min, k_max + 1):
                idx = ((k - 1) % 6) + 1
                if not pairing_is_zero(v, idx) and abs(exp.s(k)) > tol:
                    ok = False
                    break
        assert ok == member, f"{q}"


# ---------------------------------------------------------------------------
# numeric oracle
# ---------------------------------------------------------------------------

def test_oracle_member_vs_nonmember(t6, t6_rep, config):
    chk = verify_vanishing_numeric(t6, PAPER_V1, chebyshev(3),
                                   config=config, rep=t6_rep)
    assert chk.vanishes
    assert chk.residual < mp.mpf(10) ** -25
    chk2 = verify_vanishing_numeric(t6, PAPER_V1, X, config=config, rep=t6_rep)
    assert not chk2.vanishes
    assert chk2.residual > mp.mpf(2) ** -12


def test_oracle_zero_inputs(t6, t6_rep, config):
    assert verify_vanishing_numeric(t6, CycleVector.zero(6), X ** 3,
                                    config=config, rep=t6_rep).vanishes
    assert verify_vanishing_numeric(t6, PAPER_V1, RatPoly.zero(),
                                    config=config, rep=t6_rep).vanishes


def test_pullback_identity_cco(t6, t6_rep, config):
    # p = A(W) with all W-fiber cycles reduced: every B(W) vanishes
    w = chebyshev(3).normalized()
    for b in (X, X ** 2, X ** 3 - 2 * X):
        q = compose(b, w)
        chk = verify_vanishing_numeric(t6, PAPER_V1, q, config=config, rep=t6_rep)
        assert chk.vanishes


# ---------------------------------------------------------------------------
# common right factors
# ---------------------------------------------------------------------------

def test_common_right_factor_t6():
    w = common_right_factor(chebyshev(6), chebyshev(2) ** 2)
    assert w == X ** 2      # the normalized T_2 class


def test_common_right_factor_quartic():
    f = (X ** 2 / 2 - 1) ** 2
    assert common_right_factor(f, X ** 2 / 2) == X ** 2


def test_common_right_factor_none():
    assert common_right_factor(X ** 3 + X, X ** 2) is None


def test_common_right_factor_degree_requirement():
    with pytest.raises(InputError):
        common_right_factor(X, X ** 2)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_classify_pullback_sum(t6, t6_rep, t6_lattice, config):
    q = chebyshev(2) + chebyshev(3)
    report = classify(t6, PAPER_V1, q, config, t6_rep, t6_lattice)
    assert report.case == "pullback-sum"
    assert report.vanishes
    parts = report.certificates["parts"]
    assert {part.divisor for part in parts} == {2, 3}
    total = RatPoly.zero()
    for part in parts:
        total = total + compose(part.outer, part.inner)
    assert total == q


def test_classify_polynomial_in_p(config, quintic_rep, quintic_lattice):
    # reduced cycle on an indecomposable polynomial, q = p + 3
    v = CycleVector(5, (1, -1, 0, 0, 0))
    q = QUINTIC + RatPoly.constant(3)
    report = classify(QUINTIC, v, q, config, quintic_rep, quintic_lattice)
    assert report.case == "polynomial-in-P-and-reduced"
    r = report.certificates["outer"]
    assert compose(r, QUINTIC) == q


def test_classify_general_with_remainder(t6, t6_rep, t6_lattice, config):
    q = chebyshev(6) + X
    report = classify(t6, PAPER_V2, q, config, t6_rep, t6_lattice)
    assert report.case == "general"
    cert = report.certificates[2]
    assert cert["remainder"] == X
    total = cert["remainder"]
    for part in cert["parts"]:
        total = total + compose(part.outer, part.inner)
    assert total == q


def test_classify_scalar_full_fiber(config, quintic_rep, quintic_lattice):
    # sum of roots of the quintic is -1, so x + 1/5 has zero total trace
    v = CycleVector(5, (2, 2, 2, 2, 2))
    q = X + RatPoly.constant(Fraction(1, 5))
    report = classify(QUINTIC, v, q, config, quintic_rep, quintic_lattice)
    assert report.case == "scalar-full-fiber"
    assert report.certificates["scalar"] == 2


def test_classify_non_vanishing(t6, t6_rep, t6_lattice, config):
    report = classify(t6, PAPER_V1, X, config, t6_rep, t6_lattice)
    assert report.case == "non-vanishing"
    assert not report.vanishes


# ---------------------------------------------------------------------------
# moment problems end to end
# ---------------------------------------------------------------------------

def test_moment_problem_single_interval(t6, t6_rep, t6_lattice, config):
    s = sqrt3_over_2()
    basis = solve_moment_problem(t6, IntervalSystem.of((-s, s, 1)), 6,
                                 config, t6_rep, t6_lattice)
    assert basis.same_span(t3_t2_span(6))


def test_moment_problem_three_intervals(t6, t6_rep, t6_lattice, config):
    system = IntervalSystem.of(
        (-1, Fraction(-1, 2), 1),
        (Fraction(-1, 2), Fraction(1, 2), -1),
        (Fraction(1, 2), 1, 1),
    )
    basis = solve_moment_problem(t6, system, 6, config, t6_rep, t6_lattice)
    ud2 = z_ud_basis(t6, 2, t6_lattice, 6)
    assert basis.same_span(ud2.basis)
    # the trace-kernel part at bound 2 is spanned by {x, x^2 - 1/2}
    assert basis.contains(X)
    assert basis.contains(X ** 2 - RatPoly.constant(Fraction(1, 2)))
    assert basis.contains(chebyshev(6))
    assert not basis.contains(X ** 3)


def test_moment_problem_empty_system(t6, t6_rep, t6_lattice, config):
    basis = solve_moment_problem(t6, IntervalSystem(()), 5,
                                 config, t6_rep, t6_lattice)
    assert basis.dim == 6


def test_moment_basis_elements_pass_oracle(t6, t6_rep, t6_lattice, config):
    s = sqrt3_over_2()
    basis = solve_moment_problem(t6, IntervalSystem.of((-s, s, 1)), 6,
                                 config, t6_rep, t6_lattice)
    for q in basis.basis:
        chk = verify_vanishing_numeric(t6, PAPER_V1, q, config=config, rep=t6_rep)
        assert chk.vanishes
