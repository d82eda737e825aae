"""Hyperelliptic Abelian integrals over the curve family y^2 - f(x) = t.

The exact half: rewrite any polynomial 1-form as k(x) y dx plus an exact
form plus a multiple of d(y^2 - f), reducing period questions to the
primitive K of k and to zero-dimensional integrals over fibers of f.  The
numeric half: high-precision quadrature of the period integrals along real
ovals and along complex loops, the Cauchy-type deformation J_t(z), and the
confluence limit that ties J to the zero-dimensional side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from . import linalg
from .config import Config, DEFAULT_CONFIG
from .cycles import CycleVector, VanishingCycleCombo, vanishing_combo_to_cycle
from .errors import ComputationError, InputError
from .monodromy import DivisorLattice, MonodromyRep
from .numerics import eval_poly, roots_of_shifted, to_mpf
from .ratpoly import RatPoly, decompose_all, w_adic
from .solver import (_cycle_condition_rows, _ensure_group_data, _poly_to_row,
                     verify_vanishing_numeric)

# ---------------------------------------------------------------------------
# bivariate coefficient maps
# ---------------------------------------------------------------------------

Biv = dict   # (x_power, y_power) -> Fraction


def _biv_canon(a: Biv) -> Biv:
    return {k: v for k, v in a.items() if v != 0}


def _biv_add(a: Biv, b: Biv) -> Biv:
    out = dict(a)
    for key, val in b.items():
        out[key] = out.get(key, Fraction(0)) + val
    return _biv_canon(out)


def _biv_scale(a: Biv, c: Fraction) -> Biv:
    return _biv_canon({k: v * c for k, v in a.items()})


def _biv_mul(a: Biv, b: Biv) -> Biv:
    out: Biv = {}
    for (i, j), u in a.items():
        for (k, l), v in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, Fraction(0)) + u * v
    return _biv_canon(out)


def _biv_pow(a: Biv, e: int) -> Biv:
    out = {(0, 0): Fraction(1)}
    for _ in range(e):
        out = _biv_mul(out, a)
    return out


def _biv_from_poly(p: RatPoly, y_power: int = 0) -> Biv:
    return _biv_canon({(i, y_power): c for i, c in enumerate(p.coeffs)})


def _biv_dx(a: Biv) -> Biv:
    return _biv_canon({(i - 1, j): i * v for (i, j), v in a.items() if i >= 1})


def _biv_dy(a: Biv) -> Biv:
    return _biv_canon({(i, j - 1): j * v for (i, j), v in a.items() if j >= 1})


# ---------------------------------------------------------------------------
# one-forms and the reduction to k(x) y dx
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OneForm:
    """A polynomial 1-form P(x,y) dx + Q(x,y) dy."""
    dx: Biv
    dy: Biv

    @staticmethod
    def of(dx: Biv | None = None, dy: Biv | None = None) -> "OneForm":
        return OneForm(_biv_canon({k: Fraction(v) for k, v in (dx or {}).items()}),
                       _biv_canon({k: Fraction(v) for k, v in (dy or {}).items()}))


@dataclass(frozen=True)
class ReducedForm:
    """omega = k(x) y dx + dA + B d(y^2 - f), all parts polynomial."""
    k: RatPoly
    a_part: Biv
    b_part: Biv

    def expansion(self, f: RatPoly) -> OneForm:
        """Expand k y dx + dA + B d(y^2-f) back into dx/dy coefficients."""
        dfx = _biv_from_poly(-f.derivative())
        dx = _biv_add(_biv_from_poly(self.k, y_power=1), _biv_dx(self.a_part))
        dx = _biv_add(dx, _biv_mul(self.b_part, dfx))
        dy = _biv_add(_biv_dy(self.a_part),
                      _biv_scale(_biv_mul(self.b_part, {(0, 1): Fraction(1)}), 2))
        return OneForm(dx, dy)

    def verify(self, omega: OneForm, f: RatPoly) -> bool:
        expanded = self.expansion(f)
        return expanded.dx == omega.dx and expanded.dy == omega.dy


def reduce_form(omega: OneForm, f: RatPoly) -> ReducedForm:
    """Terminating rewrite of a polynomial 1-form into normal form.

    dx-terms with even y-power split through y^2 = f + (y^2 - f) into an
    exact piece and a B-multiple; odd powers >= 3 are pushed through one
    integration by parts in x and one B-step, dropping the y-degree by 2;
    dy-terms integrate by parts into dx-terms.
    """
    k_coeffs: dict[int, Fraction] = {}
    a_part: Biv = {}
    b_part: Biv = {}
    dx_terms = [((i, j), c) for (i, j), c in _biv_canon(omega.dx).items()]
    dy_terms = [((i, j), c) for (i, j), c in _biv_canon(omega.dy).items()]
    y2f = _biv_add({(0, 2): Fraction(1)}, _biv_scale(_biv_from_poly(f), Fraction(-1)))

    def add_a(term: Biv):
        nonlocal a_part
        a_part = _biv_add(a_part, term)

    def add_b(term: Biv):
        nonlocal b_part
        b_part = _biv_add(b_part, term)

    guard = 0
    while dx_terms or dy_terms:
        guard += 1
        if guard > 100000:
            raise ComputationError("form reduction failed to terminate")
        if dy_terms:
            (a, b), c = dy_terms.pop()
            if c == 0:
                continue
            if a == 0:
                # pure y-power: exact, y^b dy = d(y^{b+1}/(b+1))
                add_a({(0, b + 1): c / (b + 1)})
            elif b >= 2 and b % 2 == 0:
                # x^a y^b dy = B d(y^2-f) + (f'/2) x^a y^{b-1} dx,  B = x^a y^{b-1}/2
                add_b({(a, b - 1): c / 2})
                half_fp = _biv_scale(_biv_from_poly(f.derivative()), c / 2)
                for (i, _), u in half_fp.items():
                    dx_terms.append(((i + a, b - 1), u))
            else:
                # x^a y^b dy = d(x^a y^{b+1}/(b+1)) - a/(b+1) x^{a-1} y^{b+1} dx
                add_a({(a, b + 1): c / (b + 1)})
                dx_terms.append(((a - 1, b + 1), -c * a / (b + 1)))
            continue

        (a, b), c = dx_terms.pop()
        if c == 0:
            continue
        if b == 0:
            add_a({(a + 1, 0): c / (a + 1)})
        elif b == 1:
            k_coeffs[a] = k_coeffs.get(a, Fraction(0)) + c
        elif b % 2 == 0:
            m = b // 2
            binom = 1
            f_pow = f ** m
            # i = 0 piece: exact in x
            g0 = RatPoly.monomial(a, c) * f_pow
            add_a(_biv_from_poly(g0.primitive()))
            for i in range(1, m + 1):
                binom = binom * (m - i + 1) // i
                g = RatPoly.monomial(a, c * binom) * (f ** (m - i))
                big_g = g.primitive()
                y2f_i = _biv_pow(y2f, i)
                add_a(_biv_mul(_biv_from_poly(big_g), y2f_i))
                add_b(_biv_scale(_biv_mul(_biv_from_poly(big_g),
                                          _biv_pow(y2f, i - 1)), Fraction(-i)))
        else:
            # x^a y^b dx = d(x^{a+1} y^b/(a+1)) - b/(a+1) x^{a+1} y^{b-1} dy
            add_a({(a + 1, b): c / (a + 1)})
            dy_terms.append(((a + 1, b - 1), -c * b / (a + 1)))

    k = RatPoly([k_coeffs.get(i, Fraction(0))
                 for i in range(max(k_coeffs, default=0) + 1)])
    reduced = ReducedForm(k=k, a_part=_biv_canon(a_part), b_part=_biv_canon(b_part))
    if not reduced.verify(omega, f):
        raise ComputationError("form reduction identity failed to verify")
    return reduced


# ---------------------------------------------------------------------------
# real oval families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OvalFamily:
    """A continuous family of real ovals of y^2 = f(x) + t, bounded by two
    adjacent real roots of f + t selected by index into the sorted real
    root list."""
    f: RatPoly
    pair_index: int
    t_min: object
    t_max: object

    def t_samples(self, count: int, prec: int) -> list:
        lo = to_mpf(self.t_min, prec)
        hi = to_mpf(self.t_max, prec)
        return [lo + (hi - lo) * (2 * j + 1) / (2 * count) for j in range(count)]


def oval_endpoints(family: OvalFamily, t, prec: int):
    """The two adjacent real roots of f + t bounding the oval at level t,
    with f + t positive between them."""
    with mp.workprec(prec + 32):
        t = to_mpf(t, mp.prec)
        tol = mp.mpf(2) ** (-(prec // 2))
        real_roots = []
        for r in roots_of_shifted(family.f, -t, mp.prec):
            if abs(mp.im(r)) < tol * (1 + abs(r)):
                real_roots.append(mp.re(r))
        real_roots.sort()
        idx = family.pair_index
        if idx < 0 or idx + 1 >= len(real_roots):
            raise ComputationError(
                f"root pair {idx} not available at t={mp.nstr(t, 8)}")
        x1, x2 = real_roots[idx], real_roots[idx + 1]
        mid = eval_poly(family.f, (x1 + x2) / 2, mp.prec) + t
        if not mid > 0:
            raise ComputationError(
                "f + t is not positive between the selected roots; no real oval")
        return x1, x2


def _oval_quadrature(family: OvalFamily, k: RatPoly, t, config: Config,
                     integrand_kind: str, z=None):
    """Adaptive quadrature over the oval with the substitution
    x = x1 + (x2-x1) sin^2(theta), which absorbs the square-root endpoint
    behavior for both y dx and dx/y integrands."""
    prec = config.precision_bits
    with mp.workprec(prec + 32):
        t = to_mpf(t, mp.prec)
        x1, x2 = oval_endpoints(family, t, prec)
        span = x2 - x1
        if z is not None:
            z = mp.mpc(z)
            # poles sit where f + t = z; on the oval f + t covers [0, w2max],
            # so only real z inside that range (but away from 0) is dangerous
            grid = [x1 + span * mp.mpf(j) / 64 for j in range(65)]
            w2max = max(eval_poly(family.f, x, mp.prec) + t for x in grid)
            margin = (1 + abs(z)) * mp.mpf(2) ** (-(prec // 4))
            if abs(mp.im(z)) < margin and margin < mp.re(z) < w2max + margin:
                raise ComputationError("pole sits on the integration contour")

        def integrand(theta):
            s = mp.sin(theta)
            x = x1 + span * s * s
            w2 = eval_poly(family.f, x, mp.prec) + t
            y = mp.sqrt(w2)
            kx = eval_poly(k, x, mp.prec)
            jac = span * mp.sin(2 * theta)
            if integrand_kind == "y_dx":
                return kx * y * jac
            if integrand_kind == "dx_over_y":
                return kx / y * jac
            if integrand_kind == "cauchy":
                return kx * y / (w2 - z) * jac
            raise InputError(integrand_kind)

        val = mp.quad(integrand, [0, mp.pi / 2])
        return 2 * val


def integral_I(family: OvalFamily, k: RatPoly, t,
               config: Config = DEFAULT_CONFIG):
    """I(t) = 2 * integral of k(x) sqrt(f(x)+t) over the oval's x-range."""
    return _oval_quadrature(family, k, t, config, "y_dx")


def integral_I_prime(family: OvalFamily, k: RatPoly, t,
                     config: Config = DEFAULT_CONFIG):
    """I'(t) = integral of k(x)/sqrt(f(x)+t) over the oval's x-range."""
    with mp.workprec(config.precision_bits + 32):
        return _oval_quadrature(family, k, t, config, "dx_over_y") / 2


def cauchy_J(family: OvalFamily, k: RatPoly, t, z,
             config: Config = DEFAULT_CONFIG):
    """The Cauchy-type deformation J_t(z) over the closed oval: both y-signs
    traversed, which doubles the one-branch quadrature."""
    return _oval_quadrature(family, k, t, config, "cauchy", z=z)


def oval_form_integral(family: OvalFamily, omega: OneForm, t,
                       config: Config = DEFAULT_CONFIG):
    """Integral of an arbitrary polynomial 1-form over the closed oval
    (upper branch left to right, lower branch back)."""
    prec = config.precision_bits
    with mp.workprec(prec + 32):
        t = to_mpf(t, mp.prec)
        x1, x2 = oval_endpoints(family, t, prec)
        span = x2 - x1
        fprime = family.f.derivative()

        def biv_eval(biv: Biv, x, y):
            acc = mp.mpf(0)
            for (i, j), c in biv.items():
                acc += (mp.mpf(c.numerator) / c.denominator) * x ** i * y ** j
            return acc

        def integrand(theta):
            s = mp.sin(theta)
            x = x1 + span * s * s
            w2 = eval_poly(family.f, x, mp.prec) + t
            y = mp.sqrt(w2)
            jac = span * mp.sin(2 * theta)
            dydx = eval_poly(fprime, x, mp.prec) / (2 * y)
            # upper branch: P(x,Y) + Q(x,Y) Y'; lower branch (y = -Y, dx and
            # dy both reversed): -P(x,-Y) + Q(x,-Y) Y'
            p_term = biv_eval(omega.dx, x, y) - biv_eval(omega.dx, x, -y)
            q_term = (biv_eval(omega.dy, x, y) + biv_eval(omega.dy, x, -y)) * dydx
            return (p_term + q_term) * jac

        return mp.quad(integrand, [0, mp.pi / 2])


# ---------------------------------------------------------------------------
# complex loop integrals
# ---------------------------------------------------------------------------

def loop_integral(f: RatPoly, k: RatPoly, t, center, radius,
                  mode: str = "y_dx", z=None, semi_minor=None,
                  config: Config = DEFAULT_CONFIG):
    """Contour integral over an ellipse around `center` lifted to the curve
    y^2 = f(x) + t, with y continued around the contour.

    The contour is x = center + radius*cos(theta) + i*semi_minor*sin(theta)
    (a circle when semi_minor is omitted); it must enclose an even number
    of branch points so the lift closes up.  mode "y_dx" integrates k y dx,
    "dx_over_2y" integrates k/(2y) dx, "dx_over_y3" integrates k/y^3 dx,
    and "cauchy" integrates k y/(y^2 - z) dx.
    """
    prec = config.precision_bits
    tol = mp.mpf(2) ** (-(prec // 2))
    with mp.workprec(prec + 32):
        t = mp.mpc(t)
        center = mp.mpc(center)
        a = mp.mpf(radius)
        b = mp.mpf(semi_minor) if semi_minor is not None else a
        zc = mp.mpc(z) if z is not None else None
        last = None
        n_nodes = 256
        while n_nodes <= 1 << 16:
            val, ok = _loop_once(f, k, t, center, a, b, mode, zc, n_nodes)
            if ok:
                if last is not None and abs(val - last) <= tol * (1 + abs(val)):
                    return val
                last = val
            n_nodes *= 2
        raise ComputationError("loop quadrature did not converge")


def _loop_once(f, k, t, center, a, b, mode, z, n_nodes):

    def point(theta):
        return center + a * mp.cos(theta) + mp.mpc(0, 1) * b * mp.sin(theta)

    def tangent(theta):
        return -a * mp.sin(theta) + mp.mpc(0, 1) * b * mp.cos(theta)

    y = mp.sqrt(eval_poly(f, point(0), mp.prec) + t)
    y_start = y
    total = mp.mpc(0)
    h = 2 * mp.pi / n_nodes
    for j in range(n_nodes):
        theta = j * h
        x = point(theta)
        w2 = eval_poly(f, x, mp.prec) + t
        s = mp.sqrt(w2)
        cand = s if abs(s - y) <= abs(-s - y) else -s
        if abs(cand - y) > mp.mpf("0.5") * max(abs(y), abs(cand)):
            return mp.mpc(0), False        # ambiguous continuation: refine
        y = cand
        kx = eval_poly(k, x, mp.prec)
        if mode == "y_dx":
            g = kx * y
        elif mode == "dx_over_2y":
            g = kx / (2 * y)
        elif mode == "dx_over_y3":
            g = kx / (y * w2)
        elif mode == "cauchy":
            g = kx * y / (w2 - z)
        else:
            raise InputError(mode)
        total += g * tangent(theta)
    # closure: continuing once more to theta=2pi must return to the start
    w2 = eval_poly(f, point(0), mp.prec) + t
    s = mp.sqrt(w2)
    cand = s if abs(s - y) <= abs(-s - y) else -s
    if abs(cand - y_start) > mp.mpf("1e-8") * max(1, abs(y_start)):
        raise ComputationError(
            "lifted contour does not close: odd number of branch points inside")
    return total * h, True


# ---------------------------------------------------------------------------
# the vanishing criterion through zero-dimensional integrals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstancyReport:
    constant: bool
    constant_value: Fraction | None
    residual: object
    certificate: dict


def vanishing_criterion(f: RatPoly, k: RatPoly, v: CycleVector,
                        config: Config = DEFAULT_CONFIG,
                        rep: MonodromyRep | None = None,
                        lattice: DivisorLattice | None = None) -> ConstancyReport:
    """Decide exactly whether the zero-dimensional integral of K = primitive
    of k over the 0-cycle v on fibers of f is constant in z.

    Constancy is linear feasibility: K - c0 must lie in the exact vanishing
    space of v for some constant c0; then the integral is c0 * sum(v).
    """
    rep, lattice = _ensure_group_data(f, config, rep, lattice)
    big_k = k.primitive()
    bound = max(0 if big_k.is_zero() else big_k.degree, 0)
    conditions = _cycle_condition_rows(v, lattice, bound)
    k_row = _poly_to_row(big_k, bound)
    e0_row = _poly_to_row(RatPoly.one(), bound)
    r = [sum(c * kk for c, kk in zip(row, k_row)) for row in conditions]
    s = [sum(c * ee for c, ee in zip(row, e0_row)) for row in conditions]
    c0 = None
    if all(x == 0 for x in s):
        constant = all(x == 0 for x in r)
        if constant:
            c0 = Fraction(0)
    else:
        sol = linalg.solve_in_span([s], r)
        constant = sol is not None
        if constant:
            c0 = sol[0]
    if constant:
        check = verify_vanishing_numeric(
            f, v, big_k - RatPoly.constant(c0), config=config, rep=rep)
        if not check.vanishes:
            raise ComputationError(
                "exact constancy certificate contradicted by the oracle")
        total = sum(v.v)
        return ConstancyReport(constant=True, constant_value=c0 * total,
                               residual=check.residual,
                               certificate={"offset": c0, "primitive": big_k})
    check = verify_vanishing_numeric(f, v, big_k, config=config, rep=rep)
    return ConstancyReport(constant=False, constant_value=None,
                           residual=check.residual,
                           certificate={"primitive": big_k})


# ---------------------------------------------------------------------------
# the pullback test for oval families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExthWitness:
    r: RatPoly
    exact: bool
    max_deviation: object
    samples: int


def check_exth(family: OvalFamily, k: RatPoly,
               config: Config = DEFAULT_CONFIG,
               samples: int = 24) -> ExthWitness | None:
    """Search for a nontrivial common right factor r of f and K = primitive
    of k with r(x1(t)) = r(x2(t)) along the family.

    The identification test is numeric evidence at `samples` parameter
    values; the symmetric special case (f, K even, symmetric root pair)
    carries an exact certificate.
    """
    f = family.f
    big_k = k.primitive()
    if f.is_zero() or f.degree < 2:
        return None
    prec = config.precision_bits
    candidates = [dec.right for dec in
                  sorted(decompose_all(f), key=lambda d: -d.right.degree)
                  if dec.right.degree >= 2
                  and all(part.is_constant() for part in w_adic(big_k, dec.right))]
    if not candidates:
        return None
    with mp.workprec(prec + 32):
        ts = family.t_samples(samples, mp.prec)
        for r in candidates:
            worst = mp.mpf(0)
            good = True
            for t in ts:
                x1, x2 = oval_endpoints(family, t, prec)
                scale = max(mp.mpf(1), abs(eval_poly(r, x1, mp.prec)))
                dev = abs(eval_poly(r, x1, mp.prec) - eval_poly(r, x2, mp.prec))
                worst = max(worst, dev / scale)
                if dev > scale * mp.mpf(2) ** (-(prec // 2)):
                    good = False
                    break
            if not good:
                continue
            exact = _symmetric_exact_certificate(f, big_k, r, family, ts, prec)
            return ExthWitness(r=r, exact=exact, max_deviation=worst,
                               samples=samples)
    return None


def _is_even_poly(p: RatPoly) -> bool:
    return all(c == 0 for i, c in enumerate(p.coeffs) if i % 2 == 1)


def _symmetric_exact_certificate(f, big_k, r, family, ts, prec) -> bool:
    if r != RatPoly.monomial(2):
        return False
    if not (_is_even_poly(f) and _is_even_poly(big_k)):
        return False
    x1, x2 = oval_endpoints(family, ts[0], prec)
    return bool(abs(x1 + x2) < mp.mpf(2) ** (-(prec // 2)) * (1 + abs(x1)))


# ---------------------------------------------------------------------------
# the confluence limit of the Cauchy integral
# ---------------------------------------------------------------------------

def local_cyclic_order(f: RatPoly, critical_point, n_local: int, z_probe,
                       config: Config = DEFAULT_CONFIG) -> list[int]:
    """Indices (into the sorted fiber of f at z_probe) of the n_local roots
    confluent at the critical point, ordered cyclically by the local
    monodromy around z = f(critical_point); the starting root is the one
    with the smallest (re, im)."""
    prec = config.precision_bits
    with mp.workprec(prec + 32):
        from .monodromy import match_permutation, track_fiber
        z_probe = mp.mpc(z_probe)
        fiber = roots_of_shifted(f, z_probe, mp.prec)
        order_all = sorted(range(len(fiber)),
                           key=lambda i: abs(fiber[i] - critical_point))
        cluster = sorted(order_all[:n_local])
        loop = [z_probe * mp.exp(mp.mpc(0, 2) * mp.pi * j / 32) for j in range(33)]
        end = track_fiber(f, loop, fiber, config)
        sigma = match_permutation(fiber, end)
        start = cluster[0]
        out = [start]
        cur = sigma(start + 1) - 1
        while cur != start:
            if cur in cluster:
                out.append(cur)
            cur = sigma(cur + 1) - 1
        if len(out) != n_local:
            raise ComputationError("confluent roots are not a single local orbit")
        return out


@dataclass(frozen=True)
class Main4Report:
    per_sample: tuple
    max_relative_deviation: object


def main4_limit_check(f: RatPoly, k: RatPoly, combo: VanishingCycleCombo,
                      z_samples: list, critical_point,
                      config: Config = DEFAULT_CONFIG) -> Main4Report:
    """Compare the t->0 limit of J_t(z) over the vanishing loop with the
    closed zero-dimensional formula 2 pi sqrt(-z) d/dz of the integral of K.

    The derivative side is evaluated analytically as sum n_i k(x_i)/f'(x_i)
    over the confluent roots of f - z; agreement is reported up to the
    documented global sign of the square-root branch.
    """
    prec = config.precision_bits
    df = f.derivative()
    rows = []
    with mp.workprec(prec + 32):
        critical_point = mp.mpc(critical_point)
        crit_level = eval_poly(f, critical_point, mp.prec)
        if abs(crit_level) > mp.mpf(2) ** (-(prec // 2)):
            raise InputError("critical level must be normalized to zero")
        worst = mp.mpf(0)
        for z in z_samples:
            z = mp.mpc(z)
            order = local_cyclic_order(f, critical_point, combo.n_local, z, config)
            fiber = roots_of_shifted(f, z, mp.prec)
            local = vanishing_combo_to_cycle(
                combo, list(range(1, combo.n_local + 1)), combo.n_local)
            deriv = mp.mpc(0)
            spread = mp.mpf(0)
            for coef, idx in zip(local.v, order):
                x_i = fiber[idx]
                spread = max(spread, abs(x_i - critical_point))
                deriv += (mp.mpf(coef.numerator) / coef.denominator
                          * eval_poly(k, x_i, mp.prec)
                          / eval_poly(df, x_i, mp.prec))
            formula = 2 * mp.pi * mp.sqrt(-z) * deriv

            pairs = {key: Fraction(c) for key, c in combo.coefficients.items()
                     if Fraction(c) != 0}
            if not pairs:
                limit = mp.mpc(0)
            elif combo.n_local == 2 and set(pairs) == {(1, 2)}:
                weight = pairs[(1, 2)]
                radius = 4 * spread
                others = [abs(x - critical_point) for i, x in enumerate(fiber)
                          if i not in order]
                if others and min(others) < 2 * radius:
                    raise ComputationError("confluent cluster is not isolated")
                limit = None
                prev = None
                for j in range(3, 9):
                    t = -abs(z) * mp.mpf(4) ** (-j)
                    val = loop_integral(f, k, t, critical_point, radius,
                                        mode="cauchy", z=z, config=config)
                    if prev is not None and abs(val - prev) <= \
                            mp.mpf(2) ** (-(prec // 3)) * (1 + abs(val)):
                        limit = val
                        break
                    prev = val
                if limit is None:
                    limit = prev
                limit = limit * mp.mpf(weight.numerator) / weight.denominator
            else:
                raise ComputationError(
                    "the numeric limit contour is implemented for a single "
                    "Morse vanishing cycle; general combinations are covered "
                    "by the formula side")
            dev = min(abs(limit - formula), abs(limit + formula))
            rel = dev / max(abs(formula), mp.mpf(2) ** (-(prec // 2))) \
                if abs(formula) > 0 else dev
            worst = max(worst, rel)
            rows.append({"z": z, "limit": limit, "formula": formula,
                         "relative_deviation": rel})
        return Main4Report(per_sample=tuple(rows), max_relative_deviation=worst)
