"""Decision procedures for vanishing of zero-dimensional Abelian integrals.

Everything here is degree-filtered: the solution spaces are infinite
dimensional, so bases are computed inside the space of polynomials of
degree at most a user-chosen bound.  The exact machinery rests on two
pillars: fiber-trace conditions (the kernel side) and pullback rings along
compositional right factors (the span side).  A high-precision tracking
oracle cross-checks every exact verdict numerically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp

from . import linalg
from .config import Config, DEFAULT_CONFIG
from .cycles import (CycleVector, IntervalSystem,
                     real_interval_to_coefficients)
from .errors import CertificateError, ComputationError, InputError
from .invariant import decompose_v_delta, pairing_is_zero, v_d_basis
from .monodromy import (DivisorLattice, MonodromyRep, _route, _standoffs,
                        divisor_lattice, monodromy, track_fiber)
from .numerics import eval_poly
from .ratpoly import RatPoly, compose, decompose_all, trace_poly, w_adic


# ---------------------------------------------------------------------------
# solution bases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolutionBasis:
    """Exact basis of a vanishing space up to a degree bound, in canonical
    (reduced row echelon) form, with a provenance tag per element."""
    degree_bound: int
    basis: tuple[RatPoly, ...]
    provenance: tuple[str, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, q: RatPoly) -> bool:
        if q.is_zero():
            return True
        if not q.is_constant() and q.degree > self.degree_bound:
            return False
        rows = _polys_to_rows(self.basis, self.degree_bound)
        return linalg.in_span(rows, _poly_to_row(q, self.degree_bound))

    def same_span(self, polys) -> bool:
        mine = _polys_to_rows(self.basis, self.degree_bound)
        theirs = _polys_to_rows(polys, self.degree_bound)
        return linalg.same_span(mine, theirs)


def _poly_to_row(p: RatPoly, bound: int) -> list[Fraction]:
    if not p.is_zero() and p.degree > bound:
        raise InputError("polynomial exceeds the degree bound")
    return [p.coeff(k) for k in range(bound + 1)]


def _polys_to_rows(polys, bound: int) -> list[list[Fraction]]:
    return [_poly_to_row(p, bound) for p in polys]


def _rows_to_polys(rows) -> list[RatPoly]:
    return [RatPoly(row) for row in rows]


# ---------------------------------------------------------------------------
# trace conditions and pullback spans
# ---------------------------------------------------------------------------

def _vd_condition_rows(w: RatPoly, bound: int) -> list[list[Fraction]]:
    """Rows of the map Q -> constant traces of the W-adic coefficients of Q.

    Its kernel inside degree <= bound is the space of Q whose trace along
    the fiber of w vanishes identically.
    """
    m = w.degree
    nrows = bound // m + 1
    rows = [[Fraction(0)] * (bound + 1) for _ in range(nrows)]
    for e in range(bound + 1):
        parts = w_adic(RatPoly.monomial(e), w)
        for j, part in enumerate(parts):
            if not part.is_zero():
                rows[j][e] = trace_poly(part, w).constant_value()
    return rows


def _pullback_span_rows(w: RatPoly, bound: int) -> list[list[Fraction]]:
    """Coefficient rows of 1, w, w^2, ... up to the degree bound."""
    rows = []
    power = RatPoly.one()
    while power.is_constant() or power.degree <= bound:
        rows.append(_poly_to_row(power, bound))
        power = power * w
        if not power.is_constant() and power.degree > bound:
            break
    return rows


def _ud_span_rows(d: int, lattice: DivisorLattice, bound: int) -> list[list[Fraction]]:
    w = lattice.witness[d].right
    rows = list(linalg.nullspace(_vd_condition_rows(w, bound), bound + 1))
    for dt in lattice.covered_by(d):
        rows.extend(_pullback_span_rows(lattice.witness[dt].right, bound))
    return linalg.row_space_basis(rows)


def _cycle_condition_rows(v: CycleVector, lattice: DivisorLattice,
                          bound: int) -> list[list[Fraction]]:
    """Stacked linear conditions cutting out Z_delta inside degree <= bound:
    the annihilator rows of Z_{U_d} for every component d of the invariant
    span of v."""
    rows: list[list[Fraction]] = []
    comps = decompose_v_delta(v, lattice).components
    for d in sorted(comps):
        span = _ud_span_rows(d, lattice, bound)
        rows.extend(linalg.annihilator(span, bound + 1))
    return rows


def z_vd_basis(p: RatPoly, d: int, lattice: DivisorLattice,
               degree_bound: int) -> SolutionBasis:
    """Basis of the polynomials of degree <= bound whose trace over the
    residue-class block of size n/d vanishes identically."""
    lattice.require_member(d)
    w = lattice.witness[d].right
    kernel = linalg.nullspace(_vd_condition_rows(w, degree_bound),
                              degree_bound + 1)
    rows = linalg.row_space_basis(kernel)
    return SolutionBasis(degree_bound=degree_bound,
                         basis=tuple(_rows_to_polys(rows)),
                         provenance=(f"trace-kernel({d})",) * len(rows))


def z_ud_basis(p: RatPoly, d: int, lattice: DivisorLattice,
               degree_bound: int) -> SolutionBasis:
    """Basis of Z_{V_d} + sum of pullback rings C[W_i] over the witnesses
    of the elements covered by d, truncated at the degree bound."""
    lattice.require_member(d)
    w = lattice.witness[d].right
    vd_kernel = linalg.row_space_basis(
        linalg.nullspace(_vd_condition_rows(w, degree_bound), degree_bound + 1))
    rows = list(vd_kernel)
    pullbacks = []
    for dt in lattice.covered_by(d):
        wi = lattice.witness[dt].right
        span = _pullback_span_rows(wi, degree_bound)
        pullbacks.append((str(wi), span))
        rows.extend(span)
    reduced = linalg.row_space_basis(rows)
    tags = []
    for row in reduced:
        if vd_kernel and linalg.in_span(vd_kernel, row):
            tags.append(f"trace-kernel({d})")
            continue
        tag = "mixed"
        for name, span in pullbacks:
            if linalg.in_span(span, row):
                tag = f"pullback({name})"
                break
        tags.append(tag)
    return SolutionBasis(degree_bound=degree_bound,
                         basis=tuple(_rows_to_polys(reduced)),
                         provenance=tuple(tags))


def z_delta_basis(p: RatPoly, v: CycleVector, degree_bound: int,
                  config: Config = DEFAULT_CONFIG,
                  rep: MonodromyRep | None = None,
                  lattice: DivisorLattice | None = None) -> SolutionBasis:
    """Exact basis of the polynomials whose integral over the cycle v
    vanishes identically, up to the degree bound.

    Computed as the intersection of the Z_{U_d} over the components of the
    invariant span of v, by stacking their linear conditions; the zero
    cycle yields the full polynomial space.
    """
    rep, lattice = _ensure_group_data(p, config, rep, lattice)
    conditions = _cycle_condition_rows(v, lattice, degree_bound)
    kernel = linalg.row_space_basis(linalg.nullspace(conditions, degree_bound + 1))
    tags = _z_delta_tags(kernel, lattice, degree_bound)
    return SolutionBasis(degree_bound=degree_bound,
                         basis=tuple(_rows_to_polys(kernel)), provenance=tags)


def _z_delta_tags(rows, lattice, bound) -> tuple[str, ...]:
    kernels = {d: linalg.row_space_basis(
        linalg.nullspace(_vd_condition_rows(lattice.witness[d].right, bound),
                         bound + 1)) for d in lattice.members}
    pullbacks = [(str(lattice.witness[d].right),
                  _pullback_span_rows(lattice.witness[d].right, bound))
                 for d in lattice.members]
    tags = []
    for row in rows:
        tag = "mixed"
        for d in sorted(kernels):
            if kernels[d] and linalg.in_span(kernels[d], row):
                tag = f"trace-kernel({d})"
                break
        if tag == "mixed":
            for name, span in pullbacks:
                if linalg.in_span(span, row):
                    tag = f"pullback({name})"
                    break
        tags.append(tag)
    return tuple(tags)


def _ensure_group_data(p, config, rep, lattice):
    if rep is None:
        rep = monodromy(p, config)
    if lattice is None:
        lattice = divisor_lattice(rep, p)
    return rep, lattice


# ---------------------------------------------------------------------------
# Puiseux expansions at infinity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PuiseuxExpansion:
    """Coefficients s_k of q(p_1^{-1}(z)) = sum_k s_k z^{-k/n} at infinity."""
    n: int
    k_min: int
    k_max: int
    coeffs: dict[int, object]
    exact: bool

    def s(self, k: int):
        if k > self.k_max:
            raise InputError(f"coefficient index {k} beyond truncation")
        return self.coeffs.get(k, Fraction(0) if self.exact else mp.mpf(0))


def _series_mul(a, b, L, zero):
    out = [zero] * (L + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > L:
                break
            if bj != 0:
                out[i + j] = out[i + j] + ai * bj
    return out


def _series_pow(a, k, L, zero, one):
    out = [one] + [zero] * L
    base = list(a) + [zero] * (L + 1 - len(a))
    while k:
        if k & 1:
            out = _series_mul(out, base, L, zero)
        k >>= 1
        if k:
            base = _series_mul(base, base, L, zero)
    return out


def _invert_at_infinity(pcoeffs, n, L, zero, one, tiny=None):
    """Series g with g(u)^n + sum_{j<n} p_j u^{n-j} g(u)^j = 1, g(0) = 1.

    Then x = w*g(1/w) parameterizes the branch of p(x) = w^n at infinity.
    The system is triangular in the coefficients of g: the u^k coefficient
    of the constraint depends on g_k linearly with slope n.
    """
    g = [one] + [zero] * L

    def constraint():
        acc = [zero] * (L + 1)
        for j in range(n + 1):
            pj = pcoeffs[j]
            if pj == 0:
                continue
            gj = _series_pow(g, j, L, zero, one)
            shift = n - j
            for t in range(L + 1 - shift):
                acc[t + shift] = acc[t + shift] + pj * gj[t]
        return acc

    for k in range(1, L + 1):
        f = constraint()
        g[k] = -f[k] / n
    f = constraint()
    small = (lambda c: c == 0) if tiny is None else (lambda c: abs(c) < tiny)
    if not small(f[0] - one) or not all(small(c) for c in f[1:]):
        raise ComputationError("series inversion failed to close")
    return g


def _rational_nth_root(x: Fraction, n: int) -> Fraction | None:
    if x <= 0:
        return None

    def iroot(a: int) -> int | None:
        r = round(a ** (1.0 / n))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** n == a:
                return c
        return None

    num = iroot(x.numerator)
    den = iroot(x.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def puiseux(q: RatPoly, p: RatPoly, k_max: int,
            config: Config = DEFAULT_CONFIG,
            exact: bool | None = None) -> PuiseuxExpansion:
    """Puiseux coefficients of q along one branch of p^{-1} at infinity.

    Exact mode requires p monic (or monic after the rational rescaling
    x -> lambda*x); otherwise the expansion is computed numerically at the
    configured precision.  Relabeling the branch only rotates each s_k by
    a root of unity, so the vanishing pattern is branch-independent.
    """
    if p.is_zero() or p.degree < 1:
        raise InputError("puiseux requires deg p >= 1")
    n = p.degree
    qdeg = 0 if q.is_zero() else max(q.degree, 0)
    lam = _rational_nth_root(Fraction(1) / p.lc, n) if p.lc != 1 else Fraction(1)
    can_exact = lam is not None
    if exact is True and not can_exact:
        raise InputError("exact Puiseux mode requires a monic-scalable polynomial")
    use_exact = can_exact if exact is None else exact

    L = qdeg + k_max + 1
    if use_exact:
        scale = RatPoly.of(0, lam)
        p_use, q_use = compose(p, scale), compose(q, scale)
        pcoeffs = [p_use.coeff(j) for j in range(n + 1)]
        zero, one = Fraction(0), Fraction(1)
        g = _invert_at_infinity(pcoeffs, n, L, zero, one)
        coeffs: dict[int, object] = {}
        for e in range(len(q_use.coeffs)):
            qe = q_use.coeff(e)
            if qe == 0:
                continue
            ge = _series_pow(g, e, L, zero, one)
            for t, c in enumerate(ge):
                k = t - e
                if k <= k_max and c != 0:
                    coeffs[k] = coeffs.get(k, zero) + qe * c
        coeffs = {k: c for k, c in coeffs.items() if c != 0}
        return PuiseuxExpansion(n=n, k_min=-qdeg, k_max=k_max, coeffs=coeffs,
                                exact=True)

    prec = max(2 * config.precision_bits, 256)
    with mp.workprec(prec):
        def as_mpc(c: Fraction):
            return mp.mpc(c.numerator) / c.denominator

        lam_c = mp.power(1 / as_mpc(p.lc), mp.mpf(1) / n)
        pc = [as_mpc(p.coeff(j)) * lam_c ** j for j in range(n + 1)]
        qc = [as_mpc(q.coeff(e)) * lam_c ** e for e in range(len(q.coeffs))]
        zero, one = mp.mpc(0), mp.mpc(1)
        g = _invert_at_infinity(pc, n, L, zero, one,
                                tiny=mp.mpf(2) ** (-(prec // 2)))
        coeffs = {}
        for e, qe in enumerate(qc):
            if qe == 0:
                continue
            ge = _series_pow(g, e, L, zero, one)
            for t, c in enumerate(ge):
                k = t - e
                if k <= k_max and c != 0:
                    coeffs[k] = coeffs.get(k, zero) + qe * c
        return PuiseuxExpansion(n=n, k_min=-qdeg, k_max=k_max, coeffs=coeffs,
                                exact=False)


# ---------------------------------------------------------------------------
# numeric vanishing oracle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VanishingCheck:
    vanishes: bool
    residual: object      # mpf, the worst relative residual over the samples
    tolerance: float
    samples: int


def _sample_points(rep: MonodromyRep, count: int, seed: int):
    rng = random.Random(seed)
    radius = abs(rep.base_point)
    standoffs = _standoffs(list(rep.critical_values), radius)
    points = []
    attempts = 0
    while len(points) < count:
        attempts += 1
        if attempts > 200 * count:
            raise ComputationError("could not sample regular points")
        r = radius * (mp.mpf(2) / 8 + mp.mpf(rng.random()) * 5 / 8)
        theta = 2 * mp.pi * mp.mpf(rng.random())
        z = r * mp.exp(mp.mpc(0, 1) * theta)
        if all(abs(z - c) > 2 * s for c, s in zip(rep.critical_values, standoffs)):
            points.append(z)
    return points


def tracked_fiber_samples(p: RatPoly, rep: MonodromyRep,
                          config: Config = DEFAULT_CONFIG,
                          count: int | None = None) -> list:
    """Fibers over seeded random regular points, index-aligned with the
    normalized base fiber.  One tracking pass serves any number of
    residual evaluations."""
    count = count if count is not None else config.samples
    with mp.workprec(config.precision_bits + 32):
        points = _sample_points(rep, count, config.seed)
        radius = abs(rep.base_point)
        standoffs = _standoffs(list(rep.critical_values), radius)
        blockers = list(zip(rep.critical_values, standoffs))
        fibers = []
        for z in points:
            path = _route(rep.base_point, z, blockers)
            fibers.append(track_fiber(p, path, list(rep.base_fiber), config))
        return fibers


def cycle_residual(v: CycleVector, q: RatPoly, fibers, prec: int):
    """Worst relative residual of sum_i v_i q(x_i) over the tracked fibers."""
    with mp.workprec(prec + 32):
        worst = mp.mpf(0)
        for fiber in fibers:
            qvals = [eval_poly(q, x, mp.prec) for x in fiber]
            num = abs(sum(_fraction_to_mp(c) * qv for c, qv in zip(v.v, qvals)))
            den = max(mp.mpf(1),
                      sum(abs(_fraction_to_mp(c)) * abs(qv)
                          for c, qv in zip(v.v, qvals)))
            worst = max(worst, num / den)
        return worst


def verify_vanishing_numeric(p: RatPoly, v: CycleVector, q: RatPoly,
                             samples: int | None = None,
                             config: Config = DEFAULT_CONFIG,
                             rep: MonodromyRep | None = None) -> VanishingCheck:
    """Track the normalized fiber to seeded random regular points and
    evaluate sum_i v_i q(x_i); vanishing means the worst relative residual
    stays below the oracle tolerance."""
    if rep is None:
        rep = monodromy(p, config)
    if v.n != rep.n:
        raise InputError("cycle length does not match the fiber degree")
    count = samples if samples is not None else config.samples
    tol = config.resolved_oracle_tol
    with mp.workprec(config.precision_bits + 32):
        if q.is_zero() or v.is_zero():
            return VanishingCheck(True, mp.mpf(0), tol, count)
        fibers = tracked_fiber_samples(p, rep, config, count)
        worst = cycle_residual(v, q, fibers, config.precision_bits)
        return VanishingCheck(bool(worst < tol), worst, tol, count)


def _fraction_to_mp(c: Fraction):
    return mp.mpf(c.numerator) / c.denominator


# ---------------------------------------------------------------------------
# common compositional right factors
# ---------------------------------------------------------------------------

def common_right_factor(f: RatPoly, g: RatPoly) -> RatPoly | None:
    """Maximal-degree nontrivial W with f and g both polynomials in W,
    or None when only linear factors are shared."""
    if f.is_zero() or f.degree < 2:
        raise InputError("common_right_factor requires deg f >= 2")
    for dec in sorted(decompose_all(f), key=lambda d: -d.right.degree):
        w = dec.right
        if w.degree < 2:
            continue
        if all(part.is_constant() for part in w_adic(g, w)):
            return w
    return None


# ---------------------------------------------------------------------------
# classification with certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PullbackPart:
    divisor: int          # d with deg(inner) = n/d
    outer: RatPoly        # S
    inner: RatPoly        # W
    inner_cycles_reduced: bool


@dataclass(frozen=True)
class ClassificationReport:
    case: str
    vanishes: bool
    residual: object
    components: frozenset[int]
    certificates: dict = field(default_factory=dict)


def _strip_pullbacks(q: RatPoly, witnesses, v: CycleVector,
                     lattice: DivisorLattice):
    """Sequential pullback extraction: for each right factor W (largest
    block first) subtract S(W) with S = trace(remainder, W)/deg(W).

    A single sweep suffices: each step clears the Puiseux support classes
    of its own block without reviving previously cleared ones.
    """
    parts = []
    rem = q
    for d, w in sorted(witnesses, key=lambda t: t[0]):
        s = trace_poly(rem, w).value / w.degree
        if s.is_zero():
            continue
        reduced = all(v.dot(e) == 0 for e in v_d_basis(d, lattice.n))
        parts.append(PullbackPart(divisor=d, outer=s, inner=w,
                                  inner_cycles_reduced=reduced))
        rem = rem - compose(s, w)
    return parts, rem


def _verify_in_vd_kernel(rem: RatPoly, w: RatPoly) -> bool:
    return rem.is_zero() or trace_poly(rem, w).value.is_zero()


def _reverify(q: RatPoly, parts, rem: RatPoly):
    acc = rem
    for part in parts:
        acc = acc + compose(part.outer, part.inner)
    if acc != q:
        raise CertificateError("pullback certificate does not reassemble q")


def _p4_condition(v: CycleVector, lattice: DivisorLattice):
    """Divisors e whose pullback cycles are all reduced, when those cover
    the whole zero-pairing set of v (the reduced-representation case)."""
    n = lattice.n
    zero_set = {r for r in range(1, n + 1) if pairing_is_zero(v, r)}
    candidates = [e for e in lattice.members
                  if set(range(n // e, n + 1, n // e)) <= zero_set]
    covered = set()
    for e in candidates:
        covered |= set(range(n // e, n + 1, n // e))
    if covered == zero_set and candidates:
        return candidates
    return None


def classify(p: RatPoly, v: CycleVector, q: RatPoly,
             config: Config = DEFAULT_CONFIG,
             rep: MonodromyRep | None = None,
             lattice: DivisorLattice | None = None) -> ClassificationReport:
    """Structural explanation of why the integral of q over v vanishes,
    with an exactly re-verified certificate; a non-vanishing input yields
    a report with the offending residual."""
    rep, lattice = _ensure_group_data(p, config, rep, lattice)
    check = verify_vanishing_numeric(p, v, q, config=config, rep=rep)
    comps = decompose_v_delta(v, lattice).components
    if not check.vanishes:
        return ClassificationReport(case="non-vanishing", vanishes=False,
                                    residual=check.residual, components=comps)
    if q.is_zero() or v.is_zero():
        return ClassificationReport(case="general", vanishes=True,
                                    residual=check.residual, components=comps,
                                    certificates={"note": "trivial input"})
    n = lattice.n
    members = set(lattice.members)

    if members == {1, n} and comps == {1}:
        # full-fiber scalar cycle: the total trace of q must vanish exactly
        a = v.v[0]
        if any(c != a for c in v.v):
            raise CertificateError("component {1} but cycle is not scalar")
        w = lattice.witness[1].right
        if not trace_poly(q, w).value.is_zero():
            raise CertificateError("scalar-cycle trace certificate failed")
        return ClassificationReport(
            case="scalar-full-fiber", vanishes=True, residual=check.residual,
            components=comps,
            certificates={"scalar": a, "trace_factor": w})

    if members == {1, n} or comps >= members - {1}:
        # q must be a polynomial in p, with a reduced cycle
        w = lattice.witness[1].right
        parts = w_adic(q, w)
        if not all(part.is_constant() for part in parts):
            raise CertificateError("expected q to be a polynomial in p")
        inner_rep = RatPoly([part.coeff(0) for part in parts])
        shift = RatPoly.of(-p.coeff(0) / p.lc, Fraction(1) / p.lc)
        r = compose(inner_rep, shift)
        if compose(r, p) != q:
            raise CertificateError("polynomial-in-p certificate failed")
        if not v.reduced:
            raise CertificateError("cycle is not reduced in the p1/p2 case")
        return ClassificationReport(
            case="polynomial-in-P-and-reduced", vanishes=True,
            residual=check.residual, components=comps,
            certificates={"outer": r})

    if n in comps:
        witnesses = [(dt, lattice.witness[dt].right)
                     for dt in lattice.covered_by(n)]
        parts, rem = _strip_pullbacks(q, witnesses, v, lattice)
        if not rem.is_zero():
            raise CertificateError("pullback-sum stripping left a remainder")
        _reverify(q, parts, rem)
        return ClassificationReport(
            case="pullback-sum", vanishes=True, residual=check.residual,
            components=comps, certificates={"parts": tuple(parts)})

    p4 = _p4_condition(v, lattice)
    if p4 is not None:
        witnesses = [(e, lattice.witness[e].right) for e in p4]
        parts, rem = _strip_pullbacks(q, witnesses, v, lattice)
        if rem.is_zero() and all(part.inner_cycles_reduced for part in parts):
            _reverify(q, parts, rem)
            return ClassificationReport(
                case="pullback-sum-reduced", vanishes=True,
                residual=check.residual, components=comps,
                certificates={"parts": tuple(parts)})

    # general case: per component, strip the covered pullbacks and verify
    # the remainder lies in the corresponding trace kernel
    certificates = {}
    for d in sorted(comps):
        witnesses = [(dt, lattice.witness[dt].right)
                     for dt in lattice.covered_by(d)]
        parts, rem = _strip_pullbacks(q, witnesses, v, lattice)
        if not _verify_in_vd_kernel(rem, lattice.witness[d].right):
            raise CertificateError(
                f"general-case remainder escapes the trace kernel for d={d}")
        _reverify(q, parts, rem)
        certificates[d] = {"parts": tuple(parts), "remainder": rem,
                           "remainder_kernel": d}
    return ClassificationReport(case="general", vanishes=True,
                                residual=check.residual, components=comps,
                                certificates=certificates)


# ---------------------------------------------------------------------------
# weighted moment problems, end to end
# ---------------------------------------------------------------------------

def solve_moment_problem(p: RatPoly, system: IntervalSystem, degree_bound: int,
                         config: Config = DEFAULT_CONFIG,
                         rep: MonodromyRep | None = None,
                         lattice: DivisorLattice | None = None) -> SolutionBasis:
    """Polynomials Q (deg <= bound) killing every walk cycle of the
    weighted interval system: the intersection of the Z_delta over all
    per-level cycles, computed by stacking their exact conditions."""
    rep, lattice = _ensure_group_data(p, config, rep, lattice)
    level_cycles = real_interval_to_coefficients(p, system, rep, config)
    rows: list[list[Fraction]] = []
    for lc in level_cycles:
        rows.extend(_cycle_condition_rows(lc.cycle, lattice, degree_bound))
    kernel = linalg.row_space_basis(linalg.nullspace(rows, degree_bound + 1))
    tags = _z_delta_tags(kernel, lattice, degree_bound)
    return SolutionBasis(degree_bound=degree_bound,
                         basis=tuple(_rows_to_polys(kernel)), provenance=tags)
