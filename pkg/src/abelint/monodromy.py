"""Numerical monodromy of a polynomial via root tracking along loops.

The group is computed from one petal loop per finite critical value plus a
large circle for the loop around infinity, all tracked with an adaptive
predictor-corrector (predictor: previous fiber, corrector: Newton per root)
at a configurable working precision.  The fiber is then renumbered so the
infinity permutation is the standard cycle (1 2 ... n), which every
downstream module relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath import mp

from .config import Config, DEFAULT_CONFIG
from .errors import ComputationError, ConsistencyError, InputError, TrackingError
from .numerics import (cluster_points, eval_poly, min_pairwise_distance,
                       roots_of, roots_of_shifted, to_mpc)
from .ratpoly import Decomposition, RatPoly, decompose_all, divisors

GROUP_ORDER_CAP = 10 ** 6


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}, stored as the tuple of images of 1..n."""
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise InputError(f"not a permutation of 1..{n}: {self.images}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def cycle(n: int) -> "Permutation":
        """The standard cycle (1 2 ... n)."""
        return Permutation(tuple(list(range(2, n + 1)) + [1]))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other (path-concatenation order)."""
        return Permutation(tuple(other.images[j - 1] for j in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        result = 1
        for cyc in self.cycles():
            result = result * len(cyc) // math.gcd(result, len(cyc))
        return result


def generated_group_order(generators: list[Permutation], cap: int = GROUP_ORDER_CAP) -> int | None:
    """Order of <generators> by breadth-first closure, or None past `cap`."""
    if not generators:
        return 1
    n = generators[0].n
    seen = {Permutation.identity(n).images}
    frontier = [Permutation.identity(n)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                prod = g.then(h)
                if prod.images not in seen:
                    seen.add(prod.images)
                    nxt.append(prod)
                    if len(seen) > cap:
                        return None
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# critical values
# ---------------------------------------------------------------------------

def critical_values(p: RatPoly, config: Config = DEFAULT_CONFIG) -> list:
    """Distinct finite critical values of p, clustered and sorted by (re, im)."""
    if p.is_zero() or p.degree < 2:
        raise InputError("critical_values requires deg p >= 2")
    prec = config.precision_bits
    with mp.workprec(prec + 32):
        crit_points = roots_of(p.derivative(), prec + 32)
        values = [eval_poly(p, r, prec + 32) for r in crit_points]
        scale = max([mp.mpf(1)] + [abs(v) for v in values])
        tol = scale * mp.mpf(2) ** (-(prec // 2))
        groups = cluster_points(values, tol)
        reps = []
        for group in groups:
            s = sum(values[i] for i in group) / len(group)
            reps.append(s)
        reps.sort(key=lambda v: (mp.re(v), mp.im(v)))
        for i in range(len(reps) - 1):
            if abs(reps[i] - reps[i + 1]) < 10 * tol:
                raise ComputationError(
                    "critical values too close to separate at this precision")
        return [mp.mpc(v) for v in reps]


# ---------------------------------------------------------------------------
# root tracking
# ---------------------------------------------------------------------------

def _newton(p: RatPoly, dp: RatPoly, z, x0, move_limit, eps):
    x = x0
    total = abs(x0) * 0
    for _ in range(64):
        d = eval_poly(dp, x, mp.prec)
        if abs(d) == 0:
            return None
        step = (eval_poly(p, x, mp.prec) - z) / d
        x = x - step
        total += abs(step)
        if move_limit is not None and total > move_limit:
            return None
        if abs(step) <= eps * max(1, abs(x)):
            return x
    return None


def _track_segment(p: RatPoly, dp: RatPoly, z0, z1, fiber, config: Config):
    length = abs(z1 - z0)
    if length == 0:
        return list(fiber)
    eps = mp.mpf(2) ** (-(config.precision_bits + 8))
    coll = mp.mpf(config.collision_tol)
    t = mp.mpf(0)
    step = mp.mpf(config.track_step)
    streak = 0
    fiber = list(fiber)
    while t < 1:
        h = min(step, 1 - t)
        z = z0 + (t + h) * (z1 - z0)
        gap = min_pairwise_distance(fiber)
        move_limit = None if gap is None else gap * mp.mpf("0.35")
        new = []
        ok = True
        for x in fiber:
            xn = _newton(p, dp, z, x, move_limit, eps)
            if xn is None:
                ok = False
                break
            new.append(xn)
        if ok and len(new) > 1:
            scale = max(mp.mpf(1), max(abs(x) for x in new))
            gap_new = min_pairwise_distance(new)
            if gap_new < 10 * coll * scale:
                ok = False
        if ok:
            fiber = new
            t += h
            streak += 1
            if streak >= 3:
                step = min(step * mp.mpf("1.4"), mp.mpf(config.track_step) * 4)
                streak = 0
        else:
            step = step / 2
            streak = 0
            if step < mp.mpf(2) ** -30:
                raise TrackingError(
                    "step collapse: tracked roots collided; path passes too "
                    "near a critical value")
    return fiber


def track_fiber(p: RatPoly, path: list, start_fiber: list,
                config: Config = DEFAULT_CONFIG) -> list:
    """Analytic continuation of a full fiber along a polyline.

    The i-th output is the continuation of the i-th input; deterministic
    for a fixed Config.  Raises TrackingError on root collision.
    """
    if len(path) < 1:
        raise InputError("path must contain at least one point")
    dp = p.derivative()
    with mp.workprec(config.precision_bits + 32):
        eps = mp.mpf(2) ** (-(config.precision_bits + 8))
        fiber = []
        z0 = to_mpc(path[0], mp.prec)
        for x in start_fiber:
            xr = _newton(p, dp, z0, to_mpc(x, mp.prec), None, eps)
            if xr is None:
                raise TrackingError("start fiber failed to refine")
            fiber.append(xr)
        for a, b in zip(path, path[1:]):
            fiber = _track_segment(p, dp, to_mpc(a, mp.prec), to_mpc(b, mp.prec),
                                   fiber, config)
        return fiber


def match_permutation(start_fiber: list, end_fiber: list) -> Permutation:
    """Permutation sigma with end[i] ~ start[sigma(i)], verified bijective."""
    n = len(start_fiber)
    gap = min_pairwise_distance(start_fiber)
    images = []
    for i in range(n):
        dists = sorted((abs(end_fiber[i] - start_fiber[j]), j) for j in range(n))
        best, j = dists[0]
        if gap is not None and best > gap / 4:
            raise TrackingError("fiber endpoint does not match any start root")
        images.append(j + 1)
    if sorted(images) != list(range(1, n + 1)):
        raise TrackingError("fiber matching is not a bijection")
    return Permutation(tuple(images))


# ---------------------------------------------------------------------------
# petal loop geometry
# ---------------------------------------------------------------------------

def _dist_point_segment(pt, a, b):
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0:
        return abs(pt - a)
    t = ((mp.re(pt - a) * mp.re(ab)) + (mp.im(pt - a) * mp.im(ab))) / denom
    t = max(0, min(1, t))
    return abs(pt - (a + t * ab))


def _route(z0, z1, blockers, depth=0):
    """Polyline from z0 to z1 avoiding each blocker's standoff disk.

    Blocked segments detour around the offending point on a fixed side
    (direction rotated by -90 degrees, the upper side for rightward
    real-axis traffic).
    """
    if depth > 8:
        raise TrackingError("could not route a loop between critical values")
    for b, r in blockers:
        if abs(b - z0) < mp.mpf("1.6") * r or abs(b - z1) < mp.mpf("1.6") * r:
            continue
        if _dist_point_segment(b, z0, z1) < mp.mpf("1.5") * r:
            direction = (z1 - z0) / abs(z1 - z0)
            w = b + 3 * r * direction * mp.mpc(0, -1)
            left = _route(z0, w, blockers, depth + 1)
            right = _route(w, z1, blockers, depth + 1)
            return left[:-1] + right
    return [z0, z1]


def _standoffs(cvs, base_radius):
    out = []
    for i, c in enumerate(cvs):
        others = [abs(c - d) for j, d in enumerate(cvs) if j != i]
        if others:
            out.append(min(others) / 4)
        else:
            out.append(base_radius / 8)
    return out


def _sweep_rotation(cvs, c0):
    """A deterministic rotation making the sweep projections of all
    critical values (and the base point) pairwise distinct, chosen with
    the best separation margin among a fixed candidate list."""
    points = list(cvs) + [mp.mpc(c0)]
    best_phi, best_gap = None, None
    for j in range(48):
        phi = mp.pi * j / mp.mpf(149)
        u = mp.exp(mp.mpc(0, -1) * phi)
        projs = sorted(mp.re(p * u) for p in points)
        gap = min((b - a for a, b in zip(projs, projs[1:])), default=mp.mpf(1))
        if best_gap is None or gap > best_gap:
            best_phi, best_gap = phi, gap
    if best_gap <= 0:
        raise ComputationError("could not separate critical values by a sweep")
    return best_phi, best_gap


def _petal_paths(c0, cvs, standoffs):
    """Non-crossing petal loops via a sweep: descend from the base point to
    a highway below the critical disk, run to the target's sweep abscissa,
    ascend to the standoff circle and wind once counterclockwise.

    The corridors (one vertical ascent per critical value, at pairwise
    distinct abscissas) cannot cross, so the loops form a geometric basis;
    their product in descending-abscissa order is the loop around infinity.
    """
    radius = abs(mp.mpc(c0))
    phi, gap = _sweep_rotation(cvs, c0)
    u = mp.exp(mp.mpc(0, -1) * phi)       # frame rotation w = z*u
    back = mp.exp(mp.mpc(0, 1) * phi)
    w0 = mp.mpc(c0) * u
    ws = [c * u for c in cvs]
    highway = min(min(mp.im(w) for w in ws), mp.im(w0)) - radius / 2
    paths = []
    order_keys = []
    for i, w in enumerate(ws):
        r = min(standoffs[i], gap / 3)
        descent = [w0, mp.mpc(mp.re(w0), highway), mp.mpc(mp.re(w), highway),
                   w - mp.mpc(0, 1) * r]
        circle = [w + r * mp.exp(mp.mpc(0, 1) * (-mp.pi / 2 + 2 * mp.pi * k / 16))
                  for k in range(1, 17)]
        path_w = descent + circle + list(reversed(descent))[1:]
        paths.append([pt * back for pt in path_w])
        order_keys.append(mp.re(w))
    return paths, order_keys


# ---------------------------------------------------------------------------
# the monodromy representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonodromyRep:
    """Monodromy data of one polynomial, normalized so infinity = (1 2 ... n).

    generators[i] belongs to critical_values[i]; petal_order lists the
    generator indices in the sweep order in which their product equals the
    infinity cycle.
    """
    n: int
    base_point: object            # mpmath mpc
    critical_values: tuple
    generators: tuple[Permutation, ...]
    infinity: Permutation
    base_fiber: tuple
    petal_order: tuple[int, ...]
    precision_bits: int

    def generator_for(self, idx: int) -> Permutation:
        return self.generators[idx]

    def product_in_petal_order(self) -> Permutation:
        acc = Permutation.identity(self.n)
        for idx in self.petal_order:
            acc = acc.then(self.generators[idx])
        return acc


def _relabel(perm: Permutation, label: list[int]) -> Permutation:
    """Conjugate by the relabeling old index -> label[old-1]."""
    n = perm.n
    images = [0] * n
    for old in range(1, n + 1):
        images[label[old - 1] - 1] = label[perm(old) - 1]
    return Permutation(tuple(images))


def monodromy(p: RatPoly, config: Config = DEFAULT_CONFIG) -> MonodromyRep:
    """Full monodromy representation of p at the configured precision."""
    n = p.degree
    if p.is_zero() or n < 2:
        raise InputError("monodromy requires deg p >= 2")
    cvs = critical_values(p, config)
    with mp.workprec(config.precision_bits + 32):
        radius = 2 * (1 + max(abs(c) for c in cvs))
        c0 = mp.mpf(radius)
        fiber0 = roots_of_shifted(p, c0, mp.prec)

        # loop around infinity: out to 2R, full counterclockwise circle, back
        big = 2 * radius
        circle = [big * mp.exp(mp.mpc(0, 2) * mp.pi * k / 64) for k in range(65)]
        path_inf = [c0, mp.mpf(big)] + circle[1:] + [c0]
        sigma_inf = match_permutation(fiber0, track_fiber(p, path_inf, fiber0, config))
        if len(sigma_inf.cycles()) != 1 or len(sigma_inf.cycles()[0]) != n:
            raise ComputationError("infinity permutation is not an n-cycle")

        standoffs = _standoffs(cvs, radius)
        paths, order_keys = _petal_paths(c0, cvs, standoffs)
        raw_gens = [match_permutation(fiber0, track_fiber(p, path, fiber0, config))
                    for path in paths]
        petal_order = tuple(sorted(range(len(cvs)),
                                   key=lambda i: (-order_keys[i], i)))

        # renumber so sigma_inf becomes (1 2 ... n); root "1" is the fiber
        # point with the largest real part (ties: largest imaginary part)
        start = max(range(n), key=lambda i: (mp.re(fiber0[i]), mp.im(fiber0[i])))
        label = [0] * n
        cur = start + 1
        for pos in range(1, n + 1):
            label[cur - 1] = pos
            cur = sigma_inf(cur)
        gens = tuple(_relabel(g, label) for g in raw_gens)
        infinity = _relabel(sigma_inf, label)
        if infinity != Permutation.cycle(n):
            raise ConsistencyError("renumbering failed to standardize infinity")
        ordered_fiber = [None] * n
        for old in range(n):
            ordered_fiber[label[old] - 1] = fiber0[old]

        rep = MonodromyRep(
            n=n, base_point=mp.mpc(c0), critical_values=tuple(cvs),
            generators=gens, infinity=infinity,
            base_fiber=tuple(ordered_fiber), petal_order=petal_order,
            precision_bits=config.precision_bits)
        if rep.product_in_petal_order() != infinity:
            raise ConsistencyError(
                "petal-order product does not reproduce the infinity cycle")
        return rep


# ---------------------------------------------------------------------------
# block systems and the divisor lattice
# ---------------------------------------------------------------------------

def _preserves_mod_blocks(gen: Permutation, d: int) -> bool:
    n = gen.n
    for k in range(1, d + 1):
        block = [k + j * d for j in range(n // d)]
        images = {(gen(i) - 1) % d for i in block}
        if len(images) != 1:
            return False
    return True


@dataclass(frozen=True)
class DivisorLattice:
    """Divisors d of n whose residue classes mod d are invariant blocks,
    with one witness decomposition (deg left = d) per member."""
    n: int
    members: tuple[int, ...]
    covers: dict[int, tuple[int, ...]]
    witness: dict[int, Decomposition]

    def covered_by(self, d: int) -> tuple[int, ...]:
        return self.covers.get(d, ())

    def require_member(self, d: int):
        if d not in self.members:
            raise InputError(f"{d} is not in the divisor lattice of n={self.n}")


def divisor_lattice(rep: MonodromyRep, p: RatPoly) -> DivisorLattice:
    """Block-test lattice, cross-checked against exact decomposition."""
    n = rep.n
    block_ds = {d for d in divisors(n)
                if all(_preserves_mod_blocks(g, d) for g in rep.generators)}
    decs = {dec.left.degree: dec for dec in decompose_all(p)}
    if block_ds != set(decs):
        raise ConsistencyError(
            f"block test {sorted(block_ds)} disagrees with decomposition "
            f"test {sorted(decs)}; numeric precision failure likely")
    members = tuple(sorted(block_ds))
    covers = {}
    for d in members:
        cands = [e for e in members if e < d and d % e == 0]
        covers[d] = tuple(e for e in cands
                          if not any(e < l < d and l % e == 0 and d % l == 0
                                     for l in cands))
    for a in members:
        for b in members:
            if math.gcd(a, b) not in block_ds or (a * b // math.gcd(a, b)) not in block_ds:
                raise ConsistencyError("divisor set is not gcd/lcm closed")
    return DivisorLattice(n=n, members=members, covers=covers, witness=decs)


# ---------------------------------------------------------------------------
# symmetric-group test
# ---------------------------------------------------------------------------

def _is_two_transitive(generators: list[Permutation], n: int) -> bool:
    start = (1, 2)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for (a, b) in frontier:
            for g in generators:
                pair = (g(a), g(b))
                if pair not in seen:
                    seen.add(pair)
                    nxt.append(pair)
        frontier = nxt
    return len(seen) == n * (n - 1)


def is_full_symmetric(rep: MonodromyRep, config: Config = DEFAULT_CONFIG) -> bool:
    """Whether the generated group is all of S_n.

    Uses explicit closure up to GROUP_ORDER_CAP elements; past the cap,
    falls back to the 2-transitivity + transposition certificate (a
    2-transitive group containing a transposition is the full symmetric
    group).
    """
    n = rep.n
    gens = list(rep.generators)
    target = math.factorial(n)
    if target <= GROUP_ORDER_CAP:
        return generated_group_order(gens) == target
    if n > 12:
        raise ComputationError("degree exceeds the configured symmetric-group cap")
    if not _is_two_transitive(gens, n):
        return False
    seen = {Permutation.identity(n).images}
    frontier = [Permutation.identity(n)]
    while frontier and len(seen) <= GROUP_ORDER_CAP:
        nxt = []
        for g in frontier:
            for h in gens:
                prod = g.then(h)
                if prod.images in seen:
                    continue
                seen.add(prod.images)
                cycles = prod.cycles()
                if len(cycles) == 1 and len(cycles[0]) == 2:
                    return True
                nxt.append(prod)
        frontier = nxt
    return False
