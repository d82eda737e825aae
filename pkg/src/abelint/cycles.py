"""0-cycles on polynomial fibers: vectors, constellations and real walks.

A 0-cycle is a rational combination of the n branches of P^{-1}, stored as
the vector of its coefficients in the normalized branch numbering (the one
that makes the loop around infinity the standard cycle).  This module
builds such vectors from three sources: weighted real interval systems
(moment problems), vanishing-cycle combinations at a confluence, and the
constellation graph of the covering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .config import Config, DEFAULT_CONFIG
from .errors import ComputationError, InputError, TrackingError
from .monodromy import MonodromyRep, _route, _standoffs, track_fiber
from .numerics import roots_of, to_mpf
from .ratpoly import RatPoly, squarefree_part


# ---------------------------------------------------------------------------
# cycle vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleVector:
    """Coefficients (v_1..v_n) of a 0-cycle on the fiber of a degree-n map.

    `reduced` records whether the coefficients sum to zero and is checked
    against the actual sum on construction.
    """
    n: int
    v: tuple[Fraction, ...]
    reduced: bool

    def __init__(self, n: int, v, reduced: bool | None = None):
        vv = tuple(Fraction(x) for x in v)
        if len(vv) != n:
            raise InputError(f"cycle vector must have length {n}")
        is_reduced = sum(vv) == 0
        if reduced is not None and reduced != is_reduced:
            raise InputError("reduced flag disagrees with the coefficient sum")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "v", vv)
        object.__setattr__(self, "reduced", is_reduced)

    @staticmethod
    def zero(n: int) -> "CycleVector":
        return CycleVector(n, (Fraction(0),) * n)

    @staticmethod
    def ones(n: int) -> "CycleVector":
        return CycleVector(n, (Fraction(1),) * n)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.v)

    def dot(self, other: "CycleVector") -> Fraction:
        if other.n != self.n:
            raise InputError("dimension mismatch")
        return sum(a * b for a, b in zip(self.v, other.v))

    def __add__(self, other: "CycleVector") -> "CycleVector":
        if other.n != self.n:
            raise InputError("dimension mismatch")
        return CycleVector(self.n, tuple(a + b for a, b in zip(self.v, other.v)))

    def __sub__(self, other: "CycleVector") -> "CycleVector":
        return self + (-1) * other

    def __rmul__(self, c) -> "CycleVector":
        c = Fraction(c)
        return CycleVector(self.n, tuple(c * x for x in self.v))

    def proportional_to(self, other: "CycleVector") -> bool:
        """Whether one vector is a rational multiple of the other."""
        if self.n != other.n:
            return False
        if self.is_zero() or other.is_zero():
            return True
        pairs = list(zip(self.v, other.v))
        ratio = None
        for a, b in pairs:
            if (a == 0) != (b == 0):
                return False
            if a != 0:
                r = b / a
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return False
        return True


def nontrivial_cycle_exists(vectors) -> bool:
    """Whether some produced cycle vector is nonzero."""
    for item in vectors:
        vec = item.cycle if isinstance(item, LevelCycle) else item
        if not vec.is_zero():
            return True
    return False


# ---------------------------------------------------------------------------
# vanishing-cycle combinations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VanishingCycleCombo:
    """Integer combination of the standard vanishing cycles at a confluence
    of n_local roots; coefficients are indexed by pairs (i, j), i < j."""
    n_local: int
    coefficients: dict[tuple[int, int], Fraction]

    def __post_init__(self):
        for (i, j) in self.coefficients:
            if not (1 <= i < j <= self.n_local):
                raise InputError(f"vanishing-cycle index ({i},{j}) out of range")


def vanishing_combo_to_cycle(combo: VanishingCycleCombo,
                             root_order: list[int],
                             n: int | None = None) -> CycleVector:
    """The 0-cycle sum n_ij (e_i - e_j) placed at global branch indices.

    root_order[k-1] is the global branch index of the k-th confluent root
    in the local cyclic order of the monodromy action.
    """
    if len(root_order) != combo.n_local:
        raise InputError("root_order length must equal n_local")
    if n is None:
        n = max(root_order)
    v = [Fraction(0)] * n
    for (i, j), c in combo.coefficients.items():
        v[root_order[i - 1] - 1] += Fraction(c)
        v[root_order[j - 1] - 1] -= Fraction(c)
    vec = CycleVector(n, tuple(v))
    assert vec.reduced
    return vec


# ---------------------------------------------------------------------------
# branch identification over the real line
# ---------------------------------------------------------------------------

def _real_criticals(rep: MonodromyRep):
    tol = mp.mpf(2) ** (-(rep.precision_bits // 2))
    out = []
    for c in rep.critical_values:
        if abs(mp.im(c)) < tol * (1 + abs(c)):
            out.append(mp.re(c))
    return sorted(out)


def _arc_radius(levels, idx, rep) -> object:
    """Safe detour radius around real critical value levels[idx]."""
    c = levels[idx]
    dists = [abs(c - o) for j, o in enumerate(levels) if j != idx]
    dists.append(abs(mp.re(rep.base_point) - c))
    tol = mp.mpf(2) ** (-(rep.precision_bits // 2))
    for cv in rep.critical_values:
        if abs(mp.im(cv)) >= tol * (1 + abs(cv)):
            dists.append(abs(mp.im(cv)))
    return min(dists) / 3


def continue_fiber_to_real(p: RatPoly, rep: MonodromyRep, z_target,
                           config: Config = DEFAULT_CONFIG):
    """The fiber over a real regular z, continued from the base point down
    the real axis with upper-semicircle detours around real critical values.

    This is the branch numbering induced by the standard cut system, the
    same one the interval walks and the star identification use.
    """
    with mp.workprec(config.precision_bits + 32):
        z_target = to_mpf(z_target, mp.prec)
        reals = _real_criticals(rep)
        c0 = mp.re(rep.base_point)
        if z_target == c0:
            return list(rep.base_fiber)
        if z_target > c0:
            # no critical values to the right of the base point
            return track_fiber(p, [mp.mpc(c0), mp.mpc(z_target)],
                               list(rep.base_fiber), config)
        path = [mp.mpc(c0)]
        for idx in range(len(reals) - 1, -1, -1):
            c = reals[idx]
            if not (z_target < c < c0):
                continue
            r = _arc_radius(reals, idx, rep)
            r = min(r, (c0 - c) / 3, (c - z_target) / 3)
            # upper semicircle from c+r over the top to c-r
            for k in range(9):
                path.append(c + r * mp.exp(mp.mpc(0, 1) * mp.pi * k / 8))
        path.append(mp.mpc(z_target))
        return track_fiber(p, path, list(rep.base_fiber), config)


def _identify_branch(p: RatPoly, rep: MonodromyRep, x_point, z_value, config) -> int:
    """1-based branch label whose continuation sits at x_point over z_value."""
    fiber = continue_fiber_to_real(p, rep, z_value, config)
    dists = sorted((abs(fiber[i] - x_point), i) for i in range(rep.n))
    best, i = dists[0]
    second = dists[1][0] if len(dists) > 1 else None
    if second is not None and not best * 4 < second:
        raise ComputationError("ambiguous branch identification on the walk")
    return i + 1


# ---------------------------------------------------------------------------
# weighted interval systems and their walk cycles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightedInterval:
    a: object           # decimal string / Fraction / mpf
    b: object
    weight: Fraction

    def __post_init__(self):
        if Fraction(self.weight) == 0:
            raise InputError("interval weights must be nonzero")


@dataclass(frozen=True)
class IntervalSystem:
    intervals: tuple[WeightedInterval, ...]

    @staticmethod
    def of(*items) -> "IntervalSystem":
        out = []
        for a, b, w in items:
            out.append(WeightedInterval(a, b, Fraction(w)))
        return IntervalSystem(tuple(out))


@dataclass(frozen=True)
class LevelCycle:
    """The walk cycle attached to one cut level (a critical value, or an
    interval endpoint value when that is not a critical value)."""
    level: object       # mpf
    is_critical: bool
    cycle: CycleVector


def _snap_index(levels, z, tol):
    for i, lv in enumerate(levels):
        if abs(z - lv) < tol * (1 + abs(lv)):
            return i
    return None


def real_interval_to_coefficients(p: RatPoly, system: IntervalSystem,
                                  rep: MonodromyRep,
                                  config: Config = DEFAULT_CONFIG) -> list[LevelCycle]:
    """Signed branch-appearance vectors of the walk of each interval.

    Each interval [a, b] is cut at the interior turning points; every
    monotone piece runs between two cut levels and contributes its weight,
    signed by direction, to the vectors of both touched levels (+ toward
    the level, - away from it).  Cut levels are the real critical values
    plus any endpoint values that are not critical; the resulting
    conditions are jointly equivalent to the per-gap vanishing conditions.
    """
    n = rep.n
    prec = config.precision_bits
    with mp.workprec(prec + 32):
        snap = mp.mpf(2) ** (-(prec // 3))
        reals = _real_criticals(rep)
        if not reals:
            raise ComputationError(
                "no real critical values: the real-walk regime does not apply")
        levels = [mp.mpf(c) for c in reals]
        flags = [True] * len(levels)

        # first pass: register endpoint levels
        endpoints = []
        for itv in system.intervals:
            a = to_mpf(itv.a, mp.prec)
            b = to_mpf(itv.b, mp.prec)
            if a == b:
                raise InputError("interval endpoints must differ")
            endpoints.extend([p_eval_real(p, a), p_eval_real(p, b)])
        for z in endpoints:
            if _snap_index(levels, z, snap) is None:
                levels.append(z)
                flags.append(False)
        order = sorted(range(len(levels)), key=lambda i: levels[i])
        levels = [levels[i] for i in order]
        flags = [flags[i] for i in order]

        vectors = [[Fraction(0)] * n for _ in levels]
        dp_sf = squarefree_part(p.derivative())

        for itv in system.intervals:
            a = to_mpf(itv.a, mp.prec)
            b = to_mpf(itv.b, mp.prec)
            w = Fraction(itv.weight)
            if a > b:
                a, b = b, a
                w = -w
            turning = _real_roots_between(dp_sf, a, b, prec)
            cuts = [a] + turning + [b]
            for xl, xr in zip(cuts, cuts[1:]):
                za, zb = p_eval_real(p, xl), p_eval_real(p, xr)
                ia = _snap_index(levels, za, snap)
                ib = _snap_index(levels, zb, snap)
                if ia is None or ib is None or ia == ib:
                    raise ComputationError(
                        "walk piece endpoints failed to land on cut levels")
                direction = 1 if zb > za else -1
                branch = _walk_piece_branch(p, rep, xl, xr, levels, config)
                lo, hi = min(ia, ib), max(ia, ib)
                vectors[lo][branch - 1] += -direction * w
                vectors[hi][branch - 1] += direction * w

        return [LevelCycle(level=levels[i], is_critical=flags[i],
                           cycle=CycleVector(n, tuple(vectors[i])))
                for i in range(len(levels))]


def p_eval_real(p: RatPoly, x):
    acc = mp.mpf(0)
    for c in reversed(p.coeffs):
        acc = acc * x + mp.mpf(c.numerator) / c.denominator
    return acc


def _real_roots_between(dp_sf: RatPoly, a, b, prec: int) -> list:
    if dp_sf.is_zero() or dp_sf.degree < 1:
        return []
    tol = mp.mpf(2) ** (-(prec // 2))
    out = []
    for r in roots_of(dp_sf, prec + 32, squarefree=False):
        if abs(mp.im(r)) < tol * (1 + abs(r)):
            x = mp.re(r)
            if a + tol < x < b - tol:
                out.append(x)
    return sorted(out)


def _walk_piece_branch(p: RatPoly, rep: MonodromyRep, xl, xr, levels, config) -> int:
    """Branch label of one monotone piece, probed at interior points whose
    image keeps clear of every cut level."""
    candidates = [Fraction(1, 2), Fraction(3, 8), Fraction(5, 8),
                  Fraction(1, 4), Fraction(3, 4)]
    gap_scale = min((levels[i + 1] - levels[i] for i in range(len(levels) - 1)),
                    default=mp.mpf(1))
    last_error = None
    for t in candidates:
        x_m = xl + (xr - xl) * mp.mpf(t.numerator) / t.denominator
        z_m = p_eval_real(p, x_m)
        if min(abs(z_m - lv) for lv in levels) < gap_scale / 8:
            continue
        try:
            return _identify_branch(p, rep, x_m, z_m, config)
        except (TrackingError, ComputationError) as exc:
            last_error = exc
    raise ComputationError(f"could not identify the branch of a walk piece "
                           f"({last_error})")


# ---------------------------------------------------------------------------
# constellations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constellation:
    """The preimage graph of the star joining the base point to the finite
    critical values: one star per branch, one marked vertex per critical
    preimage, edges between star centers and the vertices they reach."""
    star_center: object
    rays: tuple                     # critical values
    stars: tuple[dict[int, int], ...]   # per branch: ray index -> vertex id
    vertex_positions: dict[int, object]
    vertex_ray: dict[int, int]

    @property
    def n(self) -> int:
        return len(self.stars)

    def adjacency(self) -> list[tuple[int, int]]:
        out = []
        for i, star in enumerate(self.stars, start=1):
            for s in sorted(star):
                out.append((i, star[s]))
        return out

    def vertex_count(self) -> int:
        return len(self.vertex_positions)

    def edge_count(self) -> int:
        return len(self.adjacency())

    def face_count_via_euler(self) -> int:
        # V - E + F = 2 on the sphere; star centers count as vertices too
        return 2 - (self.n + self.vertex_count()) + self.edge_count()

    def sharing_graph_edges(self) -> set[tuple[int, int]]:
        """Pairs of stars sharing a marked vertex (the dessin skeleton)."""
        out = set()
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                if set(self.stars[i - 1].values()) & set(self.stars[j - 1].values()):
                    out.add((i, j))
        return out


def _vertex_positions_for(p: RatPoly, c_s, prec: int):
    """Distinct preimages of a critical value, via clustered root finding."""
    import mpmath

    from .numerics import cluster_points, poly_mpc_coeffs
    with mp.workprec(prec + 64):
        coeffs = poly_mpc_coeffs(p, mp.prec)
        coeffs[-1] -= mp.mpc(c_s)
        try:
            rts = mpmath.polyroots(coeffs, maxsteps=400, extraprec=prec + 64)
        except mpmath.libmp.NoConvergence as exc:
            raise ComputationError(f"preimage roots did not converge: {exc}")
        scale = max(mp.mpf(1), max(abs(r) for r in rts))
        tol = scale * mp.mpf(2) ** (-(prec // 8))
        groups = cluster_points(list(rts), tol)
        reps = [sum(rts[i] for i in g) / len(g) for g in groups]
        return sorted(reps, key=lambda r: (mp.re(r), mp.im(r)))


def build_constellation(p: RatPoly, rep: MonodromyRep,
                        config: Config = DEFAULT_CONFIG) -> Constellation:
    """Identify the star of every branch and the marked vertices it reaches,
    by tracking the fiber along each ray almost to the critical value."""
    n = rep.n
    prec = config.precision_bits
    with mp.workprec(prec + 32):
        cvs = list(rep.critical_values)
        c0 = rep.base_point
        standoffs = _standoffs(cvs, 2 * (1 + max(abs(c) for c in cvs)))
        stars: list[dict[int, int]] = [dict() for _ in range(n)]
        vertex_positions: dict[int, object] = {}
        vertex_ray: dict[int, int] = {}
        next_id = 0
        for s, c_s in enumerate(cvs):
            verts = _vertex_positions_for(p, c_s, prec)
            sep = mp.mpf("+inf")
            for i in range(len(verts)):
                for j in range(i + 1, len(verts)):
                    sep = min(sep, abs(verts[i] - verts[j]))
            ids = []
            for vpos in verts:
                vertex_positions[next_id] = vpos
                vertex_ray[next_id] = s
                ids.append(next_id)
                next_id += 1
            rho = standoffs[s] / 64
            u = (c0 - c_s) / abs(c0 - c_s)
            approach = _route(c0, c_s + rho * u,
                              [(cvs[j], standoffs[j]) for j in range(len(cvs))
                               if j != s])
            fiber = track_fiber(p, approach, list(rep.base_fiber), config)
            for i in range(n):
                dists = sorted((abs(fiber[i] - vertex_positions[vid]), vid)
                               for vid in ids)
                best, vid = dists[0]
                if len(ids) > 1 and not best * 3 < sep:
                    raise ComputationError(
                        "branch endpoint does not separate marked vertices")
                stars[i][s] = vid
        return Constellation(star_center=c0, rays=tuple(cvs),
                             stars=tuple(stars),
                             vertex_positions=vertex_positions,
                             vertex_ray=vertex_ray)


# ---------------------------------------------------------------------------
# SVG export
# ---------------------------------------------------------------------------

_RAY_COLORS = ["#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400",
               "#16a085", "#7f8c8d"]


def constellation_svg(con: Constellation, size: int = 480) -> str:
    """Deterministic SVG rendering: stars on a circle ordered by branch
    index, marked vertices at the barycenters of their stars."""
    import math
    n = con.n
    cx = cy = size / 2
    r_star = size * 0.38
    star_pos = {}
    for i in range(1, n + 1):
        ang = 2 * math.pi * (i - 1) / n - math.pi / 2
        star_pos[i] = (cx + r_star * math.cos(ang), cy + r_star * math.sin(ang))
    vert_members: dict[int, list[int]] = {}
    for i, star in enumerate(con.stars, start=1):
        for vid in star.values():
            vert_members.setdefault(vid, []).append(i)
    vert_pos = {}
    for vid, members in sorted(vert_members.items()):
        xs = [star_pos[i][0] for i in members]
        ys = [star_pos[i][1] for i in members]
        fx, fy = sum(xs) / len(xs), sum(ys) / len(ys)
        # pull single-star vertices outward so they do not sit on the star
        if len(members) == 1:
            fx = cx + (fx - cx) * 1.25
            fy = cy + (fy - cy) * 1.25
        vert_pos[vid] = (fx, fy)
    lines = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" '
             f'height="{size}" viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    for i, vid in con.adjacency():
        color = _RAY_COLORS[con.vertex_ray[vid] % len(_RAY_COLORS)]
        x1, y1 = star_pos[i]
        x2, y2 = vert_pos[vid]
        lines.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" '
                     f'y2="{y2:.2f}" stroke="{color}" stroke-width="1.5"/>')
    for vid, (x, y) in sorted(vert_pos.items()):
        color = _RAY_COLORS[con.vertex_ray[vid] % len(_RAY_COLORS)]
        lines.append(f'<rect x="{x - 4:.2f}" y="{y - 4:.2f}" width="8" height="8" '
                     f'fill="{color}"/>')
    for i in range(1, n + 1):
        x, y = star_pos[i]
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="10" fill="#2c3e50"/>')
        lines.append(f'<text x="{x:.2f}" y="{y + 4:.2f}" font-size="11" '
                     f'fill="white" text-anchor="middle">{i}</text>')
    lines.append("</svg>")
    return "\n".join(lines)
