"""Gelfand-Tsetlin cones, tropical cones, lattice points, and level-1
Newton-Okounkov point sets.

Cones are stored by inequalities only (H-representation) over an ambient
lattice whose first coordinate "r" is the level.  The remaining coordinates
are named by the faces of the rectangles seed, so tropicalized
superpotentials and Gelfand-Tsetlin inequalities live in the same space and
can be compared covector by covector.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .combinat import KSubset, format_ksubset, ksubsets, rectangle_label
from .laurent import LaurentPoly
from .seeds import Quiver, Seed, kappa_vector, rectangles_seed, trop_a_mutate


class Unbounded(Exception):
    """A lattice-point enumeration over an unbounded slice."""


@dataclass(frozen=True)
class Cone:
    ambient: tuple[str, ...]  # first entry is the level coordinate "r"
    ineqs: tuple[tuple[int, ...], ...]  # canonical covectors, >= 0 each


def _canonical_covector(vec: tuple[int, ...]) -> tuple[int, ...] | None:
    g = 0
    for c in vec:
        g = gcd(g, abs(c))
    if g == 0:
        return None
    return tuple(c // g for c in vec)


def make_cone(ambient, covectors) -> Cone:
    """Canonicalize covectors (gcd 1, deduplicated, sorted)."""
    ambient = tuple(ambient)
    idx = {x: i for i, x in enumerate(ambient)}
    out = set()
    for cov in covectors:
        if isinstance(cov, dict):
            vec = [0] * len(ambient)
            for lab, c in cov.items():
                vec[idx[lab]] = c
            cov = tuple(vec)
        cov = _canonical_covector(tuple(cov))
        if cov is not None:
            out.add(cov)
    return Cone(ambient, tuple(sorted(out)))


def cone_contains(c: Cone, point: dict) -> bool:
    """Membership test; the point maps ambient labels to numbers (missing
    labels count as 0)."""
    for cov in c.ineqs:
        tot = 0
        for lab, a in zip(c.ambient, cov):
            if a:
                tot += a * point.get(lab, 0)
        if tot < 0:
            return False
    return True


def cone_to_json_obj(c: Cone) -> dict:
    return {
        "ambient": list(c.ambient),
        "ineqs": [
            {lab: a for lab, a in zip(c.ambient, cov) if a} for cov in c.ineqs
        ],
    }


def cone_from_json_obj(obj) -> Cone:
    return make_cone(tuple(obj["ambient"]), [dict(m) for m in obj["ineqs"]])


def cone_to_json(c: Cone) -> str:
    return json.dumps(cone_to_json_obj(c), sort_keys=True)


# -------------------------------------------------------------- GT cones


def grid_label(k: int, n: int, t: int, s: int) -> str:
    return format_ksubset(rectangle_label(k, n, t, s), n)


def gt_ambient(k: int, n: int) -> tuple[str, ...]:
    labs = sorted(
        grid_label(k, n, t, s)
        for t in range(1, k + 1)
        for s in range(1, n - k + 1)
    )
    return ("r",) + tuple(labs)


def gt_inequalities(k: int, n: int) -> Cone:
    """The cumulative Gelfand-Tsetlin cone of the k x (n-k) grid.

    With v_{0j} = v_{i0} = 0, the inequalities are v_11 >= 0, the two
    families of interlacing conditions
    v_ij + v_(i-2)(j-1) - v_(i-1)(j-1) - v_(i-1)j >= 0 and
    v_ij + v_(i-1)(j-2) - v_(i-1)(j-1) - v_i(j-1) >= 0,
    and the level bound r >= v_(k)(n-k) - v_(k-1)(n-k-1).
    """
    w = n - k

    def v(i, j):
        if i <= 0 or j <= 0:
            return None
        return grid_label(k, n, i, j)

    covs = []

    def add(parts):
        cov: dict[str, int] = {}
        for lab, c in parts:
            if lab is None:
                continue
            cov[lab] = cov.get(lab, 0) + c
        covs.append(cov)

    add([(v(1, 1), 1)])
    add([("r", 1), (v(k, w), -1), (v(k - 1, w - 1), 1)])
    for i in range(2, k + 1):
        for j in range(1, w + 1):
            add([(v(i, j), 1), (v(i - 2, j - 1), 1),
                 (v(i - 1, j - 1), -1), (v(i - 1, j), -1)])
    for i in range(1, k + 1):
        for j in range(2, w + 1):
            add([(v(i, j), 1), (v(i - 1, j - 2), 1),
                 (v(i - 1, j - 1), -1), (v(i, j - 1), -1)])
    assert len(covs) == 2 + (k - 1) * w + k * (w - 1)
    return make_cone(gt_ambient(k, n), covs)


def cone_from_tropical(W: LaurentPoly, star_label: str) -> Cone:
    """One covector per monomial of W: the q-exponent lands on the level
    coordinate, the star exponent is dropped, everything else is copied."""
    labs = sorted(x for x in W.lattice if x not in ("q", star_label))
    ambient = ("r",) + tuple(labs)
    covs = []
    for exp, _coeff in W.terms:
        m = dict(zip(W.lattice, exp))
        cov = {lab: m.get(lab, 0) for lab in labs}
        cov["r"] = m.get("q", 0)
        covs.append(cov)
    return make_cone(ambient, covs)


# ------------------------------------------------- lattice-point counting


def _eliminate(system, var_ix):
    """One Fourier-Motzkin step; entries are (const, coeffs) with
    const + <coeffs, x> >= 0."""
    keep, pos, neg = [], [], []
    for const, coeffs in system:
        c = coeffs[var_ix]
        if c == 0:
            keep.append((const, coeffs))
        elif c > 0:
            pos.append((const, coeffs))
        else:
            neg.append((const, coeffs))
    out = set()
    for const, coeffs in keep:
        canon = _canonical_covector((const,) + coeffs)
        if canon is not None:
            out.add(canon)
    for pc, pv in pos:
        for nc, nv in neg:
            a, b = pv[var_ix], -nv[var_ix]
            const = b * pc + a * nc
            coeffs = tuple(b * x + a * y for x, y in zip(pv, nv))
            canon = _canonical_covector((const,) + coeffs)
            if canon is not None:
                out.add(canon)
            elif const < 0:
                return None  # 0 >= positive constant: infeasible
    cleaned = []
    for row in out:
        const, coeffs = row[0], row[1:]
        if not any(coeffs):
            if const < 0:
                return None
            continue
        cleaned.append((const, coeffs))
    return cleaned


def lattice_points(c: Cone, r: int) -> list[dict[str, int]]:
    """All integer points of the level-r slice, by exact projection.

    Variables are eliminated one by one (Fourier-Motzkin); the chain of
    projections then drives an exact, backtracking-free enumeration.  If
    some projection leaves a coordinate without an upper or lower bound
    the slice is unbounded and an error is raised.
    """
    vars_ = list(c.ambient[1:])
    nv = len(vars_)
    base = []
    for cov in c.ineqs:
        base.append((cov[0] * r, tuple(cov[1:])))
    systems = [base]  # systems[d] involves vars_[: nv-d]
    for d in range(nv - 1, 0, -1):
        nxt = _eliminate(systems[-1], d)
        if nxt is None:
            return []
        systems.append(nxt)
    systems.reverse()  # systems[i] constrains vars_[: i+1]

    points: list[dict[str, int]] = []
    assignment = [0] * nv

    def feasible_range(depth):
        lo, hi = None, None
        for const, coeffs in systems[depth]:
            a = coeffs[depth]
            if a == 0:
                continue
            partial = const + sum(
                coeffs[i] * assignment[i] for i in range(depth) if coeffs[i]
            )
            if a > 0:
                # a*x >= -partial  ->  x >= ceil(-partial / a)
                bound = -(partial // a)
                lo = bound if lo is None else max(lo, bound)
            else:
                # a*x >= -partial with a < 0  ->  x <= floor(partial / -a)
                bound = partial // (-a)
                hi = bound if hi is None else min(hi, bound)
        return lo, hi

    def rec(depth):
        if depth == nv:
            points.append(dict(zip(vars_, assignment)))
            return
        lo, hi = feasible_range(depth)
        if lo is None or hi is None:
            raise Unbounded(f"coordinate {vars_[depth]} unbounded at level {r}")
        for val in range(lo, hi + 1):
            assignment[depth] = val
            rec(depth + 1)

    rec(0)
    return points


def weyl_dim(k: int, n: int, r: int) -> int:
    """Hook-content product for the dimension of the degree-r piece."""
    if r < 0:
        raise ValueError("level must be nonnegative")
    total = Fraction(1)
    for i in range(1, k + 1):
        for j in range(1, n - k + 1):
            total *= Fraction(r + i + j - 1, i + j - 1)
    if total.denominator != 1:
        raise ArithmeticError(f"hook-content product not integral: {total}")
    return int(total)


# ------------------------------------------------------- GT decomposition


@dataclass
class GTPattern:
    k: int
    n: int
    r: int
    v: dict[str, int]  # grid label -> value


@lru_cache(maxsize=None)
def kappa_table(k: int, n: int):
    """Map from level-1 point (sorted tuple of grid coordinates) to I."""
    s = rectangles_seed(k, n)
    star = s.quiver.star
    table = {}
    for I in ksubsets(n, k):
        kv = kappa_vector(s, I)
        key = tuple(sorted((lab, c) for lab, c in kv.items() if lab != star))
        table[key] = I
    return table


def gt_decompose(pat: GTPattern) -> list[KSubset]:
    """Write a level-r pattern as a sum of r level-1 kappa points.

    The increments u_ts = v_ts - v_(t-1)(s-1) are peeled by their support:
    the 0/1 indicator grid, re-accumulated along diagonals, is the kappa
    point of some k-subset, which is subtracted off; r steps exhaust v.
    """
    k, n, r = pat.k, pat.n, pat.r
    cone = gt_inequalities(k, n)
    if r < 0 or not cone_contains(cone, {**pat.v, "r": r}):
        raise ValueError("point is not in the Gelfand-Tsetlin cone at this level")
    table = kappa_table(k, n)
    w = n - k

    def vval(v, t, s):
        return v[grid_label(k, n, t, s)] if t >= 1 and s >= 1 else 0

    out: list[KSubset] = []
    cur = dict(pat.v)
    for _step in range(r):
        peel = {}
        for t in range(1, k + 1):
            for s in range(1, w + 1):
                u = vval(cur, t, s) - vval(cur, t - 1, s - 1)
                peel[(t, s)] = 1 if u > 0 else 0
        point = {}
        for t in range(1, k + 1):
            for s in range(1, w + 1):
                tt, ss, tot = t, s, 0
                while tt >= 1 and ss >= 1:
                    tot += peel[(tt, ss)]
                    tt, ss = tt - 1, ss - 1
                point[grid_label(k, n, t, s)] = tot
        key = tuple(sorted(point.items()))
        if key not in table:
            raise ValueError(f"peeled layer is not a level-1 point: {point}")
        out.append(table[key])
        cur = {lab: cur[lab] - point[lab] for lab in cur}
    if any(cur.values()):
        raise ValueError(f"residue after {r} layers: {cur}")
    return out


# ------------------------------------------------- level-1 NO point sets


def no_body_level1(s: Seed) -> list[dict[str, int]]:
    """Kappa vectors of all k-subsets, star coordinate dropped."""
    star = s.quiver.star
    out = []
    for I in ksubsets(s.n, s.k):
        kv = kappa_vector(s, I)
        out.append({lab: c for lab, c in kv.items() if lab != star})
    return out


def body_membership_check(points, cone: Cone) -> bool:
    """Every point lies in the level-1 slice of the cone."""
    return all(cone_contains(cone, {**p, "r": 1}) for p in points)


def trop_mutate_points(q: Quiver, j: str, pts) -> list[dict[str, int]]:
    """Tropical mutation applied to each point (star coordinate fixed 0)."""
    out = []
    for p in pts:
        full = dict(p)
        full.setdefault(q.star, 0)
        moved = trop_a_mutate(q, j, full)
        if moved[q.star] != 0:
            raise ValueError("mutation moved the star coordinate")
        out.append({lab: c for lab, c in moved.items() if lab != q.star})
    return out


def _affine_rank(points) -> int:
    """Dimension of the affine span plus one (number of affinely
    independent points), computed exactly."""
    if not points:
        return 0
    labs = sorted(points[0])
    base = points[0]
    rows = [
        [Fraction(p[lab] - base[lab]) for lab in labs] for p in points[1:]
    ]
    rank = 0
    ncols = len(labs)
    col = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / pr[col]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        rank += 1
    return rank + 1


def level1_slice_check(points, cone: Cone) -> bool:
    """Dual containment between a point set and the level-1 slice.

    Every point must satisfy every inequality, and every inequality must be
    tight on enough affinely independent points to cut out a facet of the
    convex hull; together these certify the hull equals the slice.
    """
    if not body_membership_check(points, cone):
        return False
    dim = len(cone.ambient) - 1
    for cov in cone.ineqs:
        tight = []
        for p in points:
            tot = cov[0]
            for lab, a in zip(cone.ambient[1:], cov[1:]):
                tot += a * p.get(lab, 0)
            if tot == 0:
                tight.append(p)
        if _affine_rank(tight) < dim:
            return False
    return True
