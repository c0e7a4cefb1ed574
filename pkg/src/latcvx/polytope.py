"""Full-dimensional rational polytopes with simultaneous V- and H-descriptions.

Conversion between the two descriptions runs an incremental cutting engine:
the region starts as a bounding box (obtained from exact LP bounds) and each
inequality slices the current vertex set, with new vertices generated on the
edges it crosses.  Convex hulls are computed by polarizing around the
centroid and running the same engine.  Everything is exact.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from itertools import combinations

from .kernel import (
    DegenerateError,
    EmptyRegionError,
    PreconditionError,
    SingularMatrixError,
    UnboundedRegionError,
    lp_maximize,
    mat_inverse,
    mat_rank,
    mat_transpose,
    mat_vec,
    OPTIMAL,
    UNBOUNDED,
    primitive_integer_vector,
    vadd,
    vdot,
    vneg,
    vscale,
    vsub,
)


def canonical_facet(normal, offset):
    """Scale (normal, offset) by a positive rational so the normal becomes a
    content-1 integer vector.  The inequality direction fixes the sign."""
    prim, factor = primitive_integer_vector(normal)
    return prim, Fraction(offset) * factor


def affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    return mat_rank([vsub(p, base) for p in points[1:]])


class Polytope:
    """Immutable full-dimensional rational polytope.

    vertices are lex-sorted; facets are (primitive integer normal, rational
    offset) pairs meaning normal.x <= offset, lex-sorted; incidence[i] is a
    bitmask over facet indices active at vertex i.
    """

    __slots__ = ("dim", "vertices", "facets", "incidence")

    def __init__(self, dim, vertices, facets, validate=True):
        self.dim = dim
        self.vertices = tuple(sorted(tuple(v) for v in vertices))
        self.facets = tuple(sorted((tuple(n), Fraction(c)) for n, c in facets))
        self.incidence = tuple(
            sum(1 << j for j, (n, c) in enumerate(self.facets) if vdot(n, v) == c)
            for v in self.vertices
        )
        if validate:
            self._validate()

    def _validate(self):
        d = self.dim
        if d < 1 or not self.vertices or not self.facets:
            raise DegenerateError("polytope must have vertices and facets")
        for v in self.vertices:
            if len(v) != d:
                raise PreconditionError("vertex dimension mismatch")
        if affine_rank(self.vertices) != d:
            raise DegenerateError("vertex set is not full-dimensional")
        for v, mask in zip(self.vertices, self.incidence):
            for n, c in self.facets:
                if vdot(n, v) > c:
                    raise PreconditionError("vertex violates a facet inequality")
            if mask.bit_count() < d:
                raise PreconditionError("vertex lies on fewer than dim facets")
        for j in range(len(self.facets)):
            on = [v for v, mask in zip(self.vertices, self.incidence) if mask >> j & 1]
            if affine_rank(on) != d - 1:
                raise PreconditionError("facet is not spanned by its vertices")

    def __eq__(self, other):
        return (isinstance(other, Polytope)
                and self.dim == other.dim
                and self.vertices == other.vertices
                and self.facets == other.facets)

    def __hash__(self):
        return hash((self.dim, self.vertices, self.facets))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    def contains(self, point, strict=False) -> bool:
        if strict:
            return all(vdot(n, point) < c for n, c in self.facets)
        return all(vdot(n, point) <= c for n, c in self.facets)

    def support(self, y):
        """max y.x over the polytope."""
        return max(vdot(y, v) for v in self.vertices)

    def gauge(self, v):
        """Minkowski gauge; requires the origin in the interior."""
        if any(c <= 0 for _, c in self.facets):
            raise PreconditionError("gauge requires the origin in the interior")
        return max((Fraction(vdot(n, v)) / c for n, c in self.facets), default=Fraction(0))

    def centroid(self):
        k = len(self.vertices)
        return tuple(Fraction(sum(col), k) for col in zip(*self.vertices))

    def facet_vertices(self, j):
        return tuple(v for v, mask in zip(self.vertices, self.incidence) if mask >> j & 1)

    def is_origin_symmetric(self) -> bool:
        vs = set(self.vertices)
        return all(vneg(v) in vs for v in vs)


# ---------------------------------------------------------------------------
# cutting engine


class _Cutter:
    """Mutable (vertices, facets, incidence-bitmask) triple under halfspace
    cuts.  Valid only while the region stays full-dimensional; collapse to a
    face or emptiness is reported through CutState."""

    def __init__(self, vertices, facets, incidence):
        self.vertices = list(vertices)
        self.facets = list(facets)
        self.incidence = list(incidence)

    def cut(self, normal, offset):
        """Returns "ok", "empty", or a list of points when the region
        degenerates to the face lying on the cutting hyperplane."""
        vals = [vdot(normal, v) for v in self.vertices]
        below = [i for i, x in enumerate(vals) if x < offset]
        on = [i for i, x in enumerate(vals) if x == offset]
        above = [i for i, x in enumerate(vals) if x > offset]
        if not above:
            if on:
                fid = len(self.facets)
                self.facets.append((tuple(normal), Fraction(offset)))
                for i in on:
                    self.incidence[i] |= 1 << fid
            return "ok"
        if not below:
            return [self.vertices[i] for i in on] if on else "empty"

        fid = len(self.facets)
        self.facets.append((tuple(normal), Fraction(offset)))
        new_vertices = []
        new_incidence = []
        for i in below:
            ai = self.incidence[i]
            vi = self.vertices[i]
            for k in above:
                common = ai & self.incidence[k]
                if common.bit_count() < self.dim_hint - 1:
                    continue
                if any(
                    (self.incidence[z] & common) == common
                    for z in range(len(self.vertices))
                    if z != i and z != k
                ):
                    continue
                vk = self.vertices[k]
                t = Fraction(offset - vals[i]) / (vals[k] - vals[i])
                new_vertices.append(vadd(vi, vscale(vsub(vk, vi), t)))
                new_incidence.append((common | 1 << fid))
        keep = below + on
        for i in on:
            self.incidence[i] |= 1 << fid
        self.vertices = [self.vertices[i] for i in keep] + new_vertices
        self.incidence = [self.incidence[i] for i in keep] + new_incidence
        return "ok"

    def finish(self, dim):
        """Drop facets not spanned by vertices, merge duplicates, and return
        canonical (vertices, facets)."""
        facet_map = {}
        for j, (n, c) in enumerate(self.facets):
            key = canonical_facet(n, c)
            on = [v for v, mask in zip(self.vertices, self.incidence) if mask >> j & 1]
            if key in facet_map:
                facet_map[key].extend(on)
            else:
                facet_map[key] = on
        facets = [key for key, on in facet_map.items()
                  if len(on) >= dim and affine_rank(on) == dim - 1]
        return self.vertices, facets


def _box_polytope(lo, hi):
    """Vertices, facets, incidence of the axis box prod([lo_i, hi_i])."""
    d = len(lo)
    facets = []
    for i in range(d):
        n = tuple(1 if j == i else 0 for j in range(d))
        facets.append((n, Fraction(hi[i])))
        facets.append((vneg(n), Fraction(-lo[i])))
    vertices = []
    incidence = []
    for mask in range(1 << d):
        v = tuple(hi[i] if mask >> i & 1 else lo[i] for i in range(d))
        inc = 0
        for i in range(d):
            inc |= 1 << (2 * i if mask >> i & 1 else 2 * i + 1)
        vertices.append(v)
        incidence.append(inc)
    return vertices, facets, incidence


def _point_list_cut(points, normal, offset):
    """Slice the hull of a point list by a halfspace; exact because the hull
    of kept points plus pairwise segment intersections equals the slice."""
    vals = [vdot(normal, p) for p in points]
    keep = [p for p, x in zip(points, vals) if x <= offset]
    cut = []
    for i, pi in enumerate(points):
        if vals[i] >= offset:
            continue
        for k, pk in enumerate(points):
            if vals[k] > offset:
                t = Fraction(offset - vals[i]) / (vals[k] - vals[i])
                cut.append(vadd(pi, vscale(vsub(pk, pi), t)))
    return sorted(set(keep + cut))


def extreme_points(points):
    """Extreme points of conv(points), by exact LP membership tests."""
    pts = sorted(set(tuple(p) for p in points))
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not others:
            out.append(p)
            continue
        k = len(others)
        eqs = []
        for coord in range(len(p)):
            eqs.append((tuple(q[coord] for q in others), p[coord]))
        eqs.append(((1,) * k, 1))
        ineqs = [(tuple(-1 if j == i else 0 for j in range(k)), 0) for i in range(k)]
        res = lp_maximize((0,) * k, ineqs, eqs)
        if res.status != OPTIMAL:
            out.append(p)
    return out


class CutResult:
    """Outcome of intersecting with extra halfspaces: a full-dimensional
    Polytope, a lower-dimensional face (vertex list), or empty."""

    __slots__ = ("kind", "polytope", "points")

    def __init__(self, kind, polytope=None, points=()):
        self.kind = kind  # "polytope" | "degenerate" | "empty"
        self.polytope = polytope
        self.points = tuple(points)

    def __repr__(self):
        if self.kind == "polytope":
            return f"CutResult(polytope={self.polytope!r})"
        return f"CutResult({self.kind}, points={len(self.points)})"


def _run_cuts(cutter, halfspaces, dim):
    """Apply halfspaces to a full-dimensional cutter; falls back to point-list
    slicing when the region collapses.  Returns a CutResult."""
    cutter.dim_hint = dim
    pending = list(halfspaces)
    for idx, (n, c) in enumerate(pending):
        res = cutter.cut(n, c)
        if res == "empty":
            return CutResult("empty")
        if isinstance(res, list):
            pts = res
            for n2, c2 in pending[idx + 1:]:
                pts = _point_list_cut(pts, n2, c2)
                if not pts:
                    return CutResult("empty")
            return CutResult("degenerate", points=extreme_points(pts))
    vertices, facets = cutter.finish(dim)
    if affine_rank(vertices) < dim:
        return CutResult("degenerate", points=extreme_points(vertices))
    return CutResult("polytope", polytope=Polytope(dim, vertices, facets))


def from_inequalities(ineqs):
    """Polytope from irredundant-or-not halfspaces normal.x <= offset.

    Raises EmptyRegionError, UnboundedRegionError, or DegenerateError when
    the region is not a full-dimensional polytope.
    """
    ineqs = [(tuple(n), Fraction(c)) for n, c in ineqs]
    if not ineqs:
        raise UnboundedRegionError("no inequalities")
    d = len(ineqs[0][0])
    lo, hi = [], []
    for i in range(d):
        obj = tuple(1 if j == i else 0 for j in range(d))
        up = lp_maximize(obj, ineqs)
        if up.status == UNBOUNDED:
            raise UnboundedRegionError("region is unbounded")
        if up.status != OPTIMAL:
            raise EmptyRegionError("region is empty")
        down = lp_maximize(vneg(obj), ineqs)
        if down.status == UNBOUNDED:
            raise UnboundedRegionError("region is unbounded")
        hi.append(up.value)
        lo.append(-down.value)
    cutter = _Cutter(*_box_polytope([x - 1 for x in lo], [x + 1 for x in hi]))
    seen = set()
    todo = []
    for n, c in ineqs:
        key = canonical_facet(n, c)
        if key not in seen:
            seen.add(key)
            todo.append(key)
    result = _run_cuts(cutter, todo, d)
    if result.kind == "empty":
        raise EmptyRegionError("region is empty")
    if result.kind == "degenerate":
        raise DegenerateError("region is not full-dimensional")
    return result.polytope


def hull(points):
    """Convex hull with canonical V- and H-descriptions.

    Requires the points to affinely span their ambient space; raises
    DegenerateError otherwise.
    """
    pts = sorted(set(tuple(p) for p in points))
    if not pts:
        raise PreconditionError("no points")
    d = len(pts[0])
    if affine_rank(pts) != d:
        raise DegenerateError("points do not span the ambient space")
    k = len(pts)
    c = tuple(Fraction(sum(col), k) for col in zip(*pts))
    shifted = [vsub(p, c) for p in pts]
    polar_ineqs = [(q, Fraction(1)) for q in shifted if not all(x == 0 for x in q)]
    polar_poly = from_inequalities(polar_ineqs)
    facets = [canonical_facet(w, 1 + vdot(w, c)) for w in polar_poly.vertices]
    vertices = []
    for p in pts:
        active = [n for n, off in facets if vdot(n, p) == off]
        if len(active) >= d and mat_rank(active) == d:
            vertices.append(p)
    return Polytope(d, vertices, facets)


# ---------------------------------------------------------------------------
# polytope operations


def polar(p: Polytope) -> Polytope:
    """Polar body; requires the origin strictly interior."""
    if any(c <= 0 for _, c in p.facets):
        raise PreconditionError("origin not interior")
    vertices = [vscale(n, Fraction(1, 1) / c) for n, c in p.facets]
    facets = [canonical_facet(v, 1) for v in p.vertices]
    return Polytope(p.dim, vertices, facets)


def translate(p: Polytope, t) -> Polytope:
    vertices = [vadd(v, t) for v in p.vertices]
    facets = [(n, c + vdot(n, t)) for n, c in p.facets]
    return Polytope(p.dim, vertices, facets, validate=False)


def scale(p: Polytope, s) -> Polytope:
    s = Fraction(s)
    if s == 0:
        raise PreconditionError("scale factor must be nonzero")
    vertices = [vscale(v, s) for v in p.vertices]
    if s > 0:
        facets = [(n, c * s) for n, c in p.facets]
    else:
        facets = [(vneg(n), -c * s) for n, c in p.facets]
    return Polytope(p.dim, vertices, facets, validate=False)


def transform(p: Polytope, m) -> Polytope:
    """Image under an invertible matrix: vertices M.v, normals M^-T.n."""
    try:
        minv = mat_inverse(m)
    except SingularMatrixError:
        raise PreconditionError("singular matrix") from None
    minv_t = mat_transpose(minv)
    vertices = [mat_vec(m, v) for v in p.vertices]
    facets = [canonical_facet(mat_vec(minv_t, n), c) for n, c in p.facets]
    return Polytope(p.dim, vertices, facets, validate=False)


def minkowski_sum(p: Polytope, q: Polytope) -> Polytope:
    if p.dim != q.dim:
        raise PreconditionError("dimension mismatch")
    return hull([vadd(u, w) for u in p.vertices for w in q.vertices])


@functools.lru_cache(maxsize=512)
def difference_body(p: Polytope) -> Polytope:
    """P + (-P); always origin-symmetric."""
    body = hull([vsub(u, w) for u in p.vertices for w in p.vertices])
    assert body.is_origin_symmetric()
    return body


def intersect_halfspaces(p: Polytope, extra) -> CutResult:
    """Intersect with extra halfspaces; degenerate intersections are
    first-class results carrying the vertex list of the face."""
    cutter = _Cutter(list(p.vertices), list(p.facets), list(p.incidence))
    todo = [canonical_facet(n, c) for n, c in extra]
    return _run_cuts(cutter, todo, p.dim)


def normal_cone_membership(p: Polytope, v, y) -> str:
    """Position of y relative to the normal cone of vertex v: "interior"
    iff y.v beats every other vertex strictly."""
    if all(a == 0 for a in y):
        raise PreconditionError("zero direction")
    target = vdot(y, v)
    best = max(vdot(y, w) for w in p.vertices if w != v)
    if target > best:
        return "interior"
    if target == best:
        return "boundary"
    return "outside"


def relint_point_in_face(p: Polytope, facet_index: int, region):
    """A point of `region` in the relative interior of facet `facet_index`,
    or None.

    The region may be a Polytope, a point list (its convex hull), or a pair
    (ineqs, eqs) of halfspaces and hyperplanes.  Solved as an exact LP
    maximizing the minimum slack over all other facets of p, restricted to
    the facet hyperplane; a witness exists iff the optimum slack is > 0.
    """
    fn, fc = p.facets[facet_index]
    others = [p.facets[j] for j in range(len(p.facets)) if j != facet_index]
    if isinstance(region, Polytope):
        region = (list(region.facets), [])
    if isinstance(region, tuple) and len(region) == 2:
        ineqs, eqs = region
        d = p.dim
        # variables (x, t): maximize t
        lp_ineqs = [(tuple(n) + (1,), c) for n, c in others]
        lp_ineqs += [(tuple(n) + (0,), c) for n, c in ineqs]
        lp_eqs = [(fn + (0,), fc)]
        lp_eqs += [(tuple(n) + (0,), c) for n, c in eqs]
        res = lp_maximize((0,) * d + (1,), lp_ineqs, lp_eqs)
        if res.status != OPTIMAL or res.value <= 0:
            return None
        return res.optimizer[:d]
    # point list: variables (lambda, t), x = sum(lambda_i s_i)
    pts = [tuple(q) for q in region]
    k = len(pts)
    if k == 0:
        return None
    lp_ineqs = [(tuple(vdot(n, s) for s in pts) + (1,), c) for n, c in others]
    lp_ineqs += [(tuple(-1 if j == i else 0 for j in range(k)) + (0,), 0)
                 for i in range(k)]
    lp_eqs = [(tuple(vdot(fn, s) for s in pts) + (0,), fc),
              ((1,) * k + (0,), 1)]
    res = lp_maximize((0,) * k + (1,), lp_ineqs, lp_eqs)
    if res.status != OPTIMAL or res.value <= 0:
        return None
    lam = res.optimizer[:k]
    d = p.dim
    return tuple(sum(lam[i] * pts[i][c] for i in range(k)) for c in range(d))


# ---------------------------------------------------------------------------
# volume


def _polygon_area(vertices):
    c = tuple(Fraction(sum(col), len(vertices)) for col in zip(*vertices))

    def half(p):
        v = vsub(p, c)
        return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1

    import functools as _ft

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        va, vb = vsub(a, c), vsub(b, c)
        cross = va[0] * vb[1] - va[1] * vb[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    ordered = sorted(vertices, key=_ft.cmp_to_key(cmp))
    s = Fraction(0)
    for i, a in enumerate(ordered):
        b = ordered[(i + 1) % len(ordered)]
        s += a[0] * b[1] - b[0] * a[1]
    return abs(s) / 2


def volume(p: Polytope):
    """Exact Euclidean volume.

    Dimension 2 uses the shoelace formula; higher dimensions decompose into
    pyramids over facets, with each facet projected along a coordinate axis
    (the normal component rescales the projected volume exactly, so no
    irrational quantities appear).
    """
    d = p.dim
    if d == 1:
        return p.vertices[-1][0] - p.vertices[0][0]
    if d == 2:
        return _polygon_area(p.vertices)
    v0 = p.vertices[0]
    total = Fraction(0)
    for j, (n, c) in enumerate(p.facets):
        height = c - vdot(n, v0)
        if height == 0:
            continue
        k = next(i for i, a in enumerate(n) if a != 0)
        proj = [tuple(x for i, x in enumerate(v) if i != k) for v in p.facet_vertices(j)]
        area = volume(hull(proj))
        total += Fraction(height, abs(n[k])) * area
    return total / d
