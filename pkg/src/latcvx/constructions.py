"""Named example bodies, the completeness/reducedness-preserving combinators
(product, free sum, join, normal-vector lifting), and the planar triangle
classifier.

Every combinator certifies its own output before returning it, so a
successful call is simultaneously a constructive proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .kernel import (
    CertificationError,
    PreconditionError,
    class_rep,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_rank,
    parse_rational,
    vdot,
    vneg,
    vscale,
)
from .lattice import Lattice, voronoi_cell
from .polytope import (
    Polytope,
    from_inequalities,
    hull,
    scale,
    transform,
    translate,
)
from .functionals import diameter, is_complete, is_reduced, width


def _frac(x):
    return parse_rational(x) if not isinstance(x, Fraction) else x


def block_diag(*blocks):
    size = sum(len(b) for b in blocks)
    rows = []
    offset = 0
    for b in blocks:
        for row in b:
            rows.append((0,) * offset + tuple(row) + (0,) * (size - offset - len(row)))
        offset += len(b)
    return tuple(rows)


def cartan_matrix(d):
    """Tridiagonal (2, -1) matrix of the A_d root system."""
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(d))
        for i in range(d)
    )


def ad_star_gram(d):
    """Gram matrix of the dual root lattice A_d*: the Cartan inverse."""
    return mat_inverse(cartan_matrix(d))


# ---------------------------------------------------------------------------
# gallery


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    params: tuple
    polytope: Polytope
    lattice: Lattice
    expected: dict


_CATALOG = {
    "s_d": "d >= 1: the simplex conv{-1-vector, e_1..e_d} in Z^d",
    "orth_triangle": "conv{0, e_1, e_2} in Z^2",
    "square": "[-1,1]^2 in Z^2",
    "diamond": "conv{+-e_1, +-e_2} in Z^2",
    "twisted_square": "x in (0,1): conv{+-(1,x), +-(x,-1)} in Z^2",
    "pentagon": "a reduced, not complete pentagon in Z^2",
    "hexagon": "conv{+-(2,-1), +-(-1,2), +-(1,1)} in Z^2",
    "t_xy": "x,y in [-1,1]: conv{(-1,-1),(x,1),(1,y)} in Z^2",
    "t_x": "x in [0,1): conv{(-1,-1),(x,1),(1,-x)} in Z^2",
    "delta_tetra": "a,b,c in [1/2,1), a+b+c=2: conv{0, e_i+e_j} with its symmetric lattice",
    "voronoi": "d >= 1: the Voronoi cell of Z^d",
    "permutohedron": "1 <= d <= 5: the Voronoi cell of the A_d* Gram lattice",
    "sd_minus_sd": "2 <= d <= 6: the difference body of s_d by its halfspace description",
}


def gallery_names():
    return dict(_CATALOG)


def _simplex_sd(d):
    pts = [(-1,) * d] + [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    return hull(pts)


def _sd_minus_sd_inequalities(d):
    ineqs = []
    for mask in range(1, 1 << d):
        j_size = mask.bit_count()
        hi = Fraction(d - j_size + 1, d + 1)
        lo = Fraction(-j_size, d + 1)
        n = tuple(hi if mask >> i & 1 else lo for i in range(d))
        ineqs.append((n, Fraction(1)))
        ineqs.append((vneg(n), Fraction(1)))
    return ineqs


def gallery(name, *params) -> GalleryEntry:
    """Catalog lookup; raises PreconditionError on unknown names or
    out-of-range parameters."""
    if name not in _CATALOG:
        raise PreconditionError(f"unknown name {name!r}")
    ps = tuple(_frac(x) for x in params)

    def entry(poly, lat, **expected):
        return GalleryEntry(name, ps, poly, lat, expected)

    if name == "s_d":
        (d,) = ps
        if d.denominator != 1 or not 1 <= d <= 8:
            raise PreconditionError("params out of range")
        d = int(d)
        return entry(_simplex_sd(d), Lattice.standard(d),
                     reduced=True, complete=True, width=Fraction(2),
                     diameter=Fraction(d + 1, d))
    if name == "orth_triangle":
        if ps:
            raise PreconditionError("params out of range")
        return entry(hull([(0, 0), (1, 0), (0, 1)]), Lattice.standard(2),
                     reduced=True, complete=False, width=Fraction(1))
    if name == "square":
        if ps:
            raise PreconditionError("params out of range")
        return entry(hull([(1, 1), (1, -1), (-1, 1), (-1, -1)]), Lattice.standard(2),
                     reduced=False, complete=True, width=Fraction(2),
                     diameter=Fraction(2))
    if name == "diamond":
        if ps:
            raise PreconditionError("params out of range")
        return entry(hull([(1, 0), (-1, 0), (0, 1), (0, -1)]), Lattice.standard(2),
                     reduced=True, complete=False, width=Fraction(2),
                     diameter=Fraction(2))
    if name == "twisted_square":
        (x,) = ps
        if not 0 < x < 1:
            raise PreconditionError("params out of range")
        pts = [(1, x), (x, -1), (-1, -x), (-x, 1)]
        return entry(hull(pts), Lattice.standard(2),
                     reduced=True, complete=True, width=Fraction(2))
    if name == "pentagon":
        if ps:
            raise PreconditionError("params out of range")
        pts = [(2, -1), (-2, 1), (-1, 2), (1, -2), (Fraction(3, 2), Fraction(3, 2))]
        return entry(hull(pts), Lattice.standard(2), reduced=True, complete=False)
    if name == "hexagon":
        if ps:
            raise PreconditionError("params out of range")
        pts = [(2, -1), (-2, 1), (-1, 2), (1, -2), (1, 1), (-1, -1)]
        return entry(hull(pts), Lattice.standard(2),
                     reduced=True, complete=True, width=Fraction(4),
                     diameter=Fraction(3))
    if name == "t_xy":
        x, y = ps
        if not (-1 <= x <= 1 and -1 <= y <= 1):
            raise PreconditionError("params out of range")
        expected = {"reduced": x + y <= 0, "complete": x == -y and abs(x) < 1}
        if x + y <= 0:
            expected["width"] = Fraction(2)
        return entry(hull([(-1, -1), (x, 1), (1, y)]), Lattice.standard(2), **expected)
    if name == "t_x":
        (x,) = ps
        if not 0 <= x < 1:
            raise PreconditionError("params out of range")
        return entry(hull([(-1, -1), (x, 1), (1, -x)]), Lattice.standard(2),
                     reduced=True, complete=True, width=Fraction(2))
    if name == "delta_tetra":
        a, b, c = ps
        if not (a + b + c == 2 and all(Fraction(1, 2) <= t < 1 for t in (a, b, c))):
            raise PreconditionError("params out of range")
        delta = hull([(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)])
        basis = ((-a, a, a), (b, -b, b), (c, c, -c))
        expected = {"complete": True, "diameter": Fraction(1)}
        if (a, b, c) == (Fraction(3, 4), Fraction(3, 4), Fraction(1, 2)):
            expected["reduced"] = True
        if (a, b, c) == (Fraction(13, 20), Fraction(13, 20), Fraction(7, 10)):
            expected["reduced"] = False
        return entry(delta, Lattice(basis), **expected)
    if name == "voronoi":
        (d,) = ps
        if d.denominator != 1 or not 1 <= d <= 6:
            raise PreconditionError("params out of range")
        lat = Lattice.standard(int(d))
        return entry(voronoi_cell(lat), lat, complete=True, diameter=Fraction(1))
    if name == "permutohedron":
        (d,) = ps
        if d.denominator != 1 or not 1 <= d <= 5:
            raise PreconditionError("params out of range")
        d = int(d)
        lat = Lattice(mat_identity(d), gram=ad_star_gram(d))
        return entry(voronoi_cell(lat), lat, complete=True, diameter=Fraction(1))
    if name == "sd_minus_sd":
        (d,) = ps
        if d.denominator != 1 or not 2 <= d <= 6:
            raise PreconditionError("params out of range")
        d = int(d)
        return entry(from_inequalities(_sd_minus_sd_inequalities(d)),
                     Lattice.standard(d))
    raise AssertionError


# ---------------------------------------------------------------------------
# combinators


def _block_lattice(lat_p: Lattice, lat_q: Lattice, extra=None) -> Lattice:
    blocks = [lat_p.basis, lat_q.basis]
    grams = [lat_p.gram, lat_q.gram]
    if extra is not None:
        blocks.append(((extra,),))
        grams.append(((extra * extra,),))
    basis = block_diag(*blocks)
    if lat_p.has_custom_gram or lat_q.has_custom_gram:
        return Lattice(basis, gram=block_diag(*grams))
    return Lattice(basis)


def product(p: Polytope, lat_p: Lattice, q: Polytope, lat_q: Lattice):
    """Cartesian product of complete polytopes with equal diameters; the
    output is certified complete before being returned."""
    if not is_complete(p, lat_p).verdict or not is_complete(q, lat_q).verdict:
        raise PreconditionError("input not complete")
    if diameter(p, lat_p).value != diameter(q, lat_q).value:
        raise PreconditionError("diameter mismatch")
    k, l = p.dim, q.dim
    vertices = [u + w for u in p.vertices for w in q.vertices]
    facets = [(n + (0,) * l, c) for n, c in p.facets]
    facets += [((0,) * k + n, c) for n, c in q.facets]
    out = Polytope(k + l, vertices, facets)
    lat = _block_lattice(lat_p, lat_q)
    if not is_complete(out, lat).verdict:
        raise CertificationError("product failed its completeness certificate")
    return out, lat


def _check_reduced_factor(p: Polytope, lat: Lattice):
    if any(c <= 0 for _, c in p.facets):
        raise PreconditionError("origin not interior")
    if not is_reduced(p, lat).verdict:
        raise PreconditionError("input not reduced")


def free_sum(p: Polytope, lat_p: Lattice, q: Polytope, lat_q: Lattice):
    """Free sum conv((P x 0) u (0 x Q)) of reduced polytopes with equal
    widths; certified reduced."""
    _check_reduced_factor(p, lat_p)
    _check_reduced_factor(q, lat_q)
    if width(p, lat_p).value != width(q, lat_q).value:
        raise PreconditionError("width mismatch")
    k, l = p.dim, q.dim
    pts = [u + (0,) * l for u in p.vertices] + [(0,) * k + w for w in q.vertices]
    out = hull(pts)
    lat = _block_lattice(lat_p, lat_q)
    if not is_reduced(out, lat).verdict:
        raise CertificationError("free sum failed its reducedness certificate")
    return out, lat


def join(p: Polytope, lat_p: Lattice, q: Polytope, lat_q: Lattice, h):
    """Join of height h: conv((P x 0 x 0) u (0 x Q x {h})); requires
    |h| >= width(P); certified reduced."""
    _check_reduced_factor(p, lat_p)
    _check_reduced_factor(q, lat_q)
    wp = width(p, lat_p)
    wq = width(q, lat_q)
    if wp.value != wq.value:
        raise PreconditionError("width mismatch")
    h = _frac(h)
    if abs(h) < wp.value:
        raise PreconditionError("height too small")
    k, l = p.dim, q.dim
    pts = [u + (0,) * (l + 1) for u in p.vertices]
    pts += [(0,) * k + w + (h,) for w in q.vertices]
    out = hull(pts)
    lat = _block_lattice(lat_p, lat_q, extra=Fraction(1))
    if not is_reduced(out, lat).verdict:
        raise CertificationError("join failed its reducedness certificate")
    if abs(h) > wp.value:
        wj = width(out, lat)
        if wj.span_dim != wp.span_dim + wq.span_dim:
            raise CertificationError("join width directions escaped the factors")
    return out, lat


def lift(p: Polytope, lat: Lattice):
    """Lift an origin-symmetric complete polytope with more than 2*dim facets
    one dimension up, preserving its diameter directions.

    The facet normals a_i (scaled to offset 1) gain a last coordinate that is
    zero except on one normal outside a chosen independent d-subset; the
    lattice is extended by a vector far enough along the new axis that no new
    lattice points appear in the lifted body.
    """
    if not p.is_origin_symmetric():
        raise PreconditionError("not symmetric")
    d = p.dim
    if len(p.facets) <= 2 * d:
        raise PreconditionError("too few facets")
    if not is_complete(p, lat).verdict:
        raise PreconditionError("not complete")
    reps = sorted(set(class_rep(vscale(n, Fraction(1) / c)) for n, c in p.facets))
    m = len(reps)
    if 2 * m != len(p.facets):
        raise PreconditionError("facet normals do not pair symmetrically")
    chosen = next(
        (c for c in combinations(range(m), d) if mat_rank([reps[i] for i in c]) == d)
    )
    special = max(i for i in range(m) if i not in chosen)
    ineqs = []
    for i, a in enumerate(reps):
        bar = a + (Fraction(1 if i == special else 0),)
        ineqs.append((bar, Fraction(1)))
        ineqs.append((vneg(bar), Fraction(1)))
    lifted = from_inequalities(ineqs)
    t_height = 1 + max(abs(v[d]) for v in lifted.vertices)
    basis = block_diag(lat.basis, ((t_height,),))
    if lat.has_custom_gram:
        out_lat = Lattice(basis, gram=block_diag(lat.gram, ((t_height ** 2,),)))
    else:
        out_lat = Lattice(basis)
    cert = is_complete(lifted, out_lat)
    if not cert.verdict:
        raise CertificationError("lift failed its completeness certificate")
    embedded = set(class_rep(u + (0,)) for u in diameter(p, lat).directions)
    if set(cert.diameter.directions) != embedded:
        raise CertificationError("lift changed the diameter directions")
    return lifted, out_lat


# ---------------------------------------------------------------------------
# triangle classification


@dataclass(frozen=True)
class TriangleClass:
    """Verdicts plus, for reduced triangles, canonical corner-form parameters
    (x, y) with x + y <= 0 and the normalizing map: the canonical copy is
    dilation * (matrix @ point) + translation over the input triangle."""

    reduced: bool
    complete: bool
    canonical_params: tuple | None
    normalizing_map: tuple | None


_BOX_SYMMETRIES = tuple(
    mat_mul(perm, ((sx, 0), (0, sy)))
    for perm in (((1, 0), (0, 1)), ((0, 1), (1, 0)))
    for sx in (1, -1)
    for sy in (1, -1)
)


def classify_triangle(t: Polytope, lat: Lattice) -> TriangleClass:
    """Classify a lattice triangle up to unimodular transformations,
    translations, and dilations.

    A reduced triangle is equivalent to conv{(-1,-1),(x,1),(1,y)} with
    x + y <= 0; among all such corner forms the lex-largest (x, y) is
    reported.  Completeness must then agree with the x = -y family.
    """
    if t.dim != 2 or len(t.vertices) != 3 or lat.dim != 2:
        raise PreconditionError("not a triangle")
    rc = is_reduced(t, lat)
    cc = is_complete(t, lat)
    if not rc.verdict:
        return TriangleClass(False, cc.verdict, None, None)

    t_std = transform(t, lat.inv_basis)
    w = width(t_std, Lattice.standard(2))
    cands = []
    for u in w.directions:
        cands.extend((u, vneg(u)))
    cands.sort()
    best = None
    for y1, y2 in combinations(cands, 2):
        det = y1[0] * y2[1] - y1[1] * y2[0]
        if det not in (1, -1):
            continue
        base = mat_mul(((y1[0], y1[1]), (y2[0], y2[1])), lat.inv_basis)
        for sym in _BOX_SYMMETRIES:
            mat = mat_mul(sym, base)
            dil = Fraction(2) / w.value
            image = transform(scale(t, dil), mat)
            lo = [min(v[i] for v in image.vertices) for i in range(2)]
            hi = [max(v[i] for v in image.vertices) for i in range(2)]
            if hi[0] - lo[0] != 2 or hi[1] - lo[1] != 2:
                continue
            shift = (-1 - lo[0], -1 - lo[1])
            verts = sorted(tuple(a + s for a, s in zip(v, shift))
                           for v in image.vertices)
            if (-1, -1) not in verts:
                continue
            others = [v for v in verts if v != (-1, -1)]
            for pa, pb in (others, others[::-1]):
                if pa[1] == 1 and pb[0] == 1:
                    x, yy = pa[0], pb[1]
                    if -1 <= x <= 1 and -1 <= yy <= 1 and x + yy <= 0:
                        key = (x, yy)
                        if best is None or key > best[0]:
                            best = (key, (mat, shift, dil))
    if best is None:
        raise CertificationError("reduced triangle admits no corner form")
    (x, y), nmap = best
    if cc.verdict != (x == -y and abs(x) < 1):
        raise CertificationError("completeness disagrees with the corner form")
    mat, shift, dil = nmap
    canonical = translate(transform(scale(t, dil), mat), shift)
    if canonical != hull([(-1, -1), (x, 1), (1, y)]):
        raise CertificationError("normalizing map does not reproduce the corner form")
    return TriangleClass(True, cc.verdict, (x, y), nmap)
