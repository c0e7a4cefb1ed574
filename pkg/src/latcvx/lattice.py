"""Rational lattices: duals, primitivity, point enumeration inside polytopes,
the first successive minimum with its full minimizer set, and Voronoi cells.

A lattice is an invertible rational basis matrix (columns are the basis
vectors) plus an optional coordinate Gram matrix.  The Gram matrix is how
lattices without a rational Euclidean embedding (A_d*, say) stay exactly
representable: all norm computations happen in coordinates through it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .kernel import (
    PreconditionError,
    class_rep,
    mat_identity,
    mat_inverse,
    mat_mul,
    mat_transpose,
    mat_vec,
    vdot,
    vneg,
    vscale,
    vsub,
)
from .polytope import Polytope, from_inequalities, scale as scale_polytope


def ldlt(gram):
    """Exact LDL^T factorization; raises PreconditionError unless the matrix
    is symmetric positive definite.  Returns (L, diag)."""
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise PreconditionError("gram matrix is not symmetric")
    lower = [[Fraction(0)] * n for _ in range(n)]
    diag = [Fraction(0)] * n
    for j in range(n):
        s = g[j][j] - sum(diag[k] * lower[j][k] ** 2 for k in range(j))
        if s <= 0:
            raise PreconditionError("gram matrix is not positive definite")
        diag[j] = s
        lower[j][j] = Fraction(1)
        for i in range(j + 1, n):
            t = g[i][j] - sum(diag[k] * lower[i][k] * lower[j][k] for k in range(j))
            lower[i][j] = t / s
    return tuple(tuple(row) for row in lower), tuple(diag)


class Lattice:
    """Full-rank rational lattice. basis columns are the basis vectors."""

    __slots__ = ("dim", "basis", "inv_basis", "gram", "has_custom_gram", "_form")

    def __init__(self, basis, gram=None):
        self.basis = tuple(tuple(Fraction(x) for x in row) for row in basis)
        self.dim = len(self.basis)
        if any(len(row) != self.dim for row in self.basis):
            raise PreconditionError("basis must be square")
        self.inv_basis = mat_inverse(self.basis)  # raises if singular
        self.has_custom_gram = gram is not None
        if gram is None:
            bt = mat_transpose(self.basis)
            self.gram = mat_mul(bt, self.basis)
        else:
            self.gram = tuple(tuple(Fraction(x) for x in row) for row in gram)
            ldlt(self.gram)  # validates symmetric positive definite
        self._form = None

    @classmethod
    def standard(cls, dim):
        return cls(mat_identity(dim))

    def ambient_form(self):
        """Matrix Q of the inner product <x,y> = x.Q.y carried by the ambient
        coordinates; the identity unless a custom Gram form is set."""
        if not self.has_custom_gram:
            return mat_identity(self.dim)
        if self._form is None:
            bt = mat_transpose(self.inv_basis)
            self._form = mat_mul(mat_mul(bt, self.gram), self.inv_basis)
        return self._form

    def coords(self, v):
        """Coordinates of an ambient vector in this basis."""
        return mat_vec(self.inv_basis, v)

    def from_coords(self, z):
        return mat_vec(self.basis, z)

    def contains(self, v) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.coords(v))

    def det(self):
        """Covolume in embedding coordinates: |det basis|."""
        from .kernel import mat_det

        return abs(mat_det(self.basis))

    def norm2(self, z):
        """Squared length of the lattice vector with coordinates z, under the
        coordinate Gram form."""
        return vdot(z, mat_vec(self.gram, z))

    def __eq__(self, other):
        return (isinstance(other, Lattice) and self.basis == other.basis
                and self.gram == other.gram)

    def __hash__(self):
        return hash((self.basis, self.gram))

    def __repr__(self):
        return f"Lattice(dim={self.dim})"


def dual_lattice(lat: Lattice) -> Lattice:
    """Dual lattice.  With the default Gram form this is the classical
    inverse-transpose basis; with a custom Gram form the pairing runs through
    the form, giving basis B.G^-1 and dual Gram G^-1, so that double duality
    is exact and the Voronoi duality statements survive in coordinates."""
    ginv = mat_inverse(lat.gram)
    basis = mat_mul(lat.basis, ginv)
    return Lattice(basis, gram=ginv if lat.has_custom_gram else None)


def is_primitive(v, lat: Lattice) -> bool:
    return primitive_part(v, lat) == tuple(Fraction(x) for x in v)


def primitive_part(v, lat: Lattice):
    """v / gcd of its basis coordinates; v must be a nonzero lattice vector."""
    z = lat.coords(v)
    if all(x == 0 for x in z):
        raise PreconditionError("zero vector")
    ints = []
    for x in z:
        f = Fraction(x)
        if f.denominator != 1:
            raise PreconditionError("not a lattice vector")
        ints.append(f.numerator)
    g = math.gcd(*(abs(a) for a in ints))
    return tuple(Fraction(x, g) for x in v)


def lattice_length(a, b, lat: Lattice):
    """Lattice-normalized length of the segment [a, b]: |b-a| divided by the
    length of the primitive lattice vector generating its direction."""
    u = vsub(b, a)
    if all(x == 0 for x in u):
        raise PreconditionError("not a lattice direction")
    z = [Fraction(x) for x in lat.coords(u)]
    mult = math.lcm(*(x.denominator for x in z))
    ints = [x.numerator * (mult // x.denominator) for x in z]
    g = math.gcd(*(abs(i) for i in ints))
    # u = (g / mult) * primitive lattice vector, so Vol_1 = g / mult
    return Fraction(g, mult)


# ---------------------------------------------------------------------------
# lattice point enumeration


def _integer_points_in_coords(z_vertices, z_facets):
    """Integer points z with n.z <= c for all z_facets; exact depth-first
    scan over per-coordinate ranges with interval pruning."""
    d = len(z_vertices[0])
    lo = [min(v[i] for v in z_vertices) for i in range(d)]
    hi = [max(v[i] for v in z_vertices) for i in range(d)]
    ilo = [math.ceil(x) for x in lo]
    ihi = [math.floor(x) for x in hi]
    if any(a > b for a, b in zip(ilo, ihi)):
        return []
    # per facet, per depth: smallest achievable contribution of coords >= depth
    minrest = []
    for n, c in z_facets:
        rest = [Fraction(0)] * (d + 1)
        for i in range(d - 1, -1, -1):
            contrib = min(n[i] * ilo[i], n[i] * ihi[i])
            rest[i] = rest[i + 1] + contrib
        minrest.append(rest)

    out = []
    z = [0] * d

    def scan(depth, sums):
        if depth == d:
            if all(s <= c for s, (_, c) in zip(sums, z_facets)):
                out.append(tuple(z))
            return
        a, b = ilo[depth], ihi[depth]
        for (n, c), s, rest in zip(z_facets, sums, minrest):
            coef = n[depth]
            if coef == 0:
                continue
            bound = c - s - rest[depth + 1]
            if coef > 0:
                b = min(b, math.floor(Fraction(bound) / coef))
            else:
                a = max(a, math.ceil(Fraction(bound) / coef))
        for val in range(a, b + 1):
            z[depth] = val
            scan(depth + 1, [s + n[depth] * val for (n, _), s in zip(z_facets, sums)])

    scan(0, [Fraction(0)] * len(z_facets))
    return out


def enumerate_lattice_points(p: Polytope, lat: Lattice, mode="closure"):
    """All lattice points in p (closure) or int p (interior), lex-sorted in
    ambient coordinates."""
    if mode not in ("closure", "interior"):
        raise PreconditionError(f"bad mode {mode!r}")
    bt = mat_transpose(lat.basis)
    z_facets = [(mat_vec(bt, n), c) for n, c in p.facets]
    z_vertices = [lat.coords(v) for v in p.vertices]
    pts = _integer_points_in_coords(z_vertices, z_facets)
    if mode == "interior":
        pts = [z for z in pts if all(vdot(n, z) < c for n, c in z_facets)]
    return sorted(lat.from_coords(z) for z in pts)


@dataclass(frozen=True)
class MinimumResult:
    """First successive minimum and all minimizers, one per +- pair (the
    lex-larger representative), lex-sorted."""

    value: Fraction
    minimizers: tuple


def first_minimum(k: Polytope, lat: Lattice) -> MinimumResult:
    """lambda_1(K; L) for an origin-symmetric K with 0 interior, together
    with every minimizing lattice vector up to sign."""
    if any(c <= 0 for _, c in k.facets):
        raise PreconditionError("origin must be interior to K")
    if not k.is_origin_symmetric():
        raise PreconditionError("K must be origin-symmetric")
    upper = min(k.gauge(mat_vec(lat.basis, col)) for col in mat_identity(lat.dim))
    candidates = enumerate_lattice_points(scale_polytope(k, upper), lat)
    best = None
    mins = []
    for v in candidates:
        if all(x == 0 for x in v):
            continue
        g = k.gauge(v)
        if best is None or g < best:
            best = g
            mins = [v]
        elif g == best:
            mins.append(v)
    assert best is not None and best > 0
    reps = sorted(set(class_rep(v) for v in mins))
    return MinimumResult(best, tuple(reps))


# ---------------------------------------------------------------------------
# Voronoi cells


def _quadratic_range(t, d_i, budget):
    """Integers k with d_i * (k - t)^2 <= budget, exactly."""
    if budget < 0:
        return range(0)
    r2 = Fraction(budget) / d_i
    tf = float(t)
    rf = math.sqrt(float(r2)) if r2 > 0 else 0.0
    lo = math.floor(tf - rf) - 2
    hi = math.ceil(tf + rf) + 2
    ks = [k for k in range(lo, hi + 1) if d_i * (k - t) ** 2 <= budget]
    return ks


def _enum_quadratic(lower, diag, center, radius2):
    """Integer points z with (z - center)^T G (z - center) <= radius2, where
    G = L D L^T; Fincke-Pohst recursion from the last coordinate down."""
    n = len(diag)
    out = []
    z = [0] * n

    def rec(i, budget):
        if i < 0:
            out.append(tuple(z))
            return
        # offset s_i = sum_{j>i} L[j][i] * (z_j - center_j)
        s = sum(lower[j][i] * (z[j] - center[j]) for j in range(i + 1, n))
        t = center[i] - s
        for k in _quadratic_range(t, diag[i], budget):
            z[i] = k
            rec(i - 1, budget - diag[i] * (k - t) ** 2)

    rec(n - 1, Fraction(radius2))
    return out


def voronoi_relevant(lat: Lattice):
    """All strictly Voronoi-relevant lattice vectors (both signs), in ambient
    coordinates: v is relevant iff +-v are the unique norm minimizers of the
    nonzero coset v + 2L."""
    lower, diag = ldlt(lat.gram)
    d = lat.dim
    relevant = []
    for mask in range(1, 1 << d):
        c = tuple(mask >> i & 1 for i in range(d))
        bound = lat.norm2(c)
        center = tuple(Fraction(-ci, 2) for ci in c)
        ws = _enum_quadratic(lower, diag, center, Fraction(bound, 4))
        members = [tuple(ci + 2 * wi for ci, wi in zip(c, ws_i)) for ws_i in ws]
        norms = [lat.norm2(z) for z in members]
        mn = min(norms)
        argmin = sorted(z for z, q in zip(members, norms) if q == mn)
        if len(argmin) == 2 and argmin[0] == vneg(argmin[1]):
            relevant.extend(argmin)
    return sorted(lat.from_coords(z) for z in relevant)


def voronoi_cell(lat: Lattice) -> Polytope:
    """The Voronoi cell {x : <v,x> <= |v|^2/2 for all lattice v}, built from
    the relevant vectors; facet count equals the number of relevant vectors."""
    lower, diag = ldlt(lat.gram)
    relevant = voronoi_relevant(lat)
    binv_t = mat_transpose(lat.inv_basis)
    ineqs = []
    for v in relevant:
        z = lat.coords(v)
        normal = mat_vec(binv_t, mat_vec(lat.gram, z))
        ineqs.append((normal, Fraction(lat.norm2(z), 2)))
    cell = from_inequalities(ineqs)
    if len(cell.facets) != len(relevant):
        raise PreconditionError("voronoi cell facet count mismatch")
    return cell
