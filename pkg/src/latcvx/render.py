"""Static SVG rendering of 2-dimensional instances: the polygon, lattice
points of a window, and optional direction arrows / witness segments taken
from a certificate.  Pure view layer with deterministic byte output."""

from __future__ import annotations

from fractions import Fraction

from .kernel import PreconditionError
from .lattice import Lattice
from .polytope import Polytope

_SCALE = 48  # pixels per unit


def _fmt(x) -> str:
    return f"{float(x):.3f}"


def _project(pt, window):
    xmin, xmax, ymin, ymax = window
    px = (Fraction(pt[0]) - xmin) * _SCALE
    py = (ymax - Fraction(pt[1])) * _SCALE
    return _fmt(px), _fmt(py)


def _polygon_cycle(p: Polytope):
    verts = list(p.vertices)
    cx = Fraction(sum(v[0] for v in verts), len(verts))
    cy = Fraction(sum(v[1] for v in verts), len(verts))

    import functools

    def half(v):
        dx, dy = v[0] - cx, v[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        return -1 if cross > 0 else (1 if cross < 0 else 0)

    return sorted(verts, key=functools.cmp_to_key(cmp))


def render_svg(p: Polytope, lat: Lattice | None = None, window=None,
               certificate=None) -> str:
    """Render a 2D polytope.  `certificate` is a parsed certificate object
    (the JSON form): reduced witnesses become direction arrows at their
    vertices, complete witnesses become drawn segments."""
    if p.dim != 2:
        raise PreconditionError("wrong dimension")
    if window is None:
        window = (Fraction(-3), Fraction(3), Fraction(-3), Fraction(3))
    window = tuple(Fraction(x) for x in window)
    xmin, xmax, ymin, ymax = window
    width_px = _fmt((xmax - xmin) * _SCALE)
    height_px = _fmt((ymax - ymin) * _SCALE)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" '
        f'height="{height_px}" viewBox="0 0 {width_px} {height_px}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]

    if lat is not None:
        import math

        pts = []
        corners = [(xmin, ymin), (xmin, ymax), (xmax, ymin), (xmax, ymax)]
        zs = [lat.coords(c) for c in corners]
        los = [math.ceil(min(z[i] for z in zs)) for i in range(2)]
        his = [math.floor(max(z[i] for z in zs)) for i in range(2)]
        for z0 in range(los[0], his[0] + 1):
            for z1 in range(los[1], his[1] + 1):
                v = lat.from_coords((z0, z1))
                if xmin <= v[0] <= xmax and ymin <= v[1] <= ymax:
                    pts.append(v)
        for v in sorted(pts):
            x, y = _project(v, window)
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#444"/>')

    path = " ".join(
        ("M" if i == 0 else "L") + f"{_project(v, window)[0]},{_project(v, window)[1]}"
        for i, v in enumerate(_polygon_cycle(p))
    ) + " Z"
    out.append(f'<path d="{path}" fill="#8fb8de" fill-opacity="0.55" '
               'stroke="#1f4e79" stroke-width="2"/>')

    if certificate is not None:
        from .kernel import parse_rational

        def vec(o):
            return tuple(parse_rational(s) for s in o)

        for w in certificate.get("witnesses", []):
            if "segment" in w:
                a, b = (vec(q) for q in w["segment"])
                (x1, y1), (x2, y2) = _project(a, window), _project(b, window)
                out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                           'stroke="#b03030" stroke-width="3"/>')
                out.append(f'<circle cx="{x2}" cy="{y2}" r="4" fill="#b03030"/>')
            elif "vertex" in w and "direction" in w:
                v = vec(w["vertex"])
                d = vec(w["direction"])
                tip = (v[0] + Fraction(d[0], 2), v[1] + Fraction(d[1], 2))
                (x1, y1), (x2, y2) = _project(v, window), _project(tip, window)
                out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                           'stroke="#2e7d32" stroke-width="3"/>')
                out.append(f'<circle cx="{x2}" cy="{y2}" r="4" fill="#2e7d32"/>')

    out.append("</svg>")
    return "\n".join(out) + "\n"
