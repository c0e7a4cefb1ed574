"""Command-line front end.

Exit codes: 0 success (and all requested verdicts true), 1 a requested
verdict is false, 2 input/parse failure, 3 precondition violation.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .kernel import (
    InputError,
    LatcvxError,
    PreconditionError,
    format_rational,
    parse_rational,
)
from .lattice import Lattice, voronoi_cell
from .polytope import Polytope
from .functionals import (
    diameter,
    is_complete,
    is_reduced,
    reduce_polytope,
    width,
)
from .constructions import (
    classify_triangle,
    free_sum,
    gallery,
    gallery_names,
    join,
    lift,
    product,
)
from . import jsonio

log = logging.getLogger("latcvx")


def _parse_params(text):
    if not text:
        return ()
    return tuple(parse_rational(tok) for tok in text.split(","))


def _load_instance(args):
    """Resolve (polytope, lattice) from --gallery or -p plus --lattice."""
    if getattr(args, "gallery", None):
        entry = gallery(args.gallery, *_parse_params(getattr(args, "param", None)))
        poly, lat = entry.polytope, entry.lattice
    elif getattr(args, "polytope", None):
        obj = jsonio.load_json(args.polytope)
        if isinstance(obj, dict) and "polytope" in obj:
            poly = jsonio.obj_to_polytope(obj["polytope"])
            lat = jsonio.obj_to_lattice(obj["lattice"]) if "lattice" in obj else None
        else:
            poly = jsonio.obj_to_polytope(obj)
            lat = None
    else:
        raise InputError("need --gallery NAME or -p FILE")
    if getattr(args, "lattice", None):
        lat = jsonio.obj_to_lattice(jsonio.load_json(args.lattice))
    if lat is None:
        lat = Lattice.standard(poly.dim)
    if lat.dim != poly.dim:
        raise PreconditionError("lattice and polytope dimensions differ")
    return poly, lat


def _emit(obj, args):
    text = jsonio.dump_json(obj, getattr(args, "output", None))
    if getattr(args, "output", None) is None:
        sys.stdout.write(text)


def _add_instance_args(sp, with_lattice=True):
    sp.add_argument("-p", "--polytope", help="polytope or bundle JSON file")
    sp.add_argument("--gallery", help="gallery entry name")
    sp.add_argument("--param", help="comma-separated rational parameters")
    if with_lattice:
        sp.add_argument("--lattice", help="lattice JSON file (default: Z^d)")


def _load_factor(path):
    obj = jsonio.load_json(path)
    if isinstance(obj, dict) and "polytope" in obj:
        poly = jsonio.obj_to_polytope(obj["polytope"])
        lat = (jsonio.obj_to_lattice(obj["lattice"])
               if "lattice" in obj else Lattice.standard(poly.dim))
    else:
        poly = jsonio.obj_to_polytope(obj)
        lat = Lattice.standard(poly.dim)
    return poly, lat


def cmd_width(args):
    poly, lat = _load_instance(args)
    fr = width(poly, lat)
    log.info("width %s over %d directions", format_rational(fr.value), len(fr.directions))
    _emit(jsonio.functional_result_to_obj(fr, args.decimal), args)
    return 0


def cmd_diameter(args):
    poly, lat = _load_instance(args)
    fr = diameter(poly, lat)
    log.info("diameter %s over %d directions", format_rational(fr.value), len(fr.directions))
    _emit(jsonio.functional_result_to_obj(fr, args.decimal), args)
    return 0


def _check_one(poly, lat, args):
    report = {}
    ok = True
    if args.reduced:
        cert = is_reduced(poly, lat)
        report["reduced"] = jsonio.reduced_certificate_to_obj(poly, cert)
        ok = ok and cert.verdict
    if args.complete:
        cert = is_complete(poly, lat)
        report["complete"] = jsonio.complete_certificate_to_obj(poly, cert)
        ok = ok and cert.verdict
    return report, ok


def cmd_check(args):
    if not args.reduced and not args.complete:
        raise InputError("nothing to check: pass --reduced and/or --complete")
    params = args.param if args.param else [None]
    if args.gallery and len(params) > 1:
        jobs = []
        for ptext in params:
            entry = gallery(args.gallery, *_parse_params(ptext))
            jobs.append((ptext, entry.polytope, entry.lattice))
        results = [None] * len(jobs)
        workers = max(1, args.jobs)
        if workers > 1:
            from multiprocessing.dummy import Pool

            with Pool(workers) as pool:
                results = pool.map(lambda job: _check_one(job[1], job[2], args), jobs)
        else:
            results = [_check_one(p, l, args) for _, p, l in jobs]
        ok = all(r[1] for r in results)
        _emit([{"param": jobs[i][0], **results[i][0]} for i in range(len(jobs))], args)
        return 0 if ok else 1
    if args.gallery:
        entry = gallery(args.gallery, *_parse_params(params[0]))
        poly, lat = entry.polytope, entry.lattice
        if args.lattice:
            lat = jsonio.obj_to_lattice(jsonio.load_json(args.lattice))
    else:
        ns = argparse.Namespace(**vars(args))
        ns.param = None
        poly, lat = _load_instance(ns)
    report, ok = _check_one(poly, lat, args)
    _emit(report, args)
    return 0 if ok else 1


def cmd_reduce(args):
    poly, lat = _load_instance(args)
    out = reduce_polytope(poly, lat)
    _emit(jsonio.bundle_to_obj(out, lat), args)
    return 0


def cmd_construct(args):
    pa, la = _load_factor(args.factor_a)
    if args.kind == "lift":
        out, lat = lift(pa, la)
    else:
        if not args.factor_b:
            raise InputError(f"construct {args.kind} needs -b FILE")
        pb, lb = _load_factor(args.factor_b)
        if args.kind == "product":
            out, lat = product(pa, la, pb, lb)
        elif args.kind == "free-sum":
            out, lat = free_sum(pa, la, pb, lb)
        else:
            if args.height is None:
                raise InputError("construct join needs --height")
            out, lat = join(pa, la, pb, lb, parse_rational(args.height))
    _emit(jsonio.bundle_to_obj(out, lat), args)
    return 0


def cmd_classify_triangle(args):
    poly, lat = _load_instance(args)
    tc = classify_triangle(poly, lat)
    obj = {"reduced": tc.reduced, "complete": tc.complete}
    if tc.canonical_params is not None:
        obj["canonical_params"] = [format_rational(x) for x in tc.canonical_params]
        mat, shift, dil = tc.normalizing_map
        obj["normalizing_map"] = {
            "matrix": [[format_rational(x) for x in row] for row in mat],
            "translation": [format_rational(x) for x in shift],
            "dilation": format_rational(dil),
        }
    _emit(obj, args)
    return 0


def cmd_voronoi(args):
    if args.gram:
        gram = [tuple(parse_rational(x) for x in row)
                for row in jsonio.load_json(args.gram)]
        from .kernel import mat_identity

        lat = Lattice(mat_identity(len(gram)), gram=gram)
    elif args.lattice:
        lat = jsonio.obj_to_lattice(jsonio.load_json(args.lattice))
    elif args.dim:
        lat = Lattice.standard(args.dim)
    else:
        raise InputError("voronoi needs --gram, --lattice, or --dim")
    cell = voronoi_cell(lat)
    _emit(jsonio.bundle_to_obj(cell, lat), args)
    return 0


def cmd_gallery(args):
    if args.action == "list":
        _emit([{"name": k, "params": v} for k, v in sorted(gallery_names().items())], args)
        return 0
    entry = gallery(args.name, *_parse_params(args.param))
    obj = {
        "name": entry.name,
        "params": [format_rational(x) for x in entry.params],
        **jsonio.bundle_to_obj(entry.polytope, entry.lattice),
        "expected": {
            k: (format_rational(v) if not isinstance(v, bool) else v)
            for k, v in sorted(entry.expected.items())
        },
    }
    _emit(obj, args)
    return 0


def cmd_render(args):
    from .render import render_svg

    poly, lat = _load_instance(args)
    cert = jsonio.load_json(args.certificate) if args.certificate else None
    window = None
    if args.window:
        parts = [parse_rational(x) for x in args.window.split(",")]
        if len(parts) != 4:
            raise InputError("window must be xmin,xmax,ymin,ymax")
        window = tuple(parts)
    svg = render_svg(poly, lat, window=window, certificate=cert)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="latcvx",
                                 description="Exact lattice width/diameter toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("width", help="lattice width with all directions")
    _add_instance_args(sp)
    sp.add_argument("-o", "--output")
    sp.add_argument("--decimal", type=int, default=None)
    sp.set_defaults(func=cmd_width)

    sp = sub.add_parser("diameter", help="lattice diameter with all directions")
    _add_instance_args(sp)
    sp.add_argument("-o", "--output")
    sp.add_argument("--decimal", type=int, default=None)
    sp.set_defaults(func=cmd_diameter)

    sp = sub.add_parser("check", help="certify reducedness/completeness")
    sp.add_argument("-p", "--polytope")
    sp.add_argument("--gallery")
    sp.add_argument("--param", action="append")
    sp.add_argument("--lattice")
    sp.add_argument("--reduced", action="store_true")
    sp.add_argument("--complete", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("reduce", help="reduced polytope of equal width inside the input")
    _add_instance_args(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("construct", help="product | free-sum | join | lift")
    sp.add_argument("kind", choices=["product", "free-sum", "join", "lift"])
    sp.add_argument("-a", "--factor-a", required=True)
    sp.add_argument("-b", "--factor-b")
    sp.add_argument("--height")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("classify-triangle", help="canonical corner form of a triangle")
    _add_instance_args(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_classify_triangle)

    sp = sub.add_parser("voronoi", help="Voronoi cell of a lattice")
    sp.add_argument("--gram", help="JSON file with a Gram matrix")
    sp.add_argument("--lattice", help="lattice JSON file")
    sp.add_argument("--dim", type=int, help="standard lattice dimension")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_voronoi)

    sp = sub.add_parser("gallery", help="list or export catalog entries")
    sp.add_argument("action", choices=["list", "get"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("--param")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gallery)

    sp = sub.add_parser("render", help="SVG picture of a 2D instance")
    _add_instance_args(sp)
    sp.add_argument("--certificate", help="certificate JSON to overlay")
    sp.add_argument("--window", help="xmin,xmax,ymin,ymax")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    level = os.environ.get("LATCVX_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except LatcvxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
