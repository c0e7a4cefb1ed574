"""JSON serialization: polytopes, lattices, functional results, certificates.

Rationals travel as strings "p/q" (or "p"); polytope input carries exactly
one of "vertices" / "inequalities", output carries both.
"""

from __future__ import annotations

import json

from .kernel import InputError, format_rational, parse_rational
from .lattice import Lattice
from .polytope import Polytope, from_inequalities, hull
from .functionals import (
    CompleteCertificate,
    FunctionalResult,
    ReducedCertificate,
)


def _vec_obj(v):
    return [format_rational(x) for x in v]


def _parse_vec(obj):
    if not isinstance(obj, list) or not obj:
        raise InputError("expected a nonempty list for a vector")
    return tuple(parse_rational(x) for x in obj)


def polytope_to_obj(p: Polytope) -> dict:
    return {
        "dim": p.dim,
        "vertices": [_vec_obj(v) for v in p.vertices],
        "inequalities": [
            {"normal": _vec_obj(n), "offset": format_rational(c)} for n, c in p.facets
        ],
    }


def obj_to_polytope(obj) -> Polytope:
    if not isinstance(obj, dict) or "dim" not in obj:
        raise InputError("polytope object needs a 'dim' key")
    has_v = "vertices" in obj
    has_h = "inequalities" in obj
    if has_v == has_h:
        raise InputError("polytope input needs exactly one of 'vertices'/'inequalities'")
    dim = obj["dim"]
    if has_v:
        pts = [_parse_vec(v) for v in obj["vertices"]]
        if any(len(v) != dim for v in pts):
            raise InputError("vertex dimension disagrees with 'dim'")
        return hull(pts)
    ineqs = []
    for item in obj["inequalities"]:
        n = _parse_vec(item["normal"])
        if len(n) != dim:
            raise InputError("normal dimension disagrees with 'dim'")
        ineqs.append((n, parse_rational(item["offset"])))
    return from_inequalities(ineqs)


def lattice_to_obj(lat: Lattice) -> dict:
    obj = {"basis": [[format_rational(x) for x in row] for row in lat.basis]}
    if lat.has_custom_gram:
        obj["gram"] = [[format_rational(x) for x in row] for row in lat.gram]
    return obj


def obj_to_lattice(obj) -> Lattice:
    if not isinstance(obj, dict) or "basis" not in obj:
        raise InputError("lattice object needs a 'basis' key")
    basis = obj["basis"]
    if basis == "identity":
        if "dim" not in obj:
            raise InputError("identity basis needs a 'dim' key")
        from .kernel import mat_identity

        basis_rows = mat_identity(obj["dim"])
    else:
        basis_rows = tuple(_parse_vec(row) for row in basis)
    gram = obj.get("gram")
    if gram is not None:
        gram = tuple(_parse_vec(row) for row in gram)
    return Lattice(basis_rows, gram=gram)


def functional_result_to_obj(fr: FunctionalResult, decimal: int | None = None) -> dict:
    from .kernel import format_decimal

    obj = {
        "value": format_rational(fr.value),
        "directions": [_vec_obj(d) for d in fr.directions],
        "span_dim": fr.span_dim,
    }
    if decimal is not None:
        obj["value_decimal"] = format_decimal(fr.value, decimal)
    return obj


def reduced_certificate_to_obj(p: Polytope, cert: ReducedCertificate) -> dict:
    obj = {
        "kind": "reduced",
        "verdict": cert.verdict,
        "width": functional_result_to_obj(cert.width),
        "witnesses": [
            {"vertex": _vec_obj(v), "direction": _vec_obj(y)}
            for v, y in sorted(cert.selectors.items())
        ],
    }
    if cert.counter_witness is not None:
        obj["counter_witness"] = {"vertex": _vec_obj(cert.counter_witness)}
    return obj


def complete_certificate_to_obj(p: Polytope, cert: CompleteCertificate) -> dict:
    witnesses = []
    for j in sorted(cert.witnesses):
        w = cert.witnesses[j]
        n, c = p.facets[j]
        witnesses.append({
            "facet": {"normal": _vec_obj(n), "offset": format_rational(c)},
            "direction": _vec_obj(w.direction),
            "segment": [_vec_obj(w.start), _vec_obj(w.end)],
        })
    obj = {
        "kind": "complete",
        "verdict": cert.verdict,
        "diameter": functional_result_to_obj(cert.diameter),
        "witnesses": witnesses,
    }
    if cert.counter_witness is not None:
        n, c = p.facets[cert.counter_witness]
        obj["counter_witness"] = {
            "facet": {"normal": _vec_obj(n), "offset": format_rational(c)}
        }
    return obj


def bundle_to_obj(p: Polytope, lat: Lattice) -> dict:
    return {"polytope": polytope_to_obj(p), "lattice": lattice_to_obj(lat)}


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def dump_json(obj, path=None):
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if path is None:
        return text
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
