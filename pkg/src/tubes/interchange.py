"""Serialization of engine values to a structured text (JSON) format.

Polynomials follow the shared interchange layout: an ordered `vars` list
plus a `terms` list of records with exponent vector `e` and either a
rational coefficient `c: "p/q"` or a Gaussian one `re`/`im`. Rationals
are always decimal-digit strings, never floats. Terms are emitted in
graded-lexicographic order so serialization is canonical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping

from .fields import HoloField, VectorField
from .normal_form import GraphSurface, MapFamily
from .poly import MultiPoly, RationalFunction
from .relations import RelationContext
from .scalars import GaussianRational


def frac_to_str(x) -> str:
    return str(Fraction(x))


def gauss_to_obj(c: GaussianRational):
    if c.is_real():
        return frac_to_str(c.re)
    return {"re": frac_to_str(c.re), "im": frac_to_str(c.im)}


def gauss_from_obj(obj) -> GaussianRational:
    if isinstance(obj, str):
        return GaussianRational(Fraction(obj))
    return GaussianRational(Fraction(obj["re"]), Fraction(obj.get("im", "0")))


def poly_to_obj(p: MultiPoly) -> Dict:
    terms = []
    for exps, coeff in p.sorted_terms():
        record: Dict[str, object] = {"e": list(exps)}
        if coeff.is_real():
            record["c"] = frac_to_str(coeff.re)
        else:
            record["re"] = frac_to_str(coeff.re)
            record["im"] = frac_to_str(coeff.im)
        terms.append(record)
    return {"vars": list(p.vars), "terms": terms}


def poly_from_obj(obj: Mapping) -> MultiPoly:
    variables = tuple(obj["vars"])
    terms = {}
    for record in obj["terms"]:
        exps = tuple(record["e"])
        if "c" in record:
            coeff = GaussianRational(Fraction(record["c"]))
        else:
            coeff = GaussianRational(Fraction(record["re"]), Fraction(record.get("im", "0")))
        terms[exps] = coeff
    return MultiPoly(variables, terms)


def ratfun_to_obj(f: RationalFunction) -> Dict:
    return {"num": poly_to_obj(f.num), "den": poly_to_obj(f.den)}


def ratfun_from_obj(obj: Mapping) -> RationalFunction:
    return RationalFunction(poly_from_obj(obj["num"]), poly_from_obj(obj["den"]))


def field_to_obj(f: VectorField) -> Dict:
    return {
        "variables": list(f.variables),
        "holomorphic": isinstance(f, HoloField),
        "components": [poly_to_obj(c) for c in f.components],
    }


def field_from_obj(obj: Mapping) -> VectorField:
    cls = HoloField if obj.get("holomorphic") else VectorField
    return cls(tuple(obj["variables"]), tuple(poly_from_obj(c) for c in obj["components"]))


def algebra_to_obj(algebra) -> Dict:
    """Serialize a LieAlgebraPresentation: basis fields plus the nonzero
    upper-triangle structure entries as [i, j, k, c] records."""
    entries = []
    for i in range(algebra.dim):
        for j in range(i + 1, algebra.dim):
            for k, c in enumerate(algebra.structure[i][j]):
                if c:
                    entries.append([i, j, k, frac_to_str(c)])
    return {"basis": [field_to_obj(f) for f in algebra.basis], "structure": entries}


def algebra_from_obj(obj: Mapping):
    from fractions import Fraction as F

    from .symmetry import LieAlgebraPresentation
    basis = tuple(field_from_obj(f) for f in obj["basis"])
    dim = len(basis)
    rows = [[[F(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k, c in obj["structure"]:
        rows[i][j][k] = F(c)
        rows[j][i][k] = -F(c)
    return LieAlgebraPresentation(
        basis, tuple(tuple(tuple(entry) for entry in row) for row in rows))


def relations_to_obj(ctx: RelationContext) -> Dict:
    return {
        "radicals": [{"symbol": sym, "square": poly_to_obj(d)} for sym, d in ctx.radicals],
        "unit_pairs": [[c, cb] for c, cb in ctx.unit_pairs],
    }


def relations_from_obj(obj: Mapping) -> RelationContext:
    return RelationContext(
        radicals=tuple((r["symbol"], poly_from_obj(r["square"])) for r in obj.get("radicals", ())),
        unit_pairs=tuple((a, b) for a, b in obj.get("unit_pairs", ())),
    )


def family_to_obj(fam: MapFamily) -> Dict:
    return {
        "name": fam.name,
        "variables": list(fam.variables),
        "params": list(fam.params),
        "components": [ratfun_to_obj(c) for c in fam.components],
        "identity": {p: frac_to_str(v) for p, v in fam.identity},
        "relations": relations_to_obj(fam.relations),
        "constraints": {p: text for p, text in fam.constraints},
        "composition": {p: ratfun_to_obj(law) for p, law in fam.composition},
        "composition_primed": list(fam.composition_primed),
    }


def family_from_obj(obj: Mapping) -> MapFamily:
    return MapFamily(
        name=obj["name"],
        variables=tuple(obj["variables"]),
        params=tuple(obj["params"]),
        components=tuple(ratfun_from_obj(c) for c in obj["components"]),
        identity=tuple((p, Fraction(v)) for p, v in obj["identity"].items()),
        relations=relations_from_obj(obj.get("relations", {})),
        constraints=tuple(sorted(obj.get("constraints", {}).items())),
        composition=tuple((p, ratfun_from_obj(law))
                          for p, law in obj.get("composition", {}).items()),
        composition_primed=tuple(obj.get("composition_primed", ())),
    )


def graph_to_obj(g: GraphSurface) -> Dict:
    return {
        "name": g.name,
        "holo_vars": list(g.holo_vars),
        "anti_vars": list(g.anti_vars),
        "slice_var": g.slice_var,
        "solved_var": g.solved_var,
        "solved_conj": g.solved_conj,
        "re_part": None if g.re_part is None else ratfun_to_obj(g.re_part),
        "im_part": None if g.im_part is None else ratfun_to_obj(g.im_part),
    }


def graph_from_obj(obj: Mapping) -> GraphSurface:
    return GraphSurface(
        holo_vars=tuple(obj["holo_vars"]),
        anti_vars=tuple(obj["anti_vars"]),
        slice_var=obj["slice_var"],
        solved_var=obj["solved_var"],
        solved_conj=obj["solved_conj"],
        re_part=None if obj["re_part"] is None else ratfun_from_obj(obj["re_part"]),
        im_part=None if obj["im_part"] is None else ratfun_from_obj(obj["im_part"]),
        name=obj.get("name", ""),
    )
