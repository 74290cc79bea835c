"""Bidegree series, trace conditions, coordinate changes, families."""

from fractions import Fraction

import pytest

from tubes import catalog
from tubes.fields import lie_bracket
from tubes.linalg import rref_rows
from tubes.normal_form import (GraphSurface, MapFamily, chern_moser_check,
                               defining_series, infinitesimal_generators,
                               map_at_origin, trace_from_levi,
                               verify_family_invariance, verify_group_law,
                               verify_map_conjugation, verify_surface_map)
from tubes.poly import MultiPoly, RationalFunction
from tubes.relations import RelationContext
from tubes.scalars import GaussianRational, I
from tubes.symmetry import LieAlgebraPresentation, expand_in_fields

WG = ("w1", "w2", "w3", "w1b", "w2b", "w3b")
W1, W2, W3, W1B, W2B, W3B = (MultiPoly.var(WG, n) for n in WG)
ZF_ANTI = ("z1b", "z2b", "z3b", "z4b")


def graph(case):
    return catalog.get(f"graph.cm.{case}").payload


def tube_rho(case):
    return catalog.get(f"map.cm.{case}").payload.target


# ------------------------------------------------------------------- series

def test_series_parts_match_recorded_values():
    series = defining_series(graph("D"), 8)
    assert series.part(1, 1) == (W3 * W3B + W1 * W2B + W2 * W1B) * Fraction(1, 2)
    want22 = ((W1**2 * W1B * W2B + W1B**2 * W1 * W2) * Fraction(-5, 32)
              + (W1**2 * W3B**2 + W1B**2 * W3**2) * Fraction(25, 64)
              + W1 * W1B * W3 * W3B * Fraction(5, 8))
    assert series.part(2, 2) == want22
    want32 = (W1**3 * W3B**2 * Fraction(-75, 128)
              + W1**2 * W3 * W1B * W3B * Fraction(-75, 64)
              + W1 * W3**2 * W1B**2 * Fraction(-75, 128))
    assert series.part(3, 2) == want32
    want33 = ((W1**3 * W1B**2 * W2B + W1B**3 * W1**2 * W2) * Fraction(25, 512)
              + (W1**3 * W1B * W3B**2 + W1B**3 * W1 * W3**2) * Fraction(175, 128)
              + W1**2 * W1B**2 * W3 * W3B * Fraction(1425, 512))
    assert series.part(3, 3) == want33


def test_series_multiply_back():
    g = graph("D")
    series = defining_series(g, 8)
    total = MultiPoly.zero(WG)
    for part in series.parts.values():
        total = total + part
    from tubes.poly import mul_trunc
    assert mul_trunc(total, g.im_part.den, 8) == g.im_part.num.truncate(8)


def test_series_reality_and_origin():
    for case in ("D", "C"):
        series = defining_series(graph(case), 8)
        series.verify_reality()
        assert series.part(0, 0).is_zero()


def test_hermitian_quadric_series_only_11_part():
    series = defining_series(catalog.get("graph.hermitian.quadric").payload, 6)
    assert set(series.parts.keys()) == {(1, 1)}


def test_graph_numerator_and_denominator_are_real():
    for case in ("D", "C"):
        g = graph(case)
        pairing = g.pairing
        assert g.im_part.den.conjugate(pairing) == g.im_part.den
        assert g.im_part.num.conjugate(pairing) == g.im_part.num


# -------------------------------------------------------------------- trace

def test_trace_matches_displayed_operator():
    series = defining_series(graph("D"), 6)
    tr = trace_from_levi(series.part(1, 1), ("w1", "w2", "w3"), ("w1b", "w2b", "w3b"))
    two = GaussianRational(2)
    zero = GaussianRational(0)
    assert tr.matrix == ((zero, two, zero), (two, zero, zero), (zero, zero, two))


def test_trace_identity_levi():
    f11 = (W1 * W1B + W2 * W2B + W3 * W3B) * Fraction(1, 2)
    tr = trace_from_levi(f11, ("w1", "w2", "w3"), ("w1b", "w2b", "w3b"))
    assert tr.matrix[0][0] == GaussianRational(2)
    assert tr.apply(W1 * W1B) == MultiPoly.const(WG, 2)


def test_trace_degenerate():
    with pytest.raises(ValueError, match="Levi-degenerate"):
        trace_from_levi(W1 * W1B, ("w1", "w2", "w3"), ("w1b", "w2b", "w3b"))


@pytest.mark.parametrize("case", ["D", "C"])
def test_chern_moser_conditions_pass(case):
    series = defining_series(graph(case), 8)
    tr = trace_from_levi(series.part(1, 1), ("w1", "w2", "w3"), ("w1b", "w2b", "w3b"))
    report = chern_moser_check(series, tr)
    assert report.passed, report.failed_names()
    assert report.classical_trace3


def test_chern_moser_quadric_vacuous():
    series = defining_series(catalog.get("graph.hermitian.quadric").payload, 6)
    tr = trace_from_levi(series.part(1, 1), ("w1", "w2", "w3"), ("w1b", "w2b", "w3b"))
    assert chern_moser_check(series, tr).passed


def test_chern_moser_perturbation_control():
    g = graph("D")
    bump = W1**2 * W1B * W2B + W1B**2 * W1 * W2
    perturbed = GraphSurface(g.holo_vars, g.anti_vars, g.slice_var, g.solved_var,
                             g.solved_conj, None,
                             RationalFunction(g.im_part.num + bump * 256, g.im_part.den))
    series = defining_series(perturbed, 8)
    tr = trace_from_levi(series.part(1, 1), ("w1", "w2", "w3"), ("w1b", "w2b", "w3b"))
    report = chern_moser_check(series, tr)
    assert "tr F22 = 0" in report.failed_names()


def test_chern_moser_needs_cutoff():
    series = defining_series(graph("D"), 4)
    tr = trace_from_levi(series.part(1, 1), ("w1", "w2", "w3"), ("w1b", "w2b", "w3b"))
    with pytest.raises(ValueError):
        chern_moser_check(series, tr)


# ------------------------------------------------------------- surface maps

@pytest.mark.parametrize("mid", ["map.cm.D", "map.cm.C", "map.case3.derived",
                                 "map.case3.printed", "map.case3.printed.reversed",
                                 "map.quadric.to.Bminus", "map.identity.quadric"])
def test_map_fixtures_match_expected_verdicts(mid):
    fx = catalog.get(mid)
    payload = fx.payload
    source = catalog.get(payload.source_graph).payload
    ok, _ = verify_surface_map(source, payload.target, payload.target_holo,
                               payload.target_anti, dict(payload.components))
    assert ok == payload.expected
    if payload.origin_image is not None:
        assert map_at_origin(dict(payload.components),
                             list(payload.target_holo)) == list(payload.origin_image)


def test_series_diagnostic_fallback():
    from tubes.normal_form import surface_map_series_residual
    payload = catalog.get("map.cm.D").payload
    source = catalog.get(payload.source_graph).payload
    residual = surface_map_series_residual(source, payload.target, payload.target_holo,
                                           payload.target_anti,
                                           dict(payload.components), 5)
    assert residual.is_zero()
    # a broken map leaves a readable low-degree residual
    broken = dict(payload.components)
    w = MultiPoly.var(broken["z4"].vars, "w2")
    broken["z4"] = broken["z4"] + RationalFunction(w)
    residual = surface_map_series_residual(source, payload.target, payload.target_holo,
                                           payload.target_anti, broken, 4)
    assert not residual.is_zero()


def test_affine_truncation_of_change_fails():
    # dropping every nonlinear term of the rational change must break the identity
    fx = catalog.get("map.cm.D")
    payload = fx.payload
    source = catalog.get(payload.source_graph).payload
    truncated = {}
    for name, rf in payload.components:
        num = rf.num
        den0 = rf.den.const_coeff()
        linear = num.truncate(1) * (GaussianRational(1) / den0)
        truncated[name] = RationalFunction(linear)
    ok, _ = verify_surface_map(source, payload.target, payload.target_holo,
                               payload.target_anti, truncated)
    assert not ok


# ------------------------------------------------------- family invariance

def test_isotropy_family_invariance_and_fixed_point():
    fam = catalog.get("family.isotropy.D").payload
    res = verify_family_invariance(fam, tube_rho("D"), catalog.ZV, ZF_ANTI,
                                   fixed_point=(1, 0, 1, 1))
    assert res.ok and res.fixes_point
    r = MultiPoly.var(fam.params, "r")
    assert res.multiplier == r**2


def test_full_family_invariance():
    fam = catalog.get("family.full.D").payload
    res = verify_family_invariance(fam, tube_rho("D"), catalog.ZV, ZF_ANTI)
    assert res.ok
    q = MultiPoly.var(fam.params, "q")
    r = MultiPoly.var(fam.params, "r")
    assert res.multiplier == q**2 * r**2


def test_full_family_isotropy_slice_fixes_basepoint():
    info = catalog.get("slice.isotropy.D").payload
    full = catalog.get(info.family).payload
    iso = catalog.get(info.reduces_to).payload
    assignments = dict(info.assignments)
    for i, comp in enumerate(full.components):
        values = {v: MultiPoly.var(iso.universe, v) for v in full.variables}
        for p in full.params:
            values[p] = assignments[p].with_vars(iso.universe)
        assert comp.num.subs_poly(values) == iso.components[i].num


def test_cubic_case_isotropy_triple():
    rho = tube_rho("C")
    for fid in ("family.isotropy.C.scale", "family.isotropy.C.shear", "family.circle.C"):
        fam = catalog.get(fid).payload
        res = verify_family_invariance(fam, rho, catalog.ZV, ZF_ANTI,
                                       fixed_point=(1, 0, 0, 0))
        assert res.ok and res.fixes_point, fid


def test_printed_circle_action_fails():
    fam = catalog.get("family.circle.C.printed").payload
    res = verify_family_invariance(fam, tube_rho("C"), catalog.ZV, ZF_ANTI)
    assert not res.ok


def test_affine_families_preserve_bases():
    xv = catalog.XV
    x1, x2, x3, x4 = (MultiPoly.var(xv, n) for n in xv)
    fam = catalog.get("family.affine.D").payload
    res = verify_family_invariance(fam, x4**2 - x1 * x2 - x1**2 * x3)
    q = MultiPoly.var(fam.params, "q")
    r = MultiPoly.var(fam.params, "r")
    assert res.ok and res.multiplier == q**2 * r**2
    fam = catalog.get("family.affine.C").payload
    res = verify_family_invariance(fam, x4 - x1 * x2 - x1 * x3**2)
    q = MultiPoly.var(fam.params, "q")
    r = MultiPoly.var(fam.params, "r")
    assert res.ok and res.multiplier == q * r**2


def test_w_linear_families_preserve_graphs():
    for case in ("D", "C"):
        fam = catalog.get(f"family.isotropy.{case}.w").payload
        g = graph(case)
        full_holo = g.holo_vars + (g.solved_var,)
        full_anti = g.anti_vars + (g.solved_conj,)
        universe = full_holo + full_anti
        n = g.im_part.num.with_vars(universe)
        d = g.im_part.den.with_vars(universe)
        w4 = MultiPoly.var(universe, g.solved_var)
        w4b = MultiPoly.var(universe, g.solved_conj)
        rho = (w4 - w4b) * d - n * GaussianRational(0, 2)
        res = verify_family_invariance(fam, rho, full_holo, full_anti)
        assert res.ok, case


def test_translations_preserve_tubes():
    fam = catalog.get("family.translations.z").payload
    for case in ("D", "C"):
        res = verify_family_invariance(fam, tube_rho(case), catalog.ZV, ZF_ANTI)
        assert res.ok
        assert res.multiplier == MultiPoly.const(fam.params, 1)


# ----------------------------------------------------------------- group law

@pytest.mark.parametrize("fid", ["family.affine.D", "family.affine.C"])
def test_group_laws(fid):
    fam = catalog.get(fid).payload
    assert verify_group_law(fam).status == "ok"


def test_group_law_missing_is_unresolved():
    fam = catalog.get("family.isotropy.D").payload
    assert verify_group_law(fam).status == "unresolved"


def test_group_law_wrong_law_fails():
    fam = catalog.get("family.affine.D").payload
    primed = fam.composition_primed
    lawv = fam.params + primed
    wrong = tuple((p, RationalFunction(MultiPoly.var(lawv, p) + 1)) for p in fam.params)
    broken = MapFamily(fam.name, fam.variables, fam.params, fam.components,
                       fam.identity, fam.relations, fam.constraints,
                       wrong, primed)
    assert verify_group_law(broken).status == "failed"


# ------------------------------------------------------------- generators

def test_full_family_generators_span_basis():
    fam = catalog.get("family.full.D").payload
    gens = infinitesimal_generators(fam)
    assert len(gens) == 10
    zb = list(catalog.get("basis.Z.D").payload.fields)
    coords = []
    for g in gens:
        c = expand_in_fields(g, zb)
        assert c is not None
        coords.append(list(c))
    assert len(rref_rows(coords)) == 10
    # and conversely every basis field is a combination of generators
    for b in zb:
        assert expand_in_fields(b, gens) is not None


def test_cubic_case_generators_span_basis():
    gens = []
    afx = catalog.get("family.affine.C").payload
    rename = dict(zip(catalog.XV, catalog.ZV))
    comps = tuple(RationalFunction(c.num.rename_vars(rename), c.den.rename_vars(rename))
                  for c in afx.components)
    zlift = MapFamily("affine.C.z", catalog.ZV, afx.params, comps, afx.identity)
    gens.extend(infinitesimal_generators(zlift))
    for fid in ("family.translations.z", "family.isotropy.C.shear", "family.circle.C"):
        gens.extend(infinitesimal_generators(catalog.get(fid).payload))
    assert len(gens) == 10
    zb = list(catalog.get("basis.Z.C").payload.fields)
    coords = []
    for g in gens:
        c = expand_in_fields(g, zb)
        assert c is not None
        coords.append(list(c))
    assert len(rref_rows(coords)) == 10


def test_circle_generator_is_tenth_basis_field():
    gens = infinitesimal_generators(catalog.get("family.circle.C").payload)
    assert len(gens) == 1
    zb = list(catalog.get("basis.Z.C").payload.fields)
    coeffs = expand_in_fields(gens[0], zb)
    expected = [GaussianRational(int(i == 9)) for i in range(10)]
    assert list(coeffs) == expected


def test_translation_family_generators_are_constant_fields():
    gens = infinitesimal_generators(catalog.get("family.translations.z").payload)
    assert len(gens) == 4
    for g in gens:
        assert all(c.total_degree() == 0 for c in g.components)


def test_generator_structure_constants_match_golden_table():
    fam = catalog.get("family.full.D").payload
    gens = infinitesimal_generators(fam)
    zb = list(catalog.get("basis.Z.D").payload.fields)
    z_algebra = LieAlgebraPresentation.from_fields(zb)
    gen_algebra = LieAlgebraPresentation.from_fields(gens)
    m = [list(expand_in_fields(g, zb)) for g in gens]
    dim = 10
    for a in range(dim):
        for b in range(dim):
            # [G_a, G_b] in the Z basis, two ways
            direct = [GaussianRational(0)] * dim
            for d in range(dim):
                c = gen_algebra.structure[a][b][d]
                if c:
                    for g_ in range(dim):
                        direct[g_] = direct[g_] + m[d][g_] * c
            via_table = [GaussianRational(0)] * dim
            for e in range(dim):
                if not m[a][e]:
                    continue
                for f in range(dim):
                    if not m[b][f]:
                        continue
                    prod = m[a][e] * m[b][f]
                    for g_ in range(dim):
                        cc = z_algebra.structure[e][f][g_]
                        if cc:
                            via_table[g_] = via_table[g_] + prod * cc
            assert direct == via_table, (a, b)


# ---------------------------------------------------------------- bridge

def test_cubic_case_parameter_bridges():
    """The three one-parameter slices of the linear normal-form isotropy
    conjugate exactly to the three stored isotropy pieces; the printed
    circle sign fails the same conjugation."""
    phi = dict(catalog.get("map.cm.C").payload.components)
    W4V = ("w1", "w2", "w3", "w4")

    def wslice(params, comps, ident, rels=None):
        return MapFamily("slice", W4V, params,
                         tuple(RationalFunction(c) for c in comps), ident,
                         relations=rels or RelationContext())

    u = W4V + ("r",)
    w1, w2, w3, w4, r = (MultiPoly.var(u, n) for n in u)
    scale_w = wslice(("r",), (w1, r**2 * w2, r * w3, r**2 * w4), (("r", Fraction(1)),))
    ok, detail = verify_map_conjugation(
        phi, scale_w, catalog.get("family.isotropy.C.scale").payload,
        {"r": MultiPoly.var(("r",), "r")})
    assert ok, detail

    u = W4V + ("u",)
    w1, w2, w3, w4, uu = (MultiPoly.var(u, n) for n in u)
    shear_w = wslice(("u",), (w1, w2 + uu * w1 * I, w3, w4), (("u", Fraction(0)),))
    ok, detail = verify_map_conjugation(
        phi, shear_w, catalog.get("family.isotropy.C.shear").payload,
        {"u": MultiPoly.var(("u",), "u")})
    assert ok, detail

    u = W4V + ("c", "cb")
    w1, w2, w3, w4, c, cb = (MultiPoly.var(u, n) for n in u)
    ctx = RelationContext(unit_pairs=(("c", "cb"),))
    circle_w = wslice(("c", "cb"), (w1, w2, c * w3, w4),
                      (("c", Fraction(1)), ("cb", Fraction(1))), rels=ctx)
    pmap = {"c": MultiPoly.var(("c", "cb"), "c"), "cb": MultiPoly.var(("c", "cb"), "cb")}
    ok, detail = verify_map_conjugation(
        phi, circle_w, catalog.get("family.circle.C").payload, pmap)
    assert ok, detail
    ok, _ = verify_map_conjugation(
        phi, circle_w, catalog.get("family.circle.C.printed").payload, pmap)
    assert not ok


def test_isotropy_bridge_parameter_match():
    bridge = catalog.get("bridge.isotropy.D").payload
    wfam = catalog.get(bridge.w_family).payload
    zfam = catalog.get(bridge.z_family).payload
    phi = dict(catalog.get(bridge.map_id).payload.components)
    r, mu, nu = (MultiPoly.var(wfam.params, n) for n in wfam.params)
    ok, detail = verify_map_conjugation(
        phi, wfam, zfam, {"r": r, "u": mu * bridge.u_scale, "v": nu * bridge.v_scale})
    assert ok, detail
    # wrong scaling breaks the identity
    ok, _ = verify_map_conjugation(
        phi, wfam, zfam, {"r": r, "u": mu, "v": nu * bridge.v_scale})
    assert not ok
