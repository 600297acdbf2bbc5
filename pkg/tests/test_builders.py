"""Builder routes: desk-sized oracles for every family."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krcrystals import pm_diagrams as pm
from krcrystals import tableaux
from krcrystals.cartan import AffineSpec, Shape, kr_decomposition, kr_dimension
from krcrystals.kr_builders import (
    SignTriple,
    affine_dba,
    affine_typeA,
    build_exceptional_CD,
    build_exceptional_D,
    build_kr,
    build_virtual_C,
    classical_model,
    inverse_promotion,
    promotion,
    sigma_dba,
    sigma_spin_D,
    triple_rules,
    _virtual_host_c,
)


# -- promotion route (type A) --------------------------------------------------

def test_promotion_single_box():
    assert promotion(((1,),), 3) == ((2,),)
    assert promotion(((3,),), 3) == ((1,),)
    assert promotion(((2,),), 3) == ((3,),)


def test_promotion_rejects_ragged_shape():
    with pytest.raises(ValueError):
        promotion(((1, 2), (1,)), 3)


def test_promotion_cycles_with_order_n():
    for r, s in [(1, 1), (2, 2), (1, 3)]:
        for cols, _ in tableaux.enumerate_tableaux("A", 3, Shape((s,) * r)):
            out = cols
            for _ in range(3):
                out = promotion(out, 3)
            assert out == cols


def test_inverse_promotion_inverts():
    for cols, _ in tableaux.enumerate_tableaux("A", 3, Shape((2, 2))):
        assert inverse_promotion(promotion(cols, 3), 3) == cols


@given(st.integers(0, 19))
def test_promotion_rotates_content(k):
    elems = list(tableaux.enumerate_tableaux("A", 3, Shape((2, 2))))
    cols, _ = elems[k % len(elems)]
    before = tableaux.tableau_weight("A", 3, cols, None)
    after = tableaux.tableau_weight("A", 3, promotion(cols, 3), None)
    assert after == (before[-1],) + before[:-1]


def test_affine_typeA_matches_graph_edges():
    b = build_kr(AffineSpec("A1", 3, 1, 1))
    g = b.graph
    one = g.index[(((1,),), None)]
    three = g.index[(((3,),), None)]
    assert g.e[0].get(one) == three
    assert affine_typeA((((1,),), None), 3, "e") == (((3,),), None)
    for x, elem in enumerate(g.elements):
        down = affine_typeA(elem, 3, "f")
        assert g.f[0].get(x) == (None if down is None else g.index[down])


# -- tail-involution route (B1 r<n, A2odd, D1 r<=n-2) ---------------------------

def test_sigma_is_involution_and_commutes():
    b = build_kr(AffineSpec("A2odd", 3, 1, 2))
    g = b.graph
    for x, elem in enumerate(g.elements):
        assert sigma_dba(b, sigma_dba(b, elem)) == elem
        for i in range(2, 4):
            y = g.f[i].get(x)
            if y is None:
                continue
            assert sigma_dba(b, g.elements[y]) == g.elements[
                g.f[i][g.index[sigma_dba(b, elem)]]
            ]


def test_sigma_on_highest_is_diagram_involution():
    spec = AffineSpec("A2odd", 3, 1, 2)
    b = build_kr(spec)
    shapes = kr_decomposition(spec)
    for x in b.graph.highest_vertices((2, 3)):
        elem = b.graph.elements[x]
        P = pm.phi_inverse("C", 3, elem, shapes)
        direct = pm.phi(pm.involution_S(P, spec.r, spec.s))
        assert sigma_dba(b, elem) == direct


def test_affine_dba_matches_graph_edges():
    b = build_kr(AffineSpec("B1", 2, 1, 2))
    g = b.graph
    for x, elem in enumerate(g.elements):
        down = affine_dba(b, elem, "f")
        assert g.f[0].get(x) == (None if down is None else g.index[down])
        up = affine_dba(b, elem, "e")
        assert g.e[0].get(x) == (None if up is None else g.index[up])


# -- fixed-point route (C1 r<n) --------------------------------------------------

def test_virtual_c_sizes_and_decomposition():
    b = build_virtual_C(2, 1, 1)
    assert len(b.graph.elements) == 4
    assert b.graph.decomposition((1, 2)) == [(2, 0)]
    b = build_virtual_C(2, 1, 2)
    assert len(b.graph.elements) == 11
    assert b.graph.decomposition((1, 2)) == [(0, 0), (4, 0)]


def test_virtual_c_rejects_top_node():
    with pytest.raises(ValueError):
        build_virtual_C(2, 2, 1)


def test_virtual_c_zero_side_matches_classical_sizes():
    b = build_virtual_C(2, 1, 2)
    classical = sorted(len(c) for c in b.graph.components((1, 2)))
    zero_side = sorted(len(c) for c in b.graph.components((0, 1)))
    assert classical == zero_side == [1, 10]


# -- doubling embeddings (B1 r=n, A2even, D2 r<n) --------------------------------

STEPPED_SIZES = [
    ("A2even", 2, 1, 1, 5),
    ("A2even", 2, 2, 1, 10),
    ("A2even", 2, 1, 2, 15),
    ("A2even", 2, 2, 2, 50),
    ("D2", 2, 1, 1, 6),
    ("D2", 2, 1, 2, 20),
    ("B1", 2, 2, 1, 4),
    ("B1", 2, 2, 2, 11),
    ("B1", 3, 3, 1, 8),
    ("B1", 3, 3, 2, 42),
]


@pytest.mark.parametrize("fam,n,r,s,size", STEPPED_SIZES)
def test_stepped_sizes(fam, n, r, s, size):
    spec = AffineSpec(fam, n, r, s)
    b = build_kr(spec)
    assert len(b.graph.elements) == size == kr_dimension(spec)
    assert b.kind == "stepped"


def test_stepped_hosts():
    b = build_kr(AffineSpec("B1", 2, 2, 1))
    assert b.ambient.build.spec == AffineSpec("A2odd", 2, 2, 1)
    assert b.ambient.m == (2, 2, 1)
    b = build_kr(AffineSpec("D2", 2, 1, 1))
    assert b.ambient.build.spec == AffineSpec("C1", 2, 1, 2)
    assert b.ambient.m == (1, 2, 1)
    b = build_kr(AffineSpec("A2even", 2, 2, 1))
    assert b.ambient.build.kind == "virtual"
    assert len(b.ambient.build.graph.elements) == 25
    assert b.ambient.m == (1, 2, 2)


def test_stepped_edges_are_powered_host_edges():
    b = build_kr(AffineSpec("A2even", 2, 1, 1))
    host = b.ambient.build.graph
    m = b.ambient.m
    vmap = b.ambient.vertex_map
    for x in range(len(b.graph.elements)):
        for i in b.graph.colors:
            y = vmap[x]
            for _ in range(m[i]):
                y = None if y is None else host.f[i].get(y)
            edge = b.graph.f[i].get(x)
            assert (edge is None and y is None) or vmap.get(edge) == y


def test_classical_model_of_stepped_build():
    spec = AffineSpec("D2", 2, 1, 1)
    b = build_kr(spec)
    model = classical_model(b)
    assert len(model) == 6
    for x, tab in model.items():
        assert tableaux.tableau_ok("B", 2, tab[0], tab[1])
        assert tuple(b.graph.weights[x]) == tableaux.tableau_weight(
            "B", 2, tab[0], tab[1]
        )


# -- sign-triple route (C1 r=n, D2 r=n) ------------------------------------------

def test_triple_rules_c():
    s = 4
    assert triple_rules("C1", s, SignTriple(1, 0, 3), "e") == SignTriple(0, 1, 3)
    assert triple_rules("C1", s, SignTriple(0, 2, 2), "e") is None
    assert triple_rules("C1", s, SignTriple(0, 2, 2), "f") == SignTriple(1, 1, 2)
    assert triple_rules("C1", s, SignTriple(4, 0, 0), "f") is None
    with pytest.raises(ValueError):
        triple_rules("C1", s, SignTriple(1, 1, 1), "e")


def test_triple_rules_d():
    assert triple_rules("D2", 2, SignTriple(0, 0, 0, gamma=1), "f") == SignTriple(
        2, 0, 0
    )
    assert triple_rules("D2", 2, SignTriple(0, 2, 0), "f") == SignTriple(0, 0, 0, gamma=1)
    assert triple_rules("D2", 2, SignTriple(0, 1, 1), "f") == SignTriple(1, 0, 1)
    assert triple_rules("D2", 2, SignTriple(2, 0, 0), "f") is None
    # with s odd a produced 0-column recanonicalizes into a signed column
    assert triple_rules("D2", 3, SignTriple(2, 1, 0), "e") == SignTriple(1, 2, 0)
    assert triple_rules("D2", 3, SignTriple(1, 0, 2), "e") == SignTriple(0, 1, 2)
    with pytest.raises(ValueError):
        triple_rules("D2", 2, SignTriple(1, 0, 0), "e")


def test_exceptional_cd_sizes():
    assert len(build_kr(AffineSpec("C1", 2, 2, 1)).graph.elements) == 5
    assert len(build_kr(AffineSpec("C1", 2, 2, 2)).graph.elements) == 14
    assert len(build_kr(AffineSpec("D2", 2, 2, 1)).graph.elements) == 4
    assert len(build_kr(AffineSpec("D2", 2, 2, 3)).graph.elements) == 20
    with pytest.raises(ValueError):
        build_exceptional_CD("B1", 2, 1)


def test_triples_match_fixed_point_route_at_odd_s():
    # two independent constructions of the same crystal must be isomorphic
    for n in (2, 3):
        tri = build_kr(AffineSpec("C1", n, n, 1))
        aux = _virtual_host_c(n, n, 1)
        assert tri.graph.isomorphism(aux.graph) is not None


def test_fixed_point_object_exceeds_kr_crystal_at_even_s():
    aux = _virtual_host_c(2, 2, 2)
    assert len(aux.graph.elements) == 25
    assert aux.graph.decomposition((1, 2)) == [(0, 0), (4, 0), (4, 4)]


# -- spin-pair route (D1 r in {n-1, n}) -------------------------------------------

def test_sigma_spin_diagram_rule():
    P = pm.make_pm("D", 4, ((4, "+-"), (4, "+-")), color=1)
    Q = sigma_spin_D(P)
    assert Q.color == 2 and Q.cols == P.cols
    P = pm.make_pm("D", 4, ((4, "+"),), spin="+", color=2)
    Q = sigma_spin_D(P)
    assert Q.color == 1 and Q.cols == ((4, "-"),) and Q.spin == "-"
    with pytest.raises(ValueError):
        sigma_spin_D(pm.make_pm("B", 2, ((2, "+"),)))


def test_spin_pair_sizes_and_involution():
    b, partner = build_exceptional_D(4, 1, 4)
    assert len(b.graph.elements) == 8 and len(partner.graph.elements) == 8
    assert b.spec.r == 4 and partner.spec.r == 3
    for x in range(8):
        assert b.partner.sigma_table[b.sigma_table[x]] == x
    assert b.graph.decomposition((1, 2, 3, 4)) == [(1, 1, 1, 1)]
    assert partner.graph.decomposition((1, 2, 3, 4)) == [(1, 1, 1, -1)]


def test_spin_pair_via_dispatch():
    b = build_kr(AffineSpec("D1", 4, 3, 2))
    assert b.kind == "spin" and b.partner.spec.r == 4
    assert len(b.graph.elements) == 35
    assert build_kr(AffineSpec("D1", 4, 4, 2)) is b.partner
    with pytest.raises(ValueError):
        build_exceptional_D(4, 1, 2)


def test_spin_zero_edges_conjugate_partner_one_edges():
    b = build_kr(AffineSpec("D1", 4, 4, 1))
    g, pg = b.graph, b.partner.graph
    for x in range(len(g.elements)):
        y = pg.f[1].get(b.sigma_table[x])
        expect = None if y is None else b.partner.sigma_table[y]
        assert g.f[0].get(x) == expect


# -- dispatch and caching ---------------------------------------------------------

def test_dispatch_kinds():
    assert build_kr(AffineSpec("A1", 3, 1, 1)).kind == "promotion"
    assert build_kr(AffineSpec("B1", 2, 1, 1)).kind == "dba"
    assert build_kr(AffineSpec("A2odd", 2, 2, 1)).kind == "dba"
    assert build_kr(AffineSpec("D1", 4, 2, 1)).kind == "dba"
    assert build_kr(AffineSpec("C1", 3, 1, 1)).kind == "virtual"
    assert build_kr(AffineSpec("C1", 2, 2, 1)).kind == "triples"
    assert build_kr(AffineSpec("D2", 2, 2, 1)).kind == "triples"
    assert build_kr(AffineSpec("B1", 2, 2, 1)).kind == "stepped"
    assert build_kr(AffineSpec("D1", 4, 4, 1)).kind == "spin"


def test_build_cache_returns_same_object():
    spec = AffineSpec("C1", 2, 1, 1)
    assert build_kr(spec) is build_kr(AffineSpec("C1", 2, 1, 1))


@pytest.mark.parametrize(
    "fam,n,r,s",
    [
        ("A1", 2, 1, 2),
        ("B1", 3, 2, 1),
        ("C1", 3, 2, 1),
        ("D1", 4, 1, 2),
        ("A2even", 3, 1, 1),
        ("A2odd", 3, 3, 1),
        ("D2", 3, 1, 1),
        ("D2", 3, 3, 1),
    ],
)
def test_sizes_match_dimension_formula(fam, n, r, s):
    spec = AffineSpec(fam, n, r, s)
    assert len(build_kr(spec).graph.elements) == kr_dimension(spec)
