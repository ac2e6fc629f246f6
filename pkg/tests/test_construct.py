import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dotgraphs.construct import (
    EquivClass,
    VertexCapExceeded,
    build,
    build_EUD,
    build_EZD_R1R2,
    build_TD,
    build_UD,
    build_ZD,
    build_ZD_R1R2,
    class_representative,
    dot_product,
    expand_equivalence,
)
from dotgraphs.graph import (
    Complete,
    CompleteBipartite,
    Signature,
    build_graph,
    export_dot,
    is_totally_disconnected,
    same_graph,
    signature,
)
from dotgraphs.ring import FiniteField, ModularRing, totient

K = Complete
KB = CompleteBipartite


def sig(*parts):
    return Signature.from_counts(parts)


def reference_graph(ring, vertices):
    """Per-pair Python route: the oracle for the vectorised builders."""
    return build_graph(vertices, lambda x, y: dot_product(ring, x, y) == ring.zero)


# -- dot product ---------------------------------------------------------------


def test_dot_product_examples():
    z5, z8 = ModularRing(5), ModularRing(8)
    assert dot_product(z5, (1, 2), (2, 4)) == 0
    assert dot_product(z8, (1, 3), (3, 5)) == 2
    f = FiniteField(2, 2)
    assert dot_product(f, ((0, 1), (1, 1)), (f.zero, f.zero)) == f.zero


def test_dot_product_errors():
    with pytest.raises(ValueError):
        dot_product(ModularRing(5), (1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        dot_product(ModularRing(5), (1, 7), (1, 2))


RINGS = [ModularRing(n) for n in (2, 3, 4, 6, 8, 9, 10, 12)] + [FiniteField(p, d) for p, d in ((2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (5, 1))]


@settings(max_examples=200)
@given(st.sampled_from(RINGS), st.integers(1, 3), st.data())
def test_dot_product_symmetric(ring, k, data):
    vec = st.tuples(*[st.sampled_from(ring.elements)] * k)
    x, y = data.draw(vec), data.draw(vec)
    assert dot_product(ring, x, y) == dot_product(ring, y, x)
    assert dot_product(ring, x, (ring.zero,) * k) == ring.zero


# -- vector graphs ---------------------------------------------------------------


@pytest.mark.parametrize("ring", RINGS, ids=str)
@pytest.mark.parametrize("k", [1, 2, 3])
def test_builders_match_reference_and_partition(ring, k):
    if ring.order**k > 800:
        pytest.skip("reference route is quadratic in pure Python")
    td, zd, ud = build_TD(ring, k), build_ZD(ring, k), build_UD(ring, k)
    assert set(td.vertices) == set(zd.vertices) | set(ud.vertices)
    assert not set(zd.vertices) & set(ud.vertices)
    assert len(td.vertices) == ring.order**k - 1
    for g in (td, zd, ud):
        assert list(g.vertices) == sorted(g.vertices)
        ref = reference_graph(ring, g.vertices)
        assert g.edges == ref.edges
    # induced subgraphs of TD
    tde = td.edge_set()
    for g in (zd, ud):
        vs = set(g.vertices)
        assert g.edge_set() == {e for e in tde if e <= vs}


def test_example_graphs():
    assert signature(build_UD(FiniteField(2, 2))) == sig((K(3), 1), (KB(3, 3), 1))
    assert signature(build_ZD(ModularRing(3))) == sig((KB(2, 2), 1))
    assert signature(build_UD(ModularRing(10))) == sig((K(4), 2), (KB(4, 4), 1))
    for n in (2, 4, 6, 8, 10):
        assert is_totally_disconnected(build_UD(ModularRing(n), 1))


def test_example_2_5_edges():
    g = build_UD(ModularRing(5))
    assert len(g.vertices) == 16 and len(g.edges) == 2 * 6 + 16
    assert g.has_edge((1, 2), (2, 4))
    assert g.has_edge((1, 1), (1, 4))
    assert not g.has_edge((1, 2), (1, 3))
    dot = export_dot(g)
    assert dot.count(" -- ") == 28
    assert dot.count(";\n") == 16 + 28


def test_example_3_6_component():
    g = build_UD(ModularRing(10))
    ones = {(1, 1), (3, 3), (7, 7), (9, 9)}
    other = {(1, 9), (3, 7), (7, 3), (9, 1)}
    assert all(g.has_edge(a, b) for a in ones for b in other)
    assert not any(g.has_edge(a, b) for a, b in itertools.combinations(ones, 2))


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (3, 1), (2, 3), (5, 1), (3, 2), (7, 1), (2, 4)])
def test_zd_of_field_square_is_kmm(p, d):
    f = FiniteField(p, d)
    m = f.q - 1
    assert signature(build_ZD(f)) == Signature.of([Complete(2) if m == 1 else KB(m, m)])


def test_vertex_cap(monkeypatch):
    with pytest.raises(VertexCapExceeded):
        build_TD(ModularRing(10), 2, cap=50)
    monkeypatch.setenv("DOTGRAPH_VERTEX_CAP", "10")
    with pytest.raises(VertexCapExceeded):
        build_UD(ModularRing(5))
    assert len(build_UD(ModularRing(5), cap=16).vertices) == 16


def test_build_dispatch_rejects_bad_combinations():
    with pytest.raises(ValueError):
        build("gf:3:1", "zdr1r2")
    with pytest.raises(ValueError):
        build("zn:5", "eud", k=3)
    with pytest.raises(ValueError):
        build("zn:5", "nope")


# -- R1 ∪ R2 -------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 13))
def test_zd_r1r2_is_induced_subgraph(n):
    ring = ModularRing(n)
    g = build_ZD_R1R2(n)
    m = totient(n)
    assert len(g.vertices) == 2 * m * (n - m)
    zd = build_ZD(ring)
    vs = set(g.vertices)
    assert vs <= set(zd.vertices)
    assert g.edge_set() == {e for e in zd.edge_set() if e <= vs}


def test_zd_r1r2_examples():
    assert signature(build_ZD_R1R2(4)) == sig((KB(2, 2), 2))
    assert signature(build_ZD_R1R2(5)) == sig((KB(4, 4), 1))
    assert signature(build_ZD_R1R2(2)) == sig((K(2), 1))


# -- quotients -----------------------------------------------------------------


def test_eud_examples():
    eg = build_EUD(ModularRing(20))
    assert signature(eg) == sig((K(2), 4))
    assert [c.representative for c in eg.vertices][:3] == [(1, 1), (1, 3), (1, 7)]
    assert eg.has_edge(*(c for c in eg.vertices if c.representative in {(1, 1), (1, 19)}))
    assert signature(build_EUD(ModularRing(34))) == sig((K(1), 2), (K(2), 7))
    singles = [c.representative for c, nb in zip(build_EUD(ModularRing(34)).vertices,
                                                  build_EUD(ModularRing(34)).neighbors) if not nb]
    assert singles == [(1, 13), (1, 21)]
    assert signature(build_EZD_R1R2(7)) == sig((K(2), 1))


def test_equivalence_classes_partition_units():
    ring = ModularRing(12)
    eg = build_EUD(ring)
    members = [v for c in eg.vertices for v in c.members]
    assert sorted(members) == sorted(build_UD(ring).vertices)
    for c in eg.vertices:
        assert isinstance(c, EquivClass)
        assert c.representative[0] == 1
        assert len(c) == totient(12)
        assert all(class_representative(ring, v) == c.representative for v in c.members)


def test_ezd_class_representatives():
    eg = build_EZD_R1R2(6)
    reps = [c.representative for c in eg.vertices]
    assert reps == sorted(reps)
    assert all(r[0] == 1 or r[1] == 1 for r in reps)
    assert len(reps) == 2 * (6 - totient(6))


QUOTIENT_RINGS = [ModularRing(n) for n in range(3, 26)] + [FiniteField(p, d) for p, d in ((2, 1), (2, 2), (3, 1), (2, 3), (3, 2), (5, 1), (7, 1))]


@pytest.mark.parametrize("ring", QUOTIENT_RINGS, ids=str)
def test_quotient_soundness_and_round_trip(ring):
    eg = build_EUD(ring)
    # exhaustive: every class pair is all-orthogonal or none
    for i, j in itertools.combinations(range(len(eg.vertices)), 2):
        X, Y = eg.vertices[i], eg.vertices[j]
        hits = {dot_product(ring, x, y) == ring.zero for x in X.members for y in Y.members}
        assert len(hits) == 1
        assert hits.pop() == eg.has_edge(X, Y)
    ud = build_UD(ring)
    back = expand_equivalence(eg, ring)
    assert back.vertices == ud.vertices
    assert back.edges == ud.edges
    assert same_graph(back, ud)


@pytest.mark.parametrize("n", range(2, 21))
def test_ezd_round_trip(n):
    back = expand_equivalence(build_EZD_R1R2(n), ModularRing(n))
    direct = build_ZD_R1R2(n)
    assert back.vertices == direct.vertices and back.edges == direct.edges


def test_expand_examples():
    ring = ModularRing(20)
    back = expand_equivalence(build_EUD(ring), ring)
    assert signature(back) == sig((KB(8, 8), 4))
    f = FiniteField(2, 2)
    assert signature(expand_equivalence(build_EUD(f), f)) == sig((K(3), 1), (KB(3, 3), 1))


def test_expand_edgeless_quotient():
    # Z_8: no class is self-orthogonal, so dropping class edges leaves nothing
    ring = ModularRing(8)
    eg = build_EUD(ring)
    bare = type(eg)(eg.vertices, (), eg.labels)
    assert is_totally_disconnected(expand_equivalence(bare, ring))
    # Z_5 has two self-orthogonal classes that keep their K_4
    ring = ModularRing(5)
    eg = build_EUD(ring)
    bare = type(eg)(eg.vertices, (), eg.labels)
    assert signature(expand_equivalence(bare, ring)) == sig((K(4), 2), (K(1), 8))


def test_expand_needs_membership():
    with pytest.raises(ValueError):
        expand_equivalence(build_UD(ModularRing(5)), ModularRing(5))


def test_quotient_error_on_mixed_classes():
    from dotgraphs.construct import QuotientError, _quotient_graph

    ring = ModularRing(5)
    # not scalar orbits: (1,1).(1,4) = 0 but (1,2).(1,4) = 4
    bad = [EquivClass((1, 1), ((1, 1), (1, 2))), EquivClass((1, 4), ((1, 4), (2, 2)))]
    with pytest.raises(QuotientError):
        _quotient_graph(ring, bad, "bad")
