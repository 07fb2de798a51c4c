from __future__ import annotations

import dataclasses
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings

from corpus import FIXTURES
from oracle import adjacency, all_triangles, cat1_accepts, cat2_heads, colorings, quad, reference_classify
from pseudosolvable.graph import SimpleGraph, ThreeColoring, complement
from pseudosolvable.patterns import (
    FIG2,
    FIG3,
    CertificateError,
    as_sl25_shape,
    as_two_s5_shape,
    check_cat1,
    check_cat2,
    check_solvable_trivial,
    classify,
    format_certificate,
    match_quad,
    parse_certificate,
    validate_certificate,
)
from strategies import graphs

BASE_TRI = [("2", "3"), ("2", "5"), ("3", "5")]
BASE_EDGE = [("3", "5")]
ROLES = {2: "2", 3: "3", 5: "5"}


def all_graphs(n):
    vs = [str(i) for i in range(n)]
    pairs = list(combinations(vs, 2))
    for mask in range(1 << len(pairs)):
        yield SimpleGraph.build(vs, [p for i, p in enumerate(pairs) if mask >> i & 1])


@pytest.mark.parametrize(
    "base, r_to, want",
    [
        (BASE_TRI, [], "F1a"),
        (BASE_TRI, ["5"], "F1b"),
        (BASE_TRI, ["2"], None),
        (BASE_EDGE, [], "F2a"),
        (BASE_EDGE, ["2", "3", "5"], "F2b"),
        (BASE_EDGE, ["5"], "F2c"),
        (BASE_EDGE, ["2", "5"], "F2d"),
        (BASE_EDGE, ["2"], "F2e"),
        (BASE_EDGE, ["3", "5"], "F3c"),
        (BASE_EDGE, ["3"], "F4a"),
        (BASE_EDGE, ["2", "3"], "F4b"),
        ([("2", "3")], [], None),
    ],
)
def test_match_quad_table(base, r_to, want):
    g = SimpleGraph.build(["2", "3", "5", "r"], base + [("r", p) for p in r_to])
    assert match_quad(g, ROLES, "r") == want


def test_match_quad_rejects_role_collision():
    g = SimpleGraph.build(["2", "3", "5"], BASE_TRI)
    with pytest.raises(ValueError):
        match_quad(g, ROLES, "2")


def test_shared_shapes_translate_between_families():
    assert as_two_s5_shape("F2a") == "F3a" and as_two_s5_shape("F2c") == "F3b"
    assert as_sl25_shape("F3b") == "F2c" and as_two_s5_shape("F2b") is None
    assert set(FIG2) & {"F2a", "F2c"} and "F3c" in FIG3


def test_solvable_trivial_examples():
    c5 = SimpleGraph.build("pqrst", [("p", "q"), ("q", "r"), ("r", "s"), ("s", "t"), ("t", "p")])
    tri = SimpleGraph.build("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    k4_minus = SimpleGraph.build("abcd", [("a", "b"), ("a", "c"), ("b", "c"), ("b", "d"), ("c", "d")])
    assert check_solvable_trivial(c5)
    assert not check_solvable_trivial(tri)
    assert not check_solvable_trivial(k4_minus)


def test_classify_worked_examples():
    complete = complement(SimpleGraph.build("235"))
    assert classify(complete).category == "SolvableTrivial"
    assert classify(SimpleGraph.build("235")).category == "Cat235"
    k4bar = SimpleGraph.build("abcd")
    v = classify(k4bar)
    assert not v.realizable and str(v.violation) == "complement not 3-colorable"


def test_cat2_example_with_isolated_gamma_is_fig3_only():
    gbar = SimpleGraph.build("abgt", [("a", "b"), ("a", "t"), ("b", "t")])
    v = check_cat2(gbar)
    assert v.realizable
    cert = v.certificate
    assert cert.fig3_admissible and not cert.fig2_admissible
    assert dict(cert.patterns)["t"] == "F3c"


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_fixture_corpus(fx):
    v = classify(fx.gamma)
    assert (v.category or "Unrealizable") == fx.expected
    assert reference_classify(fx.vertices, fx.bar_edges) == fx.expected
    if v.realizable:
        validate_certificate(v.certificate, fx.gbar)
        if fx.heads:
            assert v.certificate.heads == fx.heads
    else:
        assert v.violation.message


def test_verdict_records_attempted_checks():
    fx = next(f for f in FIXTURES if f.name == "unreal_f4a")
    assert classify(fx.gamma).attempted == ("solvable-trivial", "cat235", "catp35")


def test_certificate_text_roundtrip():
    for fx in FIXTURES:
        v = classify(fx.gamma)
        if v.realizable:
            cert = parse_certificate(format_certificate(v.certificate))
            assert cert == v.certificate


def test_tampered_certificates_are_rejected():
    fx = next(f for f in FIXTURES if f.name == "cat235_one_f1b")
    cert = classify(fx.gamma).certificate
    col = cert.coloring
    swapped = ThreeColoring(col.I, col.D, col.O)
    with pytest.raises(CertificateError):
        validate_certificate(dataclasses.replace(cert, coloring=swapped), fx.gbar)
    with pytest.raises(CertificateError):
        validate_certificate(dataclasses.replace(cert, patterns=()), fx.gbar)
    with pytest.raises(CertificateError):
        validate_certificate(cert, fx.gbar.relabel({v: v if v != "r" else "r2" for v in fx.gbar.vertices}))


def test_overlap_both_category_checks_accept():
    # classify resolves the overlap by checking Cat235 first
    gbar = SimpleGraph.build("abcd", [("a", "b"), ("b", "c"), ("a", "c")])
    assert check_cat1(gbar).realizable and check_cat2(gbar).realizable
    assert classify(complement(gbar)).category == "Cat235"


def test_no_category_check_accepts_a_solvable_trivial_graph():
    for n in range(1, 6):
        for gbar in all_graphs(n):
            if check_solvable_trivial(gbar):
                assert not check_cat1(gbar).realizable
                assert not check_cat2(gbar).realizable


def _third_vertex_shapes(n):
    """Patterns of triangle apexes under every valid cat2 anchor map."""
    for gbar in all_graphs(n):
        vs = gbar.vertices
        adj = adjacency(vs, gbar.edge_list())
        tris = all_triangles(vs, adj)
        if not tris:
            continue
        for al, be, ga in permutations(vs, 3):
            if be not in adj[al] or ga in adj[al] or ga in adj[be]:
                continue
            if any(not {al, be} <= t for t in tris):
                continue
            roles = {3: al, 5: be, 2: ga}
            yield [quad(adj, roles, r) for r in vs if r not in (al, be, ga)]


def test_both_head_families_never_admissible():
    # the apex of a triangle on alpha-beta is F2b or F3c, never a shared shape
    seen = 0
    for n in range(4, 7):
        for pats in _third_vertex_shapes(n):
            seen += 1
            both = all(p in ("F2a/F3a", "F2c/F3b") for p in pats)
            assert not both
    assert seen > 0


def test_exhaustive_small_graphs_revalidate_and_match_oracle():
    for n in range(1, 6):
        for gamma in all_graphs(n):
            v = classify(gamma)
            gbar = complement(gamma)
            assert (v.category or "Unrealizable") == reference_classify(gamma.vertices, gbar.edge_list())
            if v.realizable:
                validate_certificate(v.certificate, gbar)


def test_impossible_shape_is_rejected_under_every_anchor_map():
    for fx in FIXTURES:
        if fx.name in ("unreal_f4a", "unreal_f4b"):
            assert not check_cat1(fx.gbar).realizable
            assert not check_cat2(fx.gbar).realizable


def test_monochromatic_and_normalized_colorings_agree_on_small_graphs():
    for n in range(3, 6):
        for gbar in all_graphs(n):
            vs = gbar.vertices
            adj = adjacency(vs, gbar.edge_list())
            tris = all_triangles(vs, adj)
            if len(tris) != 1:
                continue
            cols = list(colorings(vs, adj))
            for a, b, c in permutations(sorted(tris[0])):
                roles = {2: a, 3: b, 5: c}
                if any(quad(adj, roles, r) not in ("F1a", "F1b") for r in vs if r not in (a, b, c)):
                    continue
                nb = adj[c] - {a, b}
                mono = any(len({col[x] for x in nb}) <= 1 for col in cols)
                norm = any(
                    col[c] == "D" and col[a] == "I" and col[b] == "O" and all(col[x] == "I" for x in nb)
                    for col in cols
                )
                assert mono == norm


@settings(max_examples=200, deadline=None)
@given(graphs(min_vertices=3, max_vertices=7))
def test_classifier_matches_reference(gbar):
    v = classify(complement(gbar))
    assert (v.category or "Unrealizable") == reference_classify(gbar.vertices, gbar.edge_list())
    adj = adjacency(gbar.vertices, gbar.edge_list())
    assert check_cat1(gbar).realizable == cat1_accepts(gbar.vertices, adj)
    assert check_cat2(gbar).realizable == bool(cat2_heads(gbar.vertices, adj))


@settings(max_examples=200, deadline=None)
@given(graphs(min_vertices=3, max_vertices=8))
def test_certificates_roundtrip_and_revalidate(gbar):
    v = classify(complement(gbar))
    if v.realizable:
        cert = parse_certificate(format_certificate(v.certificate))
        validate_certificate(cert, gbar)
