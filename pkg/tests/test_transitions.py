from fractions import Fraction

import pytest

from betamatch.dynamics import rational_grid
from betamatch.multinacci import code_of_difference
from betamatch.paramsweep import sweep
from betamatch.quadratic import quadratic_case
from betamatch.transitions import (MATCHING, START, DifferenceGraph, build_graph, export_dot,
                                   finiteness_check, labeled_edges, node_label, to_json)

# the fiber table, written out per sign: (source, target, label)
TABLE = """
001 0 =010
001 1 ~101
010 0 M
010 1 ~011
011 0 =110
011 1 ~001
101 1 =010
101 2 ~101
110 1 M
110 2 ~011
"""


def expected_edges():
    out = set()
    for line in TABLE.split("\n"):
        if not line.strip():
            continue
        src, label, dst = line.split()
        for s in "+-":
            flip = {"+": "-", "-": "+"}[s]
            if dst == "M":
                t = MATCHING
            else:
                t = (s if dst[0] == "=" else flip) + dst[1:]
            out.add((s + src, t, int(label)))
    return out


@pytest.fixture(scope="module")
def tri_graph(tribonacci):
    return build_graph(tribonacci, sweep(tribonacci, 12))


def test_tribonacci_graph_is_the_table(tri_graph):
    labels = {node_label(tri_graph, n) for n in tri_graph.all_nodes()}
    assert labels == {s + c for c in ("001", "010", "011", "101", "110") for s in "+-"} | {START, MATCHING}
    assert labeled_edges(tri_graph) == expected_edges()


def test_tribonacci_graph_from_samples(tribonacci):
    alphas = rational_grid(Fraction(0), Fraction(1), 200, closed=False)
    g = build_graph(tribonacci, alphas, depth=20)
    assert labeled_edges(g) == expected_edges()


def test_dot_counts(tri_graph):
    dot = export_dot(tri_graph)
    assert dot.count("shape=") == 12
    assert dot.count("label=") - 12 == 20
    assert dot.count("style=dashed") == 2
    assert export_dot(tri_graph) == dot


def test_empty_graph(golden):
    dot = export_dot(DifferenceGraph(golden))
    assert '"Start (1)"' in dot and '"Matching"' in dot and "->" not in dot


def test_quadratic_plus_d_shape(k5p3):
    case = quadratic_case(k5p3)
    g = build_graph(k5p3, sweep(k5p3, 8), collapse_prematch=False)
    gamma, pre = case.gamma, -case.d * k5p3.beta.inverse()
    assert g.nodes == {gamma, pre}
    loops = [e for e in g.edges if e[0] == gamma and e[1] == gamma]
    mult = sum(g.multiplicity(e) for e in loops)
    assert mult in (case.d, case.d + 1)
    assert any(e[0] == START and e[1] == gamma for e in g.edges)
    assert any(e[0] == gamma and e[1] == pre for e in g.edges)
    assert [e for e in g.edges if e[0] == pre] == [(pre, MATCHING, -case.d)]
    assert len(g.all_nodes()) == 4
    assert g.edge_law_holds()


def test_integer_slope(two):
    g = build_graph(two, [Fraction(1, 3), Fraction(1, 2)], depth=5)
    assert g.nodes == set()
    assert {(e[0], e[1]) for e in g.edges} == {(START, MATCHING)}


def test_edge_law_and_determinism(tribonacci, tri_graph):
    assert tri_graph.edge_law_holds()
    again = build_graph(tribonacci, sweep(tribonacci, 12))
    assert export_dot(again) == export_dot(tri_graph)
    assert to_json(again) == to_json(tri_graph)


def test_merge(tribonacci):
    a = build_graph(tribonacci, [Fraction(1, 7), Fraction(2, 7)], depth=20)
    b = build_graph(tribonacci, [Fraction(3, 7)], depth=20)
    c = build_graph(tribonacci, [Fraction(5, 7), Fraction(6, 7)], depth=20)
    left = a.merge(b).merge(c)
    right = a.merge(b.merge(c))
    assert export_dot(left) == export_dot(right) == export_dot(c.merge(b).merge(a))


def test_finiteness(tribonacci, golden, non_pisot):
    g12 = build_graph(tribonacci, sweep(tribonacci, 12))
    g16 = build_graph(tribonacci, sweep(tribonacci, 16))
    rep = finiteness_check(g12, tribonacci, deeper=g16)
    assert rep.finite and rep.lemma_ok and rep.node_count <= 12
    gg = build_graph(golden, sweep(golden, 14))
    rep = finiteness_check(gg, golden, deeper=build_graph(golden, sweep(golden, 16)))
    assert rep.finite and len(gg.all_nodes()) <= 5
    gn = build_graph(non_pisot, sweep(non_pisot, 6))
    report = finiteness_check(gn, non_pisot, deeper=build_graph(non_pisot, sweep(non_pisot, 8)))
    assert report.kind in ("FiniteWithin", "GrewBeyond")


def test_multinacci_nodes_decode(tetrabonacci):
    g = build_graph(tetrabonacci, sweep(tetrabonacci, 12), collapse_prematch=False)
    for d in g.nodes:
        code = code_of_difference(tetrabonacci, d)
        assert len(code.bits) == 4


def test_json_export(tri_graph):
    data = to_json(tri_graph)
    assert data["nodes"][0]["label"] == START and data["nodes"][-1]["label"] == MATCHING
    assert len(data["edges"]) == 22
    assert all(e["multiplicity"] >= 1 for e in data["edges"] if e["from"] != 0)
