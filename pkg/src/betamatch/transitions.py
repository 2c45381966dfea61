"""Transition graph of the difference states D_n = T^n(0-) - T^n(0+).

Each step sends D to beta*D - (b - a), where a and b are the digits of the
two orbits.  An edge stores the signed offset b - a and the set of digit
pairs (b, a) that produced it, so its multiplicity is the number of
branches realising it.

A state with beta*D an integer is one step away from matching.  By default
such states are merged into the Matching node (the convention of the
tribonacci table); ``collapse_prematch=False`` keeps them as ordinary nodes
followed by one final edge to Matching.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field as dc_field

from .dynamics import critical_orbits
from .numberfield import FieldElement, NumberField

START = "Start"
MATCHING = "Matching"


class _Key:
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = v

    def __lt__(self, other):
        return self.v < other.v


@dataclass
class DifferenceGraph:
    field: NumberField
    collapse_prematch: bool = True
    nodes: set = dc_field(default_factory=set)       # FieldElement differences
    edges: dict = dc_field(default_factory=lambda: defaultdict(set))  # (src, dst, offset) -> {(b, a)}
    counts: dict = dc_field(default_factory=lambda: defaultdict(int))  # (src, dst, offset) -> observations

    def _node(self, d: FieldElement, n: int):
        if n == 0:
            return START
        if self.collapse_prematch and (self.field.beta * d).is_integer():
            return MATCHING
        self.nodes.add(d)
        return d

    def add_path(self, diffs, pairs, matched: bool):
        """Record a difference sequence D_0, D_1, ... with digit pairs (b, a) between them.

        ``matched`` says the last difference is one step before matching.
        """
        prev = self._node(diffs[0], 0)
        for n in range(1, len(diffs)):
            if prev == MATCHING:
                return
            cur = self._node(diffs[n], n)
            b, a = pairs[n - 1]
            key = (prev, cur, b - a)
            self.edges[key].add((b, a))
            self.counts[key] += 1
            prev = cur
        if matched and prev != MATCHING:
            j = (self.field.beta * diffs[-1]).as_fraction()
            key = (prev, MATCHING, int(j))
            self.edges[key]
            self.counts[key] += 1

    def merge(self, other: "DifferenceGraph") -> "DifferenceGraph":
        out = DifferenceGraph(self.field, self.collapse_prematch)
        for g in (self, other):
            out.nodes |= g.nodes
            for k, v in g.edges.items():
                out.edges[k] |= v
            for k, v in g.counts.items():
                out.counts[k] += v
        return out

    def node_values(self):
        """Exact value of every node (Start is 1, Matching has none)."""
        vals = {START: self.field.one}
        vals.update({d: d for d in self.nodes})
        return vals

    def all_nodes(self):
        return [START] + sort_nodes(self.nodes) + [MATCHING]

    def multiplicity(self, key) -> int:
        return len(self.edges[key])

    def edge_law_holds(self) -> bool:
        beta = self.field.beta
        vals = self.node_values()
        for src, dst, off in self.edges:
            nxt = beta * vals[src] - off
            if dst == MATCHING:
                if not ((beta * nxt).is_integer() or nxt.is_integer()):
                    return False
            elif nxt != vals[dst]:
                return False
        return True


def sort_nodes(nodes):
    return sorted(nodes, key=_Key)


def _pairs(dm, dp):
    return list(zip(dm, dp))


def build_graph(f: NumberField, source, depth: int | None = None,
                collapse_prematch: bool = True) -> DifferenceGraph:
    """Accumulate observed difference transitions.

    ``source`` is a SweepResult (every matched and unresolved piece
    contributes its itinerary) or an iterable of rational alphas, iterated
    ``depth`` steps or until matching.
    """
    g = DifferenceGraph(f, collapse_prematch)
    beta = f.beta
    if hasattr(source, "matched"):
        for item in list(source.matched) + list(source.unresolved):
            diffs = [f.one]
            d = f.one
            for dm, dp in zip(item.digits_minus, item.digits_plus):
                d = beta * d - (dm - dp)
                diffs.append(d)
            matched = hasattr(item, "m")
            g.add_path(diffs, _pairs(item.digits_minus, item.digits_plus), matched)
        return g
    if depth is None:
        raise ValueError("depth is required for sampled alphas")
    for alpha in source:
        plus, minus = critical_orbits(f, alpha, depth)
        diffs = [minus.points[0].value - plus.points[0].value]
        pairs = []
        matched = False
        for n in range(depth):
            if (beta * diffs[-1]).is_integer():
                matched = True
                break
            pairs.append((minus.digits[n], plus.digits[n]))
            diffs.append(minus.points[n + 1].value - plus.points[n + 1].value)
        g.add_path(diffs, pairs, matched)
    return g


@dataclass
class FinitenessReport:
    finite: bool
    bound: int
    node_count: int
    deeper_node_count: int | None
    lemma_ok: bool | None = None  # multinacci fields: every node decodes as a 0/1 code

    @property
    def kind(self):
        return "FiniteWithin" if self.finite else "GrewBeyond"

    def __str__(self):
        return f"{self.kind}({self.bound}): {self.node_count} difference nodes"


def finiteness_check(graph: DifferenceGraph, f: NumberField, deeper: DifferenceGraph | None = None,
                     bound: int | None = None) -> FinitenessReport:
    """Node count is stable when the depth is increased (``deeper`` built with more steps)."""
    from .multinacci import code_of_difference, is_multinacci
    from .errors import NotACode

    count = len(graph.nodes)
    deeper_count = None if deeper is None else len(deeper.nodes)
    finite = deeper_count is None or deeper_count == count
    lemma = None
    if is_multinacci(f):
        lemma = True
        for d in graph.nodes | (deeper.nodes if deeper is not None else set()):
            try:
                code_of_difference(f, d)
            except NotACode:
                lemma = False
        finite = finite and lemma
    return FinitenessReport(finite, count if bound is None else bound, count, deeper_count, lemma)


def node_label(graph: DifferenceGraph, node) -> str:
    if node in (START, MATCHING):
        return node
    from .multinacci import code_of_difference, is_multinacci
    if is_multinacci(graph.field):
        try:
            return code_of_difference(graph.field, node).label
        except Exception:
            pass
    return node.to_decimal(6)


def labeled_edges(graph: DifferenceGraph):
    """Edges as (source label, target label, table label), with table label = sign(D) * offset."""
    out = set()
    for src, dst, off in graph.edges:
        if src == START:
            continue
        s = node_label(graph, src)
        t = node_label(graph, dst)
        out.add((s, t, off if src.sign() > 0 else -off))
    return out


def export_dot(graph: DifferenceGraph) -> str:
    """Deterministic DOT text; edges out of Start are drawn dashed without label."""
    order = graph.all_nodes()
    names = {node: f"n{i}" for i, node in enumerate(order)}
    lines = ["digraph differences {", "  rankdir=LR;"]
    for node in order:
        label = node_label(graph, node)
        if node == MATCHING:
            lines.append(f'  {names[node]} [label="{label}", shape=doublecircle, color=red];')
        elif node == START:
            lines.append(f'  {names[node]} [label="{label} (1)", shape=box, style=bold];')
        else:
            lines.append(f'  {names[node]} [label="{label}", shape=box];')
    rank = {node: i for i, node in enumerate(order)}
    for src, dst, off in sorted(graph.edges, key=lambda e: (rank[e[0]], rank[e[1]], e[2])):
        if src == START:
            lines.append(f"  {names[src]} -> {names[dst]} [style=dashed];")
        else:
            mult = graph.multiplicity((src, dst, off))
            extra = f" x{mult}" if mult > 1 else ""
            lines.append(f'  {names[src]} -> {names[dst]} [label="{off}{extra}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(graph: DifferenceGraph) -> dict:
    order = graph.all_nodes()
    idx = {node: i for i, node in enumerate(order)}
    nodes = []
    for node in order:
        entry = {"id": idx[node], "label": node_label(graph, node)}
        if node == START:
            entry["coeffs"] = graph.field.one.coeff_strings()
        elif node != MATCHING:
            entry["coeffs"] = node.coeff_strings()
            entry["decimal"] = node.to_decimal(12)
        nodes.append(entry)
    edges = [
        {"from": idx[s], "to": idx[t], "offset": off, "multiplicity": graph.multiplicity((s, t, off)),
         "observations": graph.counts[(s, t, off)]}
        for s, t, off in sorted(graph.edges, key=lambda e: (idx[e[0]], idx[e[1]], e[2]))
    ]
    return {"field": graph.field.to_json(), "collapse_prematch": graph.collapse_prematch,
            "nodes": nodes, "edges": edges}


def to_json_text(graph: DifferenceGraph) -> str:
    return json.dumps(to_json(graph), indent=1)
