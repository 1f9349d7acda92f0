"""Serialization of the quotient graph: canonical JSON, DOT, and text.

The JSON form is self-contained: it records the field size, the
ramified primes, the derived algebra constants, and the full labeled
graph, with every label in the exact text forms of the parsers in
:mod:`btquot.algebra`, :mod:`btquot.tree` and :mod:`btquot.quaternion`.
Reading it back rebuilds the same graph without re-running the search,
and re-serializing reproduces the bytes exactly.

Directed edges are stored once each.  A ``tree`` label marks a
spanning-tree edge, an ``opposite`` label marks the reversal of
whatever its partner edge (same index, endpoints swapped) carries, and
a pairing label is an object naming the pairing unit and the tree edge
it identifies with its partner.
"""

from __future__ import annotations

import json

from .algebra import field, format_poly, parse_poly
from .quaternion import build_algebra, format_quat, parse_quat
from .quotient import QuotientEdge, QuotientGraph, transport
from .tree import distance, format_vertex, parse_vertex

FORMAT_VERSION = 1


# ---------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------

def graph_to_json_dict(G: QuotientGraph) -> dict:
    alg = G.alg
    F = alg.F
    vertices = []
    for i, v in enumerate(G.vertices):
        entry = {"id": i, "nf": format_vertex(v), "stable": G.stable[i]}
        if i in G.end_basis:
            entry["end_basis"] = [format_quat(F, b)
                                  for b in G.end_basis[i]]
        vertices.append(entry)
    edges = []
    for e in G.edges:
        if e.kind == "tree":
            label = "tree"
        elif e.kind in ("opposite", "pairing_opposite"):
            label = "opposite"
        else:
            label = {"pairing": format_quat(F, e.elem),
                     "tree_edge": [format_vertex(G.vertices[e.src]),
                                   format_vertex(e.direction)]}
        edges.append({"src": e.src, "dst": e.dst, "index": e.index,
                      "label": label})
    return {
        "format": FORMAT_VERSION,
        "q": F.q,
        "primes": [format_poly(F, p) for p in alg.ram.primes],
        "alpha": format_poly(F, alg.alpha),
        "epsilon": format_poly(F, alg.epsilon),
        "nu": format_poly(F, alg.nu),
        "initial_vertex": format_vertex(G.vertices[G.initial]),
        "vertices": vertices,
        "edges": edges,
    }


def graph_to_json(G: QuotientGraph) -> str:
    return json.dumps(graph_to_json_dict(G), indent=2) + "\n"


def graph_from_json(text: str) -> QuotientGraph:
    """Rebuild a graph from its JSON form (also rebuilding the algebra;
    the stored alpha/epsilon/nu must match the derived ones)."""
    data = json.loads(text)
    if data.get("format") != FORMAT_VERSION:
        raise ValueError(f"unsupported format version {data.get('format')}")
    F = field(data["q"])
    primes = [parse_poly(F, t) for t in data["primes"]]
    alg = build_algebra(F, primes)
    for key, val in (("alpha", alg.alpha), ("epsilon", alg.epsilon),
                     ("nu", alg.nu)):
        if parse_poly(F, data[key]) != val:
            raise ValueError(f"stored {key} does not match the derived one")

    G = QuotientGraph(alg)
    for entry in sorted(data["vertices"], key=lambda d: d["id"]):
        v = parse_vertex(F, entry["nf"])
        basis = None
        if "end_basis" in entry:
            basis = tuple(parse_quat(F, t) for t in entry["end_basis"])
        i = G._add_vertex(v, stable=entry["stable"], basis=basis, level=0)
        if i != entry["id"]:
            raise ValueError("vertex ids must be dense and sorted")
    init = parse_vertex(F, data["initial_vertex"])
    if init not in G.vid:
        raise ValueError("initial vertex is not among the vertices")
    G.initial = G.vid[init]
    G.level = [distance(F, init, v) for v in G.vertices]
    G.levels = max(G.level, default=0)

    primary = {}
    for entry in data["edges"]:
        if isinstance(entry["label"], dict):
            key = (entry["src"], entry["dst"], entry["index"])
            primary[key] = entry["label"]
    for entry in data["edges"]:
        src, dst, index = entry["src"], entry["dst"], entry["index"]
        label = entry["label"]
        if label == "tree":
            e = QuotientEdge(src, dst, index, "tree", G.vertices[dst])
        elif isinstance(label, dict):
            elem = parse_quat(F, label["pairing"])
            cand = parse_vertex(F, label["tree_edge"][1])
            if parse_vertex(F, label["tree_edge"][0]) != G.vertices[src]:
                raise ValueError("pairing tree edge must start at the "
                                 "source vertex label")
            e = QuotientEdge(src, dst, index, "pairing", cand, elem)
        elif label == "opposite":
            partner = primary.get((dst, src, index))
            if partner is None:
                e = QuotientEdge(src, dst, index, "opposite",
                                 G.vertices[dst])
            else:
                elem = parse_quat(F, partner["pairing"])
                e = QuotientEdge(src, dst, index, "pairing_opposite",
                                 transport(alg, elem, G.vertices[dst]),
                                 elem)
        else:
            raise ValueError(f"unknown edge label {label!r}")
        G._add_edge(e)
    G.pairings = [k for k, e in enumerate(G.edges) if e.kind == "pairing"]
    return G


# ---------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------

def graph_to_dot(G: QuotientGraph) -> str:
    """Undirected DOT rendering: internal vertices filled, terminal
    vertices open, paired edges labeled by their generator names."""
    gen_name = {k: f"g{t + 1}" for t, k in enumerate(G.pairings)}
    lines = ["graph quotient {", "  node [shape=circle];"]
    for i, v in enumerate(G.vertices):
        style = "filled" if G.stable[i] else "solid"
        lines.append(f'  v{i} [label="{format_vertex(v)}", style={style}];')
    for k, e in enumerate(G.edges):
        if e.kind == "tree":
            lines.append(f"  v{e.src} -- v{e.dst};")
        elif e.kind == "pairing":
            lines.append(f'  v{e.src} -- v{e.dst} '
                         f'[label="{gen_name[k]}", style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------
# text
# ---------------------------------------------------------------------

def graph_to_text(G: QuotientGraph) -> str:
    """Terminal-friendly summary of the graph."""
    alg = G.alg
    F = alg.F
    lines = [
        f"quotient graph over F_{F.q}, ramified at "
        + ", ".join(format_poly(F, p) for p in alg.ram.primes),
        f"alpha = {format_poly(F, alg.alpha)}",
        f"{len(G.vertices)} vertices "
        f"({len(G.terminal_ids())} terminal), "
        f"{len(G.edges) // 2} undirected edges, "
        f"{len(G.pairings)} paired",
        f"initial vertex {format_vertex(G.vertices[G.initial])}",
        "",
    ]
    for i, v in enumerate(G.vertices):
        kind = "terminal" if not G.stable[i] else "internal"
        lines.append(f"  v{i} = {format_vertex(v)}  [{kind}]")
    lines.append("")
    gen_name = {k: f"g{t + 1}" for t, k in enumerate(G.pairings)}
    for k, e in enumerate(G.edges):
        if e.kind == "tree":
            lines.append(f"  v{e.src} -- v{e.dst}")
        elif e.kind == "pairing":
            lines.append(
                f"  v{e.src} -- v{e.dst}  [{gen_name[k]}: "
                f"{format_quat(F, e.elem)}; candidate "
                f"{format_vertex(e.direction)}]")
    return "\n".join(lines) + "\n"
