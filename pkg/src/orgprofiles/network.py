"""Co-occurrence network over organizational units.

Nodes are canonical units; an edge weight counts the distinct publications
in which both endpoint units occur (publication-level binary counting, so a
paper listing a pair of units in several address lines still adds one).
Centrality uses shortest-path betweenness on the unweighted skeleton,
accumulated over unordered node pairs without normalization; edge weights
act purely as a display cutoff.
"""

from __future__ import annotations

import csv
import heapq
import xml.etree.ElementTree as ET
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, count
from pathlib import Path
from typing import Collection, Iterable, Mapping

from .units import CanonicalUnit

EXPORT_FORMATS = ("graphml", "dot", "edge_csv")

_GRAPHML_XMLNS = "http://graphml.graphdrawing.org/xmlns"


def edge_key(a: str, b: str) -> tuple[str, str]:
    """Canonical unordered node pair."""
    return (a, b) if a <= b else (b, a)


@dataclass
class OrgNetwork:
    """Weighted undirected co-occurrence graph with per-node attributes.

    ``betweenness`` stays None until computed; thresholded copies keep the
    values of the network they were derived from, so display exports carry
    full-network centrality.
    """

    units: dict[str, CanonicalUnit]
    pub_counts: dict[str, int]
    edges: dict[tuple[str, str], int]
    betweenness: dict[str, float] | None = field(default=None)

    def __post_init__(self) -> None:
        for name in self.units:
            if self.pub_counts.get(name, 0) <= 0:
                raise ValueError(f"node {name!r} needs a positive publication count")
        for (a, b), weight in self.edges.items():
            if a == b:
                raise ValueError(f"self-loop on {a!r}")
            if (a, b) != edge_key(a, b):
                raise ValueError(f"edge {(a, b)!r} is not in canonical order")
            if a not in self.units or b not in self.units:
                raise ValueError(f"edge {(a, b)!r} references an unknown node")
            if not isinstance(weight, int) or weight <= 0:
                raise ValueError(f"edge {(a, b)!r} needs a positive integer weight")
            if weight > min(self.pub_counts[a], self.pub_counts[b]):
                raise ValueError(
                    f"edge {(a, b)!r} weight {weight} exceeds an endpoint's publication count"
                )

    def node_names(self) -> list[str]:
        return sorted(self.units)

    def adjacency(self) -> dict[str, tuple[str, ...]]:
        """Sorted neighbor lists (sorted nodes too, so traversals are deterministic)."""
        neighbors: dict[str, list[str]] = {name: [] for name in self.units}
        for a, b in self.edges:
            neighbors[a].append(b)
            neighbors[b].append(a)
        return {name: tuple(sorted(neighbors[name])) for name in sorted(neighbors)}

    def degree(self, name: str) -> int:
        return sum(1 for pair in self.edges if name in pair)


def build_network(per_record_units: Iterable[Collection[CanonicalUnit]]) -> OrgNetwork:
    """Accumulate the co-occurrence graph from per-record (deduped) unit sets.

    Every unordered pair of distinct units inside one record adds 1 to that
    edge; a node's publication count is the number of records containing it.
    """
    units: dict[str, CanonicalUnit] = {}
    pub_counts: dict[str, int] = {}
    edges: dict[tuple[str, str], int] = {}
    for unit_set in per_record_units:
        by_name = {unit.name: unit for unit in unit_set}
        for name, unit in by_name.items():
            units.setdefault(name, unit)
            pub_counts[name] = pub_counts.get(name, 0) + 1
        for pair in combinations(sorted(by_name), 2):
            edges[pair] = edges.get(pair, 0) + 1
    return OrgNetwork(units=units, pub_counts=pub_counts, edges=edges)


def apply_threshold(
    net: OrgNetwork, min_weight: int, drop_isolated: bool, *, strict: bool = True
) -> OrgNetwork:
    """Display filter: keep edges above the co-occurrence cutoff.

    ``strict`` keeps weights > ``min_weight`` (the usual "minimum
    co-occurrence value >5" reading); non-strict keeps >=.  Nodes left with
    degree 0 are removed when ``drop_isolated``.  Centrality values, if
    present, are carried over unchanged.
    """
    if min_weight < 0:
        raise ValueError("min_weight must be >= 0")
    if strict:
        kept_edges = {pair: w for pair, w in net.edges.items() if w > min_weight}
    else:
        kept_edges = {pair: w for pair, w in net.edges.items() if w >= min_weight}

    if drop_isolated:
        kept_nodes = {name for pair in kept_edges for name in pair}
    else:
        kept_nodes = set(net.units)

    return OrgNetwork(
        units={name: net.units[name] for name in kept_nodes},
        pub_counts={name: net.pub_counts[name] for name in kept_nodes},
        edges=kept_edges,
        betweenness=(
            None
            if net.betweenness is None
            else {name: net.betweenness[name] for name in kept_nodes}
        ),
    )


def connected_components(net: OrgNetwork) -> list[set[str]]:
    """Maximal connected node sets, largest first (ties: smallest member name)."""
    adjacency = net.adjacency()
    remaining = set(adjacency)
    components: list[set[str]] = []
    for start in sorted(adjacency):
        if start not in remaining:
            continue
        component = {start}
        queue = deque([start])
        remaining.discard(start)
        while queue:
            node = queue.popleft()
            for neighbor in adjacency[node]:
                if neighbor in remaining:
                    remaining.discard(neighbor)
                    component.add(neighbor)
                    queue.append(neighbor)
        components.append(component)
    return sorted(components, key=lambda c: (-len(c), min(c)))


def _shortest_paths_bfs(adjacency, source):
    order = []
    preds: dict[str, list[str]] = {node: [] for node in adjacency}
    sigma = dict.fromkeys(adjacency, 0)
    sigma[source] = 1
    dist = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        order.append(node)
        for neighbor in adjacency[node]:
            if neighbor not in dist:
                dist[neighbor] = dist[node] + 1
                queue.append(neighbor)
            if dist[neighbor] == dist[node] + 1:
                sigma[neighbor] += sigma[node]
                preds[neighbor].append(node)
    return order, preds, sigma


def _shortest_paths_dijkstra(adjacency, edge_weights, source):
    # Exploration mode: geodesics under inverse-weight lengths, so heavier
    # co-occurrence means a shorter tie.
    order = []
    preds: dict[str, list[str]] = {node: [] for node in adjacency}
    sigma = dict.fromkeys(adjacency, 0)
    sigma[source] = 1
    final: dict[str, float] = {}
    seen = {source: 0.0}
    tiebreak = count()
    heap = [(0.0, next(tiebreak), source)]
    while heap:
        d, _, node = heapq.heappop(heap)
        if node in final:
            continue
        final[node] = d
        order.append(node)
        for neighbor in adjacency[node]:
            if neighbor in final:
                continue
            reach = d + 1.0 / edge_weights[edge_key(node, neighbor)]
            if neighbor not in seen or reach < seen[neighbor]:
                seen[neighbor] = reach
                sigma[neighbor] = sigma[node]
                preds[neighbor] = [node]
                heapq.heappush(heap, (reach, next(tiebreak), neighbor))
            elif reach == seen[neighbor]:
                sigma[neighbor] += sigma[node]
                preds[neighbor].append(node)
    return order, preds, sigma


def compute_betweenness(net: OrgNetwork, *, weighted: bool = False) -> dict[str, float]:
    """Unnormalized shortest-path betweenness per node.

    For every unordered pair {s, t} each node v strictly between them earns
    the fraction of shortest s-t paths passing through v; node pairs in
    different components contribute nothing.  Path length ignores edge
    weights unless ``weighted`` is set (exploration only).
    """
    adjacency = net.adjacency()
    centrality = dict.fromkeys(adjacency, 0.0)
    for source in adjacency:
        if weighted:
            order, preds, sigma = _shortest_paths_dijkstra(adjacency, net.edges, source)
        else:
            order, preds, sigma = _shortest_paths_bfs(adjacency, source)
        delta = dict.fromkeys(order, 0.0)
        for node in reversed(order):
            coeff = (1.0 + delta[node]) / sigma[node]
            for pred in preds[node]:
                delta[pred] += sigma[pred] * coeff
            if node != source:
                centrality[node] += delta[node]
    # Each unordered pair was accumulated from both endpoints.
    return {node: value / 2.0 for node, value in centrality.items()}


def _require_betweenness(net: OrgNetwork) -> Mapping[str, float]:
    if net.betweenness is None:
        raise ValueError("betweenness has not been computed for this network")
    return net.betweenness


def write_graphml(net: OrgNetwork, path: str | Path) -> None:
    """GraphML export; unit_type doubles as the color class, betweenness as size."""
    betweenness = _require_betweenness(net)
    root = ET.Element("graphml", {"xmlns": _GRAPHML_XMLNS})
    for key_id, target, attr_type in (
        ("unit_type", "node", "string"),
        ("publications", "node", "int"),
        ("betweenness", "node", "double"),
        ("weight", "edge", "int"),
    ):
        ET.SubElement(
            root, "key", {"id": key_id, "for": target, "attr.name": key_id, "attr.type": attr_type}
        )
    graph = ET.SubElement(root, "graph", {"edgedefault": "undirected"})
    for name in net.node_names():
        node = ET.SubElement(graph, "node", {"id": name})
        ET.SubElement(node, "data", {"key": "unit_type"}).text = net.units[name].unit_type
        ET.SubElement(node, "data", {"key": "publications"}).text = str(net.pub_counts[name])
        ET.SubElement(node, "data", {"key": "betweenness"}).text = f"{betweenness[name]:.6f}"
    for (a, b) in sorted(net.edges):
        edge = ET.SubElement(graph, "edge", {"source": a, "target": b})
        ET.SubElement(edge, "data", {"key": "weight"}).text = str(net.edges[(a, b)])
    tree = ET.ElementTree(root)
    ET.indent(tree)
    tree.write(path, encoding="utf-8", xml_declaration=True)


def read_graphml(path: str | Path) -> OrgNetwork:
    """Re-import a network written by :func:`write_graphml`."""
    root = ET.parse(path).getroot()

    def local(tag: str) -> str:
        return tag.rsplit("}", 1)[-1]

    key_names = {}
    for child in root:
        if local(child.tag) == "key":
            key_names[child.attrib["id"]] = child.attrib.get("attr.name", child.attrib["id"])

    units: dict[str, CanonicalUnit] = {}
    pub_counts: dict[str, int] = {}
    betweenness: dict[str, float] = {}
    edges: dict[tuple[str, str], int] = {}
    saw_betweenness = False
    for child in root:
        if local(child.tag) != "graph":
            continue
        for element in child:
            data = {
                key_names.get(d.attrib["key"], d.attrib["key"]): (d.text or "")
                for d in element
                if local(d.tag) == "data"
            }
            if local(element.tag) == "node":
                name = element.attrib["id"]
                units[name] = CanonicalUnit(name=name, unit_type=data.get("unit_type", "other"))
                pub_counts[name] = int(data.get("publications", "1"))
                if "betweenness" in data:
                    saw_betweenness = True
                    betweenness[name] = float(data["betweenness"])
            elif local(element.tag) == "edge":
                pair = edge_key(element.attrib["source"], element.attrib["target"])
                edges[pair] = int(data.get("weight", "1"))
    return OrgNetwork(
        units=units,
        pub_counts=pub_counts,
        edges=edges,
        betweenness=betweenness if saw_betweenness else None,
    )


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_dot(net: OrgNetwork, path: str | Path) -> None:
    """DOT export with the same attributes as the GraphML writer."""
    betweenness = _require_betweenness(net)
    lines = ["graph org_network {"]
    for name in net.node_names():
        lines.append(
            f"  {_dot_quote(name)} [unit_type={_dot_quote(net.units[name].unit_type)}, "
            f"publications={net.pub_counts[name]}, betweenness={betweenness[name]:.6f}];"
        )
    for (a, b) in sorted(net.edges):
        lines.append(f"  {_dot_quote(a)} -- {_dot_quote(b)} [weight={net.edges[(a, b)]}];")
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_edge_csv(net: OrgNetwork, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["source", "target", "weight"])
        for (a, b) in sorted(net.edges):
            writer.writerow([a, b, net.edges[(a, b)]])


def write_node_csv(net: OrgNetwork, path: str | Path) -> None:
    """Node table: name, type, publication count, betweenness (6 decimals)."""
    betweenness = _require_betweenness(net)
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["name", "type", "P", "betweenness"])
        for name in net.node_names():
            writer.writerow(
                [name, net.units[name].unit_type, net.pub_counts[name], f"{betweenness[name]:.6f}"]
            )


def export_graph(net: OrgNetwork, fmt: str, path: str | Path) -> None:
    """Write the network in one of ``graphml``, ``dot`` or ``edge_csv``."""
    if fmt == "graphml":
        write_graphml(net, path)
    elif fmt == "dot":
        write_dot(net, path)
    elif fmt == "edge_csv":
        write_edge_csv(net, path)
    else:
        raise ValueError(f"unknown export format {fmt!r} (expected one of {EXPORT_FORMATS})")
