"""Arena topologies: regular lattice, Erdős–Rényi, Barabási–Albert, geometric.

All generators are pure functions of their parameters and seed and return
the same `Graph` regardless of call order or platform. Sizes and average
degrees default to the study scale: 25 nodes with mean degree roughly
4 to 6 depending on the model.
"""

import json
import random
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .delaunay import triangulate, triangulation_edges

ER_CONNECT_ATTEMPTS = 10_000


class GenerationFailure(RuntimeError):
    """A stochastic generator exhausted its retry budget."""


class Point2D(NamedTuple):
    x: float
    y: float


class Graph:
    """Undirected simple graph over contiguous node ids 0..n-1.

    Edges are canonicalized to (i, j) with i < j and kept lexicographically
    sorted; adjacency lists are derived and sorted. `positions` is carried
    only by generators with a geometric embedding.
    """

    def __init__(self, node_count: int, edges, positions=None):
        if node_count < 1:
            raise ValueError("node_count must be >= 1")
        canonical = set()
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at node {i}")
            if not (0 <= i < node_count and 0 <= j < node_count):
                raise ValueError(f"edge ({i}, {j}) references a node outside 0..{node_count - 1}")
            canonical.add((i, j) if i < j else (j, i))
        self.node_count = node_count
        self.edges = sorted(canonical)
        self.adjacency = [[] for _ in range(node_count)]
        for i, j in self.edges:
            self.adjacency[i].append(j)
            self.adjacency[j].append(i)
        for neighbors in self.adjacency:
            neighbors.sort()
        if positions is not None:
            if len(positions) != node_count:
                raise ValueError("positions length must equal node_count")
            positions = [Point2D(float(x), float(y)) for x, y in positions]
        self.positions = positions
        self._csr = None

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.node_count == other.node_count
            and self.edges == other.edges
        )

    def __repr__(self):
        return f"Graph(n={self.node_count}, m={len(self.edges)})"

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def average_degree(self) -> float:
        return 2.0 * len(self.edges) / self.node_count

    def degrees(self):
        return [len(neighbors) for neighbors in self.adjacency]

    def neighbors(self, node: int):
        return self.adjacency[node]

    def csr(self):
        """Adjacency in CSR form (indptr int64, indices int32) for the jitted engine."""
        if self._csr is None:
            indptr = np.zeros(self.node_count + 1, dtype=np.int64)
            for node, neighbors in enumerate(self.adjacency):
                indptr[node + 1] = indptr[node] + len(neighbors)
            indices = np.empty(indptr[-1], dtype=np.int32)
            offset = 0
            for neighbors in self.adjacency:
                for v in neighbors:
                    indices[offset] = v
                    offset += 1
            self._csr = (indptr, indices)
        return self._csr

    def is_connected(self) -> bool:
        if self.node_count == 1:
            return True
        seen = [False] * self.node_count
        stack = [0]
        seen[0] = True
        reached = 1
        while stack:
            u = stack.pop()
            for v in self.adjacency[u]:
                if not seen[v]:
                    seen[v] = True
                    reached += 1
                    stack.append(v)
        return reached == self.node_count

    def to_dict(self) -> dict:
        doc = {"n": self.node_count, "edges": [list(e) for e in self.edges]}
        if self.positions is not None:
            doc["positions"] = [[p.x, p.y] for p in self.positions]
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "Graph":
        return cls(doc["n"], [tuple(e) for e in doc["edges"]], doc.get("positions"))


def validate_graph(graph: Graph) -> None:
    """Assert the structural invariants; raises AssertionError on breach."""
    assert graph.node_count >= 1
    seen = set()
    for i, j in graph.edges:
        assert 0 <= i < j < graph.node_count, f"bad edge ({i}, {j})"
        assert (i, j) not in seen, f"duplicate edge ({i}, {j})"
        seen.add((i, j))
    assert graph.edges == sorted(graph.edges)
    for u in range(graph.node_count):
        for v in graph.adjacency[u]:
            assert u != v
            assert u in graph.adjacency[v], f"asymmetric adjacency {u}->{v}"


def save_graph(graph: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(graph.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_graph(path) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return Graph.from_dict(json.load(fh))


def make_reg(side: int) -> Graph:
    """Non-periodic side x side lattice with Moore (8-connected) neighborhoods.

    side=5 gives 25 nodes, 72 edges and average degree exactly 5.76.
    """
    if side < 1:
        raise ValueError("side must be >= 1")
    edges = []
    for r in range(side):
        for c in range(side):
            u = r * side + c
            for dr, dc in ((0, 1), (1, -1), (1, 0), (1, 1)):
                nr, nc = r + dr, c + dc
                if 0 <= nr < side and 0 <= nc < side:
                    edges.append((u, nr * side + nc))
    positions = [Point2D(float(c), float(r)) for r in range(side) for c in range(side)]
    return Graph(side * side, edges, positions)


def make_er(n: int, avg_degree: float, seed: int) -> Graph:
    """Connected G(n, p) with p = avg_degree / (n - 1), resampled until connected."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not (0.0 < avg_degree <= n - 1):
        raise ValueError(f"avg_degree must be in (0, {n - 1}]")
    p = avg_degree / (n - 1)
    rng = random.Random(seed)
    for _ in range(ER_CONNECT_ATTEMPTS):
        edges = [
            (i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p
        ]
        graph = Graph(n, edges)
        if graph.is_connected():
            return graph
    raise GenerationFailure(
        f"no connected G({n}, p={p:.4g}) found in {ER_CONNECT_ATTEMPTS} attempts"
    )


def make_ba(n: int, m: int, m0: int, seed: int) -> Graph:
    """Barabási–Albert growth from an m0-node ring, m preferential links per new node.

    Edge count is exactly m0 + m * (n - m0); n=25, m=2, m0=3 gives the study's
    average degree 3.76.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if m0 < 3:
        raise ValueError("m0 must be >= 3 (the seed ring needs m0 edges)")
    if m > m0:
        raise ValueError("m must not exceed m0")
    if n < m0:
        raise ValueError("n must be >= m0")
    rng = random.Random(seed)
    edges = [(i, (i + 1) % m0) for i in range(m0)]
    # One entry per degree unit; sampling from it is degree-preferential.
    repeated = [node for edge in edges for node in edge]
    for new in range(m0, n):
        targets = set()
        while len(targets) < m:
            targets.add(repeated[rng.randrange(len(repeated))])
        for t in sorted(targets):
            edges.append((t, new))
            repeated.append(t)
        repeated.extend([new] * m)
    return Graph(n, edges)


def make_geo(side: int, perturbation: float, seed: int) -> Graph:
    """Delaunay graph of a jittered side x side grid.

    Each coordinate is displaced by an independent uniform draw in
    [-perturbation, +perturbation] lattice spacings; perturbation must stay
    below 0.5 so points remain distinct.
    """
    if side < 2:
        raise ValueError("side must be >= 2")
    if not (0.0 <= perturbation < 0.5):
        raise ValueError("perturbation must be in [0, 0.5)")
    rng = random.Random(seed)
    points = []
    for r in range(side):
        for c in range(side):
            points.append(
                Point2D(
                    c + rng.uniform(-perturbation, perturbation),
                    r + rng.uniform(-perturbation, perturbation),
                )
            )
    edges = triangulation_edges(points)
    return Graph(side * side, edges, points)


def delaunay(points: Sequence[Point2D]):
    """Delaunay edge set of arbitrary points; see `delaunay.triangulate` for guarantees."""
    return triangulation_edges(points)


def delaunay_triangles(points: Sequence[Point2D]):
    """Index triples of the Delaunay triangles (used by the circumcircle audit)."""
    return triangulate(points)
