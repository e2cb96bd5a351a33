import logging
from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, Optional

import networkx as nx
from cachetools import LRUCache

from app.config import get_settings
from app.schemas import GraphMetrics

logger = logging.getLogger(__name__)

Edge = tuple[int, int]

# Global metrics cache, created on first use
_metrics_cache: Optional[LRUCache] = None


class GraphError(Exception):
    """Raised when a graph cannot be built or measured."""
    pass


class ExactLimitError(GraphError):
    """Raised when an exact computation is requested above its configured size limit."""
    pass


class Graph:
    """
    Simple undirected graph on vertices 0..n-1.

    Edges are kept as pairs (u, v) with u < v, sorted lexicographically.
    Position in ``edges`` is the global edge index used by colourings.
    Instances are immutable once built.
    """

    __slots__ = ("n", "edges", "adjacency", "_incident", "_index", "_hash")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")

        canonical: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            canonical.add((u, v) if u < v else (v, u))

        ordered = tuple(sorted(canonical))
        neighbours: list[list[int]] = [[] for _ in range(n)]
        incident: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for index, (u, v) in enumerate(ordered):
            neighbours[u].append(v)
            neighbours[v].append(u)
            incident[u].append((v, index))
            incident[v].append((u, index))

        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", ordered)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in neighbours))
        object.__setattr__(self, "_incident", tuple(tuple(sorted(a)) for a in incident))
        object.__setattr__(self, "_index", {edge: i for i, edge in enumerate(ordered)})
        object.__setattr__(self, "_hash", hash((n, ordered)))

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (Graph, (self.n, self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def edge_index(self, u: int, v: int) -> int:
        """Canonical index of edge uv."""
        try:
            return self._index[(u, v) if u < v else (v, u)]
        except KeyError:
            raise GraphError(f"({u}, {v}) is not an edge")

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """Pairs (neighbour, edge index) around v, by neighbour id."""
        return self._incident[v]

    def distances_from(self, source: int) -> list[int]:
        """BFS distances; -1 marks unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        """Relabel nodes to 0..n-1 in sorted order (insertion order if unsortable)."""
        try:
            nodes = sorted(graph.nodes())
        except TypeError:
            nodes = list(graph.nodes())
        ids = {node: i for i, node in enumerate(nodes)}
        return cls(len(nodes), ((ids[u], ids[v]) for u, v in graph.edges()))


def iter_pairs(n: int) -> Iterator[Edge]:
    for u in range(n):
        for v in range(u + 1, n):
            yield u, v


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """
    G □ H with row-major ids: pair (a, b) becomes a * h.n + b.

    (a, b) ~ (c, d) iff a == c and bd in E(H), or b == d and ac in E(G).
    """
    if g.n == 0 or h.n == 0:
        raise GraphError("cartesian product needs two nonempty graphs")

    edges: list[Edge] = []
    for a in range(g.n):
        for b, d in h.edges:
            edges.append((a * h.n + b, a * h.n + d))
    for b in range(h.n):
        for a, c in g.edges:
            edges.append((a * h.n + b, c * h.n + b))
    return Graph(g.n * h.n, edges)


def diameter(g: Graph) -> Optional[int]:
    """All-pairs BFS diameter; None when disconnected."""
    if g.n == 0:
        raise GraphError("diameter of the empty graph is undefined")
    worst = 0
    for source in range(g.n):
        dist = g.distances_from(source)
        if min(dist) < 0:
            return None
        worst = max(worst, max(dist))
    return worst


def is_connected(g: Graph) -> bool:
    return g.n > 0 and min(g.distances_from(0)) >= 0


def girth(g: Graph) -> Optional[int]:
    """Shortest cycle length by BFS from every vertex; None for forests."""
    best: Optional[int] = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    return best


def bridges(g: Graph) -> list[Edge]:
    """Bridges in canonical edge order."""
    found = {(u, v) if u < v else (v, u) for u, v in nx.bridges(g.to_networkx())}
    return [edge for edge in g.edges if edge in found]


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    members = list(vertices)
    if len(set(members)) != len(members):
        return False
    return all(g.has_edge(u, v) for i, u in enumerate(members) for v in members[i + 1:])


def maximum_clique(g: Graph, limit: Optional[int] = None) -> tuple[int, ...]:
    """
    Exact maximum clique by branch and bound over vertex bitmasks.

    Candidates are tried in descending-degree order; a branch is cut when
    the chosen clique plus every remaining candidate cannot beat the best.
    """
    limit = limit if limit is not None else get_settings().clique_exact_limit
    if g.n > limit:
        raise ExactLimitError(
            f"exact limit exceeded: clique search on {g.n} vertices (limit {limit})"
        )
    if g.n == 0:
        return ()

    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    neighbour_mask = [0] * g.n
    for v in range(g.n):
        for w in g.adjacency[v]:
            neighbour_mask[v] |= 1 << w

    best: list[tuple[int, ...]] = [()]

    def expand(chosen: list[int], candidates: int) -> None:
        if candidates == 0:
            if len(chosen) > len(best[0]):
                best[0] = tuple(sorted(chosen))
            return
        for v in order:
            if len(chosen) + candidates.bit_count() <= len(best[0]):
                return
            if not (candidates >> v) & 1:
                continue
            chosen.append(v)
            expand(chosen, candidates & neighbour_mask[v])
            chosen.pop()
            candidates &= ~(1 << v)

    expand([], (1 << g.n) - 1)
    return best[0]


def clique_number(g: Graph, limit: Optional[int] = None) -> int:
    return len(maximum_clique(g, limit))


def _get_metrics_cache() -> LRUCache:
    global _metrics_cache
    if _metrics_cache is None:
        _metrics_cache = LRUCache(maxsize=get_settings().metrics_cache_size)
    return _metrics_cache


def metrics(g: Graph, include_clique: bool = True) -> GraphMetrics:
    """
    Exact metrics of g.

    Raises:
        ExactLimitError: include_clique and g.n above the clique limit
    """
    if g.n == 0:
        raise GraphError("metrics of the empty graph are undefined")

    cache = _get_metrics_cache()
    key = (g, include_clique)
    if key in cache:
        return cache[key]

    degrees = g.degrees()
    max_degree = max(degrees)
    diam = diameter(g)
    result = GraphMetrics(
        n=g.n,
        m=g.m,
        max_degree=max_degree,
        min_degree=min(degrees),
        average_degree=Fraction(2 * g.m, g.n),
        diameter=diam,
        clique_number=clique_number(g) if include_clique else None,
        is_connected=diam is not None,
        is_bipartite=nx.is_bipartite(g.to_networkx()),
        is_overfull=is_overfull(g),
        girth=girth(g),
    )
    cache[key] = result
    return result


def is_overfull(g: Graph) -> bool:
    """n odd and m > Δ(n-1)/2."""
    if g.n % 2 == 0 or g.n == 0:
        return False
    return 2 * g.m > max(g.degrees()) * (g.n - 1)
