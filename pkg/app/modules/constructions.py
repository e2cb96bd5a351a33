import logging
import math
from collections import deque
from typing import Optional, Sequence

from app.schemas import FamilySpec, FamilyTag, SearchConfig
from app.modules.graph_core import Edge, Graph, is_clique, is_connected
from app.modules.families import generate
from app.modules.colouring import EdgeColouring, is_proper, is_rainbow_connected
from app.modules.solvers import chromatic_index

logger = logging.getLogger(__name__)


class ConstructionError(Exception):
    """Raised when a construction's hypothesis does not hold."""
    pass


def _optimal_proper(g: Graph, cfg: Optional[SearchConfig]) -> EdgeColouring:
    result = chromatic_index(g, cfg)
    if result.certificate is None:
        raise ConstructionError(f"no proper colouring of {g} found within budget")
    return EdgeColouring.from_certificate(g, result.certificate)


def _require_connected(g: Graph, name: str) -> None:
    if g.n < 2 or not is_connected(g):
        raise ConstructionError(f"{name} needs a connected graph on at least 2 vertices")


def spanning_tree_colouring(g: Graph, root: int = 0) -> EdgeColouring:
    """
    BFS tree edges get colours 1..n-1 in discovery order; every other edge gets 1.

    Rainbow connected with n-1 colours, the trivial upper bound for rc.
    """
    if g.n <= 1:
        return EdgeColouring(g, [], 0)
    _require_connected(g, "spanning tree colouring")

    colours = [1] * g.m
    seen = [False] * g.n
    seen[root] = True
    queue = deque([root])
    fresh = 1
    while queue:
        x = queue.popleft()
        for y, index in g.incident(x):
            if not seen[y]:
                seen[y] = True
                colours[index] = fresh
                fresh += 1
                queue.append(y)
    return EdgeColouring(g, colours, g.n - 1)


def spanning_star_colouring(
    g: Graph,
    base: Optional[EdgeColouring] = None,
    cfg: Optional[SearchConfig] = None,
) -> EdgeColouring:
    """
    Proper rainbow colouring with at most chi' + (n - 1 - Delta) colours.

    Starts from a proper chi'-colouring, permutes colours so the star at the
    smallest max-degree vertex w uses 1..Delta, grows a BFS spanning tree out
    of the star and gives each non-star tree edge a fresh colour. The tree
    is then rainbow.
    """
    _require_connected(g, "spanning star colouring")
    base = base if base is not None else _optimal_proper(g, cfg)
    if not is_proper(base).is_proper:
        raise ConstructionError("spanning star colouring needs a proper base colouring")

    degrees = g.degrees()
    delta = max(degrees)
    w = degrees.index(delta)

    star_colours = [base.colours[index] for _, index in g.incident(w)]
    others = sorted(set(range(1, base.k + 1)) - set(star_colours))
    permutation = {c: i for i, c in enumerate(star_colours + others, start=1)}
    colours = [permutation[c] for c in base.colours]

    seen = [False] * g.n
    seen[w] = True
    queue: deque[int] = deque()
    for y, _ in g.incident(w):
        seen[y] = True
        queue.append(y)

    fresh = base.k + 1
    while queue:
        x = queue.popleft()
        for y, index in g.incident(x):
            if not seen[y]:
                seen[y] = True
                colours[index] = fresh
                fresh += 1
                queue.append(y)

    k = base.k + (g.n - 1 - delta)
    logger.debug(f"Spanning star colouring of {g}: centre {w}, {k} colours")
    return EdgeColouring(g, colours, k)


def _validate_cycle(g: Graph, w: int, cycle: Sequence[int]) -> list[Edge]:
    delta = max(g.degrees())
    if g.degree(w) != delta:
        raise ConstructionError(f"vertex {w} has degree {g.degree(w)}, not the maximum degree {delta}")
    if delta > g.n - 2:
        raise ConstructionError(f"maximum degree {delta} exceeds n - 2 = {g.n - 2}")

    outside = set(range(g.n)) - set(g.adjacency[w]) - {w}
    if len(set(cycle)) != len(cycle):
        raise ConstructionError("cycle repeats a vertex")
    if set(cycle) != outside:
        missing = sorted(outside - set(cycle))
        extra = sorted(set(cycle) - outside)
        raise ConstructionError(
            f"cycle does not span G - N[w]: missing {missing}, not in G - N[w] {extra}"
        )
    if len(cycle) < 3:
        raise ConstructionError(f"a cycle needs at least 3 vertices, got {len(cycle)}")

    edges = []
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if not g.has_edge(a, b):
            raise ConstructionError(f"cycle step ({a}, {b}) is not an edge")
        edges.append((min(a, b), max(a, b)))
    return edges


def hamiltonian_complement_colouring(
    g: Graph,
    w: int,
    ham_cycle: Sequence[int],
    base: Optional[EdgeColouring] = None,
    cfg: Optional[SearchConfig] = None,
) -> EdgeColouring:
    """
    Colour E(G) - E(C) by a proper chi'-colouring and the Hamiltonian cycle C
    of G - N[w] with ceil(|C|/2) fresh colours.

    A triangle cannot be properly coloured with two colours, so |C| = 3 uses
    three. Rainbow connectivity is checked and logged, not assumed.
    """
    _require_connected(g, "hamiltonian complement colouring")
    cycle_edges = _validate_cycle(g, w, ham_cycle)
    base = base if base is not None else _optimal_proper(g, cfg)

    length = len(cycle_edges)
    palette = 3 if length == 3 else math.ceil(length / 2)
    colours = list(base.colours)
    for i, (a, b) in enumerate(cycle_edges):
        colours[g.edge_index(a, b)] = base.k + (i % palette) + 1
    colouring = EdgeColouring(g, colours, base.k + palette)

    delta = max(g.degrees())
    if 2 * colouring.k > g.n + delta + 2:
        logger.warning(
            f"Finding: {colouring.k} colours exceed (n + Delta)/2 + 1 on {g}"
        )
    rainbow = is_rainbow_connected(colouring, cap=max(colouring.k, 1))
    if rainbow.is_rainbow_connected:
        logger.info(f"Hamiltonian complement colouring of {g} is rainbow connected")
    else:
        logger.warning(
            f"Finding: hamiltonian complement colouring of {g} leaves pair "
            f"{rainbow.unwitnessed_pair} without a rainbow path"
        )
    return colouring


def cycle_colouring(n: int) -> EdgeColouring:
    """e_i = (i-1, i mod n) gets colour ((i-1) mod ceil(n/2)) + 1."""
    if n < 4:
        raise ConstructionError(f"cycle colouring needs n >= 4, got {n}")
    g = generate(FamilySpec(tag=FamilyTag.CYCLE, params=(n,)))
    h = math.ceil(n / 2)
    mapping = {(i - 1, i % n): ((i - 1) % h) + 1 for i in range(1, n + 1)}
    return EdgeColouring.from_mapping(g, {(min(e), max(e)): c for e, c in mapping.items()}, h)


def wheel_colouring(n: int) -> EdgeColouring:
    """
    Spokes w v_i get i, rim v_i v_{i+1} gets i + 2 for i <= n - 2,
    v_{n-1} v_n gets 1 and v_n v_1 gets 2. Rim v_i is vertex i-1, hub w is n.
    """
    if n < 4:
        raise ConstructionError(f"wheel colouring needs n >= 4, got {n}")
    g = generate(FamilySpec(tag=FamilyTag.WHEEL, params=(n,)))
    hub = n
    mapping: dict[Edge, int] = {}
    for i in range(1, n + 1):
        mapping[(i - 1, hub)] = i
    for i in range(1, n - 1):
        mapping[(i - 1, i)] = i + 2
    mapping[(n - 2, n - 1)] = 1
    mapping[(0, n - 1)] = 2
    return EdgeColouring.from_mapping(g, mapping, n)


# v1 v2 u3 u4 u5 u6 -> 0..5
_G11_COLOURS = {(0, 1): 2, (0, 2): 1, (1, 2): 3, (2, 3): 2, (3, 4): 4, (4, 5): 5}


def gkt_colouring(k: int, t: int) -> EdgeColouring:
    """
    Rainbow colouring of G_{k,t} with 2t^2 + 1 + k colours.

    For t >= 2 every spoke gets colour 1, so the result is not proper.
    (k, t) = (1, 1) returns the frozen 6-vertex colouring, which is proper.
    """
    if t == 1 and k == 1:
        return EdgeColouring.from_mapping(generate(FamilySpec(tag=FamilyTag.G_11)), _G11_COLOURS, 5)
    if t < 2 or k < t:
        raise ConstructionError(f"gkt colouring needs k >= t >= 2 or k = t = 1, got k={k}, t={t}")

    g = generate(FamilySpec(tag=FamilyTag.G_KT, params=(k, t)))
    rim = 2 * t * t
    hub = rim
    square = t * t
    mapping: dict[Edge, int] = {}
    for i in range(1, rim + 1):
        mapping[(i - 1, hub)] = 1
    # path u_i u_{i+1}, with u_i at id i - 1
    for i in range(rim + 1, 2 * rim + k + 1):
        mapping[(i - 1, i)] = i + 1 - rim
    for i in range(1, square + 1):
        mapping[(i - 1, i)] = i
    for i in range(square + 1, rim):
        mapping[(i - 1, i)] = i - square
    mapping[(0, rim - 1)] = square
    return EdgeColouring.from_mapping(g, mapping, rim + 1 + k)


def clique_rc_colouring(g: Graph, clique: Sequence[int]) -> EdgeColouring:
    """
    Clique edges get colour 1; a BFS forest hanging off the clique gets fresh
    colours 2, 3, ...; every other edge gets 1. Uses n + 1 - |clique| colours.
    """
    members = sorted(set(clique))
    if not members or len(members) != len(clique) or not is_clique(g, members):
        raise ConstructionError(f"{list(clique)} is not a clique of {g}")
    if not is_connected(g):
        raise ConstructionError("clique rc colouring needs a connected graph")

    colours = [1] * g.m
    seen = [False] * g.n
    for v in members:
        seen[v] = True
    queue = deque(members)
    fresh = 2
    while queue:
        x = queue.popleft()
        for y, index in g.incident(x):
            if not seen[y]:
                seen[y] = True
                colours[index] = fresh
                fresh += 1
                queue.append(y)
    return EdgeColouring(g, colours, g.n + 1 - len(members))
