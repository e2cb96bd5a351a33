import json
import logging
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence, Union

from app.config import get_settings
from app.schemas import Certificate, PairWitness, RainbowWitness, VerifyReport
from app.modules.graph_core import Edge, Graph

logger = logging.getLogger(__name__)


class ColouringError(Exception):
    """Raised when a colouring does not fit its graph."""
    pass


class ColourCapExceeded(ColouringError):
    """Raised when a palette is larger than the rainbow checker's colour cap."""
    pass


class EdgeColouring:
    """
    Colours indexed by canonical edge index, values in 1..k.

    ``k`` is the declared palette; it may exceed the number of colours
    actually used.
    """

    __slots__ = ("graph", "colours", "k")

    def __init__(self, graph: Graph, colours: Sequence[int], k: Optional[int] = None):
        colours = tuple(int(c) for c in colours)
        if len(colours) != graph.m:
            raise ColouringError(
                f"colouring/graph size mismatch: {len(colours)} colours for {graph.m} edges"
            )
        if k is None:
            k = max(colours, default=0)
        for index, c in enumerate(colours):
            if not 1 <= c <= k:
                u, v = graph.edges[index]
                raise ColouringError(f"edge ({u}, {v}) has colour {c} outside 1..{k}")
        self.graph = graph
        self.colours = colours
        self.k = k

    def __repr__(self) -> str:
        return f"EdgeColouring(n={self.graph.n}, m={self.graph.m}, k={self.k})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EdgeColouring):
            return NotImplemented
        return self.graph == other.graph and self.colours == other.colours and self.k == other.k

    @property
    def colours_used(self) -> int:
        return len(set(self.colours))

    def colour_of(self, u: int, v: int) -> int:
        return self.colours[self.graph.edge_index(u, v)]

    def with_colour(self, edge: Edge, colour: int) -> "EdgeColouring":
        colours = list(self.colours)
        colours[self.graph.edge_index(*edge)] = colour
        return EdgeColouring(self.graph, colours, max(self.k, colour))

    def with_fresh_colour(self, edge: Edge) -> "EdgeColouring":
        """Recolour one edge with the new colour k+1."""
        return self.with_colour(edge, self.k + 1)

    @classmethod
    def from_mapping(cls, graph: Graph, mapping: Mapping[Edge, int], k: Optional[int] = None) -> "EdgeColouring":
        colours = [0] * graph.m
        for (u, v), c in mapping.items():
            colours[graph.edge_index(u, v)] = c
        missing = [graph.edges[i] for i, c in enumerate(colours) if c == 0]
        if missing:
            raise ColouringError(f"colouring is not total: {len(missing)} uncoloured edge(s), first {missing[0]}")
        return cls(graph, colours, k)

    def to_certificate(self) -> Certificate:
        return Certificate(
            n=self.graph.n,
            edges=[(u, v, c) for (u, v), c in zip(self.graph.edges, self.colours)],
            k=self.k,
        )

    @classmethod
    def from_certificate(cls, graph: Graph, certificate: Certificate) -> "EdgeColouring":
        if certificate.n != graph.n:
            raise ColouringError(f"certificate is for n={certificate.n}, graph has n={graph.n}")
        mapping: dict[Edge, int] = {}
        for u, v, c in certificate.edges:
            if not graph.has_edge(u, v):
                raise ColouringError(f"certificate colours ({u}, {v}), which is not an edge")
            key = (min(u, v), max(u, v))
            if key in mapping:
                raise ColouringError(f"certificate colours edge {key} twice")
            mapping[key] = c
        return cls.from_mapping(graph, mapping, certificate.k)


def load_certificate(source: Union[str, Path]) -> Certificate:
    """Read certificate JSON from a file path or a JSON string."""
    path = Path(source) if not str(source).lstrip().startswith("{") else None
    try:
        text = path.read_text() if path is not None else str(source)
    except OSError as e:
        raise ColouringError(f"cannot read certificate {source}: {e}")
    try:
        return Certificate.model_validate(json.loads(text))
    except (json.JSONDecodeError, ValueError) as e:
        raise ColouringError(f"invalid certificate JSON: {e}")


def save_certificate(colouring: EdgeColouring, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(colouring.to_certificate().model_dump_json(indent=2))
    return path


class ProperCheck(NamedTuple):
    is_proper: bool
    violation: Optional[tuple[Edge, Edge]]


class RainbowCheck(NamedTuple):
    is_rainbow_connected: bool
    unwitnessed_pair: Optional[Edge]
    witness: Optional[RainbowWitness]


def is_proper(c: EdgeColouring) -> ProperCheck:
    """
    Properness with the first clash as witness.

    Vertices are scanned in increasing id, incident edges by neighbour id;
    the witness is (earlier edge, later edge) at the first clashing vertex.
    """
    g = c.graph
    for v in range(g.n):
        seen: dict[int, int] = {}
        for _, index in g.incident(v):
            colour = c.colours[index]
            if colour in seen:
                return ProperCheck(False, (g.edges[seen[colour]], g.edges[index]))
            seen[colour] = index
    return ProperCheck(True, None)


def proper_partial(g: Graph, colours: Sequence[int]) -> bool:
    """Properness of a partial colouring; 0 marks an uncoloured edge."""
    for v in range(g.n):
        used = 0
        for _, index in g.incident(v):
            colour = colours[index]
            if colour:
                bit = 1 << colour
                if used & bit:
                    return False
                used |= bit
    return True


def is_rainbow_path(c: EdgeColouring, path: Sequence[int]) -> bool:
    """True iff path is a path of the graph with pairwise distinct edge colours."""
    if len(path) < 1 or len(set(path)) != len(path):
        return False
    seen: set[int] = set()
    for a, b in zip(path, path[1:]):
        if not c.graph.has_edge(a, b):
            return False
        colour = c.colour_of(a, b)
        if colour in seen:
            return False
        seen.add(colour)
    return True


def _check_cap(c: EdgeColouring, cap: Optional[int]) -> None:
    cap = cap if cap is not None else get_settings().colour_cap
    if c.k > cap:
        raise ColourCapExceeded(f"colour cap exceeded: palette {c.k} > cap {cap}")


def _colour_bits(g: Graph, colours: Sequence[int]) -> list[tuple[tuple[int, int], ...]]:
    return [
        tuple((w, 1 << (colours[index] - 1)) for w, index in g.incident(v))
        for v in range(g.n)
    ]


def _search_from(
    arcs: Sequence[Sequence[tuple[int, int]]],
    source: int,
    targets: Iterable[int],
    want_paths: bool,
) -> dict[int, Optional[list[int]]]:
    """
    BFS over (vertex, used-colour mask) states from one source.

    FIFO order with neighbours by id makes the first state reaching a target
    carry the lexicographically least minimum-length rainbow path.
    """
    pending = set(targets)
    found: dict[int, Optional[list[int]]] = {}
    if not pending:
        return found

    start = (source, 0)
    parent: dict[tuple[int, int], Optional[tuple[int, int]]] = {start: None}
    queue = deque([start])
    while queue and pending:
        state = queue.popleft()
        vertex, mask = state
        for w, bit in arcs[vertex]:
            if mask & bit:
                continue
            child = (w, mask | bit)
            if child in parent:
                continue
            parent[child] = state
            queue.append(child)
            if w in pending:
                pending.discard(w)
                if want_paths:
                    path = [w]
                    step: Optional[tuple[int, int]] = state
                    while step is not None:
                        path.append(step[0])
                        step = parent[step]
                    found[w] = path[::-1]
                else:
                    found[w] = []
    for target in pending:
        found[target] = None
    return found


def _search_job(args: tuple) -> dict[int, Optional[list[int]]]:
    return _search_from(*args)


def is_rainbow_connected(
    c: EdgeColouring,
    cap: Optional[int] = None,
    full_witness: bool = False,
    workers: int = 1,
) -> RainbowCheck:
    """
    Exact rainbow connectivity by per-source search.

    Sources run in increasing id and only pairs (s, t) with s < t are
    searched. Without ``full_witness`` the check stops at the first
    unwitnessed pair. ``workers > 1`` spreads sources over a process pool;
    the result is identical to the sequential run.

    Raises:
        ColourCapExceeded: palette above the cap
    """
    _check_cap(c, cap)
    g = c.graph
    arcs = _colour_bits(g, c.colours)
    jobs = [(arcs, s, range(s + 1, g.n), full_witness) for s in range(g.n - 1)]

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_search_job, jobs))
    else:
        results = []
        for job in jobs:
            result = _search_job(job)
            results.append(result)
            if not full_witness and any(path is None for path in result.values()):
                break

    unwitnessed: Optional[Edge] = None
    pairs: list[PairWitness] = []
    for source, result in enumerate(results):
        for target in sorted(result):
            path = result[target]
            if path is None and unwitnessed is None:
                unwitnessed = (source, target)
            if full_witness:
                pairs.append(PairWitness(u=source, v=target, path=path))
        if unwitnessed is not None and not full_witness:
            break

    witness = RainbowWitness(pairs=pairs) if full_witness else None
    return RainbowCheck(unwitnessed is None, unwitnessed, witness)


def rainbow_path(c: EdgeColouring, u: int, v: int, cap: Optional[int] = None) -> Optional[list[int]]:
    """Lexicographically least shortest rainbow u-v path, or None."""
    _check_cap(c, cap)
    if u == v:
        return [u]
    g = c.graph
    return _search_from(_colour_bits(g, c.colours), u, [v], True)[v]


class RainbowChecker:
    """
    Reusable rainbow test for many colourings of one graph.

    Used inside the solvers, where the graph is fixed and only the colour
    vector changes between calls.
    """

    def __init__(self, graph: Graph):
        self.graph = graph
        self._incident = [tuple(graph.incident(v)) for v in range(graph.n)]

    def check(self, colours: Sequence[int]) -> bool:
        n = self.graph.n
        incident = self._incident
        bits = [1 << (colour - 1) for colour in colours]
        for source in range(n - 1):
            pending = n - 1 - source
            reached = [False] * n
            seen = {(source, 0)}
            frontier = [(source, 0)]
            while frontier and pending:
                nxt = []
                for vertex, mask in frontier:
                    for w, index in incident[vertex]:
                        bit = bits[index]
                        if mask & bit:
                            continue
                        state = (w, mask | bit)
                        if state in seen:
                            continue
                        seen.add(state)
                        nxt.append(state)
                        if w > source and not reached[w]:
                            reached[w] = True
                            pending -= 1
                frontier = nxt
            if pending:
                return False
        return True


def verify(
    c: EdgeColouring,
    cap: Optional[int] = None,
    full_witness: bool = False,
    workers: int = 1,
) -> VerifyReport:
    proper = is_proper(c)
    rainbow = is_rainbow_connected(c, cap=cap, full_witness=full_witness, workers=workers)
    report = VerifyReport(
        is_proper=proper.is_proper,
        proper_violation=proper.violation,
        is_rainbow_connected=rainbow.is_rainbow_connected,
        unwitnessed_pair=rainbow.unwitnessed_pair,
        is_prc_certificate=proper.is_proper and rainbow.is_rainbow_connected,
        colours_used=c.colours_used,
        k=c.k,
        witness=rainbow.witness,
    )
    logger.debug(
        f"Verified {c}: proper={report.is_proper}, rainbow={report.is_rainbow_connected}"
    )
    return report
