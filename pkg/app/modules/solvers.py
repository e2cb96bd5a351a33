"""
Exact chi', rc and prc by pruned backtracking.

Every search assigns colours edge by edge in a fixed order. Colour
symmetry is broken by first occurrence: an edge may only take a colour at
most one above the largest colour used so far. Bridges are forced onto
distinct colours in every search, since any two bridges lie on a common
path that every rainbow colouring must make rainbow.
"""
import itertools
import logging
import math
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from typing import NamedTuple, Optional

import networkx as nx

from app.config import get_settings
from app.schemas import (
    Determinism,
    EdgeOrder,
    KDecision,
    Parameter,
    SearchConfig,
    SearchStats,
    SolveResult,
)
from app.modules.graph_core import Graph, bridges, diameter, is_connected
from app.modules.colouring import EdgeColouring, RainbowChecker

logger = logging.getLogger(__name__)

# Node count between wall-clock checks
_CLOCK_STRIDE = 4096
# Remaining uncoloured edges at which the optimistic rainbow test runs
_PRUNE_WINDOW = 2
# Prefix length cap when fanning a decision out to workers
_MAX_PREFIX = 4


class SolverError(Exception):
    """Raised when a solver is called outside its domain."""
    pass


class OracleLimitError(SolverError):
    """Raised when brute-force enumeration would exceed the oracle cap."""
    pass


class _BudgetExhausted(Exception):
    pass


class _Budget:
    def __init__(self, node_limit: int, time_limit: float):
        self.node_limit = node_limit
        self.deadline = time.monotonic() + time_limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise _BudgetExhausted(f"node budget {self.node_limit} exhausted")
        if self.nodes % _CLOCK_STRIDE == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted("time budget exhausted")

    @property
    def seconds_left(self) -> float:
        return max(self.deadline - time.monotonic(), 0.0)


class Decision(NamedTuple):
    """Outcome of one fixed-k search. ``feasible`` is None when the budget ran out."""
    feasible: Optional[bool]
    colouring: Optional[EdgeColouring]
    nodes: int


def edge_order(g: Graph, order: EdgeOrder = EdgeOrder.DEGREE_SUM) -> list[int]:
    """Edge indices in search order."""
    indices = list(range(g.m))
    if order == EdgeOrder.CANONICAL:
        return indices
    return sorted(indices, key=lambda i: (-(g.degree(g.edges[i][0]) + g.degree(g.edges[i][1])), i))


class _ColourSearch:
    """Depth-first search for a k-colouring, proper or not, that is rainbow connected."""

    def __init__(
        self,
        g: Graph,
        k: int,
        proper: bool,
        rainbow: bool,
        cfg: SearchConfig,
        budget: _Budget,
    ):
        self.g = g
        self.k = k
        self.proper = proper
        self.rainbow = rainbow
        self.cfg = cfg
        self.budget = budget
        self.order = edge_order(g, cfg.edge_order)
        self.ends = [g.edges[i] for i in self.order]
        bridge_set = set(bridges(g)) if rainbow else set()
        self.is_bridge = [g.edges[i] in bridge_set for i in self.order]
        self.checker = RainbowChecker(g) if rainbow else None
        self.colours = [0] * g.m
        self.vertex_used = [0] * g.n
        self.bridge_used = 0

    def _fits(self, depth: int, colour: int) -> bool:
        bit = 1 << colour
        if self.proper:
            u, v = self.ends[depth]
            if (self.vertex_used[u] | self.vertex_used[v]) & bit:
                return False
        if self.is_bridge[depth] and self.bridge_used & bit:
            return False
        return True

    def _assign(self, depth: int, colour: int) -> None:
        bit = 1 << colour
        self.colours[self.order[depth]] = colour
        if self.proper:
            u, v = self.ends[depth]
            self.vertex_used[u] |= bit
            self.vertex_used[v] |= bit
        if self.is_bridge[depth]:
            self.bridge_used |= bit

    def _unassign(self, depth: int, colour: int) -> None:
        bit = 1 << colour
        self.colours[self.order[depth]] = 0
        if self.proper:
            u, v = self.ends[depth]
            self.vertex_used[u] &= ~bit
            self.vertex_used[v] &= ~bit
        if self.is_bridge[depth]:
            self.bridge_used &= ~bit

    def _optimistic(self, depth: int) -> bool:
        """Give every uncoloured edge its own fresh colour and test rainbow connectivity."""
        trial = list(self.colours)
        fresh = self.k + 1
        for index in self.order[depth:]:
            trial[index] = fresh
            fresh += 1
        return self.checker.check(trial)

    def run(self, prefix: tuple[int, ...] = ()) -> Optional[list[int]]:
        top = 0
        for depth, colour in enumerate(prefix):
            if colour > self.k or not self._fits(depth, colour):
                return None
            self._assign(depth, colour)
            top = max(top, colour)
        return self._extend(len(prefix), top)

    def _extend(self, depth: int, top: int) -> Optional[list[int]]:
        self.budget.tick()
        remaining = len(self.order) - depth
        if remaining == 0:
            if self.checker is None or self.checker.check(self.colours):
                return list(self.colours)
            return None
        if self.cfg.rainbow_pruning and self.checker is not None and remaining <= _PRUNE_WINDOW:
            if not self._optimistic(depth):
                return None

        limit = min(self.k, top + 1) if self.cfg.symmetry_breaking else self.k
        for colour in range(1, limit + 1):
            if not self._fits(depth, colour):
                continue
            self._assign(depth, colour)
            found = self._extend(depth + 1, max(top, colour))
            self._unassign(depth, colour)
            if found is not None:
                return found
        return None

    def prefixes(self, length: int) -> list[tuple[int, ...]]:
        """Canonical colour prefixes of the first ``length`` edges that pass the local filters."""
        found: list[tuple[int, ...]] = []

        def walk(depth: int, top: int, chosen: list[int]) -> None:
            if depth == length:
                found.append(tuple(chosen))
                return
            limit = min(self.k, top + 1) if self.cfg.symmetry_breaking else self.k
            for colour in range(1, limit + 1):
                if not self._fits(depth, colour):
                    continue
                self._assign(depth, colour)
                chosen.append(colour)
                walk(depth + 1, max(top, colour), chosen)
                chosen.pop()
                self._unassign(depth, colour)

        walk(0, 0, [])
        return found


def _prefix_task(args: tuple) -> tuple[Optional[bool], Optional[list[int]], int]:
    g, k, proper, rainbow, cfg_data, prefix, node_limit, time_limit = args
    cfg = SearchConfig(**cfg_data)
    budget = _Budget(node_limit, time_limit)
    try:
        colours = _ColourSearch(g, k, proper, rainbow, cfg, budget).run(prefix)
    except _BudgetExhausted:
        return None, None, budget.nodes
    return colours is not None, colours, budget.nodes


def _decide_parallel(
    g: Graph,
    k: int,
    proper: bool,
    rainbow: bool,
    cfg: SearchConfig,
    budget: _Budget,
) -> Decision:
    """Fan canonical prefixes out to a process pool; only the value is deterministic."""
    planner = _ColourSearch(g, k, proper, rainbow, cfg, budget)
    length = 1
    prefixes = planner.prefixes(length)
    while len(prefixes) < 4 * cfg.workers and length < min(g.m, _MAX_PREFIX):
        length += 1
        prefixes = planner.prefixes(length)
    if not prefixes:
        return Decision(False, None, 0)

    node_limit = max((budget.node_limit - budget.nodes) // len(prefixes), 1)
    cfg_data = cfg.model_dump()
    tasks = [(g, k, proper, rainbow, cfg_data, p, node_limit, budget.seconds_left) for p in prefixes]
    logger.debug(f"Fanning k={k} out as {len(tasks)} prefixes over {cfg.workers} workers")

    nodes = 0
    unknown = False
    executor = ProcessPoolExecutor(max_workers=cfg.workers)
    try:
        pending = {executor.submit(_prefix_task, task) for task in tasks}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for future in done:
                feasible, colours, used = future.result()
                nodes += used
                if feasible:
                    budget.nodes += nodes
                    return Decision(True, EdgeColouring(g, colours, k), nodes)
                if feasible is None:
                    unknown = True
    finally:
        executor.shutdown(wait=False, cancel_futures=True)

    budget.nodes += nodes
    return Decision(None if unknown else False, None, nodes)


def _decide(
    g: Graph,
    k: int,
    proper: bool,
    rainbow: bool,
    cfg: SearchConfig,
    budget: _Budget,
) -> Decision:
    if g.m == 0:
        # with no edges, two or more vertices can never be joined by a rainbow path
        if rainbow and g.n > 1:
            return Decision(False, None, 0)
        return Decision(True, EdgeColouring(g, [], max(k, 0)), 0)
    if k <= 0:
        return Decision(False, None, 0)

    if cfg.determinism == Determinism.PARALLEL and cfg.workers > 1:
        return _decide_parallel(g, k, proper, rainbow, cfg, budget)

    start = budget.nodes
    try:
        colours = _ColourSearch(g, k, proper, rainbow, cfg, budget).run()
    except _BudgetExhausted as e:
        logger.warning(f"Search at k={k} stopped: {e}")
        return Decision(None, None, budget.nodes - start)
    colouring = EdgeColouring(g, colours, k) if colours is not None else None
    return Decision(colours is not None, colouring, budget.nodes - start)


def _config(cfg: Optional[SearchConfig]) -> SearchConfig:
    return cfg if cfg is not None else SearchConfig.from_settings(get_settings())


def _budget(cfg: SearchConfig) -> _Budget:
    return _Budget(cfg.node_budget, cfg.time_budget)


def _require_connected(g: Graph, parameter: Parameter) -> None:
    if g.n == 0 or not is_connected(g):
        raise SolverError(f"{parameter.value} needs a connected graph")


def _trivial(parameter: Parameter, g: Graph) -> SolveResult:
    return SolveResult(
        parameter=parameter,
        value=0,
        certificate=EdgeColouring(g, [], 0).to_certificate(),
        stats=SearchStats(),
        exact=True,
    )


def _chromatic_index(g: Graph, cfg: SearchConfig, budget: _Budget) -> SolveResult:
    if g.m == 0:
        raise SolverError("chromatic index needs a nonempty edge set")

    started = time.monotonic()
    delta = max(g.degrees())
    stats = SearchStats(lower_bound=delta, upper_bound=delta + 1)

    decision = _decide(g, delta, True, False, cfg, budget)
    stats.decisions.append(KDecision(k=delta, feasible=decision.feasible, nodes=decision.nodes))

    if decision.feasible:
        value, colouring, exact = delta, decision.colouring, True
    else:
        # Vizing guarantees Delta + 1 colours; search with a fresh budget for the certificate
        exact = decision.feasible is False
        fallback = _decide(g, delta + 1, True, False, cfg, _budget(cfg))
        stats.decisions.append(KDecision(k=delta + 1, feasible=fallback.feasible, nodes=fallback.nodes))
        value, colouring = delta + 1, fallback.colouring
        if colouring is None:
            exact = False

    if exact:
        stats.lower_bound = stats.upper_bound = value
    stats.nodes = sum(d.nodes for d in stats.decisions)
    stats.elapsed_seconds = time.monotonic() - started
    logger.info(f"chi' of {g}: {value} ({'exact' if exact else 'bracket'})")
    return SolveResult(
        parameter=Parameter.CHI_PRIME,
        value=value,
        certificate=colouring.to_certificate() if colouring else None,
        stats=stats,
        exact=exact,
    )


def chromatic_index(g: Graph, cfg: Optional[SearchConfig] = None) -> SolveResult:
    """
    chi'(g), which is Delta or Delta + 1.

    Decided by an exhaustive proper-colouring search at Delta.
    """
    cfg = _config(cfg)
    return _chromatic_index(g, cfg, _budget(cfg))


def _scan(
    g: Graph,
    parameter: Parameter,
    lower: int,
    upper: int,
    upper_colouring: EdgeColouring,
    cfg: SearchConfig,
    budget: _Budget,
    stats: SearchStats,
    started: float,
) -> SolveResult:
    """Try k = lower .. upper-1; the first feasible k is the optimum."""
    proper = parameter == Parameter.PRC
    stats.lower_bound, stats.upper_bound = lower, upper
    logger.info(f"Solving {parameter.value} on {g}: bounds [{lower}, {upper}]")

    value, colouring, exact = upper, upper_colouring, True
    for k in range(lower, upper):
        if k > cfg.colour_cap:
            logger.warning(f"k={k} is above the colour cap {cfg.colour_cap}; stopping")
            exact = False
            stats.lower_bound = k
            break
        decision = _decide(g, k, proper, True, cfg, budget)
        stats.decisions.append(KDecision(k=k, feasible=decision.feasible, nodes=decision.nodes))
        logger.debug(f"{parameter.value} k={k}: feasible={decision.feasible}, nodes={decision.nodes}")
        if decision.feasible:
            value, colouring = k, decision.colouring
            break
        if decision.feasible is None:
            exact = False
            stats.lower_bound = k
            break

    if exact:
        stats.lower_bound = stats.upper_bound = value
    stats.nodes = sum(d.nodes for d in stats.decisions)
    stats.elapsed_seconds = time.monotonic() - started
    logger.info(f"{parameter.value} of {g}: {value} ({'exact' if exact else 'bracket'})")
    return SolveResult(
        parameter=parameter,
        value=value,
        certificate=EdgeColouring(g, colouring.colours, value).to_certificate(),
        stats=stats,
        exact=exact,
    )


def rc(g: Graph, cfg: Optional[SearchConfig] = None) -> SolveResult:
    """
    Rainbow connection number.

    k runs upward from max(diam, #bridges); n-1 is always reachable by
    giving a spanning tree distinct colours.
    """
    from app.modules.constructions import spanning_tree_colouring

    _require_connected(g, Parameter.RC)
    if g.n == 1:
        return _trivial(Parameter.RC, g)

    cfg = _config(cfg)
    started = time.monotonic()
    lower = max(diameter(g), len(bridges(g)), 1)
    upper = g.n - 1
    return _scan(g, Parameter.RC, lower, upper, spanning_tree_colouring(g), cfg, _budget(cfg), SearchStats(), started)


def prc(
    g: Graph,
    cfg: Optional[SearchConfig] = None,
    chi: Optional[SolveResult] = None,
) -> SolveResult:
    """
    Proper rainbow connection number.

    k runs upward from max(chi', diam, #bridges, ceil(average degree)) to
    the spanning-star bound chi' + (n - 1 - Delta), whose construction
    supplies the fallback certificate.
    """
    from app.modules.constructions import spanning_star_colouring

    _require_connected(g, Parameter.PRC)
    if g.n == 1:
        return _trivial(Parameter.PRC, g)

    cfg = _config(cfg)
    started = time.monotonic()
    budget = _budget(cfg)
    stats = SearchStats()

    if chi is None:
        chi = _chromatic_index(g, cfg, budget)
    stats.decisions.extend(chi.stats.decisions)
    delta = max(g.degrees())
    chi_lower = chi.value if chi.exact else delta
    lower = max(chi_lower, diameter(g), len(bridges(g)), math.ceil(2 * g.m / g.n))

    if chi.certificate is None:
        raise SolverError(f"no proper colouring found for {g} within budget")
    base = EdgeColouring.from_certificate(g, chi.certificate)
    star = spanning_star_colouring(g, base)
    upper = star.k

    # an optimal proper colouring that is already rainbow settles prc = chi'
    if chi.exact and lower == chi.value and RainbowChecker(g).check(base.colours):
        stats.lower_bound = stats.upper_bound = chi.value
        stats.nodes = sum(d.nodes for d in stats.decisions)
        stats.elapsed_seconds = time.monotonic() - started
        logger.info(f"prc of {g}: {chi.value} (optimal proper colouring is rainbow)")
        return SolveResult(parameter=Parameter.PRC, value=chi.value, certificate=chi.certificate, stats=stats)

    result = _scan(g, Parameter.PRC, lower, upper, star, cfg, budget, stats, started)
    if not chi.exact:
        result.exact = False
        result.stats.lower_bound = min(result.stats.lower_bound, lower)
    return result


def decide_prc_at_k(g: Graph, k: int, cfg: Optional[SearchConfig] = None) -> Decision:
    """Whether a proper rainbow-connected colouring with at most k colours exists."""
    cfg = _config(cfg)
    return _decide(g, k, True, True, cfg, _budget(cfg))


def decide_rc_at_k(g: Graph, k: int, cfg: Optional[SearchConfig] = None) -> Decision:
    cfg = _config(cfg)
    return _decide(g, k, False, True, cfg, _budget(cfg))


def solve(g: Graph, parameter: Parameter, cfg: Optional[SearchConfig] = None) -> SolveResult:
    if parameter == Parameter.CHI_PRIME:
        return chromatic_index(g, cfg)
    if parameter == Parameter.RC:
        return rc(g, cfg)
    return prc(g, cfg)


def _simple_path_edges(g: Graph) -> dict[tuple[int, int], list[list[int]]]:
    """Every simple path per pair, as edge-index lists."""
    nxg = g.to_networkx()
    paths: dict[tuple[int, int], list[list[int]]] = {}
    for u in range(g.n):
        for v in range(u + 1, g.n):
            paths[(u, v)] = [
                [g.edge_index(a, b) for a, b in zip(p, p[1:])]
                for p in nx.all_simple_paths(nxg, u, v)
            ]
    return paths


def brute_force_oracle(
    g: Graph,
    parameter: Parameter,
    k: int,
    cap: Optional[int] = None,
) -> bool:
    """
    Unpruned ground truth: does some colouring with at most k colours work?

    Enumerates all k^m colourings, filters properness afterwards where
    needed, and decides rainbow connectivity by listing simple paths.

    Raises:
        OracleLimitError: k^m above the cap
    """
    cap = cap if cap is not None else get_settings().oracle_cap
    if k < 0:
        return False
    if g.m == 0:
        return parameter == Parameter.CHI_PRIME or g.n <= 1
    if k == 0:
        return False
    if k ** g.m > cap:
        raise OracleLimitError(f"oracle limit exceeded: {k}^{g.m} colourings > cap {cap}")

    need_proper = parameter in (Parameter.CHI_PRIME, Parameter.PRC)
    need_rainbow = parameter in (Parameter.RC, Parameter.PRC)
    paths = _simple_path_edges(g) if need_rainbow else {}
    incident = [[index for _, index in g.incident(v)] for v in range(g.n)]

    for colours in itertools.product(range(1, k + 1), repeat=g.m):
        if need_proper and any(
            len({colours[i] for i in around}) != len(around) for around in incident
        ):
            continue
        if need_rainbow and not all(
            any(len({colours[i] for i in path}) == len(path) for path in options)
            for options in paths.values()
        ):
            continue
        return True
    return False
