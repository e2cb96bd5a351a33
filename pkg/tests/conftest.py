import random

import networkx as nx
import pytest

from app.schemas import FamilySpec, FamilyTag, SearchConfig
from app.modules.colouring import EdgeColouring
from app.modules.graph_core import Graph
from app.modules.families import generate

SEED = 20240607


def connected_atlas(max_n: int, min_n: int = 2) -> list[Graph]:
    """Every connected graph on min_n..max_n vertices (max_n <= 7) from the networkx atlas."""
    return [
        Graph.from_networkx(g)
        for g in nx.graph_atlas_g()
        if min_n <= g.number_of_nodes() <= max_n and nx.is_connected(g)
    ]


def family(tag: FamilyTag, *params: int) -> Graph:
    return generate(FamilySpec(tag=tag, params=params))


def random_proper_colouring(g: Graph, rng: random.Random, k: int | None = None) -> EdgeColouring:
    """Greedy proper colouring over a shuffled edge order; 2*max_degree - 1 colours always suffice."""
    k = k or max(2 * max(g.degrees(), default=0) - 1, 1)
    order = list(range(g.m))
    rng.shuffle(order)
    colours = [0] * g.m
    for e in order:
        u, v = g.edges[e]
        used = {colours[f] for _, f in g.incident(u)} | {colours[f] for _, f in g.incident(v)}
        colours[e] = rng.choice([c for c in range(1, k + 1) if c not in used])
    return EdgeColouring(g, colours, k)


@pytest.fixture
def atlas():
    return connected_atlas


@pytest.fixture
def make():
    return family


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def cfg():
    return SearchConfig(node_budget=10_000_000, time_budget=120.0)
