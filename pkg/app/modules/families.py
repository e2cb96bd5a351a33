"""
Named graph families with frozen vertex labellings.

Labelling table (name -> id):

    complete:n                 0..n-1
    path:n                     0-1-...-(n-1)
    cycle:n                    edges i ~ i+1 (mod n)
    wheel:n                    rim v_i -> i-1 (i = 1..n), hub w -> n
    complete_bipartite:s,t     parts 0..s-1 and s..s+t-1
    complete_multipartite:p..  parts laid out consecutively
    clique_product:p1,..,pr    row-major pairs, folded left to right
    g_kt:k,t (t >= 2)          cycle v_i -> i-1 (i = 1..2t^2), hub v -> 2t^2,
                               path u_j -> j-1 (j = 2t^2+2..4t^2+1+k)
    g_kt:k,1                   triangle v1=0, v2=1, u3=2; path u3-u4-...: u_j -> j-1
    g_11                       same as g_kt:1,1
    z2                         triangle 0,1,2; pendant path 0-3-4
    f8                         u=0 u1=1 u2=2 u3=3 w=4 w1=5 w2=6 w3=7
    f_n:n                      v_i -> i-1 (i = 1..n)
    g6_1, g6_2, g6_3           w=0 w1=1 w2=2 w3=3 u1=4 u2=5
    h_prime:n                  triangle 0,1,2; pendant path 0-3-4-...-(n-1)
    h_double_prime:n           triangle 0,1,2; pendant vertices 3..n-1 at 0
    petersen                   outer 0..4, inner 5..9, spokes i ~ i+5
"""
import itertools
import logging
import re
from typing import Callable

from app.schemas import FamilySpec, FamilyTag
from app.modules.graph_core import Graph, GraphError, cartesian_product

logger = logging.getLogger(__name__)


class FamilySpecError(GraphError):
    """Raised when a family spec string or its parameters are invalid."""
    pass


F8_LABELS = {"u": 0, "u1": 1, "u2": 2, "u3": 3, "w": 4, "w1": 5, "w2": 6, "w3": 7}
G6_LABELS = {"w": 0, "w1": 1, "w2": 2, "w3": 3, "u1": 4, "u2": 5}
G11_LABELS = {"v1": 0, "v2": 1, "u3": 2, "u4": 3, "u5": 4, "u6": 5}

F8_EDGES = [
    ("u", "u1"), ("u", "u2"), ("u", "u3"), ("u1", "u2"), ("u2", "u3"), ("u1", "w1"),
    ("u3", "w3"), ("w1", "w2"), ("w2", "w3"), ("w", "w1"), ("w", "w2"), ("w", "w3"),
]
G6_EDGES = {
    FamilyTag.G6_1: [
        ("w1", "w"), ("w", "w2"), ("w2", "u2"), ("u2", "u1"),
        ("u1", "w1"), ("w1", "w3"), ("w3", "w2"), ("w3", "w"),
    ],
    FamilyTag.G6_2: [
        ("w1", "w"), ("w", "w2"), ("w2", "u1"), ("u1", "w1"),
        ("w1", "w3"), ("w3", "w2"), ("w3", "w"), ("u1", "u2"),
    ],
    FamilyTag.G6_3: [
        ("w1", "w"), ("w", "w3"), ("w3", "w2"), ("w2", "u2"),
        ("u2", "u1"), ("u1", "w1"), ("w1", "u2"), ("w", "w2"),
    ],
}

# tag -> (arity, None for variadic; domain check returning an error or None)
_Check = Callable[[tuple[int, ...]], str | None]


def _at_least(name: str, bound: int) -> _Check:
    return lambda p: None if p[0] >= bound else f"{name} >= {bound}"


def _check_g_kt(p: tuple[int, ...]) -> str | None:
    k, t = p
    if t < 1:
        return "t >= 1"
    if k < t:
        return "k >= t"
    return None


def _check_f_n(p: tuple[int, ...]) -> str | None:
    if p[0] < 6:
        return "n >= 6"
    if p[0] % 2:
        return "n even"
    return None


def _all_at_least(name: str, bound: int, min_count: int) -> _Check:
    def check(p: tuple[int, ...]) -> str | None:
        if len(p) < min_count:
            return f"at least {min_count} {name}"
        if any(x < bound for x in p):
            return f"every {name[:-1]} >= {bound}"
        return None
    return check


_DOMAINS: dict[FamilyTag, tuple[int | None, _Check | None]] = {
    FamilyTag.COMPLETE: (1, _at_least("n", 1)),
    FamilyTag.PATH: (1, _at_least("n", 1)),
    FamilyTag.CYCLE: (1, _at_least("n", 3)),
    FamilyTag.WHEEL: (1, _at_least("n", 4)),
    FamilyTag.COMPLETE_BIPARTITE: (2, _all_at_least("sides", 1, 2)),
    FamilyTag.COMPLETE_MULTIPARTITE: (None, _all_at_least("parts", 1, 2)),
    FamilyTag.CLIQUE_PRODUCT: (None, _all_at_least("factors", 2, 1)),
    FamilyTag.G_KT: (2, _check_g_kt),
    FamilyTag.G_11: (0, None),
    FamilyTag.Z2: (0, None),
    FamilyTag.F8: (0, None),
    FamilyTag.F_N: (1, _check_f_n),
    FamilyTag.G6_1: (0, None),
    FamilyTag.G6_2: (0, None),
    FamilyTag.G6_3: (0, None),
    FamilyTag.H_PRIME: (1, _at_least("n", 4)),
    FamilyTag.H_DOUBLE_PRIME: (1, _at_least("n", 5)),
    FamilyTag.PETERSEN: (0, None),
}

_SPEC_PATTERN = re.compile(r"^\s*([a-z0-9_]+)\s*(?::\s*(.*?))?\s*$")
_RANGE_PATTERN = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def validate(spec: FamilySpec) -> None:
    """Raise FamilySpecError naming the violated constraint."""
    arity, check = _DOMAINS[spec.tag]
    if arity is not None and len(spec.params) != arity:
        raise FamilySpecError(
            f"{spec.tag.value} takes {arity} parameter(s), got {len(spec.params)}"
        )
    if check is not None:
        violated = check(spec.params)
        if violated:
            raise FamilySpecError(f"{spec}: parameter out of domain, requires {violated}")


def _split(text: str) -> tuple[FamilyTag, list[str]]:
    match = _SPEC_PATTERN.match(text)
    if not match:
        raise FamilySpecError(f"malformed family spec: {text!r}")
    name, raw = match.groups()
    try:
        tag = FamilyTag(name)
    except ValueError:
        raise FamilySpecError(f"unknown family: {name!r}")
    parts = [p.strip() for p in raw.split(",")] if raw else []
    return tag, parts


def parse_family_spec(text: str) -> FamilySpec:
    """Parse ``"wheel:7"``, ``"g_kt:2,1"``, ``"f8"``, ..."""
    tag, parts = _split(text)
    try:
        params = tuple(int(p) for p in parts)
    except ValueError:
        raise FamilySpecError(f"non-integer parameter in {text!r}")
    spec = FamilySpec(tag=tag, params=params)
    validate(spec)
    return spec


def parse_family_grid(text: str) -> list[FamilySpec]:
    """Expand ranges ``a..b`` into every combination, e.g. ``cycle:4..12``."""
    tag, parts = _split(text)
    axes: list[list[int]] = []
    for part in parts:
        ranged = _RANGE_PATTERN.match(part)
        try:
            if ranged:
                low, high = int(ranged.group(1)), int(ranged.group(2))
                if high < low:
                    raise FamilySpecError(f"empty range {part!r}")
                axes.append(list(range(low, high + 1)))
            else:
                axes.append([int(part)])
        except ValueError:
            raise FamilySpecError(f"non-integer parameter in {text!r}")

    specs = []
    for combo in itertools.product(*axes):
        spec = FamilySpec(tag=tag, params=tuple(combo))
        validate(spec)
        specs.append(spec)
    return specs


def is_family_spec(text: str) -> bool:
    match = _SPEC_PATTERN.match(text)
    if not match:
        return False
    return match.group(1) in {tag.value for tag in FamilyTag}


def _labelled(labels: dict[str, int], pairs: list[tuple[str, str]]) -> Graph:
    return Graph(len(labels), [(labels[a], labels[b]) for a, b in pairs])


def _complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def _path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def _wheel(n: int) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n) for i in range(n)]
    return Graph(n + 1, edges)


def _complete_multipartite(parts: tuple[int, ...]) -> Graph:
    owner: list[int] = []
    for part, size in enumerate(parts):
        owner.extend([part] * size)
    n = len(owner)
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if owner[u] != owner[v]])


def _clique_product(factors: tuple[int, ...]) -> Graph:
    product = _complete(factors[0])
    for p in factors[1:]:
        product = cartesian_product(product, _complete(p))
    return product


def _g_kt(k: int, t: int) -> Graph:
    if t == 1:
        # triangle v1 v2 u3 with the path u3 u4 ... u_{k+5}
        edges = [(0, 1), (0, 2), (1, 2)]
        edges += [(j, j + 1) for j in range(2, k + 4)]
        return Graph(k + 5, edges)

    rim = 2 * t * t
    hub = rim
    n = 4 * t * t + k + 1
    edges = [(i, (i + 1) % rim) for i in range(rim)]
    edges += [(i, hub) for i in range(rim)]
    edges += [(j, j + 1) for j in range(hub, n - 1)]
    return Graph(n, edges)


def _f_n(n: int) -> Graph:
    core = [(u, v) for u, v in itertools.combinations(range(n - 2), 2) if (u, v) != (0, n - 3)]
    return Graph(n, core + [(0, n - 2), (n - 3, n - 1)])


def _h_prime(n: int) -> Graph:
    edges = [(0, 1), (0, 2), (1, 2), (0, 3)]
    edges += [(j, j + 1) for j in range(3, n - 1)]
    return Graph(n, edges)


def _h_double_prime(n: int) -> Graph:
    return Graph(n, [(0, 1), (0, 2), (1, 2)] + [(0, j) for j in range(3, n)])


def _petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def generate(spec: FamilySpec) -> Graph:
    """Build the family member with its frozen labelling."""
    validate(spec)
    p = spec.params
    tag = spec.tag

    if tag == FamilyTag.COMPLETE:
        graph = _complete(p[0])
    elif tag == FamilyTag.PATH:
        graph = _path(p[0])
    elif tag == FamilyTag.CYCLE:
        graph = _cycle(p[0])
    elif tag == FamilyTag.WHEEL:
        graph = _wheel(p[0])
    elif tag in (FamilyTag.COMPLETE_BIPARTITE, FamilyTag.COMPLETE_MULTIPARTITE):
        graph = _complete_multipartite(p)
    elif tag == FamilyTag.CLIQUE_PRODUCT:
        graph = _clique_product(p)
    elif tag == FamilyTag.G_KT:
        graph = _g_kt(*p)
    elif tag == FamilyTag.G_11:
        graph = _g_kt(1, 1)
    elif tag == FamilyTag.Z2:
        graph = _h_prime(5)
    elif tag == FamilyTag.F8:
        graph = _labelled(F8_LABELS, F8_EDGES)
    elif tag == FamilyTag.F_N:
        graph = _f_n(p[0])
    elif tag in G6_EDGES:
        graph = _labelled(G6_LABELS, G6_EDGES[tag])
    elif tag == FamilyTag.H_PRIME:
        graph = _h_prime(p[0])
    elif tag == FamilyTag.H_DOUBLE_PRIME:
        graph = _h_double_prime(p[0])
    elif tag == FamilyTag.PETERSEN:
        graph = _petersen()
    else:
        raise FamilySpecError(f"no generator for {tag.value}")

    logger.debug(f"Generated {spec}: n={graph.n}, m={graph.m}")
    return graph


def generate_from_string(text: str) -> Graph:
    return generate(parse_family_spec(text))
