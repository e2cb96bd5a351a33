"""
Inequalities, classifications and sufficient conditions as named predicates.

Every claim states a hypothesis on the graph (applicability) and a
conclusion over the solved parameters. A claim whose hypothesis fails, or
whose parameters are unsolved, reports ``satisfied = None``.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Optional

import networkx as nx

from app.schemas import (
    BoundReport,
    ClaimResult,
    Conclusion,
    ExtremalClass,
    ExtremalClassification,
    FamilySpec,
    FamilyTag,
    FiredRule,
    GraphMetrics,
    Parameter,
)
from app.modules.graph_core import Graph, clique_number, is_connected, is_tree, metrics
from app.modules.families import generate

logger = logging.getLogger(__name__)

# Largest G - N[w] searched exhaustively for a Hamiltonian cycle
HAMILTONIAN_SEARCH_LIMIT = 10

CHI, RC, PRC = Parameter.CHI_PRIME, Parameter.RC, Parameter.PRC


class BoundsError(Exception):
    """Raised when a bound or classification is requested on unsuitable input."""
    pass


@dataclass
class _Context:
    g: Graph
    chi: Optional[int]
    rc: Optional[int]
    prc: Optional[int]
    family: Optional[FamilySpec]
    values: dict[Parameter, Optional[int]] = field(init=False)

    def __post_init__(self):
        self.values = {CHI: self.chi, RC: self.rc, PRC: self.prc}

    @cached_property
    def metrics(self) -> GraphMetrics:
        return metrics(self.g, include_clique=False)

    @cached_property
    def omega(self) -> int:
        return clique_number(self.g)

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def m(self) -> int:
        return self.g.m


# claim -> (hypothesis, conclusion); both return (bool, details)
_Check = Callable[[_Context], tuple[bool, dict]]


@dataclass(frozen=True)
class Claim:
    claim_id: str
    requires: frozenset[Parameter]
    hypothesis: _Check
    conclusion: _Check


# Structure recognition

def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def is_cycle(g: Graph) -> bool:
    return g.n >= 3 and all(d == 2 for d in g.degrees()) and is_connected(g)


def wheel_rim(g: Graph) -> Optional[int]:
    """Rim length r >= 4 when g is the wheel W_r, else None."""
    if g.n < 5:
        return None
    hubs = [v for v in range(g.n) if g.degree(v) == g.n - 1]
    for hub in hubs:
        rim = [v for v in range(g.n) if v != hub]
        if all(g.degree(v) == 3 for v in rim):
            sub = g.to_networkx().subgraph(rim)
            if nx.is_connected(sub) and all(d == 2 for _, d in sub.degree()):
                return len(rim)
    return None


def multipartite_parts(g: Graph) -> Optional[list[int]]:
    """Part sizes when g is complete multipartite with at least two parts."""
    if g.n < 2:
        return None
    # non-adjacency must be an equivalence relation
    parts: list[list[int]] = []
    for v in range(g.n):
        for part in parts:
            if not g.has_edge(v, part[0]):
                part.append(v)
                break
        else:
            parts.append([v])
    if len(parts) < 2:
        return None
    owner = {v: i for i, part in enumerate(parts) for v in part}
    for u, v in itertools.combinations(range(g.n), 2):
        if g.has_edge(u, v) != (owner[u] != owner[v]):
            return None
    return sorted(len(p) for p in parts)


def bipartite_sides(g: Graph) -> Optional[tuple[int, int]]:
    parts = multipartite_parts(g)
    if parts is None or len(parts) != 2:
        return None
    return parts[0], parts[1]


def _non_adjacent_pairs(g: Graph) -> Iterable[tuple[int, int]]:
    for u, v in itertools.combinations(range(g.n), 2):
        if not g.has_edge(u, v):
            yield u, v


def _min_nonadjacent_degree_sum(g: Graph) -> Optional[int]:
    sums = [g.degree(u) + g.degree(v) for u, v in _non_adjacent_pairs(g)]
    return min(sums) if sums else None


def _has_hamiltonian_cycle(g: Graph, vertices: list[int]) -> Optional[list[int]]:
    """Exhaustive search inside the induced subgraph; None when there is none."""
    if len(vertices) < 3:
        return None
    first, rest = vertices[0], vertices[1:]
    for perm in itertools.permutations(rest):
        if perm[0] > perm[-1]:
            continue
        cycle = [first, *perm]
        if all(g.has_edge(a, b) for a, b in zip(cycle, cycle[1:] + [first])):
            return cycle
    return None


def hamiltonian_complement_witness(g: Graph) -> Optional[tuple[int, list[int]]]:
    """
    (w, cycle) with d(w) = Delta <= n-2 and cycle Hamiltonian in G - N[w].

    Returns None when no max-degree vertex qualifies, including when every
    G - N[w] is too large to search.
    """
    degrees = g.degrees()
    delta = max(degrees)
    if delta > g.n - 2:
        return None
    for w in range(g.n):
        if degrees[w] != delta:
            continue
        outside = [v for v in range(g.n) if v != w and not g.has_edge(v, w)]
        if len(outside) > HAMILTONIAN_SEARCH_LIMIT:
            continue
        cycle = _has_hamiltonian_cycle(g, outside)
        if cycle is not None:
            return w, cycle
    return None


def _isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


def dense_exception(g: Graph) -> Optional[str]:
    """Name of the dense-size exception g is isomorphic to, if any."""
    candidates = {
        "path:4": FamilySpec(tag=FamilyTag.PATH, params=(4,)),
        "z2": FamilySpec(tag=FamilyTag.Z2),
        "g6_3": FamilySpec(tag=FamilyTag.G6_3),
    }
    for name, spec in candidates.items():
        if _isomorphic(g, generate(spec)):
            return name
    return None


def extremal_structure(g: Graph) -> Optional[str]:
    """tree, triangle, h_prime, h_double_prime or None."""
    if is_tree(g) and g.n >= 2:
        return "tree"
    if g.n == 3 and g.m == 3:
        return "triangle"
    if g.n >= 4 and g.m == g.n:
        if _isomorphic(g, generate(FamilySpec(tag=FamilyTag.H_PRIME, params=(g.n,)))):
            return "h_prime"
        if g.n >= 5 and _isomorphic(g, generate(FamilySpec(tag=FamilyTag.H_DOUBLE_PRIME, params=(g.n,)))):
            return "h_double_prime"
    return None


# Claims

def _connected(ctx: _Context) -> tuple[bool, dict]:
    return ctx.n >= 2 and ctx.metrics.is_connected, {}


def _always(ctx: _Context) -> tuple[bool, dict]:
    return True, {}


def _sandwich(ctx: _Context) -> tuple[bool, dict]:
    d = ctx.metrics.diameter
    ok = d <= ctx.rc <= ctx.prc and ctx.chi <= ctx.prc
    return ok, {"diameter": d, "rc": ctx.rc, "prc": ctx.prc, "chi_prime": ctx.chi}


def _size_sandwich(ctx: _Context) -> tuple[bool, dict]:
    return max(ctx.rc, ctx.chi) <= ctx.prc <= ctx.m, {"m": ctx.m}


def _vizing_hyp(ctx: _Context) -> tuple[bool, dict]:
    return ctx.m >= 1, {}


def _vizing(ctx: _Context) -> tuple[bool, dict]:
    delta = ctx.metrics.max_degree
    return ctx.chi in (delta, delta + 1), {"max_degree": delta, "class": 1 if ctx.chi == delta else 2}


def _prc_equals_size(ctx: _Context) -> tuple[bool, dict]:
    structure = extremal_structure(ctx.g)
    predicted = structure in ("tree", "triangle")
    return (ctx.prc == ctx.m) == predicted, {"m": ctx.m, "structure": structure}


def _prc_equals_size_minus_one(ctx: _Context) -> tuple[bool, dict]:
    structure = extremal_structure(ctx.g)
    predicted = structure in ("h_prime", "h_double_prime")
    return (ctx.prc == ctx.m - 1) == predicted, {"m": ctx.m, "structure": structure}


def _complete_hyp(ctx: _Context) -> tuple[bool, dict]:
    return ctx.n >= 2 and is_complete(ctx.g), {}


def _complete_value(ctx: _Context) -> tuple[bool, dict]:
    expected = ctx.n - 1 if ctx.n % 2 == 0 else ctx.n
    return ctx.prc == expected and ctx.chi == expected, {"expected": expected}


def _complete_rc(ctx: _Context) -> tuple[bool, dict]:
    complete = is_complete(ctx.g)
    return (ctx.rc == 1) == complete, {"complete": complete}


def _cycle_hyp(ctx: _Context) -> tuple[bool, dict]:
    return ctx.n >= 4 and is_cycle(ctx.g), {}


def _cycle_value(ctx: _Context) -> tuple[bool, dict]:
    expected = math.ceil(ctx.n / 2)
    return ctx.prc == ctx.rc == expected, {"expected": expected}


def _clique_product_hyp(ctx: _Context) -> tuple[bool, dict]:
    family = ctx.family
    ok = family is not None and family.tag == FamilyTag.CLIQUE_PRODUCT and all(p > 1 for p in family.params)
    return ok, {"factors": list(family.params)} if ok else {}


def _chi_complete(p: int) -> int:
    return p - 1 if p % 2 == 0 else p


def _clique_product_range(ctx: _Context) -> tuple[bool, dict]:
    factors = ctx.family.params
    low = sum(p - 1 for p in factors)
    high = sum(_chi_complete(p) for p in factors)
    return low <= ctx.prc <= high, {"lower": low, "upper": high}


def _prc_equals_chi(ctx: _Context) -> tuple[bool, dict]:
    return ctx.prc == ctx.chi, {}


def _spanning_star_upper(ctx: _Context) -> tuple[bool, dict]:
    delta = ctx.metrics.max_degree
    upper = ctx.chi + (ctx.n - 1 - delta)
    low = max(delta, ctx.metrics.diameter)
    return low <= ctx.prc <= upper, {"lower": low, "upper": upper}


def _hamiltonian_hyp(ctx: _Context) -> tuple[bool, dict]:
    if not ctx.metrics.is_connected or ctx.n < 2:
        return False, {}
    witness = hamiltonian_complement_witness(ctx.g)
    if witness is None:
        return False, {}
    return True, {"w": witness[0], "cycle": witness[1]}


def _hamiltonian_upper(ctx: _Context) -> tuple[bool, dict]:
    bound = Fraction(ctx.n + ctx.metrics.max_degree, 2) + 1
    return ctx.prc <= bound, {"bound": str(bound)}


def _prc_rc_gap(ctx: _Context) -> tuple[bool, dict]:
    gap = ctx.prc - ctx.rc
    return 0 <= gap <= ctx.n - 1, {"gap": gap}


def _three_vertices(ctx: _Context) -> tuple[bool, dict]:
    return ctx.n >= 3 and ctx.metrics.is_connected, {}


def _prc_chi_gap(ctx: _Context) -> tuple[bool, dict]:
    gap = ctx.prc - ctx.chi
    return 0 <= gap <= ctx.n - 3, {"gap": gap}


def _clique_gap_hyp(ctx: _Context) -> tuple[bool, dict]:
    if ctx.n < 2 or not ctx.metrics.is_connected:
        return False, {}
    omega = ctx.omega
    return 2 * omega >= ctx.n + 1, {"omega": omega}


def _clique_gap(ctx: _Context) -> tuple[bool, dict]:
    bound = 2 * ctx.omega - ctx.n - 1
    return ctx.prc - ctx.rc >= bound, {"bound": bound, "gap": ctx.prc - ctx.rc}


def _min_degree_three(ctx: _Context) -> tuple[bool, dict]:
    return ctx.n >= 3 and ctx.metrics.is_connected and ctx.metrics.min_degree >= 3, {}


def _min_degree_rc_upper(ctx: _Context) -> tuple[bool, dict]:
    delta_min = ctx.metrics.min_degree
    ok = 4 * ctx.rc <= 3 * ctx.n
    details = {"three_quarters_bound": str(Fraction(3 * ctx.n, 4))}
    if delta_min >= 4:
        bound = Fraction(3 * ctx.n, delta_min + 1) + 3
        ok = ok and ctx.rc <= bound
        details["min_degree_bound"] = str(bound)
    return ok, details


def _min_degree_gap_hyp(ctx: _Context) -> tuple[bool, dict]:
    delta_min = ctx.metrics.min_degree
    ok = ctx.metrics.is_connected and delta_min >= 1 and (delta_min - 1) ** 2 >= 3 * ctx.n + 4
    return ok, {}


def _min_degree_gap(ctx: _Context) -> tuple[bool, dict]:
    delta_min = ctx.metrics.min_degree
    bound = delta_min - (Fraction(3 * ctx.n, delta_min + 1) + 3)
    return ctx.prc - ctx.rc >= bound, {"bound": str(bound)}


def _tree_hyp(ctx: _Context) -> tuple[bool, dict]:
    return ctx.n >= 2 and is_tree(ctx.g), {}


def _tree_value(ctx: _Context) -> tuple[bool, dict]:
    return ctx.prc == ctx.rc == ctx.n - 1, {"expected": ctx.n - 1}


def _girth_hyp(ctx: _Context) -> tuple[bool, dict]:
    girth = ctx.metrics.girth
    if girth is None or not ctx.metrics.is_connected or ctx.rc is None:
        return False, {}
    return ctx.rc < girth - 2, {"girth": girth}


def _prc_equals_rc(ctx: _Context) -> tuple[bool, dict]:
    return ctx.prc == ctx.rc, {}


def _diameter_two(ctx: _Context) -> tuple[bool, dict]:
    return ctx.n >= 3 and ctx.metrics.diameter == 2, {}


def _wheel_hyp(ctx: _Context) -> tuple[bool, dict]:
    rim = wheel_rim(ctx.g)
    return rim is not None, {"rim": rim} if rim else {}


def _wheel_value(ctx: _Context) -> tuple[bool, dict]:
    return ctx.prc == ctx.n - 1, {"expected": ctx.n - 1}


def _bipartite_complete_hyp(ctx: _Context) -> tuple[bool, dict]:
    sides = bipartite_sides(ctx.g)
    return sides is not None, {"sides": list(sides)} if sides else {}


def _bipartite_complete_value(ctx: _Context) -> tuple[bool, dict]:
    expected = max(bipartite_sides(ctx.g))
    return ctx.prc == expected, {"expected": expected}


def _bipartite_hyp(ctx: _Context) -> tuple[bool, dict]:
    return ctx.m >= 1 and ctx.metrics.is_bipartite, {}


def _class_one(ctx: _Context) -> tuple[bool, dict]:
    return ctx.chi == ctx.metrics.max_degree, {"max_degree": ctx.metrics.max_degree}


def _multipartite_hyp(ctx: _Context) -> tuple[bool, dict]:
    parts = multipartite_parts(ctx.g)
    return parts is not None, {"parts": parts} if parts else {}


def _multipartite_value(ctx: _Context) -> tuple[bool, dict]:
    delta = ctx.metrics.max_degree
    overfull = ctx.metrics.is_overfull
    expected = delta + 1 if overfull else delta
    return ctx.prc == expected, {"overfull": overfull, "expected": expected}


def _min_degree_half(ctx: _Context) -> tuple[bool, dict]:
    ok = ctx.metrics.is_connected and ctx.n >= 2 and 2 * ctx.metrics.min_degree >= ctx.n - 1
    return ok, {}


def _degree_sum_hyp(threshold: int, min_order: int) -> _Check:
    def check(ctx: _Context) -> tuple[bool, dict]:
        if ctx.n < min_order or not ctx.metrics.is_connected:
            return False, {}
        low = _min_nonadjacent_degree_sum(ctx.g)
        return low is None or low >= ctx.n - threshold, {"min_degree_sum": low}
    return check


def _min_degree_half_minus_one(ctx: _Context) -> tuple[bool, dict]:
    ok = ctx.n >= 9 and ctx.metrics.is_connected and 2 * ctx.metrics.min_degree >= ctx.n - 2
    return ok, {}


def _min_degree_third(ctx: _Context) -> tuple[bool, dict]:
    ok = ctx.n >= 9 and ctx.metrics.is_connected and 3 * ctx.metrics.min_degree >= ctx.n + 3
    return ok, {}


def _average_degree_lower(ctx: _Context) -> tuple[bool, dict]:
    bound = math.ceil(Fraction(2 * ctx.m, ctx.n))
    return ctx.prc >= bound, {"bound": bound}


def _size_lower(ctx: _Context) -> tuple[bool, dict]:
    k = (2 * ctx.m) // ctx.n
    return ctx.prc >= k, {"k": k}


def _dense_hyp(ctx: _Context) -> tuple[bool, dict]:
    threshold = math.comb(ctx.n - 2, 2) + 2 if ctx.n >= 2 else 0
    ok = ctx.n >= 3 and ctx.metrics.is_connected and ctx.m >= threshold
    return ok, {"threshold": threshold}


def _dense_value(ctx: _Context) -> tuple[bool, dict]:
    if ctx.prc == ctx.chi:
        return True, {"exception": None}
    exception = dense_exception(ctx.g)
    return exception is not None, {"exception": exception}


def _claim(claim_id: str, requires: Iterable[Parameter], hypothesis: _Check, conclusion: _Check) -> Claim:
    return Claim(claim_id, frozenset(requires), hypothesis, conclusion)


CLAIMS: dict[str, Claim] = {
    c.claim_id: c
    for c in [
        _claim("sandwich", (CHI, RC, PRC), _connected, _sandwich),
        _claim("size_sandwich", (CHI, RC, PRC), _connected, _size_sandwich),
        _claim("vizing", (CHI,), _vizing_hyp, _vizing),
        _claim("prc_equals_size", (PRC,), _connected, _prc_equals_size),
        _claim("prc_equals_size_minus_one", (PRC,), _connected, _prc_equals_size_minus_one),
        _claim("complete_graph_value", (CHI, PRC), _complete_hyp, _complete_value),
        _claim("complete_graph_rc", (RC,), _connected, _complete_rc),
        _claim("cycle_value", (RC, PRC), _cycle_hyp, _cycle_value),
        _claim("clique_product_range", (PRC,), _clique_product_hyp, _clique_product_range),
        _claim("clique_product_value", (CHI, PRC), _clique_product_hyp, _prc_equals_chi),
        _claim("spanning_star_upper", (CHI, PRC), _connected, _spanning_star_upper),
        _claim("hamiltonian_complement_upper", (PRC,), _hamiltonian_hyp, _hamiltonian_upper),
        _claim("prc_rc_gap_range", (RC, PRC), _connected, _prc_rc_gap),
        _claim("prc_chi_gap_range", (CHI, PRC), _three_vertices, _prc_chi_gap),
        _claim("clique_gap", (RC, PRC), _clique_gap_hyp, _clique_gap),
        _claim("min_degree_rc_upper", (RC,), _min_degree_three, _min_degree_rc_upper),
        _claim("min_degree_gap", (RC, PRC), _min_degree_gap_hyp, _min_degree_gap),
        _claim("tree_prc_equals_rc", (RC, PRC), _tree_hyp, _tree_value),
        _claim("girth_prc_equals_rc", (RC, PRC), _girth_hyp, _prc_equals_rc),
        _claim("diameter_two", (CHI, PRC), _diameter_two, _prc_equals_chi),
        _claim("wheel_value", (PRC,), _wheel_hyp, _wheel_value),
        _claim("complete_bipartite_value", (PRC,), _bipartite_complete_hyp, _bipartite_complete_value),
        _claim("bipartite_class_one", (CHI,), _bipartite_hyp, _class_one),
        _claim("complete_multipartite_value", (PRC,), _multipartite_hyp, _multipartite_value),
        _claim("min_degree_half", (CHI, PRC), _min_degree_half, _prc_equals_chi),
        _claim("degree_sum_n_minus_1", (CHI, PRC), _degree_sum_hyp(1, 3), _prc_equals_chi),
        _claim("min_degree_half_minus_one", (CHI, PRC), _min_degree_half_minus_one, _prc_equals_chi),
        _claim("degree_sum_n_minus_2", (CHI, PRC), _degree_sum_hyp(2, 9), _prc_equals_chi),
        _claim("min_degree_third", (CHI, PRC), _min_degree_third, _prc_equals_chi),
        _claim("average_degree_lower", (PRC,), _connected, _average_degree_lower),
        _claim("size_lower", (PRC,), _connected, _size_lower),
        _claim("dense_size", (CHI, PRC), _dense_hyp, _dense_value),
    ]
}

CLAIM_IDS = list(CLAIMS)


def resolve_claims(claim_ids: Optional[Iterable[str]]) -> list[str]:
    """Validate claim ids; None or empty means every claim."""
    ids = list(claim_ids or [])
    if not ids:
        return list(CLAIM_IDS)
    unknown = [c for c in ids if c not in CLAIMS]
    if unknown:
        raise BoundsError(f"unknown claim(s): {', '.join(unknown)}")
    return ids


def required_parameters(claim_ids: Optional[Iterable[str]]) -> set[Parameter]:
    needed: set[Parameter] = set()
    for claim_id in resolve_claims(claim_ids):
        needed |= CLAIMS[claim_id].requires
    return needed


def _evaluate(claim: Claim, ctx: _Context) -> ClaimResult:
    missing = [p.value for p in claim.requires if ctx.values[p] is None]
    if missing:
        return ClaimResult(claim=claim.claim_id, applicable=False, details={"unsolved": sorted(missing)})
    applicable, details = claim.hypothesis(ctx)
    if not applicable:
        return ClaimResult(claim=claim.claim_id, applicable=False, details=details)
    satisfied, extra = claim.conclusion(ctx)
    return ClaimResult(claim=claim.claim_id, applicable=True, satisfied=satisfied, details={**details, **extra})


def evaluate_bounds(
    g: Graph,
    chi: Optional[int] = None,
    rc: Optional[int] = None,
    prc: Optional[int] = None,
    family: Optional[FamilySpec] = None,
    claims: Optional[Iterable[str]] = None,
) -> BoundReport:
    """Evaluate the selected claims (all by default) over whatever is solved."""
    if g.n == 0:
        raise BoundsError("bounds of the empty graph are undefined")
    ctx = _Context(g, chi, rc, prc, family)
    report = BoundReport(n=g.n, m=g.m, chi_prime=chi, rc=rc, prc=prc)
    for claim_id in resolve_claims(claims):
        report.claims[claim_id] = _evaluate(CLAIMS[claim_id], ctx)

    violated = report.violations()
    if violated:
        logger.warning(f"{g}: violated claims {violated}")
    return report


def classify_extremal(g: Graph, prc: Optional[int] = None) -> ExtremalClassification:
    """Predict prc = m / m - 1 from structure and cross-check against prc if given."""
    if g.n == 0 or not is_connected(g):
        raise BoundsError("extremal classification needs a connected graph")
    structure = extremal_structure(g)
    if structure in ("tree", "triangle"):
        predicted = ExtremalClass.PRC_EQ_M
    elif structure in ("h_prime", "h_double_prime"):
        predicted = ExtremalClass.PRC_EQ_M_MINUS_1
    else:
        predicted = ExtremalClass.NEITHER

    observed = None
    consistent = None
    if prc is not None:
        if prc == g.m:
            observed = ExtremalClass.PRC_EQ_M
        elif prc == g.m - 1:
            observed = ExtremalClass.PRC_EQ_M_MINUS_1
        else:
            observed = ExtremalClass.NEITHER
        consistent = observed == predicted
    return ExtremalClassification(predicted=predicted, structure=structure, observed=observed, consistent=consistent)


def sufficient_conditions(g: Graph, rc: Optional[int] = None) -> list[FiredRule]:
    """
    Rules whose hypotheses hold on g, each with its guaranteed conclusion.

    The girth rule needs rc and only fires when it is supplied.
    """
    if g.n == 0 or not is_connected(g):
        raise BoundsError("sufficient conditions need a connected graph")
    ctx = _Context(g, None, rc, None, None)
    fired: list[FiredRule] = []

    def fire(rule: str, conclusion: Conclusion, hypothesis: _Check, predicted: Optional[int] = None) -> None:
        holds, details = hypothesis(ctx)
        if holds:
            fired.append(FiredRule(rule=rule, conclusion=conclusion, predicted_value=predicted, details=details))

    delta = ctx.metrics.max_degree
    fire("diameter_two", Conclusion.PRC_EQ_CHI, _diameter_two)
    fire("min_degree_half", Conclusion.PRC_EQ_CHI, _min_degree_half)
    fire("degree_sum_n_minus_1", Conclusion.PRC_EQ_CHI, _degree_sum_hyp(1, 3))
    fire("min_degree_half_minus_one", Conclusion.PRC_EQ_CHI, _min_degree_half_minus_one)
    fire("degree_sum_n_minus_2", Conclusion.PRC_EQ_CHI, _degree_sum_hyp(2, 9))
    fire("min_degree_third", Conclusion.PRC_EQ_CHI, _min_degree_third)
    fire("dense_size", Conclusion.PRC_EQ_CHI_OR_EXCEPTION, _dense_hyp)
    fire("bipartite_class_one", Conclusion.CHI_EQ_DELTA, _bipartite_hyp, delta)

    if multipartite_parts(g) is not None:
        predicted = delta + 1 if ctx.metrics.is_overfull else delta
        fire("complete_multipartite_value", Conclusion.PRC_EQ_CHI, _multipartite_hyp, predicted)
    if is_complete(g) and g.n >= 2:
        fire("complete_graph_value", Conclusion.PRC_EQ_CHI, _complete_hyp, g.n - 1 if g.n % 2 == 0 else g.n)
    if wheel_rim(g) is not None:
        fire("wheel_value", Conclusion.PRC_EQ_CHI, _wheel_hyp, g.n - 1)
    if bipartite_sides(g) is not None:
        fire("complete_bipartite_value", Conclusion.PRC_EQ_CHI, _bipartite_complete_hyp, max(bipartite_sides(g)))
    fire("tree_prc_equals_rc", Conclusion.PRC_EQ_RC, _tree_hyp, g.n - 1)
    fire("cycle_value", Conclusion.PRC_EQ_RC, _cycle_hyp, math.ceil(g.n / 2))
    if rc is not None:
        fire("girth_prc_equals_rc", Conclusion.PRC_EQ_RC, _girth_hyp, rc)
    return fired
