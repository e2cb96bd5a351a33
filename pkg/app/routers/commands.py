import argparse
import json
import logging
from typing import Any, Optional

from pydantic import BaseModel

from app.config import Settings, build_settings
from app.schemas import (
    Determinism,
    FamilySpec,
    Parameter,
    SearchConfig,
    SolveResult,
    SourceKind,
    SweepJob,
)
from app.modules import (
    EdgeColouring,
    SweepService,
    chromatic_index,
    classify_extremal,
    clique_rc_colouring,
    cycle_colouring,
    evaluate_bounds,
    gkt_colouring,
    generate,
    hamiltonian_complement_colouring,
    is_family_spec,
    load_certificate,
    load_graph,
    parse_family_grid,
    parse_family_spec,
    prc,
    rc,
    required_parameters,
    resolve_claims,
    spanning_star_colouring,
    sufficient_conditions,
    verify,
    wheel_colouring,
    write_edge_list,
    write_graph6,
)
from app.modules.graph_core import Graph, is_connected

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BRACKETED = 2
EXIT_VIOLATIONS = 3

PARAMETERS = {"chi": Parameter.CHI_PRIME, "rc": Parameter.RC, "prc": Parameter.PRC}
METHODS = ("star", "hamcomp", "cycle", "wheel", "gkt", "clique-rc")


class CommandError(Exception):
    """Raised when a subcommand's arguments do not fit together."""
    pass


def emit(payload: Any) -> None:
    """Write one machine-readable document to stdout."""
    if isinstance(payload, BaseModel):
        print(payload.model_dump_json(indent=2))
    else:
        print(json.dumps(payload, indent=2, default=str))


def settings_from_args(args: argparse.Namespace) -> Settings:
    return build_settings(
        budget_nodes=getattr(args, "budget_nodes", None),
        budget_secs=getattr(args, "budget_secs", None),
        colour_cap=getattr(args, "colour_cap", None),
        jobs=getattr(args, "jobs", None),
        seed=getattr(args, "seed", None),
        determinism=getattr(args, "determinism", None),
    )


def search_config(settings: Settings) -> SearchConfig:
    return SearchConfig.from_settings(settings, workers=settings.jobs)


def _int_list(text: Optional[str], flag: str) -> list[int]:
    if not text:
        raise CommandError(f"{flag} is required for this method")
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise CommandError(f"{flag} must be comma-separated integers, got {text!r}")


def _require(value: Optional[int], flag: str) -> int:
    if value is None:
        raise CommandError(f"{flag} is required for this method")
    return value


def _family_context(source: str) -> Optional[FamilySpec]:
    return parse_family_spec(source) if is_family_spec(source) else None


# gen

def cmd_gen(args: argparse.Namespace) -> int:
    """Generate one family member, or every member of a grid, on stdout."""
    specs = parse_family_grid(args.family)
    chunks = []
    for spec in specs:
        g = generate(spec)
        if args.format == "edgelist":
            chunks.append(write_edge_list(g))
        else:
            chunks.append(write_graph6(g).decode("ascii") + "\n")
    print(("\n" if args.format == "edgelist" else "").join(chunks), end="")
    logger.info(f"Generated {len(specs)} graph(s) from {args.family}")
    return EXIT_OK


# solve

def cmd_solve(args: argparse.Namespace) -> int:
    settings = settings_from_args(args)
    g = load_graph(args.graph)
    parameter = PARAMETERS[args.param]
    cfg = search_config(settings)

    if parameter == Parameter.CHI_PRIME:
        result = chromatic_index(g, cfg)
    elif parameter == Parameter.RC:
        result = rc(g, cfg)
    else:
        result = prc(g, cfg)

    emit(result)
    return EXIT_OK if result.exact else EXIT_BRACKETED


# verify

def cmd_verify(args: argparse.Namespace) -> int:
    settings = settings_from_args(args)
    g = load_graph(args.graph)
    colouring = EdgeColouring.from_certificate(g, load_certificate(args.certificate))
    report = verify(colouring, cap=settings.colour_cap, full_witness=args.full_witness, workers=settings.jobs)
    emit(report)
    if not report.is_prc_certificate:
        logger.warning(
            f"Certificate rejected: proper={report.is_proper}, rainbow={report.is_rainbow_connected}"
        )
    return EXIT_OK if report.is_prc_certificate else EXIT_ERROR


# color

def _graph_for(args: argparse.Namespace) -> Graph:
    if not args.graph:
        raise CommandError(f"--method {args.method} needs a graph argument")
    return load_graph(args.graph)


def cmd_color(args: argparse.Namespace) -> int:
    settings = settings_from_args(args)
    cfg = search_config(settings)
    method = args.method

    if method == "star":
        colouring = spanning_star_colouring(_graph_for(args), cfg=cfg)
    elif method == "hamcomp":
        g = _graph_for(args)
        colouring = hamiltonian_complement_colouring(
            g, _require(args.hub, "--hub"), _int_list(args.cycle, "--cycle"), cfg=cfg
        )
    elif method == "cycle":
        colouring = cycle_colouring(_require(args.n, "--n"))
    elif method == "wheel":
        colouring = wheel_colouring(_require(args.n, "--n"))
    elif method == "gkt":
        colouring = gkt_colouring(_require(args.k, "--k"), _require(args.t, "--t"))
    else:
        colouring = clique_rc_colouring(_graph_for(args), _int_list(args.clique, "--clique"))

    logger.info(f"{method} colouring: {colouring.k} colours, {colouring.colours_used} used")
    emit(colouring.to_certificate())
    return EXIT_OK


# bounds

def _solve_for_bounds(g: Graph, needed: set[Parameter], cfg: SearchConfig) -> tuple[dict[Parameter, SolveResult], bool]:
    results: dict[Parameter, SolveResult] = {}
    chi_result = None
    if g.m >= 1 and needed & {Parameter.CHI_PRIME, Parameter.PRC}:
        chi_result = chromatic_index(g, cfg)
        results[Parameter.CHI_PRIME] = chi_result
    if Parameter.RC in needed:
        results[Parameter.RC] = rc(g, cfg)
    if Parameter.PRC in needed:
        results[Parameter.PRC] = prc(g, cfg, chi_result) if chi_result else prc(g, cfg)
    exact = all(result.exact for result in results.values())
    return results, exact


def cmd_bounds(args: argparse.Namespace) -> int:
    """Evaluate claims against solved or supplied parameter values."""
    settings = settings_from_args(args)
    g = load_graph(args.graph)
    claims = resolve_claims(args.claims.split(",") if args.claims else None)

    values: dict[Parameter, Optional[int]] = {
        Parameter.CHI_PRIME: args.chi,
        Parameter.RC: args.rc,
        Parameter.PRC: args.prc,
    }
    exact = True
    if args.solve:
        results, exact = _solve_for_bounds(g, required_parameters(claims), search_config(settings))
        for parameter, result in results.items():
            if result.exact:
                values[parameter] = result.value

    report = evaluate_bounds(
        g,
        chi=values[Parameter.CHI_PRIME],
        rc=values[Parameter.RC],
        prc=values[Parameter.PRC],
        family=_family_context(args.graph),
        claims=claims,
    )
    payload: dict[str, Any] = {"report": report.model_dump(mode="json")}
    if is_connected(g):
        payload["extremal"] = classify_extremal(g, values[Parameter.PRC]).model_dump(mode="json")
        payload["fired_rules"] = [
            rule.model_dump(mode="json") for rule in sufficient_conditions(g, values[Parameter.RC])
        ]
    emit(payload)

    if report.violations():
        return EXIT_VIOLATIONS
    return EXIT_OK if exact else EXIT_BRACKETED


# sweep

def sweep_determinism(settings: Settings) -> Determinism:
    """Sweeps run parallel-value-only unless a flag, env var or config file asks otherwise."""
    if "determinism" in settings.model_fields_set:
        return Determinism(settings.determinism)
    return Determinism.PARALLEL


def cmd_sweep(args: argparse.Namespace) -> int:
    settings = settings_from_args(args)
    if args.input:
        kind, source = SourceKind.GRAPH6, args.input
    elif args.family:
        kind, source = SourceKind.FAMILY, args.family
    else:
        kind, source = SourceKind.RANDOM, args.random

    job = SweepJob(
        source_kind=kind,
        source=source,
        claims=args.claims.split(",") if args.claims else [],
        node_budget=settings.budget_nodes,
        time_budget=settings.budget_secs,
        colour_cap=settings.colour_cap,
        output_dir=args.output or settings.output_dir,
        jobs=settings.jobs,
        seed=settings.seed,
        oracle=args.oracle,
        determinism=sweep_determinism(settings),
        resume=args.resume,
    )
    summary = SweepService(job, settings).run()
    emit(summary)
    return EXIT_VIOLATIONS if summary.violations else EXIT_OK


def add_common_flags(parser: argparse.ArgumentParser) -> None:
    """Budget and parallelism flags shared by every subcommand; None keeps the configured value."""
    group = parser.add_argument_group("solver settings")
    group.add_argument("--budget-nodes", type=int, default=None, help="search nodes per solve")
    group.add_argument("--budget-secs", type=float, default=None, help="wall-clock seconds per solve")
    group.add_argument("--colour-cap", type=int, default=None, help="largest palette the rainbow checker accepts")
    group.add_argument("--jobs", type=int, default=None, help="worker processes")
    group.add_argument("--seed", type=int, default=None, help="seed for random sources")
    group.add_argument(
        "--determinism",
        choices=[d.value for d in Determinism],
        default=None,
        help=(
            "sequential-canonical runs one worker and reproduces certificates exactly;"
            " sweeps default to parallel-value-only"
        ),
    )


def add_commands(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    """Register gen, solve, verify, color, bounds and sweep."""
    gen = subparsers.add_parser("gen", parents=[common], help="generate family members")
    gen.add_argument("family", help="family spec or grid, e.g. wheel:5 or cycle:4..12")
    gen.add_argument("--format", choices=["graph6", "edgelist"], default="graph6")
    gen.set_defaults(handler=cmd_gen)

    solve = subparsers.add_parser("solve", parents=[common], help="exact chi', rc or prc")
    solve.add_argument("graph", help="graph6 code, family spec or file")
    solve.add_argument("--param", choices=list(PARAMETERS), required=True)
    solve.set_defaults(handler=cmd_solve)

    check = subparsers.add_parser("verify", parents=[common], help="check a colouring certificate")
    check.add_argument("graph", help="graph6 code, family spec or file")
    check.add_argument("certificate", help="certificate JSON file or inline JSON")
    check.add_argument("--full-witness", action="store_true", help="report a path for every pair")
    check.set_defaults(handler=cmd_verify)

    color = subparsers.add_parser("color", parents=[common], help="build a colouring by construction")
    color.add_argument("graph", nargs="?", help="graph for star, hamcomp and clique-rc")
    color.add_argument("--method", choices=METHODS, required=True)
    color.add_argument("--hub", type=int, help="max-degree vertex for hamcomp")
    color.add_argument("--cycle", help="hamcomp cycle of G - N[hub], e.g. 3,4,5")
    color.add_argument("--clique", help="clique vertices for clique-rc, e.g. 0,1,2")
    color.add_argument("--n", type=int, help="order for cycle and wheel")
    color.add_argument("--k", type=int, help="path parameter for gkt")
    color.add_argument("--t", type=int, help="rim parameter for gkt")
    color.set_defaults(handler=cmd_color)

    bounds = subparsers.add_parser("bounds", parents=[common], help="evaluate claims on one graph")
    bounds.add_argument("graph", help="graph6 code, family spec or file")
    bounds.add_argument("--solve", action="store_true", help="solve the parameters the claims need")
    bounds.add_argument("--chi", type=int, help="known chromatic index")
    bounds.add_argument("--rc", type=int, help="known rainbow connection number")
    bounds.add_argument("--prc", type=int, help="known proper rainbow connection number")
    bounds.add_argument("--claims", help="comma-separated claim ids (default: all)")
    bounds.set_defaults(handler=cmd_bounds)

    sweep = subparsers.add_parser("sweep", parents=[common], help="check claims over a catalogue")
    source = sweep.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="graph6 stream file, - for stdin")
    source.add_argument("--family", help="family grid, e.g. cycle:4..12")
    source.add_argument("--random", help="random model, e.g. gnp:n=7,p=0.5,count=100")
    sweep.add_argument("--claims", help="comma-separated claim ids (default: all)")
    sweep.add_argument("--output", help="output directory")
    sweep.add_argument("--resume", action="store_true", help="skip graphs already in the journal")
    sweep.add_argument("--oracle", action="store_true", help="cross-check solvers with brute force")
    sweep.set_defaults(handler=cmd_sweep)

