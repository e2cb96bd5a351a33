import csv
import json
import logging
import random
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, NamedTuple, Optional

import networkx as nx
from cachetools import LRUCache

from app.config import Settings, get_settings
from app.schemas import (
    ClaimCounts,
    ClaimResult,
    Determinism,
    FamilySpec,
    MalformedLine,
    Parameter,
    SearchConfig,
    SourceKind,
    SweepJob,
    SweepRow,
    SweepSummary,
    Violation,
)
from app.modules.graph_core import Graph, GraphError, is_connected
from app.modules.graph_io import parse_graph6, read_graph6_stream, write_graph6
from app.modules.families import generate, parse_family_grid
from app.modules.solvers import OracleLimitError, SolverError, brute_force_oracle, chromatic_index, prc, rc
from app.modules.bounds import evaluate_bounds, required_parameters, resolve_claims

logger = logging.getLogger(__name__)

ORACLE_CLAIM = "oracle_agreement"
JOURNAL_FILE = "journal.jsonl"
SUMMARY_FILE = "summary.json"
SUMMARY_CSV = "summary.csv"
VIOLATIONS_FILE = "violations.json"

_RANDOM_PATTERN = re.compile(r"^gnp:(.*)$")


class SweepError(Exception):
    """Raised when a sweep cannot be set up or resumed."""
    pass


class SweepEntry(NamedTuple):
    index: int
    graph6: str
    family: Optional[FamilySpec]


class _Task(NamedTuple):
    entry: SweepEntry
    parameters: tuple[Parameter, ...]
    claims: tuple[str, ...]
    cfg_data: dict[str, Any]
    oracle: bool
    oracle_cap: int


def _oracle_agreement(g: Graph, values: dict[Parameter, Optional[int]], cap: int) -> ClaimResult:
    """The brute-force oracle accepts each solved value and rejects value - 1."""
    checked: dict[str, Any] = {}
    try:
        for parameter, value in values.items():
            if value is None:
                continue
            at_value = brute_force_oracle(g, parameter, value, cap)
            below = brute_force_oracle(g, parameter, value - 1, cap) if value > 0 else False
            checked[parameter.value] = {"value": value, "at_value": at_value, "below": below}
    except OracleLimitError as e:
        return ClaimResult(claim=ORACLE_CLAIM, applicable=False, details={"skipped": str(e)})
    if not checked:
        return ClaimResult(claim=ORACLE_CLAIM, applicable=False, details={"unsolved": True})
    agree = all(c["at_value"] and not c["below"] for c in checked.values())
    return ClaimResult(claim=ORACLE_CLAIM, applicable=True, satisfied=agree, details=checked)


def process_entry(task: _Task) -> SweepRow:
    """Solve one graph and evaluate the selected claims."""
    entry = task.entry
    g = parse_graph6(entry.graph6)
    row = SweepRow(index=entry.index, graph6=entry.graph6, n=g.n, m=g.m)
    claim_ids = list(task.claims) + ([ORACLE_CLAIM] if task.oracle else [])

    if not is_connected(g):
        row.claim_status = {claim: "na" for claim in claim_ids}
        row.details = {"skipped": "disconnected"}
        return row

    cfg = SearchConfig(**task.cfg_data)
    needed = set(task.parameters)
    exact: dict[Parameter, Optional[int]] = {Parameter.CHI_PRIME: None, Parameter.RC: None, Parameter.PRC: None}
    try:
        chi_result = None
        if g.m >= 1 and needed & {Parameter.CHI_PRIME, Parameter.PRC}:
            chi_result = chromatic_index(g, cfg)
            row.chi_prime = chi_result.value
            row.exact &= chi_result.exact
            if chi_result.exact:
                exact[Parameter.CHI_PRIME] = chi_result.value
            if chi_result.certificate:
                row.certificates[Parameter.CHI_PRIME.value] = chi_result.certificate
        for parameter, solver in ((Parameter.RC, rc), (Parameter.PRC, prc)):
            if parameter not in needed:
                continue
            result = solver(g, cfg, chi_result) if parameter == Parameter.PRC and chi_result else solver(g, cfg)
            setattr(row, parameter.value, result.value)
            row.exact &= result.exact
            if result.exact:
                exact[parameter] = result.value
            if result.certificate:
                row.certificates[parameter.value] = result.certificate
    except SolverError as e:
        logger.error(f"Graph {entry.index} ({entry.graph6}): {e}")
        row.claim_status = {claim: "na" for claim in claim_ids}
        row.details = {"error": str(e)}
        return row

    report = evaluate_bounds(
        g,
        chi=exact[Parameter.CHI_PRIME],
        rc=exact[Parameter.RC],
        prc=exact[Parameter.PRC],
        family=entry.family,
        claims=task.claims,
    )
    if task.oracle:
        report.claims[ORACLE_CLAIM] = _oracle_agreement(g, exact, task.oracle_cap)

    row.claim_status = {claim_id: result.status for claim_id, result in report.claims.items()}
    row.violated = [claim_id for claim_id, result in report.claims.items() if result.satisfied is False]
    row.details = {claim_id: report.claims[claim_id].details for claim_id in row.violated}
    return row


def _parse_random_source(source: str) -> tuple[int, float, int]:
    match = _RANDOM_PATTERN.match(source.strip())
    if not match:
        raise SweepError(f"random source must look like gnp:n=7,p=0.5,count=100, got {source!r}")
    fields: dict[str, str] = {}
    for part in match.group(1).split(","):
        if "=" not in part:
            raise SweepError(f"malformed random source field {part!r}")
        key, value = part.split("=", 1)
        fields[key.strip()] = value.strip()
    try:
        n, p, count = int(fields["n"]), float(fields["p"]), int(fields["count"])
    except (KeyError, ValueError) as e:
        raise SweepError(f"random source needs integer n, float p and integer count: {e}")
    if n < 1 or not 0.0 <= p <= 1.0 or count < 1:
        raise SweepError(f"random source out of range: n={n}, p={p}, count={count}")
    return n, p, count


class SweepService:
    """
    Drives solvers and claims over a graph catalogue.

    Flow:
    1. Load the source (graph6 stream, family grid or seeded random model)
    2. Replay the journal when resuming
    3. Solve every pending graph, journaling each row as it lands
    4. Aggregate and write summary.json, summary.csv and violations.json
    """

    def __init__(self, job: SweepJob, settings: Optional[Settings] = None):
        self.job = job
        self.settings = settings or get_settings()
        self.claims = resolve_claims(job.claims)
        self.parameters = required_parameters(self.claims)
        if job.oracle:
            self.parameters = set(Parameter)

        self.output_dir = Path(job.output_dir)
        self.workers = 1 if job.determinism == Determinism.SEQUENTIAL else job.jobs
        if job.determinism == Determinism.SEQUENTIAL and job.jobs > 1:
            logger.info("sequential-canonical mode runs one worker")

        self.search = SearchConfig.from_settings(
            self.settings,
            node_budget=job.node_budget,
            time_budget=job.time_budget,
            colour_cap=job.colour_cap,
            determinism=job.determinism,
            workers=1,
        )
        self._cache: LRUCache = LRUCache(maxsize=self.settings.solve_cache_size)
        self.malformed: list[MalformedLine] = []

    @property
    def journal_path(self) -> Path:
        return self.output_dir / JOURNAL_FILE

    def load_entries(self) -> list[SweepEntry]:
        """Step 1: materialise the source; malformed lines are recorded, not raised."""
        self.malformed = []
        kind = self.job.source_kind
        if kind == SourceKind.GRAPH6:
            return self._load_graph6()
        if kind == SourceKind.FAMILY:
            specs = parse_family_grid(self.job.source)
            return [SweepEntry(i, write_graph6(generate(spec)).decode("ascii"), spec) for i, spec in enumerate(specs)]
        return self._load_random()

    def _load_graph6(self) -> list[SweepEntry]:
        source = self.job.source
        if source == "-":
            lines = sys.stdin.read().splitlines()
        else:
            path = Path(source)
            if not path.is_file():
                raise SweepError(f"graph6 stream not found: {source}")
            lines = path.read_text().splitlines()

        entries = []
        for item in read_graph6_stream(lines):
            if item.error is not None:
                self.malformed.append(MalformedLine(index=item.index, text=item.text, error=item.error))
            else:
                entries.append(SweepEntry(item.index, item.text, None))
        return entries

    def _load_random(self) -> list[SweepEntry]:
        n, p, count = _parse_random_source(self.job.source)
        rng = random.Random(self.job.seed)
        entries: list[SweepEntry] = []
        attempts = 0
        while len(entries) < count:
            attempts += 1
            if attempts > 1000 * count:
                raise SweepError(f"gnp(n={n}, p={p}) rarely yields connected graphs; gave up after {attempts - 1} draws")
            sample = nx.gnp_random_graph(n, p, seed=rng.randrange(2 ** 32))
            if n > 1 and not nx.is_connected(sample):
                continue
            g = Graph.from_networkx(sample)
            entries.append(SweepEntry(len(entries), write_graph6(g).decode("ascii"), None))
        return entries

    def _read_journal(self) -> dict[int, SweepRow]:
        """Step 2: completed rows by index; a torn final line is dropped."""
        done: dict[int, SweepRow] = {}
        if not self.journal_path.exists():
            return done
        for number, line in enumerate(self.journal_path.read_text().splitlines(), start=1):
            if not line.strip():
                continue
            try:
                row = SweepRow.model_validate_json(line)
            except ValueError:
                logger.warning(f"Ignoring unreadable journal line {number}")
                continue
            done[row.index] = row
        return done

    def _task(self, entry: SweepEntry) -> _Task:
        return _Task(
            entry=entry,
            parameters=tuple(sorted(self.parameters, key=lambda p: p.value)),
            claims=tuple(self.claims),
            cfg_data=self.search.model_dump(),
            oracle=self.job.oracle,
            oracle_cap=self.settings.oracle_cap,
        )

    def _solve_pending(self, pending: list[SweepEntry]) -> list[SweepRow]:
        """Step 3: solve and journal rows in source order."""
        rows: list[SweepRow] = []
        self.journal_path.parent.mkdir(parents=True, exist_ok=True)
        with self.journal_path.open("a") as journal:

            def record(row: SweepRow) -> None:
                journal.write(row.model_dump_json() + "\n")
                journal.flush()
                rows.append(row)
                if row.violated:
                    logger.warning(f"Graph {row.index} ({row.graph6}) violates {row.violated}")

            if self.workers > 1 and len(pending) > 1:
                with ProcessPoolExecutor(max_workers=self.workers) as pool:
                    for row in pool.map(process_entry, [self._task(e) for e in pending]):
                        record(row)
                return rows

            for position, entry in enumerate(pending, start=1):
                cached = self._cache.get(entry.graph6) if entry.family is None else None
                if cached is not None:
                    record(cached.model_copy(update={"index": entry.index}))
                    continue
                row = process_entry(self._task(entry))
                if entry.family is None:
                    self._cache[entry.graph6] = row
                record(row)
                if position % 100 == 0:
                    logger.info(f"Solved {position}/{len(pending)} graphs")
        return rows

    def _reproduce(self, row: SweepRow, family: Optional[FamilySpec]) -> str:
        target = str(family) if family is not None else row.graph6
        claims = ",".join(c for c in row.violated if c != ORACLE_CLAIM)
        command = f"python -m app bounds '{target}' --solve"
        if claims:
            command += f" --claims {claims}"
        if ORACLE_CLAIM in row.violated:
            if family is not None:
                command += f" && python -m app sweep --family '{target}' --oracle"
            else:
                command += f" && echo '{row.graph6}' | python -m app sweep --input - --oracle"
        return command

    def summarise(self, rows: list[SweepRow], entries: list[SweepEntry], started: float) -> SweepSummary:
        """Step 4: per-claim counts and violations."""
        families = {e.index: e.family for e in entries}
        claim_ids = list(self.claims) + ([ORACLE_CLAIM] if self.job.oracle else [])
        counts = {claim: ClaimCounts() for claim in claim_ids}
        violations: list[Violation] = []

        for row in sorted(rows, key=lambda r: r.index):
            for claim in claim_ids:
                status = row.claim_status.get(claim, "na")
                if status == "pass":
                    counts[claim].passed += 1
                elif status == "fail":
                    counts[claim].failed += 1
                else:
                    counts[claim].na += 1
            if row.violated:
                violations.append(
                    Violation(
                        index=row.index,
                        graph6=row.graph6,
                        claims=row.violated,
                        details=row.details,
                        certificates=row.certificates,
                        reproduce=self._reproduce(row, families.get(row.index)),
                    )
                )

        return SweepSummary(
            source=f"{self.job.source_kind.value}:{self.job.source}",
            seed=self.job.seed,
            processed=len(rows),
            inexact=sum(1 for row in rows if not row.exact),
            malformed=self.malformed,
            claims=counts,
            violations=violations,
            wall_time_seconds=round(time.time() - started, 3),
        )

    def write_outputs(self, summary: SweepSummary, rows: list[SweepRow]) -> None:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        (self.output_dir / SUMMARY_FILE).write_text(summary.model_dump_json(indent=2))
        (self.output_dir / VIOLATIONS_FILE).write_text(
            json.dumps([v.model_dump(mode="json") for v in summary.violations], indent=2)
        )
        with (self.output_dir / SUMMARY_CSV).open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["index", "graph6", "n", "m", "chi_prime", "rc", "prc", "exact", "violated"])
            for row in sorted(rows, key=lambda r: r.index):
                writer.writerow([
                    row.index, row.graph6, row.n, row.m,
                    "" if row.chi_prime is None else row.chi_prime,
                    "" if row.rc is None else row.rc,
                    "" if row.prc is None else row.prc,
                    row.exact, ";".join(row.violated),
                ])

    def run(self) -> SweepSummary:
        """
        Run the sweep end to end.

        Raises:
            SweepError: unreadable source or output directory
        """
        started = time.time()
        logger.info(f"Step 1/4: Loading {self.job.source_kind.value} source {self.job.source}")
        try:
            entries = self.load_entries()
        except GraphError as e:
            raise SweepError(str(e))
        logger.info(f"Loaded {len(entries)} graphs, {len(self.malformed)} malformed lines")

        done: dict[int, SweepRow] = {}
        if self.job.resume:
            logger.info("Step 2/4: Replaying journal")
            done = self._read_journal()
            logger.info(f"{len(done)} graphs already solved")
        else:
            logger.info("Step 2/4: Starting a fresh journal")
            self.output_dir.mkdir(parents=True, exist_ok=True)
            self.journal_path.write_text("")

        wanted = {e.index for e in entries}
        done = {index: row for index, row in done.items() if index in wanted}
        if self.job.resume:
            # rewrite so a torn tail cannot swallow the next appended row
            self.output_dir.mkdir(parents=True, exist_ok=True)
            self.journal_path.write_text(
                "".join(row.model_dump_json() + "\n" for _, row in sorted(done.items()))
            )
        pending = [e for e in entries if e.index not in done]
        logger.info(f"Step 3/4: Solving {len(pending)} graphs on {self.workers} worker(s)")
        rows = list(done.values()) + self._solve_pending(pending)

        logger.info("Step 4/4: Writing summary")
        summary = self.summarise(rows, entries, started)
        self.write_outputs(summary, rows)
        logger.info(
            f"Sweep done: {summary.processed} graphs, {len(summary.violations)} violations, "
            f"{summary.wall_time_seconds}s"
        )
        return summary
