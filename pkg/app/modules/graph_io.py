import logging
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple, Optional, Union

from app.modules.graph_core import Graph, GraphError
from app.modules.families import generate_from_string, is_family_spec

logger = logging.getLogger(__name__)

GRAPH6_HEADER = ">>graph6<<"
_OFFSET = 63
_MAX_CHAR = 126
_WIDE = _MAX_CHAR - _OFFSET


class Graph6Error(GraphError):
    """Raised when a graph6 code cannot be decoded."""
    pass


class EdgeListError(GraphError):
    """Raised when an edge-list text cannot be parsed."""
    pass


class EdgeListParse(NamedTuple):
    graph: Graph
    duplicates: int


class StreamEntry(NamedTuple):
    """One line of a graph6 stream; exactly one of graph/error is set."""
    index: int
    text: str
    graph: Optional[Graph]
    error: Optional[str]


def _encode_size(n: int) -> str:
    if n < 0 or n > 68719476735:
        raise Graph6Error(f"malformed header: order {n} not representable")
    if n <= 62:
        return chr(n + _OFFSET)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + _OFFSET) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + _OFFSET) for s in (30, 24, 18, 12, 6, 0))


def write_graph6(g: Graph) -> bytes:
    """Encode g without the optional ``>>graph6<<`` header."""
    bits = [0] * (g.n * (g.n - 1) // 2)
    for u, v in g.edges:
        # column-wise upper triangle: pair (i, j), i < j, sits at j(j-1)/2 + i
        bits[v * (v - 1) // 2 + u] = 1
    bits.extend([0] * (-len(bits) % 6))

    body = []
    for start in range(0, len(bits), 6):
        value = 0
        for bit in bits[start:start + 6]:
            value = (value << 1) | bit
        body.append(chr(value + _OFFSET))
    return (_encode_size(g.n) + "".join(body)).encode("ascii")


def _decode_size(codes: list[int]) -> tuple[int, int]:
    """Return (n, header length)."""
    if not codes:
        raise Graph6Error("malformed header: empty code")
    if codes[0] != _WIDE:
        return codes[0], 1
    if len(codes) >= 2 and codes[1] == _WIDE:
        if len(codes) < 8:
            raise Graph6Error("malformed header: incomplete 8-byte size field")
        n = 0
        for c in codes[2:8]:
            n = (n << 6) | c
        return n, 8
    if len(codes) < 4:
        raise Graph6Error("malformed header: incomplete 4-byte size field")
    n = 0
    for c in codes[1:4]:
        n = (n << 6) | c
    return n, 4


def parse_graph6(text: Union[bytes, str]) -> Graph:
    """
    Decode one graph6 code.

    Raises:
        Graph6Error: malformed header, truncated bitstream, out-of-range
            character or trailing characters
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError:
            raise Graph6Error("out-of-range character: non-ASCII byte")
    text = text.strip()
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER):]

    for position, char in enumerate(text):
        if not _OFFSET <= ord(char) <= _MAX_CHAR:
            raise Graph6Error(f"out-of-range character {char!r} at position {position}")

    codes = [ord(char) - _OFFSET for char in text]
    n, header_len = _decode_size(codes)

    pair_count = n * (n - 1) // 2
    needed = (pair_count + 5) // 6
    body = codes[header_len:]
    if len(body) < needed:
        raise Graph6Error(
            f"truncated bitstream: order {n} needs {needed} data characters, got {len(body)}"
        )
    if len(body) > needed:
        raise Graph6Error(f"malformed header: {len(body) - needed} trailing characters for order {n}")

    edges = []
    position = 0
    for j in range(1, n):
        for i in range(j):
            if (body[position // 6] >> (5 - position % 6)) & 1:
                edges.append((i, j))
            position += 1
    return Graph(n, edges)


def read_graph6_stream(lines: Iterable[str]) -> Iterator[StreamEntry]:
    """
    Decode a catalogue stream line by line.

    Blank lines are skipped without consuming an index; malformed lines are
    yielded with their error instead of raising.
    """
    index = 0
    for raw in lines:
        line = raw.strip()
        if not line or line == GRAPH6_HEADER:
            continue
        try:
            graph = parse_graph6(line)
            yield StreamEntry(index, line, graph, None)
        except GraphError as e:
            logger.warning(f"Skipping malformed graph6 line {index}: {e}")
            yield StreamEntry(index, line, None, str(e))
        index += 1


def _edge_lines(text: str) -> list[tuple[int, list[str]]]:
    rows = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((number, line.split()))
    return rows


def _as_pair(number: int, fields: list[str]) -> tuple[int, int]:
    if len(fields) != 2:
        raise EdgeListError(f"line {number}: expected 'u v', got {' '.join(fields)!r}")
    try:
        return int(fields[0]), int(fields[1])
    except ValueError:
        raise EdgeListError(f"line {number}: non-integer vertex id in {' '.join(fields)!r}")


def _looks_like_header(first: tuple[int, int], rest: list[tuple[int, int]]) -> bool:
    n, m = first
    if m != len(rest) or n <= 0:
        return False
    return all(0 <= u < n and 0 <= v < n for u, v in rest)


def parse_edge_list(text: str, header: Optional[bool] = None) -> EdgeListParse:
    """
    Parse ``u v`` lines with an optional leading ``n m`` line.

    With ``header=None`` the first line is read as a header when it holds two
    integers and the number of remaining lines equals its second value.
    Duplicate edges are collapsed and counted.
    """
    rows = _edge_lines(text)
    pairs = [(number, _as_pair(number, fields)) for number, fields in rows]

    if header is None:
        header = bool(pairs) and _looks_like_header(pairs[0][1], [pair for _, pair in pairs[1:]])

    n: Optional[int] = None
    if header:
        if not pairs:
            raise EdgeListError("missing 'n m' header line")
        n = pairs[0][1][0]
        if n < 0:
            raise EdgeListError(f"header declares negative order {n}")
        pairs = pairs[1:]

    seen: set[tuple[int, int]] = set()
    duplicates = 0
    for number, (u, v) in pairs:
        if u == v:
            raise EdgeListError(f"line {number}: self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise EdgeListError(f"line {number}: negative vertex id")
        if n is not None and max(u, v) >= n:
            raise EdgeListError(f"line {number}: vertex id {max(u, v)} >= n = {n}")
        key = (min(u, v), max(u, v))
        if key in seen:
            duplicates += 1
        seen.add(key)

    if n is None:
        n = max((max(edge) for edge in seen), default=-1) + 1
    if duplicates:
        logger.warning(f"Collapsed {duplicates} duplicate edge(s)")
    return EdgeListParse(Graph(n, seen), duplicates)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _parse_file_contents(text: str) -> Graph:
    rows = _edge_lines(text)
    if rows and len(rows[0][1]) == 1 and len(rows) == 1:
        return parse_graph6(rows[0][1][0])
    if rows and rows[0][1][0].startswith(GRAPH6_HEADER):
        return parse_graph6(rows[0][1][0])
    return parse_edge_list(text).graph


def load_graph(source: str) -> Graph:
    """
    Resolve a CLI graph argument.

    Tried in order: an existing file (single graph6 line or edge list), a
    family spec such as ``wheel:5``, then a raw graph6 code.
    """
    path = Path(source)
    if path.is_file():
        logger.info(f"Reading graph from {path}")
        return _parse_file_contents(path.read_text())
    if is_family_spec(source):
        return generate_from_string(source)
    return parse_graph6(source)
