import networkx as nx
import pytest

from app.modules.graph_core import Graph
from app.modules.graph_io import (
    EdgeListError,
    Graph6Error,
    load_graph,
    parse_edge_list,
    parse_graph6,
    read_graph6_stream,
    write_edge_list,
    write_graph6,
)
from tests.conftest import connected_atlas


def reference_graph6(g: Graph) -> bytes:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).strip()


class TestGraph6:
    def test_known_codes(self):
        assert parse_graph6("D~{") == Graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
        assert parse_graph6("A_") == Graph(2, [(0, 1)])
        assert parse_graph6("@") == Graph(1)

    def test_encoder_matches_networkx(self):
        for g in connected_atlas(7, min_n=1):
            assert write_graph6(g) == reference_graph6(g)

    def test_decoder_accepts_networkx_output(self):
        g = Graph.from_networkx(nx.petersen_graph())
        assert parse_graph6(reference_graph6(g)) == g

    def test_large_order_uses_wide_header(self):
        g = Graph(70, [(0, 69), (10, 20)])
        code = write_graph6(g)
        assert code.startswith(b"~")
        assert code == reference_graph6(g)
        assert parse_graph6(code) == g

    def test_optional_header_and_whitespace(self):
        assert parse_graph6(">>graph6<<A_\n") == Graph(2, [(0, 1)])
        assert parse_graph6(b"  D~{  ") == parse_graph6("D~{")

    def test_truncated(self):
        with pytest.raises(Graph6Error, match="truncated bitstream"):
            parse_graph6("D~")

    def test_out_of_range_character(self):
        with pytest.raises(Graph6Error, match="out-of-range character"):
            parse_graph6("D~ {")

    def test_malformed_header(self):
        with pytest.raises(Graph6Error, match="malformed header"):
            parse_graph6("~")

    def test_trailing_characters(self):
        with pytest.raises(Graph6Error, match="trailing"):
            parse_graph6("D~{?")


class TestStream:
    def test_malformed_lines_do_not_abort(self):
        entries = list(read_graph6_stream(["A_\n", "\n", "D~\n", "D~{\n"]))
        assert [e.index for e in entries] == [0, 1, 2]
        assert entries[0].graph == Graph(2, [(0, 1)])
        assert entries[1].graph is None
        assert "truncated" in entries[1].error
        assert entries[2].graph.m == 10

    def test_header_line_skipped(self):
        entries = list(read_graph6_stream([">>graph6<<", "@"]))
        assert len(entries) == 1
        assert entries[0].graph == Graph(1)


class TestEdgeList:
    def test_with_header(self):
        parsed = parse_edge_list("4 3\n0 1\n1 2\n2 3\n")
        assert parsed.graph == Graph(4, [(0, 1), (1, 2), (2, 3)])
        assert parsed.duplicates == 0

    def test_header_keeps_isolated_vertices(self):
        parsed = parse_edge_list("5 1\n0 1\n")
        assert parsed.graph.n == 5

    def test_without_header(self):
        parsed = parse_edge_list("0 1\n1 2\n2 0\n")
        assert parsed.graph == Graph(3, [(0, 1), (1, 2), (0, 2)])

    def test_duplicates_collapse(self):
        parsed = parse_edge_list("0 1\n1 0\n1 2")
        assert parsed.graph.m == 2
        assert parsed.duplicates == 1

    def test_comments_and_blank_lines(self):
        parsed = parse_edge_list("# triangle\n\n0 1  # first\n1 2\n0 2\n")
        assert parsed.graph.m == 3

    def test_self_loop(self):
        with pytest.raises(EdgeListError, match="self-loop"):
            parse_edge_list("0 1\n2 2\n")

    def test_vertex_beyond_header(self):
        with pytest.raises(EdgeListError, match=">= n"):
            parse_edge_list("2 1\n0 5", header=True)

    def test_garbage(self):
        with pytest.raises(EdgeListError, match="non-integer"):
            parse_edge_list("0 a\n")
        with pytest.raises(EdgeListError, match="expected"):
            parse_edge_list("0 1 2\n")

    def test_written_form_parses_back(self):
        g = Graph.from_networkx(nx.petersen_graph())
        text = write_edge_list(g)
        assert text.splitlines()[0] == "10 15"
        assert parse_edge_list(text).graph == g


class TestLoadGraph:
    def test_family_spec(self):
        assert load_graph("cycle:5").m == 5

    def test_graph6_code(self):
        assert load_graph("D~{").m == 10

    def test_edge_list_file(self, tmp_path):
        path = tmp_path / "g.txt"
        path.write_text("3 2\n0 1\n1 2\n")
        assert load_graph(str(path)) == Graph(3, [(0, 1), (1, 2)])

    def test_graph6_file(self, tmp_path):
        path = tmp_path / "g.g6"
        path.write_text("D~{\n")
        assert load_graph(str(path)).m == 10
