import pytest

from minorforge import Graph, InputError, format_edgelist, load_edgelist, parse_edgelist, save_edgelist
from helpers import cycle


def test_round_trip(tmp_path):
    g = cycle(6)
    path = tmp_path / "g.el"
    save_edgelist(g, str(path))
    assert load_edgelist(str(path)) == g


def test_comments_and_blank_lines():
    text = "# a comment\n\n4 2\n# another\n0 1\n\n2 3\n"
    g = parse_edgelist(text)
    assert g.n == 4 and g.m == 2 and g.has_edge(2, 3)


def test_duplicate_edge_reports_line_number():
    with pytest.raises(InputError, match="line 4"):
        parse_edgelist("3 2\n0 1\n# x\n1 0\n")


def test_loop_reports_line_number():
    with pytest.raises(InputError, match="line 2"):
        parse_edgelist("3 1\n1 1\n")


def test_out_of_range_reports_line_number():
    with pytest.raises(InputError, match="line 3"):
        parse_edgelist("3 1\n# pad\n0 5\n")


def test_header_count_mismatch():
    with pytest.raises(InputError, match="m=3"):
        parse_edgelist("4 3\n0 1\n")


def test_empty_input():
    with pytest.raises(InputError, match="header"):
        parse_edgelist("# nothing\n")


def test_malformed_line():
    with pytest.raises(InputError, match="line 2"):
        parse_edgelist("2 1\n0 1 junk\n")


def test_canonical_format_is_sorted():
    g = Graph(4, [(2, 3), (0, 3), (0, 1)])
    assert format_edgelist(g) == "4 3\n0 1\n0 3\n2 3\n"
