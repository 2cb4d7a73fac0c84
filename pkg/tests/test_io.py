from __future__ import annotations

import io

import pytest
from hypothesis import given

from conftest import triple_graphs
from ringfano.constructions import build_pg2
from ringfano.errors import FormatError
from ringfano.io import format_3g, parse_3g, read_3g, read_kgraph, write_3g, write_kgraph


@given(triple_graphs())
def test_roundtrip(G):
    assert parse_3g(format_3g(G, comment="x")) == G


def test_comments_and_blank_lines():
    G = parse_3g("# header comment\n\n4 2\n0 1 2\n# inline\n1 2 3\n")
    assert G.triples() == [(0, 1, 2), (1, 2, 3)]


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("", "missing header"),
        ("4\n", "header must have 2"),
        ("4 2\n0 1 2\n", "declares 2 edges"),
        ("4 1\n0 2 1\n", "ascending"),
        ("4 1\n0 1 4\n", "out of range"),
        ("4 2\n0 1 2\n0 1 2\n", "duplicate"),
        ("4 1\n0 1 z\n", "non-integer"),
        ("4 1\n0 1\n", "expected 3"),
    ],
)
def test_rejects_malformed(text, fragment):
    with pytest.raises(FormatError, match=fragment):
        parse_3g(text)


def test_error_names_file_and_line(tmp_path):
    p = tmp_path / "bad.3g"
    p.write_text("3 1\n0 1 1\n")
    with pytest.raises(FormatError) as err:
        read_3g(p)
    assert str(err.value).startswith(f"{p}:2:")


def test_unreadable_file_names_path(tmp_path):
    missing = tmp_path / "nope.3g"
    with pytest.raises(FormatError, match="nope.3g"):
        read_3g(missing)


def test_file_roundtrip(tmp_path):
    G = parse_3g("5 2\n0 1 2\n2 3 4\n")
    p = tmp_path / "g.3g"
    write_3g(G, p)
    assert read_3g(p) == G
    buf = io.StringIO()
    write_3g(G, buf)
    assert buf.getvalue() == p.read_text()


def test_kgraph_roundtrip(tmp_path):
    H = build_pg2(3)
    p = tmp_path / "pg.kg"
    write_kgraph(H, p, comment="plane")
    assert read_kgraph(p) == H
    (tmp_path / "k0.kg").write_text("3 0 0\n")
    with pytest.raises(FormatError, match="positive"):
        read_kgraph(tmp_path / "k0.kg")
