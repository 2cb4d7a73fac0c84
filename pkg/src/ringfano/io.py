"""Plain-text graph files.

``.3g`` files::

    # optional comment lines
    n m
    i j k      (m lines, 0-based, i < j < k)

k-graph files use the header ``n k m`` followed by ``m`` lines of ``k``
ascending vertex ids.  Duplicate edge lines are rejected.
"""

from __future__ import annotations

from pathlib import Path
from typing import IO

from .errors import FormatError
from .hypergraph import KGraph, TripleGraph

__all__ = ["read_3g", "write_3g", "read_kgraph", "write_kgraph", "parse_3g", "format_3g"]


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _ints(line: str, lineno: int, path) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise FormatError(f"non-integer token in {line!r}", path, lineno) from None


def _parse_edges(text: str, header_len: int, path):
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("missing header line", path)
    lineno, header = lines[0]
    head = _ints(header, lineno, path)
    if len(head) != header_len:
        raise FormatError(f"header must have {header_len} integers, got {header!r}", path, lineno)
    if any(v < 0 for v in head):
        raise FormatError("header values must be non-negative", path, lineno)
    width = 3 if header_len == 2 else head[1]
    if width < 1:
        raise FormatError(f"edge size k must be positive, got {width}", path, lineno)
    m = head[-1]
    n = head[0]
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header declares {m} edges, found {len(body)}", path)
    seen = set()
    edges = []
    for lineno, line in body:
        e = tuple(_ints(line, lineno, path))
        if len(e) != width:
            raise FormatError(f"expected {width} vertices, got {line!r}", path, lineno)
        if any(a >= b for a, b in zip(e, e[1:])):
            raise FormatError(f"vertices must be strictly ascending: {line!r}", path, lineno)
        if e[0] < 0 or e[-1] >= n:
            raise FormatError(f"vertex out of range for n={n}: {line!r}", path, lineno)
        if e in seen:
            raise FormatError(f"duplicate edge {line!r}", path, lineno)
        seen.add(e)
        edges.append(e)
    return head, edges


def parse_3g(text: str, path=None) -> TripleGraph:
    (n, _), edges = _parse_edges(text, 2, path)
    return TripleGraph.from_edges(n, edges)


def format_3g(G: TripleGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{G.n} {G.edge_count}")
    lines.extend(f"{i} {j} {k}" for i, j, k in G.triples())
    return "\n".join(lines) + "\n"


def read_3g(path) -> TripleGraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read file ({exc})", path) from exc
    return parse_3g(text, path)


def write_3g(G: TripleGraph, path_or_file, comment: str | None = None) -> None:
    text = format_3g(G, comment)
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        Path(path_or_file).write_text(text, encoding="utf-8")


def read_kgraph(path) -> KGraph:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise FormatError(f"cannot read file ({exc})", path) from exc
    (n, k, _), edges = _parse_edges(text, 3, path)
    return KGraph(n, k, frozenset(edges))


def write_kgraph(H: KGraph, path_or_file: str | Path | IO[str], comment: str | None = None) -> None:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{H.n} {H.k} {H.edge_count}")
    lines.extend(" ".join(map(str, e)) for e in H.sorted_edges())
    text = "\n".join(lines) + "\n"
    if hasattr(path_or_file, "write"):
        path_or_file.write(text)
    else:
        Path(path_or_file).write_text(text, encoding="utf-8")
