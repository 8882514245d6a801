# Copyright (c) 2023 Alex Butler
#
# Permission is hereby granted, free of charge, to any person obtaining a copy of this
# software and associated documentation files (the "Software"), to deal in the Software
# without restriction, including without limitation the rights to use, copy, modify, merge,
# publish, distribute, sublicense, and/or sell copies of the Software, and to permit persons
# to whom the Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all copies or
# substantial portions of the Software.
"""graph6 and edge-list codecs.

graph6 layout: N(n) is one byte 63+n for n <= 62, or 126 followed by three
6-bit groups for larger n. The upper triangle follows column by column
(x01, x02, x12, x03, ...), six bits per byte offset by 63, zero padded.
"""
from typing import Iterator, List, Tuple, Union

from edge_regularity.constants import MAX_VERTICES
from edge_regularity.core import CapacityError, Graph, GraphParseError

GRAPH6_HEADER = b">>graph6<<"


def _encode_size(n: int) -> bytes:
    if n <= 62:
        return bytes([63 + n])
    return bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])


def emit_graph6(g: Graph) -> bytes:
    """Canonical graph6 bytes, no header and no trailing newline."""
    out = bytearray(_encode_size(g.n))
    acc, filled = 0, 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            filled += 1
            if filled == 6:
                out.append(63 + acc)
                acc, filled = 0, 0
    if filled:
        out.append(63 + (acc << (6 - filled)))
    return bytes(out)


def parse_graph6(data: Union[bytes, str]) -> Graph:
    """Decode one graph6 encoding; an optional header and trailing newline are accepted."""
    if isinstance(data, str):
        try:
            data = data.encode("ascii")
        except UnicodeEncodeError as exc:
            raise GraphParseError("graph6 input is not ASCII", offset=exc.start) from None
    data = data.rstrip(b"\r\n")
    start = len(GRAPH6_HEADER) if data.startswith(GRAPH6_HEADER) else 0
    if start >= len(data):
        raise GraphParseError("empty graph6 input", offset=start)
    for pos in range(start, len(data)):
        if not 63 <= data[pos] <= 126:
            raise GraphParseError(f"byte {data[pos]} outside the graph6 range 63..126", offset=pos)

    if data[start] < 126:
        n, pos = data[start] - 63, start + 1
    else:
        if len(data) > start + 1 and data[start + 1] == 126:
            raise CapacityError(
                f"8-byte graph6 sizes exceed the {MAX_VERTICES}-vertex limit", limit=MAX_VERTICES
            )
        if len(data) < start + 4:
            raise GraphParseError("truncated graph6 size field", offset=len(data))
        n = (data[start + 1] - 63) << 12 | (data[start + 2] - 63) << 6 | (data[start + 3] - 63)
        pos = start + 4
    if n > MAX_VERTICES:
        raise CapacityError(
            f"graph6 declares {n} vertices, the limit is {MAX_VERTICES}",
            limit=MAX_VERTICES,
            reached=n,
        )

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise GraphParseError(
            f"truncated graph6 data: expected {nbytes} bytes, got {len(body)}", offset=len(data)
        )
    if len(body) > nbytes:
        raise GraphParseError(
            f"trailing bytes after graph6 data for n={n}", offset=pos + nbytes
        )

    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] - 63) >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    if nbytes and (body[-1] - 63) & ((1 << (6 * nbytes - nbits)) - 1):
        raise GraphParseError("nonzero graph6 padding bits", offset=pos + nbytes - 1)
    return Graph(n, tuple(rows))


def parse_edge_list(text: str) -> Graph:
    """Parse "u v" lines with 0-based indices, "#" comments and an optional leading "n <count>"."""
    declared = None
    edges: List[Tuple[int, int]] = []
    highest = -1
    seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if seen:
                raise GraphParseError("the 'n <count>' header must come first", line=lineno)
            if len(tokens) != 2 or not tokens[1].lstrip("-").isdigit():
                raise GraphParseError("expected 'n <count>'", line=lineno)
            declared = int(tokens[1])
            if declared < 0:
                raise GraphParseError("negative vertex count", line=lineno)
            if declared > MAX_VERTICES:
                raise CapacityError(
                    f"declared {declared} vertices on line {lineno}, the limit is {MAX_VERTICES}",
                    limit=MAX_VERTICES,
                    reached=declared,
                )
            seen = True
            continue
        seen = True
        if len(tokens) != 2:
            raise GraphParseError(f"expected 'u v', got {line!r}", line=lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex in {line!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise GraphParseError("negative vertex index", line=lineno)
        if u >= MAX_VERTICES or v >= MAX_VERTICES:
            raise GraphParseError(f"vertex index >= {MAX_VERTICES}", line=lineno)
        if u == v:
            raise GraphParseError(f"loop at vertex {u}", line=lineno)
        if declared is not None and max(u, v) >= declared:
            raise GraphParseError(
                f"vertex {max(u, v)} is outside the declared n={declared}", line=lineno
            )
        highest = max(highest, u, v)
        edges.append((u, v))
    n = declared if declared is not None else highest + 1
    return Graph.from_edges(n, edges)


def emit_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph6_stream(data: Union[bytes, str]) -> Iterator[Tuple[int, Graph]]:
    """One graph per non-empty line, with 1-based line numbers; a leading header is skipped."""
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    for line_no, line in enumerate(data.splitlines(), start=1):
        line = line.strip()
        if not line or line == GRAPH6_HEADER:
            continue
        try:
            yield line_no, parse_graph6(line)
        except GraphParseError as exc:
            raise GraphParseError(exc.message, offset=exc.offset, line=line_no) from None
