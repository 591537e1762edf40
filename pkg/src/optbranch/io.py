"""Edge-list and DIMACS graph readers.

Edge-list grammar: one ``u v`` pair per line, 1-based ids, ``#`` starts a
comment; a line holding a single integer declares the vertex count, which is
how edgeless vertices (and whole edgeless graphs) are expressed.  DIMACS
grammar: ``c`` comments, one ``p edge <n> <m>`` header, then ``e u v`` lines.
Both readers deduplicate edges and reject self-loops.
"""

from __future__ import annotations

from .errors import InputError
from .graph import Graph


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_edgelist(lines) -> Graph:
    declared = 0
    max_id = 0
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        text = _strip(raw)
        if not text:
            continue
        parts = text.split()
        if len(parts) == 1:
            try:
                declared = max(declared, int(parts[0]))
            except ValueError:
                raise InputError(f"line {lineno}: expected a vertex count, got {parts[0]!r}")
            if int(parts[0]) < 0:
                raise InputError(f"line {lineno}: vertex count must be non-negative")
            continue
        if len(parts) != 2:
            raise InputError(f"line {lineno}: expected 'u v', got {text!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"line {lineno}: non-integer vertex id in {text!r}")
        if u < 1 or v < 1:
            raise InputError(f"line {lineno}: vertex ids are 1-based")
        if u == v:
            raise InputError(f"line {lineno}: self-loop at vertex {u}")
        if declared and (u > declared or v > declared):
            raise InputError(f"line {lineno}: vertex id above declared count {declared}")
        max_id = max(max_id, u, v)
        edges.append((u - 1, v - 1))
    n = max(declared, max_id)
    return Graph(n, set(tuple(sorted(e)) for e in edges))


def _parse_dimacs(lines) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("c"):
            continue
        parts = text.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge":
                raise InputError(f"line {lineno}: malformed problem line {text!r}")
            if n is not None:
                raise InputError(f"line {lineno}: duplicate problem line")
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise InputError(f"line {lineno}: malformed problem line {text!r}")
        elif parts[0] == "e":
            if n is None:
                raise InputError(f"line {lineno}: edge before 'p edge' header")
            if len(parts) != 3:
                raise InputError(f"line {lineno}: expected 'e u v', got {text!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise InputError(f"line {lineno}: non-integer vertex id in {text!r}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"line {lineno}: vertex id outside 1..{n}")
            if u == v:
                raise InputError(f"line {lineno}: self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        else:
            raise InputError(f"line {lineno}: unrecognized line {text!r}")
    if n is None:
        raise InputError("missing 'p edge' header")
    return Graph(n, set(tuple(sorted(e)) for e in edges))


def parse_graph(path, fmt: str = "edgelist") -> Graph:
    """Read a graph file in the given format ('edgelist' or 'dimacs')."""
    if fmt not in ("edgelist", "dimacs"):
        raise InputError(f"unknown graph format {fmt!r}")
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return _parse_edgelist(lines) if fmt == "edgelist" else _parse_dimacs(lines)
