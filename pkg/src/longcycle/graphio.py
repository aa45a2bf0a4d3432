"""Reading and writing the ``.dg`` text format.

::

    # comment lines start with '#'
    # gen family=circulant n=5 steps=1,2
    p 5 10
    a 0 1
    a 0 2
    ...

Vertex ids are 0-based. Exactly ``m`` arc lines must follow the ``p`` line.
"""

from __future__ import annotations

import os
from typing import Optional, TextIO, Tuple, Union

from .digraph import Digraph
from .errors import InputError, ParseError
from .generators import GenSpec

PathLike = Union[str, os.PathLike]


def _int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}") from None
    if value < 0:
        raise ParseError(lineno, f"{what} must be non-negative, got {value}")
    return value


def parse_graph(text: str) -> Tuple[Digraph, Optional[GenSpec]]:
    """Parse ``.dg`` text into a digraph plus the embedded generator spec, if any."""
    n = m = None
    arcs = []
    gen_spec = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("gen ") and gen_spec is None:
                try:
                    gen_spec = GenSpec.from_header(body)
                except InputError as exc:
                    raise ParseError(lineno, str(exc)) from None
            continue
        fields = line.split()
        if n is None:
            if fields[0] != "p" or len(fields) != 3:
                raise ParseError(lineno, f"expected 'p <n> <m>', got {line!r}")
            n = _int(fields[1], lineno, "vertex count")
            m = _int(fields[2], lineno, "arc count")
            if n < 1:
                raise ParseError(lineno, "vertex count must be at least 1")
            continue
        if fields[0] != "a" or len(fields) != 3:
            raise ParseError(lineno, f"expected 'a <u> <v>', got {line!r}")
        if len(arcs) == m:
            raise ParseError(lineno, f"more than the declared {m} arcs")
        u = _int(fields[1], lineno, "tail")
        v = _int(fields[2], lineno, "head")
        try:
            # validate incrementally so the error points at the offending line
            Digraph(n, [(u, v)])
        except InputError as exc:
            raise ParseError(lineno, str(exc)) from None
        arcs.append((u, v, lineno))
    if n is None:
        raise ParseError(0, "missing 'p <n> <m>' line")
    if len(arcs) != m:
        raise ParseError(0, f"declared {m} arcs, found {len(arcs)}")
    seen = {}
    for u, v, lineno in arcs:
        if (u, v) in seen:
            raise ParseError(lineno, f"duplicate arc ({u}, {v}), first on line {seen[u, v]}")
        seen[u, v] = lineno
    return Digraph(n, [(u, v) for u, v, _ in arcs]), gen_spec


def format_graph(D: Digraph, gen_spec: Optional[GenSpec] = None) -> str:
    lines = []
    if gen_spec is not None:
        lines.append("# " + gen_spec.to_header())
    lines.append(f"p {D.n} {D.m}")
    lines.extend(f"a {u} {v}" for u, v in D.arc_list)
    return "\n".join(lines) + "\n"


def read_graph(source: Union[PathLike, TextIO]) -> Tuple[Digraph, Optional[GenSpec]]:
    if hasattr(source, "read"):
        return parse_graph(source.read())
    with open(source, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def write_graph(path: PathLike, D: Digraph, gen_spec: Optional[GenSpec] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_graph(D, gen_spec))
