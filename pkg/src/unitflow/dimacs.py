"""Plain-text instance and solution files.

Instances::

    c optional comment
    p mcf <n> <m>
    a <u> <v> <cost>          (m lines, 1-based vertices, unit capacity)
    e <v> <w1> <w2> ...       (optional: ccw neighbours of v)

Solutions::

    s <cost>
    f <arc> <0|1>             (1-based arc index, one line per arc)
    q <v> <price>             (optional)
    u <unit> <eps>            (optional: price scale and optimality gap)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .graph import MultiGraph


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based (0 when the whole file is at fault)."""

    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}" if line else msg)
        self.line = line


@dataclass
class ParsedInstance:
    graph: MultiGraph
    rotation: Optional[list[list[int]]] = None
    comments: list[str] = field(default_factory=list)


def _ints(parts, line, what):
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise ParseError(line, f"expected integers in {what}") from None


def parse_instance(text: str) -> ParsedInstance:
    n = m = None
    arcs = []
    emb: dict[int, list[int]] = {}
    comments = []
    for ln, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        if tag == "c":
            comments.append(raw[1:].strip())
        elif tag == "p":
            if n is not None:
                raise ParseError(ln, "second problem line")
            if len(parts) != 4 or parts[1] != "mcf":
                raise ParseError(ln, "problem line must read 'p mcf <n> <m>'")
            n, m = _ints(parts[2:], ln, "problem line")
            if n < 0 or m < 0:
                raise ParseError(ln, "sizes must be nonnegative")
        elif tag == "a":
            if n is None:
                raise ParseError(ln, "arc before problem line")
            if len(parts) != 4:
                raise ParseError(ln, "arc line must read 'a <u> <v> <cost>'")
            u, v, c = _ints(parts[1:], ln, "arc line")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(ln, f"vertex {x} out of range 1..{n}")
            arcs.append((u - 1, v - 1, c))
        elif tag == "e":
            if n is None:
                raise ParseError(ln, "embedding before problem line")
            vals = _ints(parts[1:], ln, "embedding line")
            if not vals:
                raise ParseError(ln, "embedding line needs a vertex")
            for x in vals:
                if not 1 <= x <= n:
                    raise ParseError(ln, f"vertex {x} out of range 1..{n}")
            v = vals[0] - 1
            if v in emb:
                raise ParseError(ln, f"second embedding line for vertex {v + 1}")
            emb[v] = [x - 1 for x in vals[1:]]
        else:
            raise ParseError(ln, f"unknown line type {tag!r}")
    if n is None:
        raise ParseError(0, "missing problem line")
    if len(arcs) != m:
        raise ParseError(0, f"problem line announces {m} arcs, found {len(arcs)}")
    rotation = None
    if emb:
        rotation = [emb.get(v, []) for v in range(n)]
    return ParsedInstance(MultiGraph.from_arcs(n, arcs), rotation, comments)


def serialize_instance(g: MultiGraph, rotation=None, comments=()) -> str:
    out = [f"c {c}" for c in comments]
    out.append(f"p mcf {g.n} {g.m}")
    out.extend(f"a {u + 1} {v + 1} {c}" for u, v, c in g.arcs())
    if rotation is not None:
        for v, nb in enumerate(rotation):
            out.append(" ".join(["e", str(v + 1), *(str(w + 1) for w in nb)]))
    return "\n".join(out) + "\n"


@dataclass
class ParsedSolution:
    cost: Optional[int]
    flow: list[int]
    prices: Optional[list[int]] = None
    unit: int = 1
    eps: int = 0


def serialize_solution(cost: int, flow, prices=None, unit: int = 1, eps: int = 0) -> str:
    out = [f"s {cost}"]
    out.extend(f"f {i + 1} {x}" for i, x in enumerate(flow))
    if prices is not None:
        out.append(f"u {unit} {eps}")
        out.extend(f"q {v + 1} {p}" for v, p in enumerate(prices))
    return "\n".join(out) + "\n"


def parse_solution(text: str, m: int, n: int) -> ParsedSolution:
    cost = None
    flow: list[Optional[int]] = [None] * m
    prices: Optional[list[Optional[int]]] = None
    unit, eps = 1, 0
    for ln, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        vals = _ints(parts[1:], ln, f"{tag!r} line")
        if tag == "s" and len(vals) == 1:
            cost = vals[0]
        elif tag == "f" and len(vals) == 2:
            i, x = vals
            if not 1 <= i <= m:
                raise ParseError(ln, f"arc {i} out of range 1..{m}")
            flow[i - 1] = x
        elif tag == "q" and len(vals) == 2:
            v, p = vals
            if not 1 <= v <= n:
                raise ParseError(ln, f"vertex {v} out of range 1..{n}")
            if prices is None:
                prices = [None] * n
            prices[v - 1] = p
        elif tag == "u" and len(vals) == 2:
            unit, eps = vals
        else:
            raise ParseError(ln, f"malformed {tag!r} line")
    missing = [i + 1 for i, x in enumerate(flow) if x is None]
    if missing:
        raise ParseError(0, f"no flow value for arc {missing[0]}")
    if prices is not None and any(p is None for p in prices):
        raise ParseError(0, "price list is incomplete")
    return ParsedSolution(cost, flow, prices, unit, eps)
