"""Link diagrams: braid-word and planar-diagram input, validation, coloring data.

A crossing is stored as an ordered PD quadruple (a, b, c, d) of edge labels
together with a sign (+1 "black", -1 "white").  The smoothing convention is
uniform for both signs:

    0-smoothing joins a-b and c-d,
    1-smoothing joins a-d and b-c.

The coloring only selects the initial hypercube vertex (0 at black crossings,
1 at white ones); the cube itself depends just on the underlying 4-valent
graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import cached_property

EdgeLabel = int | str


class DiagramError(ValueError):
    """Malformed diagram input."""


def label_key(e: EdgeLabel):
    """Deterministic sort key for mixed int/str edge labels."""
    if isinstance(e, int):
        return (0, e, "")
    return (1, 0, str(e))


@dataclass(frozen=True)
class Crossing:
    """PD quadruple plus sign; sign +1 is black (R), -1 is white (R^-1)."""
    pd: tuple[EdgeLabel, EdgeLabel, EdgeLabel, EdgeLabel]
    sign: int

    def __post_init__(self):
        if len(self.pd) != 4:
            raise DiagramError(f"crossing needs 4 edges, got {self.pd!r}")
        if self.sign not in (1, -1):
            raise DiagramError(f"crossing sign must be +-1, got {self.sign!r}")

    def smoothing_joins(self, bit: int) -> tuple[tuple[EdgeLabel, EdgeLabel],
                                                 tuple[EdgeLabel, EdgeLabel]]:
        a, b, c, d = self.pd
        if bit == 0:
            return (a, b), (c, d)
        return (a, d), (b, c)


@dataclass(frozen=True)
class KnotDiagram:
    """A link diagram: crossings over a labeled edge set, plus crossing-free loops.

    ``loops`` are closed edges touching no crossing (the unknot components of
    an empty braid word); every other edge must appear exactly twice across
    the PD quadruples.
    """
    crossings: tuple[Crossing, ...]
    edges: frozenset
    loops: frozenset = frozenset()
    marked_edge: EdgeLabel | None = None

    @property
    def n_black(self) -> int:
        return sum(1 for x in self.crossings if x.sign > 0)

    @property
    def n_white(self) -> int:
        return sum(1 for x in self.crossings if x.sign < 0)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def default_marked_edge(self) -> EdgeLabel:
        if self.marked_edge is not None:
            return self.marked_edge
        if not self.edges:
            raise DiagramError("diagram has no edges to mark")
        return min(self.edges, key=label_key)

    def with_marked_edge(self, edge: EdgeLabel) -> "KnotDiagram":
        return replace(self, marked_edge=edge)

    @cached_property
    def incidence(self) -> dict:
        counts: dict = {}
        for x in self.crossings:
            for e in x.pd:
                counts[e] = counts.get(e, 0) + 1
        return counts

    def violations(self) -> list[str]:
        """All invariant violations, not just the first."""
        out = []
        counts = self.incidence
        for e in sorted(self.edges, key=label_key):
            n = counts.get(e, 0)
            if e in self.loops:
                if n != 0:
                    out.append(f"loop edge {e} appears in {n} crossing slots")
            elif n != 2:
                out.append(f"edge {e} appears {n} times (expected 2)")
        for e in sorted(counts, key=label_key):
            if e not in self.edges:
                out.append(f"crossing references unknown edge {e}")
        if self.marked_edge is not None and self.marked_edge not in self.edges:
            out.append(f"marked edge {self.marked_edge} unknown")
        return out


def validate(diagram: KnotDiagram) -> list[str]:
    """Return the list of invariant violations (empty means ok)."""
    return diagram.violations()


# --- braid words --------------------------------------------------------------

def _parse_letters(text: str) -> list[int]:
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    letters = []
    for t in tokens:
        try:
            v = int(t)
        except ValueError:
            raise DiagramError(f"malformed braid token {t!r}") from None
        if v == 0:
            raise DiagramError("braid letter 0 is not allowed")
        letters.append(v)
    return letters


def parse_braid_word(text: str, strands: int,
                     marked_edge: EdgeLabel | None = None) -> KnotDiagram:
    """Closure of a braid word; positive letters become black crossings.

    Edges are numbered 1..E in order of first appearance along the crossing
    list, so fixtures are stable.
    """
    if strands < 1:
        raise DiagramError("strand count must be >= 1")
    letters = _parse_letters(text)
    for v in letters:
        if abs(v) >= strands:
            raise DiagramError(
                f"braid letter {v} out of range for {strands} strands")

    # Provisional labels: 0..strands-1 are the initial strand edges.
    cur = list(range(strands))
    nxt = strands
    prov: list[tuple[tuple[int, int, int, int], int]] = []
    for v in letters:
        i = abs(v) - 1
        u, w = cur[i], cur[i + 1]
        x, y = nxt, nxt + 1
        nxt += 2
        # (incoming right, outgoing right, outgoing left, incoming left):
        # the 0-smoothing (first-second / third-fourth) is the through-going one.
        prov.append(((w, y, x, u), 1 if v > 0 else -1))
        cur[i], cur[i + 1] = x, y

    # Braid closure: identify each strand's final edge with its initial one.
    parent = list(range(nxt))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(strands):
        ra, rb = find(cur[i]), find(i)
        if ra != rb:
            parent[ra] = rb

    relabel: dict[int, int] = {}

    def canon(a: int) -> int:
        r = find(a)
        if r not in relabel:
            relabel[r] = len(relabel) + 1
        return relabel[r]

    crossings = tuple(
        Crossing(tuple(canon(e) for e in pd), sign) for pd, sign in prov)
    used = {e for x in crossings for e in x.pd}
    loops = frozenset(canon(i) for i in range(strands) if canon(i) not in used)
    edges = frozenset(used) | loops
    d = KnotDiagram(crossings, edges, loops, marked_edge)
    bad = d.violations()
    if bad:
        raise DiagramError("; ".join(bad))
    return d


# --- PD codes -----------------------------------------------------------------

_PD_RECORD_RE = re.compile(r"X\(\s*([^()]*?)\s*\)\s*([+-])")


def _pd_label(tok: str) -> EdgeLabel:
    tok = tok.strip()
    if not tok or not re.fullmatch(r"\w+", tok):
        raise DiagramError(f"bad edge label {tok!r}")
    if re.fullmatch(r"-?\d+", tok):
        return int(tok)
    return tok


def parse_pd_code(text: str,
                  marked_edge: EdgeLabel | None = None) -> KnotDiagram:
    """Parse records "X(e1,e2,e3,e4)+" / "...-" separated by newlines or ';'."""
    body = text.strip()
    if not body:
        raise DiagramError("empty PD code")
    crossings = []
    seen = set()
    consumed = 0
    for m in _PD_RECORD_RE.finditer(body):
        toks = [t for t in m.group(1).split(",")]
        if len(toks) != 4:
            raise DiagramError(f"crossing record needs 4 edges: {m.group(0)!r}")
        pd = tuple(_pd_label(t) for t in toks)
        sign = 1 if m.group(2) == "+" else -1
        key = (pd, sign)
        if key in seen:
            raise DiagramError(f"duplicate crossing record {m.group(0)!r}")
        seen.add(key)
        crossings.append(Crossing(pd, sign))
        consumed += 1
    leftovers = _PD_RECORD_RE.sub("", body)
    if re.sub(r"[;\s]+", "", leftovers):
        raise DiagramError(f"unparsed PD input near {leftovers.strip()[:40]!r}")
    if not crossings:
        raise DiagramError("PD code contains no crossing records")
    edges = frozenset(e for x in crossings for e in x.pd)
    d = KnotDiagram(tuple(crossings), edges, frozenset(), marked_edge)
    bad = d.violations()
    if bad:
        raise DiagramError("; ".join(bad))
    return d


def emit_pd(diagram: KnotDiagram) -> str:
    """Serialize crossings back to PD text (loops are not representable)."""
    if diagram.loops:
        raise DiagramError("crossing-free loops have no PD representation")
    lines = []
    for x in diagram.crossings:
        sign = "+" if x.sign > 0 else "-"
        lines.append("X(" + ",".join(str(e) for e in x.pd) + ")" + sign)
    return "\n".join(lines)
