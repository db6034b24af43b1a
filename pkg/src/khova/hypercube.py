"""The resolution hypercube and its classical polynomial layer.

Vertices are binary words (one bit per crossing, 0 = first smoothing of the
PD quadruple), each carrying the resolution's cycle set.  Edges are single
bit flips, classified as merge or split of cycles, oriented away from the
initial vertex r_c and signed by the left-ones rule.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .diagram import KnotDiagram, label_key
from .gradedalg import LaurentPoly1

DEFAULT_MAX_CROSSINGS = 20

Bits = tuple[int, ...]


class ResourceCapError(RuntimeError):
    """Crossing count exceeds the configured hypercube cap."""


def _canonical_cyclic(seq: tuple) -> tuple:
    """Least representative of a cyclic word under rotation and reflection."""
    if len(seq) <= 1:
        return seq

    def key(s):
        return tuple(label_key(e) for e in s)

    def best(s):
        return min((s[i:] + s[:i] for i in range(len(s))), key=key)

    return min(best(seq), best(tuple(reversed(seq))), key=key)


class Cycle:
    """A closed curve of diagram edges.

    Stores the cyclic edge order (canonicalized up to rotation/reflection)
    but compares and hashes by edge set: an edge belongs to exactly one
    cycle per resolution, so within and across adjacent resolutions the
    edge set identifies the cycle.
    """

    __slots__ = ("edges", "edge_set")

    def __init__(self, edges: tuple):
        self.edges = _canonical_cyclic(tuple(edges))
        self.edge_set = frozenset(self.edges)
        if len(self.edge_set) != len(self.edges):
            raise ValueError(f"repeated edge in cycle {edges!r}")

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return edge in self.edge_set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cycle):
            return NotImplemented
        return self.edge_set == other.edge_set

    def __hash__(self):
        return hash(self.edge_set)

    def __repr__(self):
        return "Cycle(" + "".join(str(e) for e in self.edges) + ")"


@dataclass(frozen=True)
class CycleSet:
    """The non-intersecting cycles of one resolution."""
    cycles: tuple[Cycle, ...]

    @property
    def nu(self) -> int:
        return len(self.cycles)

    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def cycle_containing(self, edge) -> Cycle:
        for c in self.cycles:
            if edge in c:
                return c
        raise KeyError(f"edge {edge} is in no cycle")


@dataclass(frozen=True)
class HypercubeEdge:
    """A single-crossing flip, oriented away from r_c."""
    position: int
    source: Bits
    target: Bits
    sign: int
    kind: str                     # "merge" or "split"
    changed_source: tuple[Cycle, ...]
    changed_target: tuple[Cycle, ...]

    @property
    def star_label(self) -> tuple:
        return tuple("*" if i == self.position else b
                     for i, b in enumerate(self.source))


@dataclass(frozen=True)
class Hypercube:
    diagram: KnotDiagram
    vertices: dict
    edges: tuple[HypercubeEdge, ...]
    r_c: Bits

    @property
    def n(self) -> int:
        return len(self.r_c)

    def distance(self, bits: Bits) -> int:
        return sum(b != c for b, c in zip(bits, self.r_c))

    @cached_property
    def by_distance(self) -> dict:
        out: dict[int, list[Bits]] = {i: [] for i in range(self.n + 1)}
        for bits in sorted(self.vertices):
            out[self.distance(bits)].append(bits)
        return out


def smooth(diagram: KnotDiagram, bits: Bits) -> CycleSet:
    """Trace the cycles of one resolution, with their cyclic edge order.

    Every non-loop edge has exactly two occurrence slots among the PD
    quadruples; a smoothing joins slots pairwise, so following
    slot -> edge -> other slot -> joined slot walks each closed curve.
    """
    if len(bits) != len(diagram.crossings):
        raise ValueError("resolution label length != crossing count")

    # Occurrence slots per edge: (crossing index, quadruple position).
    occ: dict = {}
    for ci, crossing in enumerate(diagram.crossings):
        for si, e in enumerate(crossing.pd):
            occ.setdefault(e, []).append((ci, si))

    # Smoothing joins between slots: bit 0 joins (0,1) and (2,3),
    # bit 1 joins (0,3) and (1,2).
    link: dict = {}
    for ci, (crossing, bit) in enumerate(zip(diagram.crossings, bits)):
        pairs = ((0, 1), (2, 3)) if bit == 0 else ((0, 3), (1, 2))
        for sa, sb in pairs:
            link[(ci, sa)] = (ci, sb)
            link[(ci, sb)] = (ci, sa)

    def other_slot(e, slot):
        a, b = occ[e]
        return b if slot == a else a

    cycles = []
    seen = set()
    for e0 in sorted(occ, key=label_key):
        start = occ[e0][0]
        if start in seen:
            continue
        walk = []
        slot = start
        while True:
            seen.add(slot)
            ci, si = slot
            e = diagram.crossings[ci].pd[si]
            walk.append(e)
            out = other_slot(e, slot)
            seen.add(out)
            slot = link[out]
            if slot == start:
                break
        cycles.append(Cycle(tuple(walk)))
    for e in sorted(diagram.loops, key=label_key):
        cycles.append(Cycle((e,)))
    cycles.sort(key=lambda c: label_key(min(c.edge_set, key=label_key)))
    return CycleSet(tuple(cycles))


def edge_sign(star_label: tuple) -> int:
    """(-1)^(number of 1s strictly left of the star)."""
    stars = [i for i, b in enumerate(star_label) if b == "*"]
    if len(stars) != 1:
        raise ValueError(f"label needs exactly one star: {star_label!r}")
    ones = sum(1 for b in star_label[:stars[0]] if b == 1)
    return -1 if ones % 2 else 1


def classify_edge(source: CycleSet, target: CycleSet):
    """Identify the cycles changed by a flip; all others map identically."""
    s_set, t_set = set(source.cycles), set(target.cycles)
    changed_s = tuple(c for c in source.cycles if c not in t_set)
    changed_t = tuple(c for c in target.cycles if c not in s_set)
    if len(changed_s) == 2 and len(changed_t) == 1:
        kind = "merge"
    elif len(changed_s) == 1 and len(changed_t) == 2:
        kind = "split"
    else:
        raise ValueError(
            f"flip changes {len(changed_s)}->{len(changed_t)} cycles; "
            "endpoint cycle counts must differ by exactly 1")
    return kind, changed_s, changed_t


def initial_vertex(diagram: KnotDiagram) -> Bits:
    """r_c: 0 at black crossings, 1 at white ones."""
    return tuple(0 if x.sign > 0 else 1 for x in diagram.crossings)


def build_hypercube(diagram: KnotDiagram,
                    max_crossings: int = DEFAULT_MAX_CROSSINGS) -> Hypercube:
    n = len(diagram.crossings)
    if n > max_crossings:
        raise ResourceCapError(
            f"{n} crossings exceeds cap {max_crossings} (2^{n} resolutions)")
    r_c = initial_vertex(diagram)
    vertices = {bits: smooth(diagram, bits)
                for bits in itertools.product((0, 1), repeat=n)}
    edges = []
    for bits in vertices:
        for pos in range(n):
            if bits[pos] != 0:
                continue
            other = bits[:pos] + (1,) + bits[pos + 1:]
            # Orient away from r_c.
            if r_c[pos] == 0:
                src, tgt = bits, other
            else:
                src, tgt = other, bits
            kind, ch_s, ch_t = classify_edge(vertices[src], vertices[tgt])
            star = tuple("*" if i == pos else b for i, b in enumerate(src))
            edges.append(HypercubeEdge(pos, src, tgt, edge_sign(star),
                                       kind, ch_s, ch_t))
    edges.sort(key=lambda e: (e.source, e.position))
    return Hypercube(diagram, vertices, tuple(edges), r_c)


def extended_jones(hc: Hypercube) -> Counter:
    """Multiset of cycle-length multisets, weighted by distance from r_c.

    Returns Counter{(t_power, sorted lengths tuple): multiplicity}.
    """
    out: Counter = Counter()
    for bits, cs in hc.vertices.items():
        out[(hc.distance(bits), cs.lengths())] += 1
    return out


def jones_prefactor(diagram: KnotDiagram) -> LaurentPoly1:
    """(-1)^n_white * q^(n_black - 2*n_white)."""
    sign = -1 if diagram.n_white % 2 else 1
    return LaurentPoly1.term(sign, diagram.n_black - 2 * diagram.n_white)


def state_sum_jones(hc: Hypercube,
                    diagram: KnotDiagram | None = None) -> LaurentPoly1:
    """The state-sum Jones polynomial (exact, in q)."""
    diagram = diagram or hc.diagram
    D = LaurentPoly1.circle()
    total = LaurentPoly1.zero()
    d_pows = {0: LaurentPoly1.one()}
    for bits, cs in hc.vertices.items():
        k = cs.nu
        while k not in d_pows:
            m = max(d_pows)
            d_pows[m + 1] = d_pows[m] * D
        dist = hc.distance(bits)
        term = d_pows[k].shift(dist)
        if dist % 2:
            term = -term
        total = total + term
    return jones_prefactor(diagram) * total


def reduced_jones(jones: LaurentPoly1) -> LaurentPoly1:
    """Exact quotient by D = q + q^-1; non-divisibility signals an upstream bug."""
    return jones.div_exact(LaurentPoly1.circle())


def extended_jones_specialized(hc: Hypercube) -> LaurentPoly1:
    """Specialize lengths -> D, t -> -q and apply the Eq-style prefactor.

    Independent route to the state-sum Jones; used as a consistency check.
    """
    D = LaurentPoly1.circle()
    total = LaurentPoly1.zero()
    for (t_pow, lengths), mult in extended_jones(hc).items():
        term = LaurentPoly1.term(mult, 0)
        for _ in lengths:
            term = term * D
        term = term.shift(t_pow)
        if t_pow % 2:
            term = -term
        total = total + term
    return jones_prefactor(hc.diagram) * total


def hypercube_dump(hc: Hypercube) -> dict:
    """JSON-ready structure for the CLI's hypercube subcommand."""
    def lab(bits):
        return "".join(str(b) for b in bits)

    return {
        "crossings": hc.n,
        "r_c": lab(hc.r_c),
        "vertices": [
            {
                "label": lab(bits),
                "distance": hc.distance(bits),
                "cycles": [[str(e) for e in c.edges] for c in cs.cycles],
            }
            for bits, cs in sorted(hc.vertices.items())
        ],
        "edges": [
            {
                "star_label": "".join(str(b) for b in e.star_label),
                "source": lab(e.source),
                "target": lab(e.target),
                "sign": e.sign,
                "kind": e.kind,
            }
            for e in hc.edges
        ],
    }
