"""Q-graded chain complexes over the resolution hypercube.

Each cycle of a resolution carries the 2-dimensional space with basis tags
-1 ("minus", grading q^-1) and +1 ("plus", grading q); the cycle containing
the marked edge of a reduced complex keeps only "plus".  Differentials are
per-edge merge/split maps times the star-label sign, identity on untouched
tensor factors, with no extra permutation signs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagram import EdgeLabel, KnotDiagram
from .gradedalg import IntMatrix, LaurentPoly1
from .hypercube import Hypercube, HypercubeEdge, build_hypercube

MINUS, PLUS = -1, 1


class ComplexError(RuntimeError):
    """Internal consistency failure while assembling the complex."""


def frobenius_merge(tag_a: int, tag_b: int,
                    reduced_role: str = "none") -> list[tuple[int, int]]:
    """Product map on a pair of tags -> [(target_tag, coeff)].

    reduced_role "first-factor-reduced" means tag_a sits on the cycle that
    carries the marked edge (so it must be PLUS, and so is the target cycle).
    """
    for t in (tag_a, tag_b):
        if t not in (MINUS, PLUS):
            raise ValueError(f"bad tag {t!r}")
    if reduced_role == "first-factor-reduced":
        if tag_a != PLUS:
            raise ValueError("reduced factor must carry tag plus")
        return [(PLUS, 1)] if tag_b == PLUS else []
    if reduced_role != "none":
        raise ValueError(f"bad reduced_role {reduced_role!r}")
    if tag_a == PLUS and tag_b == PLUS:
        return [(PLUS, 1)]
    if tag_a == MINUS and tag_b == MINUS:
        return []
    return [(MINUS, 1)]


def frobenius_split(tag: int,
                    reduced_role: str = "none") -> list[tuple[int, int, int]]:
    """Coproduct on one tag -> [(target_tag_1, target_tag_2, coeff)].

    reduced_role "source-reduced" means the source cycle is marked; the first
    target slot is the one inheriting the marked edge.
    """
    if tag not in (MINUS, PLUS):
        raise ValueError(f"bad tag {tag!r}")
    if reduced_role == "source-reduced":
        if tag != PLUS:
            raise ValueError("reduced source must carry tag plus")
        return [(PLUS, MINUS, 1)]
    if reduced_role != "none":
        raise ValueError(f"bad reduced_role {reduced_role!r}")
    if tag == PLUS:
        return [(PLUS, MINUS, 1), (MINUS, PLUS, 1)]
    return [(MINUS, MINUS, 1)]


@dataclass(frozen=True)
class GradedChainGroup:
    """Ordered basis of one homological degree, grouped by q-degree."""
    degree: int
    basis: dict          # qdeg -> list of (bits, tags)

    def dim(self, qdeg: int) -> int:
        return len(self.basis.get(qdeg, ()))

    def qdim(self) -> LaurentPoly1:
        return LaurentPoly1({m: len(els) for m, els in self.basis.items()})


def qdim(group: GradedChainGroup) -> LaurentPoly1:
    return group.qdim()


@dataclass
class ChainComplex:
    hypercube: Hypercube
    reduced: bool
    marked_edge: EdgeLabel | None
    groups: list[GradedChainGroup]
    blocks: dict         # (i, qdeg) -> IntMatrix mapping C_i^(m) -> C_{i+1}^(m-1)

    @property
    def n(self) -> int:
        return self.hypercube.n

    def block(self, i: int, qdeg: int) -> IntMatrix | None:
        return self.blocks.get((i, qdeg))

    def qdims(self) -> list[LaurentPoly1]:
        return [g.qdim() for g in self.groups]


def _element_tags(nu: int, marked_idx: int | None):
    """All tag assignments, minus before plus; the marked cycle is plus-only."""
    choices = [(PLUS,) if i == marked_idx else (MINUS, PLUS)
               for i in range(nu)]
    return itertools.product(*choices)


def chain_groups(hc: Hypercube, reduced: bool = False,
                 marked: EdgeLabel | None = None) -> list[GradedChainGroup]:
    marked = _resolve_marked(hc, reduced, marked)
    groups = []
    for i in range(hc.n + 1):
        basis: dict[int, list] = {}
        for bits in hc.by_distance[i]:
            cycles = hc.vertices[bits].cycles
            m_idx = _marked_index(cycles, marked) if reduced else None
            for tags in _element_tags(len(cycles), m_idx):
                basis.setdefault(sum(tags), []).append((bits, tags))
        groups.append(GradedChainGroup(i, basis))
    return groups


def _resolve_marked(hc: Hypercube, reduced: bool, marked):
    if not reduced:
        return None
    if marked is None:
        marked = hc.diagram.default_marked_edge()
    if marked not in hc.diagram.edges:
        raise ComplexError(f"marked edge {marked!r} not in diagram")
    return marked


def _marked_index(cycles, marked) -> int:
    for idx, c in enumerate(cycles):
        if marked in c:
            return idx
    raise ComplexError(f"marked edge {marked!r} lies in no cycle")


def build_differentials(hc: Hypercube, reduced: bool = False,
                        marked: EdgeLabel | None = None) -> ChainComplex:
    marked = _resolve_marked(hc, reduced, marked)
    groups = chain_groups(hc, reduced, marked)

    index: dict = {}
    for g in groups:
        for m, els in g.basis.items():
            for idx, el in enumerate(els):
                index[el] = (g.degree, m, idx)

    by_vertex: dict = {}
    for g in groups:
        for els in g.basis.values():
            for el in els:
                by_vertex.setdefault(el[0], []).append(el)

    blocks: dict[tuple[int, int], IntMatrix] = {}

    def get_block(i: int, m: int) -> IntMatrix:
        key = (i, m)
        if key not in blocks:
            blocks[key] = IntMatrix(groups[i + 1].dim(m - 1), groups[i].dim(m))
        return blocks[key]

    for edge in hc.edges:
        src_cycles = hc.vertices[edge.source].cycles
        tgt_cycles = hc.vertices[edge.target].cycles
        for el in by_vertex.get(edge.source, ()):
            bits, tags = el
            tag_of = dict(zip(src_cycles, tags))
            for tgt_tags, coeff in _edge_images(edge, tag_of, tgt_cycles,
                                                marked if reduced else None):
                src_i, src_m, src_idx = index[el]
                tgt_el = (edge.target, tgt_tags)
                tgt_i, tgt_m, tgt_idx = index[tgt_el]
                if tgt_i != src_i + 1 or tgt_m != src_m - 1:
                    raise ComplexError(
                        f"differential entry breaks grading: "
                        f"({src_i},{src_m}) -> ({tgt_i},{tgt_m})")
                get_block(src_i, src_m).add_entry(
                    tgt_idx, src_idx, coeff * edge.sign)
    return ChainComplex(hc, reduced, marked, groups, blocks)


def _edge_images(edge: HypercubeEdge, tag_of: dict, tgt_cycles,
                 marked: EdgeLabel | None):
    """Yield (target tag tuple, coeff) for one source element across one edge."""
    if edge.kind == "merge":
        c1, c2 = edge.changed_source
        (ct,) = edge.changed_target
        if marked is not None and (marked in c1 or marked in c2):
            m_first, free = (c1, c2) if marked in c1 else (c2, c1)
            outs = frobenius_merge(tag_of[m_first], tag_of[free],
                                   "first-factor-reduced")
        else:
            outs = frobenius_merge(tag_of[c1], tag_of[c2])
        for new_tag, coeff in outs:
            tags = tuple(new_tag if c == ct else tag_of[c] for c in tgt_cycles)
            yield tags, coeff
    else:
        (cs,) = edge.changed_source
        ct1, ct2 = edge.changed_target
        if marked is not None and marked in cs:
            m_tgt, free_tgt = (ct1, ct2) if marked in ct1 else (ct2, ct1)
            outs = frobenius_split(tag_of[cs], "source-reduced")
            assign = [((m_tgt, t1), (free_tgt, t2), coeff)
                      for t1, t2, coeff in outs]
        else:
            outs = frobenius_split(tag_of[cs])
            assign = [((ct1, t1), (ct2, t2), coeff) for t1, t2, coeff in outs]
        for (ca, ta), (cb, tb), coeff in assign:
            new = {ca: ta, cb: tb}
            tags = tuple(new.get(c, tag_of.get(c)) for c in tgt_cycles)
            yield tags, coeff


def check_nilpotent(cx: ChainComplex) -> list[tuple[int, int]]:
    """Coordinates (i, qdeg) of blocks where d.d != 0; empty means pass."""
    failing = []
    for (i, m), b in sorted(cx.blocks.items()):
        nxt = cx.block(i + 1, m - 1)
        if nxt is None:
            continue
        if not nxt.matmul(b).is_zero():
            failing.append((i, m))
    return failing


def build_complex(diagram: KnotDiagram, reduced: bool = False,
                  marked: EdgeLabel | None = None,
                  max_crossings: int | None = None) -> ChainComplex:
    """Convenience: diagram -> hypercube -> complex."""
    kwargs = {} if max_crossings is None else {"max_crossings": max_crossings}
    hc = build_hypercube(diagram, **kwargs)
    if reduced and marked is None:
        marked = diagram.default_marked_edge()
    return build_differentials(hc, reduced, marked)


def complex_dump(cx: ChainComplex) -> dict:
    """JSON-ready block shapes and graded dimensions."""
    return {
        "reduced": cx.reduced,
        "marked_edge": None if cx.marked_edge is None else str(cx.marked_edge),
        "qdims": [g.qdim().to_text() for g in cx.groups],
        "blocks": [
            {"degree": i, "qdeg": m, "rows": b.rows, "cols": b.cols,
             "nonzeros": len(b.entries)}
            for (i, m), b in sorted(cx.blocks.items())
        ],
    }
