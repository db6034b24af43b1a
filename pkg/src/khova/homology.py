"""Graded homology dimensions and superpolynomial assembly."""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainComplex
from .gradedalg import LaurentPoly1, LaurentPoly2


class RankInconsistency(RuntimeError):
    """A computed homology dimension came out negative."""


@dataclass(frozen=True)
class HomologyTable:
    """dim_q(H_i) per homological degree, as Laurent polynomials in q."""
    dims: tuple[LaurentPoly1, ...]
    modulus: int | None = None

    def __iter__(self):
        return iter(self.dims)

    def __getitem__(self, i: int) -> LaurentPoly1:
        return self.dims[i]

    def __len__(self) -> int:
        return len(self.dims)

    def to_json(self) -> list:
        return [[i, p.to_text()] for i, p in enumerate(self.dims)]


@dataclass(frozen=True)
class Superpolynomial:
    value: LaurentPoly2
    reduced: bool
    n_black: int
    n_white: int


def _block_rank(cx: ChainComplex, i: int, m: int,
                modulus: int | None) -> int:
    if not 0 <= i < cx.n + 1:
        return 0
    b = cx.block(i, m)
    return 0 if b is None else b.rank(modulus)


def homology_dims(cx: ChainComplex,
                  modulus: int | None = None) -> HomologyTable:
    """dim H_i^(m) = dim C_i^(m) - rank d_i^(m) - rank d_{i-1}^(m+1)."""
    dims = []
    for i, group in enumerate(cx.groups):
        coeffs = {}
        for m, els in group.basis.items():
            d = len(els)
            d -= _block_rank(cx, i, m, modulus)
            d -= _block_rank(cx, i - 1, m + 1, modulus)
            if d < 0:
                raise RankInconsistency(
                    f"negative dimension at degree {i}, qdeg {m}")
            if d:
                coeffs[m] = d
        dims.append(LaurentPoly1(coeffs))
    return HomologyTable(tuple(dims), modulus)


def kernel_qdim(cx: ChainComplex, i: int,
                modulus: int | None = None) -> LaurentPoly1:
    """dim_q Ker(d_i), assembled blockwise."""
    coeffs = {}
    for m, els in cx.groups[i].basis.items():
        d = len(els) - _block_rank(cx, i, m, modulus)
        if d:
            coeffs[m] = d
    return LaurentPoly1(coeffs)


def image_qdim(cx: ChainComplex, i: int,
               modulus: int | None = None) -> LaurentPoly1:
    """dim_q Im(d_i), graded by the target q-degrees."""
    coeffs = {}
    for m in cx.groups[i].basis:
        r = _block_rank(cx, i, m, modulus)
        if r:
            coeffs[m - 1] = coeffs.get(m - 1, 0) + r
    return LaurentPoly1(coeffs)


def superpolynomial(table: HomologyTable, n_black: int, n_white: int,
                    reduced: bool) -> Superpolynomial:
    """P = q^(n_black - 2 n_white) T^(-n_white) [q^-1 if reduced] sum (qT)^i dim_q H_i."""
    acc = LaurentPoly2.zero()
    for i, dim in enumerate(table):
        qt = LaurentPoly2.term(1, q=i, t=i)
        acc = acc + qt * LaurentPoly2.from_poly1(dim)
    shift = n_black - 2 * n_white - (1 if reduced else 0)
    pref = LaurentPoly2.term(1, q=shift, t=-n_white)
    return Superpolynomial(pref * acc, reduced, n_black, n_white)


def correction_term(unreduced: Superpolynomial,
                    reduced: Superpolynomial) -> LaurentPoly2:
    """(q + q^-1) * P_reduced - P_unreduced."""
    D = LaurentPoly2({(1, 0): 1, (-1, 0): 1})
    return D * reduced.value - unreduced.value


def euler_check(p: Superpolynomial, jones: LaurentPoly1) -> bool:
    """T = -1 must recover the (reduced or unreduced) Jones polynomial."""
    return p.value.evaluate_T(-1) == jones
