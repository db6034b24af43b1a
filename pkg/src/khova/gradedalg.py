"""Exact algebra substrate: integer Laurent polynomials and integer matrix rank.

Everything here is exact: arbitrary-precision integers, no floating point.
Polynomials are kept in canonical form (no stored zero coefficients).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class ExactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""


def _clean(coeffs: Mapping) -> dict:
    return {k: c for k, c in coeffs.items() if c}


class LaurentPoly1:
    """Laurent polynomial in q with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = _clean(coeffs or {})

    @classmethod
    def zero(cls) -> "LaurentPoly1":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly1":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int = 1, power: int = 0) -> "LaurentPoly1":
        return cls({power: coeff})

    @classmethod
    def circle(cls) -> "LaurentPoly1":
        """The unknot weight q + q^-1."""
        return cls({1: 1, -1: 1})

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coeff(self, power: int) -> int:
        return self._c.get(power, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly1({0: other})
        if not isinstance(other, LaurentPoly1):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly1(c)

    def __neg__(self) -> "LaurentPoly1":
        return LaurentPoly1({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly1":
        if isinstance(other, int):
            return LaurentPoly1({e: v * other for e, v in self._c.items()})
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly1(c)

    __rmul__ = __mul__

    def shift(self, power: int) -> "LaurentPoly1":
        """Multiply by q^power."""
        return LaurentPoly1({e + power: v for e, v in self._c.items()})

    def div_exact(self, other: "LaurentPoly1") -> "LaurentPoly1":
        """Exact quotient self / other; raises ExactDivisionError on remainder."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly1()
        # Shift so both are ordinary polynomials, divide over Q, check integrality.
        smin, omin = min(self._c), min(other._c)
        rem = {e - smin: Fraction(v) for e, v in self._c.items()}
        div = {e - omin: v for e, v in other._c.items()}
        dlead = max(div)
        quot: dict[int, Fraction] = {}
        while rem:
            rlead = max(rem)
            if rlead < dlead:
                raise ExactDivisionError("nonzero remainder in exact division")
            c = rem[rlead] / div[dlead]
            e = rlead - dlead
            quot[e] = c
            for de, dv in div.items():
                k = e + de
                nv = rem.get(k, Fraction(0)) - c * dv
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        out = {}
        for e, c in quot.items():
            if c.denominator != 1:
                raise ExactDivisionError("quotient is not integral")
            out[e + smin - omin] = int(c)
        return LaurentPoly1(out)

    def nonneg_coeffs(self) -> bool:
        return all(v >= 0 for v in self._c.values())

    def to_text(self) -> str:
        return _terms_to_text(
            [(v, {"q": e}) for e, v in sorted(self._c.items())]
        )

    def to_latex(self) -> str:
        return _terms_to_latex(
            [(v, {"q": e}) for e, v in sorted(self._c.items())]
        )

    def to_json_terms(self) -> list[list[int]]:
        return [[e, v] for e, v in sorted(self._c.items())]

    @classmethod
    def from_json_terms(cls, terms: Iterable[Iterable[int]]) -> "LaurentPoly1":
        return cls({int(e): int(v) for e, v in terms})

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly1":
        out: dict[int, int] = {}
        for coeff, powers in _parse_terms(text, ("q",)):
            e = powers.get("q", 0)
            out[e] = out.get(e, 0) + coeff
        return cls(out)

    def __repr__(self):
        return f"LaurentPoly1({self.to_text()!r})"


class LaurentPoly2:
    """Laurent polynomial in q and T with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        self._c = _clean(coeffs or {})

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls()

    @classmethod
    def term(cls, coeff: int = 1, q: int = 0, t: int = 0) -> "LaurentPoly2":
        return cls({(q, t): coeff})

    @classmethod
    def from_poly1(cls, p: LaurentPoly1) -> "LaurentPoly2":
        return cls({(e, 0): v for e, v in p.items()})

    def items(self) -> Iterator[tuple[tuple[int, int], int]]:
        return iter(sorted(self._c.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return LaurentPoly2(c)

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2({k: -v for k, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly2":
        if isinstance(other, int):
            return LaurentPoly2({k: v * other for k, v in self._c.items()})
        c: dict[tuple[int, int], int] = {}
        for (q1, t1), v1 in self._c.items():
            for (q2, t2), v2 in other._c.items():
                k = (q1 + q2, t1 + t2)
                c[k] = c.get(k, 0) + v1 * v2
        return LaurentPoly2(c)

    __rmul__ = __mul__

    def evaluate_T(self, value: int) -> LaurentPoly1:
        """Substitute T = value (only +1 or -1 supported) and collect q powers."""
        if value not in (1, -1):
            raise ValueError("only T = +1 or T = -1 substitutions are exact here")
        out: dict[int, int] = {}
        for (qe, te), v in self._c.items():
            out[qe] = out.get(qe, 0) + v * (value ** (te % 2))
        return LaurentPoly1(out)

    def to_text(self) -> str:
        terms = [
            (v, {"q": qe, "T": te})
            for (qe, te), v in sorted(self._c.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ]
        return _terms_to_text(terms)

    def to_latex(self) -> str:
        terms = [
            (v, {"q": qe, "T": te})
            for (qe, te), v in sorted(self._c.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ]
        return _terms_to_latex(terms)

    def to_json_terms(self) -> list[list[int]]:
        return [
            [qe, te, v]
            for (qe, te), v in sorted(self._c.items(), key=lambda kv: (kv[0][1], kv[0][0]))
        ]

    @classmethod
    def from_json_terms(cls, terms: Iterable[Iterable[int]]) -> "LaurentPoly2":
        return cls({(int(q), int(t)): int(v) for q, t, v in terms})

    @classmethod
    def from_text(cls, text: str) -> "LaurentPoly2":
        out: dict[tuple[int, int], int] = {}
        for coeff, powers in _parse_terms(text, ("q", "T")):
            k = (powers.get("q", 0), powers.get("T", 0))
            out[k] = out.get(k, 0) + coeff
        return cls(out)

    def __repr__(self):
        return f"LaurentPoly2({self.to_text()!r})"


# --- term-format serialization ------------------------------------------------
#
# Canonical text format: terms sorted ascending, joined by " + " / " - ",
# each term "c*q^a*T^b" with unit coefficients and zero powers omitted,
# e.g. "q^-4*T^-2 + q^-2*T^-1 + 1 + q^2*T + q^4*T^2".

def _term_to_text(coeff: int, powers: dict[str, int]) -> str:
    parts = []
    for var, e in powers.items():
        if e == 0:
            continue
        parts.append(var if e == 1 else f"{var}^{e}")
    mag = abs(coeff)
    if mag != 1 or not parts:
        parts.insert(0, str(mag))
    return "*".join(parts)


def _terms_to_text(terms: list[tuple[int, dict[str, int]]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for i, (coeff, powers) in enumerate(terms):
        body = _term_to_text(coeff, powers)
        if i == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append(("- " if coeff < 0 else "+ ") + body)
    return " ".join(pieces)


def _terms_to_latex(terms: list[tuple[int, dict[str, int]]]) -> str:
    if not terms:
        return "0"
    pieces = []
    for i, (coeff, powers) in enumerate(terms):
        body = ""
        for var, e in powers.items():
            if e == 0:
                continue
            body += var if e == 1 else f"{var}^{{{e}}}"
        mag = abs(coeff)
        if mag != 1 or not body:
            body = f"{mag}{body}" if body else str(mag)
        if i == 0:
            pieces.append(("-" if coeff < 0 else "") + body)
        else:
            pieces.append(("-" if coeff < 0 else "+") + body)
    return " ".join(pieces)


_TERM_RE = re.compile(r"^([+-]?\d+)?\s*((?:\*?\s*[a-zA-Z]\s*(?:\^\s*-?\d+)?\s*)*)$")
_VAR_RE = re.compile(r"([a-zA-Z])\s*(?:\^\s*(-?\d+))?")


def _parse_terms(text: str, variables: tuple[str, ...]):
    text = text.strip()
    if not text or text == "0":
        return
    # Hide exponent minus signs, then split into signed terms.
    hidden = text.replace("^-", "^~")
    chunks = re.split(r"\s*([+-])\s*", hidden)
    if chunks[0] == "":
        chunks = chunks[1:]
    else:
        chunks = ["+"] + chunks
    if len(chunks) % 2 != 0:
        raise ValueError(f"malformed polynomial text: {text!r}")
    pairs = list(zip(chunks[0::2], chunks[1::2]))
    for sign, body in pairs:
        body = body.replace("^~", "^-").strip()
        if not body:
            raise ValueError(f"malformed polynomial text: {text!r}")
        m = _TERM_RE.match(body)
        if not m:
            raise ValueError(f"malformed polynomial term: {body!r}")
        coeff = int(m.group(1)) if m.group(1) else 1
        if sign == "-":
            coeff = -coeff
        powers: dict[str, int] = {}
        for var, exp in _VAR_RE.findall(m.group(2) or ""):
            if var not in variables:
                raise ValueError(f"unknown variable {var!r} in term {body!r}")
            powers[var] = powers.get(var, 0) + (int(exp) if exp else 1)
        yield coeff, powers


# --- exact integer matrices ---------------------------------------------------

class IntMatrix:
    """Sparse integer matrix with exact rank computation."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[tuple[int, int], int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        self.entries: dict[tuple[int, int], int] = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) out of bounds {rows}x{cols}")
            if v:
                self.entries[(r, c)] = v

    @classmethod
    def from_dense(cls, dense: list[list[int]]) -> "IntMatrix":
        rows = len(dense)
        cols = len(dense[0]) if dense else 0
        return cls(rows, cols, {(r, c): v
                                for r, row in enumerate(dense)
                                for c, v in enumerate(row) if v})

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def add_entry(self, r: int, c: int, v: int) -> None:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise ValueError(f"entry ({r},{c}) out of bounds")
        nv = self.entries.get((r, c), 0) + v
        if nv:
            self.entries[(r, c)] = nv
        else:
            self.entries.pop((r, c), None)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         {(c, r): v for (r, c), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        out: dict[tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, 0) + v * w
        return IntMatrix(self.rows, other.cols, out)

    def rank(self, modulus: int | None = None) -> int:
        if modulus is None:
            pre, residual = self._eliminate_units()
            if residual is None:
                return pre
            return pre + residual._rank_bareiss()
        if modulus < 2 or not _is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        return self._rank_mod(modulus)

    def _eliminate_units(self) -> tuple[int, "IntMatrix | None"]:
        """Sparse elimination with +-1 pivots; exact over the integers.

        Each unit pivot contributes 1 to the rank and clears its row and
        column without introducing denominators.  Returns the pivot count
        and the residual matrix (None if nothing is left), so the generic
        fraction-free pass only ever sees a small remainder.
        """
        row_data: dict[int, dict[int, int]] = {}
        col_rows: dict[int, set[int]] = {}
        for (r, c), v in self.entries.items():
            row_data.setdefault(r, {})[c] = v
            col_rows.setdefault(c, set()).add(r)

        rank = 0
        while True:
            best = None
            for r, cols in row_data.items():
                for c, v in cols.items():
                    if v in (1, -1):
                        fill = (len(cols) - 1) * (len(col_rows[c]) - 1)
                        if best is None or fill < best[0]:
                            best = (fill, r, c)
                if best is not None and best[0] == 0:
                    break
            if best is None:
                break
            _, pr, pc = best
            pivot_row = row_data.pop(pr)
            pv = pivot_row.pop(pc)
            for c in pivot_row:
                col_rows[c].discard(pr)
            col_rows[pc].discard(pr)
            for r in list(col_rows[pc]):
                target = row_data[r]
                f = target.pop(pc) * pv       # pv in {1,-1}: stays integral
                col_rows[pc].discard(r)
                for c, v in pivot_row.items():
                    nv = target.get(c, 0) - f * v
                    if nv:
                        if c not in target:
                            col_rows[c].add(r)
                        target[c] = nv
                    elif c in target:
                        del target[c]
                        col_rows[c].discard(r)
                if not target:
                    del row_data[r]
            rank += 1

        if not row_data:
            return rank, None
        live_rows = sorted(row_data)
        live_cols = sorted({c for cols in row_data.values() for c in cols})
        rmap = {r: i for i, r in enumerate(live_rows)}
        cmap = {c: i for i, c in enumerate(live_cols)}
        residual = IntMatrix(len(live_rows), len(live_cols),
                             {(rmap[r], cmap[c]): v
                              for r, cols in row_data.items()
                              for c, v in cols.items()})
        return rank, residual

    def _rank_bareiss(self) -> int:
        # Fraction-free elimination; pivoting by magnitude keeps entries small.
        m = self.to_dense()
        nr, nc = self.rows, self.cols
        rank = 0
        prev = 1
        pr = 0
        for pc in range(nc):
            piv = None
            for r in range(pr, nr):
                if m[r][pc] and (piv is None or abs(m[r][pc]) < abs(m[piv][pc])):
                    piv = r
            if piv is None:
                continue
            m[pr], m[piv] = m[piv], m[pr]
            p = m[pr][pc]
            for r in range(pr + 1, nr):
                mr = m[r]
                f = mr[pc]
                for c in range(pc + 1, nc):
                    num = p * mr[c] - f * m[pr][c]
                    q, rem = divmod(num, prev)
                    assert rem == 0, "Bareiss divisibility failed"
                    mr[c] = q
                mr[pc] = 0
            prev = p
            pr += 1
            rank += 1
            if pr == nr:
                break
        return rank

    def _rank_mod(self, p: int) -> int:
        m = [[v % p for v in row] for row in self.to_dense()]
        nr, nc = self.rows, self.cols
        rank = 0
        pr = 0
        for pc in range(nc):
            piv = next((r for r in range(pr, nr) if m[r][pc]), None)
            if piv is None:
                continue
            m[pr], m[piv] = m[piv], m[pr]
            inv = pow(m[pr][pc], -1, p)
            m[pr] = [(v * inv) % p for v in m[pr]]
            for r in range(pr + 1, nr):
                f = m[r][pc]
                if f:
                    m[r] = [(a - f * b) % p for a, b in zip(m[r], m[pr])]
            pr += 1
            rank += 1
            if pr == nr:
                break
        return rank

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == \
            (other.rows, other.cols, other.entries)

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# Free-function aliases for the common operations.

def poly_add(a, b):
    return a + b


def poly_mul(a, b):
    return a * b


def poly_div_exact(a, b):
    return a.div_exact(b)


def evaluate_T(p: LaurentPoly2, value: int) -> LaurentPoly1:
    return p.evaluate_T(value)


def rank(m: IntMatrix, modulus: int | None = None) -> int:
    return m.rank(modulus)
