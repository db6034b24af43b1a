import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from khova.gradedalg import (ExactDivisionError, IntMatrix, LaurentPoly1,
                             LaurentPoly2)

poly1s = st.dictionaries(st.integers(-8, 8), st.integers(-9, 9),
                         max_size=6).map(LaurentPoly1)
poly2s = st.dictionaries(
    st.tuples(st.integers(-6, 6), st.integers(-4, 4)),
    st.integers(-9, 9), max_size=6).map(LaurentPoly2)


class TestLaurentPoly1:
    def test_zero_and_one(self):
        assert LaurentPoly1.zero().is_zero()
        assert LaurentPoly1.one() == LaurentPoly1({0: 1})
        assert not LaurentPoly1.zero()

    def test_circle(self):
        D = LaurentPoly1.circle()
        assert D == LaurentPoly1({1: 1, -1: 1})
        assert (D * D) == LaurentPoly1({2: 1, 0: 2, -2: 1})

    def test_dropped_zero_coeffs(self):
        assert LaurentPoly1({3: 0, 1: 2}) == LaurentPoly1({1: 2})

    def test_shift(self):
        p = LaurentPoly1({0: 1, 2: -1})
        assert p.shift(3) == LaurentPoly1({3: 1, 5: -1})

    @given(poly1s, poly1s, poly1s)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + (-a) == LaurentPoly1.zero()

    @given(poly1s)
    def test_text_round_trip(self, p):
        assert LaurentPoly1.from_text(p.to_text()) == p

    @given(poly1s)
    def test_json_terms_round_trip(self, p):
        assert LaurentPoly1.from_json_terms(p.to_json_terms()) == p

    def test_from_text_examples(self):
        p = LaurentPoly1.from_text("q^-4 - q^-2 + 1 - q^2 + q^4")
        assert p == LaurentPoly1({-4: 1, -2: -1, 0: 1, 2: -1, 4: 1})
        assert LaurentPoly1.from_text("0").is_zero()
        assert LaurentPoly1.from_text("-3*q") == LaurentPoly1({1: -3})

    def test_from_text_rejects_garbage(self):
        with pytest.raises(ValueError):
            LaurentPoly1.from_text("q^2 + bogus")

    @given(poly1s, poly1s)
    def test_div_exact_inverts_product(self, a, b):
        if b.is_zero():
            return
        assert (a * b).div_exact(b) == a

    def test_div_exact_remainder(self):
        with pytest.raises(ExactDivisionError):
            LaurentPoly1({0: 1, 1: 1, 2: 1}).div_exact(LaurentPoly1.circle())

    def test_div_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            LaurentPoly1.one().div_exact(LaurentPoly1.zero())


class TestLaurentPoly2:
    @given(poly2s, poly2s, poly2s)
    def test_ring_laws(self, a, b, c):
        assert a + b == b + a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)

    @given(poly2s)
    def test_text_round_trip(self, p):
        assert LaurentPoly2.from_text(p.to_text()) == p

    def test_evaluate_T(self):
        p = LaurentPoly2({(1, 0): 1, (5, 2): 1, (9, 3): 1})
        assert p.evaluate_T(-1) == LaurentPoly1({1: 1, 5: 1, 9: -1})
        assert p.evaluate_T(1) == LaurentPoly1({1: 1, 5: 1, 9: 1})

    @given(poly2s, poly2s)
    def test_evaluate_T_is_a_ring_map(self, a, b):
        assert (a * b).evaluate_T(-1) == a.evaluate_T(-1) * b.evaluate_T(-1)
        assert (a + b).evaluate_T(-1) == a.evaluate_T(-1) + b.evaluate_T(-1)

    def test_from_poly1(self):
        p = LaurentPoly1({-1: 2, 3: -1})
        q = LaurentPoly2.from_poly1(p)
        assert q.evaluate_T(-1) == p

    def test_text_example(self):
        p = LaurentPoly2.from_text("q^-4*T^-2 + q^-2*T^-1 + 1 + q^2*T + q^4*T^2")
        assert p == LaurentPoly2({(-4, -2): 1, (-2, -1): 1, (0, 0): 1,
                                  (2, 1): 1, (4, 2): 1})


# Independent oracle: plain Gaussian elimination over the rationals.  It
# shares no code with the production path (unit-pivot pass + fraction-free
# elimination), so agreement is meaningful.
def _rank_fraction_oracle(dense):
    m = [[Fraction(v) for v in row] for row in dense]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def _rank_minor_oracle(dense):
    """Largest k with a nonzero k x k minor, by brute-force expansion."""
    def det(rows, cols):
        if not rows:
            return 1
        r0 = rows[0]
        total = 0
        for j, c in enumerate(cols):
            v = dense[r0][c]
            if v:
                sub = det(rows[1:], cols[:j] + cols[j + 1:])
                total += (-1) ** j * v * sub
        return total

    import itertools
    nr, nc = len(dense), len(dense[0]) if dense else 0
    for k in range(min(nr, nc), 0, -1):
        for rows in itertools.combinations(range(nr), k):
            for cols in itertools.combinations(range(nc), k):
                if det(list(rows), list(cols)):
                    return k
    return 0


matrices = st.integers(1, 7).flatmap(
    lambda nr: st.integers(1, 7).flatmap(
        lambda nc: st.lists(
            st.lists(st.integers(-4, 4), min_size=nc, max_size=nc),
            min_size=nr, max_size=nr)))


class TestIntMatrix:
    def test_dense_round_trip(self):
        d = [[1, 0, -2], [0, 3, 0]]
        assert IntMatrix.from_dense(d).to_dense() == d

    def test_add_entry_cancellation(self):
        m = IntMatrix(2, 2)
        m.add_entry(0, 1, 5)
        m.add_entry(0, 1, -5)
        assert m.is_zero()

    def test_bounds(self):
        with pytest.raises(ValueError):
            IntMatrix(2, 2).add_entry(2, 0, 1)

    @given(matrices)
    @settings(max_examples=60)
    def test_rank_matches_fraction_elimination(self, dense):
        assert IntMatrix.from_dense(dense).rank() == _rank_fraction_oracle(dense)

    def test_rank_matches_minor_expansion(self):
        rng = random.Random(2024)
        for _ in range(25):
            nr, nc = rng.randint(1, 5), rng.randint(1, 5)
            dense = [[rng.randint(-3, 3) for _ in range(nc)]
                     for _ in range(nr)]
            assert IntMatrix.from_dense(dense).rank() == _rank_minor_oracle(dense)

    @given(matrices)
    @settings(max_examples=40)
    def test_rank_transpose_invariant(self, dense):
        m = IntMatrix.from_dense(dense)
        assert m.rank() == m.transpose().rank()

    def test_rank_without_unit_pivots(self):
        # Every entry even, so the unit-pivot pass finds nothing and the
        # whole matrix reaches the fraction-free stage.
        dense = [[2, 4, 6], [4, 2, 0], [6, 6, 6]]
        assert IntMatrix.from_dense(dense).rank() == _rank_fraction_oracle(dense)

    def test_rank_mod_two_differs(self):
        m = IntMatrix.from_dense([[2]])
        assert m.rank() == 1
        assert m.rank(modulus=2) == 0
        assert m.rank(modulus=3) == 1

    @given(matrices)
    @settings(max_examples=40)
    def test_rank_mod_p_bounded_by_rational(self, dense):
        m = IntMatrix.from_dense(dense)
        r = m.rank()
        for p in (2, 3, 5):
            assert m.rank(modulus=p) <= r

    def test_rank_rejects_composite_modulus(self):
        with pytest.raises(ValueError):
            IntMatrix(1, 1).rank(modulus=4)

    def test_matmul(self):
        a = IntMatrix.from_dense([[1, 2], [0, 1]])
        b = IntMatrix.from_dense([[1, 0], [3, 1]])
        assert a.matmul(b).to_dense() == [[7, 2], [3, 1]]

    def test_matmul_dimension_mismatch(self):
        with pytest.raises(ValueError):
            IntMatrix(2, 3).matmul(IntMatrix(2, 3))
