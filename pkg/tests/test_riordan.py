import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

import reference_tables as ref
from srstirling import riordan
from srstirling.indexset import ODD, explicit, parse
from srstirling.riordan import (MatrixError, RiordanPair, TriMatrix, build, invert, matrix_L, matrix_M,
                                matrix_T, matrix_U, multiply)
from srstirling.series import EgfSeries, cosh_x, sinh_x
from srstirling.stirling import SRContext, bell, bell_polynomial, factorial_polynomial

WITH_ONE = [S for S in (parse(s) for s in ref.GRID_SETS) if 1 in S]
ALL_SETS = [parse(s) for s in ref.GRID_SETS]


def test_odd_pairs_match_closed_forms():
    N = 10
    p = riordan.riordan_pair(SRContext(ODD, 2, N))
    assert p.g == cosh_x(N) ** 2 and p.f == sinh_x(N)
    q = p.inverse()
    assert q.g == (EgfSeries([1, 0, 1], N)).reciprocal()   # (1 + x^2)^{-1}
    assert q.f == sinh_x(N).reversion()


def test_odd_tables():
    c2, c1 = SRContext(ODD, 2, 12), SRContext(ODD, 1, 12)
    assert matrix_M(c2, 9).int_rows() == [row[: n + 1] for n, row in enumerate(ref.M_ODD_2)]
    assert matrix_T(c2, 9).int_rows() == [row[: n + 1] for n, row in enumerate(ref.T_ODD_2)]
    assert matrix_U(c1, 9).int_rows() == [row[: n + 1] for n, row in enumerate(ref.U_ODD_1)]


def test_138_tables_off_column_zero():
    # columns 1..8 agree with the displayed tables; column 0 is checked in the acceptance suite
    c = SRContext(explicit(1, 3, 8), 2, 12)
    M, T = matrix_M(c, 9).int_rows(), matrix_T(c, 9).int_rows()
    for n in range(9):
        assert M[n][1:] == ref.M_138_2[n][1:n + 1]
        assert T[n][1:] == ref.T_138_2[n][1:n + 1]
    assert [T[n][0] for n in range(9)] == [1, 0, -2, 0, 26, 0, -860, -2, 53480]


def test_sequence_7_16_30():
    c = SRContext(explicit(1, 3, 8), 2, 12)
    M = matrix_M(c, 10)
    assert [M[n, n - 2] for n in range(3, 9)] == [7, 16, 30, 50, 77, 112]


@pytest.mark.parametrize("S", WITH_ONE, ids=str)
def test_orthogonality(S):
    for r in range(4):
        c = SRContext(S, r, 12)
        for kind in ("second", "first"):
            A = matrix_M(c, 11) if kind == "second" else matrix_L(c, 11)
            B = invert(A)
            assert multiply(A, B) == TriMatrix.identity(11)
            assert multiply(B, A) == TriMatrix.identity(11)
            # the inverse is the inverse Riordan pair
            assert build(riordan.riordan_pair(c, kind).inverse(), 11) == B
            assert build(riordan.riordan_pair(c, kind), 11) == A


@pytest.mark.parametrize("S", ALL_SETS, ids=str)
def test_row_sums_are_bell(S):
    for r in range(4):
        c = SRContext(S, r, 12)
        assert matrix_M(c, 10).row_sums() == [bell(c, n) for n in range(10)]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=9, max_size=9), st.sampled_from(WITH_ONE), st.integers(0, 3))
def test_inverse_relation(vec, S, r):
    c = SRContext(S, r, 12)
    M, T = matrix_M(c, 9), matrix_T(c, 9)
    assert T.apply(M.apply(vec)) == vec


def _pair(rng, N):
    def rand_tail():
        return [Fraction(rng.randint(-4, 4), rng.choice([1, 2])) for _ in range(N - 1)]
    g = EgfSeries([rng.choice([1, -1, 2])] + [rng.randint(-3, 3)] + rand_tail(), N)
    f = EgfSeries([0, rng.choice([1, -1, 2, Fraction(1, 2)])] + rand_tail(), N)
    return RiordanPair(g, f)


def test_group_law_and_fundamental_theorem():
    rng = random.Random(5)
    N = 9
    for _ in range(60):
        p, q = _pair(rng, N), _pair(rng, N)
        assert multiply(build(p, N + 1), build(q, N + 1)) == build(p * q, N + 1)
        h = EgfSeries([rng.randint(-3, 3) for _ in range(N + 1)])
        col = build(p, N + 1).apply(h.egf_list())
        assert col == p.apply_series(h).egf_list()


@pytest.mark.parametrize("S", WITH_ONE, ids=str)
def test_determinant_path_equals_sum_path(S):
    for r in range(4):
        c = SRContext(S, r, 12)
        for n in range(9):
            assert riordan.bell_poly_determinant(c, n) == bell_polynomial(c, n)
            assert riordan.factorial_poly_determinant(c, n) == factorial_polynomial(c, n)


def _dense_det(rows, x):
    M = sympy.Matrix([[sum(int(c) * x ** i for i, c in enumerate(p.coeffs)) for p in row] for row in rows])
    return sympy.Poly(sympy.expand(M.det()), x)


@pytest.mark.parametrize("S", [ODD, explicit(1, 3, 8), parse("all"), parse("1..3")], ids=str)
def test_dense_symbolic_determinant(S):
    x = sympy.Symbol("x")
    for r in (0, 2):
        c = SRContext(S, r, 12)
        for kind, poly in (("second", bell_polynomial), ("first", factorial_polynomial)):
            for n in range(7):
                det = _dense_det(riordan.determinant_matrix(c, n, kind), x)
                want = poly(c, n)
                got = [(-1) ** n * int(det.coeff_monomial(x ** k)) for k in range(n + 1)]
                assert got == [want[k] for k in range(n + 1)]


def test_displayed_determinant_rows():
    c = SRContext(explicit(1, 3, 8), 2, 12)
    rows = riordan.determinant_matrix(c, 6)
    body = [[p[0] for p in row] for row in rows[1:]]
    # rows 2..6 agree with the display; row 1 (column 0 of T) is the known discrepancy
    assert body[1:] == ref.DET6_138_2_ROWS[1:]
    assert body[0] == [1, 0, -2, 0, 26, 0, -860]
    assert str(riordan.bell_poly_determinant(c, 6)) == "x^6 + 50*x^4 + 220*x^2"


def test_json_round_trip_and_errors():
    c = SRContext(ODD, 2, 12)
    T = matrix_T(c, 9)
    assert TriMatrix.from_json(T.to_json()) == T
    with pytest.raises(MatrixError):
        TriMatrix([[1, 2], [0, 1]])
    with pytest.raises(MatrixError):
        invert(TriMatrix([[1], [1, 0]]))
    with pytest.raises(MatrixError):
        riordan.riordan_pair(SRContext(parse("even"), 1, 8))
    with pytest.raises(MatrixError):
        riordan.bell_poly_determinant(SRContext(parse("2.."), 0, 8), 3)
    with pytest.raises(MatrixError):
        matrix_M(SRContext(ODD, 1, 4), 7)
    # without 1 in S the matrix is singular but still computable
    assert not matrix_M(SRContext(parse("even"), 0, 8), 5).riordan
