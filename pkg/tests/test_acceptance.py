"""One test per acceptance criterion. Each prints a single PASS/FAIL line.

All comparisons are exact (integers or Fractions); runtime limits are
part of the pass condition.
"""

import io
import json
import random
import time
from fractions import Fraction

import pytest

import reference_tables as ref
from srstirling import cli, identities, polyseq, posets, riordan
from srstirling import graphcombi as gc
from srstirling.indexset import ALL, ODD, congruence, explicit, parse
from srstirling.series import EgfSeries
from srstirling.stirling import (SRContext, bell_polynomial, oracle_partitions, oracle_permutations,
                                 stirling1, stirling2)

GRID = [parse(s) for s in ref.GRID_SETS]


@pytest.fixture
def report(capsys):
    def _report(tag, ok, elapsed, limit, detail=""):
        ok_time = limit is None or elapsed < limit
        status = "PASS" if ok and ok_time else "FAIL"
        lim = f" (limit {limit}s)" if limit is not None else ""
        line = f"{status} {tag}: {elapsed:.2f}s{lim}"
        if detail:
            line += f"; {detail}"
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail
        assert ok_time, f"runtime {elapsed:.2f}s over {limit}s"
    return _report


def _cli_json(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(argv + ["--format", "json"], out, err)
    assert code == 0, err.getvalue()
    return json.loads(out.getvalue())


def _to_int_rows(rows):
    return [[int(v) for v in row] for row in rows]


def _diff(got, want):
    """Positions (n, k) where a lower-triangular result differs from a dense display."""
    bad = []
    for n, row in enumerate(want):
        for k, w in enumerate(row):
            g = got[n][k] if k < len(got[n]) else 0
            if g != w:
                bad.append((n, k, g, w))
    return bad


def test_c1_table_138(report):
    t0 = time.perf_counter()
    base = ["matrix", "--kind", "second", "--set", "{1,3,8}", "--r", "2", "--size", "9"]
    M = _to_int_rows(_cli_json(base)["result"])
    T = _to_int_rows(_cli_json(base + ["--inverse"])["result"])
    elapsed = time.perf_counter() - t0
    bad = [("M",) + d for d in _diff(M, ref.M_138_2)] + [("T",) + d for d in _diff(T, ref.T_138_2)]
    detail = f"{len(bad)} differing entries" + (f", e.g. {bad[:4]} as (matrix, n, k, computed, displayed)" if bad else "")
    report("C1 {1,3,8},r=2 M and T tables", not bad, elapsed, 1.0, detail)


def test_c2_odd_tables(report):
    t0 = time.perf_counter()
    M = _to_int_rows(_cli_json(["matrix", "--set", "odd", "--r", "2", "--size", "9"])["result"])
    T = _to_int_rows(_cli_json(["matrix", "--set", "odd", "--r", "2", "--size", "9", "--inverse"])["result"])
    U = _to_int_rows(_cli_json(["matrix", "--kind", "first", "--set", "odd", "--r", "1", "--size", "9",
                                "--inverse"])["result"])
    elapsed = time.perf_counter() - t0
    bad = _diff(M, ref.M_ODD_2) + _diff(T, ref.T_ODD_2) + _diff(U, ref.U_ODD_1)
    tangent = [abs(U[2 * m][0]) for m in range(1, 5)]
    cyclic = [abs(U[2 * m + 1][1]) for m in range(1, 4)]
    ok = not bad and tangent == ref.TANGENT and cyclic == ref.CYCLIC_ALTERNATING
    report("C2 odd M_2, T_2, U_1 tables", ok, elapsed, 1.0,
           f"tangent {tangent}, cyclic {cyclic}, {len(bad)} differing entries")


def test_c3_bell_polynomials(report):
    t0 = time.perf_counter()
    ctx = SRContext(explicit(1, 3, 8), 2, 12)
    by_sum = [list(bell_polynomial(ctx, n).coeffs) for n in range(9)]
    by_det = [list(riordan.bell_poly_determinant(ctx, n).coeffs) for n in range(9)]
    elapsed = time.perf_counter() - t0
    bad = [("sum", n, by_sum[n], want) for n, want in enumerate(ref.BELLPOLY_138_2) if by_sum[n] != want]
    bad += [("det", n, by_det[n], want) for n, want in enumerate(ref.BELLPOLY_138_2) if by_det[n] != want]
    paths_agree = by_sum == by_det
    detail = f"sum and determinant paths agree: {paths_agree}; {len(bad)} differing polynomials"
    if bad:
        detail += f", first {bad[0]} as (path, n, computed, displayed)"
    report("C3 {1,3,8},r=2 Bell polynomials", not bad and paths_agree, elapsed, 1.0, detail)


def test_c4_oracle_equivalence(report):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for S in GRID:
        for r in range(4):
            ctx = SRContext(S, r, 12)
            for n in range(9):
                for k in range(n + 1):
                    if n + r <= 12:
                        checked += 1
                        a, b = stirling2(ctx, n, k), oracle_partitions(ctx, n, k)
                        if a != b:
                            bad.append(("second", str(S), r, n, k, a, b))
                    if n <= 6 and n + r <= 9:
                        checked += 1
                        a, b = stirling1(ctx, n, k), oracle_permutations(ctx, n, k)
                        if a != b:
                            bad.append(("first", str(S), r, n, k, a, b))
    elapsed = time.perf_counter() - t0
    report("C4 EGF values equal brute-force counts", not bad, elapsed, 300.0,
           f"{checked} values" + (f", first mismatch {bad[0]}" if bad else ""))


def test_c5_recurrences(report):
    t0 = time.perf_counter()
    bad = []
    names = set()
    for S in GRID:
        for r in range(4):
            for name, items in identities.check_all(S, r, 8).items():
                names.add(name)
                bad += items
    elapsed = time.perf_counter() - t0
    expected = set(identities.SECOND_KIND) | set(identities.FIRST_KIND) | {"broder"}
    ok = not bad and names == expected
    report("C5 recurrence suite", ok, elapsed, None,
           f"{len(names)} identity families" + (f", first mismatch {bad[0]}" if bad else ""))


def test_c6_mobius(report):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for S in (ODD, congruence(3)):
        for r in (1, 2):
            for kind, n_max in (("second", 5), ("first", 4)):
                for n in range(n_max + 1):
                    P = posets.build_poset(S, r, n, ordered=(kind == "first"))
                    ctx = SRContext(S, r, n)
                    inv = riordan.matrix_T(ctx, n + 1) if kind == "second" else riordan.matrix_U(ctx, n + 1)
                    for k in range(n + 1):
                        checked += 1
                        if P.column_sum(k) != inv[n, k]:
                            bad.append((str(S), r, kind, n, k, P.column_sum(k), inv[n, k]))
    # worked examples
    P = posets.build_poset(ODD, 2, 4)
    top = posets.CompositionPartitionPair.make([(1, 2, 3, 4), ()], [])
    worked = {
        "T(4,0)=24": P.column_sum(0) == 24,
        "T(4,2)=-16": P.column_sum(2) == -16,
        "mu=9": P.mobius(P.zero_hat, top) == 9,
        "U(3,1)=-8": posets.build_poset(ODD, 1, 3, ordered=True).column_sum(1) == -8,
    }
    elapsed = time.perf_counter() - t0
    ok = not bad and all(worked.values())
    report("C6 Moebius column sums", ok, elapsed, 120.0,
           f"{checked} column sums, worked values {worked}" + (f", first mismatch {bad[0]}" if bad else ""))


def test_c7_graph_bridge(report):
    t0 = time.perf_counter()
    bad = []
    for n1, n2, r in [(1, 1, 0), (2, 1, 0), (2, 2, 0), (1, 1, 1), (2, 2, 1)]:
        for S in (ALL, explicit(1, 2), ODD):
            a = gc.count_constrained_orientations(n1, n2, r, S)
            b = gc.constrained_orientation_formula(n1, n2, r, S)
            if a != b:
                bad.append(("orientations", n1, n2, r, str(S), a, b))
    for n1 in range(1, 4):
        for n2 in range(1, 4):
            a = gc.count_acyclic_orientations(gc.complete_bipartite(n1, n2))
            b = polyseq.poly_bernoulli(ALL, 0, -n2, n1)
            if a != b:
                bad.append(("A(K)", n1, n2, a, b))
    k22 = gc.count_acyclic_orientations(gc.complete_bipartite(2, 2))
    for S in GRID:
        for r in range(3):
            ctx = SRContext(S, r, 5)
            for n in range(6):
                g = gc.join_complete_empty(n, r)
                for k in range(n + 1):
                    a = gc.clique_partition_count(g, k + r, S)
                    b = stirling2(ctx, n, k)
                    if a != b:
                        bad.append(("cliques", str(S), r, n, k, a, b))
    elapsed = time.perf_counter() - t0
    ok = not bad and k22 == 14 == polyseq.poly_bernoulli(ALL, 0, -2, 2)
    report("C7 graph bridge", ok, elapsed, 120.0, f"A(K_2,2)={k22}" + (f", first mismatch {bad[0]}" if bad else ""))


def test_c8_poly_numbers(report):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for S in GRID:
        for r in range(4):
            for mu in range(-2, 3):
                for fam in polyseq.SUMS:
                    checked += 1
                    bad += [(fam, str(S), r, mu) + m for m in polyseq.egf_mismatches(S, r, mu, 10, fam)]
    B = polyseq.bernoulli_numbers(12)
    classical = all(polyseq.poly_bernoulli(ALL, 0, 1, n) == (-1) ** n * B[n] for n in range(13))
    classical &= polyseq.poly_bernoulli(ALL, 0, 1, 1) == Fraction(1, 2)
    classical &= polyseq.poly_bernoulli(ALL, 0, 1, 2) == Fraction(1, 6)
    cauchy = {
        "c1": (polyseq.poly_cauchy_first(ALL, 0, 1, 1), polyseq.cauchy_integral(1), Fraction(1, 2)),
        "c2": (polyseq.poly_cauchy_first(ALL, 0, 1, 2), polyseq.cauchy_integral(2), Fraction(-1, 6)),
        "hat c2": (polyseq.poly_cauchy_second(ALL, 0, 1, 2), polyseq.cauchy_integral(2, 1, "second"), Fraction(5, 6)),
    }
    cauchy_ok = all(a == b == c for a, b, c in cauchy.values())
    elapsed = time.perf_counter() - t0
    ok = not bad and classical and cauchy_ok
    report("C8 poly-number EGF agreement", ok, elapsed, 60.0,
           f"{checked} (family, S, r, mu) cases, Bernoulli ok {classical}, Cauchy ok {cauchy_ok}"
           + (f", first mismatch {bad[0]}" if bad else ""))


def _random_series(rng, t0, N=32):
    def c():
        return Fraction(rng.randint(-6, 6), rng.choice([1, 1, 1, 2, 3]))
    t = [t0] + [c() for _ in range(N)]
    return EgfSeries(t)


def test_c9_series_engine(report):
    t0 = time.perf_counter()
    rng = random.Random(20240917)
    N = 32
    x = EgfSeries.x(N)
    bad = []
    trials = 100
    for i in range(trials):
        f = _random_series(rng, 0, N)
        if f[1] == 0:
            f = f + x
        g = f.reversion()
        if f.compose(g) != x or g.compose(f) != x:
            bad.append(("reversion", i))
        # group law on Riordan pairs
        a = EgfSeries([1] + list(_random_series(rng, 0, N).taylor[1:]))
        h = _random_series(rng, 0, N)
        if h[1] == 0:
            h = h + x
        p, q = riordan.RiordanPair(a, f), riordan.RiordanPair(a.reciprocal(), h)
        pq = p * q
        if riordan.multiply(riordan.build(p, 8), riordan.build(q, 8)) != riordan.build(pq, 8):
            bad.append(("group law", i))
        if p * p.inverse() != riordan.RiordanPair(EgfSeries.one(N), x):
            bad.append(("group inverse", i))
        s = EgfSeries([1] + list(_random_series(rng, 0, N).taylor[1:]))
        if s.log().exp() != s:
            bad.append(("exp(log)", i))
        z = _random_series(rng, 0, N)
        if z.exp().log() != z:
            bad.append(("log(exp)", i))
    elapsed = time.perf_counter() - t0
    report("C9 series engine at order 32", not bad, elapsed, None,
           f"{trials} random series per property" + (f", failures {bad[:3]}" if bad else ""))
