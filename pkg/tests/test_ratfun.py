"""Rational overlap functions: closed forms, biorthogonality, recurrences."""

from fractions import Fraction as F

import pytest

from qracah import (
    PrParams,
    QBase,
    RrParams,
    TailBound,
    kraw_W,
    pr_biorth_residual,
    pr_closed,
    pr_gevp_residual,
    pr_inner,
    pr_valid,
    rr_biorth_residual,
    rr_closed,
    rr_gevp_residual,
    rr_inner,
    rr_valid,
)
from qracah.errors import DenominatorPole, NonConvergent, OutOfRange
from qracah.ratfun import _pole_index

QB = QBase(F(1, 2))
HALF_GRID = ((0, 0, 0), (1, 0, 0), (1, 2, 1), (2, 1, -1), (F(1, 2), F(3, 2), 0),
             (1, 1, -2), (F(3, 2), F(1, 2), F(1, 2)))


def test_rr_single_point_chain():
    # N = 0: single term, both polynomials are 1, weight 1
    rp = RrParams(1, 2, 0, 0, QB)
    assert rr_inner(rp, 0, 0) == 1
    assert rr_closed(rp, 0, 0) == 1


def test_rr_closed_x0_is_prefactor():
    # x = 0 kills the series, leaving the Pochhammer prefactor
    rp = RrParams(1, 0, 1, 3, QB)
    for y in range(4):
        assert rr_closed(rp, 0, y) == rr_inner(rp, 0, y)


def test_rr_closed_equals_inner_on_grid():
    for p in (F(1, 2), F(2, 3)):
        qb = QBase(p)
        for N in range(5):
            for s, t, v in HALF_GRID:
                rp = RrParams(s, t, v, N, qb)
                for x in range(N + 1):
                    for y in range(N + 1):
                        if rr_valid(rp, x, y):
                            assert rr_closed(rp, x, y) == rr_inner(rp, x, y)


def test_rr_validity_rejects_genuine_poles():
    # at s-t-v+1 = 0 the shared denominator parameter is q**(-2y): the
    # closed form breaks exactly for y < x and nowhere else
    rp = RrParams(F(1, 2), F(3, 2), 0, 3, QB)
    for x in range(4):
        for y in range(4):
            assert rr_valid(rp, x, y) == (y >= x) or x == 0
            if not rr_valid(rp, x, y):
                with pytest.raises(DenominatorPole):
                    rr_closed(rp, x, y)


def test_rr_symmetry():
    # R(x,y;s,t) == R(y,x;t,s)
    for N in (2, 3):
        for (s, t, v) in ((1, 0, 0), (2, 1, -1), (F(1, 2), F(3, 2), 1)):
            a = RrParams(s, t, v, N, QB)
            b = RrParams(t, s, v, N, QB)
            for x in range(N + 1):
                for y in range(N + 1):
                    assert rr_inner(a, x, y) == rr_inner(b, y, x)


def test_rr_biorth_both_relations_exact():
    for N in range(4):
        for (s, t) in ((0, 0), (1, 2), (2, 1)):
            for v in (-2, -1, 0, 1):
                rp = RrParams(s, t, v, N, QB)
                for i in range(N + 1):
                    for j in range(N + 1):
                        assert rr_biorth_residual(rp, "x", i, j) == 0
                        assert rr_biorth_residual(rp, "y", i, j) == 0


def test_rr_biorth_self_partner():
    # v = -1 is its own partner: plain orthogonality
    rp = RrParams(0, 0, -1, 1, QB)
    assert rr_biorth_residual(rp, "x", 0, 1) == 0
    assert rr_biorth_residual(rp, "y", 1, 1) == 0


def test_rr_biorth_diagonal_value():
    # the diagonal of the x-relation equals 1/W(y, t)
    N, s, t, v = 3, 1, 2, 0
    rp = RrParams(s, t, v, N, QB)
    partner = RrParams(s, t, -v - 2, N, QB)
    y = 2
    total = sum(
        rr_inner(rp, x, y) * rr_inner(partner, x, y) * kraw_W(QB, s, N, x)
        for x in range(N + 1)
    )
    assert total == 1 / kraw_W(QB, t, N, y)


def test_rr_gevp_exact():
    for N in range(4):
        for (s, t, v) in ((2, 1, 1), (1, 0, 0), (0, 2, -1)):
            rp = RrParams(s, t, v, N, QB)
            for x in range(N + 1):
                for y in range(N + 1):
                    assert rr_gevp_residual(rp, x, y) == 0


def test_rr_gevp_closed_path():
    rp = RrParams(2, 1, 1, 3, QB)
    for x in range(4):
        for y in range(4):
            pts = [(x, yy) for yy in (y - 1, y, y + 1) if 0 <= yy <= 3]
            if all(rr_valid(rp, *pt) for pt in pts):
                assert rr_gevp_residual(rp, x, y, path="closed") == 0


def test_rr_out_of_range():
    rp = RrParams(1, 0, 0, 2, QB)
    with pytest.raises(OutOfRange):
        rr_inner(rp, 3, 0)
    with pytest.raises(OutOfRange):
        rr_biorth_residual(rp, "diag", 0, 0)


def test_rr_complex_backend_biorthogonality():
    # complex v with partner -conj(v) - 2 and an outer conjugation
    qb = QBase(0.5, "complex")
    rp = RrParams(1.0, 0.0, 0.5 + 0.25j, 2, qb)
    for i in range(3):
        for j in range(3):
            assert abs(rr_biorth_residual(rp, "x", i, j)) < 1e-12


# ---------------------------------------------------------------------------
# infinite family
# ---------------------------------------------------------------------------

QBF = QBase(0.5, "float")
TB = TailBound(tolerance=1e-13)


def test_pr_closed_vs_inner_benign_float():
    # the float backend meets 1e-10 away from the cancellation corner; the
    # exact-certified test below covers the full grid at full strength
    pp = PrParams(0, 0, -1, 1, QBF, TB)
    for x in range(3):
        for y in range(3):
            if pr_valid(pp, x, y):
                assert abs(pr_inner(pp, x, y) - pr_closed(pp, x, y)) < 1e-10


def test_pr_closed_vs_inner_spec_point_exact():
    # |inner - closed| < 1e-10 on the whole {0..3}**2 grid via exact scalars
    pp = PrParams(0, 0, -1, 1, QB, TB)
    for x in range(4):
        for y in range(4):
            if pr_valid(pp, x, y):
                assert abs(float(pr_inner(pp, x, y) - pr_closed(pp, x, y))) < 1e-10


def test_pr_closed_vs_inner_exact_certified():
    # exact scalars with certified truncation: only the truncation error
    # remains, relative to the (possibly huge) function values
    for (k, s, t, v) in ((1, 0, 0, -1), (2, 1, F(1, 2), 0), (1, 1, 2, 1)):
        pp = PrParams(s, t, v, k, QB, TB)
        for x in range(4):
            for y in range(4):
                if not pr_valid(pp, x, y):
                    with pytest.raises(DenominatorPole):
                        pr_closed(pp, x, y)
                    continue
                inner = pr_inner(pp, x, y)
                closed = pr_closed(pp, x, y)
                assert abs(float(closed - inner)) < 1e-10 * (1 + abs(float(inner)))


def test_pr_x0_is_prefactor():
    pp = PrParams(1, 0, 0, 1, QBF, TB)
    for y in range(3):
        assert abs(pr_closed(pp, 0, y) - pr_inner(pp, 0, y)) < 1e-11


def test_pr_symmetry():
    pp = PrParams(1, 0, 0, 2, QBF, TB)
    pq = PrParams(0, 1, 0, 2, QBF, TB)
    for x in range(3):
        for y in range(3):
            a, b = pr_inner(pp, x, y), pr_inner(pq, y, x)
            assert abs(a - b) < 1e-11 * (1 + abs(a))


def test_pr_convergence_constraint():
    # Re(v) >= 1 + s + t diverges
    with pytest.raises(NonConvergent):
        pr_inner(PrParams(0, 0, 1.5, 1, QBF, TB), 0, 0)
    with pytest.raises(NonConvergent):
        pr_closed(PrParams(0, 0, 2, 1, QBF, TB), 1, 1)


def test_pr_biorth():
    pp = PrParams(0, 0, -1, 1, QBF, TB)
    assert abs(pr_biorth_residual(pp, "x", 0, 1)) < 1e-8
    diag = pr_biorth_residual(pp, "x", 0, 0)
    assert abs(diag) < 1e-8
    pp2 = PrParams(1, 1, 0, 2, QBF, TB)
    assert abs(pr_biorth_residual(pp2, "x", 1, 0)) < 1e-8
    with pytest.raises(NonConvergent):
        pr_biorth_residual(PrParams(0, 0, 3.0, 1, QBF, TB), "x", 0, 0)


def test_pr_biorth_diagonal_value():
    # the y-relation diagonal equals 1/W_k(x, s)
    from qracah import asc_W

    pp = PrParams(0, 0, -1, 1, QBF, TB)
    got = pr_biorth_residual(pp, "y", 0, 0)
    assert abs(got) < 1e-8  # residual already subtracts 1/W_k(0, s)
    assert asc_W(QBF, 0, 1, 0, TB) > 0


def test_pr_gevp():
    # exact scalars keep the residual at pure truncation size
    for (k, s, t, v) in ((1, 0, 1, 0), (2, 1, 0, -1)):
        pp = PrParams(s, t, v, k, QB, TB)
        for x in range(4):
            for y in range(4):
                assert abs(float(pr_gevp_residual(pp, x, y))) < 1e-9
    # a larger spectral point, same contract
    pp = PrParams(0, 1, 0, 1, QB, TB)
    assert abs(float(pr_gevp_residual(pp, 6, 1))) < 1e-8


def test_pole_index_helper():
    assert _pole_index(F(1, 2), F(3, 2), 0, 2) == 2
    assert _pole_index(0, 0, 0, 1) is None  # half-integer offset, no pole
    assert _pole_index(1.0, 0.0, 0.0, 1) == 0
