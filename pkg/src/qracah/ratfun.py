"""Univariate rational overlap functions of q-Racah type.

``rr_*`` is the finite family: the pairing of two finite-family polynomial
vectors under the n-side weight.  ``rr_inner`` (a finite sum of terminating
series, hence unconditionally exact) is the reference; ``rr_closed`` is the
terminating 4phi3 closed form under test, which has genuine poles at
isolated parameter points rejected by ``rr_valid``.

``pr_*`` is the infinite analogue built on the Al-Salam--Chihara-type
family; its inner product converges for Re(v) < 1 + s + t and is evaluated
under the tail certificate, and its closed form carries a ratio of infinite
Pochhammers computed as one shared truncated product.

Both pairings are evaluated bilinearly (no conjugation inside the sum): for
real parameters this is literally the weighted inner product, and it is the
analytic continuation in v that makes closed form and biorthogonality hold
verbatim for complex v with partner -conj(v) - 2 and an outer conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DenominatorPole, NonConvergent, OutOfRange
from .orthopoly import (
    ASCParams,
    KrawParams,
    asc,
    asc_d_coeffs,
    asc_diff_coeffs,
    asc_w,
    asc_W,
    kraw,
    kraw_b_coeffs,
    kraw_diff_coeffs,
    kraw_w,
    kraw_W,
)
from .qseries import PhiSpec, TailBound, certified_sum, qpoch, qpoch_inf_ratio, rphis
from .scalar import QBase, as_exponent


@dataclass(frozen=True)
class RrParams:
    """Parameters of the finite rational family."""

    s: object
    t: object
    v: object
    N: int
    qb: QBase


@dataclass(frozen=True)
class PrParams:
    """Parameters of the infinite rational family; needs 0 < q < 1 and, for
    the inner product, Re(v) < 1 + s + t."""

    s: object
    t: object
    v: object
    k: object
    qb: QBase
    tb: TailBound = TailBound()


def rr_inner(rp: RrParams, x: int, y: int):
    """Reference evaluation: sum_n k_{1,s}(n,x) k_{v,t}(n,y) w(n)."""
    if not (0 <= x <= rp.N and 0 <= y <= rp.N):
        raise OutOfRange(f"(x, y) = ({x}, {y}) outside 0..{rp.N}")
    left = KrawParams(1, rp.s, rp.N, rp.qb)
    right = KrawParams(rp.v, rp.t, rp.N, rp.qb)
    return sum(
        kraw(left, n, x) * kraw(right, n, y) * kraw_w(rp.qb, rp.N, n)
        for n in range(rp.N + 1)
    )


def _pole_index(s, t, v, y):
    # the only real-parameter pole of the closed forms: the denominator
    # parameter q**(-2y+s-t-v+1) equals q**(-2j) at j = y - (s-t-v+1)/2
    e = as_exponent(s) - as_exponent(t) - as_exponent(v) + 1
    j = y - e / 2
    if isinstance(j, Fraction):
        return int(j) if j.denominator == 1 else None
    if isinstance(j, complex):
        if j.imag != 0:
            return None
        j = j.real
    return int(j) if float(j) == int(j) else None


def rr_valid(rp: RrParams, x: int, y: int) -> bool:
    """True unless the 4phi3 denominator parameter q**(-2y+s-t-v+1) hits
    q**(-2j) for a j inside the x-terminated summation range."""
    j = _pole_index(rp.s, rp.t, rp.v, y)
    return j is None or not 0 <= j <= x - 1


def rr_closed(rp: RrParams, x: int, y: int):
    """Closed form: prefactor times the terminating 4phi3 in base q**2.

    Agrees with rr_inner on the whole validity domain; raises
    DenominatorPole at rejected points (the offending parameter is the
    denominator entry q**(-2y+s-t-v+1)).
    """
    if not (0 <= x <= rp.N and 0 <= y <= rp.N):
        raise OutOfRange(f"(x, y) = ({x}, {y}) outside 0..{rp.N}")
    if not rr_valid(rp, x, y):
        raise DenominatorPole(
            f"q^(-2y+s-t-v+1) = q^(-2j) with j = {_pole_index(rp.s, rp.t, rp.v, y)}"
            f" inside the series range 0..{x - 1}"
        )
    qb = rp.qb
    s, t, v = as_exponent(rp.s), as_exponent(rp.t), as_exponent(rp.v)
    N = rp.N
    q2 = qb.qpow(2)
    c1 = qpoch(-qb.qpow(-2 * N + s + t - v + 1), q2, N)
    c1 *= qpoch(-qb.qpow(-2 * x - 2 * s), q2, x) / qpoch(qb.qpow(-2 * N), q2, x)
    c1 *= qpoch(qb.qpow(-2 * y + s - t - v + 1), q2, y) / qpoch(
        -qb.qpow(s + t - 2 * N - v + 1), q2, y
    )
    ser = rphis(
        PhiSpec(
            numerators=(
                qb.qpow(-2 * x),
                -qb.qpow(2 * x + 2 * s - 2 * N),
                -qb.qpow(s + t - v + 1),
                qb.qpow(s - t - v + 1),
            ),
            denominators=(
                -qb.qpow(2 * s + 2),
                qb.qpow(-2 * y + s - t - v + 1),
                -qb.qpow(2 * y + s + t - 2 * N - v + 1),
            ),
            base=q2,
            argument=q2,
            terminate_after=x + 1,
        )
    )
    return c1 * ser


def _conj_param(qb: QBase, v):
    if qb.mode == "complex" and isinstance(v, complex):
        return v.conjugate()
    return v


def rr_biorth_residual(rp: RrParams, relation: str, idx: int, idx2: int):
    """Residual of the biorthogonality relation against the partner family
    with v replaced by -conj(v) - 2.

    relation="x" sums over x with weight W(x,s): the result is
    delta_{idx,idx2} / W(idx, t) for row indices (y, y') = (idx, idx2).
    relation="y" is the symmetric statement summing over y.
    """
    qb = rp.qb
    vpart = -_conj_param(qb, rp.v) - 2
    partner = RrParams(rp.s, rp.t, vpart, rp.N, qb)
    if relation == "x":
        acc = sum(
            rr_inner(rp, x, idx) * qb.conj(rr_inner(partner, x, idx2))
            * kraw_W(qb, rp.s, rp.N, x)
            for x in range(rp.N + 1)
        )
        if idx == idx2:
            acc -= 1 / kraw_W(qb, rp.t, rp.N, idx)
        return acc
    if relation == "y":
        acc = sum(
            rr_inner(rp, idx, y) * qb.conj(rr_inner(partner, idx2, y))
            * kraw_W(qb, rp.t, rp.N, y)
            for y in range(rp.N + 1)
        )
        if idx == idx2:
            acc -= 1 / kraw_W(qb, rp.s, rp.N, idx)
        return acc
    raise OutOfRange(f"relation must be 'x' or 'y', got {relation!r}")


def rr_gevp_residual(rp: RrParams, x: int, y: int, path: str = "inner"):
    """Residual of the generalized-eigenvalue three-term identity in y.

    [2x-N+s]_q (a_-1 R(x,y-1) + a_0 R(x,y) + a_1 R(x,y+1))
      - (b_-1 R(x,y-1) + (b_0 + [s]_q) R(x,y) + b_1 R(x,y+1)).

    Boundary terms are dropped exactly where their coefficient vanishes.
    path="inner" (total) or "closed" (raises at validity-rejected points).
    """
    qb = rp.qb
    ev = qb.bracket(2 * x - rp.N + as_exponent(rp.s))
    am1, a0, a1 = kraw_diff_coeffs(qb, rp.N, y, rp.t)
    bm1, b0, b1 = kraw_b_coeffs(qb, rp.N, y, rp.t, rp.v)
    evaluate = rr_inner if path == "inner" else rr_closed
    lhs = a0 * evaluate(rp, x, y)
    rhs = (b0 + qb.bracket(rp.s)) * evaluate(rp, x, y)
    if y > 0:
        val = evaluate(rp, x, y - 1)
        lhs += am1 * val
        rhs += bm1 * val
    if y < rp.N:
        val = evaluate(rp, x, y + 1)
        lhs += a1 * val
        rhs += b1 * val
    return ev * lhs - rhs


# ---------------------------------------------------------------------------
# the infinite family
# ---------------------------------------------------------------------------


def _pr_convergent(pp: PrParams) -> bool:
    s, t, v = (as_exponent(pp.s), as_exponent(pp.t), as_exponent(pp.v))
    re_v = v.real if isinstance(v, complex) else float(v)
    return re_v < float(s) + float(t) + 1


def pr_inner(pp: PrParams, x: int, y: int):
    """Certified evaluation of sum_n phi_{1,s}(n,x) phi_{v,t}(n,y) w_k(n);
    the terms decay like q**(n(s+t+1-v)), so Re(v) < 1+s+t is required."""
    if x < 0 or y < 0:
        raise OutOfRange(f"(x, y) = ({x}, {y}) must be nonnegative")
    if not _pr_convergent(pp):
        raise NonConvergent(
            f"inner product diverges: Re(v) = {pp.v} >= 1 + s + t"
        )
    left = ASCParams(1, pp.s, pp.k, pp.qb, pp.tb)
    right = ASCParams(pp.v, pp.t, pp.k, pp.qb, pp.tb)

    def terms():
        n = 0
        while True:
            yield asc(left, n, x) * asc(right, n, y) * asc_w(pp.qb, pp.k, n)
            n += 1

    return certified_sum(terms(), pp.tb)


def pr_valid(pp: PrParams, x: int, y: int) -> bool:
    """Same pole pattern as the finite family: q**(-2y+s-t-v+1) = q**(-2j)
    with j inside the x-terminated range."""
    j = _pole_index(pp.s, pp.t, pp.v, y)
    return j is None or not 0 <= j <= x - 1


def pr_closed(pp: PrParams, x: int, y: int):
    """Closed form: the infinite Pochhammer ratio (shared truncation) times
    finite Pochhammers times the terminating 4phi3 in base q**2."""
    if x < 0 or y < 0:
        raise OutOfRange(f"(x, y) = ({x}, {y}) must be nonnegative")
    if not _pr_convergent(pp):
        raise NonConvergent(f"closed form requires Re(v) < 1 + s + t, got v = {pp.v}")
    if not pr_valid(pp, x, y):
        raise DenominatorPole(
            f"q^(-2y+s-t-v+1) = q^(-2j) with j = {_pole_index(pp.s, pp.t, pp.v, y)}"
            f" inside the series range 0..{x - 1}"
        )
    qb = pp.qb
    s, t, v, k = (as_exponent(pp.s), as_exponent(pp.t), as_exponent(pp.v), as_exponent(pp.k))
    q2 = qb.qpow(2)
    c1 = qpoch_inf_ratio(qb.qpow(s + t + 2 * k - v + 1), qb.qpow(s + t - v + 1), q2, pp.tb)
    c1 *= qpoch(qb.qpow(-2 * y + s - t - v + 1), q2, y) / qpoch(
        qb.qpow(s + t + 2 * k - v + 1), q2, y
    )
    c1 *= qpoch(qb.qpow(-2 * x - 2 * s), q2, x) / qpoch(qb.qpow(2 * k), q2, x)
    ser = rphis(
        PhiSpec(
            numerators=(
                qb.qpow(-2 * x),
                qb.qpow(2 * x + 2 * s + 2 * k),
                qb.qpow(s + t - v + 1),
                qb.qpow(s - t - v + 1),
            ),
            denominators=(
                qb.qpow(2 * s + 2),
                qb.qpow(-2 * y + s - t - v + 1),
                qb.qpow(2 * y + s + t + 2 * k - v + 1),
            ),
            base=q2,
            argument=q2,
            terminate_after=x + 1,
        )
    )
    return c1 * ser


def pr_biorth_residual(pp: PrParams, relation: str, idx: int, idx2: int):
    """Residual of the infinite biorthogonality relation; requires
    |Re(v) + 1| < 2 + s + t so both family members converge.  The outer sum
    is truncated where the x-side weight mass drops below the tolerance."""
    qb = pp.qb
    v = pp.v
    re_v = v.real if isinstance(v, complex) else float(as_exponent(v))
    if not abs(re_v + 1) < 2 + float(as_exponent(pp.s)) + float(as_exponent(pp.t)):
        raise NonConvergent(f"biorthogonality needs |Re(v)+1| < 2+s+t, got v = {v}")
    vpart = -_conj_param(qb, v) - 2
    partner = PrParams(pp.s, pp.t, vpart, pp.k, qb, pp.tb)
    if relation == "x":
        outer_s, diag_t = pp.s, pp.t
        val = lambda m, x: (pr_inner(pp, x, idx) if m == 0 else pr_inner(partner, x, idx2))
    elif relation == "y":
        outer_s, diag_t = pp.t, pp.s
        val = lambda m, y: (pr_inner(pp, idx, y) if m == 0 else pr_inner(partner, idx2, y))
    else:
        raise OutOfRange(f"relation must be 'x' or 'y', got {relation!r}")

    def terms():
        u = 0
        while True:
            yield val(0, u) * qb.conj(val(1, u)) * asc_W(qb, outer_s, pp.k, u, pp.tb)
            u += 1

    acc = certified_sum(terms(), pp.tb)
    if idx == idx2:
        acc -= 1 / asc_W(qb, diag_t, pp.k, idx, pp.tb)
    return acc


def pr_gevp_residual(pp: PrParams, x: int, y: int):
    """Residual of the three-term identity for the infinite family, with
    {2x+k+s}_q on the left; float-precision contract (the closed form's
    infinite Pochhammer ratio prevents exact cancellation)."""
    qb = pp.qb
    ev = qb.brace(2 * x + as_exponent(pp.k) + as_exponent(pp.s))
    cm1, c0, c1 = asc_diff_coeffs(qb, pp.k, y, pp.t)
    dm1, d0, d1 = asc_d_coeffs(qb, pp.k, y, pp.t, pp.v)
    lhs = c0 * pr_inner(pp, x, y)
    rhs = (d0 + qb.brace(pp.s)) * pr_inner(pp, x, y)
    if y > 0:
        val = pr_inner(pp, x, y - 1)
        lhs += cm1 * val
        rhs += dm1 * val
    val = pr_inner(pp, x, y + 1)
    lhs += c1 * val
    rhs += d1 * val
    return ev * lhs - rhs
