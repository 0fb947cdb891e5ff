"""The two discrete orthogonal families and their transfer-coefficient tables.

Both families are renormalized terminating 3phi2's in base q**-2:

* ``kraw``  -- the finite family on {0..N} (dual q-Krawtchouk flavour),
  orthogonal in both variables with weights ``kraw_w`` / ``kraw_W``;
* ``asc``   -- the infinite family on the nonnegative integers
  (Al-Salam--Chihara flavour), orthogonal with weights ``asc_w`` / ``asc_W``.

The *_diff_coeffs / *_b_coeffs / *_d_coeffs / *_dyn_coeffs functions tabulate
the three-term (and parameter-shifting five-point) transfer coefficients that
move a diagonal action in n to a tridiagonal action in x.  Every table here
is machine-verified against the defining identities by the test suite; the
exact normalizations are pinned by the n = 0 row, where every polynomial
equals 1, so each coefficient row must sum to the diagonal symbol at n = 0
(q**-N for the finite family, q**k for the infinite one).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import OutOfRange
from .qseries import PhiSpec, TailBound, certified_sum, qbinom, qpoch, qpoch_inf_ratio, rphis
from .scalar import QBase, as_exponent

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class KrawParams:
    """Parameter pack for the finite family: twist u, base point s, size N."""

    u: object
    s: object
    N: int
    qb: QBase


@dataclass(frozen=True)
class ASCParams:
    """Parameter pack for the infinite family: twist u, base point s, weight k."""

    u: object
    s: object
    k: object
    qb: QBase
    tb: TailBound = TailBound()


# ---------------------------------------------------------------------------
# finite family
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _kraw_cached(qb, u, s, N, n, x):
    pref = (-1) ** n * qb.qpow(n * (s - u - N * _HALF + _HALF))
    ser = rphis(
        PhiSpec(
            numerators=(qb.qpow(2 * n), qb.qpow(2 * x), -qb.qpow(-2 * x - 2 * s + 2 * N)),
            denominators=(qb.qpow(2 * N),),
            base=qb.qpow(-2),
            argument=qb.qpow(-2),
            terminate_after=min(n, x) + 1,
        )
    )
    return pref * ser


def kraw(kp: KrawParams, n: int, x: int):
    """Evaluate the finite family member at (n, x), 0 <= n, x <= N."""
    if not (0 <= n <= kp.N and 0 <= x <= kp.N):
        raise OutOfRange(f"(n, x) = ({n}, {x}) outside 0..{kp.N}")
    return _kraw_cached(kp.qb, as_exponent(kp.u), as_exponent(kp.s), kp.N, n, x)


def kraw_w(qb: QBase, N: int, n: int):
    """n-side weight: q**(n(n-N)) times the q**2-binomial; invariant under q <-> 1/q."""
    if not 0 <= n <= N:
        raise OutOfRange(f"n = {n} outside 0..{N}")
    return qb.qpow(n * (n - N)) * qbinom(N, n, qb.qpow(2))


def kraw_W(qb: QBase, s, N: int, x: int, inverse_base: bool = True):
    """x-side weight.  All usage sites evaluate it in base 1/q, which is the
    default; pass inverse_base=False for the literal base-q expression."""
    if not 0 <= x <= N:
        raise OutOfRange(f"x = {x} outside 0..{N}")
    b = qb.inverse() if inverse_base else qb
    s = as_exponent(s)
    q2 = b.qpow(2)
    out = (1 + b.qpow(4 * x + 2 * s - 2 * N)) / (1 + b.qpow(2 * s - 2 * N))
    out *= qpoch(-b.qpow(2 * s - 2 * N), q2, x) / qpoch(-b.qpow(2 * s + 2), q2, x)
    out *= b.qpow(-x * (2 * s + 1 + x - 2 * N)) / qpoch(-b.qpow(-2 * s), q2, N)
    return out * qbinom(N, x, q2)


def kraw_orth_x(kp: KrawParams, n: int, n2: int):
    """Residual of the x-summed orthogonality: sum_x k(n,x) k(n2,x) W(x) - delta/w(n)."""
    k0 = KrawParams(0, kp.s, kp.N, kp.qb)
    acc = sum(
        kraw(k0, n, x) * kraw(k0, n2, x) * kraw_W(kp.qb, kp.s, kp.N, x)
        for x in range(kp.N + 1)
    )
    if n == n2:
        acc -= 1 / kraw_w(kp.qb, kp.N, n)
    return acc


def kraw_orth_n(kp: KrawParams, x: int, x2: int):
    """Residual of the n-summed orthogonality: sum_n k(n,x) k(n,x2) w(n) - delta/W(x)."""
    k0 = KrawParams(0, kp.s, kp.N, kp.qb)
    acc = sum(
        kraw(k0, n, x) * kraw(k0, n, x2) * kraw_w(kp.qb, kp.N, n)
        for n in range(kp.N + 1)
    )
    if x == x2:
        acc -= 1 / kraw_W(kp.qb, kp.s, kp.N, x)
    return acc


def kraw_diff_coeffs(qb: QBase, N: int, y: int, t):
    """Three-term transfer coefficients (a_-1, a_0, a_1) for the diagonal
    symbol q**(2n-N): q**(2n-N) k(n,y) = sum_eps a_eps k(n, y+eps).

    Boundary coefficients vanish (a_-1 at y=0, a_1 at y=N) and are returned
    as exact zeros without evaluating the shifted formula, which can hit a
    removable 0/0 there.  The middle coefficient is fixed by the n=0 row:
    a_-1 + a_0 + a_1 = q**-N.
    """
    if not 0 <= y <= N:
        raise OutOfRange(f"y = {y} outside 0..{N}")
    t = as_exponent(t)
    zero = qb.zero()
    if y == 0:
        am1 = zero
    else:
        am1 = -qb.qpow(-4 * y - 2 * t + 3 * N + 2) * (1 - qb.qpow(-2 * y)) * (
            1 + qb.qpow(-2 * y - 2 * t)
        ) / ((1 + qb.qpow(-4 * y - 2 * t + 2 * N + 2)) * (1 + qb.qpow(-4 * y - 2 * t + 2 * N)))
    if y == N:
        a1 = zero
    else:
        a1 = qb.qpow(-N) * (1 - qb.qpow(-2 * y + 2 * N)) * (
            1 + qb.qpow(-2 * y - 2 * t + 2 * N)
        ) / ((1 + qb.qpow(-4 * y - 2 * t + 2 * N)) * (1 + qb.qpow(-4 * y - 2 * t + 2 * N - 2)))
    a0 = qb.qpow(-N) - am1 - a1
    return am1, a0, a1


def kraw_b_coeffs(qb: QBase, N: int, y: int, t, v):
    """Tridiagonal coefficients (b_-1, b_0, b_1) of the twisted-element action;
    the full identity adds [s]_q on the diagonal."""
    t, v = as_exponent(t), as_exponent(v)
    am1, a0, a1 = kraw_diff_coeffs(qb, N, y, t)
    bm1 = am1 * qb.bracket(2 * y - N + t + v - 1)
    b0 = a0 * qb.bracket(2 * y - N + t) * qb.brace(v) - qb.bracket(t) * qb.brace(v)
    b1 = a1 * qb.bracket(2 * y - N + t - v + 1)
    return bm1, b0, b1


def kraw_dyn_coeffs(qb: QBase, N: int, y: int, t, direction: int):
    """Parameter-shifting transfer coefficients for the finite family.

    direction=+2: q**(2n-N) k_{v,t}(n,y) = sum of k_{v,t+2}(n, y+eps) over
    eps in (-2,-1,0); direction=-2 shifts t down with eps in (0,1,2).
    Returned in increasing eps order.  The common factor q**-N is pinned by
    the n=0 row sum.
    """
    if not 0 <= y <= N:
        raise OutOfRange(f"y = {y} outside 0..{N}")
    if direction not in (2, -2):
        raise OutOfRange(f"direction must be +-2, got {direction}")
    t = as_exponent(t)
    qn = qb.qpow(-N)
    zero = qb.zero()
    qp = qb.qpow
    if direction == 2:
        am22 = zero if y <= 1 else qn * (1 - qp(2 * y)) * (1 - qp(2 * y - 2)) / (
            (1 + qp(4 * y + 2 * t - 2 * N)) * (1 + qp(4 * y + 2 * t - 2 * N - 2)))
        am12 = zero if y == 0 else qn * (1 + qp(2)) * (1 - qp(2 * y)) * (1 + qp(2 * N - 2 * y - 2 * t)) / (
            (1 + qp(4 * y + 2 * t - 2 * N + 2)) * (1 + qp(2 * N - 4 * y - 2 * t + 2)))
        a02 = qn * (1 + qp(2 * N - 2 * y - 2 * t)) * (1 + qp(2 * N - 2 * y - 2 * t - 2)) / (
            (1 + qp(2 * N - 4 * y - 2 * t)) * (1 + qp(2 * N - 4 * y - 2 * t - 2)))
        return am22, am12, a02
    a0m2 = qn * (1 + qp(2 * y + 2 * t)) * (1 + qp(2 * y + 2 * t - 2)) / (
        (1 + qp(4 * y + 2 * t - 2 * N)) * (1 + qp(4 * y + 2 * t - 2 * N - 2)))
    a1m2 = zero if y >= N else qn * (1 + qp(2)) * (1 - qp(2 * N - 2 * y)) * (1 + qp(2 * y + 2 * t)) / (
        (1 + qp(2 * N - 4 * y - 2 * t + 2)) * (1 + qp(4 * y + 2 * t - 2 * N + 2)))
    a2m2 = zero if y >= N - 1 else qn * (1 - qp(2 * N - 2 * y)) * (1 - qp(2 * N - 2 * y - 2)) / (
        (1 + qp(2 * N - 4 * y - 2 * t)) * (1 + qp(2 * N - 4 * y - 2 * t - 2)))
    return a0m2, a1m2, a2m2


def kraw_shift_coeff(qb: QBase, N: int, y: int, t, eps: int, delta: int):
    """Unified lookup a_(eps, delta): delta=0 for the static triple, +-2 for
    the parameter-shifting tables.  Only the nine legal (eps, delta) pairs
    exist; anything else raises OutOfRange."""
    if delta == 0:
        if eps not in (-1, 0, 1):
            raise OutOfRange(f"eps = {eps} illegal for delta = 0")
        return kraw_diff_coeffs(qb, N, y, t)[eps + 1]
    if delta == 2:
        if eps not in (-2, -1, 0):
            raise OutOfRange(f"eps = {eps} illegal for delta = +2")
        return kraw_dyn_coeffs(qb, N, y, t, 2)[eps + 2]
    if delta == -2:
        if eps not in (0, 1, 2):
            raise OutOfRange(f"eps = {eps} illegal for delta = -2")
        return kraw_dyn_coeffs(qb, N, y, t, -2)[eps]
    raise OutOfRange(f"delta = {delta} is not one of -2, 0, +2")


# ---------------------------------------------------------------------------
# infinite family
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _asc_cached(qb, u, s, k, n, x):
    pref = qb.qpow(n * (s - u + k * _HALF + _HALF))
    ser = rphis(
        PhiSpec(
            numerators=(qb.qpow(2 * n), qb.qpow(2 * x), qb.qpow(-2 * x - 2 * s - 2 * k)),
            denominators=(qb.qpow(-2 * k),),
            base=qb.qpow(-2),
            argument=qb.qpow(-2),
            terminate_after=min(n, x) + 1,
        )
    )
    return pref * ser


def asc(ap: ASCParams, n: int, x: int):
    """Evaluate the infinite family member at (n, x), n, x >= 0."""
    if n < 0 or x < 0:
        raise OutOfRange(f"(n, x) = ({n}, {x}) must be nonnegative")
    return _asc_cached(ap.qb, as_exponent(ap.u), as_exponent(ap.s), as_exponent(ap.k), n, x)


def asc_w(qb: QBase, k, n: int):
    """n-side weight q**(-n(k-1)) (q**2k; q**2)_n / (q**2; q**2)_n."""
    if n < 0:
        raise OutOfRange(f"n = {n} must be nonnegative")
    k = as_exponent(k)
    q2 = qb.qpow(2)
    return qb.qpow(-n * (k - 1)) * qpoch(qb.qpow(2 * k), q2, n) / qpoch(q2, q2, n)


def asc_W(qb: QBase, s, k, x: int, tb: TailBound = TailBound()):
    """x-side weight; positive for s > -1, k > 0, decays like q**(2x(x+s)).

    The infinite Pochhammer pair is evaluated as a single truncated ratio so
    both factors share one truncation point.
    """
    if x < 0:
        raise OutOfRange(f"x = {x} must be nonnegative")
    s, k = as_exponent(s), as_exponent(k)
    q2 = qb.qpow(2)
    out = (1 - qb.qpow(4 * x + 2 * s + 2 * k)) / (1 - qb.qpow(2 * x + 2 * s + 2 * k))
    out *= qpoch(qb.qpow(2 * k), q2, x) / qpoch(q2, q2, x)
    out *= qpoch_inf_ratio(qb.qpow(2 * x + 2 * s + 2), qb.qpow(2 * x + 2 * s + 2 * k + 2), q2, tb)
    return out * qb.qpow(2 * x * (x + s))


def asc_orth_n(ap: ASCParams, x: int, x2: int):
    """Residual of the n-summed orthogonality (infinite sum, certified):
    sum_n phi(n,x) phi(n,x2) w_k(n) - delta/W_k(x)."""
    a0 = ASCParams(0, ap.s, ap.k, ap.qb, ap.tb)

    def terms():
        n = 0
        while True:
            yield asc(a0, n, x) * asc(a0, n, x2) * asc_w(ap.qb, ap.k, n)
            n += 1

    acc = certified_sum(terms(), ap.tb)
    if x == x2:
        acc -= 1 / asc_W(ap.qb, ap.s, ap.k, x, ap.tb)
    return acc


def asc_orth_x(ap: ASCParams, n: int, n2: int):
    """Residual of the x-summed orthogonality; the weight decays
    super-geometrically, so the certificate closes quickly."""
    a0 = ASCParams(0, ap.s, ap.k, ap.qb, ap.tb)

    def terms():
        x = 0
        while True:
            yield asc(a0, n, x) * asc(a0, n2, x) * asc_W(ap.qb, ap.s, ap.k, x, ap.tb)
            x += 1

    acc = certified_sum(terms(), ap.tb)
    if n == n2:
        acc -= 1 / asc_w(ap.qb, ap.k, n)
    return acc


def asc_diff_coeffs(qb: QBase, k, y: int, t):
    """Three-term transfer coefficients (c_-1, c_0, c_1) for the diagonal
    symbol q**(2n+k).  The boundary coefficient c_-1 vanishes at y=0 (and is
    short-circuited: its closed form is 0/0 there for some parameters); the
    n=0 row pins c_-1 + c_0 + c_1 = q**k."""
    if y < 0:
        raise OutOfRange(f"y = {y} must be nonnegative")
    t, k = as_exponent(t), as_exponent(k)
    qp = qb.qpow
    if y == 0:
        cm1 = qb.zero()
    else:
        cm1 = qp(-4 * y - 2 * t - 3 * k + 2) * (1 - qp(-2 * y)) * (1 - qp(-2 * y - 2 * t)) / (
            (1 - qp(-4 * y - 2 * t - 2 * k + 2)) * (1 - qp(-4 * y - 2 * t - 2 * k)))
    c1 = qp(k) * (1 - qp(-2 * y - 2 * k)) * (1 - qp(-2 * y - 2 * t - 2 * k)) / (
        (1 - qp(-4 * y - 2 * t - 2 * k)) * (1 - qp(-4 * y - 2 * t - 2 * k - 2)))
    c0 = qp(k) - cm1 - c1
    return cm1, c0, c1


def asc_d_coeffs(qb: QBase, k, y: int, t, v):
    """Tridiagonal coefficients (d_-1, d_0, d_1) of the twisted-element
    action for the infinite family; the identity adds {s}_q on the diagonal."""
    t, v, k = as_exponent(t), as_exponent(v), as_exponent(k)
    cm1, c0, c1 = asc_diff_coeffs(qb, k, y, t)
    dm1 = cm1 * qb.brace(2 * y + t + k + v - 1)
    d0 = c0 * qb.brace(2 * y + k + t) * qb.brace(v) - qb.brace(t) * qb.brace(v)
    d1 = c1 * qb.brace(2 * y + k + t - v + 1)
    return dm1, d0, d1


def asc_dyn_coeffs(qb: QBase, k, y: int, t, direction: int):
    """Parameter-shifting transfer coefficients for the infinite family,
    in increasing eps order; the n=0 row pins the common factor q**k.

    There is no upper boundary in y, so only the downward-shift coefficients
    vanish (at y=0 and y<=1)."""
    if y < 0:
        raise OutOfRange(f"y = {y} must be nonnegative")
    if direction not in (2, -2):
        raise OutOfRange(f"direction must be +-2, got {direction}")
    t, k = as_exponent(t), as_exponent(k)
    qk = qb.qpow(k)
    qp = qb.qpow
    zero = qb.zero()
    if direction == 2:
        cm22 = zero if y <= 1 else qk * (1 - qp(2 * y)) * (1 - qp(2 * y - 2)) / (
            (1 - qp(4 * y + 2 * t + 2 * k)) * (1 - qp(4 * y + 2 * t + 2 * k - 2)))
        cm12 = zero if y == 0 else qk * (1 + qp(2)) * (1 - qp(2 * y)) * (1 - qp(-2 * y - 2 * k - 2 * t)) / (
            (1 - qp(4 * y + 2 * t + 2 * k + 2)) * (1 - qp(-4 * y - 2 * k - 2 * t + 2)))
        c02 = qk * (1 - qp(-2 * y - 2 * k - 2 * t)) * (1 - qp(-2 * y - 2 * k - 2 * t - 2)) / (
            (1 - qp(-4 * y - 2 * k - 2 * t)) * (1 - qp(-4 * y - 2 * k - 2 * t - 2)))
        return cm22, cm12, c02
    c0m2 = qk * (1 - qp(2 * y + 2 * t)) * (1 - qp(2 * y + 2 * t - 2)) / (
        (1 - qp(4 * y + 2 * t + 2 * k)) * (1 - qp(4 * y + 2 * t + 2 * k - 2)))
    c1m2 = qk * (1 + qp(2)) * (1 - qp(-2 * y - 2 * k)) * (1 - qp(2 * y + 2 * t)) / (
        (1 - qp(-4 * y - 2 * k - 2 * t + 2)) * (1 - qp(4 * y + 2 * t + 2 * k + 2)))
    c2m2 = qk * (1 - qp(-2 * y - 2 * k)) * (1 - qp(-2 * y - 2 * k - 2)) / (
        (1 - qp(-4 * y - 2 * k - 2 * t)) * (1 - qp(-4 * y - 2 * k - 2 * t - 2)))
    return c0m2, c1m2, c2m2


def asc_shift_coeff(qb: QBase, k, y: int, t, eps: int, delta: int):
    """Unified lookup c_(eps, delta), mirroring kraw_shift_coeff."""
    if delta == 0:
        if eps not in (-1, 0, 1):
            raise OutOfRange(f"eps = {eps} illegal for delta = 0")
        return asc_diff_coeffs(qb, k, y, t)[eps + 1]
    if delta == 2:
        if eps not in (-2, -1, 0):
            raise OutOfRange(f"eps = {eps} illegal for delta = +2")
        return asc_dyn_coeffs(qb, k, y, t, 2)[eps + 2]
    if delta == -2:
        if eps not in (0, 1, 2):
            raise OutOfRange(f"eps = {eps} illegal for delta = -2")
        return asc_dyn_coeffs(qb, k, y, t, -2)[eps]
    raise OutOfRange(f"delta = {delta} is not one of -2, 0, +2")


def asc_weight_trunc(qb: QBase, s, k, tol: float, tb: TailBound = TailBound()) -> int:
    """Smallest X such that the x-side weight mass beyond X is below tol.

    The weight decays like q**(2x(x+s)), faster than geometric, so the tail
    beyond X is bounded by W(X+1) / (1 - q**2).
    """
    q2 = float(abs(qb.qpow(2)))
    for X in range(tb.max_terms):
        w_next = float(abs(asc_W(qb, s, k, X + 1, tb)))
        if w_next / (1 - q2) < tol:
            return X
    raise OutOfRange(f"no truncation point below {tol} found within {tb.max_terms}")
