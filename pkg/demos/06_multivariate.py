"""Nested multivariate functions: shift sets, transfer identities, recurrences.

A chain of M sites threads the univariate families through a running height
parameter.  Diagonal actions on the last j sites transfer to weighted sums
over shift vectors whose prefix sums stay in {-1,0,1}; the admissible set
has exactly 3**j members, and every identity below checks to exact zero.
"""

from fractions import Fraction as F
from itertools import product as iproduct

from qracah import QBase
from qracah.multivar import (
    epsilon_set,
    heights,
    multi_biorth_residual,
    multi_gevp_residual,
    nested_kraw,
    rr_multi,
    rr_multi_inner,
    transfer_check_k2,
    transfer_check_x,
)

qb = QBase(F(1, 2))

print("shift vectors for a 3-site chain, j = 2 (first site frozen):")
for eps in epsilon_set(3, 2):
    print("  ", eps)

Ns, s, t, v = (2, 2), 1, 0, 1
print("\nheights along ys=(1,0), base t=0:", heights(t, (1, 0), Ns))
print("nested value at ns=(1,1), ys=(1,0):", nested_kraw(qb, v, t, Ns, (1, 0), (1, 1)))

print("\ntransfer identities over every ys (exact):")
bad = 0
for j in (1, 2):
    for ys in iproduct(range(3), range(3)):
        bad += transfer_check_k2(qb, j, ys, t, v, Ns) != 0
        bad += transfer_check_x(qb, j, ys, t, v, s, Ns) != 0
print("  nonzero residuals:", bad)

print("\nproduct form vs full tensor inner product:")
xs, ys = (1, 0), (0, 2)
print("  product:", rr_multi(qb, s, t, v, Ns, xs, ys))
print("  tensor :", rr_multi_inner(qb, s, t, v, Ns, xs, ys))

print("\nmultivariate recurrence residuals, all index pairs:")
grid = list(iproduct(range(3), range(3)))
bad = sum(
    multi_gevp_residual(qb, j, xs, ys, s, t, v, Ns) != 0
    for j in (1, 2) for xs in grid for ys in grid
)
print("  nonzero:", bad)

print("\nmultivariate biorthogonality (partner -v-2), sample rows:")
for ys2 in grid[:4]:
    r = multi_biorth_residual(qb, s, t, 0, Ns, "x", (1, 0), ys2)
    print(f"  ys'={ys2}: residual {r}")
