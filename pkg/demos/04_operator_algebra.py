"""Quantum-algebra generator matrices and their machine-checked identities.

The compact representation acts on {0..N}; the non-compact one on a
truncated window where identities are exact away from the last rows.  The
twisted tridiagonal elements are diagonalized by the two polynomial
families, and the generalized eigenvalue problem collapses to a plain one
through K**-2 X_{0,s} = Xtilde_{1,s}.
"""

from fractions import Fraction as F

from qracah import QBase
from qracah.uqsl2 import (
    RepSpec,
    eigen_residual,
    gens,
    gevp_rewrite_residual,
    relation_residuals,
    star_residual,
    twist_rewrite_residual,
    twist_x,
)

qb = QBase(F(1, 2))
rs = RepSpec.su2(3, qb)

K, Ki, E, Fm = gens(rs)
print("K diagonal:", [K[n][n] for n in range(rs.dim)])
print("E subdiagonal:", [E[n][n - 1] for n in range(1, rs.dim)])

print("\ndefining relations:")
for name, res in relation_residuals(rs).items():
    print(f"  {name}: residual {res.abs_sum()}")

print("star structure (E* = F):", star_residual(rs, E, Fm).abs_sum())

print("\npolynomial-in-K**2 rewrite of the twisted element:")
print("  residual:", twist_rewrite_residual(rs, 1, 0, 2, 1).abs_sum())
print("GEVP -> EVP rewrite residual:", gevp_rewrite_residual(rs, 2).abs_sum())

print("\neigen-equation residuals (one per spectral point):")
for x in range(rs.dim):
    res = eigen_residual(rs, 1, 2, x)
    print(f"  x={x}:", max(abs(r) for r in res))

# the truncated non-compact window: exact on the interior, the last row
# is fed from outside the truncation and is honestly flagged
rs11 = RepSpec.su11(2, 8, qb)
res = relation_residuals(rs11)["EF - FE - (K2-Kinv2)/(q-1/q)"]
print("\nnon-compact EF relation: interior residual", res.abs_sum(rs11.interior(1)),
      "| full-matrix residual", res.abs_sum())
