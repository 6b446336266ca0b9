"""The T-adic side: a truncated Dwork matrix, its characteristic series and polygon."""
import numpy as np

from aswn import PolyOverFq, build_tower
from aswn.dwork import artin_hasse_product, artin_hasse_rational, nuclear_matrix, series_valuation, stable_tadic_polygon
from aswn.polygon import hodge_polygon, y_u

# %% Artin–Hasse coefficients from the recurrence and from the product formula
print(artin_hasse_rational(3, 8))
print(artin_hasse_rational(3, 8) == artin_hasse_product(3, 8))

# %% The Dwork matrix for f = x^2 + x over F_3, u = 0: row n' has tau-valuation >= (p-1) c_{u,n'}
tower = build_tower(3, 1, 1)
f = PolyOverFq.from_ints(tower, [0, 1, 1])
N = nuclear_matrix(tower, f, 0, 6, 40, 6)
vals = np.array([[series_valuation(N.data[i, j]) if N.data[i, j].any() else -1 for j in range(N.n)]
                 for i in range(N.n)])
print("c =", N.c)
print("row bounds =", N.row_bounds())
print(vals)

# %% Characteristic series, truncated twice as deep to certify the vertices at (kd, y_u(kd))
st = stable_tadic_polygon(tower, f, 0, k_max=2)
print("stable:", st.stable, " polygon:", st.polygon)
print("expected vertices:", [(2 * k, y_u(3, 1, 2, 0, 2 * k)) for k in range(3)])
print("Hodge polygon:", hodge_polygon(3, 1, 2, 0, st.polygon.end))
