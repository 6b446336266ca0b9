"""A Gauss sum and its slope: the smallest twisted L-function, computed end to end."""
from fractions import Fraction

from aswn import ChiSpec, PolyOverFq, build_tower, exp_sum, lfunction, np_of_L
from aswn.lfun import exp_sum_naive
from aswn.padic import pi_ring, pi_valuation, specialize_to_pi
from aswn.polygon import slopes, y_u

# %% F_3 with generator g = 2, f = x, the quadratic character (u = 1) and chi of conductor 3
tower = build_tower(3, 1, 1)
f = PolyOverFq.from_ints(tower, [0, 1])
print(tower, "g =", tower.g)

# %% The sum over F_3^x lives in Z[X]/(X^2 - 1) ⊗ Z[Y]/(Y^2 + Y + 1); X is omega(g), Y is chi(1)
S1 = exp_sum(tower, f, 1, 1, 1)
print("S_1 =", S1)
print("agrees with brute force:", S1 == exp_sum_naive(tower, f, 1, 1, 1))

# %% The L-function has degree d p^(m-1) = 1, so L = 1 + S_1 s
L = lfunction(tower, f, 1, 1)
print("L coefficients:", L.coeffs)

# %% Valuation of the linear coefficient after Y -> 1 + pi, X -> Teichmüller lift of g
ring = pi_ring(tower, 1, 8)
c1 = specialize_to_pi(L.coeffs[1], tower, ring, 1)
print("c_1 in Z_3[pi] =", c1, " v_3 =", pi_valuation(c1))

# %% Newton polygon and the predicted slope y_1(1)/(p - 1)
P = np_of_L(L, tower, ChiSpec(1, 1))
print("Newton polygon:", P, "slopes:", slopes(P))
print("prediction:", y_u(3, 1, 1, 1, 1) / 2, "==", Fraction(1, 2))
