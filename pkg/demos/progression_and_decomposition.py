"""Slopes at higher conductor and the factorisation over multiplicative twists."""
from aswn.harness import Instance, cmd_verify_decompose, cmd_verify_independent, cmd_verify_strong

# %% At conductor 9 the slopes are the conductor-3 slopes spread into arithmetic progressions
rep = cmd_verify_strong(Instance.from_dict({"p": 3, "f": [0, 1, 1], "u": 1, "m": 2}), m_list=[2])
print("m0 =", rep.metadata["m0"], " base slopes:", rep.metadata["base_slopes"])
print("direct   :", rep.metadata["slopes_by_m"]["2"]["direct"])
print("predicted:", rep.metadata["slopes_by_m"]["2"]["predicted"])

# %% The polygon does not depend on which character of conductor 9 is used
rep = cmd_verify_independent(Instance.from_dict({"p": 3, "f": [0, 1], "u": 1, "m": 2}))
for r, poly in sorted(rep.metadata["polygons_by_r"].items()):
    print("r =", r, poly)

# %% L of f(x^(q-1)) with trivial twist is the product of the q-1 twisted L-functions of f
rep = cmd_verify_decompose(Instance.from_dict({"p": 2, "a": 2, "f": [0, 1, 0, 1]}))
print("degree of L_g:", rep.metadata["degree_g"], " of the product:", rep.metadata["degree_product"])
print([(c["name"], c["status"]) for c in rep.checks])
