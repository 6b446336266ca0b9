"""Newton polygons against the Hodge and UP bounds on a few small instances."""
from aswn.harness import Instance, cmd_verify_main

cases = [
    {"p": 3, "f": [0, 1, 1], "m": 1},
    {"p": 3, "f": [0, 1, 1], "m": 2},
    {"p": 2, "a": 2, "f": [0, 1, 0, 1], "m": 1},
    {"p": 5, "f": [0, 1, 1], "m": 1},
]

# %% For each u, the polygon (scaled by (p-1) p^(m-1)) is squeezed between HP and UP
for case in cases:
    p, a = case["p"], case.get("a", 1)
    for u in range(p**a - 1):
        rep = cmd_verify_main(Instance.from_dict({**case, "u": u}))
        status = {c["name"]: c["status"] for c in rep.checks}
        print(f"p={p} a={a} d={len(case['f']) - 1} m={case['m']} u={u}")
        print("   slopes    ", rep.slopes)
        print("   np        ", rep.polygons["np"])
        print("   hp/scale  ", rep.polygons["hp_scaled"])
        print("   up/scale  ", rep.polygons["up_scaled"])
        print("   checks    ", ", ".join(f"{k}={v}" for k, v in sorted(status.items())))
