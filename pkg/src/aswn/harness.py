"""Verification drivers: configuration, checks, reports, cache and plots.

Each ``cmd_*`` function takes an :class:`Instance` and returns a :class:`Report`;
the CLI in :mod:`aswn.cli` only parses arguments and writes files.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from sympy import isprime

from . import dwork, lfun
from .errors import BudgetExceeded, InvalidConfig, PrecisionExhausted
from .fields import build_tower
from .lfun import ChiSpec, PolyOverFq
from .padic import specializes_to_zero
from .polygon import (
    Polygon,
    SlopeMultiset,
    first_violation,
    fmt_q,
    from_slopes,
    height,
    hodge_polygon,
    max_vertical_gap,
    scale_y,
    slopes,
    up_polygon,
    y_u,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

EXIT_OK, EXIT_FAIL, EXIT_PRECISION, EXIT_CONFIG = 0, 1, 2, 3


# --- instances ------------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    p: int
    a: int
    f: tuple[tuple[int, ...], ...]  # power-basis vectors, low degree first
    u: int = 0
    m: int = 1
    r: int = 1
    M: int | None = None
    K_tau: int | None = None
    n_rows: int | None = None
    k_max: int = 2
    budget: int = lfun.DEFAULT_ELEMENT_BUDGET
    total_budget: int = lfun.DEFAULT_TOTAL_BUDGET
    m_list: tuple[int, ...] = ()
    r_list: tuple[int, ...] = ()

    @property
    def q(self) -> int:
        return self.p**self.a

    @property
    def d(self) -> int:
        return len(self.f) - 1

    @property
    def D(self) -> int:
        return self.d * self.p ** (self.m - 1)

    @classmethod
    def from_dict(cls, obj: dict) -> "Instance":
        if not isinstance(obj, dict):
            raise InvalidConfig("instance must be a JSON object")
        known = {"p", "a", "f", "d", "u", "m", "r", "M", "K_tau", "n_rows", "k_max", "budget",
                 "total_budget", "m_list", "r_list"}
        extra = set(obj) - known
        if extra:
            raise InvalidConfig(f"unknown keys {sorted(extra)}")
        try:
            p, a = int(obj["p"]), int(obj.get("a", 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidConfig(f"bad p/a: {exc}") from None
        if "f" in obj:
            f = tuple(_coeff_vector(c, a) for c in obj["f"])
        elif "d" in obj:
            d = int(obj["d"])
            f = tuple(tuple([1 if i == d else 0] + [0] * (a - 1)) for i in range(d + 1))
        else:
            raise InvalidConfig("instance needs f (coefficients) or d")
        inst = cls(
            p=p, a=a, f=f,
            u=int(obj.get("u", 0)), m=int(obj.get("m", 1)), r=int(obj.get("r", 1)),
            M=_opt_int(obj.get("M")), K_tau=_opt_int(obj.get("K_tau")), n_rows=_opt_int(obj.get("n_rows")),
            k_max=int(obj.get("k_max", 2)),
            budget=int(obj.get("budget", lfun.DEFAULT_ELEMENT_BUDGET)),
            total_budget=int(obj.get("total_budget", lfun.DEFAULT_TOTAL_BUDGET)),
            m_list=tuple(int(x) for x in obj.get("m_list", ())),
            r_list=tuple(int(x) for x in obj.get("r_list", ())),
        )
        inst.validate()
        return inst

    def validate(self) -> None:
        p, a = self.p, self.a
        if p < 2 or not isprime(p):
            raise InvalidConfig(f"p={p} is not prime")
        if a < 1:
            raise InvalidConfig("a must be positive")
        if self.d < 1:
            raise InvalidConfig("f must have positive degree")
        if self.d % p == 0:
            raise InvalidConfig(f"degree {self.d} is divisible by p={p}")
        if tuple(self.f[-1]) != tuple([1] + [0] * (a - 1)):
            raise InvalidConfig("f must be monic")
        if any(not 0 <= c < p for vec in self.f for c in vec):
            raise InvalidConfig("f coefficients must be residues in [0, p)")
        if not 0 <= self.u <= self.q - 2:
            raise InvalidConfig(f"u={self.u} outside [0, q-2]")
        if self.m < 1:
            raise InvalidConfig("m must be positive")
        for r in (self.r,) + self.r_list:
            if not 1 <= r < p**self.m or math.gcd(r, p) != 1:
                raise InvalidConfig(f"r={r} must satisfy 1 <= r < p^m and gcd(r, p) = 1")
        if any(m < 1 for m in self.m_list):
            raise InvalidConfig("m_list entries must be positive")
        if self.k_max < 0:
            raise InvalidConfig("k_max must be nonnegative")

    def to_dict(self) -> dict:
        out = {"p": self.p, "a": self.a, "f": [list(v) for v in self.f], "u": self.u, "m": self.m, "r": self.r}
        for key in ("M", "K_tau", "n_rows"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        if self.m_list:
            out["m_list"] = list(self.m_list)
        if self.r_list:
            out["r_list"] = list(self.r_list)
        return out

    def key(self) -> str:
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()[:16]

    def tower(self, l_max: int = 1):
        return build_tower(self.p, self.a, max(1, l_max))

    def poly(self, tower=None) -> PolyOverFq:
        tower = tower or self.tower()
        return PolyOverFq.from_ints(tower, [list(v) for v in self.f])

    def replace(self, **kw) -> "Instance":
        data = {k: getattr(self, k) for k in self.__dataclass_fields__}
        data.update(kw)
        inst = Instance(**data)
        inst.validate()
        return inst


def _coeff_vector(c, a: int) -> tuple[int, ...]:
    if isinstance(c, int):
        vec = [c]
    elif isinstance(c, list) and all(isinstance(x, int) for x in c):
        vec = list(c)
    else:
        raise InvalidConfig(f"bad coefficient {c!r}")
    if len(vec) > a:
        raise InvalidConfig(f"coefficient {c!r} longer than a={a}")
    return tuple(vec + [0] * (a - len(vec)))


def _opt_int(x):
    return None if x is None else int(x)


def load_config(path: str) -> list[Instance]:
    """A config holds one instance object or {"instances": [...]}."""
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidConfig(f"cannot read config: {exc}") from None
    if isinstance(obj, dict) and "instances" in obj:
        items = obj["instances"]
        if not isinstance(items, list) or not items:
            raise InvalidConfig("instances must be a non-empty list")
        return [Instance.from_dict(x) for x in items]
    return [Instance.from_dict(obj)]


def resolve_cache_dir(cli_value: str | None) -> str | None:
    env = os.environ.get("ASWN_CACHE")
    return env if env else cli_value


# --- reports ------------------------------------------------------------------------

@dataclass
class Report:
    command: str
    instance: dict
    polygons: dict = field(default_factory=dict)
    slopes: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    precision: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)
    timing_ms: int = 0

    def check(self, name: str, ok: bool | None, witness: Any = None) -> bool:
        status = SKIPPED if ok is None else (PASS if ok else FAIL)
        self.checks.append({"name": name, "status": status, "witness": _jsonable(witness)})
        return bool(ok)

    @property
    def exit_code(self) -> int:
        if self.metadata.get("error_kind") == "precision":
            return EXIT_PRECISION
        return EXIT_FAIL if any(c["status"] == FAIL for c in self.checks) else EXIT_OK

    @property
    def passed(self) -> bool:
        return self.exit_code == EXIT_OK

    def to_dict(self, with_timing: bool = True) -> dict:
        out = {
            "command": self.command,
            "instance": self.instance,
            "polygons": self.polygons,
            "slopes": self.slopes,
            "checks": self.checks,
            "precision": self.precision,
            "metadata": self.metadata,
        }
        if with_timing:
            out["timing_ms"] = self.timing_ms
        return out

    def to_json(self, with_timing: bool = True) -> str:
        return json.dumps(self.to_dict(with_timing), sort_keys=True, indent=2) + "\n"


def _jsonable(x):
    if isinstance(x, Fraction):
        return fmt_q(x)
    if isinstance(x, Polygon):
        return x.to_json()
    if isinstance(x, SlopeMultiset):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _timed(command: str):
    def wrap(fn):
        def run(inst: Instance, *args, **kw) -> Report:
            t0 = time.perf_counter()
            rep = Report(command, inst.to_dict())
            try:
                fn(inst, rep, *args, **kw)
            except PrecisionExhausted as exc:
                rep.metadata["error_kind"] = "precision"
                rep.metadata["error"] = str(exc)
            rep.timing_ms = int((time.perf_counter() - t0) * 1000)
            return rep

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


# --- shared computations ---------------------------------------------------------------

def scale_factor(p: int, m: int) -> int:
    """(p-1) p^(m-1): turns the p-adic polygon into T-adic units."""
    return (p - 1) * p ** (m - 1)


@dataclass
class LData:
    L: lfun.LPolynomial
    np: Polygon
    M: int
    tower: Any
    f: PolyOverFq


def compute_L(inst: Instance, cache_dir: str | None = None, extra: int = 0, m: int | None = None,
              u: int | None = None, r: int | None = None, f: PolyOverFq | None = None) -> LData:
    m = inst.m if m is None else m
    u = inst.u if u is None else u
    r = inst.r if r is None else r
    tower = inst.tower()
    f = f or inst.poly(tower)
    L = lfun.lfunction(tower, f, u, m, extra=extra, cache_dir=cache_dir,
                       budget=inst.budget, total_budget=inst.total_budget)
    poly, used = lfun.np_of_L(L, tower, ChiSpec(m, r % p_pow(inst.p, m)), M=inst.M, return_precision=True)
    return LData(L, poly, used, tower, f)


def p_pow(p: int, m: int) -> int:
    return p**m


def _fill_polygons(rep: Report, inst: Instance, data: LData, m: int | None = None, u: int | None = None) -> None:
    m = inst.m if m is None else m
    u = inst.u if u is None else u
    p, a, d = inst.p, inst.a, inst.d
    D = d * p ** (m - 1)
    c = Fraction(1, scale_factor(p, m))
    rep.polygons = {
        "np": data.np.to_json(),
        "hp_scaled": scale_y(hodge_polygon(p, a, d, u, D), c).to_json(),
        "up_scaled": scale_y(up_polygon(p, a, d, u, D), c).to_json(),
    }
    rep.slopes = slopes(data.np).to_json()
    rep.precision = {"M": data.M, "K_tau": None, "n_rows": None}


def _degree_checks(rep: Report, data: LData, D: int) -> None:
    L = data.L
    rep.check("degree_equals_dp^(m-1)", L.degree == D and not L.coeffs[-1].is_zero(),
              {"degree": L.degree, "expected": D})


def _sandwich_checks(rep: Report, inst: Instance, data: LData) -> None:
    p, a, d, u, m = inst.p, inst.a, inst.d, inst.u, inst.m
    D = inst.D
    scaled = scale_y(data.np, scale_factor(p, m))
    if scaled.end != D:
        rep.check("hodge_lower_bound", False, {"reason": "polygon does not reach D", "end": scaled.end})
        rep.check("up_upper_bound", False, {"reason": "polygon does not reach D", "end": scaled.end})
        return
    hp = hodge_polygon(p, a, d, u, D)
    up = up_polygon(p, a, d, u, D)
    x = first_violation(scaled, hp)
    rep.check("hodge_lower_bound", x is None,
              None if x is None else {"x": x, "np": height(scaled, x), "hp": height(hp, x)})
    x = first_violation(up, scaled)
    rep.check("up_upper_bound", x is None,
              None if x is None else {"x": x, "np": height(scaled, x), "up": height(up, x)})


def _main_checks(rep: Report, inst: Instance, data: LData, m: int | None = None, u: int | None = None) -> None:
    """Slope checks on one L: vertex passage and slope intervals."""
    m = inst.m if m is None else m
    u = inst.u if u is None else u
    p, a, d = inst.p, inst.a, inst.d
    scale = scale_factor(p, m)
    pm1 = p ** (m - 1)
    nppoly = data.np
    misses = []
    for k in range(pm1 + 1):
        target = y_u(p, a, d, u, k * d) / scale
        try:
            h = height(nppoly, k * d)
        except Exception:  # noqa: BLE001 - reported as a witness
            h = None
        if h != target:
            misses.append({"k": k, "x": k * d, "np": h, "expected": target})
    rep.check("passes_through_kd_points", not misses, misses or None)
    s = sum(int(ch) for ch in _digits(u, p, a))
    sl = list(slopes(nppoly))
    bad = []
    if len(sl) != d * pm1:
        bad.append({"reason": "slope count", "count": len(sl), "expected": d * pm1})
    else:
        for idx, alpha in enumerate(sl):
            k, j = idx // d + 1, idx % d + 1
            lo = Fraction(a * (k - 1), pm1) + Fraction(s, d * (p - 1) * pm1)
            hi = lo + Fraction(a * (d - 1), d * pm1)
            if not lo <= alpha <= hi:
                bad.append({"k": k, "j": j, "slope": alpha, "interval": [lo, hi]})
    rep.check("slopes_in_intervals", not bad, bad or None)


def _digits(u: int, p: int, a: int) -> list[int]:
    from .polygon import digits

    return digits(u, p, a)


# --- commands -----------------------------------------------------------------------

@_timed("lpoly")
def cmd_lpoly(inst: Instance, rep: Report, cache_dir: str | None = None) -> None:
    """L-polynomial, its Newton polygon and the Hodge/UP sandwich."""
    data = compute_L(inst, cache_dir)
    _fill_polygons(rep, inst, data)
    rep.metadata["lpoly"] = data.L.to_json()["coeffs"]
    _degree_checks(rep, data, inst.D)
    _sandwich_checks(rep, inst, data)


@_timed("verify main")
def cmd_verify_main(inst: Instance, rep: Report, cache_dir: str | None = None, oracle: bool = True) -> None:
    """Vertex passage and slope intervals, plus sandwich, degree and oracle checks."""
    D = inst.D
    extended = True
    try:
        lfun.check_budgets(inst.q, D + 2, inst.budget, inst.total_budget)
    except BudgetExceeded:
        extended = False
    data = compute_L(inst, cache_dir, extra=2 if extended else 0)
    _fill_polygons(rep, inst, data)
    _main_checks(rep, inst, data)
    _sandwich_checks(rep, inst, data)
    _degree_checks(rep, data, D)
    if extended:
        zero = all(c.is_zero() for c in data.L.extra)
        rep.check("series_vanishes_beyond_degree", zero,
                  None if zero else {"nonzero": [D + 1 + i for i, c in enumerate(data.L.extra) if not c.is_zero()]})
    else:
        rep.check("series_vanishes_beyond_degree", None, {"reason": "enumeration budget"})
    if oracle:
        deg = min(D + 2, 8) if extended else min(D, 8)
        series = data.L.coeffs + data.L.extra
        try:
            euler = lfun.euler_oracle(data.tower, data.f, inst.u, ChiSpec(inst.m, inst.r), deg, budget=inst.budget)
        except BudgetExceeded:
            rep.check("euler_product_oracle", None, {"reason": "enumeration budget"})
        else:
            diff = [k for k in range(deg + 1) if series[k] != euler[k]]
            rep.check("euler_product_oracle", not diff, {"degree": deg, "mismatch": diff} if diff else {"degree": deg})


def base_conductor_exponent(p: int, a: int, d: int) -> int:
    """Least m >= 1 with p^m > a d p / (8 (p - 1))."""
    bound = Fraction(a * d * p, 8 * (p - 1))
    m = 1
    while p**m <= bound:
        m += 1
    return m


@_timed("verify strong")
def cmd_verify_strong(inst: Instance, rep: Report, m_list=None, cache_dir: str | None = None) -> None:
    """Slopes at larger conductors as arithmetic progressions of the base slopes."""
    p, a, d = inst.p, inst.a, inst.d
    m0 = base_conductor_exponent(p, a, d)
    m_list = list(m_list or inst.m_list or [inst.m])
    rep.metadata["m0"] = m0
    rep.metadata["base_slope_count"] = d * p ** (m0 - 1)
    rep.metadata["note"] = "base slopes counted as the degree d p^(m0-1)"
    bad = [m for m in m_list if m < m0]
    if bad:
        raise InvalidConfig(f"m values {bad} are below m0 = {m0}")
    for m in m_list:
        lfun.check_budgets(inst.q, d * p ** (m - 1), inst.budget, inst.total_budget)
    base = compute_L(inst, cache_dir, m=m0, r=inst.r % p**m0 or 1)
    alphas = list(slopes(base.np))
    rep.metadata["base_slopes"] = [fmt_q(x) for x in alphas]
    rep.check("base_slope_count", len(alphas) == d * p ** (m0 - 1), {"count": len(alphas)})
    results = {}
    for m in sorted(set(m_list)):
        data = compute_L(inst, cache_dir, m=m)
        e = p ** (m - m0)
        predicted = SlopeMultiset(Fraction(al + a * i, e) for i in range(e) for al in alphas)
        direct = slopes(data.np)
        results[str(m)] = {"direct": direct.to_json(), "predicted": predicted.to_json()}
        rep.check(f"progression_m={m}", predicted == direct,
                  None if predicted == direct else results[str(m)])
        if m == inst.m:
            _fill_polygons(rep, inst, data)
    rep.metadata["slopes_by_m"] = results


@_timed("verify decompose")
def cmd_verify_decompose(inst: Instance, rep: Report, cache_dir: str | None = None) -> None:
    """L of f(x^(q-1)) at u = 0 against the product over u of L_f(omega^u)."""
    tower = inst.tower()
    f = inst.poly(tower)
    g = lfun.twist_compose(tower, f)
    q, m = inst.q, inst.m
    Dg = g.degree * inst.p ** (m - 1)
    lfun.check_budgets(q, Dg, inst.budget, inst.total_budget)
    Lg = lfun.lfunction(tower, g, 0, m, cache_dir=cache_dir, budget=inst.budget, total_budget=inst.total_budget)
    prod = [c.copy() for c in lfun.lfunction(tower, f, 0, m, cache_dir=cache_dir, budget=inst.budget,
                                             total_budget=inst.total_budget).coeffs]
    for u in range(1, q - 1):
        Lu = lfun.lfunction(tower, f, u, m, cache_dir=cache_dir, budget=inst.budget, total_budget=inst.total_budget)
        new = [prod[0].zero(*prod[0].params) for _ in range(len(prod) + Lu.degree)]
        for i, x in enumerate(prod):
            for j, y in enumerate(Lu.coeffs):
                new[i + j] = new[i + j] + x * y
        prod = new
    rep.metadata["degree_g"] = Lg.degree
    rep.metadata["degree_product"] = len(prod) - 1
    mism = []
    for k in range(max(len(prod), len(Lg.coeffs))):
        x = Lg.coeffs[k] if k < len(Lg.coeffs) else None
        y = prod[k] if k < len(prod) else None
        if x is None or y is None:
            rest = x if y is None else y
            if not specializes_to_zero(rest):
                mism.append(k)
        elif not specializes_to_zero(x - y):
            mism.append(k)
    rep.check("twisted_decomposition", not mism, {"mismatched_coefficients": mism} if mism else None)
    data = compute_L(inst.replace(f=tuple(tuple(c.coeffs) for c in g.coeffs), u=0), cache_dir)
    rep.polygons = {"np": data.np.to_json()}
    rep.slopes = slopes(data.np).to_json()
    rep.precision = {"M": data.M, "K_tau": None, "n_rows": None}


@_timed("verify independent")
def cmd_verify_independent(inst: Instance, rep: Report, r_list=None, cache_dir: str | None = None) -> None:
    """Newton polygon unchanged across all chi of the same conductor."""
    p, a, d, m = inst.p, inst.a, inst.d, inst.m
    r_list = list(r_list or inst.r_list or [r for r in range(1, p**m) if r % p])
    hyp = p**m > Fraction(a * d * p, 8)
    rep.metadata["hypothesis_p^m>adp/8"] = hyp
    base = None
    polys = {}
    for r in r_list:
        data = compute_L(inst, cache_dir, r=r)
        polys[str(r)] = data.np.to_json()
        if base is None:
            base = data
            _fill_polygons(rep, inst, data)
    same = len({json.dumps(v) for v in polys.values()}) == 1
    rep.metadata["polygons_by_r"] = polys
    if hyp:
        rep.check("independent_of_chi", same, None if same else polys)
    else:
        rep.metadata["informational_independence"] = same
        rep.check("independent_of_chi", None, {"reason": "conductor below the hypothesis bound", "observed": same})


@_timed("verify dwork")
def cmd_verify_dwork(inst: Instance, rep: Report, cache_dir: str | None = None) -> None:
    """T-adic polygon of the characteristic series with its certificates."""
    p, a, d, u, m = inst.p, inst.a, inst.d, inst.u, inst.m
    tower = inst.tower()
    f = inst.poly(tower)
    k_max = inst.k_max
    st = dwork.stable_tadic_polygon(tower, f, u, k_max, M=inst.M or 6, n=inst.n_rows, K_tau=inst.K_tau)
    r1, r2 = st.runs
    T = st.polygon
    rep.precision = {"M": r1.M, "K_tau": [r1.K_tau, r2.K_tau], "n_rows": [r1.n, r2.n]}
    rep.polygons = {"tadic": T.to_json()}
    target = k_max * d
    ok = st.stable and T.end >= target
    rep.check("stable_under_doubling", ok, None if ok else {"stable_end": T.end, "target": target})
    if not ok:
        rep.metadata["error_kind"] = "precision"
    miss = [k for k in range(k_max + 1) if not T.has_vertex(k * d, y_u(p, a, d, u, k * d))]
    rep.check("vertices_at_kd", not miss, {"missing_k": miss} if miss else None)
    units = [[dwork.unit_leading_term(r.ring, r.series, k, d, u, r.b) for k in range(k_max + 1)] for r in st.runs]
    rep.check("unit_leading_terms", all(all(x) for x in units), {"by_run": units})
    rep.check("hodge_bound_every_truncation", r1.hp_ok and r2.hp_ok, {"runs": [r1.hp_ok, r2.hp_ok]})
    hp = hodge_polygon(p, a, d, u, T.end)
    x = first_violation(T, hp)
    rep.check("hodge_bound_stable_polygon", x is None, None if x is None else {"x": x})
    # specialization inequality against the p-adic polygon
    data = compute_L(inst, cache_dir)
    Dl = data.L.degree
    kk = -(-T.end // Dl) if Dl else 0
    c_np = from_slopes(lfun.char_series_slopes(data.np, a, kk))
    xs = range(0, min(T.end, c_np.end) + 1)
    for name, factor in (("specialization_inequality", (p - 1) * p**m),
                         ("specialization_inequality_sharp", scale_factor(p, m))):
        bad = [x for x in xs if factor * height(c_np, x) < height(T, x)]
        rep.check(name, not bad, {"factor": factor, "x": bad} if bad else {"factor": factor})
    eq = [k for k in range(k_max + 1) if k * d <= c_np.end
          and scale_factor(p, m) * height(c_np, k * d) == y_u(p, a, d, u, k * d)]
    rep.metadata["sharp_equality_at_kd"] = eq
    rep.polygons["np_char_series"] = c_np.to_json()
    rep.slopes = slopes(T).to_json()


@_timed("verify distance")
def cmd_verify_distance(inst: Instance, rep: Report, cache_dir: str | None = None) -> None:
    """Vertical gap between UP and HP against a d (p-1) / 8."""
    p, a, d, u = inst.p, inst.a, inst.d, inst.u
    gap, bound = distance_gap(p, a, d, u)
    hp = hodge_polygon(p, a, d, u, 2 * d)
    up = up_polygon(p, a, d, u, 2 * d)
    rep.polygons = {"hp": hp.to_json(), "up": up.to_json()}
    rep.metadata["gap"] = fmt_q(gap)
    rep.metadata["bound"] = fmt_q(bound)
    rep.metadata["attained"] = gap == bound
    rep.check("gap_within_bound", gap <= bound, {"gap": gap, "bound": bound})


def distance_gap(p: int, a: int, d: int, u: int, periods: int = 2) -> tuple[Fraction, Fraction]:
    hp = hodge_polygon(p, a, d, u, periods * d)
    up = up_polygon(p, a, d, u, periods * d)
    return max_vertical_gap(up, hp), Fraction(a * d * (p - 1), 8)


def cmd_tower(inst: Instance, l_max: int = 2) -> dict:
    tower = build_tower(inst.p, inst.a, l_max)
    for l in range(1, l_max + 1):
        tower.embed(l)
    return tower.to_json()


COMMANDS = {
    "lpoly": cmd_lpoly,
    "main": cmd_verify_main,
    "strong": cmd_verify_strong,
    "decompose": cmd_verify_decompose,
    "independent": cmd_verify_independent,
    "dwork": cmd_verify_dwork,
    "distance": cmd_verify_distance,
}


def dry_run_cost(command: str, inst: Instance) -> dict:
    """Enumeration cost sum_l (q^l - 1) the command would need."""
    q, p, d = inst.q, inst.p, inst.d
    if command == "decompose":
        l_max = d * (q - 1) * p ** (inst.m - 1)
    elif command == "strong":
        l_max = max(d * p ** (m - 1) for m in (inst.m_list or (inst.m,)))
    elif command == "distance":
        l_max = 0
    elif command == "main":
        l_max = inst.D + 2
    else:
        l_max = inst.D
    return {"q": q, "l_max": l_max, "formula": f"sum_(l=1..{l_max}) ({q}^l - 1)",
            "elements": lfun.enumeration_cost(q, l_max)}


# --- SVG ------------------------------------------------------------------------------

_COLORS = {"np": "#1f77b4", "hp_scaled": "#2ca02c", "up_scaled": "#d62728", "tadic": "#9467bd",
           "np_char_series": "#ff7f0e", "hp": "#2ca02c", "up": "#d62728"}


def plot_svg(rep: Report, width: int = 480, height_px: int = 360) -> str:
    """Polylines of the report polygons, with vertex markers and a legend."""
    margin = 40
    polys = {k: [(x, Fraction(y)) for x, y in v] for k, v in rep.polygons.items() if v}
    xs = [x for pts in polys.values() for x, _ in pts] or [0, 1]
    ys = [float(y) for pts in polys.values() for _, y in pts] or [0, 1]
    x0, x1 = min(xs), max(max(xs), min(xs) + 1)
    y0, y1 = min(ys), max(max(ys), min(ys) + 1)

    def sx(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(y):
        return height_px - margin - (float(y) - y0) / (y1 - y0) * (height_px - 2 * margin)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height_px}" '
        f'viewBox="0 0 {width} {height_px}">',
        f'<title>{_esc(rep.command)}</title>',
        f'<line x1="{margin}" y1="{height_px - margin}" x2="{width - margin}" y2="{height_px - margin}" stroke="black"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height_px - margin}" stroke="black"/>',
        f'<text x="{width - margin}" y="{height_px - margin + 16}" font-size="11" text-anchor="end">{x1}</text>',
        f'<text x="{margin - 4}" y="{margin}" font-size="11" text-anchor="end">{y1:.3g}</text>',
    ]
    for i, (name, pts) in enumerate(sorted(polys.items())):
        color = _COLORS.get(name, "#333333")
        path = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{path}"/>')
        for x, y in pts:
            out.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" fill="{color}">'
                       f"<title>({x}, {fmt_q(y)})</title></circle>")
        ly = margin + 14 * i
        out.append(f'<rect x="{width - margin - 110}" y="{ly - 8}" width="10" height="10" fill="{color}"/>')
        out.append(f'<text x="{width - margin - 95}" y="{ly + 1}" font-size="11">{_esc(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
