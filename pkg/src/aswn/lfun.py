"""Twisted exponential sums, exact L-polynomials and their p-adic Newton polygons.

The sums are computed in the exact ring of :class:`~aswn.padic.CycInt`
(X ~ Teichmüller lift of g, Y ~ chi(1)); a character chi of conductor p^m is
only chosen when a polygon is taken.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded, EnumerationTooLarge, IntegralityViolation, ParamMismatch, PrecisionExhausted, SlopeOutOfRange
from .fields import FFElem, FieldTower
from .padic import (
    CycInt,
    CycRat,
    level_ring,
    pi_ring,
    pi_valuation,
    specialize_to_pi,
    specializes_to_zero,
)
from .polygon import INF, Polygon, SlopeMultiset, lower_hull, slopes, y_u

__all__ = [
    "PolyOverFq",
    "ChiSpec",
    "LPolynomial",
    "ExpSumTable",
    "exp_sum",
    "exp_sum_naive",
    "exp_sum_table",
    "l_series",
    "l_polynomial",
    "euler_oracle",
    "np_of_L",
    "char_series_slopes",
    "twist_compose",
    "lfunction",
    "DEFAULT_ELEMENT_BUDGET",
    "DEFAULT_TOTAL_BUDGET",
    "check_budgets",
    "enumeration_cost",
    "closed_point_count",
    "default_precision",
    "U_SIGN",
]

DEFAULT_ELEMENT_BUDGET = 10**7
DEFAULT_TOTAL_BUDGET = 10**8

# X-exponent attached to omega^u(Norm x) is U_SIGN * u * dlog_g(Norm x).  The
# basis x^{c_{u,n}/(q-1)} of the Dwork space computes sums twisted by
# omega^{-u}; with this sign the p-adic and T-adic sides describe the same
# L-function and the Hodge bound y_u applies (Stickelberger's theorem).
U_SIGN = -1


@dataclass(frozen=True)
class PolyOverFq:
    """Monic f = sum a_i x^i over F_q; ``coeffs[i]`` is a level-1 element."""

    tower: FieldTower = field(compare=False, repr=False)
    coeffs: tuple[FFElem, ...]

    def __post_init__(self):
        if not self.coeffs or not self.coeffs[-1].is_one():
            raise ValueError("polynomial must be monic")
        if self.degree % self.tower.p == 0:
            raise ValueError(f"degree {self.degree} is divisible by p={self.tower.p}")

    @classmethod
    def from_ints(cls, tower: FieldTower, coeffs: Sequence) -> "PolyOverFq":
        """Coefficients low degree first; each an int (prime-field value) or a length-a vector."""
        out = []
        for c in coeffs:
            vec = [c] if isinstance(c, int) else list(c)
            out.append(tower.element(vec))
        return cls(tower, tuple(out))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def int_coeffs(self) -> list[list[int]]:
        return [list(c.coeffs) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"PolyOverFq(d={self.degree}, {self.int_coeffs()})"


def twist_compose(tower: FieldTower, f: PolyOverFq) -> PolyOverFq:
    """g(x) = f(x^{q-1})."""
    Q = tower.q - 1
    zero = tower.level(1).zero
    out = [zero] * (f.degree * Q + 1)
    for i, c in enumerate(f.coeffs):
        out[i * Q] = c
    return PolyOverFq(tower, tuple(out))


@dataclass(frozen=True)
class ChiSpec:
    """chi of conductor p^m with chi(1) = zeta_{p^m}^r."""

    m: int
    r: int = 1

    def check(self, p: int) -> None:
        if self.m < 1 or not 1 <= self.r < p**self.m or gcd(self.r, p) != 1:
            raise ParamMismatch(f"invalid character (m={self.m}, r={self.r}) for p={p}")


# --- exponential sums -------------------------------------------------------------

class _LevelTables:
    """Per-(level, precision) data for the discrete-log indexed sum."""

    def __init__(self, tower: FieldTower, l: int, M: int):
        F = tower.level(l)
        self.N = N = F.order - 1
        Q = tower.q - 1
        gamma = F.primitive_element
        h = gamma ** (N // Q)
        target = tower.embed(l)
        x, e_g = F.one, None
        for k in range(Q):
            if x == target:
                e_g = k
                break
            x = x * h
        assert e_g is not None and gcd(e_g, Q) == 1
        self.e_g = e_g
        self.inv_e_g = pow(e_g, -1, Q) if Q > 1 else 0
        R = level_ring(tower, l, M)
        w = R.teichmuller_of_coeffs(gamma.coeffs)
        A = np.array(R.mult_matrix(w), dtype=np.int64)
        trv = np.array(R.trace_vector, dtype=np.int64)
        self.trW = _orbit_traces(A, trv, N, R.pM)


def _orbit_traces(A: np.ndarray, trv: np.ndarray, N: int, mod: int) -> np.ndarray:
    """trv . A^k . e_0 for 0 <= k < N, mod ``mod``."""
    n = A.shape[0]
    B = min(N, 256)
    V = np.zeros((n, B), dtype=np.int64)
    v = np.zeros(n, dtype=np.int64)
    v[0] = 1
    for k in range(B):
        V[:, k] = v
        v = (A @ v) % mod
    AB = np.eye(n, dtype=np.int64)
    for _ in range(B):
        AB = (AB @ A) % mod
    out = np.empty(N, dtype=np.int64)
    for start in range(0, N, B):
        stop = min(N, start + B)
        out[start:stop] = (trv @ V[:, : stop - start]) % mod
        V = (AB @ V) % mod
    return out


_TABLES: dict = {}


def _level_tables(tower: FieldTower, l: int, M: int) -> _LevelTables:
    key = (tower.p, tower.a, l, M)
    if key not in _TABLES:
        _TABLES[key] = _LevelTables(tower, l, M)
    return _TABLES[key]


def _check_budget(count: int, budget: int) -> None:
    if count > budget:
        raise EnumerationTooLarge(f"{count} field elements exceed the enumeration budget {budget}")


def exp_sum(tower: FieldTower, f: PolyOverFq, u: int, m: int, l: int,
            budget: int = DEFAULT_ELEMENT_BUDGET) -> CycInt:
    """S_l = sum over x in F_{q^l}^x of X^{±u dlog Norm x} Y^{Tr f^(x^) mod p^m}."""
    p, q = tower.p, tower.q
    if not 0 <= u <= q - 2:
        raise ValueError(f"u={u} outside 0..q-2")
    _check_budget(q**l - 1, budget)
    tower.ensure_level(l)
    tables = _level_tables(tower, l, m)
    N, Q, pm = tables.N, q - 1, p**m
    k = np.arange(N, dtype=np.int64)
    tr = np.zeros(N, dtype=np.int64)
    for i, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        j = (N // Q) * tables.e_g * tower.dlog(c) % N
        tr += tables.trW[(j + i * k) % N]
    tr %= pm
    xexp = (U_SIGN * u * tables.inv_e_g * k) % Q if Q > 1 else np.zeros(N, dtype=np.int64)
    counts = np.bincount(xexp * pm + tr, minlength=Q * pm)
    return CycInt.from_counts(q, p, m, counts.astype(object).reshape(Q, pm))


def _lifted_coeffs(tower: FieldTower, f: PolyOverFq, l: int, m: int):
    R = level_ring(tower, l, m)
    return R, [R.teichmuller_of_coeffs(tower.to_level(c, l).coeffs) if not c.is_zero() else R.zero
               for c in f.coeffs]


def _point_data(tower: FieldTower, f: PolyOverFq, m: int, x: FFElem, norm: FFElem, lifted=None):
    """(dlog_g Norm x, Tr f^(x^) mod p^m) via the generic Teichmüller/trace route."""
    R, coeffs = lifted or _lifted_coeffs(tower, f, x.level, m)
    xh = R.teichmuller_of_coeffs(x.coeffs)
    acc = R.zero
    for ch in reversed(coeffs):
        acc = acc * xh + ch
    return tower.dlog(norm), R.trace(acc) % tower.p**m


def exp_sum_naive(tower: FieldTower, f: PolyOverFq, u: int, m: int, l: int) -> CycInt:
    """Same as :func:`exp_sum`, by plain enumeration of F_{q^l}^x."""
    p, q = tower.p, tower.q
    tower.ensure_level(l)
    out = np.zeros((q - 1, p**m), dtype=object)
    lifted = _lifted_coeffs(tower, f, l, m)
    for x in tower.enumerate_units(l):
        e, j = _point_data(tower, f, m, x, tower.norm_to_base(x), lifted)
        out[(U_SIGN * u * e) % (q - 1), j] += 1
    return CycInt.from_counts(q, p, m, out)


# --- exp-sum table with on-disk cache ------------------------------------------

def _cache_key(tower: FieldTower, f: PolyOverFq, u: int, m: int, l: int) -> str:
    blob = json.dumps(
        {
            "p": tower.p,
            "a": tower.a,
            "P1": list(tower.defining_poly(1)),
            "g": list(tower.g.coeffs),
            "f": f.int_coeffs(),
            "u": u,
            "m": m,
            "l": l,
            "sign": U_SIGN,
        },
        sort_keys=True,
    )
    return hashlib.sha256(blob.encode()).hexdigest()


def _atomic_write(path: str, text: str) -> None:
    d = os.path.dirname(path)
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


class ExpSumTable(dict):
    """Write-once map l -> S_l."""

    def __setitem__(self, key, value):
        if key in self:
            raise KeyError(f"S_{key} already set")
        super().__setitem__(key, value)


def exp_sum_table(tower: FieldTower, f: PolyOverFq, u: int, m: int, l_max: int,
                  cache_dir: str | None = None, budget: int = DEFAULT_ELEMENT_BUDGET) -> ExpSumTable:
    table = ExpSumTable()
    for l in range(1, l_max + 1):
        path = None
        if cache_dir:
            path = os.path.join(cache_dir, _cache_key(tower, f, u, m, l) + ".json")
            if os.path.exists(path):
                with open(path) as fh:
                    table[l] = CycInt.from_json(json.load(fh))
                continue
        table[l] = exp_sum(tower, f, u, m, l, budget=budget)
        if path:
            _atomic_write(path, json.dumps(table[l].to_json(), sort_keys=True))
    return table


# --- L-polynomial ---------------------------------------------------------------

@dataclass
class LPolynomial:
    coeffs: list[CycInt]
    header: dict
    extra: list[CycInt] = field(default_factory=list)  # coefficients beyond the degree

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> dict:
        return {"instance": self.header, "coeffs": [c.to_json() for c in self.coeffs]}


def l_series(sums: dict, n: int, params: tuple[int, int, int]) -> list[CycInt]:
    """c_0..c_n of exp(sum S_l s^l / l) via k c_k = sum_{l<=k} S_l c_{k-l}."""
    c = [CycInt.one(*params)]
    for k in range(1, n + 1):
        acc = CycInt.zero(*params)
        for l in range(1, k + 1):
            acc = acc + sums[l] * c[k - l]
        ck = CycRat(acc, k)
        if not ck.is_integral():
            raise IntegralityViolation(f"c_{k} has denominator {ck.den}")
        c.append(ck.num)
    return c


def l_polynomial(sums: dict, D: int, params: tuple[int, int, int] | None = None,
                 header: dict | None = None) -> LPolynomial:
    if params is None:
        if not sums:
            raise ValueError("params are required when no sums are given")
        params = next(iter(sums.values())).params
    avail = max(sums) if sums else 0
    if avail < D:
        raise ValueError(f"need S_l for l <= {D}, have {avail}")
    cs = l_series(sums, avail, params)
    return LPolynomial(cs[: D + 1], dict(header or {}), cs[D + 1 :])


def enumeration_cost(q: int, l_max: int) -> int:
    """Field elements enumerated for S_1..S_{l_max}: sum of (q^l - 1)."""
    return sum(q**l - 1 for l in range(1, l_max + 1))


def check_budgets(q: int, l_max: int, budget: int = DEFAULT_ELEMENT_BUDGET,
                  total_budget: int = DEFAULT_TOTAL_BUDGET) -> None:
    if q**l_max - 1 > budget:
        raise BudgetExceeded(f"q^{l_max} - 1 = {q**l_max - 1} exceeds the per-sum budget {budget}; "
                             f"this instance needs l_max = {l_max}")
    total = enumeration_cost(q, l_max)
    if total > total_budget:
        raise BudgetExceeded(f"total enumeration {total} exceeds the budget {total_budget}")


def lfunction(tower: FieldTower, f: PolyOverFq, u: int, m: int, extra: int = 0,
              cache_dir: str | None = None, budget: int = DEFAULT_ELEMENT_BUDGET,
              total_budget: int = DEFAULT_TOTAL_BUDGET) -> LPolynomial:
    """L_f(omega^u, -, s) of degree D = d p^(m-1), with ``extra`` further series terms."""
    D = f.degree * tower.p ** (m - 1)
    need = D + extra
    check_budgets(tower.q, need, budget, total_budget)
    sums = exp_sum_table(tower, f, u, m, need, cache_dir=cache_dir, budget=budget)
    header = {"p": tower.p, "a": tower.a, "f": f.int_coeffs(), "u": u, "m": m}
    return l_polynomial(sums, D, (tower.q, tower.p, m), header)


# --- Euler product oracle ---------------------------------------------------------

def closed_point_count(q: int, l: int) -> int:
    """Number of closed points of degree l on G_m over F_q."""
    from sympy import divisors, mobius

    return sum(int(mobius(e)) * (q ** (l // e) - 1) for e in divisors(l)) // l


_POINT_CLASSES: dict = {}


def _closed_point_classes(tower: FieldTower, f: PolyOverFq, m: int, l: int) -> dict[tuple[int, int], int]:
    """Closed points of degree l grouped by (dlog of norm, trace of f^ mod p^m)."""
    key = (tower.p, tower.a, tuple(c.coeffs for c in f.coeffs), m, l)
    if key in _POINT_CLASSES:
        return _POINT_CLASSES[key]
    q = tower.q
    tower.ensure_level(l)
    lifted = _lifted_coeffs(tower, f, l, m)
    groups: dict[tuple[int, int], int] = {}
    seen: set = set()
    npts = 0
    for x in tower.enumerate_units(l):
        if x.coeffs in seen:
            continue
        orbit = [x]
        y = x**q
        while y != x:
            orbit.append(y)
            y = y**q
        seen.update(z.coeffs for z in orbit)
        if len(orbit) != l:
            continue
        npts += 1
        norm = orbit[0]
        for z in orbit[1:]:
            norm = norm * z
        k = _point_data(tower, f, m, x, tower.from_level(norm), lifted)
        groups[k] = groups.get(k, 0) + 1
    if npts != closed_point_count(q, l):
        raise AssertionError(f"closed point count mismatch at degree {l}")
    _POINT_CLASSES[key] = groups
    return groups


def euler_oracle(tower: FieldTower, f: PolyOverFq, u: int, chi: ChiSpec, deg: int,
                 budget: int = DEFAULT_ELEMENT_BUDGET) -> list[CycInt]:
    """Series coefficients c_0..c_deg of the Euler product over closed points."""
    p, q, m = tower.p, tower.q, chi.m
    chi.check(p)
    params = (q, p, m)
    series = [CycInt.one(*params)] + [CycInt.zero(*params) for _ in range(deg)]
    for l in range(1, deg + 1):
        _check_budget(q**l - 1, budget)
        groups = _closed_point_classes(tower, f, m, l)
        for (e, j), n in sorted(groups.items()):
            w = CycInt.monomial(q, p, m, (U_SIGN * u * e) % (q - 1), j)
            # (1 - w s^l)^(-n) = sum_k C(n+k-1, k) w^k s^(lk)
            factor = {0: CycInt.one(*params)}
            wk = CycInt.one(*params)
            for k in range(1, deg // l + 1):
                wk = wk * w
                factor[k * l] = wk * comb(n + k - 1, k)
            new = [CycInt.zero(*params) for _ in range(deg + 1)]
            for a_, ca in enumerate(series):
                if ca.is_zero():
                    continue
                for b_, cb in factor.items():
                    if a_ + b_ <= deg:
                        new[a_ + b_] = new[a_ + b_] + ca * cb
            series = new
    return series


# --- Newton polygons ----------------------------------------------------------------

def default_precision(p: int, a: int, d: int, u: int, m: int) -> int:
    return math.ceil(y_u(p, a, d, u, d * p ** (m - 1))) + 8


def coefficient_valuations(L: LPolynomial, tower: FieldTower, chi: ChiSpec, M: int,
                           max_M: int = 4096) -> tuple[list[Fraction | None], int]:
    """v_p of each specialised coefficient (None for an exact zero) and the precision used."""
    chi.check(tower.p)
    while True:
        ring = pi_ring(tower, chi.m, M)
        vals: list[Fraction | None] = []
        try:
            for c in L.coeffs:
                if c.is_zero() or specializes_to_zero(c):
                    vals.append(INF)
                    continue
                vals.append(pi_valuation(specialize_to_pi(c, tower, ring, chi.r)))
            return vals, M
        except PrecisionExhausted:
            if 2 * M > max_M:
                raise
            M *= 2


def np_of_L(L: LPolynomial, tower: FieldTower, chi: ChiSpec, M: int | None = None,
            return_precision: bool = False):
    """p-adic Newton polygon of L specialised at chi (v_p(p) = 1)."""
    if M is None:
        h = L.header
        M = default_precision(tower.p, tower.a, len(h.get("f", [0, 1])) - 1, h.get("u", 0), chi.m)
    if L.degree == 0:
        poly, used = lower_hull([(0, 0)]), M
    else:
        vals, used = coefficient_valuations(L, tower, chi, M)
        poly = lower_hull(enumerate(vals))
    return (poly, used) if return_precision else poly


def char_series_slopes(np_L: Polygon, a: int, k_max: int) -> SlopeMultiset:
    """Slopes below a*k_max of prod_i L(q^i s), given the polygon of L."""
    base = slopes(np_L)
    for s in base:
        if not 0 <= s < a:
            raise SlopeOutOfRange(f"slope {s} outside [0, {a})")
    out = []
    for i in range(k_max):
        out.extend(s + a * i for s in base)
    return SlopeMultiset(out)
