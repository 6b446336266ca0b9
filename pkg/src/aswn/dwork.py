"""T-adic side: Artin–Hasse series, the Dwork matrix on the twisted basis and
the T-adic Newton polygon of its characteristic series.

Series live in Z_q[tau]/(tau^K, p^M) with tau^{d(q-1)} = pi and v_T = v_pi,
so v_T(tau) = 1/(d(q-1)).  A series is an int64 array of shape (K, a): entry
[k, c] is the coefficient of tau^k t^c, t the generator of Z_q over Z_p.
Matrices of series have shape (rows, cols, K, a).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from sympy import mobius

from .errors import (
    IntegralityViolation,
    MultiplicityNotDivisible,
    NegativeValuation,
    PrecisionExhausted,
    TruncationTooSmall,
)
from .fields import FieldTower
from .padic import level_ring
from .polygon import INF, Polygon, c_sequence, lower_hull, y_u

__all__ = [
    "artin_hasse_rational",
    "artin_hasse_product",
    "artin_hasse",
    "SeriesRing",
    "TauSeries",
    "DworkMatrix",
    "ef_coeffs",
    "nuclear_matrix",
    "semilinear_power",
    "char_series",
    "char_series_minors",
    "series_valuation",
    "tadic_np",
    "lower_bound_check",
    "unit_leading_term",
    "TadicRun",
    "tadic_run",
    "StableTadic",
    "stable_tadic_polygon",
]


# --- Artin–Hasse exponential -------------------------------------------------------

@lru_cache(maxsize=None)
def artin_hasse_rational(p: int, K: int) -> tuple[Fraction, ...]:
    """Coefficients of E(pi) through pi^K from k l_k = sum_{p^i <= k} l_{k - p^i}."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    lam = [Fraction(1)]
    for k in range(1, K + 1):
        acc, pi_ = Fraction(0), 1
        while pi_ <= k:
            acc += lam[k - pi_]
            pi_ *= p
        lam.append(acc / k)
    for k, c in enumerate(lam):
        if c.denominator % p == 0:
            raise IntegralityViolation(f"Artin–Hasse coefficient {k} is not p-integral")
    return tuple(lam)


def artin_hasse_product(p: int, K: int) -> tuple[Fraction, ...]:
    """Same coefficients from the product of (1 - pi^i)^(-mu(i)/i) over p not dividing i."""
    out = [Fraction(0)] * (K + 1)
    out[0] = Fraction(1)
    for i in range(1, K + 1):
        if i % p == 0:
            continue
        mu = int(mobius(i))
        if mu == 0:
            continue
        e = Fraction(-mu, i)
        # (1 - x)^e = sum_n binom(e, n) (-x)^n with x = pi^i
        factor = [Fraction(0)] * (K + 1)
        b = Fraction(1)
        for n in range(K // i + 1):
            factor[n * i] = b * (-1) ** n
            b = b * (e - n) / (n + 1)
        new = [Fraction(0)] * (K + 1)
        for s, cs in enumerate(out):
            if cs:
                for t in range(0, K + 1 - s, i):
                    new[s + t] += cs * factor[t]
        out = new
    return tuple(out)


def artin_hasse(p: int, K: int, M: int) -> list[int]:
    """E(pi) mod (pi^{K+1}, p^M) as integer residues."""
    pM = p**M
    return [c.numerator * pow(c.denominator, -1, pM) % pM for c in artin_hasse_rational(p, K)]


# --- series arithmetic -----------------------------------------------------------------

class SeriesRing:
    """Z_q[tau]/(tau^K, p^M), with Z_q = Z_p[t]/(lift of the level-1 modulus)."""

    def __init__(self, tower: FieldTower, K: int, M: int, D: int | None = None):
        self.tower = tower
        self.D = D or tower.q - 1  # tau-exponents per unit of v_T
        self.p, self.a, self.K, self.M = tower.p, tower.a, K, M
        self.pM = tower.p**M
        self.base = level_ring(tower, 1, M)
        a = self.a
        # structure tensor: t^b * t^c = sum_e S[b, c, e] t^e
        S = np.zeros((a, a, a), dtype=np.int64)
        for b in range(a):
            for c in range(a):
                S[b, c] = (self.base.gen ** (b + c)).coeffs
        self.S = S
        # fold[c] = t^c reduced mod the modulus, for c <= 2a-2
        self.fold = np.array([(self.base.gen**c).coeffs for c in range(2 * a - 1)], dtype=np.int64)
        self.F = np.array(self.base.frobenius_matrix, dtype=np.int64) % self.pM

    def zeros(self, *shape) -> np.ndarray:
        return np.zeros(shape + (self.K, self.a), dtype=np.int64)

    def one(self) -> np.ndarray:
        x = self.zeros()
        x[0, 0] = 1
        return x

    def from_unram(self, coeffs, shift: int = 0) -> np.ndarray:
        x = self.zeros()
        if shift < self.K:
            x[shift] = np.array(coeffs, dtype=np.int64) % self.pM
        return x

    # Series products go through Kronecker substitution: the coefficient of
    # tau^k t^c sits in 64-bit slot k*(2a-1)+c of a Python integer, so one
    # big-integer product multiplies two whole series.

    def pack(self, x: np.ndarray) -> int:
        K, a = self.K, self.a
        w = 2 * a - 1
        buf = np.zeros((K, w), dtype=np.uint64)
        buf[:, :a] = x
        return int.from_bytes(buf.tobytes(), "little")

    def unpack(self, z: int) -> np.ndarray:
        """Inverse of :meth:`pack` for sums of products: truncate, fold t^a.., reduce."""
        K, a = self.K, self.a
        w = 2 * a - 1
        nbytes = 8 * K * w
        z &= (1 << (8 * nbytes)) - 1
        buf = np.frombuffer(z.to_bytes(nbytes, "little"), dtype=np.uint64).reshape(K, w)
        buf = (buf % np.uint64(self.pM)).astype(np.int64)
        if a == 1:
            return buf
        return (buf @ self.fold) % self.pM

    def pack_matrix(self, A: np.ndarray) -> list[list[int]]:
        return [[self.pack(A[i, j]) for j in range(A.shape[1])] for i in range(A.shape[0])]

    def _check_slots(self, terms: int) -> None:
        if terms * self.K * self.a * (self.pM - 1) ** 2 >= 2**64:
            raise ValueError("precision too large for 64-bit packing slots")

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of two series."""
        return self.unpack(self.pack(x) * self.pack(y))

    def mul_reference(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Schoolbook product of series (broadcast over leading axes)."""
        K = self.K
        shape = np.broadcast_shapes(x.shape, y.shape)
        out = np.zeros(shape, dtype=np.int64)
        for k in range(K):
            xk = x[..., k, :]
            if not xk.any():
                continue
            out[..., k:, :] += np.einsum("...b,...kc,bce->...ke", xk, y[..., : K - k, :], self.S)
            out %= self.pM
        return out

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        n, m, l = A.shape[0], A.shape[1], B.shape[1]
        self._check_slots(m)
        Ap, Bp = self.pack_matrix(A), self.pack_matrix(B)
        out = self.zeros(n, l)
        for i in range(n):
            for j in range(l):
                out[i, j] = self.unpack(sum(Ap[i][k] * Bp[k][j] for k in range(m)))
        return out

    def sigma(self, x: np.ndarray, times: int = 1) -> np.ndarray:
        for _ in range(times % self.a if self.a > 1 else 0):
            x = (x @ self.F.T) % self.pM
        return x


def series_valuation(x: np.ndarray) -> int | None:
    """Least tau-power with a nonzero coefficient, None for the zero series."""
    nz = np.flatnonzero(x.reshape(x.shape[0], -1).any(axis=1))
    return int(nz[0]) if nz.size else None


@dataclass
class TauSeries:
    """A truncated tau-series tied to its ring (thin wrapper for JSON and valuation)."""

    ring: SeriesRing = field(repr=False)
    data: np.ndarray

    def __mul__(self, other: "TauSeries") -> "TauSeries":
        return TauSeries(self.ring, self.ring.mul(self.data, other.data))

    def __add__(self, other: "TauSeries") -> "TauSeries":
        return TauSeries(self.ring, (self.data + other.data) % self.ring.pM)

    def v_tau(self) -> int | None:
        return series_valuation(self.data)

    def v_T(self) -> Fraction | None:
        v = self.v_tau()
        return None if v is None else Fraction(v, self.ring.D)

    def to_json(self) -> list:
        return [[k, self.data[k].tolist()] for k in range(self.ring.K) if self.data[k].any()]


# --- Dwork matrix ----------------------------------------------------------------------

def ef_coeffs(tower: FieldTower, f_lift: list, d: int, j_max: int, K_tau: int, M: int,
              ring: SeriesRing | None = None) -> np.ndarray:
    """e_0..e_{j_max}: coefficient of x^j in prod_i E(a_i pi x^i), as tau-series.

    ``f_lift[i]`` is the Teichmüller lift of a_i as a coefficient vector.
    """
    q = tower.q
    if j_max * (q - 1) >= K_tau:
        raise TruncationTooSmall(f"j_max*(q-1) = {j_max * (q - 1)} >= K_tau = {K_tau}")
    D = d * (q - 1)
    ring = ring or SeriesRing(tower, K_tau, M, D)
    assert ring.K == K_tau
    Kpi = (K_tau - 1) // D
    lam = artin_hasse(tower.p, Kpi, M)
    base = ring.base
    a = tower.a
    # P[j, k, :]: coefficient of x^j pi^k
    P = np.zeros((j_max + 1, Kpi + 1, a), dtype=np.int64)
    P[0, 0, 0] = 1
    for i, ai in enumerate(f_lift):
        if not any(ai):
            continue
        z = base.elem(ai)
        zk = base.one
        terms = []
        for k in range(Kpi + 1):
            if i * k > j_max:
                break
            c = (zk * lam[k]).coeffs
            if any(c):
                terms.append((i * k, k, np.array(c, dtype=np.int64)))
            zk = zk * z
        new = np.zeros_like(P)
        for j0, k0, c in terms:
            blk = P[: j_max + 1 - j0, : Kpi + 1 - k0]
            new[j0:, k0:] += np.einsum("b,jkc,bce->jke", c, blk, ring.S)
            new %= ring.pM
        P = new
    E = np.zeros((j_max + 1, K_tau, a), dtype=np.int64)
    E[:, : D * Kpi + 1 : D] = P
    for j in range(j_max + 1):
        v = series_valuation(E[j])
        if v is not None and v < j * (q - 1):
            raise AssertionError(f"decay violated at e_{j}")
    return E


@dataclass
class DworkMatrix:
    data: np.ndarray  # (n, n, K, a)
    c: tuple[int, ...]
    header: dict
    ring: SeriesRing = field(repr=False)

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def row_bounds(self) -> list[int]:
        """Guaranteed tau-valuation (p-1) c_{u,n'} of each row."""
        p = self.ring.p
        return [(p - 1) * c for c in self.c]

    def to_json(self) -> dict:
        entries = []
        for i in range(self.n):
            for j in range(self.n):
                if self.data[i, j].any():
                    entries.append([i, j, TauSeries(self.ring, self.data[i, j]).to_json()])
        return {"header": self.header, "c": list(self.c), "entries": entries}


def _f_lift(tower: FieldTower, f, M: int) -> list:
    R = level_ring(tower, 1, M)
    return [R.teichmuller_of_coeffs(c.coeffs).coeffs if not c.is_zero() else (0,) * tower.a
            for c in f.coeffs]


def nuclear_matrix(tower: FieldTower, f, u: int, n: int, K_tau: int, M: int) -> DworkMatrix:
    """Matrix of sigma . psi_p . E_f on tau^{c} x^{c/(q-1)}, c = c_{u,0..n-1}."""
    p, q, a, d = tower.p, tower.q, tower.a, f.degree
    Q = q - 1
    cs = c_sequence(p, a, u)
    c = tuple(cs[i] for i in range(n))
    ring = SeriesRing(tower, K_tau, M, d * Q)
    K_e = K_tau + max(c)
    ring_e = SeriesRing(tower, K_e, M, d * Q)
    j_max = (K_e - 1) // Q
    E = ef_coeffs(tower, _f_lift(tower, f, M), d, j_max, K_e, M, ring_e)
    E = ring_e.sigma(E)
    N = ring.zeros(n, n)
    for r, cr in enumerate(c):
        for s, cc in enumerate(c):
            num = p * cr - cc
            if num < 0 or num % Q:
                continue
            j = num // Q
            if j > j_max:
                continue
            shift = cc - cr
            ej = E[j]
            if shift < 0:
                head = ej[: -shift]
                if head.any():
                    raise NegativeValuation(f"negative tau-power in entry ({r}, {s})")
                src = ej[-shift : -shift + K_tau]
                N[r, s, : src.shape[0]] = src
            else:
                if shift < K_tau:
                    N[r, s, shift:] = ej[: K_tau - shift]
    mat = DworkMatrix(N, c, {"p": p, "a": a, "d": d, "u": u, "n": n, "K_tau": K_tau, "M": M}, ring)
    for r, bound in enumerate(mat.row_bounds()):
        for s in range(n):
            v = series_valuation(N[r, s])
            if v is not None and v < bound:
                raise AssertionError(f"row valuation violated at ({r}, {s})")
    return mat


def semilinear_power(N: DworkMatrix, a: int | None = None) -> np.ndarray:
    """sigma^{a-1}(N) ... sigma(N) N."""
    ring = N.ring
    a = ring.a if a is None else a
    out = N.data
    for i in range(1, a):
        out = ring.matmul(ring.sigma(N.data, i), out)
    return out


# --- characteristic series ----------------------------------------------------------

def char_series(ring: SeriesRing, A: np.ndarray, s_deg: int) -> list[np.ndarray]:
    """r_0..r_{s_deg} of det(I - s A), by truncated Berkowitz (division free)."""
    n = A.shape[0]
    s_deg = min(s_deg, n)
    ring._check_slots(n)
    Ap = ring.pack_matrix(A)
    zero = ring.zeros()
    poly = [ring.one()] + [zero.copy() for _ in range(s_deg)]  # empty matrix
    for r in range(1, n + 1):
        # trailing r x r block: [[alpha, R], [C, A1]]
        i0 = n - r
        col = [zero.copy() for _ in range(s_deg + 1)]
        col[0] = ring.one()
        if s_deg >= 1:
            col[1] = (-A[i0, i0]) % ring.pM
        if r > 1 and s_deg >= 2:
            idx = range(i0 + 1, n)
            row = Ap[i0]
            v = [Ap[i][i0] for i in idx]  # C
            top = min(s_deg, r)
            for k in range(2, top + 1):
                col[k] = (-ring.unpack(sum(row[j] * vj for j, vj in zip(idx, v)))) % ring.pM
                if k < top:
                    v = [ring.pack(ring.unpack(sum(Ap[i][j] * vj for j, vj in zip(idx, v)))) for i in idx]
        new = []
        for k in range(s_deg + 1):
            acc = zero.copy()
            # the Toeplitz factor has r + 1 rows: degree never exceeds r
            for i in range(k + 1 if k <= r else 0):
                if col[i].any() and poly[k - i].any():
                    acc = (acc + ring.mul(col[i], poly[k - i])) % ring.pM
            new.append(acc)
        poly = new
    return poly


def char_series_minors(ring: SeriesRing, A: np.ndarray, s_deg: int) -> list[np.ndarray]:
    """Same as :func:`char_series` by summing principal minors (small n only)."""
    from itertools import combinations, permutations

    n = A.shape[0]
    out = [ring.one()]
    for k in range(1, s_deg + 1):
        acc = ring.zeros()
        for S in combinations(range(n), k):
            for perm in permutations(range(k)):
                inv = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
                term = ring.one()
                for i in range(k):
                    term = ring.mul_reference(term, A[S[i], S[perm[i]]])
                acc = acc + (-term if inv % 2 else term)
        out.append((acc * (-1) ** k) % ring.pM)
    return out


# --- polygons and checks -----------------------------------------------------------------

def tadic_np(series: list[np.ndarray], denom: int, b: int = 1, floors: list | None = None) -> Polygon:
    """Polygon of (k, v_tau(r_k)/denom); multiplicities divided by b."""
    pts = []
    for k, r in enumerate(series):
        v = series_valuation(r)
        if floors is not None and (v is None or v >= floors[k]):
            v = None
        pts.append((k, INF if v is None else Fraction(v, denom)))
    H = lower_hull(pts)
    return _divide_multiplicities(H, b)


def _divide_multiplicities(H: Polygon, b: int) -> Polygon:
    if b == 1:
        return H
    verts = []
    for x, y in H.vertices:
        if x % b:
            raise MultiplicityNotDivisible(f"vertex at x={x} not divisible by b={b}")
        verts.append((x // b, y / b))
    return Polygon(tuple(verts))


def lower_bound_check(ring: SeriesRing, mats: list[tuple[list[int], np.ndarray]], s_deg: int) -> bool:
    """Product lower bound for det(1 - s M_n ... M_1) with M_i = Diag(tau^{t_i}) M_i'.

    Each entry of ``mats`` is (t_i, M_i) with t_i non-decreasing tau-exponents; the
    check is pointwise v_tau(r_k) >= sum_i sum_{j<k} t_ij, which for a convex bound
    is equivalent to the comparison of polygons.
    """
    prod = mats[0][1]
    for _, Mi in mats[1:]:
        prod = ring.matmul(Mi, prod)
    rs = char_series(ring, prod, s_deg)
    for k, r in enumerate(rs):
        bound = sum(sum(t[:k]) for t, _ in mats)
        v = series_valuation(r)
        if bound >= ring.K:
            continue  # nothing certifiable past the truncation
        if v is not None and v < bound:
            return False
    return True


def unit_leading_term(ring: SeriesRing, series: list[np.ndarray], k: int, d: int, u: int, b: int = 1) -> bool:
    """v_T(r_{kdb}) = b*y_u(kd) with a unit leading coefficient."""
    tower = ring.tower
    D = d * (tower.q - 1)
    y = b * y_u(tower.p, tower.a, d, u, k * d)
    e = y * D
    assert e.denominator == 1
    e = int(e)
    idx = k * d * b
    if e >= ring.K or idx >= len(series):
        raise PrecisionExhausted(f"tau-precision {ring.K} or degree {len(series) - 1} too small for r_{idx}")
    r = series[idx]
    v = series_valuation(r)
    if v != e:
        return False
    return bool(np.any(r[e] % ring.p))


# --- end-to-end driver with certificate -----------------------------------------------

@dataclass
class TadicRun:
    n: int
    K_tau: int
    M: int
    series: list[np.ndarray] = field(repr=False)
    floors: list[int]
    denom: int
    b: int
    hull: Polygon
    certified: list[tuple[int, Fraction]]  # vertices of C^b proven from this truncation
    hp_ok: bool
    ring: SeriesRing = field(repr=False)


def _floors(p: int, a: int, c_next: list[int], c_n: int, K: int, s_deg: int) -> list[int]:
    """tau-precision to which the truncated r_k agrees with the true r_k."""
    out = []
    for k in range(s_deg + 1):
        if k == 0:
            out.append(K)
            continue
        tail = (p - 1) * ((a - 1) * sum(c_next[:k]) + sum(c_next[: k - 1]) + c_n)
        out.append(min(K, tail))
    return out


def tadic_run(tower: FieldTower, f, u: int, s_deg: int, n: int, K_tau: int, M: int) -> TadicRun:
    p, q, a, d = tower.p, tower.q, tower.a, f.degree
    D = d * (q - 1)
    N = nuclear_matrix(tower, f, u, n, K_tau, M)
    ring = N.ring
    P = semilinear_power(N)
    series = char_series(ring, P, s_deg)
    cs = c_sequence(p, a, u)
    floors = _floors(p, a, list(N.c), cs[n], K_tau, len(series) - 1)
    pts, exact = [], set()
    for k, r in enumerate(series):
        v = series_valuation(r)
        if v is not None and v < floors[k]:
            pts.append((k, Fraction(v, D)))
            exact.add(k)
        else:
            pts.append((k, Fraction(floors[k], D)))
    hull = lower_hull(pts)
    certified = []
    last = len(series) - 1
    for x, y in hull.vertices:
        if x == last or x not in exact:
            break
        certified.append((x, y))
    # HP bound at this truncation: v_tau(r_k) >= a (p-1) sum_{j<k} c_j (as tau-exponents)
    hp_ok = True
    for k, r in enumerate(series):
        bound = a * (p - 1) * sum(N.c[:k])
        v = series_valuation(r)
        if bound < K_tau and v is not None and v < bound:
            hp_ok = False
    b = cs.b_u
    return TadicRun(n, K_tau, M, series, floors, D, b, hull, certified, hp_ok, ring)


@dataclass
class StableTadic:
    polygon: Polygon  # polygon of C_f(omega^u, T, s) on its stable range
    runs: tuple[TadicRun, TadicRun]
    stable: bool


def default_truncation(tower: FieldTower, d: int, u: int, k_max: int) -> tuple[int, int, int]:
    """(s_deg, n, K_tau) for certifying vertices through s-degree k_max*d."""
    cs = c_sequence(tower.p, tower.a, u)
    b = cs.b_u
    s_deg = (k_max + 1) * d * b
    n = 2 * s_deg
    D = d * (tower.q - 1)
    top = b * y_u(tower.p, tower.a, d, u, (k_max + 1) * d)
    K = int(D * top) + D + 1
    return s_deg, n, K


def stable_tadic_polygon(tower: FieldTower, f, u: int, k_max: int = 2, M: int = 6,
                         n: int | None = None, K_tau: int | None = None) -> StableTadic:
    """Certified T-adic polygon of C_f through the vertex at k_max*d, checked by doubling."""
    s_deg, n0, K0 = default_truncation(tower, f.degree, u, k_max)
    n = n or n0
    K_tau = K_tau or K0
    r1 = tadic_run(tower, f, u, s_deg, n, K_tau, M)
    r2 = tadic_run(tower, f, u, s_deg, 2 * n, 2 * K_tau, M)
    common = []
    fine = dict(r2.certified)
    for x, y in r1.certified:
        if fine.get(x) != y:
            break
        common.append((x, y))
    stable = len(common) == len(r1.certified)
    if len(common) < 2:
        raise PrecisionExhausted("no stable vertices; increase n or K_tau")
    poly = _divide_multiplicities(Polygon(tuple(common)), r1.b)
    return StableTadic(poly, (r1, r2), stable)
