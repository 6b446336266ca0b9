"""Exact and truncated p-adic rings.

* :class:`UnramRing` -- Z_{p^n} / p^M, realised as (Z/p^M)[t]/(P~) with P~ the
  naive integer lift of a defining polynomial of F_{p^n}.
* :class:`PiRing` -- the totally ramified extension Z_q[pi]/(Phi_{p^m}(1+pi))
  truncated mod p^M, used only to read off valuations.
* :class:`CycInt` / :class:`CycRat` -- exact elements of
  Z[X]/(X^{q-1}-1) ⊗ Z[Y]/(Phi_{p^m}(Y)) with X standing for the Teichmüller
  lift of g and Y for chi(1).
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Sequence

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from .errors import ParamMismatch, PrecisionExhausted
from .fields import FFElem, FieldTower

__all__ = [
    "UnramRing",
    "UnramElem",
    "unram_ring",
    "teichmuller",
    "trace_to_zp",
    "trace_by_conjugates",
    "level_ring",
    "pi_ring",
    "frobenius",
    "PiRing",
    "PiElem",
    "pi_valuation",
    "CycInt",
    "CycRat",
    "cyc_arith",
    "specialize_to_pi",
    "specializes_to_zero",
    "vp_int",
    "cyclotomic_coeffs",
]


def vp_int(c: int, p: int) -> int | None:
    """p-adic valuation of a nonzero integer; None for 0."""
    if c == 0:
        return None
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, low degree first."""
    x = symbols("x")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(n, x), x).all_coeffs()))


# --- unramified rings ---------------------------------------------------------

class UnramRing:
    """(Z/p^M)[t]/(modulus) for a monic lift of an irreducible over F_p."""

    def __init__(self, p: int, M: int, modulus: Sequence[int]):
        if M < 1:
            raise ValueError("precision M must be >= 1")
        self.p = p
        self.M = M
        self.pM = p ** M
        self.modulus = tuple(int(c) % self.pM for c in modulus)
        self.n = len(modulus) - 1

    def __repr__(self) -> str:
        return f"UnramRing(p={self.p}, M={self.M}, n={self.n})"

    def _reduce(self, c: list[int]) -> tuple[int, ...]:
        n, m, pM = self.n, self.modulus, self.pM
        for k in range(len(c) - 1, n - 1, -1):
            top = c[k] % pM
            if top:
                base = k - n
                for i in range(n):
                    c[base + i] -= top * m[i]
            c[k] = 0
        out = [x % pM for x in c[:n]]
        out += [0] * (n - len(out))
        return tuple(out)

    def elem(self, coeffs: Sequence[int]) -> "UnramElem":
        return UnramElem(self, self._reduce([int(c) for c in coeffs]))

    def scalar(self, c: int) -> "UnramElem":
        return self.elem([c])

    @cached_property
    def zero(self) -> "UnramElem":
        return self.scalar(0)

    @cached_property
    def one(self) -> "UnramElem":
        return self.scalar(1)

    @cached_property
    def gen(self) -> "UnramElem":
        return self.elem([0, 1]) if self.n > 1 else self.scalar(-self.modulus[0])

    def mul(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        n = self.n
        out = [0] * (2 * n - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    out[i + j] += a * b
        return self._reduce(out)

    def mult_matrix(self, z: "UnramElem") -> np.ndarray:
        """Matrix (object dtype) of w -> z*w in the power basis; column j = z*t^j."""
        cols = []
        basis = self.one
        t = self.gen
        for _ in range(self.n):
            cols.append((z * basis).coeffs)
            basis = basis * t
        return np.array(cols, dtype=object).T

    @cached_property
    def trace_vector(self) -> tuple[int, ...]:
        """Tr(t^i) for i < n, as residues mod p^M."""
        out = []
        basis = self.one
        for _ in range(self.n):
            out.append(int(np.trace(self.mult_matrix(basis))) % self.pM)
            basis = basis * self.gen
        return tuple(out)

    def trace(self, z: "UnramElem") -> int:
        return sum(a * b for a, b in zip(z.coeffs, self.trace_vector)) % self.pM

    def reduce_mod_p(self, z: "UnramElem") -> tuple[int, ...]:
        return tuple(c % self.p for c in z.coeffs)

    def inv(self, z: "UnramElem") -> "UnramElem":
        from .fields import FieldLevel

        F = FieldLevel(self.p, [c % self.p for c in self.modulus])
        zbar = F.elem(self.reduce_mod_p(z))
        if zbar.is_zero():
            raise ZeroDivisionError("element is not a unit")
        w = self.elem(zbar.inverse().coeffs)
        two = self.scalar(2)
        prec = 1
        while prec < self.M:
            w = w * (two - z * w)
            prec *= 2
        return w

    @cached_property
    def frobenius_image(self) -> "UnramElem":
        """sigma(t): the root of the modulus congruent to t^p mod p (Hensel)."""
        if self.n == 1:
            return self.gen
        z = self.gen ** self.p
        dmod = [i * c for i, c in enumerate(self.modulus)][1:]
        prec = 1
        while prec < self.M:
            val, dval = self.zero, self.zero
            for c in reversed(self.modulus):
                val = val * z + c
            for c in reversed(dmod):
                dval = dval * z + c
            z = z - val * self.inv(dval)
            prec *= 2
        return z

    @cached_property
    def _frob_powers(self) -> list["UnramElem"]:
        s = self.frobenius_image
        out = [self.one]
        for _ in range(self.n - 1):
            out.append(out[-1] * s)
        return out

    def frobenius(self, z: "UnramElem") -> "UnramElem":
        acc = [0] * self.n
        for c, sp in zip(z.coeffs, self._frob_powers):
            if c:
                for i, s in enumerate(sp.coeffs):
                    acc[i] += c * s
        return self.elem(acc)

    @cached_property
    def frobenius_matrix(self) -> np.ndarray:
        """Integer matrix of sigma in the power basis (column j = sigma(t^j))."""
        return np.array([s.coeffs for s in self._frob_powers], dtype=np.int64).T

    def teichmuller_of_coeffs(self, coeffs: Sequence[int]) -> "UnramElem":
        z = self.elem(coeffs)
        if self.M == 1:
            return z
        N = self.p ** self.n
        for _ in range(self.M - 1):
            z = z ** N
        return z

    def with_precision(self, M: int) -> "UnramRing":
        return unram_ring(self.p, M, self.modulus)


@lru_cache(maxsize=None)
def _cached_ring(p: int, M: int, modulus: tuple[int, ...]) -> UnramRing:
    return UnramRing(p, M, modulus)


def unram_ring(p: int, M: int, modulus: Sequence[int]) -> UnramRing:
    return _cached_ring(p, M, tuple(int(c) % p for c in modulus))


class UnramElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: UnramRing, coeffs: tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _c(self, other) -> tuple[int, ...]:
        if isinstance(other, int):
            return self.ring.scalar(other).coeffs
        if other.ring is not self.ring:
            raise ParamMismatch("elements of different unramified rings")
        return other.coeffs

    def __add__(self, other):
        o = self._c(other)
        pM = self.ring.pM
        return UnramElem(self.ring, tuple((a + b) % pM for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __neg__(self):
        pM = self.ring.pM
        return UnramElem(self.ring, tuple((-a) % pM for a in self.coeffs))

    def __sub__(self, other):
        o = self._c(other)
        pM = self.ring.pM
        return UnramElem(self.ring, tuple((a - b) % pM for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return UnramElem(self.ring, self.ring.mul(self.coeffs, self._c(other)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.ring.inv(self) ** (-e)
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.scalar(other)
        return isinstance(other, UnramElem) and self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        vals = [vp_int(c, self.ring.p) for c in self.coeffs if c]
        return min(vals) if vals else None

    def __repr__(self) -> str:
        return f"UnramElem({list(self.coeffs)} mod {self.ring.p}^{self.ring.M})"


def level_ring(tower: FieldTower, l: int, M: int) -> UnramRing:
    return unram_ring(tower.p, M, tower.defining_poly(l))


def teichmuller(tower: FieldTower, x: FFElem, M: int) -> UnramElem:
    """Teichmüller lift of x to Z_{q^l} mod p^M (l = level of x)."""
    R = level_ring(tower, x.level, M)
    return R.teichmuller_of_coeffs(x.coeffs)


def trace_to_zp(z: UnramElem) -> int:
    return z.ring.trace(z)


def trace_by_conjugates(z: UnramElem) -> int:
    """Sum of the n Frobenius conjugates; must land in Z/p^M."""
    acc, w = z.ring.zero, z
    for _ in range(z.ring.n):
        acc = acc + w
        w = z.ring.frobenius(w)
    if any(acc.coeffs[1:]):
        raise AssertionError("conjugate sum is not in Z_p")
    return acc.coeffs[0]


def frobenius(z: UnramElem) -> UnramElem:
    return z.ring.frobenius(z)


# --- ramified ring --------------------------------------------------------------

def _binom_shift(coeffs: Sequence[int]) -> list[int]:
    """Coefficients of P(1 + pi) given those of P(Y)."""
    from math import comb

    out = [0] * len(coeffs)
    for k, c in enumerate(coeffs):
        if c:
            for i in range(k + 1):
                out[i] += c * comb(k, i)
    return out


class PiRing:
    """Z_q[pi]/(Phi_{p^m}(1+pi)) modulo p^M, with v_p(pi) = 1/e, e = (p-1)p^(m-1)."""

    def __init__(self, base: UnramRing, m: int):
        if m < 1:
            raise ValueError("conductor exponent m must be >= 1")
        self.base = base
        self.p = base.p
        self.m = m
        self.M = base.M
        self.e = (self.p - 1) * self.p ** (m - 1)
        self.minpoly = tuple(_binom_shift(cyclotomic_coeffs(self.p ** m)))
        assert self.minpoly[-1] == 1 and len(self.minpoly) == self.e + 1

    def __repr__(self) -> str:
        return f"PiRing(p={self.p}, m={self.m}, M={self.M}, a={self.base.n})"

    def elem(self, rows: Sequence[Sequence[int] | UnramElem]) -> "PiElem":
        a = self.base.n
        data = [[0] * a for _ in range(max(len(rows), 1))]
        for i, r in enumerate(rows):
            cs = r.coeffs if isinstance(r, UnramElem) else r
            for j, c in enumerate(cs):
                data[i][j] = int(c)
        return PiElem(self, self._reduce(data))

    def from_unram(self, z: UnramElem) -> "PiElem":
        return self.elem([z])

    @cached_property
    def one(self) -> "PiElem":
        return self.from_unram(self.base.one)

    @cached_property
    def pi(self) -> "PiElem":
        return self.elem([[0], [1]] if self.e > 1 else [[-self.minpoly[0]]])

    def _reduce(self, rows: list[list[int]]) -> tuple[tuple[int, ...], ...]:
        e, mp, a = self.e, self.minpoly, self.base.n
        rows = [list(r) for r in rows]
        for k in range(len(rows) - 1, e - 1, -1):
            top = rows[k]
            if any(top):
                base = k - e
                for i in range(e):
                    c = mp[i]
                    if c:
                        row = rows[base + i]
                        for j in range(a):
                            row[j] -= c * top[j]
        out = []
        for i in range(e):
            r = rows[i] if i < len(rows) else [0] * a
            out.append(self.base.elem(r).coeffs)
        return tuple(out)

    def mul(self, x, y):
        e = self.e
        B = self.base
        out = [[0] * B.n for _ in range(2 * e - 1)]
        for i, xi in enumerate(x):
            if any(xi):
                for j, yj in enumerate(y):
                    if any(yj):
                        prod = B.mul(xi, yj)
                        row = out[i + j]
                        for k, c in enumerate(prod):
                            row[k] += c
        return self._reduce(out)


class PiElem:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: PiRing, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def __add__(self, other):
        R = self.ring
        pM = R.base.pM
        return PiElem(R, tuple(tuple((a + b) % pM for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        pM = self.ring.base.pM
        return PiElem(self.ring, tuple(tuple((-a) % pM for a in r) for r in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UnramElem):
            other = self.ring.from_unram(other)
        return PiElem(self.ring, self.ring.mul(self.coeffs, other.coeffs))

    def __pow__(self, e: int):
        result, base = self.ring.one, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, PiElem) and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.coeffs)

    def __repr__(self) -> str:
        return f"PiElem({[list(r) for r in self.coeffs]})"


def pi_valuation(x: PiElem) -> Fraction:
    """v_p of x (so v_p(p) = 1), exact whenever x is nonzero mod p^M."""
    R = x.ring
    best = None
    for i, row in enumerate(x.coeffs):
        vals = [vp_int(c, R.p) for c in row if c]
        if vals:
            cand = i + R.e * min(vals)
            if best is None or cand < best:
                best = cand
    if best is None:
        raise PrecisionExhausted(f"element vanishes modulo p^{R.M}")
    return Fraction(best, R.e)


# --- cyclotomic integers ---------------------------------------------------------

@lru_cache(maxsize=None)
def _y_power_table(p: int, m: int) -> np.ndarray:
    """Row k is Y^k reduced mod Phi_{p^m}(Y), for 0 <= k < max(p^m, 2*phi)."""
    phi = (p - 1) * p ** (m - 1)
    cyc = cyclotomic_coeffs(p ** m)
    rows = []
    cur = [1] + [0] * (phi - 1)
    for _ in range(max(p ** m, 2 * phi)):
        rows.append(list(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * cyc[i] for i, c in enumerate(cur)]
    return np.array(rows, dtype=object)


class CycInt:
    """Element of Z[X]/(X^{q-1}-1) ⊗ Z[Y]/(Phi_{p^m}(Y)).

    ``data[i, j]`` is the coefficient of X^i Y^j, 0 <= i < q-1, 0 <= j < phi(p^m).
    """

    __slots__ = ("q", "p", "m", "data")

    def __init__(self, q: int, p: int, m: int, data=None):
        self.q, self.p, self.m = q, p, m
        shape = (q - 1, (p - 1) * p ** (m - 1))
        if data is None:
            data = np.zeros(shape, dtype=object)
        else:
            data = np.asarray(data, dtype=object)
            if data.shape != shape:
                raise ParamMismatch(f"expected shape {shape}, got {data.shape}")
        self.data = data

    @property
    def params(self) -> tuple[int, int, int]:
        return (self.q, self.p, self.m)

    @property
    def phi(self) -> int:
        return self.data.shape[1]

    @classmethod
    def zero(cls, q, p, m) -> "CycInt":
        return cls(q, p, m)

    @classmethod
    def one(cls, q, p, m) -> "CycInt":
        return cls.monomial(q, p, m, 0, 0)

    @classmethod
    def monomial(cls, q, p, m, i: int, j: int, coeff: int = 1) -> "CycInt":
        """coeff * X^i * Y^j with arbitrary integer exponents reduced by the relations."""
        out = cls(q, p, m)
        table = _y_power_table(p, m)
        out.data[i % (q - 1)] += coeff * table[j % p ** m]
        return out

    @classmethod
    def from_counts(cls, q, p, m, counts: np.ndarray) -> "CycInt":
        """counts[i, k] = coefficient of X^i Y^k with 0 <= k < p^m (unreduced in Y)."""
        table = _y_power_table(p, m)[: p ** m]
        data = np.asarray(counts, dtype=object).reshape(q - 1, p ** m).dot(table)
        return cls(q, p, m, data)

    def _check(self, other: "CycInt") -> None:
        if self.params != other.params:
            raise ParamMismatch(f"{self.params} vs {other.params}")

    def copy(self) -> "CycInt":
        return CycInt(self.q, self.p, self.m, self.data.copy())

    def __add__(self, other):
        self._check(other)
        return CycInt(self.q, self.p, self.m, self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        return CycInt(self.q, self.p, self.m, self.data - other.data)

    def __neg__(self):
        return CycInt(self.q, self.p, self.m, -self.data)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt(self.q, self.p, self.m, self.data * other)
        self._check(other)
        Q, phi = self.q - 1, self.phi
        full = np.zeros((Q, 2 * phi - 1), dtype=object)
        for i1 in range(Q):
            r1 = self.data[i1]
            if not r1.any():
                continue
            for i2 in range(Q):
                r2 = other.data[i2]
                if r2.any():
                    full[(i1 + i2) % Q] += np.convolve(r1, r2)
        table = _y_power_table(self.p, self.m)
        data = full[:, :phi] + full[:, phi:].dot(table[phi : 2 * phi - 1]) if phi > 1 else full[:, :phi]
        return CycInt(self.q, self.p, self.m, data)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = CycInt.one(*self.params)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, CycInt) and self.params == other.params and bool((self.data == other.data).all())

    def __hash__(self):
        return hash((self.params, tuple(self.data.ravel().tolist())))

    def is_zero(self) -> bool:
        return not self.data.any()

    def content(self) -> int:
        g = 0
        for c in self.data.ravel():
            g = gcd(g, int(c))
        return g

    def exact_div(self, k: int) -> "CycInt | None":
        """self / k if all coefficients are divisible by k, else None."""
        if any(int(c) % k for c in self.data.ravel()):
            return None
        return CycInt(self.q, self.p, self.m, np.array([[int(c) // k for c in row] for row in self.data], dtype=object))

    def to_json(self) -> dict:
        return {"q": self.q, "p": self.p, "m": self.m, "coeffs": [[str(int(c)) for c in row] for row in self.data]}

    @classmethod
    def from_json(cls, obj: dict) -> "CycInt":
        data = np.array([[int(c) for c in row] for row in obj["coeffs"]], dtype=object)
        return cls(obj["q"], obj["p"], obj["m"], data)

    def __repr__(self) -> str:
        terms = []
        for i in range(self.data.shape[0]):
            for j in range(self.data.shape[1]):
                c = int(self.data[i, j])
                if c:
                    terms.append(f"{c}*X^{i}*Y^{j}")
        return "CycInt(" + (" + ".join(terms) if terms else "0") + ")"


class CycRat:
    """A CycInt numerator over a positive integer denominator, in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num: CycInt, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if g > 1:
            num = num.exact_div(g)
            den //= g
        self.num, self.den = num, den

    @property
    def params(self):
        return self.num.params

    def __add__(self, other: "CycRat") -> "CycRat":
        return CycRat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "CycRat") -> "CycRat":
        return CycRat(self.num * other.den - other.num * self.den, self.den * other.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycRat(self.num * other, self.den)
        if isinstance(other, Fraction):
            return CycRat(self.num * other.numerator, self.den * other.denominator)
        return CycRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, k: int) -> "CycRat":
        return CycRat(self.num, self.den * k)

    def __eq__(self, other):
        return isinstance(other, CycRat) and self.den == other.den and self.num == other.num

    def is_integral(self) -> bool:
        return self.den == 1

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self) -> str:
        return f"CycRat({self.num!r} / {self.den})"


def cyc_arith(op: str, x, y):
    """Dispatch form: op in {add, mul, scalar}; works on CycInt and CycRat alike."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "scalar":
        return x * y
    raise ValueError(f"unknown operation {op!r}")


# --- specialisation ---------------------------------------------------------------

def specializes_to_zero(c: CycInt) -> bool:
    """Whether c vanishes under X -> primitive (q-1)-th root, Y -> primitive p^m-th root.

    Q(zeta_{q-1}) ⊗ Q(zeta_{p^m}) is a field, so this is decided exactly by
    reducing X modulo Phi_{q-1}.
    """
    Q = c.q - 1
    cyc = cyclotomic_coeffs(Q)
    deg = len(cyc) - 1
    rows = [row.copy() for row in c.data]
    for k in range(Q - 1, deg - 1, -1):
        top = rows[k]
        if top.any():
            for i in range(deg):
                if cyc[i]:
                    rows[k - deg + i] = rows[k - deg + i] - cyc[i] * top
    return not any(r.any() for r in rows[:deg])


class _Specializer:
    def __init__(self, tower: FieldTower, ring: PiRing, r: int):
        self.ring = ring
        base = ring.base
        wg = base.teichmuller_of_coeffs(tower.g.coeffs)
        self.xpow = [base.one]
        for _ in range(tower.q - 2):
            self.xpow.append(self.xpow[-1] * wg)
        y = (ring.one + ring.pi) ** r
        self.ypow = [ring.one]
        for _ in range(ring.e - 1):
            self.ypow.append(self.ypow[-1] * y)

    def __call__(self, c: CycInt) -> PiElem:
        R = self.ring
        base = R.base
        acc = R.elem([])
        for j in range(c.phi):
            col = c.data[:, j]
            if not col.any():
                continue
            s = [0] * base.n
            for i, coef in enumerate(col):
                coef = int(coef) % base.pM
                if coef:
                    for k, v in enumerate(self.xpow[i].coeffs):
                        s[k] += coef * v
            acc = acc + self.ypow[j] * base.elem(s)
        return acc


_SPECIALIZERS: dict = {}


def specialize_to_pi(c: CycInt, tower: FieldTower, ring: PiRing, r: int) -> PiElem:
    """Ring map X -> teichmuller(g), Y -> (1+pi)^r into ``ring``."""
    if c.p != ring.p or c.m != ring.m or c.q != tower.q or ring.base.n != tower.a:
        raise ParamMismatch("CycInt, tower and PiRing parameters disagree")
    if gcd(r, ring.p) != 1 or not 1 <= r < ring.p ** ring.m:
        raise ParamMismatch(f"r={r} must be a unit residue mod p^m")
    key = (tower.p, tower.a, ring.m, ring.M, r)
    sp = _SPECIALIZERS.get(key)
    if sp is None:
        sp = _SPECIALIZERS[key] = _Specializer(tower, ring, r)
    return sp(c)


def pi_ring(tower: FieldTower, m: int, M: int) -> PiRing:
    return _pi_ring(tower.p, tower.defining_poly(1), m, M)


@lru_cache(maxsize=None)
def _pi_ring(p: int, modulus: tuple[int, ...], m: int, M: int) -> PiRing:
    return PiRing(unram_ring(p, M, modulus), m)
