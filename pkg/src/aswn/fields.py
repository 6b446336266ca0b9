"""Finite fields F_p ⊂ F_q ⊂ F_{q^l} with deterministic defining data.

Every level l is built directly over F_p as F_p[t]/(P_l) with deg P_l = a*l,
where P_l is the lexicographically smallest monic irreducible polynomial
(coefficients compared from the constant term upwards).  The copy of F_q
inside level l is pinned down by ``embed[l]``, the image of the fixed
generator ``g`` of F_q^x.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from sympy import factorint, isprime

from .errors import LevelMismatch, NotInSubfield, NotPrime, ZeroArgument

__all__ = [
    "FieldLevel",
    "FFElem",
    "FieldTower",
    "build_tower",
    "is_irreducible",
    "prime_divisors",
]


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n))


# --- dense polynomials over F_p, low degree first -------------------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm:
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(c * inv) % p for c in a]
    return a


def _ppowmod(base: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, b, p), m, p)
        e >>= 1
        if e:
            b = _pmod(_pmul(b, b, p), m, p)
    return result


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p (coefficients low to high)."""
    n = len(poly) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    t = [0, 1]
    # t^(p^k) mod poly for all k <= n, by repeated p-th powers
    frob = [t]
    for _ in range(n):
        frob.append(_ppowmod(frob[-1], p, poly, p))
    if _psub(frob[n], t, p):
        return False
    for r in prime_divisors(n):
        if len(_pgcd(poly, _psub(frob[n // r], t, p), p)) != 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over F_p."""
    for low in itertools.product(range(p), repeat=n):
        if n > 1 and low[0] == 0:
            continue
        poly = list(low) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("irreducible polynomials exist in every degree")


# --- field levels ----------------------------------------------------------

class FieldLevel:
    """The field F_p[t]/(modulus) of degree n over F_p."""

    def __init__(self, p: int, modulus: Sequence[int], level: int = 1):
        self.p = p
        self.modulus = tuple(modulus)
        self.n = len(modulus) - 1
        self.level = level
        self.order = p ** self.n

    def __repr__(self) -> str:
        return f"FieldLevel(p={self.p}, n={self.n}, level={self.level})"

    def elem(self, coeffs: Sequence[int]) -> "FFElem":
        c = [x % self.p for x in coeffs]
        if len(c) > self.n:
            c = _pmod(c, self.modulus, self.p)
        c = list(c) + [0] * (self.n - len(c))
        return FFElem(self, tuple(c))

    def scalar(self, c: int) -> "FFElem":
        return self.elem([c])

    @cached_property
    def zero(self) -> "FFElem":
        return self.elem([])

    @cached_property
    def one(self) -> "FFElem":
        return self.elem([1])

    @cached_property
    def gen(self) -> "FFElem":
        """The class of t."""
        return self.elem([0, 1])

    def mul(self, x: "FFElem", y: "FFElem") -> "FFElem":
        return self.elem(_pmod(_pmul(x.coeffs, y.coeffs, self.p), self.modulus, self.p))

    def pow(self, x: "FFElem", e: int) -> "FFElem":
        if e < 0:
            return self.pow(self.inv(x), -e)
        return self.elem(_ppowmod(x.coeffs, e, self.modulus, self.p))

    def inv(self, x: "FFElem") -> "FFElem":
        if x.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.pow(x, self.order - 2)

    def units(self) -> Iterator["FFElem"]:
        """All nonzero elements, lexicographic in the coefficient vector."""
        for c in itertools.product(range(self.p), repeat=self.n):
            if any(c):
                yield FFElem(self, c)

    def element_order(self, x: "FFElem") -> int:
        n = self.order - 1
        order = n
        for r, k in factorint(n).items():
            for _ in range(k):
                if (x ** (order // r)).is_one():
                    order //= r
                else:
                    break
        return order

    @cached_property
    def primitive_element(self) -> "FFElem":
        """Lexicographically smallest generator of the unit group."""
        n = self.order - 1
        rs = prime_divisors(n) if n > 1 else []
        for x in self.units():
            if all(not (x ** (n // r)).is_one() for r in rs):
                return x
        raise AssertionError("unit group is cyclic")


@dataclass(frozen=True)
class FFElem:
    field: FieldLevel = field(compare=False, repr=False)
    coeffs: tuple[int, ...]

    @property
    def level(self) -> int:
        return self.field.level

    def _check(self, other: "FFElem") -> None:
        if other.field is not self.field:
            raise LevelMismatch(f"level {self.level} vs level {other.level}")

    def _coerce(self, other) -> "FFElem":
        if isinstance(other, int):
            return self.field.scalar(other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return FFElem(self.field, tuple((a + b) % self.field.p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.field, tuple((-a) % self.field.p for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self.field.mul(self, self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self.field.pow(self, e)

    def inverse(self) -> "FFElem":
        return self.field.inv(self)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def __repr__(self) -> str:
        return f"FFElem(level={self.level}, {list(self.coeffs)})"


def arith(op: str, x: FFElem, y=None) -> FFElem:
    """Dispatch form of the field operations: op in {add, mul, pow, inv}."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "pow":
        return x ** y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown operation {op!r}")


# --- the tower ---------------------------------------------------------------

class FieldTower:
    """F_p ⊂ F_q ⊂ F_{q^l} for 1 <= l <= l_max.

    Levels other than 1 are built lazily, so ``l_max`` only bounds what may be
    requested.
    """

    def __init__(self, p: int, a: int, l_max: int):
        if p < 2 or not isprime(p):
            raise NotPrime(f"{p} is not prime")
        if a < 1 or l_max < 1:
            raise ValueError("a and l_max must be positive")
        self.p = p
        self.a = a
        self.q = p ** a
        self.l_max = l_max
        self._levels: dict[int, FieldLevel] = {}
        self._embed: dict[int, FFElem] = {}
        self._embed_logs: dict[int, dict[tuple[int, ...], int]] = {}
        base = self.level(1)
        self.g = base.primitive_element
        self._dlog = {}
        x = base.one
        for k in range(self.q - 1):
            self._dlog[x.coeffs] = k
            x = x * self.g
        self._embed[1] = self.g

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, a={self.a}, l_max={self.l_max})"

    def ensure_level(self, l: int) -> "FieldTower":
        """Allow levels up to ``l`` from now on."""
        if l > self.l_max:
            self.l_max = l
        return self

    def _check_level(self, l: int) -> None:
        if not 1 <= l <= self.l_max:
            raise LevelMismatch(f"level {l} outside 1..{self.l_max}")

    def level(self, l: int) -> FieldLevel:
        self._check_level(l)
        if l not in self._levels:
            self._levels[l] = FieldLevel(self.p, smallest_irreducible(self.p, self.a * l), l)
        return self._levels[l]

    def defining_poly(self, l: int) -> tuple[int, ...]:
        return self.level(l).modulus

    @cached_property
    def g_minpoly(self) -> list[int]:
        """Minimal polynomial of g over F_p (low degree first)."""
        base = self.level(1)
        conj = [self.g]
        while True:
            nxt = conj[-1] ** self.p
            if nxt == self.g:
                break
            conj.append(nxt)
        poly = [base.one]
        for c in conj:
            new = [base.zero] * (len(poly) + 1)
            for i, coef in enumerate(poly):
                new[i + 1] = new[i + 1] + coef
                new[i] = new[i] - coef * c
            poly = new
        out = []
        for coef in poly:
            if any(coef.coeffs[1:]):
                raise AssertionError("minimal polynomial left F_p")
            out.append(coef.coeffs[0])
        return out

    def embed(self, l: int) -> FFElem:
        """Image of g in level l.

        Among the elements of order q-1 that are roots of the minimal
        polynomial of g, the lexicographically smallest is chosen.
        """
        if l in self._embed:
            return self._embed[l]
        F = self.level(l)
        n = F.order - 1
        h = F.primitive_element ** (n // (self.q - 1))
        mp = self.g_minpoly
        best = None
        x = F.one
        for _ in range(self.q - 1):
            val = F.zero
            for coef in reversed(mp):
                val = val * x + coef
            if val.is_zero() and (best is None or x.coeffs < best.coeffs):
                best = x
            x = x * h
        assert best is not None
        self._embed[l] = best
        return best

    def _embed_log(self, l: int) -> dict[tuple[int, ...], int]:
        if l not in self._embed_logs:
            e = self.embed(l)
            table = {}
            x = e.field.one
            for k in range(self.q - 1):
                table[x.coeffs] = k
                x = x * e
            self._embed_logs[l] = table
        return self._embed_logs[l]

    def to_level(self, y: FFElem, l: int) -> FFElem:
        """Map an element of F_q (level 1) into level l."""
        if y.level != 1:
            raise LevelMismatch("to_level expects a level-1 element")
        F = self.level(l)
        if y.is_zero():
            return F.zero
        return self.embed(l) ** self.dlog(y)

    def from_level(self, z: FFElem) -> FFElem:
        """Inverse of :meth:`to_level` on the embedded copy of F_q."""
        if z.is_zero():
            return self.level(1).zero
        k = self._embed_log(z.level).get(z.coeffs)
        if k is None:
            raise NotInSubfield(f"{z} does not lie in the embedded F_q")
        return self.g ** k

    def dlog(self, y: FFElem) -> int:
        """Discrete logarithm to base g of a nonzero level-1 element."""
        if y.level != 1:
            raise LevelMismatch("dlog expects a level-1 element")
        if y.is_zero():
            raise ZeroArgument("dlog(0)")
        return self._dlog[y.coeffs]

    def norm_to_base(self, x: FFElem) -> FFElem:
        F = x.field
        if x.is_zero():
            raise ZeroArgument("norm of zero")
        return self.from_level(x ** ((F.order - 1) // (self.q - 1)))

    def enumerate_units(self, l: int) -> Iterator[FFElem]:
        return self.level(l).units()

    def element(self, coeffs: Sequence[int], l: int = 1) -> FFElem:
        return self.level(l).elem(coeffs)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "a": self.a,
            "l_max": self.l_max,
            "defining_polys": {str(l): list(F.modulus) for l, F in sorted(self._levels.items())},
            "g": list(self.g.coeffs),
        }


_TOWERS: dict[tuple[int, int], FieldTower] = {}


def build_tower(p: int, a: int, l_max: int) -> FieldTower:
    """Return the (cached) tower for (p, a), valid up to level ``l_max``."""
    tower = _TOWERS.get((p, a))
    if tower is None:
        tower = FieldTower(p, a, l_max)
        _TOWERS[(p, a)] = tower
    elif tower.l_max < l_max:
        tower.l_max = l_max
    return tower
