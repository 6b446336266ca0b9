"""Exact Newton-polygon calculus with integer abscissae and rational ordinates.

Besides hulls, slope multisets, direct sums and comparisons, this module
builds the combinatorial polygons attached to (p, a, d, u): the Hodge
polygon from the exponent sequence c_{u,n}, and the polygon UP through the
points (kd, y_u(kd)).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import EmptyInput, LengthMismatch, OutOfDomain

__all__ = [
    "Polygon",
    "SlopeMultiset",
    "CSeq",
    "lower_hull",
    "slopes",
    "from_slopes",
    "oplus",
    "uplus",
    "height",
    "shift",
    "geq",
    "scale_y",
    "digits",
    "y_u",
    "b_u",
    "c_sequence",
    "hodge_polygon",
    "up_polygon",
    "max_vertical_gap",
    "fmt_q",
    "parse_q",
]

INF = None  # marker for +infinity ordinates (zero coefficients)


def fmt_q(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_q(s: str) -> Fraction:
    return Fraction(s)


class SlopeMultiset:
    """Finite multiset of rationals, kept sorted."""

    __slots__ = ("_items",)

    def __init__(self, items: Iterable = ()):
        self._items = tuple(sorted(Fraction(x) for x in items))

    @property
    def items(self) -> tuple[Fraction, ...]:
        return self._items

    def counts(self) -> Counter:
        return Counter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __eq__(self, other) -> bool:
        if isinstance(other, SlopeMultiset):
            return self._items == other._items
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def __or__(self, other: "SlopeMultiset") -> "SlopeMultiset":
        return SlopeMultiset(self._items + other._items)

    def map(self, fn) -> "SlopeMultiset":
        return SlopeMultiset(fn(x) for x in self._items)

    def to_json(self) -> list[str]:
        return [fmt_q(x) for x in self._items]

    def __repr__(self) -> str:
        return "SlopeMultiset([" + ", ".join(str(x) for x in self._items) + "])"


def uplus(s1: SlopeMultiset, s2: SlopeMultiset) -> SlopeMultiset:
    return s1 | s2


@dataclass(frozen=True)
class Polygon:
    """A lower convex polygon in canonical vertex form."""

    vertices: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        vs = self.vertices
        for (x0, _), (x1, _) in zip(vs, vs[1:]):
            if x1 <= x0:
                raise ValueError("abscissae must increase strictly")
        sl = self.segment_slopes()
        for s0, s1 in zip(sl, sl[1:]):
            if not s0 < s1:
                raise ValueError("slopes must increase strictly (canonical form)")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, object]]) -> "Polygon":
        return cls(tuple((int(x), Fraction(y)) for x, y in pairs))

    @property
    def start(self) -> int:
        return self.vertices[0][0] if self.vertices else 0

    @property
    def end(self) -> int:
        return self.vertices[-1][0] if self.vertices else 0

    @property
    def length(self) -> int:
        return self.end - self.start

    def segment_slopes(self) -> list[Fraction]:
        vs = self.vertices
        return [(y1 - y0) / (x1 - x0) for (x0, y0), (x1, y1) in zip(vs, vs[1:])]

    def segments(self) -> list[tuple[int, int, Fraction]]:
        """(x_start, x_end, slope) for each edge."""
        vs = self.vertices
        return [(x0, x1, (y1 - y0) / (x1 - x0)) for (x0, y0), (x1, y1) in zip(vs, vs[1:])]

    def __call__(self, x: int) -> Fraction:
        return height(self, x)

    def vertex_xs(self) -> list[int]:
        return [x for x, _ in self.vertices]

    def has_vertex(self, x: int, y=None) -> bool:
        for vx, vy in self.vertices:
            if vx == x:
                return y is None or vy == Fraction(y)
        return False

    def passes_through(self, x: int, y) -> bool:
        try:
            return height(self, x) == Fraction(y)
        except OutOfDomain:
            return False

    def truncate(self, x_end: int) -> "Polygon":
        """Restriction to [start, x_end]."""
        if x_end >= self.end:
            return self
        pts = [(x, y) for x, y in self.vertices if x < x_end]
        pts.append((x_end, height(self, x_end)))
        return lower_hull(pts)

    def to_json(self) -> list[list]:
        return [[x, fmt_q(y)] for x, y in self.vertices]

    @classmethod
    def from_json(cls, obj) -> "Polygon":
        return cls.from_pairs((x, Fraction(y)) for x, y in obj)

    def to_csv(self) -> str:
        lines = ["x,y_num,y_den"]
        for x, y in self.vertices:
            lines.append(f"{x},{y.numerator},{y.denominator}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return "Polygon([" + ", ".join(f"({x}, {y})" for x, y in self.vertices) + "])"


EMPTY = Polygon(((0, Fraction(0)),))


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Iterable[tuple[int, object]]) -> Polygon:
    """Lower convex hull; points with ordinate None (= +infinity) are skipped."""
    pts = []
    seen = set()
    for x, y in points:
        if x in seen:
            raise ValueError(f"duplicate abscissa {x}")
        seen.add(x)
        if y is INF:
            continue
        pts.append((int(x), Fraction(y)))
    if not pts:
        raise EmptyInput("no finite points")
    pts.sort()
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        # pop while the turn is not strictly counter-clockwise (drops collinear points)
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return Polygon(tuple(hull))


def slopes(P: Polygon) -> SlopeMultiset:
    out = []
    for x0, x1, s in P.segments():
        out.extend([s] * (x1 - x0))
    return SlopeMultiset(out)


def from_slopes(S: SlopeMultiset | Iterable) -> Polygon:
    """The polygon anchored at (0, 0) whose slope multiset is S."""
    if not isinstance(S, SlopeMultiset):
        S = SlopeMultiset(S)
    verts = [(0, Fraction(0))]
    x, y = 0, Fraction(0)
    for s, mult in sorted(S.counts().items()):
        x += mult
        y += s * mult
        verts.append((x, y))
    return Polygon(tuple(verts))


def oplus(P1: Polygon, P2: Polygon) -> Polygon:
    return from_slopes(uplus(slopes(P1), slopes(P2)))


def height(P: Polygon, x: int) -> Fraction:
    vs = P.vertices
    if not vs or x < vs[0][0] or x > vs[-1][0]:
        raise OutOfDomain(f"x={x} outside [{P.start}, {P.end}]")
    for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
        if x0 <= x <= x1:
            return y0 + (y1 - y0) * Fraction(x - x0, x1 - x0)
    return vs[0][1]


def shift(P: Polygon, t) -> Polygon:
    t = Fraction(t)
    return Polygon(tuple((x, y + t) for x, y in P.vertices))


def scale_y(P: Polygon, c) -> Polygon:
    c = Fraction(c)
    if c <= 0:
        raise ValueError("scale factor must be positive")
    return Polygon(tuple((x, y * c) for x, y in P.vertices))


def geq(P1: Polygon, P2: Polygon) -> bool:
    """P1 >= P2 pointwise at every integer abscissa."""
    if P1.start != P2.start or P1.end != P2.end:
        raise LengthMismatch(f"lengths {P1.length} and {P2.length}")
    return all(height(P1, x) >= height(P2, x) for x in range(P1.start, P1.end + 1))


def first_violation(P1: Polygon, P2: Polygon):
    """Smallest integer x with P1(x) < P2(x), or None (used for report witnesses)."""
    if P1.start != P2.start or P1.end != P2.end:
        raise LengthMismatch(f"lengths {P1.length} and {P2.length}")
    for x in range(P1.start, P1.end + 1):
        if height(P1, x) < height(P2, x):
            return x
    return None


# --- combinatorial polygons -------------------------------------------------------

def digits(u: int, p: int, a: int) -> list[int]:
    """Base-p digits u(0), ..., u(a-1)."""
    out = []
    for _ in range(a):
        out.append(u % p)
        u //= p
    return out


def y_u(p: int, a: int, d: int, u: int, k: int) -> Fraction:
    s = sum(digits(u, p, a))
    return Fraction(a * k * (k - 1) * (p - 1), 2 * d) + Fraction(k * s, d)


def b_u(p: int, a: int, u: int) -> int:
    """Order of multiplication by p on the residue u mod q-1."""
    Q = p ** a - 1
    b, v = 1, (u * p) % Q
    while v != u % Q:
        v = (v * p) % Q
        b += 1
    return b


@dataclass(frozen=True)
class CSeq:
    p: int
    a: int
    u: int
    b_u: int
    u_i: tuple[int, ...]  # (u p^i) % (q-1), in order of i
    sorted_u: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        q1 = self.p ** self.a - 1
        return q1 * (n // self.b_u) + self.sorted_u[n % self.b_u]

    def take(self, count: int) -> list[int]:
        return [self[n] for n in range(count)]


@lru_cache(maxsize=None)
def c_sequence(p: int, a: int, u: int, count: int = 0) -> CSeq:
    """Merged exponent sequence c_{u,n}; index it directly, ``count`` is informational."""
    Q = p ** a - 1
    if not 0 <= u <= Q - 1:
        raise ValueError(f"u={u} outside 0..q-2")
    b = b_u(p, a, u)
    ui = tuple((u * p ** i) % Q for i in range(b))
    return CSeq(p, a, u, b, ui, tuple(sorted(ui)))


def hodge_polygon(p: int, a: int, d: int, u: int, k_max: int) -> Polygon:
    """Hull of (k, a(p-1)/(d b_u (q-1)) * sum_{j < k b_u} c_{u,j}) for 0 <= k <= k_max."""
    if d % p == 0:
        raise ValueError("d must be prime to p")
    cs = c_sequence(p, a, u)
    q1 = p ** a - 1
    scale = Fraction(a * (p - 1), d * cs.b_u * q1)
    pts, acc = [(0, Fraction(0))], 0
    for k in range(1, k_max + 1):
        for j in range((k - 1) * cs.b_u, k * cs.b_u):
            acc += cs[j]
        pts.append((k, scale * acc))
    return lower_hull(pts)


def up_polygon(p: int, a: int, d: int, u: int, k_max: int) -> Polygon:
    """Hull of the points (kd, y_u(kd)) with kd <= k_max."""
    if d % p == 0:
        raise ValueError("d must be prime to p")
    if k_max % d:
        raise ValueError("k_max must be a multiple of d")
    return lower_hull((k * d, y_u(p, a, d, u, k * d)) for k in range(k_max // d + 1))


def max_vertical_gap(upper: Polygon, lower: Polygon) -> Fraction:
    if upper.start != lower.start or upper.end != lower.end:
        raise LengthMismatch(f"lengths {upper.length} and {lower.length}")
    return max(height(upper, x) - height(lower, x) for x in range(upper.start, upper.end + 1))
