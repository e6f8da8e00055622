"""Monomial ideals in d variables, stored as antichains of exponent vectors.

The canonical representation is the set of minimal generators, sorted in
descending lexicographic order (so x^2, x*y, y^2 prints in the usual
order).  Every operation re-minimalizes its output, which makes equality
structural and containment a generator scan.  The zero ideal is not
representable: all families handled here consist of non-zero ideals.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimal_antichain(points) -> list:
    """Extract the componentwise-minimal elements of a finite point set.

    Fast sweeps for d <= 3 (n log n), graded scan for higher dimension.
    """
    pts = sorted(set(map(tuple, points)))
    if not pts:
        return []
    d = len(pts[0])
    if d == 1:
        return [pts[0]]
    if d == 2:
        out = []
        best = None
        for x, y in pts:
            if best is None or y < best:
                out.append((x, y))
                best = y
        return out
    if d == 3:
        # sweep x ascending; keep a (y, z) Pareto frontier with z strictly
        # decreasing as y increases
        out = []
        fy: list = []
        fz: list = []
        for x, y, z in pts:
            i = bisect_right(fy, y) - 1
            if i >= 0 and fz[i] <= z:
                continue
            out.append((x, y, z))
            j = bisect_left(fy, y)
            k = j
            while k < len(fy) and fz[k] >= z:
                k += 1
            fy[j:k] = [y]
            fz[j:k] = [z]
        return out
    pts.sort(key=sum)
    out = []
    for p in pts:
        if not any(_leq(q, p) for q in out):
            out.append(p)
    return sorted(out)


def minimal_elements(box, pred) -> list:
    """Minimal points of a monotone upward-closed predicate inside a box.

    ``pred`` maps an exponent tuple to bool and must be monotone (if
    pred(a) and a <= b then pred(b)).  The caller guarantees that every
    minimal element of the predicate, per slice and globally, has i-th
    coordinate at most box[i].  The search fixes coordinates left to right
    and bisects the last one, pruning slices dominated by the previous
    slice's minimal elements.
    """
    d = len(box)
    if d == 1:
        if not pred((box[0],)):
            return []
        lo, hi = 0, box[0]
        while lo < hi:
            mid = (lo + hi) // 2
            if pred((mid,)):
                hi = mid
            else:
                lo = mid + 1
        return [(lo,)]
    out = []
    prev = None
    for a in range(box[0] + 1):
        cur = minimal_elements(box[1:], lambda rest, _a=a: pred((_a,) + rest))
        for b in cur:
            if prev is None or not any(_leq(p, b) for p in prev):
                out.append((a,) + b)
        prev = cur
        if len(cur) == 1 and not any(cur[0]):
            break  # slice bottomed out at the origin; later slices add nothing
    return out


def _prime_power_base(q: int):
    """Return p for q = p^e (e >= 1), None for q = 1, else raise."""
    if not isinstance(q, int) or q < 1:
        raise ValueError(f"exponent scale must be a positive integer, got {q!r}")
    if q == 1:
        return None
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            if n != 1:
                raise ValueError(f"{q} is not a prime power")
            return p
        p += 1
    return n  # q itself prime


@dataclass(frozen=True)
class MonomialIdeal:
    """A non-zero monomial ideal given by its minimal generators."""

    dim: int
    gens: tuple

    def __post_init__(self):
        pts = [tuple(int(x) for x in g) for g in self.gens]
        if not pts:
            raise ValueError("the zero ideal is not representable")
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        for g in pts:
            if len(g) != self.dim:
                raise ValueError(f"generator {g} has wrong length (dim={self.dim})")
            if any(x < 0 for x in g):
                raise ValueError(f"negative exponent in generator {g}")
        pts = minimal_antichain(pts)
        object.__setattr__(self, "gens", tuple(sorted(pts, reverse=True)))

    # -- constructors --------------------------------------------------------

    @classmethod
    def unit(cls, dim: int) -> "MonomialIdeal":
        return cls(dim, ((0,) * dim,))

    @property
    def is_unit(self) -> bool:
        return self.gens == ((0,) * self.dim,)

    # -- basic predicates ------------------------------------------------

    def _check_dim(self, other: "MonomialIdeal") -> None:
        if not isinstance(other, MonomialIdeal):
            raise TypeError(f"expected MonomialIdeal, got {type(other).__name__}")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def member(self, point) -> bool:
        """Is x^point in the ideal, i.e. does some generator divide it?"""
        point = tuple(point)
        if len(point) != self.dim:
            raise ValueError(f"point {point} has wrong length (dim={self.dim})")
        return any(_leq(g, point) for g in self.gens)

    def contains(self, other: "MonomialIdeal") -> bool:
        self._check_dim(other)
        return all(self.member(g) for g in other.gens)

    # -- lattice operations ------------------------------------------------

    def sum(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_dim(other)
        return MonomialIdeal(self.dim, self.gens + other.gens)

    def product(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_dim(other)
        pts = {
            tuple(x + y for x, y in zip(f, g))
            for f in self.gens
            for g in other.gens
        }
        return MonomialIdeal(self.dim, tuple(pts))

    def power(self, n: int) -> "MonomialIdeal":
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"power wants a positive integer, got {n!r}")
        out = self
        for _ in range(n - 1):
            out = out.product(self)
        return out

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check_dim(other)
        pts = {
            tuple(max(x, y) for x, y in zip(f, g))
            for f in self.gens
            for g in other.gens
        }
        return MonomialIdeal(self.dim, tuple(pts))

    def colon(self, other: "MonomialIdeal") -> "MonomialIdeal":
        """(self : other), intersecting the per-generator quotients."""
        self._check_dim(other)
        out = None
        for g in other.gens:
            pts = {
                tuple(max(x - y, 0) for x, y in zip(f, g)) for f in self.gens
            }
            step = MonomialIdeal(self.dim, tuple(pts))
            out = step if out is None else out.intersect(step)
        return out

    def __mul__(self, other):
        return self.product(other)

    def __pow__(self, n):
        return self.power(n)

    def __add__(self, other):
        return self.sum(other)

    # -- closure and Frobenius ------------------------------------------------

    def integral_closure(self) -> "MonomialIdeal":
        """All lattice points of the Newton polyhedron, minimalized.

        Membership is decided by the exact LP of the test-ideal machinery;
        minimal generators of the closure lie in the box of generator
        maxima, so the search stays there.
        """
        from .testideal import newton_member  # deferred: testideal imports us

        box = tuple(max(g[i] for g in self.gens) for i in range(self.dim))

        def pred(b):
            return newton_member(self.gens, tuple(Fraction(x) for x in b), "closure")

        pts = minimal_elements(box, pred)
        return MonomialIdeal(self.dim, tuple(pts))

    def frobenius_power(self, q: int) -> "MonomialIdeal":
        """Bracket power: scale every generator exponent by q = p^e."""
        _prime_power_base(q)
        if q == 1:
            return self
        return MonomialIdeal(self.dim, tuple(tuple(x * q for x in g) for g in self.gens))

    def frobenius_root(self, q: int) -> "MonomialIdeal":
        """Smallest J with self contained in the q-th bracket power of J.

        For monomial ideals this is the componentwise floor of the
        generators by q, re-minimalized.
        """
        _prime_power_base(q)
        if q == 1:
            return self
        pts = {tuple(x // q for x in g) for g in self.gens}
        return MonomialIdeal(self.dim, tuple(pts))

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"dim": self.dim, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, obj: dict) -> "MonomialIdeal":
        if not isinstance(obj, dict) or "dim" not in obj or "gens" not in obj:
            raise ValueError("ideal JSON must have 'dim' and 'gens' fields")
        return cls(int(obj["dim"]), tuple(tuple(g) for g in obj["gens"]))

    def render(self, variables=None) -> str:
        """Human-readable generator list, e.g. ``x^2, x*y, y^2``."""
        if variables is None:
            variables = ["x", "y", "z"][: self.dim] if self.dim <= 3 else [
                f"x{i + 1}" for i in range(self.dim)
            ]
        terms = []
        for g in self.gens:
            parts = []
            for name, e in zip(variables, g):
                if e == 1:
                    parts.append(name)
                elif e > 1:
                    parts.append(f"{name}^{e}")
            terms.append("*".join(parts) if parts else "1")
        return ", ".join(terms)


def minimalize(points, dim: int | None = None) -> MonomialIdeal:
    """Build the ideal generated by ``points`` (minimal antichain kept)."""
    pts = [tuple(p) for p in points]
    if not pts:
        raise ValueError("cannot build an ideal from an empty generator set")
    if dim is None:
        dim = len(pts[0])
    return MonomialIdeal(dim, tuple(pts))
