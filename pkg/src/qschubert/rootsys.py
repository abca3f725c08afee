"""
Finite-type root systems with Bourbaki numbering.

Conventions
-----------
* ``form[i][j] = <alpha_i, alpha_j> = d_i c_ij`` is the symmetrized Cartan
  matrix, with the symmetrizers ``d_i`` coprime (short roots have
  ``<alpha, alpha> = 2`` except in type C where long roots have 4, etc.).
* ``cartan[i][j] = c_ij = <alpha_j, alpha_i^vee>``, so that
  ``alpha_j = sum_i c_ij omega_i`` and ``<omega_i, alpha_j> = delta_ij d_j``.
* Root vectors carry integer coordinates in the simple-root basis; weight
  vectors carry rational coordinates in the fundamental-weight basis.
* G2 follows Bourbaki: alpha_1 short, alpha_2 long, so ``d = (1, 3)``.
* D3 is rejected (use A3).

Indices are 0-based internally; user-facing labels are ``i + 1``.
"""

from __future__ import annotations

__all__ = [
    "LieType", "RootSystem", "RootVec", "WeightVec",
    "parse_lie_type", "build_root_system",
]

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

from .intlin import solve_rational

_SERIES_OK = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}


@dataclass(frozen=True, order=True)
class LieType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in _SERIES_OK:
            raise ValueError(f"unknown series {self.series!r}")
        if not isinstance(self.rank, int) or not _SERIES_OK[self.series](self.rank):
            hint = " (use A3 instead of D3)" if (self.series, self.rank) == ("D", 3) else ""
            raise ValueError(f"invalid rank {self.rank} for type {self.series}{hint}")

    def __str__(self):
        return f"{self.series}{self.rank}"


def parse_lie_type(text: str) -> LieType:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
    if not m:
        raise ValueError(f"cannot parse Lie type {text!r}; expected e.g. 'A2', 'B3', 'F4'")
    return LieType(m.group(1).upper(), int(m.group(2)))


def _edges(t: LieType) -> list[tuple[int, int]]:
    r = t.rank
    if t.series in "ABCFG":
        return [(i, i + 1) for i in range(r - 1)]
    if t.series == "D":
        return [(i, i + 1) for i in range(r - 2)] + [(r - 3, r - 1)]
    # E: 1-3-4-5-6-7-8 with 2 attached to 4 (1-based)
    chain = [0, 2, 3, 4, 5, 6, 7][: r - 1]
    return list(zip(chain, chain[1:])) + [(1, 3)]


def _square_lengths(t: LieType) -> list[int]:
    """<alpha_i, alpha_i> / 2, i.e. the symmetrizers before normalization."""
    r = t.rank
    if t.series == "B":
        return [2] * (r - 1) + [1]
    if t.series == "C":
        return [1] * (r - 1) + [2]
    if t.series == "F":
        return [2, 2, 1, 1]
    if t.series == "G":
        return [1, 3]
    return [1] * r


def _form_matrix(t: LieType) -> tuple[list[int], list[list[int]]]:
    d = _square_lengths(t)
    r = t.rank
    b = [[0] * r for _ in range(r)]
    for i in range(r):
        b[i][i] = 2 * d[i]
    for i, j in _edges(t):
        # bonded roots: <a_i, a_j> = -max(d_i, d_j)
        b[i][j] = b[j][i] = -max(d[i], d[j])
    return d, b


class RootVec(tuple):
    """Integer coordinates in the simple-root basis."""
    __slots__ = ()

    def __new__(cls, coords):
        return super().__new__(cls, (int(c) for c in coords))

    def __add__(self, other):
        _same_len(self, other)
        return RootVec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _same_len(self, other)
        return RootVec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return RootVec(-a for a in self)

    def __mul__(self, k: int):
        return RootVec(k * a for a in self)

    __rmul__ = __mul__

    def __repr__(self):
        return f"RootVec({list(self)})"


class WeightVec(tuple):
    """Rational coordinates in the fundamental-weight basis."""
    __slots__ = ()

    def __new__(cls, coords):
        return super().__new__(cls, (Fraction(c) for c in coords))

    def __add__(self, other):
        _same_len(self, other)
        return WeightVec(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _same_len(self, other)
        return WeightVec(a - b for a, b in zip(self, other))

    def __neg__(self):
        return WeightVec(-a for a in self)

    def __mul__(self, k):
        return WeightVec(k * a for a in self)

    __rmul__ = __mul__

    @property
    def denominator(self) -> int:
        """Least n with the weight in (1/n) P."""
        n = 1
        for c in self:
            n = n * c.denominator // gcd(n, c.denominator)
        return n

    def is_integral(self) -> bool:
        return self.denominator == 1

    def __repr__(self):
        return f"WeightVec({[str(c) for c in self]})"


Vec = Union[RootVec, WeightVec]


def _same_len(a, b):
    if len(a) != len(b):
        raise ValueError(f"vectors from different root systems (ranks {len(a)} and {len(b)})")


@dataclass(frozen=True)
class RootSystem:
    lie_type: LieType
    cartan: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...]
    form: tuple[tuple[int, ...], ...] = field(repr=False)
    positive_roots: tuple[RootVec, ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    def simple_root(self, i: int) -> RootVec:
        return RootVec(int(k == i) for k in range(self.rank))

    def fundamental_weight(self, i: int) -> WeightVec:
        return WeightVec(int(k == i) for k in range(self.rank))

    # coordinate changes -------------------------------------------------

    def root_to_weight(self, x: RootVec) -> WeightVec:
        self._check(x)
        c = self.cartan
        return WeightVec(sum(c[i][j] * x[j] for j in range(self.rank)) for i in range(self.rank))

    def weight_to_root_coords(self, lam: WeightVec) -> list[Fraction]:
        """Simple-root coordinates of a weight (rational in general)."""
        self._check(lam)
        sol = solve_rational(self.cartan, list(lam))
        assert sol is not None
        return sol

    def weight_to_root(self, lam: WeightVec) -> RootVec:
        coords = self.weight_to_root_coords(lam)
        if any(c.denominator != 1 for c in coords):
            raise ValueError(f"{lam!r} is not in the root lattice")
        return RootVec(int(c) for c in coords)

    # bilinear form ------------------------------------------------------

    def pairing(self, x: Vec, y: Vec) -> Fraction:
        """The invariant form <x, y>; either argument may be a root or weight."""
        self._check(x)
        self._check(y)
        if isinstance(x, WeightVec) and isinstance(y, WeightVec):
            x = self.weight_to_root_coords(x)
        elif isinstance(x, WeightVec):
            x, y = y, x
        if isinstance(y, WeightVec):
            # <sum x_i alpha_i, sum a_j omega_j> = sum x_i a_i d_i
            return Fraction(sum(xi * a * d for xi, a, d in zip(x, y, self.symmetrizers)))
        b = self.form
        return Fraction(sum(x[i] * b[i][j] * y[j] for i in range(self.rank) for j in range(self.rank)))

    def coroot_pairing(self, lam: Vec, alpha: RootVec) -> Fraction:
        """<lam, alpha^vee> = 2 <lam, alpha> / <alpha, alpha>."""
        return 2 * self.pairing(lam, alpha) / self.pairing(alpha, alpha)

    def root_form(self, x, y) -> int:
        """<x, y> for two integer root-coordinate vectors (fast path)."""
        b = self.form
        r = self.rank
        return sum(x[i] * b[i][j] * y[j] for i in range(r) for j in range(r) if x[i] and y[j])

    def weight_root_form(self, lam, x) -> Fraction:
        """<lam, x> for lam in weight coordinates and x in root coordinates."""
        return sum((a * xi * d for a, xi, d in zip(lam, x, self.symmetrizers)), Fraction(0))

    def is_positive(self, x) -> bool:
        return any(x) and all(c >= 0 for c in x)

    def is_negative(self, x) -> bool:
        return any(x) and all(c <= 0 for c in x)

    def _check(self, v) -> None:
        if len(v) != self.rank:
            raise ValueError(
                f"vector of length {len(v)} does not belong to {self.lie_type} (rank {self.rank})")

    def __str__(self):
        return str(self.lie_type)


def _reflect(x: tuple[int, ...], i: int, form, d) -> tuple[int, ...]:
    # s_i(x) = x - <x, alpha_i^vee> alpha_i, and <x, alpha_i^vee> = (B x)_i / d_i
    coef = sum(form[i][j] * x[j] for j in range(len(x))) // d[i]
    out = list(x)
    out[i] -= coef
    return tuple(out)


@lru_cache(maxsize=None)
def build_root_system(t: Union[LieType, str]) -> RootSystem:
    """Cartan data from the built-in tables plus the positive roots, found by
    closing the simple roots under simple reflections."""
    if isinstance(t, str):
        t = parse_lie_type(t)
    sq, b = _form_matrix(t)
    g = 0
    for x in sq:
        g = gcd(g, x)
    d = [x // g for x in sq]
    b = [[x // g for x in row] for row in b]
    r = t.rank
    cartan = [[b[i][j] // d[i] for j in range(r)] for i in range(r)]

    simple = [tuple(int(k == i) for k in range(r)) for i in range(r)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(r):
                y = _reflect(x, i, b, d)
                if y not in seen and all(c >= 0 for c in y):
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    roots = sorted(seen, key=lambda x: (sum(x), tuple(-c for c in x)))
    return RootSystem(
        lie_type=t,
        cartan=tuple(map(tuple, cartan)),
        symmetrizers=tuple(d),
        form=tuple(map(tuple, b)),
        positive_roots=tuple(RootVec(x) for x in roots),
    )
