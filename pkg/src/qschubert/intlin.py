"""
Exact integer linear algebra: Hermite and Smith normal forms, integer
kernels, and lattices in Z^n with a canonical (Hermite) basis.

Matrices are plain sequences of rows of Python ints, so entries never
overflow. Nothing in this module uses floating point.
"""

from __future__ import annotations

__all__ = [
    "IntMatrix", "IntLattice", "LatticeComparison",
    "identity", "transpose", "matmul", "matvec", "det",
    "hermite_normal_form", "smith_normal_form", "kernel_basis",
    "kernel_modulo", "rank", "rational_rank", "solve_rational",
    "lattice_ops",
]

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

# row-major, entries are arbitrary-precision ints
IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b)) if b else []
    inner = len(b)
    if not bt:
        return [[] for _ in a]
    return [[sum(row[k] * col[k] for k in range(inner)) for col in bt] for row in a]


def matvec(m: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _echelon(rows: list[list[int]], pivot_cols: int) -> int:
    """Row-reduce ``rows`` in place to Hermite form on the first ``pivot_cols``
    columns using unimodular row operations applied to whole rows.

    Returns the number of pivots. Pivots are positive and the entries above
    each pivot are reduced into ``[0, pivot)``.
    """
    p = 0
    nrows = len(rows)
    for j in range(pivot_cols):
        if p == nrows:
            break
        for i in range(p + 1, nrows):
            b = rows[i][j]
            if b == 0:
                continue
            a = rows[p][j]
            if a == 0:
                rows[p], rows[i] = rows[i], rows[p]
                continue
            g, s, t = _xgcd(a, b)
            u, v = a // g, b // g
            rp, ri = rows[p], rows[i]
            # [[s, t], [-v, u]] has determinant 1
            rows[p] = [s * x + t * y for x, y in zip(rp, ri)]
            rows[i] = [u * y - v * x for x, y in zip(rp, ri)]
        piv = rows[p][j]
        if piv == 0:
            continue
        if piv < 0:
            rows[p] = [-x for x in rows[p]]
            piv = -piv
        for i in range(p):
            q = rows[i][j] // piv
            if q:
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[p])]
        p += 1
    return p


def hermite_normal_form(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Row-style Hermite normal form with zero rows dropped."""
    rows = [list(map(int, r)) for r in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    k = _echelon(rows, ncols)
    return rows[:k]


def rank(m: Sequence[Sequence[int]]) -> int:
    return len(hermite_normal_form(m))


def rational_rank(m: Sequence[Sequence]) -> int:
    """Rank over Q by Gaussian elimination on Fractions.

    Deliberately independent of the Hermite-form code path.
    """
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for j in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][j] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for i in range(len(rows)):
            if i != rk and rows[i][j] != 0:
                f = rows[i][j] / rows[rk][j]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


def solve_rational(a: Sequence[Sequence], b: Sequence) -> Optional[list[Fraction]]:
    """One rational solution x of a x = b, or None if inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    aug = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(nrows)]
    pivots = []
    rk = 0
    for j in range(ncols):
        piv = next((i for i in range(rk, nrows) if aug[i][j] != 0), None)
        if piv is None:
            continue
        aug[rk], aug[piv] = aug[piv], aug[rk]
        lead = aug[rk][j]
        aug[rk] = [x / lead for x in aug[rk]]
        for i in range(nrows):
            if i != rk and aug[i][j] != 0:
                f = aug[i][j]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rk])]
        pivots.append(j)
        rk += 1
    if any(aug[i][ncols] != 0 for i in range(rk, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, j in enumerate(pivots):
        x[j] = aug[i][ncols]
    return x


def det(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant (Bareiss fraction-free elimination)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if sw is None:
                return 0
            a[k], a[sw] = a[sw], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Smith normal form ``(diag, U, V)`` with ``U @ m @ V`` diagonal.

    ``diag`` has ``min(rows, cols)`` nonnegative entries, each dividing the
    next (zeros last). ``U`` and ``V`` are unimodular.
    """
    a = [list(map(int, r)) for r in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = identity(nr)
    v = identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(nr, nc)):
        # smallest nonzero entry of the trailing block becomes the pivot
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // piv))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // piv))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
                _, i, j = min(cand)
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    diag = [a[i][i] for i in range(min(nr, nc))]
    return diag, u, v


def kernel_basis(m: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "IntLattice":
    """Saturated basis of the integer kernel ``{v : m v = 0}``.

    ``ncols`` is needed only when ``m`` has no rows.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    nrows = len(m)
    # rows of [m^T | I]; unimodular reduction of the left block
    aug = [[m[i][j] for i in range(nrows)] + [int(j == k) for k in range(ncols)]
           for j in range(ncols)]
    k = _echelon(aug, nrows)
    return IntLattice.from_generators([row[nrows:] for row in aug[k:]], ncols)


def kernel_modulo(m: Sequence[Sequence[int]], relations: Sequence[Sequence[int]],
                  ncols: Optional[int] = None) -> "IntLattice":
    """Lattice of x with ``m x`` in the span of the columns of ``relations``.

    ``relations`` is given as a list of vectors in the target space of ``m``.
    """
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if not relations:
        return kernel_basis(m, ncols)
    nrows = len(m)
    big = [list(m[i]) + [-rel[i] for rel in relations] for i in range(nrows)]
    ker = kernel_basis(big, ncols + len(relations))
    return IntLattice.from_generators([v[:ncols] for v in ker.basis], ncols)


@dataclass(frozen=True)
class IntLattice:
    """A sublattice of Z^n stored by its row Hermite basis.

    Two lattices are equal exactly when their ``basis`` tuples agree.
    """
    ambient_rank: int
    basis: tuple[tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence[int]], ambient_rank: Optional[int] = None) -> IntLattice:
        if ambient_rank is None:
            if not gens:
                raise ValueError("ambient rank required for an empty generating set")
            ambient_rank = len(gens[0])
        for g in gens:
            if len(g) != ambient_rank:
                raise ValueError(f"generator {list(g)} is not in Z^{ambient_rank}")
        h = hermite_normal_form(gens, ambient_rank)
        return cls(ambient_rank, tuple(tuple(r) for r in h))

    @classmethod
    def zero(cls, n: int) -> IntLattice:
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> IntLattice:
        return cls(n, tuple(tuple(r) for r in identity(n)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __contains__(self, vec: Sequence[int]) -> bool:
        if len(vec) != self.ambient_rank:
            raise ValueError("dimension mismatch")
        v = list(vec)
        for row in self.basis:
            j = next(k for k, x in enumerate(row) if x)
            if any(v[:j]):
                return False
            q, rem = divmod(v[j], row[j])
            if rem:
                return False
            v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def issubset(self, other: IntLattice) -> bool:
        self._check(other)
        return all(b in other for b in self.basis)

    def __add__(self, other: IntLattice) -> IntLattice:
        self._check(other)
        return IntLattice.from_generators(self.basis + other.basis, self.ambient_rank)

    def intersection(self, other: IntLattice) -> IntLattice:
        self._check(other)
        a, b = self.basis, other.basis
        if not a or not b:
            return IntLattice.zero(self.ambient_rank)
        # x a = y b  <=>  (x, y) in ker [a^T | -b^T]
        mat = [[r[k] for r in a] + [-r[k] for r in b] for k in range(self.ambient_rank)]
        ker = kernel_basis(mat, len(a) + len(b))
        gens = [[sum(c * r[k] for c, r in zip(v[:len(a)], a)) for k in range(self.ambient_rank)]
                for v in ker.basis]
        return IntLattice.from_generators(gens, self.ambient_rank)

    def saturation(self) -> IntLattice:
        """The rational span intersected with Z^n."""
        perp = kernel_basis(self.basis, self.ambient_rank)
        return kernel_basis(perp.basis, self.ambient_rank)

    def is_saturated(self) -> bool:
        diag, _, _ = smith_normal_form(self.basis)
        return all(d == 1 for d in diag)

    def gram_det(self) -> int:
        b = self.basis
        return det([[sum(x * y for x, y in zip(r, s)) for s in b] for r in b])

    def index_in(self, other: IntLattice) -> Optional[int]:
        """``[other : self]`` when ``self`` is a finite-index sublattice, else None."""
        if not self.issubset(other) or self.rank != other.rank:
            return None
        if self.rank == 0:
            return 1
        num, den = self.gram_det(), other.gram_det()
        sq, rem = divmod(num, den)
        root = isqrt(sq)
        assert rem == 0 and root * root == sq
        return root

    def image(self, m: Sequence[Sequence[int]], target_rank: int) -> IntLattice:
        """Image of the lattice under ``v -> m v``."""
        return IntLattice.from_generators([matvec(m, b) for b in self.basis], target_rank)

    def _check(self, other: IntLattice) -> None:
        if self.ambient_rank != other.ambient_rank:
            raise ValueError(
                f"ambient ranks differ: {self.ambient_rank} vs {other.ambient_rank}")


@dataclass(frozen=True)
class LatticeComparison:
    rank_a: int
    rank_b: int
    equal: bool
    a_subset_b: bool
    # [b : a]; only set when a is a full-rank sublattice of b
    index_if_finite: Optional[int]
    # (a + b) / b has no torsion
    torsion_free_quotient: bool


def lattice_ops(a: IntLattice, b: IntLattice) -> LatticeComparison:
    a._check(b)
    total = a + b
    return LatticeComparison(
        rank_a=a.rank,
        rank_b=b.rank,
        equal=a == b,
        a_subset_b=a.issubset(b),
        index_if_finite=a.index_in(b),
        torsion_free_quotient=total.intersection(b.saturation()) == b,
    )


def gcd_all(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
