"""
Multiplicative data written additively.

A scalar of K* is modeled as an integer exponent vector over formal
generators ``(q, p_1, ..., p_k)``; coordinate 0 is always the exponent of q.
Multiplying scalars adds vectors, the zero vector is 1. By default the
generators are multiplicatively independent (generic parameters); a
:class:`RelationsLattice` declares extra exponent vectors equal to 1.

The bicharacter ``r(alpha, beta) = p(alpha, beta) p(beta, alpha)^{-1}`` is
stored by its values on pairs of simple roots in the support S(w).
"""

from __future__ import annotations

__all__ = [
    "ExponentScalar", "Bicharacter", "RelationsLattice", "Character",
    "commutation_character", "torus_character", "torsion_free_check",
    "torsion_generators",
]

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .intlin import IntLattice, lattice_ops
from .cauchon import beta_roots
from .rootsys import RootSystem, RootVec, WeightVec
from .weyl import WeylElt, from_word, support as weyl_support


@dataclass(frozen=True)
class ExponentScalar:
    exps: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))

    @classmethod
    def one(cls, m: int) -> ExponentScalar:
        return cls((0,) * m)

    @classmethod
    def q_power(cls, k: int, m: int) -> ExponentScalar:
        return cls((k,) + (0,) * (m - 1))

    @property
    def m(self) -> int:
        return len(self.exps)

    def __add__(self, other: ExponentScalar) -> ExponentScalar:
        if self.m != other.m:
            raise ValueError("scalars over different parameter sets")
        return ExponentScalar(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __neg__(self) -> ExponentScalar:
        return ExponentScalar(tuple(-a for a in self.exps))

    def __sub__(self, other: ExponentScalar) -> ExponentScalar:
        return self + (-other)

    def __mul__(self, k: int) -> ExponentScalar:
        return ExponentScalar(tuple(k * a for a in self.exps))

    __rmul__ = __mul__

    def is_one(self, rel: Optional[RelationsLattice] = None) -> bool:
        if rel is None:
            return not any(self.exps)
        return tuple(self.exps) in rel

    def format(self, params: Sequence[str] = ()) -> str:
        names = ("q",) + tuple(params)
        parts = [f"{n}^{e}" if e != 1 else n for n, e in zip(names, self.exps) if e]
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class RelationsLattice:
    """Exponent vectors declared equal to 1; q never takes part."""
    lattice: IntLattice

    def __post_init__(self):
        for row in self.lattice.basis:
            if row[0] != 0:
                raise ValueError(
                    f"relation {list(row)} involves q; q is not a root of unity")

    @classmethod
    def generic(cls, m: int) -> RelationsLattice:
        return cls(IntLattice.zero(m))

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence[int]], m: int) -> RelationsLattice:
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != m:
                raise ValueError(f"relation {v} should have {m} exponents")
            if v[0] != 0:
                raise ValueError(f"relation {v} involves q; q is not a root of unity")
        return cls(IntLattice.from_generators(vectors, m))

    @property
    def m(self) -> int:
        return self.lattice.ambient_rank

    @property
    def generators(self) -> list[list[int]]:
        return [list(r) for r in self.lattice.basis]

    def __contains__(self, vec) -> bool:
        return tuple(vec) in self.lattice


@dataclass(frozen=True)
class Bicharacter:
    """Skew bicharacter on Q_{S(w)} given on simple roots.

    ``table[a][b]`` holds the exponents of ``r(alpha_{support[a]}, alpha_{support[b]})``.
    """
    support: tuple[int, ...]
    params: tuple[str, ...]
    table: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        s, m = len(self.support), 1 + len(self.params)
        if list(self.support) != sorted(set(self.support)):
            raise ValueError("support must be strictly increasing simple-root labels")
        if len(self.table) != s or any(len(row) != s for row in self.table):
            raise ValueError(f"r_table must be {s}x{s} over the support {list(self.support)}")
        for a in range(s):
            for b in range(s):
                e = self.table[a][b]
                if len(e) != m:
                    raise ValueError(f"r_table[{a}][{b}] should have {m} exponents, got {len(e)}")
                if any(x + y for x, y in zip(e, self.table[b][a])):
                    raise ValueError(f"r_table is not skew at [{a}][{b}]")
        object.__setattr__(self, "table", tuple(
            tuple(tuple(int(x) for x in e) for e in row) for row in self.table))

    @property
    def m(self) -> int:
        return 1 + len(self.params)

    @classmethod
    def trivial(cls, support: Iterable[int], params: Sequence[str] = ()) -> Bicharacter:
        support = tuple(sorted(support))
        zero = (0,) * (1 + len(params))
        return cls(support, tuple(params), tuple(tuple(zero for _ in support) for _ in support))

    @classmethod
    def from_cocycle(cls, support: Iterable[int], params: Sequence[str],
                     p_table: Sequence[Sequence[Sequence[int]]]) -> Bicharacter:
        """r(alpha_i, alpha_j) = p(alpha_i, alpha_j) - p(alpha_j, alpha_i) (additively)."""
        support = tuple(sorted(support))
        s = len(support)
        table = tuple(
            tuple(tuple(x - y for x, y in zip(p_table[a][b], p_table[b][a])) for b in range(s))
            for a in range(s))
        return cls(support, tuple(params), table)

    @classmethod
    def q_power(cls, support: Iterable[int], table: Sequence[Sequence[int]]) -> Bicharacter:
        """Bicharacter with values in the cyclic group generated by q."""
        support = tuple(sorted(support))
        return cls(support, (), tuple(tuple((int(x),) for x in row) for row in table))

    def on_support(self, support: Iterable[int]) -> Bicharacter:
        """The same bicharacter tabulated over ``support``; pairs involving a
        label missing from this table get the trivial value."""
        support = tuple(sorted(support))
        pos = {i: a for a, i in enumerate(self.support)}
        zero = (0,) * self.m
        table = tuple(
            tuple(self.table[pos[i]][pos[j]] if i in pos and j in pos else zero for j in support)
            for i in support)
        return Bicharacter(support, self.params, table)

    def _coords(self, v: Sequence[int]) -> list[int]:
        sup = set(self.support)
        for i, c in enumerate(v, start=1):
            if c and i not in sup:
                raise ValueError(
                    f"root {list(v)} has a nonzero coordinate at alpha_{i} outside the support {list(self.support)}")
        return [v[i - 1] for i in self.support]

    def eval(self, gamma: Sequence[int], delta: Sequence[int]) -> ExponentScalar:
        g, d = self._coords(gamma), self._coords(delta)
        out = [0] * self.m
        for a, ga in enumerate(g):
            if not ga:
                continue
            for b, db in enumerate(d):
                if not db:
                    continue
                for k, e in enumerate(self.table[a][b]):
                    out[k] += ga * db * e
        return ExponentScalar(tuple(out))


@dataclass(frozen=True)
class Character:
    """A homomorphism Q_{S(w)} -> K*, stored by its values on alpha_i, i in the support."""
    support: tuple[int, ...]
    values: tuple[ExponentScalar, ...]
    m: int

    def __call__(self, gamma: Sequence[int]) -> ExponentScalar:
        sup = set(self.support)
        for i, c in enumerate(gamma, start=1):
            if c and i not in sup:
                raise ValueError(f"{list(gamma)} is not in Q_S for S = {list(self.support)}")
        out = ExponentScalar.one(self.m)
        for i, v in zip(self.support, self.values):
            out = out + v * gamma[i - 1]
        return out

    def __add__(self, other: Character) -> Character:
        if self.support != other.support or self.m != other.m:
            raise ValueError("characters on different supports")
        return Character(self.support, tuple(a + b for a, b in zip(self.values, other.values)), self.m)

    def is_trivial(self, rel: Optional[RelationsLattice] = None) -> bool:
        return all(v.is_one(rel) for v in self.values)


def _int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"{what} = {x} is not an integer")
    return int(x)


def commutation_character(rs: RootSystem, w: WeylElt, y: WeylElt, mu: WeightVec,
                          r: Bicharacter) -> Character:
    """gamma -> r((w - y) mu, gamma) q^{-<(w + y) mu, gamma>}."""
    diff = rs.weight_to_root(w.act(mu) - y.act(mu))
    total = w.act(mu) + y.act(mu)
    values = []
    for i in r.support:
        alpha = rs.simple_root(i - 1)
        qexp = -_int(rs.pairing(total, alpha), "<(w+y)mu, alpha>")
        values.append(r.eval(diff, alpha) + ExponentScalar.q_power(qexp, r.m))
    return Character(r.support, tuple(values), r.m)


def torus_character(rs: RootSystem, w: WeylElt, mu: WeightVec, theta: RootVec,
                    r: Bicharacter) -> Character:
    """t_{mu,theta}: gamma -> r(theta, gamma) q^{<theta - 2 w mu, gamma>}."""
    sup = set(r.support)
    if not mu.is_integral() or any(c and i not in sup for i, c in enumerate(mu, start=1)):
        raise ValueError(f"{mu!r} is not in P_S for S = {list(r.support)}")
    if any(c and i not in sup for i, c in enumerate(theta, start=1)):
        raise ValueError(f"{theta!r} is not in Q_S for S = {list(r.support)}")
    wmu = w.act(mu)
    values = []
    for i in r.support:
        alpha = rs.simple_root(i - 1)
        qexp = rs.root_form(theta, alpha) - 2 * _int(rs.pairing(wmu, alpha), "<w mu, alpha>")
        values.append(r.eval(theta, alpha) + ExponentScalar.q_power(qexp, r.m))
    return Character(r.support, tuple(values), r.m)


def torsion_generators(rs: RootSystem, word: Sequence[int], r: Bicharacter) -> list[ExponentScalar]:
    """r(beta_i, beta_j) q^{<beta_i, beta_j>} for 1 <= i < j <= l."""
    betas = beta_roots(rs, word)
    out = []
    for a in range(len(betas)):
        for b in range(a + 1, len(betas)):
            q = ExponentScalar.q_power(rs.root_form(betas[a], betas[b]), r.m)
            out.append(r.eval(betas[a], betas[b]) + q)
    return out


def torsion_free_check(rs: RootSystem, word: Sequence[int], r: Bicharacter,
                       rel: Optional[RelationsLattice] = None) -> bool:
    """Whether the subgroup of K* generated by the torsion generators is torsion free.

    When it is, every prime ideal of the twisted algebra is completely prime.
    """
    if rel is None:
        rel = RelationsLattice.generic(r.m)
    if rel.m != r.m:
        raise ValueError(f"relations live in Z^{rel.m} but scalars in Z^{r.m}")
    missing = weyl_support(from_word(rs, word)) - set(r.support)
    if missing:
        raise ValueError(f"bicharacter support misses simple roots {sorted(missing)}")
    gens = [g.exps for g in torsion_generators(rs, word, r)]
    sub = IntLattice.from_generators(gens, r.m)
    return lattice_ops(sub, rel.lattice).torsion_free_quotient
