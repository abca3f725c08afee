"""
Quantum tori modeling the Cauchon localization of U^w_{-,p} / I_w(y).

Generators z_1..z_g sit at the positions j_1 < ... < j_g outside the Cauchon
diagram, with weights beta_{j_a}. They satisfy z_a z_b = lambda(a, b) z_b z_a,
where for a > b

    lambda(a, b) = r(beta_{j_a}, beta_{j_b}) q^{-<beta_{j_a}, beta_{j_b}>}

is the leading scalar of the Levendorskii-Soibelman straightening law, and
lambda(b, a) = lambda(a, b)^{-1}. Only this associated-graded structure is
modeled; lower-order straightening terms are not.

Monomials are kept in decreasing generator order, z_g^{e_g} ... z_1^{e_1},
matching the PBW ordering of the root vectors.
"""

from __future__ import annotations

__all__ = ["QTorus", "TorusMonomial", "build_torus", "multiply", "center_lattice",
           "commutation_scalar", "monomial_weight"]

from dataclasses import dataclass
from typing import Optional, Sequence

from .cauchon import CauchonDiagram, beta_roots, is_cauchon_diagram
from .intlin import IntLattice, kernel_modulo
from .rootsys import RootSystem, RootVec
from .twist import Bicharacter, ExponentScalar, RelationsLattice


@dataclass(frozen=True)
class QTorus:
    positions: tuple[int, ...]
    weights: tuple[RootVec, ...]
    # comm[a][b] = lambda(a, b), 0-based generator indices
    comm: tuple[tuple[ExponentScalar, ...], ...]
    m: int
    rel: RelationsLattice

    @property
    def ngens(self) -> int:
        return len(self.positions)

    def one(self) -> TorusMonomial:
        return TorusMonomial((0,) * self.ngens, ExponentScalar.one(self.m))

    def generator(self, a: int) -> TorusMonomial:
        return TorusMonomial(tuple(int(b == a) for b in range(self.ngens)), ExponentScalar.one(self.m))


@dataclass(frozen=True)
class TorusMonomial:
    exps: tuple[int, ...]
    coeff: ExponentScalar

    def inverse_exps(self) -> TorusMonomial:
        """The monomial z^{-e} with trivial coefficient."""
        return TorusMonomial(tuple(-e for e in self.exps), ExponentScalar.one(self.coeff.m))

    def format(self) -> str:
        return " ".join(map(str, self.coeff.exps)) + " | " + " ".join(map(str, self.exps))


def build_torus(rs: RootSystem, diagram: CauchonDiagram, r: Optional[Bicharacter] = None,
                rel: Optional[RelationsLattice] = None) -> QTorus:
    word = diagram.word
    if not is_cauchon_diagram(rs, word, diagram.positions):
        raise ValueError(f"{diagram} is not a Cauchon diagram of {list(word)}")
    betas = beta_roots(rs, word)
    if r is None:
        r = Bicharacter.trivial(sorted(set(word)))
    r = r.on_support(sorted(set(word)))
    m = r.m
    if rel is None:
        rel = RelationsLattice.generic(m)
    pos = tuple(diagram.complement)
    wts = tuple(betas[j - 1] for j in pos)
    g = len(pos)
    comm = [[ExponentScalar.one(m)] * g for _ in range(g)]
    for a in range(g):
        for b in range(a):
            val = r.eval(wts[a], wts[b]) + ExponentScalar.q_power(-rs.root_form(wts[a], wts[b]), m)
            comm[a][b] = val
            comm[b][a] = -val
    return QTorus(pos, wts, tuple(map(tuple, comm)), m, rel)


def multiply(t: QTorus, x: TorusMonomial, y: TorusMonomial) -> TorusMonomial:
    """Product of normally ordered monomials.

    Moving each z_a^{y_a} of the right factor past z_b^{x_b} (b < a) of the
    left factor costs lambda(b, a)^{x_b y_a}.
    """
    if len(x.exps) != t.ngens or len(y.exps) != t.ngens:
        raise ValueError("monomial does not belong to this torus")
    coeff = x.coeff + y.coeff
    for a in range(t.ngens):
        if not y.exps[a]:
            continue
        for b in range(a):
            if x.exps[b]:
                coeff = coeff + t.comm[b][a] * (x.exps[b] * y.exps[a])
    return TorusMonomial(tuple(p + q for p, q in zip(x.exps, y.exps)), coeff)


def commutation_scalar(t: QTorus, x: Sequence[int], c: int) -> ExponentScalar:
    """The scalar s with z^x z_c = s z_c z^x."""
    out = ExponentScalar.one(t.m)
    for b, e in enumerate(x):
        if e:
            out = out + t.comm[b][c] * e
    return out


def monomial_weight(t: QTorus, x: Sequence[int]) -> RootVec:
    out = RootVec([0] * (len(t.weights[0]) if t.weights else 0))
    for e, wt in zip(x, t.weights):
        out = out + wt * e
    return out


def center_lattice(t: QTorus) -> IntLattice:
    """Exponent vectors of the monomials commuting with every generator."""
    g, m = t.ngens, t.m
    if g == 0:
        return IntLattice.zero(0)
    # row (c, k): k-th exponent coordinate of sum_b a_b lambda(b, c)
    rows = [[t.comm[b][c].exps[k] for b in range(g)] for c in range(g) for k in range(m)]
    rels = []
    for c in range(g):
        for rg in t.rel.generators:
            v = [0] * (g * m)
            v[c * m:(c + 1) * m] = rg
            rels.append(v)
    return kernel_modulo(rows, rels, g)
