"""
Torus-invariant primes and Goodearl-Letzter strata of twisted quantum
Schubert cell algebras, computed from Weyl group data.

The torus-invariant primes are indexed by y <= w. For each y the stratum is
the spectrum of a Laurent polynomial ring whose dimension is the rank of

    L_{y,w,r} = {(w - y) mu : mu in P_{S(w)},
                 r((w - y) mu, gamma) q^{-<(w + y) mu, gamma>} = 1 for gamma in Q_{y,w}}.

For trivial r this rank equals dim ker(w + y).
"""

from __future__ import annotations

__all__ = [
    "StratumReport", "CenterLatticeRank", "CayleySolution", "StrataContext",
    "stratum_lattice", "stratum_dimension", "stratum_center_rank",
    "uniparameter_dimension", "n_yw", "diagonal_normal_solve",
    "sandwich_lattice", "stratification_report", "catenarity_failures",
    "catenarity_check",
]

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

from .cauchon import CauchonDiagram, cauchon_diagram_for, qyw_lattice
from .intlin import IntLattice, kernel_modulo, rational_rank, smith_normal_form, solve_rational
from .rootsys import RootSystem, RootVec, WeightVec
from .twist import Bicharacter, ExponentScalar, RelationsLattice, commutation_character
from .weyl import (
    ReducedWord, WeylElt, bruhat_covers, bruhat_leq, from_word, lower_interval, support,
)


@dataclass(frozen=True)
class StratumReport:
    y_word: ReducedWord
    diagram: tuple[int, ...]
    dim: int
    height: int
    gk_codim: int
    # W^{<= y} as reduced words, sorted by (length, word)
    closure_down: tuple[ReducedWord, ...]


@dataclass(frozen=True)
class CenterLatticeRank:
    rank: int
    # pairs (mu, (w - y) mu) spanning L_{y,w,r}
    witnesses: tuple[tuple[WeightVec, RootVec], ...]


@dataclass(frozen=True)
class CayleySolution:
    """Outcome of solving (w - y) mu = gamma0, (w + y) mu = -mu0.

    ``mu`` is None when the system is inconsistent: no diagonal normal element
    has this pair of data. That is an answer, not an error.
    """
    mu: Optional[WeightVec]
    n_yw: int
    in_half_n_lattice: bool = False
    integral_on_qyw: bool = False

    @property
    def consistent(self) -> bool:
        return self.mu is not None


class StrataContext:
    """Shared data for one w and one reduced word of it: the support, the
    bicharacter restricted to it, and cached Cauchon diagrams."""

    def __init__(self, rs: RootSystem, w: WeylElt, r: Optional[Bicharacter] = None,
                 rel: Optional[RelationsLattice] = None, word: Optional[Sequence[int]] = None):
        self.rs = rs
        self.w = w
        self.word = tuple(word) if word is not None else w.reduced_word
        self.support = tuple(sorted(support(w)))
        if r is None:
            r = Bicharacter.trivial(self.support)
        self.r = r.on_support(self.support)
        self.rel = rel if rel is not None else RelationsLattice.generic(self.r.m)
        if self.rel.m != self.r.m:
            raise ValueError(f"relations live in Z^{self.rel.m} but scalars in Z^{self.r.m}")
        self._diagrams: dict[WeylElt, CauchonDiagram] = {}

    def diagram(self, y: WeylElt) -> CauchonDiagram:
        if y not in self._diagrams:
            self._diagrams[y] = cauchon_diagram_for(self.rs, self.word, y)
        return self._diagrams[y]

    def qyw(self, y: WeylElt) -> IntLattice:
        return qyw_lattice(self.rs, self.diagram(y))

    def require_below(self, y: WeylElt) -> None:
        if not bruhat_leq(y, self.w):
            raise ValueError(f"{y!r} is not below {self.w!r} in Bruhat order")


def _condition_rows(ctx: StrataContext, y: WeylElt, gens) -> tuple[list[list[int]], list[RootVec]]:
    """Matrix of mu -> (r((w-y)mu, g_k) q^{-<(w+y)mu, g_k>})_k on the basis omega_i, i in S(w),
    and the images (w - y) omega_i."""
    rs, w, r = ctx.rs, ctx.w, ctx.r
    m = r.m
    cols = []
    diffs = []
    for i in ctx.support:
        om = rs.fundamental_weight(i - 1)
        diff = rs.weight_to_root(w.act(om) - y.act(om))
        tot = w.act(om) + y.act(om)
        col = []
        for g in gens:
            qexp = -rs.weight_root_form(tot, g)
            assert qexp.denominator == 1
            col.extend((r.eval(diff, g) + ExponentScalar.q_power(int(qexp), m)).exps)
        cols.append(col)
        diffs.append(diff)
    rows = [list(row) for row in zip(*cols)] if cols else []
    return rows, diffs


def _block_relations(rel: RelationsLattice, blocks: int) -> list[list[int]]:
    m = rel.m
    out = []
    for k in range(blocks):
        for g in rel.generators:
            v = [0] * (m * blocks)
            v[k * m:(k + 1) * m] = g
            out.append(v)
    return out


def _stratum_kernel(ctx: StrataContext, y: WeylElt) -> tuple[IntLattice, list[RootVec]]:
    ctx.require_below(y)
    gens = ctx.qyw(y).basis
    rows, diffs = _condition_rows(ctx, y, gens)
    s = len(ctx.support)
    if not gens:
        return IntLattice.full(s), diffs
    return kernel_modulo(rows, _block_relations(ctx.rel, len(gens)), s), diffs


def stratum_lattice(rs: RootSystem, w: WeylElt, y: WeylElt, r: Optional[Bicharacter] = None,
                    rel: Optional[RelationsLattice] = None, *, word=None,
                    ctx: Optional[StrataContext] = None) -> IntLattice:
    """L_{y,w,r} in simple-root coordinates."""
    ctx = ctx or StrataContext(rs, w, r, rel, word)
    ker, diffs = _stratum_kernel(ctx, y)
    images = [[sum(c * d[k] for c, d in zip(v, diffs)) for k in range(rs.rank)] for v in ker.basis]
    return IntLattice.from_generators(images, rs.rank)


def stratum_dimension(rs: RootSystem, w: WeylElt, y: WeylElt, r: Optional[Bicharacter] = None,
                      rel: Optional[RelationsLattice] = None, *, word=None,
                      ctx: Optional[StrataContext] = None) -> int:
    """Dimension of the stratum of I_w(y): the rank of L_{y,w,r}."""
    return stratum_lattice(rs, w, y, r, rel, word=word, ctx=ctx).rank


def stratum_center_rank(rs: RootSystem, w: WeylElt, y: WeylElt, r: Optional[Bicharacter] = None,
                        rel: Optional[RelationsLattice] = None, *, word=None) -> CenterLatticeRank:
    """Rank of L_{y,w,r} with witnesses mu whose commutation character is trivial on Q_{y,w}."""
    ctx = StrataContext(rs, w, r, rel, word)
    ker, diffs = _stratum_kernel(ctx, y)
    witnesses = []
    for v in ker.basis:
        mu = WeightVec([0] * rs.rank)
        for c, i in zip(v, ctx.support):
            mu = mu + rs.fundamental_weight(i - 1) * c
        image = rs.weight_to_root(w.act(mu) - y.act(mu))
        if any(image):
            witnesses.append((mu, image))
    chars_ok = all(
        commutation_character(rs, w, y, mu, ctx.r)(g).is_one(ctx.rel)
        for mu, _ in witnesses for g in ctx.qyw(y).basis)
    if not chars_ok:
        raise RuntimeError("a witness violates the defining condition of L_{y,w,r}")
    lat = IntLattice.from_generators([img for _, img in witnesses], rs.rank)
    return CenterLatticeRank(lat.rank, tuple(witnesses))


def uniparameter_dimension(w: WeylElt, y: WeylElt) -> int:
    """dim_Q ker(w + y) on the span of the simple roots."""
    w._check(y)
    mat = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(w.matrix, y.matrix)]
    return w.rs.rank - rational_rank(mat)


def n_yw(rs: RootSystem, w: WeylElt, y: WeylElt, *, word=None,
         ctx: Optional[StrataContext] = None) -> int:
    """Least n > 0 such that every homomorphism Q_{y,w} -> Z is <lam, .> with lam in (1/n) P.

    With b_1..b_k a basis of Q_{y,w}, the map a -> (<sum a_j omega_j, b_k>)_k
    sends P onto a full-rank sublattice of Z^k; n is the exponent of the
    cokernel, i.e. the largest Smith invariant factor.
    """
    ctx = ctx or StrataContext(rs, w, word=word)
    ctx.require_below(y)
    basis = ctx.qyw(y).basis
    if not basis:
        return 1
    d = rs.symmetrizers
    mat = [[b[j] * d[j] for j in range(rs.rank)] for b in basis]
    diag, _, _ = smith_normal_form(mat)
    nonzero = [x for x in diag if x]
    assert len(nonzero) == len(basis)
    return nonzero[-1]


def diagonal_normal_solve(rs: RootSystem, w: WeylElt, y: WeylElt, gamma0: RootVec,
                          mu0: WeightVec, *, word=None) -> CayleySolution:
    """Solve (w - y) mu = gamma0 and (w + y) mu = -mu0 over Q.

    Also reports whether mu lies in (1/2n) P for n = n_yw and whether
    <(w + y) mu, Q_{y,w}> is integral.
    """
    rs._check(gamma0)
    rs._check(mu0)
    ctx = StrataContext(rs, w, word=word)
    ctx.require_below(y)
    n = n_yw(rs, w, y, ctx=ctx)
    wm, ym = w.weight_matrix, y.weight_matrix
    minus = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(wm, ym)]
    plus = [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(wm, ym)]
    rhs = list(rs.root_to_weight(gamma0)) + [-c for c in mu0]
    sol = solve_rational(minus + plus, rhs)
    if sol is None:
        return CayleySolution(None, n)
    mu = WeightVec(sol)
    in_lattice = (mu * (2 * n)).is_integral()
    total = w.act(mu) + y.act(mu)
    integral = all(rs.weight_root_form(total, g).denominator == 1 for g in ctx.qyw(y).basis)
    return CayleySolution(mu, n, in_lattice, integral)


def sandwich_lattice(rs: RootSystem, w: WeylElt, y: WeylElt, r: Optional[Bicharacter] = None,
                     rel: Optional[RelationsLattice] = None, *, word=None,
                     ctx: Optional[StrataContext] = None) -> IntLattice:
    """L'_{y,w,r}: like L_{y,w,r} but with mu in (1/2n)P subject to
    (w - y) mu in Q_{S(w)} and <(w + y) mu, Q_{y,w}> in Z.

    Writing mu = nu / N with N = 2 n_yw and nu in P_{S(w)}, the unknowns are
    nu, theta = (w - y) mu (integral), the integers t_k = <(w + y) mu, g_k>,
    and multipliers for the relations; all constraints are linear.
    """
    ctx = ctx or StrataContext(rs, w, r, rel, word)
    ctx.require_below(y)
    gens = ctx.qyw(y).basis
    big_n = 2 * n_yw(rs, w, y, ctx=ctx)
    sup = ctx.support
    s, rk, g, m = len(sup), rs.rank, len(gens), ctx.r.m
    if s == 0:
        return IntLattice.zero(rk)
    diffs, tots = [], []
    for i in sup:
        om = rs.fundamental_weight(i - 1)
        diffs.append(rs.weight_to_root(w.act(om) - y.act(om)))
        tots.append(w.act(om) + y.act(om))
    # column layout: nu (s) | theta (rk) | t (g) | relation multipliers
    rel_gens = ctx.rel.generators
    ncols = s + rk + g + g * len(rel_gens)
    rows = []
    for k in range(rk):
        row = [0] * ncols
        for a in range(s):
            row[a] = diffs[a][k]
        row[s + k] = -big_n
        rows.append(row)
    for kk, gam in enumerate(gens):
        row = [0] * ncols
        for a in range(s):
            row[a] = int(rs.weight_root_form(tots[a], gam))
        row[s + rk + kk] = -big_n
        rows.append(row)
    for kk, gam in enumerate(gens):
        # r(theta, gam) - t_k e_q - sum(rho * rel) = 0, one row per exponent coordinate
        r_cols = [ctx.r.eval(rs.simple_root(j), gam).exps if (j + 1) in sup else (0,) * m
                  for j in range(rk)]
        for c in range(m):
            row = [0] * ncols
            for j in range(rk):
                row[s + j] = r_cols[j][c]
            if c == 0:
                row[s + rk + kk] = -1
            for t, rg in enumerate(rel_gens):
                row[s + rk + g + kk * len(rel_gens) + t] = -rg[c]
            rows.append(row)
    ker = kernel_modulo(rows, [], ncols)
    return IntLattice.from_generators([v[s:s + rk] for v in ker.basis], rk)


def _report_for(ctx: StrataContext, y: WeylElt, interval: Sequence[WeylElt]) -> StratumReport:
    closure = tuple(x.reduced_word for x in interval if bruhat_leq(x, y))
    return StratumReport(
        y_word=y.reduced_word,
        diagram=tuple(sorted(ctx.diagram(y).positions)),
        dim=stratum_dimension(ctx.rs, ctx.w, y, ctx=ctx),
        height=y.length,
        gk_codim=ctx.w.length - y.length,
        closure_down=closure,
    )


def _report_worker(args):
    rs, w, r, rel, word, y_word = args
    ctx = StrataContext(rs, w, r, rel, word)
    interval = lower_interval(w)
    return _report_for(ctx, from_word(rs, y_word), interval)


def stratification_report(rs: RootSystem, w: WeylElt, r: Optional[Bicharacter] = None,
                          rel: Optional[RelationsLattice] = None, *, word=None,
                          ys: Optional[Sequence[WeylElt]] = None,
                          jobs: int = 1) -> list[StratumReport]:
    """One report per y in W^{<= w} (or per y in ``ys``), sorted by (l(y), word)."""
    ctx = StrataContext(rs, w, r, rel, word)
    interval = lower_interval(w)
    targets = interval if ys is None else sorted(ys, key=lambda x: (x.length, x.reduced_word))
    for y in targets:
        ctx.require_below(y)
    if jobs > 1 and len(targets) > 1:
        args = [(rs, w, ctx.r, ctx.rel, ctx.word, y.reduced_word) for y in targets]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_report_worker, args))
    return [_report_for(ctx, y, interval) for y in targets]


def catenarity_failures(rs: RootSystem, w: WeylElt, r: Optional[Bicharacter] = None,
                        rel: Optional[RelationsLattice] = None) -> list[str]:
    """Problems found on the poset W^{<= w} of torus-invariant primes (empty if none).

    Checks that every Bruhat cover raises length by exactly one (so all
    saturated chains between y1 <= y2 have length l(y2) - l(y1)), and that
    for y1 < y2 the separating weight lam = sum of omega_i over S(w)
    satisfies y1 lam > y2 lam with a well-defined commutation character.
    """
    ctx = StrataContext(rs, w, r, rel)
    interval = lower_interval(w)
    failures = []
    for a, b in bruhat_covers(interval):
        if interval[b].length - interval[a].length != 1:
            failures.append(f"graded: cover {interval[a]!r} < {interval[b]!r} skips a length")
    lam = WeightVec([int(i + 1 in ctx.support) for i in range(rs.rank)])
    images = {y: y.act(lam) for y in interval}
    for y1 in interval:
        try:
            commutation_character(rs, w, y1, lam, ctx.r)
        except ValueError as exc:
            failures.append(f"normality: character of a^lam_(y={y1!r}) undefined: {exc}")
        for y2 in interval:
            if y1 == y2 or not bruhat_leq(y1, y2):
                continue
            delta = rs.weight_to_root_coords(images[y1] - images[y2])
            if not (any(delta) and all(c >= 0 and c.denominator == 1 for c in delta)):
                failures.append(f"separation: y1={y1!r} < y2={y2!r} but y1 lam > y2 lam fails")
    return failures


def catenarity_check(rs: RootSystem, w: WeylElt, r: Optional[Bicharacter] = None,
                     rel: Optional[RelationsLattice] = None) -> bool:
    return not catenarity_failures(rs, w, r, rel)
