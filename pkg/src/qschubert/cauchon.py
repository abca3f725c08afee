"""
Subexpressions of a fixed reduced word: the beta-root sequence, Cauchon
diagrams, the support lattices Q_{y,w}, and the ascent chain y = y_0 < ... < w.

Positions are 1-based, so a diagram for a word of length l is a subset of
``range(1, l + 1)``. For a diagram D, ``s_{i_j}^D`` is ``s_{i_j}`` when
``j in D`` and the identity otherwise.
"""

from __future__ import annotations

__all__ = [
    "CauchonDiagram", "beta_roots", "subexpression_product", "suffix_product",
    "prefix_product", "is_cauchon_diagram", "cauchon_diagrams_for",
    "cauchon_diagram_for", "cauchon_diagram_greedy", "qyw_lattice",
    "qyw_lattice_from_betas", "beta_lattice", "ascent_chain", "weight_drop_holds",
    "format_diagram", "parse_diagram",
]

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .intlin import IntLattice
from .rootsys import RootSystem, RootVec
from .weyl import (
    ReducedWord, WeylElt, bruhat_leq, from_word, identity, is_reduced,
    simple_reflection,
)


@dataclass(frozen=True)
class CauchonDiagram:
    word: ReducedWord
    positions: frozenset[int]

    def __post_init__(self):
        bad = [j for j in self.positions if not 1 <= j <= len(self.word)]
        if bad:
            raise ValueError(f"positions {sorted(bad)} outside [1, {len(self.word)}]")

    @property
    def complement(self) -> list[int]:
        return [j for j in range(1, len(self.word) + 1) if j not in self.positions]

    def __str__(self):
        return format_diagram(self.positions)


def format_diagram(positions: Iterable[int]) -> str:
    return "D=[" + ",".join(map(str, sorted(positions))) + "]"


def parse_diagram(text: str) -> frozenset[int]:
    text = text.strip()
    if not (text.startswith("D=[") and text.endswith("]")):
        raise ValueError(f"cannot parse diagram {text!r}")
    body = text[3:-1].strip()
    return frozenset(int(t) for t in body.split(",")) if body else frozenset()


def _require_reduced(rs: RootSystem, word: Sequence[int]) -> None:
    if not is_reduced(rs, word):
        raise ValueError(f"word {list(word)} is not reduced in {rs.lie_type}")


def beta_roots(rs: RootSystem, word: Sequence[int]) -> list[RootVec]:
    """beta_j = s_{i_1} ... s_{i_{j-1}} (alpha_{i_j})."""
    _require_reduced(rs, word)
    out = []
    prefix = identity(rs)
    for letter in word:
        out.append(prefix.act(rs.simple_root(letter - 1)))
        prefix = prefix * simple_reflection(rs, letter - 1)
    return out


def prefix_product(rs: RootSystem, word: Sequence[int], positions, j: int) -> WeylElt:
    """w^D_{(j)} = s^D_{i_1} ... s^D_{i_j}."""
    return from_word(rs, [word[k - 1] for k in range(1, j + 1) if k in positions])


def suffix_product(rs: RootSystem, word: Sequence[int], positions, j: int) -> WeylElt:
    """bar w^D_{(j)} = s^D_{i_{j+1}} ... s^D_{i_l}."""
    return from_word(rs, [word[k - 1] for k in range(j + 1, len(word) + 1) if k in positions])


def subexpression_product(rs: RootSystem, word: Sequence[int], positions) -> WeylElt:
    """w^D."""
    return prefix_product(rs, word, positions, len(word))


def is_cauchon_diagram(rs: RootSystem, word: Sequence[int], positions) -> bool:
    """For every j in [1, l-1]: s_{i_j} bar w^D_{(j)} > bar w^D_{(j)}."""
    positions = frozenset(positions)
    l = len(word)
    bad = [j for j in positions if not 1 <= j <= l]
    if bad:
        raise ValueError(f"positions {sorted(bad)} outside [1, {l}]")
    suffix = identity(rs)
    for j in range(l, 0, -1):
        # here suffix = bar w^D_{(j)}
        if j < l and word[j - 1] - 1 in suffix.left_descents:
            return False
        if j in positions:
            suffix = simple_reflection(rs, word[j - 1] - 1) * suffix
    return True


def cauchon_diagrams_for(rs: RootSystem, word: Sequence[int], y: WeylElt) -> list[frozenset[int]]:
    """Every Cauchon diagram D of ``word`` with w^D = y, by pruned enumeration.

    Positions are chosen right to left; a branch dies as soon as the Cauchon
    condition fails for its suffix or the suffix is already longer than y.
    """
    l = len(word)
    target_len = y.length
    found = []

    def walk(j: int, suffix: WeylElt, chosen: tuple[int, ...]):
        if j == 0:
            if suffix == y:
                found.append(frozenset(chosen))
            return
        letter = word[j - 1] - 1
        if j < l and letter in suffix.left_descents:
            return
        # lengths only grow along a Cauchon branch
        if suffix.length > target_len:
            return
        walk(j - 1, suffix, chosen)
        walk(j - 1, simple_reflection(rs, letter) * suffix, chosen + (j,))

    walk(l, identity(rs), ())
    return found


def cauchon_diagram_for(rs: RootSystem, word: Sequence[int], y: WeylElt) -> CauchonDiagram:
    """The unique Cauchon diagram D with w^D = y (enumeration is the reference)."""
    word = tuple(word)
    _require_reduced(rs, word)
    w = from_word(rs, word)
    if not bruhat_leq(y, w):
        raise ValueError(f"{y!r} is not below {w!r} in Bruhat order")
    found = cauchon_diagrams_for(rs, word, y)
    if len(found) != 1:
        raise RuntimeError(
            f"expected exactly one Cauchon diagram for {y!r} in word {list(word)}, found {len(found)}")
    return CauchonDiagram(word, found[0])


def cauchon_diagram_greedy(rs: RootSystem, word: Sequence[int], y: WeylElt) -> Optional[CauchonDiagram]:
    """Left-to-right greedy scan: keep position j exactly when its letter is a
    left descent of what is still left to produce. Returns None if the scan
    does not end at y (only possible when y is not below w)."""
    word = tuple(word)
    remaining = y
    chosen = []
    for j, letter in enumerate(word, start=1):
        if letter - 1 in remaining.left_descents:
            chosen.append(j)
            remaining = simple_reflection(rs, letter - 1) * remaining
    if not remaining.is_identity():
        return None
    d = frozenset(chosen)
    if not is_cauchon_diagram(rs, word, d):
        return None
    return CauchonDiagram(word, d)


def qyw_lattice(rs: RootSystem, diagram: CauchonDiagram) -> IntLattice:
    """Q_{y,w}: generated by w^D_{(j-1)}(alpha_{i_j}) for j outside D."""
    word = diagram.word
    gens = []
    prefix = identity(rs)
    for j, letter in enumerate(word, start=1):
        if j not in diagram.positions:
            gens.append(prefix.act(rs.simple_root(letter - 1)))
        else:
            prefix = prefix * simple_reflection(rs, letter - 1)
    return IntLattice.from_generators(gens, rs.rank)


def qyw_lattice_from_betas(rs: RootSystem, diagram: CauchonDiagram) -> IntLattice:
    """The same lattice described as the span of beta_j, j outside D."""
    betas = beta_roots(rs, diagram.word)
    return IntLattice.from_generators([betas[j - 1] for j in diagram.complement], rs.rank)


def beta_lattice(rs: RootSystem, word: Sequence[int]) -> IntLattice:
    return IntLattice.from_generators(beta_roots(rs, word), rs.rank)


def ascent_chain(rs: RootSystem, diagram: CauchonDiagram) -> list[WeylElt]:
    """y = y_0 < y_1 < ... < y_{l-|D|} = w with y_m = w^{D u [1, j_m]}."""
    word = diagram.word
    if not is_cauchon_diagram(rs, word, diagram.positions):
        raise ValueError(f"{diagram} is not a Cauchon diagram of {list(word)}")
    chain = [subexpression_product(rs, word, diagram.positions)]
    for jm in diagram.complement:
        dm = diagram.positions | frozenset(range(1, jm + 1))
        chain.append(subexpression_product(rs, word, dm))
    for a, b in zip(chain, chain[1:]):
        if not (a.length < b.length and bruhat_leq(a, b)):
            raise RuntimeError(f"ascent chain is not increasing at {a!r} -> {b!r}")
    return chain


def weight_drop_holds(rs: RootSystem, diagram: CauchonDiagram) -> bool:
    """Check y_m(lam) = y_{m-1}(lam) - <bar w^D_{(j_m)} lam, alpha_{i_{j_m}}^vee> beta_{j_m}
    for every fundamental weight lam and every step of the ascent chain."""
    word = diagram.word
    chain = ascent_chain(rs, diagram)
    betas = beta_roots(rs, word)
    for m, jm in enumerate(diagram.complement, start=1):
        suffix = suffix_product(rs, word, diagram.positions, jm)
        alpha = rs.simple_root(word[jm - 1] - 1)
        beta_wt = rs.root_to_weight(betas[jm - 1])
        for i in range(rs.rank):
            lam = rs.fundamental_weight(i)
            coef = rs.coroot_pairing(suffix.act(lam), alpha)
            if chain[m].act(lam) != chain[m - 1].act(lam) - beta_wt * coef:
                return False
    return True
