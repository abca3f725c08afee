"""
Weyl group elements as integer matrices on simple-root coordinates.

Lengths, reduced words, Bruhat order, lower intervals, and supports.
Reduced words are tuples of 1-based letters, as printed on the command line.
"""

from __future__ import annotations

__all__ = [
    "WeylElt", "ReducedWord",
    "identity", "simple_reflection", "from_word", "is_reduced", "parse_word",
    "format_word", "longest_element", "enumerate_group", "bruhat_leq",
    "lower_interval", "support", "fixed_weight_indices", "reduced_words",
    "bruhat_covers", "GROUP_ENUMERATION_LIMIT",
]

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

from .intlin import matmul, matvec, solve_rational
from .rootsys import RootSystem, RootVec, WeightVec

ReducedWord = tuple[int, ...]

GROUP_ENUMERATION_LIMIT = 2000


@dataclass(frozen=True, eq=False)
class WeylElt:
    rs: RootSystem = field(repr=False)
    matrix: tuple[tuple[int, ...], ...]

    def __eq__(self, other):
        if not isinstance(other, WeylElt):
            return NotImplemented
        return self.matrix == other.matrix and self.rs.lie_type == other.rs.lie_type

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other: WeylElt) -> WeylElt:
        if not isinstance(other, WeylElt):
            return NotImplemented
        self._check(other)
        return WeylElt(self.rs, _freeze(matmul(self.matrix, other.matrix)))

    def __repr__(self):
        return f"WeylElt({self.rs.lie_type}, {format_word(self.reduced_word)})"

    @cached_property
    def inverse(self) -> WeylElt:
        # w preserves the form B, so w^{-1} = B^{-1} w^T B
        b = self.rs.form
        wt_b = matmul([list(c) for c in zip(*self.matrix)], b)
        cols = []
        for j in range(self.rs.rank):
            sol = solve_rational(b, [row[j] for row in wt_b])
            cols.append([int(x) for x in sol])
        return WeylElt(self.rs, _freeze([list(r) for r in zip(*cols)]))

    @cached_property
    def weight_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Action on fundamental-weight coordinates: C w C^{-1}."""
        c = self.rs.cartan
        r = self.rs.rank
        cw = matmul(c, self.matrix)
        # M C = C w  =>  C^T M^T = (C w)^T
        ct = [list(col) for col in zip(*c)]
        rows = []
        for i in range(r):
            sol = solve_rational(ct, list(cw[i]))
            rows.append([int(x) for x in sol])
        return _freeze(rows)

    def act(self, v: Union[RootVec, WeightVec]):
        self.rs._check(v)
        if isinstance(v, WeightVec):
            return WeightVec(matvec(self.weight_matrix, v))
        return RootVec(matvec(self.matrix, v))

    def act_root(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(matvec(self.matrix, x))

    @cached_property
    def length(self) -> int:
        rs = self.rs
        return sum(1 for a in rs.positive_roots if rs.is_negative(matvec(self.matrix, a)))

    @cached_property
    def left_descents(self) -> tuple[int, ...]:
        """0-based i with l(s_i w) < l(w), i.e. w^{-1}(alpha_i) < 0."""
        inv = self.inverse.matrix
        return tuple(i for i in range(self.rs.rank) if self.rs.is_negative([row[i] for row in inv]))

    @cached_property
    def right_descents(self) -> tuple[int, ...]:
        """0-based i with l(w s_i) < l(w), i.e. w(alpha_i) < 0."""
        m = self.matrix
        return tuple(i for i in range(self.rs.rank) if self.rs.is_negative([row[i] for row in m]))

    @cached_property
    def reduced_word(self) -> ReducedWord:
        """Lexicographically smallest reduced word (smallest left descent first)."""
        word = []
        x = self
        while x.left_descents:
            i = x.left_descents[0]
            word.append(i + 1)
            x = simple_reflection(self.rs, i) * x
        return tuple(word)

    def is_identity(self) -> bool:
        return self.length == 0

    def _check(self, other: WeylElt) -> None:
        if self.rs.lie_type != other.rs.lie_type:
            raise ValueError(f"elements of different Weyl groups: {self.rs} and {other.rs}")


def _freeze(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


@lru_cache(maxsize=None)
def identity(rs: RootSystem) -> WeylElt:
    return WeylElt(rs, tuple(tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)))


@lru_cache(maxsize=None)
def simple_reflection(rs: RootSystem, i: int) -> WeylElt:
    """s_i for a 0-based index i."""
    r = rs.rank
    if not 0 <= i < r:
        raise ValueError(f"simple reflection index {i + 1} out of range 1..{r}")
    m = [[int(a == b) for b in range(r)] for a in range(r)]
    # column j is s_i(alpha_j) = alpha_j - c_ij alpha_i
    for j in range(r):
        m[i][j] -= rs.cartan[i][j]
    return WeylElt(rs, _freeze(m))


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElt:
    """Product s_{i_1} ... s_{i_k} of a word with 1-based letters."""
    x = identity(rs)
    for letter in word:
        if not 1 <= letter <= rs.rank:
            raise ValueError(f"letter {letter} out of range 1..{rs.rank}")
        x = x * simple_reflection(rs, letter - 1)
    return x


def is_reduced(rs: RootSystem, word: Sequence[int]) -> bool:
    return from_word(rs, word).length == len(word)


def parse_word(text: str) -> ReducedWord:
    """Parse "1 2 1" (also "1,2,1", "e" or "" for the identity)."""
    text = text.strip()
    if text in ("", "e"):
        return ()
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError:
        raise ValueError(f"cannot parse word {text!r}; expected space-separated integers") from None


def format_word(word: Sequence[int]) -> str:
    return " ".join(map(str, word)) if word else "e"


@lru_cache(maxsize=None)
def longest_element(rs: RootSystem) -> WeylElt:
    w = identity(rs)
    while True:
        ascent = next((i for i in range(rs.rank) if i not in w.right_descents), None)
        if ascent is None:
            return w
        w = w * simple_reflection(rs, ascent)


def enumerate_group(rs: RootSystem, limit: int = GROUP_ENUMERATION_LIMIT) -> list[WeylElt]:
    """All elements of W, sorted by (length, reduced word)."""
    e = identity(rs)
    seen = {e}
    queue = deque([e])
    gens = [simple_reflection(rs, i) for i in range(rs.rank)]
    while queue:
        x = queue.popleft()
        for s in gens:
            y = x * s
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise ValueError(
                        f"W({rs.lie_type}) has more than {limit} elements; "
                        "use lower_interval instead of full enumeration")
                queue.append(y)
    return sorted(seen, key=lambda x: (x.length, x.reduced_word))


@lru_cache(maxsize=1 << 16)
def bruhat_leq(y: WeylElt, w: WeylElt) -> bool:
    """y <= w in Bruhat order, via the lifting recursion on left descents."""
    y._check(w)
    if y.length > w.length:
        return False
    if w.length == 0:
        return y.length == 0
    s = simple_reflection(w.rs, w.left_descents[0])
    sy = s * y
    return bruhat_leq(sy if sy.length < y.length else y, s * w)


def lower_interval(w: WeylElt) -> list[WeylElt]:
    """W^{<= w}, closed downward by deleting single letters of reduced words.

    Sorted by (length, reduced word).
    """
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        word = x.reduced_word
        for k in range(len(word)):
            y = from_word(x.rs, word[:k] + word[k + 1:])
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen, key=lambda x: (x.length, x.reduced_word))


def support(w: WeylElt) -> frozenset[int]:
    """1-based indices of the simple reflections occurring in a reduced word."""
    return frozenset(w.reduced_word)


def fixed_weight_indices(w: WeylElt) -> frozenset[int]:
    """1-based i with w(omega_i) = omega_i."""
    m = w.weight_matrix
    r = w.rs.rank
    return frozenset(i + 1 for i in range(r)
                     if all(m[k][i] == int(k == i) for k in range(r)))


def _braid_order(rs: RootSystem, i: int, j: int) -> int:
    p = rs.cartan[i][j] * rs.cartan[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}[p]


def reduced_words(w: WeylElt, cap: int = 10_000) -> list[ReducedWord]:
    """All reduced words of w by braid-move closure, at most ``cap`` of them."""
    rs = w.rs
    start = w.reduced_word
    seen = {start}
    queue = deque([start])
    while queue:
        word = queue.popleft()
        n = len(word)
        for k in range(n - 1):
            a, b = word[k], word[k + 1]
            if a == b:
                continue
            m = _braid_order(rs, a - 1, b - 1)
            if k + m > n:
                continue
            seg = word[k:k + m]
            if all(seg[t] == (a if t % 2 == 0 else b) for t in range(m)):
                swapped = tuple(b if t % 2 == 0 else a for t in range(m))
                new = word[:k] + swapped + word[k + m:]
                if new not in seen:
                    if len(seen) >= cap:
                        return sorted(seen)
                    seen.add(new)
                    queue.append(new)
    return sorted(seen)


def bruhat_covers(elements: Sequence[WeylElt]) -> list[tuple[int, int]]:
    """Hasse diagram of the Bruhat order restricted to ``elements``.

    Returns index pairs (a, b) with elements[a] < elements[b] and nothing in
    between. Computed from the order relation alone, without using lengths.
    """
    n = len(elements)
    less = [[a != b and bruhat_leq(elements[a], elements[b]) for b in range(n)] for a in range(n)]
    covers = []
    for a in range(n):
        for b in range(n):
            if less[a][b] and not any(less[a][c] and less[c][b] for c in range(n)):
                covers.append((a, b))
    return covers

