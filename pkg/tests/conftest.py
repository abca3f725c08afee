"""Independent oracles shared by the test modules.

Nothing here calls the Smith/Hermite machinery or the Bruhat lifting
recursion; each oracle takes a different computational path from the code
it checks.
"""

from fractions import Fraction
from itertools import combinations, product

import pytest

from qschubert.rootsys import build_root_system
from qschubert.weyl import from_word


def rational_rank(rows):
    """Rank over Q by Fraction Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def rational_kernel(rows, ncols):
    """Basis of the rational null space of rows (list of Fraction vectors)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        m[rank] = [x / m[rank][c] for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def determinantal_divisors(mat):
    """gcd of all k x k minors, k = 1..min(r, c), by cofactor expansion."""
    def det(a):
        if len(a) == 1:
            return a[0][0]
        return sum((-1) ** j * a[0][j] * det([row[:j] + row[j + 1:] for row in a[1:]])
                   for j in range(len(a)))
    from math import gcd
    r, c = len(mat), len(mat[0])
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, det([[mat[i][j] for j in cols] for i in rows]))
        out.append(g)
    return out


def perm_of_word(word, n):
    """Permutation of 1..n+1 (one-line notation) for a word in type A_n,
    s_i swapping positions i and i+1, product read left to right."""
    p = list(range(1, n + 2))
    for i in word:
        p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def perm_bruhat_leq(u, v):
    """Tableau criterion: sorted prefixes of u are entrywise <= those of v."""
    for k in range(1, len(u)):
        a, b = sorted(u[:k]), sorted(v[:k])
        if any(x > y for x, y in zip(a, b)):
            return False
    return True


def subword_leq(rs, y, w):
    """y <= w iff some subword of one reduced word of w multiplies to y."""
    word = w.reduced_word
    for k in range(len(word) + 1):
        for pos in combinations(range(len(word)), k):
            if from_word(rs, [word[p] for p in pos]) == y:
                return True
    return False


def cauchon_by_definition(rs, word, positions):
    """Direct check: for j < l, l(s_{i_j} * bar w) > l(bar w) where bar w is
    the product of the chosen letters strictly right of j."""
    l = len(word)
    for j in range(1, l):
        suffix = from_word(rs, [word[k - 1] for k in range(j + 1, l + 1) if k in positions])
        if from_word(rs, [word[j - 1]]).__mul__(suffix).length < suffix.length:
            return False
    return True


def brute_force_cauchon(rs, word, y):
    out = []
    for bits in product((0, 1), repeat=len(word)):
        pos = frozenset(j + 1 for j, b in enumerate(bits) if b)
        if from_word(rs, [word[j - 1] for j in sorted(pos)]) == y and cauchon_by_definition(rs, word, pos):
            out.append(pos)
    return out


def n_yw_by_search(rs, basis, bound=12):
    """Least n with every functional on span(basis) of the form <lam, .>,
    lam in (1/n)P, found by searching integer weight vectors in a box."""
    k = len(basis)
    if k == 0:
        return 1
    d = rs.symmetrizers
    images = {}
    for a in product(range(-bound, bound + 1), repeat=rs.rank):
        images.setdefault(tuple(sum(a[j] * d[j] * b[j] for j in range(rs.rank)) for b in basis), a)
    for n in range(1, 50):
        targets = [tuple(n * int(t == s) for t in range(k)) for s in range(k)]
        if all(t in images for t in targets):
            return n
    raise AssertionError("search bound too small")


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A2")


@pytest.fixture(scope="session")
def b2():
    return build_root_system("B2")


@pytest.fixture(scope="session")
def g2():
    return build_root_system("G2")


@pytest.fixture(scope="session")
def a3():
    return build_root_system("A3")


# Hand-computed torsion records. In each case the torsion generators are
# r(beta_i, beta_j) q^{<beta_i, beta_j>} for i < j; the quotient
# (generated + relations) / relations is Z^a x (Z / e_1) x ... with e the
# elementary divisors listed here, worked out by hand.
TORSION_RECORDS = [
    {
        "name": "A2 12 r=p q^-1 with p^2=1",
        "type": "A2", "word": (1, 2), "params": ("p",),
        "r": {(1, 2): (-1, 1)}, "relations": [(0, 2)],
        # beta = (a1, a1+a2); r(a1, a1+a2) = p q^-1, <a1, a1+a2> = 1
        "generators": [(0, 1)],
        "quotient_divisors": [2], "torsion_free": False,
    },
    {
        "name": "A2 12 r=p with p^2=1",
        "type": "A2", "word": (1, 2), "params": ("p",),
        "r": {(1, 2): (0, 1)}, "relations": [(0, 2)],
        # generator p q; <(1,1), (0,2)> / <(0,2)> is Z, no torsion
        "generators": [(1, 1)],
        "quotient_divisors": [], "torsion_free": True,
    },
    {
        "name": "A3 13 r=p with p^2=1",
        "type": "A3", "word": (1, 3), "params": ("p",),
        "r": {(1, 3): (0, 1)}, "relations": [(0, 2)],
        # alpha_1 and alpha_3 are orthogonal, so the generator is p alone
        "generators": [(0, 1)],
        "quotient_divisors": [2], "torsion_free": False,
    },
    {
        "name": "A2 w0 generic p",
        "type": "A2", "word": (1, 2, 1), "params": ("p",),
        "r": {(1, 2): (0, 1)}, "relations": [],
        # betas a1, a1+a2, a2; every pair has r = p, and the pairings
        # <b1,b2>, <b1,b3>, <b2,b3> are 1, -1, 1
        "generators": [(1, 1), (-1, 1), (1, 1)],
        "quotient_divisors": [], "torsion_free": True,
    },
]
