"""Acceptance suite: one check per numbered criterion, each printing a
single PASS/FAIL line. Run with ``pytest tests/test_acceptance.py -v`` or
directly with ``python tests/test_acceptance.py``."""

import random
import sys
import time
from collections import defaultdict
from itertools import combinations, product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import (  # noqa: E402
    TORSION_RECORDS, cauchon_by_definition, rational_kernel, subword_leq,
)
from qschubert.cauchon import cauchon_diagram_for, qyw_lattice, qyw_lattice_from_betas, beta_lattice  # noqa: E402
from qschubert.intlin import IntLattice, kernel_basis, rational_rank, smith_normal_form, matmul  # noqa: E402
from qschubert.qtorus import TorusMonomial, build_torus, center_lattice, multiply  # noqa: E402
from qschubert.rootsys import RootVec, WeightVec, build_root_system  # noqa: E402
from qschubert.strata import (  # noqa: E402
    StrataContext, catenarity_check, sandwich_lattice, stratification_report, stratum_dimension,
    stratum_lattice, uniparameter_dimension,
)
from qschubert.twist import (  # noqa: E402
    Bicharacter, ExponentScalar, RelationsLattice, torsion_free_check, torsion_generators,
    torus_character,
)
from qschubert.weyl import (  # noqa: E402
    bruhat_covers, enumerate_group, fixed_weight_indices, from_word, longest_element,
    lower_interval, support,
)


def _kernel_dim_oracle(w, y):
    n = w.rs.rank
    mat = [[w.matrix[i][j] + y.matrix[i][j] for j in range(n)] for i in range(n)]
    return len(rational_kernel(mat, n))


def _q_twist(n, rng):
    table = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-3, 3)
            table[i][j], table[j][i] = v, -v
    return Bicharacter.q_power(range(1, n + 1), table)


ONE_PARAM = Bicharacter((1, 2), ("p",), (((0, 0), (0, 1)), ((0, -1), (0, 0))))


def criterion_1():
    start = time.perf_counter()
    bad, total = [], 0
    cases = [(n, w) for n in ("A2", "B2", "G2") for w in enumerate_group(build_root_system(n))]
    cases += [(n, longest_element(build_root_system(n))) for n in ("A3", "B3")]
    for name, w in cases:
        rs = build_root_system(name)
        ctx = StrataContext(rs, w)
        for y in lower_interval(w):
            total += 1
            if stratum_dimension(rs, w, y, ctx=ctx) != uniparameter_dimension(w, y):
                bad.append((name, w, y))
    secs = time.perf_counter() - start
    return not bad and secs < 60, f"{total} pairs, {len(bad)} mismatches, {secs:.1f}s (limit 60s)"


def criterion_2():
    start = time.perf_counter()
    bad, total = [], 0
    for name in ("A2", "B2", "G2", "A3"):
        rs = build_root_system(name)
        word = longest_element(rs).reduced_word
        counts = defaultdict(int)
        for bits in product((0, 1), repeat=len(word)):
            pos = frozenset(j + 1 for j, b in enumerate(bits) if b)
            if cauchon_by_definition(rs, word, pos):
                counts[from_word(rs, [word[j - 1] for j in sorted(pos)])] += 1
        for y in lower_interval(longest_element(rs)):
            total += 1
            if counts[y] != 1:
                bad.append((name, y, counts[y]))
    secs = time.perf_counter() - start
    return not bad and secs < 120, f"{total} elements, {len(bad)} without a unique diagram, {secs:.1f}s"


def criterion_3():
    bad, total = [], 0
    for name in ("A3", "B3"):
        rs = build_root_system(name)
        w0 = longest_element(rs)
        for y in lower_interval(w0):
            total += 1
            d = cauchon_diagram_for(rs, w0.reduced_word, y)
            if qyw_lattice(rs, d).basis != qyw_lattice_from_betas(rs, d).basis:
                bad.append((name, y))
    return not bad, f"{total} pairs, {len(bad)} Hermite form mismatches"


def criterion_4():
    rs = build_root_system("A1")
    s1 = from_word(rs, (1,))
    a1 = [stratum_dimension(rs, s1, y) for y in lower_interval(s1)]
    rs2 = build_root_system("A2")
    w0 = longest_element(rs2)
    ys = lower_interval(w0)
    a2 = [stratum_dimension(rs2, w0, y) for y in ys]
    oracle = [_kernel_dim_oracle(w0, y) for y in ys]
    ok = a1 == [1, 0] and a2[0] == 1 and a2[-1] == 0 and a2 == oracle
    return ok, f"A1 dims {a1}; A2 dims {a2}, rational-kernel oracle {oracle}"


def criterion_5():
    bad_u, total_u = [], 0
    for name in ("A2", "B2", "A3"):
        rs = build_root_system(name)
        w0 = longest_element(rs)
        for y in lower_interval(w0):
            total_u += 1
            t = build_torus(rs, cauchon_diagram_for(rs, w0.reduced_word, y))
            if center_lattice(t).rank != uniparameter_dimension(w0, y):
                bad_u.append((name, y))
    rng = random.Random(20240601)
    bad_t, twists, total_t = [], 0, 0
    for name in ("A2", "B2"):
        rs = build_root_system(name)
        w0 = longest_element(rs)
        for _ in range(15):
            twists += 1
            r = _q_twist(2, rng)
            ctx = StrataContext(rs, w0, r)
            for y in lower_interval(w0):
                total_t += 1
                t = build_torus(rs, ctx.diagram(y), r)
                if center_lattice(t).rank != stratum_dimension(rs, w0, y, ctx=ctx):
                    bad_t.append((name, r.table, y))
    ok = not bad_u and not bad_t and twists >= 25
    return ok, (f"untwisted {total_u} pairs, {len(bad_u)} mismatches; "
                f"{twists} q-power twists, {total_t} pairs, {len(bad_t)} mismatches")


def _chain_lengths(elts, covers, a, b):
    """Shortest and longest saturated chain from elts[a] to elts[b] via covers."""
    succ = defaultdict(list)
    for x, y in covers:
        succ[x].append(y)
    memo = {}

    def walk(x):
        if x == b:
            return (0, 0)
        if x in memo:
            return memo[x]
        res = [walk(y) for y in succ[x]]
        res = [r for r in res if r is not None]
        memo[x] = (min(r[0] for r in res) + 1, max(r[1] for r in res) + 1) if res else None
        return memo[x]
    return walk(a)


def criterion_6():
    rs = build_root_system("A3")
    w0 = longest_element(rs)
    elts = lower_interval(w0)
    reports = stratification_report(rs, w0)
    problems = []
    by_word = {r.y_word: r for r in reports}
    for y in elts:
        rep = by_word[y.reduced_word]
        if rep.height + rep.gk_codim != 6:
            problems.append(f"height+gkcodim at {y!r}")
        below = {x.reduced_word for x in elts if subword_leq(rs, x, y)}
        if set(rep.closure_down) != below:
            problems.append(f"closure at {y!r}")
    covers = bruhat_covers(elts)
    for a, b in product(range(len(elts)), repeat=2):
        if elts[a].reduced_word in set(by_word[elts[b].reduced_word].closure_down) and a != b:
            lo, hi = _chain_lengths(elts, covers, a, b)
            if lo != hi or lo != elts[b].length - elts[a].length:
                problems.append(f"chains {elts[a]!r} < {elts[b]!r}")
    if not catenarity_check(rs, w0):
        problems.append("catenarity_check")
    return not problems, f"{len(elts)} primes, {len(covers)} covers, problems: {problems or 'none'}"


def criterion_7():
    bad, total = [], 0
    for name in ("A2", "B2"):
        rs = build_root_system(name)
        w0 = longest_element(rs)
        for label, r in (("trivial", None), ("r(a1,a2)=p", ONE_PARAM)):
            ctx = StrataContext(rs, w0, r)
            for y in lower_interval(w0):
                total += 1
                lat = stratum_lattice(rs, w0, y, ctx=ctx)
                lp = sandwich_lattice(rs, w0, y, ctx=ctx)
                if not lat.issubset(lp) or lat.rank != lp.rank:
                    bad.append((name, label, y))
    return not bad, f"{total} pairs, {len(bad)} rank mismatches"


def criterion_8():
    rs = build_root_system("A3")
    bad = []
    for w in enumerate_group(rs):
        if set(range(1, 4)) - support(w) != fixed_weight_indices(w):
            bad.append(("support", w))
        span = IntLattice.from_generators([rs.simple_root(i - 1) for i in support(w)], 3)
        if beta_lattice(rs, w.reduced_word) != span:
            bad.append(("grading", w))
    return not bad, f"24 elements, {len(bad)} failures"


def criterion_9():
    results = []
    for rec in TORSION_RECORDS:
        rs = build_root_system(rec["type"])
        sup = sorted(set(rec["word"]))
        m = 1 + len(rec["params"])
        table = [[(0,) * m for _ in sup] for _ in sup]
        for (i, j), e in rec["r"].items():
            table[sup.index(i)][sup.index(j)] = tuple(e)
            table[sup.index(j)][sup.index(i)] = tuple(-x for x in e)
        r = Bicharacter(tuple(sup), rec["params"], tuple(map(tuple, table)))
        rel = RelationsLattice.from_vectors(rec["relations"], m)
        gens = [g.exps for g in torsion_generators(rs, rec["word"], r)]
        got = torsion_free_check(rs, rec["word"], r, rel)
        results.append(gens == rec["generators"] and got == rec["torsion_free"])
    generic_ok = all(
        torsion_free_check(build_root_system(n), longest_element(build_root_system(n)).reduced_word,
                           ONE_PARAM)
        for n in ("A2", "B2", "G2"))
    ok = all(results) and generic_ok
    return ok, (f"{sum(results)}/{len(results)} hand records match; "
                f"generic A2/B2/G2 torsion free: {generic_ok}")


def criterion_10():
    n_inst = 1000
    rng = random.Random(99)
    fails = defaultdict(int)
    rs = build_root_system("B3")
    w0 = longest_element(rs)
    g2 = build_root_system("G2")
    torus = build_torus(g2, cauchon_diagram_for(g2, longest_element(g2).reduced_word,
                                                from_word(g2, ())), ONE_PARAM)
    for _ in range(n_inst):
        # bicharacter skew symmetry
        table = [[(0, 0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i + 1, 3):
                v = (rng.randint(-4, 4), rng.randint(-4, 4))
                table[i][j], table[j][i] = v, (-v[0], -v[1])
        r = Bicharacter((1, 2, 3), ("p",), tuple(map(tuple, table)))
        a = [rng.randint(-5, 5) for _ in range(3)]
        b = [rng.randint(-5, 5) for _ in range(3)]
        if r.eval(a, b) != -r.eval(b, a) or not r.eval(a, a).is_one():
            fails["skew"] += 1
        # torus character additivity
        m1, m2 = (WeightVec([rng.randint(-3, 3) for _ in range(3)]) for _ in range(2))
        t1, t2 = (RootVec([rng.randint(-3, 3) for _ in range(3)]) for _ in range(2))
        if torus_character(rs, w0, m1 + m2, t1 + t2, r) != \
                torus_character(rs, w0, m1, t1, r) + torus_character(rs, w0, m2, t2, r):
            fails["additivity"] += 1
        # torus associativity
        x, y, z = (TorusMonomial(tuple(rng.randint(-2, 2) for _ in range(6)),
                                 ExponentScalar((rng.randint(-2, 2), rng.randint(-2, 2))))
                   for _ in range(3))
        if multiply(torus, multiply(torus, x, y), z) != multiply(torus, x, multiply(torus, y, z)):
            fails["associativity"] += 1
        # SNF and kernel rank identities
        nr, nc = rng.randint(1, 4), rng.randint(1, 4)
        mat = [[rng.randint(-6, 6) for _ in range(nc)] for _ in range(nr)]
        diag, u, v = smith_normal_form(mat)
        d = matmul(matmul(u, mat), v)
        nz = [x for x in diag if x]
        rk = rational_rank(mat)
        if (any(d[i][j] != (diag[i] if i == j else 0) for i in range(nr) for j in range(nc))
                or len(nz) != rk or kernel_basis(mat).rank != nc - rk
                or any(q % p for p, q in zip(nz, nz[1:]))):
            fails["snf/kernel"] += 1
    return not fails, f"{n_inst} instances per property, failures: {dict(fails) or 'none'}"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for k, fn in enumerate(CRITERIA, start=1):
        ok, detail = fn()
        print(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} ({detail})")
        status |= not ok
    sys.exit(status)
