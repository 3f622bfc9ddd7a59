"""End-to-end acceptance checks, one test per criterion.

Each test records a one-line PASS/FAIL summary; the lines are printed at the end
of the pytest run (see conftest.py) and when this file is run as a script.
"""

import random
import sys
import time
from math import comb

import pytest

from nichols_rank2.diagram import Diagram, cartan_entry
from nichols_rank2.ffield import Realization
from nichols_rank2.finiteness import brute_force_real_roots, decide_finite, decide_graph
from nichols_rank2.reflection import reflect, reflection_cases
from nichols_rank2.sequences import (clascar_matches, enumerate_aplus, eta,
                                     eta_product, is_aplus_by_matrix, is_aplus_by_reduction, matmul,
                                     root_sequence)
from nichols_rank2.tables import SEARCH_ORDERS, default_assignments, rows_for, search, verify_row
from nichols_rank2.units import UnitGroup

RESULTS = {}

STAR = [
    (1, 1, 1),
    (1, 2, 1, 2),
    (1, 2, 2, 2, 2, 2, 1, 6),
    (1, 2, 3, 1, 6, 1, 2, 3, 1, 6, 1, 2, 3, 1, 6),
    (2, 1, 3, 4, 2, 1, 3, 4, 2, 1, 3, 4),
    (2, 1, 4, 2, 1, 4, 2, 1, 4),
    (2, 1, 5, 1, 2, 4, 2, 1, 5, 1, 2, 4),
    (1, 3, 1, 3, 1, 3),
    (1, 3, 1, 4, 1, 3, 1, 4),
    (1, 3, 1, 5, 1, 3, 1, 5, 1, 3, 1, 5),
]

# finite orbits from criterion 1 and root checks from the criterion 2 scans, read by criterion 6
FINITE_GRAPHS = []
SEARCH_ROOTS = {"checked": 0, "mismatches": []}


def record(num, title, ok, detail):
    RESULTS[num] = f"criterion {num} [{title}]: {'PASS' if ok else 'FAIL'} - {detail}"
    assert ok, RESULTS[num]


def signed(roots):
    return set(roots) | {(-a, -b) for a, b in roots}


def test_criterion_1_table_reproduction():
    start = time.perf_counter()
    checked, failures = 0, []
    for p in (2, 3, 5, 7, 11, 13):
        for row in rows_for(p):
            for vals in default_assignments(row, p):
                rep = verify_row(row, p, vals)
                checked += 1
                if not rep.ok:
                    failures.append(f"p={p} row {row.row_id}: {rep.mismatches}")
                elif rep.verdict is not None:
                    FINITE_GRAPHS.append(rep.verdict.graph)
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 10
    record(1, "exchange-graph reproduction", ok,
           f"{checked} row instances, {len(failures)} mismatches, {elapsed:.2f}s (limit 10s)"
           + (f"; first: {failures[0]}" if failures else ""))


def test_criterion_2_exhaustive_search():
    start = time.perf_counter()
    parts, bad = [], []
    for p, orders in SEARCH_ORDERS.items():
        rep = search(p, orders, check_roots=True)
        parts.append(f"p={p}: {rep.scanned} scanned, {len(rep.finite)} finite")
        SEARCH_ROOTS["checked"] += rep.roots_checked
        SEARCH_ROOTS["mismatches"] += rep.root_mismatches
        if rep.unmatched_finite or rep.instances_not_found or rep.inconsistent:
            bad.append(f"p={p}: unmatched {rep.unmatched_finite[:3]}, "
                       f"not found {rep.instances_not_found[:3]}, inconsistent {rep.inconsistent[:3]}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    record(2, "exhaustive search", ok, "; ".join(parts) + f"; {elapsed:.1f}s (limit 600s)"
           + (f"; {bad}" if bad else ""))


def test_criterion_3_negative_anchors():
    out = []
    ok = True
    for p, n_expected in ((13, 6), (11, 4)):
        g = UnitGroup(p, 6)
        z = g.zeta(2)
        v = decide_finite(Diagram(z, g.minus_one(), -z.inv()))
        good = v.status == "infinite" and v.l == -6 and v.n == n_expected
        ok &= good
        out.append(f"p={p}: {v.status}, n={v.n}, l={v.l}")
    record(3, "negative anchors", ok, "; ".join(out))


def test_criterion_4_aplus_triple_oracle():
    start = time.perf_counter()
    rng = random.Random(20241016)
    counts, disagreements, perturbations = [], 0, 0
    for n in range(2, 11):
        members = enumerate_aplus(n)
        counts.append(len(members))
        if len(members) != comb(2 * (n - 2), n - 2) // (n - 1):
            disagreements += 1
        for s in members:
            if not (is_aplus_by_reduction(s) and is_aplus_by_matrix(s)):
                disagreements += 1
        pool = sorted(members)
        rejected = 0
        while rejected < 10_000 // 9 + 1:
            s = list(rng.choice(pool))
            for _ in range(rng.randint(1, 2)):
                s[rng.randrange(n)] += rng.choice((-2, -1, 1, 2))
            s = tuple(s)
            a, b, c = is_aplus_by_reduction(s), is_aplus_by_matrix(s), s in members
            if not (a == b == c):
                disagreements += 1
            if not c:
                rejected += 1
                perturbations += 1
    elapsed = time.perf_counter() - start
    ok = counts == [1, 1, 2, 5, 14, 42, 132, 429, 1430] and not disagreements and elapsed < 30
    record(4, "A+ triple oracle", ok,
           f"counts {counts}, {perturbations} rejected perturbations, {disagreements} disagreements, "
           f"{elapsed:.2f}s (limit 30s)")


def test_criterion_5_pattern_cover():
    missing = []
    total = 0
    for n in range(3, 13):
        for s in enumerate_aplus(n):
            total += 1
            if not clascar_matches(s):
                missing.append(s)
    star_counts = [len({m.pattern for m in clascar_matches(s)}) for s in STAR]
    star_members = all(is_aplus_by_matrix(s) for s in STAR)
    ok = not missing and star_counts == [1] * len(STAR) and star_members
    record(5, "pattern cover", ok,
           f"{total} sequences (3<=n<=12), {len(missing)} without a pattern; "
           f"distinct patterns per listed sequence {star_counts}")


def test_criterion_6_root_system_oracle():
    if not FINITE_GRAPHS or not SEARCH_ROOTS["checked"]:
        pytest.fail("criterion 6 needs the finite verdicts of criteria 1 and 2; run the whole file")
    points = mismatches = 0
    for g in FINITE_GRAPHS:
        for x in range(len(g)):
            v = decide_graph(g.rebased(x))
            points += 1
            if not v.is_finite or brute_force_real_roots(g, x) != signed(v.positive_roots) \
                    or len(v.positive_roots) != 12 * v.n // v.l:
                mismatches += 1
    mismatches += len(SEARCH_ROOTS["mismatches"])
    record(6, "root-system oracle", mismatches == 0,
           f"{len(FINITE_GRAPHS)} table orbits ({points} points) and {SEARCH_ROOTS['checked']} "
           f"finite search points, {mismatches} mismatches")


def test_criterion_7_structural_invariants():
    failures = []
    diagrams = 0
    for p in (2, 3, 5, 7):
        for n in range(1, 13):
            if n % p == 0:
                continue
            g = UnitGroup(p, n)
            us = g.torsion_units()
            for a in us:
                for b in us:
                    for c in us:
                        d = Diagram(a, b, c)
                        diagrams += 1
                        for i in (1, 2):
                            e = reflect(d, i)
                            if reflect(e, i) != d:
                                failures.append(f"involution {d} at {i}")
                            if cartan_entry(e.vertex(i), e.q0) != cartan_entry(d.vertex(i), d.q0):
                                failures.append(f"cartan row {d} at {i}")
                            if len(set(reflection_cases(d, i).values())) != 1:
                                failures.append(f"case overlap {d} at {i}")
    for x in range(-10, 11):
        for y in range(-10, 11):
            if matmul(eta(x), eta(y)) != eta_product([x + 1, 1, y + 1]):
                failures.append(f"eta identity at {(x, y)}")
    rng = random.Random(7)
    for _ in range(500):
        c = [rng.randint(-3, 7) for _ in range(rng.randint(1, 8))]
        betas = root_sequence(c, 20)
        prev = (0, -1)
        for k in range(1, 20):
            ck = c[(k - 1) % len(c)]
            want = (ck * betas[k - 1][0] - prev[0], ck * betas[k - 1][1] - prev[1])
            if betas[k] != want:
                failures.append(f"beta recurrence {c} at {k}")
            prev = betas[k - 1]
    qnum_checks = 0
    for p in (2, 3, 5, 7):
        for n in range(1, 25):
            if n % p == 0:
                continue
            r = Realization(UnitGroup(p, n))
            for k in range(n):
                u = r.group.zeta(k)
                for m in range(31):
                    qnum_checks += 1
                    if u.qnum_is_zero(m) != (r.qnum(u, m) == r.field.zero):
                        failures.append(f"qnum p={p} N={n} k={k} m={m}")
    record(7, "structural invariants", not failures,
           f"{diagrams} diagrams, {qnum_checks} quantum-integer checks, {len(failures)} failures"
           + (f"; first: {failures[0]}" if failures else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
