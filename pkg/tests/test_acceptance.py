"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
``python3 tests/test_acceptance.py`` for a standalone report.
"""

from __future__ import annotations

import random
import time
from itertools import combinations

import numpy as np
import pytest

from corpus import FIXTURES
from pseudosolvable import cyclo
from pseudosolvable.constructor import roundtrip
from pseudosolvable.graph import (
    SimpleGraph,
    ThreeColoring,
    complement,
    constrained_three_coloring,
    has_directed_3path,
    orient_by_coloring,
)
from pseudosolvable.groups import (
    SemidirectSpec,
    a5,
    brute_force_semidirect,
    head_group,
    match_classes,
    prime_graph,
    semidirect_prime_graph,
    sl25,
    two_s5,
)
from pseudosolvable.heads import GROUP_OF, head_rep, profile_mismatches
from pseudosolvable.patterns import classify, validate_certificate

RNG_SEED = 20261015
# collected for the terminal summary, since pytest captures prints
LINES: list[str] = []


def report(label: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} {label}: {detail}"
    LINES.append(line)
    print(line)
    assert ok, detail


def edge_set(g: SimpleGraph) -> set[frozenset]:
    return {frozenset(e) for e in g.edge_list()}


def all_colorings(g: SimpleGraph) -> np.ndarray:
    """Every proper 3-coloring as rows of an (m, n) array with values 0..2."""
    n = len(g.vertices)
    grid = np.indices((3,) * n, dtype=np.int8).reshape(n, -1).T if n else np.zeros((1, 0), dtype=np.int8)
    keep = np.ones(len(grid), dtype=bool)
    for u, v in g.edge_list():
        keep &= grid[:, g.position(u)] != grid[:, g.position(v)]
    return grid[keep]


def random_graph(rng: random.Random, n: int, p: float) -> SimpleGraph:
    vs = [f"v{i}" for i in range(n)]
    return SimpleGraph.build(vs, [e for e in combinations(vs, 2) if rng.random() < p])


# ---------------------------------------------------------------------------


def test_criterion_1_table_reproduction():
    start = time.perf_counter()
    mismatches = 0
    cells = 0
    for group in cyclo.GROUPS:
        got = cyclo.fixed_point_table(group)
        want = cyclo.expected_pattern(group)
        for g_row, w_row in zip(got, want):
            cells += len(w_row)
            mismatches += sum(a != b for a, b in zip(g_row, w_row))
    shapes = [(len(cyclo.load_table(g).names), len(cyclo.load_table(g).classes)) for g in cyclo.GROUPS]
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and shapes == [(5, 5), (9, 9), (12, 12)] and elapsed < 1.0
    report("criterion 1 (table reproduction)", ok, f"{mismatches} mismatches over {cells} cells, {elapsed:.2f}s")


def test_criterion_2_matrix_character_cross_validation():
    start = time.perf_counter()
    cases = [("t4", 7), ("rho2", 11)] + [(n, 241) for n in ("rho6", "rho7", "rho9", "gamma3", "gamma6")]
    bad = []
    for name, r in cases:
        group = head_group(GROUP_OF[name])
        rep = head_rep(name, r)
        if not rep.is_homomorphism_on(group):
            bad.append(f"{name}/F{r} not a homomorphism")
        miss = profile_mismatches(rep, group, name)
        if miss:
            bad.append(f"{name}/F{r} differs on {miss}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10.0
    detail = "; ".join(bad) if bad else f"{len(cases)} reps agree on every class"
    report("criterion 2 (matrix/character cross-validation)", ok, f"{detail}, {elapsed:.2f}s")


def test_criterion_3_oracle_equivalence():
    start = time.perf_counter()
    results = []
    for name, r, group, size in (("t4", 7, a5(), 144_060), ("rho2", 11, sl25(), 14_520)):
        spec = SemidirectSpec(head_rep(name, r), group)
        n_elems = r ** spec.rep.degree * group.order
        fast = semidirect_prime_graph(spec)
        slow = brute_force_semidirect(spec)
        results.append((name, n_elems == size and fast == slow, n_elems))
    elapsed = time.perf_counter() - start
    ok = all(r[1] for r in results) and elapsed < 60.0
    detail = ", ".join(f"{n}: {m} elements {'equal' if e else 'DIFFER'}" for n, e, m in results)
    report("criterion 3 (oracle equivalence)", ok, f"{detail}, {elapsed:.2f}s")


def test_criterion_4_known_prime_graphs():
    start = time.perf_counter()
    two_three_five = {frozenset(("2", "3")), frozenset(("2", "5"))}
    checks = {
        "A5 edgeless": edge_set(prime_graph(a5())) == set() and prime_graph(a5()).vertices == ("2", "3", "5"),
        "SL(2,5)": edge_set(prime_graph(sl25())) == two_three_five,
        "2.S5": edge_set(prime_graph(two_s5())) == two_three_five,
    }
    g, table = two_s5(), cyclo.load_table("TwoS5")
    cols = match_classes(g, table)
    by_column = [None] * len(table.classes)
    for c in g.classes:
        by_column[cols[c.index]] = c.order
    checks["2.S5 profile"] = by_column == [1, 6, 2, 3, 6, 5, 4, 8, 10, 8, 6, 2] == [c.order for c in table.classes]
    elapsed = time.perf_counter() - start
    failed = [k for k, v in checks.items() if not v]
    ok = not failed and elapsed < 5.0
    report("criterion 4 (known prime graphs)", ok, f"{'failed: ' + ', '.join(failed) if failed else 'all four hold'}, {elapsed:.2f}s")


def test_criterion_5_classifier_fixture_corpus():
    start = time.perf_counter()
    wrong = []
    kinds = set()
    for fx in FIXTURES:
        v = classify(fx.gamma)
        got = v.category or "Unrealizable"
        if got != fx.expected or (fx.heads and v.certificate.heads != fx.heads):
            wrong.append(fx.name)
        if v.realizable:
            validate_certificate(v.certificate, fx.gbar)
        kinds.add(got)
    elapsed = time.perf_counter() - start
    ok = len(FIXTURES) >= 12 and not wrong and len(kinds) == 4 and elapsed < 5.0
    detail = f"{len(FIXTURES)} fixtures, {len(wrong)} misclassified, certificates re-validate"
    report("criterion 5 (classifier fixture corpus)", ok, f"{detail}, {elapsed:.2f}s")


@pytest.mark.xfail(strict=True, reason="no graph admits both head families; see the decisions ledger")
def test_criterion_5_both_admissible_fixture():
    # a triangle's apex on the alpha-beta edge always has the {3,5} adjacencies,
    # which is a single-family shape, so the search below comes back empty
    start = time.perf_counter()
    found = None
    for n in range(4, 7):
        vs = [str(i) for i in range(n)]
        pairs = list(combinations(vs, 2))
        for mask in range(1 << len(pairs)):
            gamma = SimpleGraph.build(vs, [p for i, p in enumerate(pairs) if mask >> i & 1])
            v = classify(gamma)
            if v.realizable and v.certificate.heads == "both":
                found = gamma
                break
        if found:
            break
    elapsed = time.perf_counter() - start
    report(
        "criterion 5 (both-admissible fixture)",
        found is not None,
        f"{'found ' + str(found.edge_list()) if found else 'no both-admissible graph on 4-6 vertices'}, {elapsed:.2f}s",
    )


def test_criterion_6_roundtrip():
    start = time.perf_counter()
    fixtures = [f for f in FIXTURES if f.expected != "Unrealizable" and len(f.vertices) <= 7]
    failed = []
    for fx in fixtures:
        rep = roundtrip(fx.gamma)
        if not (rep.passed and rep.witness is not None and rep.witness.relabeled().same_as(fx.gamma)):
            failed.append(fx.name)
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 300.0
    detail = f"{len(fixtures) - len(failed)}/{len(fixtures)} realizable fixtures reproduce their graph"
    report("criterion 6 (roundtrip)", ok, f"{detail}, {elapsed:.2f}s")


def test_criterion_7_invariant_suites():
    start = time.perf_counter()
    rng = random.Random(RNG_SEED)
    failures = []

    samples = [random_graph(rng, rng.randint(0, 12), rng.choice([0.2, 0.35, 0.5])) for _ in range(60)]
    if any(complement(complement(g)) != g for g in samples):
        failures.append("complement involution")

    for g in samples:
        found = constrained_three_coloring(g)
        truth = len(all_colorings(g)) > 0
        if (found is not None) != truth or (found is not None and not found.is_proper_for(g)):
            failures.append(f"coloring completeness on {len(g.vertices)} vertices")
            break

    for group in cyclo.GROUPS:
        try:
            cyclo.load_table.__wrapped__(group).validate()
        except cyclo.CharacterTableError as exc:
            failures.append(str(exc))

    n_orient = 0
    for g in samples:
        if len(g.vertices) > 9:
            continue
        for row in all_colorings(g):
            col = ThreeColoring(*(tuple(v for v, c in zip(g.vertices, row) if c == k) for k in range(3)))
            n_orient += 1
            if has_directed_3path(orient_by_coloring(g, col)):
                failures.append("directed 3-path")
                break

    for name in ("SL25", "TwoS5"):
        if 15 in head_group(name).orders:
            failures.append(f"order-15 element in {name}")

    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120.0
    detail = "; ".join(failures) if failures else f"{len(samples)} graphs up to 12 vertices, {n_orient} orientations, 3 tables"
    report("criterion 7 (invariant suites)", ok, f"{detail}, {elapsed:.2f}s")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
