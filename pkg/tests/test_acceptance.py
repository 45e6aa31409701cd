"""End-to-end sweeps of every guarantee the package advertises.

Each test prints exactly one [PASS]/[FAIL] line (before asserting, so
the line survives a failure).  The two pairing sweeps share one
instance stream through a module fixture; everything else generates
its own instances from fixed seeds.  The whole module takes on the
order of twenty minutes; deselect with `-m "not acceptance"` for quick
iteration.
"""

import time
from itertools import combinations

import numpy as np
import pytest

import reference
from homometric import (
    DEFAULT_SEED,
    GeneratorSpec,
    Graph,
    Tree,
    binary_bound_holds,
    build_haircomb,
    construct_pairing,
    distance_profile,
    enumerate_labeled_trees,
    family_h,
    family_r,
    find_in_haircomb,
    find_in_tree,
    generate,
    is_homometric,
    oracle_max_homometric,
    overlap_pair,
    overlap_table,
    pairing_value,
    prufer_to_tree,
    rank_legs,
    root_at,
)

pytestmark = pytest.mark.acceptance


def report(capsys, ok, text):
    with capsys.disabled():
        print(("[PASS] " if ok else "[FAIL] ") + text)


def random_tree(n, rng):
    return prufer_to_tree(n, rng.integers(0, n, size=max(0, n - 2)).tolist())


def test_path18_profile_collision(capsys):
    """Two different 6-subsets of an 18-path share one profile."""
    t = Tree(18, [(i, i + 1) for i in range(17)])
    a = (0, 1, 4, 10, 12, 17)
    b = (0, 1, 8, 11, 13, 17)
    pa = distance_profile(t, a)  # warm-up doubles as the equality check
    pb = distance_profile(t, b)
    best = float("inf")
    for _ in range(7):
        tick = time.perf_counter()
        distance_profile(t, a)
        distance_profile(t, b)
        best = min(best, time.perf_counter() - tick)
    ok = pa == pb and len(pa) == 15 and best < 1e-3
    report(capsys, ok,
           f"path18 collision: profiles {'equal' if pa == pb else 'DIFFER'}, "
           f"{len(pa)} distances, best {best * 1e3:.3f} ms < 1 ms")
    assert ok


def test_cycle12_complementary_halves(capsys):
    """Every 6/6 split of the 12-cycle is homometric."""
    g = Graph(12, [(i, (i + 1) % 12) for i in range(12)])
    start = time.perf_counter()
    checked = good = 0
    for rest in combinations(range(1, 12), 5):
        a = (0,) + rest
        b = tuple(v for v in range(12) if v not in a)
        checked += 1
        good += is_homometric(g, a, b)
    elapsed = time.perf_counter() - start
    ok = checked == 462 and good == 462 and elapsed < 1.0
    report(capsys, ok,
           f"cycle12 halves: {good}/{checked} homometric in {elapsed:.2f} s < 1 s")
    assert ok


def test_tree_pair_size_guarantee_sweep(capsys):
    """find_in_tree meets (2k+1)^2 >= 2n, verified, at every scale."""
    rng = np.random.default_rng(DEFAULT_SEED + 3)
    start = time.perf_counter()
    failures = total = 0
    for n in (100, 1_000, 10_000, 100_000):
        for _ in range(500):
            t = random_tree(n, rng)
            pair = find_in_tree(t)
            k = pair.size
            total += 1
            if not ((2 * k + 1) ** 2 >= 2 * n
                    and is_homometric(t, pair.a, pair.b)):
                failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and total == 2000
    report(capsys, ok,
           f"tree guarantee: {total - failures}/{total} verified pairs with "
           f"(2k+1)^2 >= 2n in {elapsed / 60:.1f} min")
    assert ok


@pytest.fixture(scope="module")
def pairing_sweep():
    """One pass over 10000 random rooted trees, feeding two checks."""
    rng = np.random.default_rng(DEFAULT_SEED + 4)
    out = {"count": 10_000, "bound_failures": 0, "realization_failures": 0,
           "elapsed": 0.0}
    start = time.perf_counter()
    for _ in range(out["count"]):
        n = int(rng.integers(1, 10_001))
        t = random_tree(n, rng)
        rt = root_at(t, int(rng.integers(0, n)))
        f = pairing_value(rt)
        h = rt.height(rt.root)
        if 2 * h * f < n - h:
            out["bound_failures"] += 1
        plan, pair = construct_pairing(rt)
        if not (pair.size == f and plan.size == f
                and is_homometric(t, pair.a, pair.b)):
            out["realization_failures"] += 1
    out["elapsed"] = time.perf_counter() - start
    return out


def test_pairing_value_height_bound_sweep(capsys, pairing_sweep):
    """The pairing value never drops below n/(2h) - 1/2, exactly."""
    bad = pairing_sweep["bound_failures"]
    count = pairing_sweep["count"]
    ok = bad == 0
    report(capsys, ok,
           f"pairing bound: {count - bad}/{count} rooted trees satisfy "
           f"2*h*f >= n - h ({pairing_sweep['elapsed'] / 60:.1f} min for the sweep)")
    assert ok


def test_pairing_realization_sweep(capsys, pairing_sweep):
    """construct_pairing realizes the value exactly and verifies."""
    bad = pairing_sweep["realization_failures"]
    count = pairing_sweep["count"]
    ok = bad == 0
    report(capsys, ok,
           f"pairing realization: {count - bad}/{count} plans of size exactly f, "
           f"all verified on the host tree")
    assert ok


def test_reference_family_values(capsys):
    """The two stock families hit their advertised sizes and values."""
    bad = []
    for i in range(1, 31):
        hi = family_h(i)
        ri = family_r(i)
        n, h = ri.n, ri.height(ri.root)
        checks = [
            hi.n == 2 * i - 1,
            ri.n == i * (i - 1) + 1,
            pairing_value(hi) == min(i - 1, 1),
            pairing_value(ri) == i - 1,
            pairing_value(ri) == -(-n // h) - 1,  # ceil(n/h) - 1, exactly tight
        ]
        if not all(checks):
            bad.append(i)
    ok = not bad
    report(capsys, ok,
           "family values: all shape/value/tightness checks hold for i <= 30"
           if ok else f"family values: failures at indices {bad}")
    assert ok


def test_binary_tree_value_bound_sweep(capsys):
    """f >= ceil(n/h) - 1 on trees with at most two children per vertex."""
    rng = np.random.default_rng(DEFAULT_SEED + 7)
    failures = 0
    count = 1000
    for _ in range(count):
        n = int(rng.integers(1, 5_001))
        t = generate(GeneratorSpec(kind="random-binary-tree", n=n,
                                   seed=int(rng.integers(0, 2 ** 31))))
        if not binary_bound_holds(root_at(t, 0)):
            failures += 1
    ok = failures == 0
    report(capsys, ok,
           f"binary bound: {count - failures}/{count} satisfy f >= ceil(n/h) - 1")
    assert ok


def test_nine_leg_comb_overlaps(capsys):
    """The worked 29-vertex comb: ranks, one overlap value, the best pair."""
    h = build_haircomb([5, 3, 2, 4, 1, 4, 6, 2, 2])
    ranking = rank_legs(h)
    table = overlap_table(h, ranking)
    # independent recount of every overlap straight from the drawing
    drawn = {d: reference.overlap_by_drawing(list(h.leg_lengths), d)
             for d in range(-h.s, h.s + 1) if d != 0}
    best = table.best_shift()
    pair = overlap_pair(h, best, ranking)
    checks = [
        ranking.rank == (2, 5, 6, 3, 9, 4, 1, 7, 8),
        table.overlap(2) == 6,
        all(table.overlap(d) == v for d, v in drawn.items()),
        max(drawn.values()) == 9,
        table.overlap(best) == 9,
        pair.size == 9,
        is_homometric(h.tree, pair.a, pair.b),
    ]
    ok = all(checks)
    report(capsys, ok,
           "nine-leg comb: ranks match, overlap(2)=6, max overlap 9 realized "
           "as a verified pair" if ok else f"nine-leg comb: checks={checks}")
    assert ok


def test_haircomb_guarantee_sweep(capsys):
    """find_in_haircomb meets its three-way size threshold; total
    overlap dominates the weighted-rank sum."""
    rng = np.random.default_rng(DEFAULT_SEED + 9)
    size_failures = total_failures = 0
    count = 1000
    start = time.perf_counter()
    for _ in range(count):
        n = int(rng.integers(2, 100_001))
        h = generate(GeneratorSpec(kind="random-haircomb", n=n,
                                   seed=int(rng.integers(0, 2 ** 31))))
        pair = find_in_haircomb(h)
        s, ell = h.s, max(h.leg_lengths)
        threshold = max(s // 2, ell // 2, n * n // (32 * ell * s))
        if not (pair.size >= threshold
                and is_homometric(h.tree, pair.a, pair.b)):
            size_failures += 1
        desc = sorted(h.leg_lengths, reverse=True)
        floor_sum = sum(i * desc[2 * i - 1] for i in range(1, s // 2 + 1))
        if overlap_table(h).total < floor_sum:
            total_failures += 1
    elapsed = time.perf_counter() - start
    ok = size_failures == 0 and total_failures == 0
    report(capsys, ok,
           f"haircomb guarantee: {count - size_failures}/{count} verified pairs "
           f"at threshold, {count - total_failures}/{count} overlap totals above "
           f"the weighted-rank floor ({elapsed / 60:.1f} min)")
    assert ok


def test_exhaustive_oracle_consistency(capsys):
    """On every labeled tree with 2..8 vertices the exhaustive maximum
    dominates the constructive size and meets the square-root floor.

    A single vertex is out of scope: two disjoint nonempty subsets
    need n >= 2.
    """
    start = time.perf_counter()
    trees = failures = 0
    for n in range(2, 9):
        for t in enumerate_labeled_trees(n):
            trees += 1
            res = oracle_max_homometric(t)
            kmax = res.max_size
            w = res.witness
            if not ((2 * kmax + 1) ** 2 >= 2 * n
                    and find_in_tree(t).size <= kmax
                    and w is not None
                    and is_homometric(t, w.a, w.b)):
                failures += 1
    elapsed = time.perf_counter() - start
    ok = failures == 0 and trees == 280_392
    report(capsys, ok,
           f"exhaustive consistency: {trees - failures}/{trees} trees pass "
           f"(constructive <= oracle, square-root floor, verified witnesses) "
           f"in {elapsed / 60:.1f} min")
    assert ok
