"""Exhaustive ground truth and instance generators.

The oracle enumerates vertex subsets by decreasing size and buckets
them by exact profile, so its answer is the true maximum homometric
pair size.  It is meant for cross-checking the constructive search on
small inputs; the default cutoff refuses anything past n = 14.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator

import numpy as np

from .graphs import Graph, HomometricPair, Tree, _bfs, pair_from_sets
from .haircomb import Haircomb, build_haircomb
from .pairing import family_h, family_r

__all__ = [
    "OracleResult",
    "GeneratorSpec",
    "DEFAULT_SEED",
    "ORACLE_CUTOFF",
    "oracle_max_homometric",
    "enumerate_labeled_trees",
    "prufer_to_tree",
    "generate",
]

ORACLE_CUTOFF = 14
DEFAULT_SEED = 1729

GENERATOR_KINDS = (
    "random-tree",
    "random-binary-tree",
    "random-haircomb",
    "path",
    "star",
    "family-R",
    "family-H",
)


@dataclass(frozen=True)
class OracleResult:
    """Exact maximum homometric size, with one witness when positive.

    The witness is the lexicographically smallest (A, B) among all
    maximum pairs, so equal inputs give equal results.
    """

    max_size: int
    witness: HomometricPair | None


def _distance_rows(g: Graph) -> list[list[int]]:
    rows = []
    for v in range(g.n):
        d, _ = _bfs(g, v, want_parent=False)
        rows.append(d.tolist())
    return rows


def oracle_max_homometric(g: Graph, limit: int = ORACLE_CUTOFF) -> OracleResult:
    """True maximum homometric pair size by exhaustive search.

    Every subset of each size is bucketed by its exact profile; every
    bucket is scanned for a disjoint pair before giving up on a size.
    Raises ValueError when g has more than `limit` vertices.
    """
    n = g.n
    if n > limit:
        raise ValueError(
            f"n={n} exceeds the oracle cutoff {limit}; pass limit= to override")
    dist = _distance_rows(g)
    for k in range(n // 2, 0, -1):
        buckets: dict[tuple[int, ...], list[tuple[int, tuple[int, ...]]]] = {}
        for combo in combinations(range(n), k):
            prof = []
            for i in range(k - 1):
                row = dist[combo[i]]
                for j in range(i + 1, k):
                    d = row[combo[j]]
                    if d < 0:
                        prof = None
                        break
                    prof.append(d)
                if prof is None:
                    break
            if prof is None:
                continue
            prof.sort()
            mask = 0
            for v in combo:
                mask |= 1 << v
            buckets.setdefault(tuple(prof), []).append((mask, combo))
        best = None
        for members in buckets.values():
            if len(members) < 2:
                continue
            for (ma, ca), (mb, cb) in combinations(members, 2):
                if ma & mb:
                    continue
                cand = (ca, cb) if ca < cb else (cb, ca)
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return OracleResult(k, pair_from_sets(g, best[0], best[1]))
    return OracleResult(0, None)


def prufer_to_tree(n: int, seq) -> Tree:
    """Tree on n vertices decoded from a length n-2 sequence.

    The empty sequence gives the single edge for n = 2; n = 1 takes no
    sequence at all.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    seq = [int(x) for x in seq]
    if len(seq) != max(0, n - 2):
        raise ValueError(f"sequence length must be {max(0, n - 2)} for n={n}")
    if n == 1:
        return Tree(1, [])
    if n == 2:
        return Tree(2, [(0, 1)])
    if any(not (0 <= x < n) for x in seq):
        raise ValueError("sequence entries out of range")
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    # classic linear decode: sweep a pointer over the leaves in id order
    ptr = 0
    leaf = -1
    for x in seq:
        if leaf < 0:
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            leaf = -1
            ptr += 1
    if leaf < 0:
        while degree[ptr] != 1:
            ptr += 1
        leaf = ptr
    edges.append((leaf, n - 1))
    return Tree(n, edges)


def enumerate_labeled_trees(n: int) -> Iterator[Tree]:
    """All n^(n-2) labeled trees on n vertices, in sequence order."""
    if not (1 <= n <= 9):
        raise ValueError("exhaustive enumeration is limited to 1 <= n <= 9")
    if n <= 2:
        yield prufer_to_tree(n, [])
        return
    for seq in product(range(n), repeat=n - 2):
        yield prufer_to_tree(n, seq)


@dataclass(frozen=True)
class GeneratorSpec:
    """What to generate: a kind plus its size or family index.

    Tree kinds need n; family kinds need index.  The seed only matters
    for the random kinds and defaults to a fixed constant, so every
    spec is reproducible.
    """

    kind: str
    n: int | None = None
    index: int | None = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.kind not in GENERATOR_KINDS:
            raise ValueError(
                f"unknown kind {self.kind!r}; choose from {', '.join(GENERATOR_KINDS)}")
        if self.kind in ("family-R", "family-H"):
            if self.index is None or self.index < 1:
                raise ValueError(f"kind {self.kind} needs index >= 1")
        else:
            floor = 2 if self.kind == "random-haircomb" else 1
            if self.n is None or self.n < floor:
                raise ValueError(f"kind {self.kind} needs n >= {floor}")


def _random_tree(n: int, rng: np.random.Generator) -> Tree:
    if n <= 2:
        return prufer_to_tree(n, [])
    seq = rng.integers(0, n, size=n - 2)
    return prufer_to_tree(n, seq.tolist())


def _random_binary_tree(n: int, rng: np.random.Generator) -> Tree:
    """Grow from vertex 0, attaching each new vertex to a uniformly
    random vertex that still has fewer than 2 children."""
    if n == 1:
        return Tree(1, [])
    open_slots = [0]
    child_count = [0] * n
    edges = []
    for v in range(1, n):
        i = int(rng.integers(0, len(open_slots)))
        parent = open_slots[i]
        edges.append((parent, v))
        child_count[parent] += 1
        if child_count[parent] == 2:
            open_slots[i] = open_slots[-1]
            open_slots.pop()
        open_slots.append(v)
    return Tree(n, edges)


def _random_haircomb(n: int, rng: np.random.Generator) -> Haircomb:
    hi = min(2 * int(np.ceil(np.sqrt(n))), n)
    s = int(rng.integers(2, hi + 1)) if hi > 2 else 2
    if s == n:
        lengths = [1] * s
    else:
        cuts = np.sort(rng.choice(n - 1, size=s - 1, replace=False)) + 1
        bounds = np.concatenate(([0], cuts, [n]))
        lengths = np.diff(bounds).tolist()
    return build_haircomb(lengths)


def generate(spec: GeneratorSpec) -> Tree | Haircomb:
    """Deterministic instance for spec; random-haircomb yields a
    Haircomb (its .tree is the plain tree), everything else a Tree."""
    kind = spec.kind
    if kind == "family-R":
        return family_r(spec.index).tree
    if kind == "family-H":
        return family_h(spec.index).tree
    n = spec.n
    if kind == "path":
        return Tree(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "star":
        return Tree(n, [(0, i) for i in range(1, n)])
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    if kind == "random-tree":
        return _random_tree(n, rng)
    if kind == "random-binary-tree":
        return _random_binary_tree(n, rng)
    return _random_haircomb(n, rng)
