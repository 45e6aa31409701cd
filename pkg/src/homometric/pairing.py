"""Sibling-path pairings in rooted trees.

The pairing value f of a rooted tree is defined recursively: it is 0
for a single vertex, and otherwise the larger of

* the sum of f over the root's child subtrees, and
* the sum of the heights of the children at even 1-based positions,
  once the children are sorted by subtree height descending (ties by
  vertex id) and padded with a virtual height-0 child when their count
  is odd.

Realizing the second option pairs each odd-position child's longest
downward path, trimmed to its partner's height, with the partner's
full longest downward path.  The two sides of every pair are runs of
equal length hanging from sibling tops, which forces equal profiles.
f always satisfies 2*h*f >= n - h where h is the root's height, and
that inequality is what makes the pairing route useful on trees whose
longest path is short.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import (
    _NUMPY_LEVEL_CAP,
    _SMALL_N,
    HomometricPair,
    Tree,
    _bfs,
    longest_path,
    pair_from_sets,
    split_path_halves,
)

__all__ = [
    "RootedTree",
    "DownPath",
    "PairingPlan",
    "root_at",
    "pairing_value",
    "construct_pairing",
    "paths_independent",
    "find_in_tree",
    "binary_bound_holds",
    "family_h",
    "family_r",
]


@dataclass(frozen=True)
class DownPath:
    """A strictly downward path: each vertex is the parent of the next."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices",
                           tuple(int(v) for v in self.vertices))
        if not self.vertices:
            raise ValueError("a downward path needs at least one vertex")

    @property
    def top(self) -> int:
        return self.vertices[0]

    @property
    def bottom(self) -> int:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class PairingPlan:
    """Matched equal-length downward paths, pairwise independent."""

    pairs: tuple[tuple[DownPath, DownPath], ...]

    @property
    def size(self) -> int:
        return sum(len(p) for p, _ in self.pairs)


class RootedTree:
    """A tree with a distinguished root and derived per-vertex data.

    Children of every vertex are ordered by subtree height descending,
    ties by vertex id ascending; a single vertex has height 1.  Built
    through root_at.
    """

    def __init__(self, tree: Tree, root: int):
        tree._check_vertex(root)
        self.tree = tree
        self.root = root
        self.n = tree.n
        n = tree.n
        depth, parent = _bfs(tree, root, want_parent=True)
        order = np.argsort(depth, kind="stable").astype(np.int32)
        maxd = int(depth.max())
        level_ptr = np.concatenate(
            ([0], np.bincount(depth, minlength=maxd + 1).cumsum()))
        # Heights roll up level by level; tiny or very deep trees use a
        # plain walk over the BFS order instead.
        self._sweep_levels = not (n <= _SMALL_N or maxd > _NUMPY_LEVEL_CAP)
        if self._sweep_levels:
            par64 = parent.astype(np.int64)
            height = np.ones(n, np.int64)
            for dd in range(maxd, 0, -1):
                lev = order[level_ptr[dd]:level_ptr[dd + 1]]
                np.maximum.at(height, par64[lev], height[lev] + 1)
            self._par64 = par64
        else:
            par_l = parent.tolist()
            height = [1] * n
            for v in reversed(order.tolist()):
                p = par_l[v]
                if p >= 0 and height[p] <= height[v]:
                    height[p] = height[v] + 1
            height = np.array(height, dtype=np.int64)
        self._depth = depth
        self._parent = parent
        self._order = order
        self._level_ptr = level_ptr
        self._height = height.astype(np.int32)
        kids = order[1:]
        if kids.size:
            sortidx = np.lexsort((kids, -self._height[kids], parent[kids]))
            clist = kids[sortidx].astype(np.int32)
        else:
            clist = np.empty(0, np.int32)
        self._clist = clist
        self._cptr = np.concatenate(
            ([0], np.bincount(parent[kids], minlength=n).cumsum())
        ).astype(np.int64) if kids.size else np.zeros(n + 1, np.int64)
        self._values_cache = None

    def parent(self, v: int) -> int:
        """Parent of v, -1 for the root."""
        self.tree._check_vertex(v)
        return int(self._parent[v])

    def depth(self, v: int) -> int:
        self.tree._check_vertex(v)
        return int(self._depth[v])

    def height(self, v: int) -> int:
        """Vertices on the longest downward path starting at v (>= 1)."""
        self.tree._check_vertex(v)
        return int(self._height[v])

    def children(self, v: int) -> tuple[int, ...]:
        self.tree._check_vertex(v)
        return tuple(self._clist[self._cptr[v]:self._cptr[v + 1]].tolist())

    def is_leaf(self, v: int) -> bool:
        self.tree._check_vertex(v)
        return self._cptr[v] == self._cptr[v + 1]

    @property
    def heights(self) -> np.ndarray:
        return self._height

    @property
    def depths(self) -> np.ndarray:
        return self._depth

    @property
    def parents(self) -> np.ndarray:
        return self._parent

    def _values(self):
        """(f, sum_of_child_f, paired_height_sum) arrays, computed once."""
        if self._values_cache is not None:
            return self._values_cache
        n = self.n
        clist, cptr = self._clist, self._cptr
        if clist.size:
            psort = self._parent[clist].astype(np.int64)
            pos = np.arange(clist.size, dtype=np.int64) - cptr[psort]
            odd = (pos & 1) == 1
            pair_sum = np.bincount(
                psort[odd],
                weights=self._height[clist[odd]].astype(np.float64),
                minlength=n,
            ).astype(np.int64)
        else:
            pair_sum = np.zeros(n, np.int64)
        if self._sweep_levels:
            f = np.zeros(n, np.int64)
            sumf = np.zeros(n, np.int64)
            order, ptr = self._order, self._level_ptr
            for dd in range(len(ptr) - 2, -1, -1):
                lev = order[ptr[dd]:ptr[dd + 1]]
                fl = np.maximum(sumf[lev], pair_sum[lev])
                f[lev] = fl
                if dd:
                    np.add.at(sumf, self._par64[lev], fl)
        else:
            f_l = [0] * n
            sumf_l = [0] * n
            par_l = self._parent.tolist()
            pair_l = pair_sum.tolist()
            for v in reversed(self._order.tolist()):
                val = sumf_l[v]
                if pair_l[v] > val:
                    val = pair_l[v]
                f_l[v] = val
                p = par_l[v]
                if p >= 0:
                    sumf_l[p] += val
            f = np.array(f_l, np.int64)
            sumf = np.array(sumf_l, np.int64)
        self._values_cache = (f, sumf, pair_sum)
        return self._values_cache

    def __repr__(self) -> str:
        return f"RootedTree(n={self.n}, root={self.root})"


def root_at(tree: Tree, root: int) -> RootedTree:
    """Orient tree away from root."""
    return RootedTree(tree, root)


def pairing_value(rt: RootedTree) -> int:
    """The recursive pairing value f of the whole rooted tree."""
    f, _, _ = rt._values()
    return int(f[rt.root])


def _down_path(rt: RootedTree, top: int, length: int) -> tuple[int, ...]:
    """First `length` vertices of the tallest-child walk from top."""
    out = [top]
    clist, cptr = rt._clist, rt._cptr
    v = top
    while len(out) < length:
        v = int(clist[cptr[v]])
        out.append(v)
    return tuple(out)


def construct_pairing(rt: RootedTree) -> tuple[PairingPlan, HomometricPair]:
    """Realize the pairing value as an explicit verified pair.

    Walks down from the root; wherever the paired-heights option wins
    (ties included) it emits one path pair per child pair and stops
    descending, otherwise it recurses into the children.  A side of
    each emitted pair goes to each set, so the pair size equals the
    pairing value exactly.
    """
    f, sumf, pair_sum = rt._values()
    clist, cptr = rt._clist, rt._cptr
    height = rt._height
    pairs: list[tuple[DownPath, DownPath]] = []
    a_side: list[int] = []
    b_side: list[int] = []
    stack = [rt.root]
    while stack:
        v = stack.pop()
        lo, hi = int(cptr[v]), int(cptr[v + 1])
        if lo == hi:
            continue
        if pair_sum[v] >= sumf[v]:
            kids = clist[lo:hi].tolist()
            for i in range(0, len(kids) - 1, 2):
                length = int(height[kids[i + 1]])
                pa = _down_path(rt, kids[i], length)
                pb = _down_path(rt, kids[i + 1], length)
                pairs.append((DownPath(pa), DownPath(pb)))
                a_side.extend(pa)
                b_side.extend(pb)
        else:
            stack.extend(clist[lo:hi].tolist())
    pair = pair_from_sets(rt.tree, a_side, b_side)
    expected = int(f[rt.root])
    if pair.size != expected:
        raise RuntimeError(
            f"pairing construction produced size {pair.size}, value is {expected}")
    return PairingPlan(tuple(pairs)), pair


def _path_vertices(p) -> tuple[int, ...]:
    if isinstance(p, DownPath):
        return p.vertices
    return tuple(int(v) for v in p)


def paths_independent(rt: RootedTree, p, q) -> bool:
    """No root-to-leaf path meets both p and q.

    Equivalent check: no vertex of either path is an ancestor-or-self
    of the other path's top.  Both arguments must be downward paths of
    rt (DownPath or vertex sequence); anything else raises.
    """
    pv = _path_vertices(p)
    qv = _path_vertices(q)
    parent = rt._parent
    for path in (pv, qv):
        if not path:
            raise ValueError("empty path")
        for x, y in zip(path, path[1:]):
            if int(parent[y]) != x:
                raise ValueError("not a downward path of this rooted tree")

    def ancestors(v: int) -> set[int]:
        out = set()
        while v >= 0:
            out.add(v)
            v = int(parent[v])
        return out

    if set(pv) & ancestors(qv[0]):
        return False
    if set(qv) & ancestors(pv[0]):
        return False
    return True


def find_in_tree(t: Tree) -> HomometricPair:
    """A homometric pair of guaranteed size in any tree with >= 2 vertices.

    Tries the two halves of a longest path, then the pairing rooted at
    that path's midpoint, and keeps the larger pair (halves win ties).
    The winner k always satisfies (2k+1)^2 >= 2n.
    """
    if t.n < 2:
        raise ValueError("need at least 2 vertices")
    p = longest_path(t)
    trimmed = len(p) - (len(p) & 1)
    halves = split_path_halves(p)
    rt = root_at(t, p[trimmed // 2])
    _, paired = construct_pairing(rt)
    return halves if halves.size >= paired.size else paired


def binary_bound_holds(rt: RootedTree) -> bool:
    """Check f >= ceil(n/h - 1) for a rooted tree with <= 2 children
    per vertex; raises on anything else."""
    kid_counts = np.diff(rt._cptr)
    if (kid_counts > 2).any():
        bad = int(np.flatnonzero(kid_counts > 2)[0])
        raise ValueError(f"vertex {bad} has more than 2 children")
    n = rt.n
    h = int(rt._height[rt.root])
    return pairing_value(rt) >= -(-n // h) - 1


def _family_h_edges(i: int, root: int, nxt: int) -> tuple[list[tuple[int, int]], int]:
    """Spine of i vertices, a pendant leaf on all but the last."""
    edges = []
    spine = [root]
    for _ in range(i - 1):
        edges.append((spine[-1], nxt))
        spine.append(nxt)
        nxt += 1
    for v in spine[:-1]:
        edges.append((v, nxt))
        nxt += 1
    return edges, nxt


def family_h(i: int) -> RootedTree:
    """Comb-shaped reference tree on 2i-1 vertices with height i and,
    for i >= 2, pairing value exactly 1."""
    if i < 1:
        raise ValueError("index must be >= 1")
    edges, _ = _family_h_edges(i, 0, 1)
    return root_at(Tree(2 * i - 1, edges), 0)


def family_r(i: int) -> RootedTree:
    """Reference tree on i*(i-1)+1 vertices with height i and pairing
    value i-1, tight for the binary-tree bound."""
    if i < 1:
        raise ValueError("index must be >= 1")
    edges: list[tuple[int, int]] = []
    nxt = 1
    spine = [0]
    for _ in range(i - 1):
        edges.append((spine[-1], nxt))
        spine.append(nxt)
        nxt += 1
    # spine[j] is the j-th vertex below the root; it carries a comb of
    # index i-1-j, matching heights along the spine.
    for j in range(i - 1):
        sub_index = i - 1 - j
        sub_edges, nxt2 = _family_h_edges(sub_index, nxt, nxt + 1)
        edges.append((spine[j], nxt))
        edges.extend(sub_edges)
        nxt = nxt2
    return root_at(Tree(i * (i - 1) + 1, edges), 0)
