"""Graphs, trees, distance profiles, and verified homometric pairs.

Vocabulary used throughout the package:

* The profile of a vertex set S is the multiset of pairwise hop
  distances between members of S, kept as a sorted tuple.  Sets with
  fewer than two vertices have the empty profile.
* A homometric pair is two disjoint vertex sets of equal size whose
  profiles are equal.  Equality is always checked against the host
  graph, never assumed.

Vertices are the integers 0..n-1.  Adjacency is stored in CSR form
(numpy arrays) so the same code stays usable from a handful of
vertices up to about a million.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "Graph",
    "Tree",
    "ParseError",
    "HomometricPair",
    "VertexPath",
    "parse_graph",
    "parse_tree",
    "serialize_graph",
    "serialize_tree",
    "bfs_distances",
    "longest_path",
    "distance_profile",
    "profile_digest",
    "is_homometric",
    "pair_from_sets",
    "serialize_pair",
    "parse_pair",
    "split_path_halves",
]

# An ordered sequence of vertices, consecutive ones adjacent in the host
# tree.  Functions taking a VertexPath trust the caller on adjacency.
VertexPath = tuple

_SMALL_N = 600          # below this a plain-python BFS wins over numpy
_NUMPY_LEVEL_CAP = 2048  # frontier BFS falls back to a queue after this many levels
_PAIR_CHUNK = 2_000_000  # distance queries are processed in blocks this big
_TRI_DIRECT = 2048       # sets up to this size enumerate their pairs in one shot


class ParseError(ValueError):
    """Malformed input document. Carries the offending line when known."""

    def __init__(self, reason: str, line: int | None = None):
        self.reason = reason
        self.line = line
        super().__init__(f"line {line}: {reason}" if line is not None else reason)


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Edges are validated on construction: endpoints in range, no
    self-loops, no duplicates in either orientation.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise ValueError("vertex count must be a positive integer")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be (u, v) pairs")
        if arr.size:
            if arr.min() < 0 or arr.max() >= n:
                raise ValueError("vertex id out of range")
            if (arr[:, 0] == arr[:, 1]).any():
                raise ValueError("self-loops are not allowed")
            lo = np.minimum(arr[:, 0], arr[:, 1])
            hi = np.maximum(arr[:, 0], arr[:, 1])
            key = lo * n + hi
            if np.unique(key).size != key.size:
                raise ValueError("duplicate edge")
        self.n = n
        src = np.concatenate([arr[:, 0], arr[:, 1]])
        dst = np.concatenate([arr[:, 1], arr[:, 0]])
        order = np.lexsort((dst, src))
        indices = dst[order].astype(np.int32)
        indptr = np.concatenate(
            ([0], np.bincount(src, minlength=n).cumsum())).astype(np.int64)
        indices.flags.writeable = False
        indptr.flags.writeable = False
        self._indices = indices
        self._indptr = indptr

    @property
    def edge_count(self) -> int:
        return len(self._indices) // 2

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self._indptr[v + 1] - self._indptr[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors of v in ascending order."""
        self._check_vertex(v)
        return tuple(self._indices[self._indptr[v]:self._indptr[v + 1]].tolist())

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """All adjacency lists at once, as nested tuples."""
        flat = self._indices.tolist()
        ptr = self._indptr.tolist()
        return tuple(tuple(flat[ptr[v]:ptr[v + 1]]) for v in range(self.n))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as (u, v) with u < v, sorted."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self._indptr))
        mask = src < self._indices
        return list(zip(src[mask].tolist(), self._indices[mask].tolist()))

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex id {v} out of range 0..{self.n - 1}")

    def __eq__(self, other) -> bool:
        if type(self) is not type(other):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self._indptr, other._indptr)
                and np.array_equal(self._indices, other._indices))

    __hash__ = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, edges={self.edge_count})"


class Tree(Graph):
    """Connected acyclic graph. Construction verifies both properties."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        super().__init__(n, edges)
        if self.edge_count != n - 1:
            raise ValueError(
                f"a tree on {n} vertices needs {n - 1} edges, got {self.edge_count}")
        dist, _ = _bfs(self, 0, want_parent=False)
        if (dist < 0).any():
            raise ValueError("edges do not form a connected tree")


def _bfs(g: Graph, src: int, want_parent: bool):
    """Hop distances from src, -1 where unreachable.

    Returns (dist, parent); parent is None unless requested.  For trees
    the parent of src is -1 and every other reachable vertex gets the
    neighbor it was discovered from.
    """
    n, indptr, indices = g.n, g._indptr, g._indices
    if n <= _SMALL_N:
        ind = indices.tolist()
        ptr = indptr.tolist()
        dist = [-1] * n
        par = [-1] * n
        dist[src] = 0
        queue = [src]
        for v in queue:
            dv1 = dist[v] + 1
            for j in range(ptr[v], ptr[v + 1]):
                w = ind[j]
                if dist[w] < 0:
                    dist[w] = dv1
                    par[w] = v
                    queue.append(w)
        return (np.array(dist, dtype=np.int32),
                np.array(par, dtype=np.int32) if want_parent else None)

    tree_like = isinstance(g, Tree)
    dist = np.full(n, -1, np.int32)
    parent = np.full(n, -1, np.int32) if want_parent else None
    dist[src] = 0
    frontier = np.array([src], dtype=np.int32)
    level = 0
    while frontier.size:
        level += 1
        if level > _NUMPY_LEVEL_CAP:
            # Degenerate depth (long paths): finish with a queue.
            _bfs_finish(indptr, indices, dist, parent, frontier.tolist())
            return dist, parent
        starts = indptr[frontier]
        counts = indptr[frontier + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        before = np.cumsum(counts) - counts
        flat = np.repeat(starts - before, counts) + np.arange(total, dtype=np.int64)
        nbrs = indices[flat]
        origins = np.repeat(frontier, counts) if want_parent else None
        fresh = dist[nbrs] < 0
        nbrs = nbrs[fresh]
        if want_parent:
            origins = origins[fresh]
        if not tree_like and nbrs.size:
            # General graphs can discover a vertex from several frontier
            # members at once; keep the first occurrence.
            nbrs, keep = np.unique(nbrs, return_index=True)
            if want_parent:
                origins = origins[keep]
        dist[nbrs] = level
        if want_parent:
            parent[nbrs] = origins
        frontier = nbrs
    return dist, parent


def _bfs_finish(indptr, indices, dist, parent, queue):
    head = 0
    want = parent is not None
    while head < len(queue):
        v = queue[head]
        head += 1
        dv1 = int(dist[v]) + 1
        for j in range(int(indptr[v]), int(indptr[v + 1])):
            w = int(indices[j])
            if dist[w] < 0:
                dist[w] = dv1
                if want:
                    parent[w] = v
                queue.append(w)


def bfs_distances(g: Graph, src: int) -> np.ndarray:
    """Hop distances from src as an int32 array, -1 where unreachable."""
    g._check_vertex(src)
    dist, _ = _bfs(g, src, want_parent=False)
    return dist


def longest_path(t: Tree) -> tuple[int, ...]:
    """A longest path of t, found by the double sweep.

    Deterministic: both sweeps break distance ties toward the smallest
    vertex id, so equal inputs give equal paths.
    """
    d0, _ = _bfs(t, 0, want_parent=False)
    u = int(np.flatnonzero(d0 == d0.max())[0])
    d1, par = _bfs(t, u, want_parent=True)
    w = int(np.flatnonzero(d1 == d1.max())[0])
    rev = [w]
    while rev[-1] != u:
        rev.append(int(par[rev[-1]]))
    return tuple(reversed(rev))


def _preorder_entry_python(t: Tree, parent: np.ndarray) -> np.ndarray:
    """Preorder entry indices by an explicit-stack DFS (deep trees)."""
    n = t.n
    ind = t._indices.tolist()
    ptr = t._indptr.tolist()
    par = parent.tolist()
    entry = [0] * n
    nxt = list(ptr[:n])
    stack = [0]
    counter = 1
    while stack:
        v = stack[-1]
        j = nxt[v]
        end = ptr[v + 1]
        moved = False
        while j < end:
            w = ind[j]
            j += 1
            if w != par[v]:
                nxt[v] = j
                entry[w] = counter
                counter += 1
                stack.append(w)
                moved = True
                break
        if not moved:
            nxt[v] = j
            stack.pop()
    return np.array(entry, dtype=np.int64)


def _preorder_entry(t: Tree, parent: np.ndarray, depth: np.ndarray) -> np.ndarray:
    """Preorder entry index of every vertex, children visited in id order.

    Level-synchronous: subtree sizes by a bottom-up sweep over depth
    levels, then each vertex enters right after its parent plus the
    subtrees of its elder siblings.  Deep or tiny trees take the plain
    DFS instead, where sweeping levels degenerates.
    """
    n = t.n
    maxd = int(depth.max())
    if n <= _SMALL_N or maxd > _NUMPY_LEVEL_CAP:
        return _preorder_entry_python(t, parent)
    par = parent.astype(np.int64)
    by_depth = np.argsort(depth, kind="stable").astype(np.int64)
    level_ptr = np.concatenate(
        ([0], np.bincount(depth, minlength=maxd + 1).cumsum()))
    size = np.ones(n, np.int64)
    for d in range(maxd, 0, -1):
        lev = by_depth[level_ptr[d]:level_ptr[d + 1]]
        np.add.at(size, par[lev], size[lev])
    kids = np.flatnonzero(par >= 0)
    kids = kids[np.argsort(par[kids], kind="stable")]  # by (parent, id)
    psort = par[kids]
    cptr = np.concatenate(([0], np.bincount(psort, minlength=n).cumsum()))
    sk = size[kids]
    cs = np.cumsum(sk) - sk
    elder = cs - cs[cptr[psort]]
    eld_of = np.zeros(n, np.int64)
    eld_of[kids] = elder
    entry = np.zeros(n, np.int64)
    for d in range(1, maxd + 1):
        lev = by_depth[level_ptr[d]:level_ptr[d + 1]]
        entry[lev] = entry[par[lev]] + 1 + eld_of[lev]
    return entry


class _TreeDist:
    """Pairwise tree distance queries, O(1) vector work per pair.

    dist(u, v) = depth[u] + depth[v] - 2*depth(lca).  With preorder
    entries e_u < e_v, the minimum entry depth over positions
    (e_u, e_v] is depth(lca) + 1 except when u is an ancestor of v,
    and taking the min with both endpoint depths covers that case.
    A sparse table over the preorder depth sequence serves the range
    minima.
    """

    def __init__(self, t: Tree):
        dist, parent = _bfs(t, 0, want_parent=True)
        n = t.n
        self._depth = dist.astype(np.int64)
        entry = _preorder_entry(t, parent, dist)
        pre_depth = np.empty(n, np.int32)
        pre_depth[entry] = dist
        self._entry = entry
        logs = np.zeros(n + 1, np.int64)
        j = 1
        while (1 << j) <= n:
            logs[(1 << j):] = j
            j += 1
        self._logs = logs
        nlev = int(logs[n]) + 1
        table = np.empty((nlev, n), np.int32)
        table[0] = pre_depth
        for lv in range(1, nlev):
            w = 1 << lv
            m = n - w + 1
            np.minimum(table[lv - 1, :m], table[lv - 1, w // 2:w // 2 + m],
                       out=table[lv, :m])
            table[lv, m:] = table[lv - 1, m:]
        self._table = table

    def distances(self, us: np.ndarray, vs: np.ndarray) -> np.ndarray:
        depth, entry = self._depth, self._entry
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        eu = entry[us]
        ev = entry[vs]
        lo = np.minimum(eu, ev) + 1
        hi = np.maximum(eu, ev)
        length = hi - lo + 1  # zero exactly when us == vs
        j = self._logs[np.maximum(length, 1)]
        w = np.left_shift(np.int64(1), j)
        left = self._table[j, np.minimum(lo, self._table.shape[1] - 1)]
        right = self._table[j, hi - w + 1]
        inner = np.minimum(left, right).astype(np.int64) - 1
        du = depth[us]
        dv = depth[vs]
        lca_d = np.minimum(np.minimum(du, dv), inner)
        return np.where(length > 0, du + dv - 2 * lca_d, 0)

    def set_profile_counts(self, s: np.ndarray) -> np.ndarray:
        """counts[d] = number of pairs of s at distance d."""
        k = s.size
        length = 2 * int(self._depth.max()) + 1
        counts = np.zeros(length, np.int64)
        if k < 2:
            return counts
        if k <= _TRI_DIRECT:
            iu, jv = np.triu_indices(k, 1)
            d = self.distances(s[iu], s[jv])
            counts += np.bincount(d, minlength=length)
            return counts
        # Large sets: full k*k rectangle in row blocks, fixed up at the end.
        rows_per = max(1, _PAIR_CHUNK // k)
        for r0 in range(0, k, rows_per):
            rows = s[r0:r0 + rows_per]
            us = np.repeat(rows, k)
            vs = np.tile(s, rows.size)
            counts += np.bincount(self.distances(us, vs), minlength=length)
        counts[0] -= k
        counts //= 2
        return counts


def _tree_dist(t: Tree) -> _TreeDist:
    cache = getattr(t, "_dist_cache", None)
    if cache is None:
        cache = _TreeDist(t)
        t._dist_cache = cache
    return cache


class _CentroidIndex:
    """Per-vertex rows of a centroid decomposition, CSR by vertex.

    Vertex u gets one row for every decomposition component containing
    it: that component's group key, the branch key of the centroid
    subtree u falls in (-1 at the centroid itself), and the hop
    distance to the centroid.  Group and branch keys share one id
    space of size `keys`.
    """

    __slots__ = ("vptr", "group", "branch", "depth", "keys")

    def __init__(self, vptr, group, branch, depth, keys):
        self.vptr = vptr
        self.group = group
        self.branch = branch
        self.depth = depth
        self.keys = keys


def _build_centroid_index(t: Tree) -> _CentroidIndex:
    """Decompose t by centroids, level-synchronously.

    Every decomposition level handles all of its components in the
    same few array passes: one BFS forest for subtree sizes, a vector
    centroid test (all child subtrees and the complement at most half
    the component), and one BFS forest from the centroids that records
    depths and branch labels.  Total rows are O(n log n).
    """
    n = t.n
    indptr, indices = t._indptr, t._indices
    removed = np.zeros(n, bool)
    comp = np.zeros(n, np.int64)
    parent = np.zeros(n, np.int64)
    branch = np.zeros(n, np.int64)
    size = np.ones(n, np.int64)
    mc = np.zeros(n, np.int64)
    rows_v: list[np.ndarray] = []
    rows_g: list[np.ndarray] = []
    rows_b: list[np.ndarray] = []
    rows_d: list[np.ndarray] = []
    seeds = np.zeros(1, np.int64)
    key_base = 0

    def sweep(sources: np.ndarray, assign_branch: bool) -> list[np.ndarray]:
        # BFS forest from one source per component; removed vertices
        # separate the components so frontiers never mix them.
        visited = removed.copy()
        visited[sources] = True
        levels = [sources]
        fr = sources
        first = True
        while fr.size:
            starts = indptr[fr]
            cnts = indptr[fr + 1] - starts
            total = int(cnts.sum())
            if total == 0:
                break
            before = np.cumsum(cnts) - cnts
            flat = np.repeat(starts - before, cnts) + np.arange(total, dtype=np.int64)
            nb = indices[flat].astype(np.int64)
            src = np.repeat(fr, cnts)
            keep = ~visited[nb]
            nb = nb[keep]
            if nb.size == 0:
                break
            src = src[keep]
            visited[nb] = True
            parent[nb] = src
            if assign_branch:
                branch[nb] = (np.arange(nb.size, dtype=np.int64)
                              if first else branch[src])
            else:
                comp[nb] = comp[src]
            first = False
            levels.append(nb)
            fr = nb
        return levels

    while seeds.size:
        ncomp = seeds.size
        comp[seeds] = np.arange(ncomp, dtype=np.int64)
        levels = sweep(seeds, assign_branch=False)
        alive = np.concatenate(levels)
        size[alive] = 1
        for lev in levels[:0:-1]:
            np.add.at(size, parent[lev], size[lev])
        mc[alive] = 0
        if len(levels) > 1:
            nonseed = np.concatenate(levels[1:])
            np.maximum.at(mc, parent[nonseed], size[nonseed])
        m_of = size[seeds][comp[alive]]
        ok = (2 * mc[alive] <= m_of) & (2 * (m_of - size[alive]) <= m_of)
        okv = alive[ok]
        okv = okv[np.lexsort((okv, comp[okv]))]
        okc = comp[okv]
        firsts = np.ones(okv.size, bool)
        firsts[1:] = okc[1:] != okc[:-1]
        cents = okv[firsts]  # the least-id centroid of component 0, 1, ...
        if cents.size != ncomp:
            raise RuntimeError("a component lost its centroid")
        levels2 = sweep(cents, assign_branch=True)
        rows_v.append(cents)
        rows_g.append(key_base + np.arange(ncomp, dtype=np.int64))
        rows_b.append(np.full(ncomp, -1, np.int64))
        rows_d.append(np.zeros(ncomp, np.int64))
        for d in range(1, len(levels2)):
            lev = levels2[d]
            rows_v.append(lev)
            rows_g.append(key_base + comp[lev])
            rows_b.append(key_base + ncomp + branch[lev])
            rows_d.append(np.full(lev.size, d, np.int64))
        removed[cents] = True
        if len(levels2) > 1:
            deeper = np.concatenate(levels2[1:])
            comp[deeper] = branch[deeper]
            seeds = levels2[1]  # one child per branch, branch i at index i
            key_base += ncomp + seeds.size
        else:
            seeds = np.zeros(0, np.int64)
            key_base += ncomp

    v = np.concatenate(rows_v)
    order = np.argsort(v, kind="stable")
    vptr = np.concatenate(([0], np.bincount(v, minlength=n).cumsum())).astype(np.int64)
    return _CentroidIndex(vptr,
                          np.concatenate(rows_g)[order],
                          np.concatenate(rows_b)[order],
                          np.concatenate(rows_d)[order],
                          key_base)


def _centroid_profile_counts(t: Tree, s: np.ndarray) -> np.ndarray:
    """Profile counts of a large vertex set via centroid decomposition.

    Each unordered pair of s crosses exactly one decomposition
    centroid, at distance depth(u) + depth(v) within that component.
    Summing the autoconvolution of every group's depth histogram and
    subtracting every branch's removes same-branch pairs and counts
    each true pair twice.  Histograms are batched by padded FFT length
    so one query is a handful of array passes regardless of how many
    components it touches.
    """
    k = s.size
    if k < 2:
        return np.zeros(1, np.int64)
    idx = getattr(t, "_centroid_cache", None)
    if idx is None:
        idx = _build_centroid_index(t)
        t._centroid_cache = idx
    s = np.asarray(s, dtype=np.int64)
    starts = idx.vptr[s]
    cnts = idx.vptr[s + 1] - starts
    total = int(cnts.sum())
    before = np.cumsum(cnts) - cnts
    flat = np.repeat(starts - before, cnts) + np.arange(total, dtype=np.int64)
    g = idx.group[flat]
    b = idx.branch[flat]
    d = idx.depth[flat]
    # Groups a single member of s touches cannot produce pairs.
    gcnt = np.bincount(g, minlength=idx.keys)
    keep = gcnt[g] >= 2
    g, b, d = g[keep], b[keep], d[keep]
    q = int(np.count_nonzero(b < 0))  # members acting as their centroid
    hasb = b >= 0
    keys = np.concatenate([g, b[hasb]])
    deps = np.concatenate([d, d[hasb]])
    sgn = np.ones(keys.size, np.int64)
    sgn[g.size:] = -1
    perm = np.argsort(keys, kind="stable")
    ks = keys[perm]
    dsrt = deps[perm]
    ssrt = sgn[perm]
    kstart = np.flatnonzero(np.concatenate(([True], ks[1:] != ks[:-1])))
    kcnt = np.diff(np.concatenate((kstart, [ks.size])))
    rmax = np.maximum.reduceat(dsrt, kstart)
    ksig = ssrt[kstart].astype(np.float64)
    span = int(2 * rmax.max()) + 1
    acc = np.zeros(span, np.float64)
    need = 2 * rmax + 1
    fftlen = np.left_shift(np.int64(1), np.int64(np.ceil(np.log2(need))))
    for F in np.unique(fftlen):
        F = int(F)
        sel = np.flatnonzero(fftlen == F)
        rows = sel.size
        seg_start = kstart[sel]
        seg_cnt = kcnt[sel]
        tot = int(seg_cnt.sum())
        boff = np.cumsum(seg_cnt) - seg_cnt
        pos = np.repeat(seg_start - boff, seg_cnt) + np.arange(tot, dtype=np.int64)
        rowid = np.repeat(np.arange(rows, dtype=np.int64), seg_cnt)
        hist = np.bincount(rowid * F + dsrt[pos], minlength=rows * F)
        hist = hist.astype(np.float64).reshape(rows, F)
        spec = np.fft.rfft(hist, axis=1)
        conv = np.fft.irfft(spec * spec, n=F, axis=1)
        ln = 2 * rmax[sel] + 1
        t2 = int(ln.sum())
        b2 = np.cumsum(ln) - ln
        didx = np.arange(t2, dtype=np.int64) - np.repeat(b2, ln)
        rrep = np.repeat(np.arange(rows, dtype=np.int64), ln)
        vals = conv.ravel()[rrep * F + didx] * np.repeat(ksig[sel], ln)
        acc += np.bincount(didx, weights=vals, minlength=span)[:span]
    res = np.rint(acc).astype(np.int64)
    if res[0] != q or (res[1:] & 1).any() or int(res[1:].sum()) != k * (k - 1):
        raise RuntimeError("centroid profile accounting failed")
    res >>= 1
    res[0] = 0
    return res


def _as_vertex_tuple(g: Graph, s: Iterable[int]) -> tuple[int, ...]:
    out = tuple(sorted(int(v) for v in s))
    for v in out:
        g._check_vertex(v)
    if len(set(out)) != len(out):
        raise ValueError("vertex set contains duplicates")
    return out


def _profile_counts(g: Graph, s: Sequence[int]) -> np.ndarray:
    """Distance counts for the pairs of s; index is the distance."""
    k = len(s)
    if k < 2:
        return np.zeros(1, np.int64)
    arr = np.asarray(s, dtype=np.int64)
    if isinstance(g, Tree) and g.n > 64 and k > 3:
        # The decomposition pays off once the set is large relative to
        # the tree, sooner when an earlier query already built it.
        cached = getattr(g, "_centroid_cache", None) is not None
        if k > _TRI_DIRECT or k * k > 16 * g.n or (cached and k > 256):
            return _centroid_profile_counts(g, arr)
        return _tree_dist(g).set_profile_counts(arr)
    counts = np.zeros(1, np.int64)
    for i in range(k - 1):
        d, _ = _bfs(g, int(arr[i]), want_parent=False)
        tail = d[arr[i + 1:]]
        if (tail < 0).any():
            raise ValueError("vertex set spans disconnected components")
        c = np.bincount(tail)
        if c.size > counts.size:
            c[:counts.size] += counts
            counts = c.astype(np.int64)
        else:
            counts[:c.size] += c
    return counts


def _trimmed(counts: np.ndarray) -> np.ndarray:
    return np.trim_zeros(counts, "b")


def _digest_from_counts(counts: np.ndarray) -> str:
    """Canonical digest: sha256 over (distance, multiplicity) runs."""
    nz = np.flatnonzero(counts)
    enc = np.empty((nz.size, 2), dtype="<u8")
    enc[:, 0] = nz
    enc[:, 1] = counts[nz]
    return hashlib.sha256(b"dprofile/v1:" + enc.tobytes()).hexdigest()


def profile_digest(profile: Iterable[int]) -> str:
    """Digest of an explicit distance multiset.

    Matches the profile_sha carried by pairs built from the same
    multiset, regardless of element order.
    """
    vals = list(int(d) for d in profile)
    if any(d < 1 for d in vals):
        raise ValueError("distances must be positive")
    counts = np.bincount(np.asarray(vals, dtype=np.int64)) if vals else np.zeros(1, np.int64)
    return _digest_from_counts(counts)


def distance_profile(g: Graph, s: Iterable[int]) -> tuple[int, ...]:
    """Sorted multiset of pairwise distances within s.

    Materializes all len(s)*(len(s)-1)/2 entries; for very large sets
    prefer working with pairs and their digests instead.
    """
    s = _as_vertex_tuple(g, s)
    if len(s) < 2:
        return ()
    counts = _profile_counts(g, s)
    ds = np.flatnonzero(counts)
    return tuple(np.repeat(ds, counts[ds]).tolist())


def is_homometric(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    """True when a and b are disjoint, equal-size, and equal-profile."""
    a = _as_vertex_tuple(g, a)
    b = _as_vertex_tuple(g, b)
    if len(a) != len(b):
        return False
    if set(a) & set(b):
        return False
    return np.array_equal(_trimmed(_profile_counts(g, a)),
                          _trimmed(_profile_counts(g, b)))


@dataclass(frozen=True)
class HomometricPair:
    """Two disjoint equal-size vertex sets plus their profile digest.

    The digest is a certificate written by whichever constructor
    verified profile equality; parse_pair round-trips it.  Sets are
    normalized to sorted tuples.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    profile_sha: str

    def __post_init__(self):
        a = tuple(sorted(int(v) for v in self.a))
        b = tuple(sorted(int(v) for v in self.b))
        if len(set(a)) != len(a) or len(set(b)) != len(b):
            raise ValueError("pair sets contain duplicates")
        if len(a) != len(b):
            raise ValueError("pair sets differ in size")
        if set(a) & set(b):
            raise ValueError("pair sets intersect")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def size(self) -> int:
        return len(self.a)


def pair_from_sets(g: Graph, a: Iterable[int], b: Iterable[int]) -> HomometricPair:
    """Build a verified pair, or raise ValueError explaining the failure."""
    a = _as_vertex_tuple(g, a)
    b = _as_vertex_tuple(g, b)
    if len(a) != len(b):
        raise ValueError("sets are not homometric: sizes differ")
    if set(a) & set(b):
        raise ValueError("sets are not homometric: they intersect")
    ca = _profile_counts(g, a)
    cb = _profile_counts(g, b)
    if not np.array_equal(_trimmed(ca), _trimmed(cb)):
        raise ValueError("sets are not homometric: profiles differ")
    return HomometricPair(a, b, _digest_from_counts(ca))


def serialize_pair(pair: HomometricPair) -> str:
    lines = [
        f"size={pair.size}",
        ("A: " + " ".join(map(str, pair.a))).rstrip(),
        ("B: " + " ".join(map(str, pair.b))).rstrip(),
        f"profile_sha: {pair.profile_sha}",
    ]
    return "\n".join(lines) + "\n"


def parse_pair(text: str) -> HomometricPair:
    """Inverse of serialize_pair. Strict about the four-line shape."""
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        if s.startswith("size="):
            fields["size"] = s[len("size="):]
        elif s.startswith("A:"):
            fields["a"] = s[2:].strip()
        elif s.startswith("B:"):
            fields["b"] = s[2:].strip()
        elif s.startswith("profile_sha:"):
            fields["sha"] = s[len("profile_sha:"):].strip()
        else:
            raise ParseError(f"unrecognized pair line: {s!r}", lineno)
    missing = {"size", "a", "b", "sha"} - set(fields)
    if missing:
        raise ParseError("incomplete pair: missing " + ", ".join(sorted(missing)))
    try:
        size = int(fields["size"])
        a = tuple(int(x) for x in fields["a"].split())
        b = tuple(int(x) for x in fields["b"].split())
    except ValueError:
        raise ParseError("pair fields must be integers") from None
    if len(a) != size or len(b) != size:
        raise ParseError(f"size={size} does not match the listed sets")
    try:
        return HomometricPair(a, b, fields["sha"])
    except ValueError as e:
        raise ParseError(str(e)) from None


def _segment_counts(m: int) -> np.ndarray:
    """Profile counts of m consecutive vertices on a path: counts[d] = m - d."""
    if m <= 1:
        return np.zeros(1, np.int64)
    return np.concatenate(([0], np.arange(m - 1, 0, -1))).astype(np.int64)


def split_path_halves(p: Sequence[int]) -> HomometricPair:
    """Front half versus back half of a path, dropping the last vertex
    when the length is odd.

    Both halves are runs of floor(len(p)/2) consecutive path vertices,
    so their profiles agree by translation.  The caller guarantees p
    really is a path of the host tree.
    """
    p = tuple(int(v) for v in p)
    if len(p) < 2:
        raise ValueError("need a path with at least 2 vertices")
    if len(set(p)) != len(p):
        raise ValueError("path repeats a vertex")
    half = (len(p) - (len(p) & 1)) // 2
    a = p[:half]
    b = p[half:2 * half]
    return HomometricPair(a, b, _digest_from_counts(_segment_counts(half)))


def _scan_edge_list(text: str):
    n = None
    header_line = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        toks = s.split()
        if n is None:
            if len(toks) != 1:
                raise ParseError("expected a single vertex count", lineno)
            try:
                n = int(toks[0])
            except ValueError:
                raise ParseError("vertex count is not an integer", lineno) from None
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
            header_line = lineno
            continue
        if len(toks) != 2:
            raise ParseError("expected an edge 'u v'", lineno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
        for x in (u, v):
            if not (0 <= x < n):
                raise ParseError(f"vertex id {x} out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError(f"self-loop at {u}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        seen.add(key)
        edges.append((u, v))
        last_line = lineno
    if n is None:
        raise ParseError("missing vertex count")
    return n, edges, header_line, last_line


def parse_graph(text: str) -> Graph:
    """Edge-list document -> Graph.

    Line 1 holds the vertex count; every further non-blank line is an
    edge 'u v'.  Blank lines and lines starting with '#' are skipped.
    """
    n, edges, _, _ = _scan_edge_list(text)
    return Graph(n, edges)


def parse_tree(text: str) -> Tree:
    """Edge-list document -> Tree, enforcing exactly n-1 edges and
    connectivity."""
    n, edges, header, last = _scan_edge_list(text)
    if len(edges) != n - 1:
        raise ParseError(
            f"a tree on {n} vertices needs {n - 1} edges, found {len(edges)}",
            last or header)
    try:
        return Tree(n, edges)
    except ValueError as e:
        raise ParseError(str(e)) from None


def serialize_graph(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


serialize_tree = serialize_graph
