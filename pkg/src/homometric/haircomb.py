"""Haircombs: spine paths with one vertical leg per spine vertex.

A haircomb is determined by its leg lengths m_0..m_{s-1}, each leg
counting its spine vertex, so n = sum(m_i).  Legs are ranked once by
length descending (ties by spine position ascending); the overlap of a
spine shift d counts, over every even-ranked position p whose shifted
partner p-d is odd-ranked, the smaller of the two leg lengths.  Taking
the bottom min(m_p, m_{p-d}) vertices of each matched leg gives two
sets that are translates of one another along the spine, hence a
homometric pair of size overlap(d).

The search below returns the best of three candidates: the best
overlap shift, the two halves of the spine, and the two halves of the
longest leg.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .graphs import (
    HomometricPair,
    ParseError,
    Tree,
    _digest_from_counts,
    _profile_counts,
    _segment_counts,
    _trimmed,
    split_path_halves,
)

__all__ = [
    "Haircomb",
    "LegRanking",
    "OverlapTable",
    "build_haircomb",
    "recognize_haircomb",
    "parse_haircomb",
    "serialize_haircomb",
    "rank_legs",
    "overlap_table",
    "overlap_pair",
    "find_in_haircomb",
]

_DIRECT_OVERLAP_CAP = 4096   # spine size up to which overlaps are summed directly
_FFT_DISTINCT_CAP = 256      # distinct leg lengths tolerated by the FFT route
_COL_PAIR_CAP = 4096         # columns handled by direct pairwise accumulation


@dataclass(frozen=True)
class Haircomb:
    """A haircomb together with its vertex layout.

    legs[p] lists the vertices of the leg at spine position p from the
    spine upward, so legs[p][0] is the spine vertex and len(legs[p]) is
    the leg length.  Construction validates the layout against the
    tree.
    """

    tree: Tree
    legs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        legs = tuple(tuple(int(v) for v in leg) for leg in self.legs)
        object.__setattr__(self, "legs", legs)
        _validate_layout(self.tree, legs)

    @property
    def s(self) -> int:
        return len(self.legs)

    @property
    def n(self) -> int:
        return self.tree.n

    @cached_property
    def leg_lengths(self) -> tuple[int, ...]:
        return tuple(len(leg) for leg in self.legs)

    @cached_property
    def spine(self) -> tuple[int, ...]:
        return tuple(leg[0] for leg in self.legs)

    def vertex(self, position: int, height: int) -> int:
        """Vertex at 0-based spine position and 1-based height."""
        if not (0 <= position < self.s):
            raise ValueError(f"position {position} out of range 0..{self.s - 1}")
        leg = self.legs[position]
        if not (1 <= height <= len(leg)):
            raise ValueError(
                f"height {height} out of range 1..{len(leg)} at position {position}")
        return leg[height - 1]

    def __repr__(self) -> str:
        return f"Haircomb(s={self.s}, n={self.n})"


def _validate_layout(tree: Tree, legs) -> None:
    if not legs or any(not leg for leg in legs):
        raise ValueError("every spine position needs a nonempty leg")
    flat = np.fromiter((v for leg in legs for v in leg), dtype=np.int64)
    if flat.size != tree.n or not np.array_equal(np.sort(flat),
                                                 np.arange(tree.n)):
        raise ValueError("legs must partition the tree's vertices")
    us: list[int] = []
    vs: list[int] = []
    spine = [leg[0] for leg in legs]
    us.extend(spine[:-1])
    vs.extend(spine[1:])
    for leg in legs:
        us.extend(leg[:-1])
        vs.extend(leg[1:])
    if not us:
        return
    ua = np.asarray(us, np.int64)
    va = np.asarray(vs, np.int64)
    claimed = np.stack([np.minimum(ua, va), np.maximum(ua, va)], axis=1)
    claimed = claimed[np.lexsort((claimed[:, 1], claimed[:, 0]))]
    actual = np.asarray(tree.edges(), np.int64).reshape(-1, 2)
    if not (claimed.shape == actual.shape and np.array_equal(claimed, actual)):
        raise ValueError("leg layout does not match the tree's edges")


def build_haircomb(leg_lengths: Sequence[int]) -> Haircomb:
    """Haircomb with the given leg lengths and canonical vertex ids:
    spine 0..s-1 in order, then the above-spine vertices column by
    column, bottom to top."""
    m = np.asarray([int(x) for x in leg_lengths], dtype=np.int64)
    if m.size == 0:
        raise ValueError("need at least one leg")
    if (m < 1).any():
        raise ValueError("leg lengths must be >= 1")
    s = int(m.size)
    n = int(m.sum())
    extras = m - 1
    edges_parts = []
    if s > 1:
        spine_idx = np.arange(s - 1, dtype=np.int64)
        edges_parts.append(np.stack([spine_idx, spine_idx + 1], axis=1))
    total_extra = n - s
    if total_extra:
        col_start = s + np.concatenate(([0], np.cumsum(extras)[:-1]))
        x = np.arange(s, n, dtype=np.int64)
        col_of = np.repeat(np.arange(s, dtype=np.int64), extras)
        first = np.repeat(col_start, extras)
        parent = np.where(x == first, col_of, x - 1)
        edges_parts.append(np.stack([parent, x], axis=1))
    edges = (np.concatenate(edges_parts) if edges_parts
             else np.empty((0, 2), np.int64))
    tree = Tree(n, edges)
    legs = []
    base = s
    for p in range(s):
        e = int(extras[p])
        legs.append((p, *range(base, base + e)))
        base += e
    return Haircomb(tree, tuple(legs))


def serialize_haircomb(h: Haircomb) -> str:
    return (f"haircomb {h.s}\n"
            + " ".join(map(str, h.leg_lengths)) + "\n")


def parse_haircomb(text: str) -> Haircomb:
    """Two-line document: 'haircomb s', then s leg lengths."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            rows.append((lineno, s))
    if not rows:
        raise ParseError("empty haircomb document")
    lineno, head = rows[0]
    toks = head.split()
    if len(toks) != 2 or toks[0] != "haircomb":
        raise ParseError("expected header 'haircomb <s>'", lineno)
    try:
        s = int(toks[1])
    except ValueError:
        raise ParseError("leg count is not an integer", lineno) from None
    if s < 1:
        raise ParseError("leg count must be positive", lineno)
    if len(rows) != 2:
        raise ParseError("expected exactly one line of leg lengths")
    lineno, body = rows[1]
    try:
        lengths = [int(x) for x in body.split()]
    except ValueError:
        raise ParseError("leg lengths must be integers", lineno) from None
    if len(lengths) != s:
        raise ParseError(f"expected {s} leg lengths, found {len(lengths)}", lineno)
    if any(x < 1 for x in lengths):
        raise ParseError("leg lengths must be >= 1", lineno)
    return build_haircomb(lengths)


def _walk_chain(tree: Tree, start: int, blocked: int) -> list[int]:
    """Follow degree <= 2 vertices from start, never stepping back."""
    indptr, indices = tree._indptr, tree._indices
    out = [start]
    prev, cur = blocked, start
    while True:
        nxt = -1
        for j in range(int(indptr[cur]), int(indptr[cur + 1])):
            w = int(indices[j])
            if w != prev:
                nxt = w
                break
        if nxt < 0:
            return out
        out.append(nxt)
        prev, cur = cur, nxt


def recognize_haircomb(t: Tree) -> Haircomb | None:
    """Decompose t as a haircomb, or None when impossible.

    The spine must carry every vertex of degree 3 (degree 4 anywhere is
    immediately fatal), so the branch vertices have to lie on one tree
    path; that path is then extended through the longest chain hanging
    off each end.  The result is canonical: of the two orientations the
    one with the lexicographically larger leg-length sequence is
    returned, ties going to the smaller first spine vertex.
    """
    from .graphs import _bfs

    n = t.n
    if n == 1:
        return Haircomb(t, ((0,),))
    deg = np.diff(t._indptr)
    if (deg > 3).any():
        return None
    branch = np.flatnonzero(deg == 3)
    if branch.size == 0:
        ends = np.flatnonzero(deg == 1)
        spine = _walk_chain(t, int(ends.min()), -1)
        return Haircomb(t, tuple((v,) for v in spine))

    b0 = int(branch[0])
    d0, _ = _bfs(t, b0, want_parent=False)
    far = d0[branch]
    x = int(branch[far == far.max()].min())
    dx, par = _bfs(t, x, want_parent=True)
    farx = dx[branch]
    y = int(branch[farx == farx.max()].min())
    core = [y]
    while core[-1] != x:
        core.append(int(par[core[-1]]))
    core.reverse()
    on_core = np.zeros(n, bool)
    on_core[core] = True
    if not on_core[branch].all():
        return None

    def hanging_chains(v: int) -> list[list[int]]:
        chains = []
        for w in t.neighbors(v):
            if not on_core[w]:
                chains.append(_walk_chain(t, w, v))
        chains.sort(key=lambda c: (-len(c), c[0]))
        return chains

    if x == y:
        chains = hanging_chains(x)
        head = chains[0][::-1] if len(chains) > 0 else []
        tail = chains[1] if len(chains) > 1 else []
        spine = head + [x] + tail
    else:
        cx = hanging_chains(x)
        cy = hanging_chains(y)
        spine = (cx[0][::-1] if cx else []) + core + (cy[0] if cy else [])

    on_spine = np.zeros(n, bool)
    on_spine[spine] = True
    legs = []
    for v in spine:
        off = [w for w in t.neighbors(v) if not on_spine[w]]
        if len(off) > 1:
            return None
        legs.append((v, *(_walk_chain(t, off[0], v) if off else ())))
    lengths = tuple(len(leg) for leg in legs)
    if (lengths[::-1], -spine[-1]) > (lengths, -spine[0]):
        legs = legs[::-1]
    return Haircomb(t, tuple(legs))


@dataclass(frozen=True)
class LegRanking:
    """1-based leg ranks by length descending, position ascending on ties.
    rank[p] is the rank of the leg at spine position p."""

    rank: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rank", tuple(int(r) for r in self.rank))
        if sorted(self.rank) != list(range(1, len(self.rank) + 1)):
            raise ValueError("ranks must be a permutation of 1..s")

    @property
    def even_positions(self) -> tuple[int, ...]:
        return tuple(p for p, r in enumerate(self.rank) if r % 2 == 0)

    @property
    def odd_positions(self) -> tuple[int, ...]:
        return tuple(p for p, r in enumerate(self.rank) if r % 2 == 1)

    def position_of(self, rank: int) -> int:
        return self.rank.index(rank)


def rank_legs(h: Haircomb) -> LegRanking:
    m = h.leg_lengths
    order = sorted(range(h.s), key=lambda p: (-m[p], p))
    rank = [0] * h.s
    for r, p in enumerate(order, 1):
        rank[p] = r
    return LegRanking(tuple(rank))


@dataclass(frozen=True)
class OverlapTable:
    """overlap(d) for every spine shift d in [-s, s], d != 0.

    values[d + s] holds overlap(d); the d = 0 slot is structurally zero
    because a position cannot be both even- and odd-ranked.
    """

    s: int
    values: tuple[int, ...]

    def overlap(self, d: int) -> int:
        if d == 0:
            raise ValueError("shift 0 is excluded")
        if not (-self.s <= d <= self.s):
            raise ValueError(f"shift {d} out of range -{self.s}..{self.s}")
        return self.values[d + self.s]

    @property
    def total(self) -> int:
        return sum(self.values)

    def best_shift(self) -> int | None:
        """The shift with the largest overlap; smaller |d| breaks ties,
        then positive d.  None when every overlap is zero."""
        best_d, best_v = None, 0
        for mag in range(1, self.s + 1):
            for d in (mag, -mag):
                v = self.values[d + self.s]
                if v > best_v:
                    best_d, best_v = d, v
        return best_d


def _overlap_values(m: np.ndarray, rank: np.ndarray) -> np.ndarray:
    """Summed min-length coincidences for every shift, index d + s."""
    s = m.size
    vals = np.zeros(2 * s + 1, np.int64)
    ev = np.flatnonzero(rank % 2 == 0)
    od = np.flatnonzero(rank % 2 == 1)
    if not ev.size or not od.size:
        return vals
    if s <= _DIRECT_OVERLAP_CAP:
        dmat = ev[:, None] - od[None, :]
        mn = np.minimum(m[ev][:, None], m[od][None, :])
        vals += np.bincount((dmat + s).ravel(), weights=mn.ravel(),
                            minlength=2 * s + 1).astype(np.int64)
        return vals
    distinct = np.unique(m)
    if distinct.size <= _FFT_DISTINCT_CAP:
        # min(a, b) = sum over thresholds t of [a >= t][b >= t]; runs of
        # equal indicator sets are collapsed into one correlation each.
        size = 1 << (2 * s - 1).bit_length()
        prev = 0
        for ell in distinct.tolist():
            w = ell - prev
            prev = ell
            ae = np.zeros(s)
            ao = np.zeros(s)
            ae[ev[m[ev] >= ell]] = 1.0
            ao[od[m[od] >= ell]] = 1.0
            corr = np.fft.irfft(np.fft.rfft(ae, size)
                                * np.conj(np.fft.rfft(ao, size)), size)
            corr = np.rint(corr).astype(np.int64)
            d = np.arange(-s, s + 1)
            vals += w * corr[d % size]
        return vals
    # Pathological: huge spine with many distinct lengths.  Accumulate
    # row blocks directly; quadratic but exact.
    block = max(1, 20_000_000 // max(1, od.size))
    for i0 in range(0, ev.size, block):
        sub = ev[i0:i0 + block]
        dmat = sub[:, None] - od[None, :]
        mn = np.minimum(m[sub][:, None], m[od][None, :])
        vals += np.bincount((dmat + s).ravel(), weights=mn.ravel(),
                            minlength=2 * s + 1).astype(np.int64)
    return vals


def overlap_table(h: Haircomb, ranking: LegRanking | None = None) -> OverlapTable:
    ranking = ranking if ranking is not None else rank_legs(h)
    m = np.asarray(h.leg_lengths, np.int64)
    rank = np.asarray(ranking.rank, np.int64)
    vals = _overlap_values(m, rank)
    return OverlapTable(h.s, tuple(vals.tolist()))


class _ProfileTooComplex(Exception):
    """Column layout too irregular for the closed-form counters."""


def _column_profile_counts(cols: Sequence[tuple[int, int, int]]) -> np.ndarray:
    """Distance counts for a union of vertical segments.

    cols holds (position, lo, hi) with at most one segment per
    position; the segment occupies heights lo..hi.  Distances within a
    column are height differences; across columns they are the position
    difference plus both heights measured from the spine.
    """
    if not len(cols):
        return np.zeros(1, np.int64)
    pos = np.asarray([c[0] for c in cols], np.int64)
    lo = np.asarray([c[1] for c in cols], np.int64)
    hi = np.asarray([c[2] for c in cols], np.int64)
    lens = hi - lo + 1
    span = int(pos.max() - pos.min()) if len(cols) > 1 else 0
    bound = span + 2 * int(hi.max() - 1) + int(lens.max()) + 2
    counts = np.zeros(bound + 1, np.int64)

    lmax = int(lens.max())
    if lmax > 1:
        hist = np.bincount(lens)
        tail_cnt = np.concatenate((np.cumsum(hist[::-1])[::-1], [0]))
        tail_sum = np.concatenate(
            (np.cumsum((hist * np.arange(hist.size))[::-1])[::-1], [0]))
        d = np.arange(1, lmax)
        counts[1:lmax] += tail_sum[d + 1] - d * tail_cnt[d + 1]

    p = len(cols)
    if p > 1:
        if p <= _COL_PAIR_CAP:
            i, j = np.triu_indices(p, 1)
            base = np.abs(pos[i] - pos[j]) + lo[i] + lo[j] - 2
            l1 = lens[i]
            l2 = lens[j]
            idx = np.concatenate([base, base + l1, base + l2, base + l1 + l2])
            wts = np.concatenate([np.ones(i.size), -np.ones(i.size),
                                  -np.ones(i.size), np.ones(i.size)])
            diff2 = np.bincount(idx, weights=wts,
                                minlength=counts.size + 1).astype(np.int64)
            counts += np.cumsum(np.cumsum(diff2))[:counts.size]
        elif (lens == 1).all() and (lo == 1).all():
            # Spine-level points only: the profile is the histogram of
            # position differences, which an autocorrelation gives in
            # O(span log span).
            grid = np.zeros(span + 1)
            grid[pos - pos.min()] = 1.0
            size = 1 << (2 * (span + 1)).bit_length()
            fa = np.fft.rfft(grid, size)
            corr = np.rint(np.fft.irfft(fa * np.conj(fa), size)).astype(np.int64)
            d = np.arange(1, span + 1)
            counts[1:span + 1] += corr[d]
        else:
            raise _ProfileTooComplex
    return counts


def _pair_from_columns(cols_a, cols_b, vertices_a, vertices_b):
    ca = _column_profile_counts(cols_a)
    cb = _column_profile_counts(cols_b)
    if not np.array_equal(_trimmed(ca), _trimmed(cb)):
        raise RuntimeError("column profiles disagree; construction bug")
    return HomometricPair(tuple(vertices_a), tuple(vertices_b),
                          _digest_from_counts(ca))


def overlap_pair(h: Haircomb, d: int,
                 ranking: LegRanking | None = None) -> HomometricPair:
    """The verified homometric pair realizing overlap(d).

    For every even-ranked position p whose partner p-d is odd-ranked,
    side A takes the bottom min(m_p, m_{p-d}) vertices of leg p and
    side B the same count from leg p-d.
    """
    ranking = ranking if ranking is not None else rank_legs(h)
    if d == 0 or not (-h.s <= d <= h.s):
        raise ValueError("shift must be nonzero and within -s..s")
    rank = ranking.rank
    m = h.leg_lengths
    cols_a = []
    cols_b = []
    va: list[int] = []
    vb: list[int] = []
    for p in range(h.s):
        q = p - d
        if rank[p] % 2 == 0 and 0 <= q < h.s and rank[q] % 2 == 1:
            c = min(m[p], m[q])
            cols_a.append((p, 1, c))
            cols_b.append((q, 1, c))
            va.extend(h.legs[p][:c])
            vb.extend(h.legs[q][:c])
    try:
        return _pair_from_columns(cols_a, cols_b, sorted(va), sorted(vb))
    except _ProfileTooComplex:
        from .graphs import pair_from_sets
        return pair_from_sets(h.tree, va, vb)


def _leg_halves(h: Haircomb, position: int) -> HomometricPair:
    leg = h.legs[position]
    half = len(leg) // 2
    a = tuple(sorted(leg[:half]))
    b = tuple(sorted(leg[half:2 * half]))
    return HomometricPair(a, b, _digest_from_counts(_segment_counts(half)))


def find_in_haircomb(h: Haircomb) -> HomometricPair:
    """Largest of the three candidate pairs, verified.

    Candidates: the best overlap shift, the spine halves, and the
    halves of the longest leg.  The winner has size at least
    max(floor(s/2), floor(l/2)) outright, and at least
    floor(n^2/(32*l*s)) whenever the longest leg l is below n/2.
    """
    if h.n < 2:
        raise ValueError("need at least 2 vertices")
    ranking = rank_legs(h)
    table = overlap_table(h, ranking)
    best_d = table.best_shift()
    ov = table.overlap(best_d) if best_d is not None else 0
    sp = h.s // 2
    lg = max(h.leg_lengths) // 2
    if ov >= sp and ov >= lg:
        return overlap_pair(h, best_d, ranking)
    if sp >= lg:
        return split_path_halves(h.spine)
    return _leg_halves(h, ranking.position_of(1))
