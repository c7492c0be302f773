"""Jit-compiled cube pipeline for large resolution cubes.

The python-object path in khcomplex materializes every vertex space and edge
map; fine through ~2^14 states.  This module handles the 2^16..2^24 range:
states are ints, components live in flat int8 arrays (component id = smallest
member segment), monomials are bitmasks ranked in mask-value order, and the
per-(i,j) boundary blocks are eliminated column by column with a
persistence-style sparse GF(2) reduction.  Results are bit-identical to the
object path; tests enforce this on overlapping sizes.

States are numbered so that crossing c corresponds to bit (l-1-c): numeric
order on state ints is lexicographic order on bit tuples.
"""

from __future__ import annotations

from typing import Dict, Tuple

import numpy as np
from numba import njit

from .diagram import TangleDiagram, _seg

MAX_SEGMENTS = 120
MAX_CIRCLES = 24


@njit(cache=True, nogil=True)
def _resolve_all(nstates, l, nseg, cross_segs, seg_bot, seg_top,
                 comp, kvec, btvec, circ_off, circ_reps, store):
    """Union-find every state.  With store=0 only counts circle slots."""
    parent = np.empty(nseg, np.int16)
    nb = np.empty(nseg, np.int16)
    nt = np.empty(nseg, np.int16)
    pos = 0
    for m in range(nstates):
        for i in range(nseg):
            parent[i] = i
        for c in range(l):
            bit = (m >> (l - 1 - c)) & 1
            if bit == 0:
                pa, pb = cross_segs[c, 0], cross_segs[c, 3]
                pc_, pd = cross_segs[c, 1], cross_segs[c, 2]
            else:
                pa, pb = cross_segs[c, 0], cross_segs[c, 1]
                pc_, pd = cross_segs[c, 2], cross_segs[c, 3]
            ra = pa
            while parent[ra] != ra:
                parent[ra] = parent[parent[ra]]
                ra = parent[ra]
            rb = pb
            while parent[rb] != rb:
                parent[rb] = parent[parent[rb]]
                rb = parent[rb]
            if ra < rb:
                parent[rb] = ra
            elif rb < ra:
                parent[ra] = rb
            ra = pc_
            while parent[ra] != ra:
                parent[ra] = parent[parent[ra]]
                ra = parent[ra]
            rb = pd
            while parent[rb] != rb:
                parent[rb] = parent[parent[rb]]
                rb = parent[rb]
            if ra < rb:
                parent[rb] = ra
            elif rb < ra:
                parent[ra] = rb
        k = 0
        bt = False
        for i in range(nseg):
            r = i
            while parent[r] != r:
                r = parent[r]
            parent[i] = r
            nb[i] = 0
            nt[i] = 0
        for i in range(nseg):
            nb[parent[i]] += seg_bot[i]
            nt[parent[i]] += seg_top[i]
        if store:
            circ_off[m] = pos
            for i in range(nseg):
                comp[m, i] = parent[i]
        for i in range(nseg):
            if parent[i] == i:
                if nb[i] + nt[i] == 0:
                    if store:
                        circ_reps[pos] = i
                    pos += 1
                    k += 1
                elif not (nb[i] == 1 and nt[i] == 1):
                    bt = True
        if store:
            kvec[m] = k
            btvec[m] = bt
    if store:
        circ_off[nstates] = pos
    return pos


@njit(cache=True, nogil=True)
def _binom_table(n):
    t = np.zeros((n + 1, n + 1), np.int64)
    for i in range(n + 1):
        t[i, 0] = 1
        for j in range(1, i + 1):
            t[i, j] = t[i - 1, j - 1] + t[i - 1, j]
    return t


@njit(cache=True, nogil=True, inline="always")
def _mask_rank(mask, binom):
    """Rank of a fixed-popcount mask among same-popcount masks by value."""
    r = 0
    t = 0
    p = 0
    while mask:
        if mask & 1:
            t += 1
            r += binom[p, t]
        mask >>= 1
        p += 1
    return r


@njit(cache=True, nogil=True, inline="always")
def _next_same_popcount(m):
    c = m & -m
    r = m + c
    return (((r ^ m) >> 2) // c) | r


@njit(cache=True, nogil=True)
def _level_offsets(l, r, j, jbase, kvec, btvec, binom, offs):
    """Block offsets for level r at quantum grading j; returns the block dim."""
    total = 0
    m = np.int64((1 << r) - 1)
    last = m << (l - r)
    while True:
        offs[m] = total
        if not btvec[m]:
            kk = kvec[m]
            num = kk + jbase + r - j
            if num % 2 == 0:
                d = num // 2
                if 0 <= d <= kk:
                    total += binom[kk, d]
        if m == last or r == 0:
            break
        m = _next_same_popcount(m)
    return total


@njit(cache=True, nogil=True)
def _block_rank(l, r, j, jbase, cross_segs,
                comp, kvec, btvec, circ_off, circ_reps,
                offs_dst, dim_dst, binom):
    """Rank of d: C^(r,j) -> C^(r+1,j) by streaming column reduction.

    Pivot key is the largest remaining row index; columns arrive in basis
    order (states lexicographic, then mask value).
    """
    if dim_dst == 0:
        return 0
    pivot_off = np.full(dim_dst, -1, np.int64)
    pivot_len = np.zeros(dim_dst, np.int64)
    pool = np.empty(1 << 16, np.int32)
    pool_ptr = 0
    rank = 0
    maxw = 2 * l + 4
    cap = 1 << 12
    col = np.empty(cap, np.int32)
    scratch = np.empty(cap, np.int32)
    raw = np.empty(maxw, np.int64)

    src_circ = np.empty(MAX_CIRCLES, np.int16)
    dst_circ = np.empty(MAX_CIRCLES, np.int16)
    edge_kind = np.zeros(l, np.int8)
    ed_a = np.zeros(l, np.int8)
    ed_b = np.zeros(l, np.int8)
    ed_t1 = np.zeros(l, np.int8)
    ed_t2 = np.zeros(l, np.int8)
    ed_m1 = np.zeros(l, np.int64)
    ed_map = np.zeros((l, MAX_CIRCLES), np.int8)

    m = np.int64((1 << r) - 1)
    last = m << (l - r)
    while True:
        use = not btvec[m]
        kk = kvec[m] if use else 0
        d = -1
        if use:
            num = kk + jbase + r - j
            if num % 2 == 0 and 0 <= num // 2 <= kk:
                d = num // 2
        if d >= 0:
            co = circ_off[m]
            for i in range(kk):
                src_circ[i] = circ_reps[co + i]

            for c in range(l):
                edge_kind[c] = 0
                if (m >> (l - 1 - c)) & 1:
                    continue
                m1 = m | (np.int64(1) << (l - 1 - c))
                if btvec[m1]:
                    continue
                s0 = cross_segs[c, 0]
                s1 = cross_segs[c, 1]
                s2 = cross_segs[c, 2]
                a0 = comp[m, s0]
                b0 = comp[m, s1]
                a1 = comp[m1, s0]
                b1 = comp[m1, s2]
                if (a0 != b0) and (a1 != b1):
                    continue                      # zero saddle
                if (a0 == b0) and (a1 == b1):
                    continue                      # non-planar guard
                kk1 = kvec[m1]
                co1 = circ_off[m1]
                for i in range(kk1):
                    dst_circ[i] = circ_reps[co1 + i]
                ed_m1[c] = m1
                if a0 != b0:                      # merge a0, b0 -> a1
                    pa = -1
                    pb = -1
                    for i in range(kk):
                        if src_circ[i] == a0:
                            pa = i
                        elif src_circ[i] == b0:
                            pb = i
                    pt = -1
                    for i in range(kk1):
                        if dst_circ[i] == a1:
                            pt = i
                    ii = 0
                    for i in range(kk):
                        cid = src_circ[i]
                        if cid == a0 or cid == b0:
                            ed_map[c, i] = -1
                        else:
                            while dst_circ[ii] != cid:
                                ii += 1
                            ed_map[c, i] = ii
                    if pa >= 0 and pb >= 0 and pt >= 0:
                        edge_kind[c] = 1          # circle+circle -> circle
                        ed_a[c] = pa
                        ed_b[c] = pb
                        ed_t1[c] = pt
                    elif (pa >= 0) != (pb >= 0) and pt < 0:
                        edge_kind[c] = 2          # circle into arc
                        ed_a[c] = pa if pa >= 0 else pb
                else:                             # split a0 -> a1, b1
                    p0 = -1
                    for i in range(kk):
                        if src_circ[i] == a0:
                            p0 = i
                    p1 = -1
                    p2 = -1
                    for i in range(kk1):
                        if dst_circ[i] == a1:
                            p1 = i
                        elif dst_circ[i] == b1:
                            p2 = i
                    ii = 0
                    for i in range(kk):
                        cid = src_circ[i]
                        if cid == a0:
                            ed_map[c, i] = -1
                        else:
                            while dst_circ[ii] != cid:
                                ii += 1
                            ed_map[c, i] = ii
                    if p0 >= 0 and p1 >= 0 and p2 >= 0:
                        edge_kind[c] = 3          # circle -> two circles
                        ed_a[c] = p0
                        ed_t1[c] = p1
                        ed_t2[c] = p2
                    elif p0 < 0 and (p1 >= 0) != (p2 >= 0):
                        edge_kind[c] = 4          # arc sheds one circle
                        ed_t1[c] = p1 if p1 >= 0 else p2

            mask = np.int64((1 << d) - 1)
            mask_last = mask << (kk - d)
            while True:
                nraw = 0
                for c in range(l):
                    kd = edge_kind[c]
                    if kd == 0:
                        continue
                    base = np.int64(0)
                    for i in range(kk):
                        if (mask >> i) & 1:
                            mp = ed_map[c, i]
                            if mp >= 0:
                                base |= np.int64(1) << mp
                    if kd == 1:
                        ha = (mask >> ed_a[c]) & 1
                        hb = (mask >> ed_b[c]) & 1
                        if ha and hb:
                            continue
                        if ha or hb:
                            base |= np.int64(1) << ed_t1[c]
                        raw[nraw] = offs_dst[ed_m1[c]] + _mask_rank(base, binom)
                        nraw += 1
                    elif kd == 2:
                        if (mask >> ed_a[c]) & 1:
                            continue
                        raw[nraw] = offs_dst[ed_m1[c]] + _mask_rank(base, binom)
                        nraw += 1
                    elif kd == 3:
                        if (mask >> ed_a[c]) & 1:
                            b2 = base | (np.int64(1) << ed_t1[c]) | (np.int64(1) << ed_t2[c])
                            raw[nraw] = offs_dst[ed_m1[c]] + _mask_rank(b2, binom)
                            nraw += 1
                        else:
                            raw[nraw] = offs_dst[ed_m1[c]] + _mask_rank(
                                base | (np.int64(1) << ed_t1[c]), binom)
                            nraw += 1
                            raw[nraw] = offs_dst[ed_m1[c]] + _mask_rank(
                                base | (np.int64(1) << ed_t2[c]), binom)
                            nraw += 1
                    else:
                        raw[nraw] = offs_dst[ed_m1[c]] + _mask_rank(
                            base | (np.int64(1) << ed_t1[c]), binom)
                        nraw += 1
                # insertion sort; targets are pairwise distinct
                for i in range(1, nraw):
                    key = raw[i]
                    jj = i - 1
                    while jj >= 0 and raw[jj] > key:
                        raw[jj + 1] = raw[jj]
                        jj -= 1
                    raw[jj + 1] = key
                n = nraw
                for i in range(n):
                    col[i] = np.int32(raw[i])
                # reduce against stored pivots
                while n > 0:
                    low = col[n - 1]
                    poff = pivot_off[low]
                    if poff < 0:
                        if pool_ptr + n > pool.shape[0]:
                            grow = pool.shape[0] * 2
                            while pool_ptr + n > grow:
                                grow *= 2
                            bigger = np.empty(grow, np.int32)
                            bigger[:pool_ptr] = pool[:pool_ptr]
                            pool = bigger
                        pivot_off[low] = pool_ptr
                        pivot_len[low] = n
                        pool[pool_ptr:pool_ptr + n] = col[:n]
                        pool_ptr += n
                        rank += 1
                        break
                    ln = pivot_len[low]
                    need = n + ln
                    if need > cap:
                        while need > cap:
                            cap *= 2
                        newcol = np.empty(cap, np.int32)
                        newcol[:n] = col[:n]
                        col = newcol
                        scratch = np.empty(cap, np.int32)
                    i = 0
                    jj = 0
                    w = 0
                    while i < n and jj < ln:
                        a = col[i]
                        b = pool[poff + jj]
                        if a == b:
                            i += 1
                            jj += 1
                        elif a < b:
                            scratch[w] = a
                            w += 1
                            i += 1
                        else:
                            scratch[w] = b
                            w += 1
                            jj += 1
                    while i < n:
                        scratch[w] = col[i]
                        w += 1
                        i += 1
                    while jj < ln:
                        scratch[w] = pool[poff + jj]
                        w += 1
                        jj += 1
                    col[:w] = scratch[:w]
                    n = w
                if mask == mask_last or d == 0:
                    break
                mask = _next_same_popcount(mask)
        if m == last or r == 0:
            break
        m = _next_same_popcount(m)
    return rank


def flatten_tangle(t: TangleDiagram):
    """Flat arrays for the kernels."""
    if t.free_loops:
        raise ValueError("fast path does not handle free loops")
    l, nseg = t.n_crossings, t.nseg
    if nseg > MAX_SEGMENTS:
        raise ValueError(f"too many segments for the fast path ({nseg})")
    cross = np.zeros((l, 4), np.int16)
    for ci, x in enumerate(t.crossings):
        for p, tok in enumerate(x):
            cross[ci, p] = _seg(tok)
    seg_bot = np.zeros(nseg, np.int8)
    seg_top = np.zeros(nseg, np.int8)
    for tok in t.bottom:
        seg_bot[_seg(tok)] += 1
    for tok in t.top:
        seg_top[_seg(tok)] += 1
    return l, nseg, cross, seg_bot, seg_top


def cube_data(t: TangleDiagram):
    """Resolve the whole cube into flat arrays."""
    l, nseg, cross, seg_bot, seg_top = flatten_tangle(t)
    nstates = 1 << l
    comp = np.empty((nstates, nseg), np.int8)
    kvec = np.empty(nstates, np.int8)
    btvec = np.empty(nstates, np.bool_)
    circ_off = np.empty(nstates + 1, np.int64)
    generous = nstates * (nseg // 2 + 2)
    if generous * 1 <= 256 * 2 ** 20:
        circ_reps = np.empty(generous, np.int8)
    else:
        dummy = np.empty(1, np.int8)
        need = _resolve_all(nstates, l, nseg, cross, seg_bot, seg_top,
                            comp, kvec, btvec, circ_off, dummy, 0)
        circ_reps = np.empty(need, np.int8)
    _resolve_all(nstates, l, nseg, cross, seg_bot, seg_top,
                 comp, kvec, btvec, circ_off, circ_reps, 1)
    if int(kvec.max()) > MAX_CIRCLES:
        raise ValueError("circle count exceeds the monomial mask width")
    return {
        "l": l, "nseg": nseg, "cross": cross, "nstates": nstates,
        "comp": comp, "kvec": kvec, "btvec": btvec,
        "circ_off": circ_off, "circ_reps": circ_reps,
        "jbase": t.n_minus - 2 * t.n_plus, "n_plus": t.n_plus,
    }


def fast_homology_dims(t: TangleDiagram, jobs: int = 1
                       ) -> Tuple[Dict[Tuple[int, int], int], Dict[Tuple[int, int], int]]:
    """(homology dims, chain dims) keyed by (i, j), via the jit pipeline."""
    data = cube_data(t)
    l, nstates = data["l"], data["nstates"]
    kvec, btvec = data["kvec"], data["btvec"]
    jbase, n_plus = data["jbase"], data["n_plus"]
    binom = _binom_table(max(MAX_CIRCLES + 1, l + 2))

    if l == 0:
        k = int(kvec[0])
        dims = {}
        for d in range(k + 1):
            j = k - 2 * d + jbase
            dims[(0, j)] = dims.get((0, j), 0) + int(binom[k, d])
        return (dict(dims) if not btvec[0] else {}), (dict(dims) if not btvec[0] else {})

    # occurring j values from the (weight, circle-count) census
    mm = np.arange(nstates, dtype=np.int64)
    pc = np.zeros(nstates, np.int64)
    for sh in range(l):
        pc += (mm >> sh) & 1
    codes = (pc * (MAX_CIRCLES + 1) + kvec)[~btvec]
    jvals = set()
    for code in np.unique(codes):
        r, k = int(code) // (MAX_CIRCLES + 1), int(code) % (MAX_CIRCLES + 1)
        for d in range(k + 1):
            jvals.add(k - 2 * d + jbase + r)

    chain_dims: Dict[Tuple[int, int], int] = {}
    hom_dims: Dict[Tuple[int, int], int] = {}

    def run_slice(j):
        offs = [np.zeros(nstates, np.int32), np.zeros(nstates, np.int32)]
        dims = np.zeros(l + 2, np.int64)
        ranks = np.zeros(l + 2, np.int64)
        dims[0] = _level_offsets(l, 0, j, jbase, kvec, btvec, binom, offs[0])
        for r in range(l + 1):
            if r + 1 <= l:
                dims[r + 1] = _level_offsets(l, r + 1, j, jbase, kvec, btvec,
                                             binom, offs[(r + 1) % 2])
            if r <= l - 1 and dims[r] > 0 and dims[r + 1] > 0:
                ranks[r] = _block_rank(
                    l, r, j, jbase, data["cross"], data["comp"], kvec, btvec,
                    data["circ_off"], data["circ_reps"],
                    offs[(r + 1) % 2], dims[r + 1], binom)
        out = []
        for r in range(l + 1):
            if dims[r]:
                i = -n_plus + r
                h = int(dims[r] - ranks[r] - (ranks[r - 1] if r else 0))
                out.append((i, j, int(dims[r]), h))
        return out

    results = []
    js = sorted(jvals)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            for rows in ex.map(run_slice, js):
                results.extend(rows)
    else:
        for j in js:
            results.extend(run_slice(j))
    for (i, j, dim, h) in results:
        chain_dims[(i, j)] = dim
        if h < 0:
            raise AssertionError(f"negative homology at ({i},{j})")
        if h:
            hom_dims[(i, j)] = h
    return hom_dims, chain_dims
