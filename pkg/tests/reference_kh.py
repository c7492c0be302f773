"""Dense brute-force reference for the cube homology. Written first, kept dumb.

Independent of resolve/gf2/khcomplex: components via frozensets, monomials as
frozensets of circle components, one full dense differential matrix, numpy
elimination mod 2. No sparsity, no slicing. Only the resolution-label
convention (bit 0 joins slots 0-3 and 1-2) is shared with the package, since
it defines the object being computed.
"""

from itertools import combinations

import numpy as np


def _components(t, state):
    sets = {s: frozenset([s]) for s in range(t.nseg)}
    for bit, x in zip(state, t.crossings):
        pairs = ((0, 3), (1, 2)) if bit == 0 else ((0, 1), (2, 3))
        for i, j in pairs:
            a, b = sets[x[i] >> 1], sets[x[j] >> 1]
            if a is not b and a != b:
                u = a | b
                for s in u:
                    sets[s] = u
    comps = set(sets.values())
    boundary = [tok >> 1 for tok in t.bottom + t.top]
    circles = sorted((c for c in comps if not any(s in c for s in boundary)), key=min)
    backtracks = False
    for comp in comps:
        nb = sum(1 for tok in t.bottom if tok >> 1 in comp)
        nt = sum(1 for tok in t.top if tok >> 1 in comp)
        if nb + nt and (nb != 1 or nt != 1):
            backtracks = True
    return comps, circles, backtracks


def _edge_images(t, c, state, mono):
    """Images of the monomial under the saddle flipping bit c (list of frozensets)."""
    s1 = state[:c] + (1,) + state[c + 1:]
    src_all, src_circ, _ = _components(t, state)
    dst_all, dst_circ, dst_bt = _components(t, s1)
    if dst_bt:
        return []
    if len(src_all) == len(dst_all):                      # zero saddle
        return []

    def host(circ):
        return next((d for d in dst_all if circ <= d), None)

    if len(src_all) - 1 == len(dst_all):                  # merge
        out = set()
        for circ in mono:
            h = host(circ)
            if h not in dst_circ or h in out:             # into an arc, or wedge square
                return []
            out.add(h)
        return [frozenset(out)]

    # split: exactly one source component P covers two target components
    P = next(p for p in src_all if sum(1 for d in dst_all if d <= p) == 2)
    kids = [d for d in dst_all if d <= P]
    rest = frozenset(host(circ) for circ in mono if circ != P)
    assert all(h in dst_circ for h in rest)
    if P in src_circ:
        assert all(k in dst_circ for k in kids), "a circle split must yield circles"
        if P in mono:
            return [rest | set(kids)]
        return [rest | {kids[0]}, rest | {kids[1]}]
    circle_kids = [k for k in kids if k in dst_circ]
    assert len(circle_kids) == 1, "an arc split must shed one circle"
    return [rest | {circle_kids[0]}]


def reference_homology(t):
    """Map (i, j) -> GF(2) homology dimension of the cube complex of t."""
    l, npl, nmi = t.n_crossings, t.n_plus, t.n_minus
    gens = []
    for m in range(1 << l):
        state = tuple((m >> (l - 1 - b)) & 1 for b in range(l))
        _, circles, bt = _components(t, state)
        if bt:
            continue
        for d in range(len(circles) + 1):
            for mono in combinations(circles, d):
                i = -npl + sum(state)
                j = len(circles) - 2 * d + nmi - 2 * npl + sum(state)
                gens.append((state, frozenset(mono), i, j))
    index = {(g[0], g[1]): n for n, g in enumerate(gens)}

    D = np.zeros((len(gens), len(gens)), dtype=np.uint8)
    for col, (state, mono, _, _) in enumerate(gens):
        for c in range(l):
            if not state[c]:
                for img in _edge_images(t, c, state, mono):
                    s1 = state[:c] + (1,) + state[c + 1:]
                    D[index[(s1, img)], col] ^= 1

    by_ij = {}
    for n, g in enumerate(gens):
        by_ij.setdefault((g[2], g[3]), []).append(n)
    dims = {}
    for (i, j), cols in sorted(by_ij.items()):
        rows_out = by_ij.get((i + 1, j), [])
        rows_in = by_ij.get((i - 1, j), [])
        d_out = D[np.ix_(rows_out, cols)] if rows_out else np.zeros((0, len(cols)), np.uint8)
        d_in = D[np.ix_(cols, rows_in)] if rows_in else np.zeros((len(cols), 0), np.uint8)
        h = len(cols) - _rank2(d_out) - _rank2(d_in)
        if h:
            dims[(i, j)] = h
    return dims


def _rank2(M):
    M = M.copy()
    r = 0
    for c in range(M.shape[1]):
        piv = np.nonzero(M[r:, c])[0]
        if len(piv) == 0:
            continue
        p = r + piv[0]
        M[[r, p]] = M[[p, r]]
        rows = np.nonzero(M[:, c])[0]
        M[rows[rows != r]] ^= M[r]
        r += 1
        if r == M.shape[0]:
            break
    return r
