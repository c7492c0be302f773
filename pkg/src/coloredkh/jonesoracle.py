"""Kauffman bracket, Jones polynomial and reduced colored Jones oracles.

Everything here is independent of the cube/homology pipeline so it can serve
as an Euler-characteristic cross-check.  The bracket is evaluated by planar
contraction: crossings are absorbed one at a time into a processed region
whose partial smoothings are tracked as pairings of dangling strands, so
cable diagrams in the 20-40 crossing range stay cheap.  Loop value
delta = -A^2 - A^(-2); a single round unknot normalizes to 1.

Conventions (recorded in outputs):
  * A-smoothing of X(a,b,c,d) joins a-b and c-d (a positive kink contributes
    -A^3), B-smoothing joins a-d and b-c.
  * q-form: substitute A^2 -> -q^(-1) into the writhe-corrected bracket; on
    the reduced Jones of a knot this yields integer powers of q.
  * colored level n uses the n-strand Chebyshev expansion: the closure of
    the degree-n Jones-Wenzl projector around the knot, divided by its value
    on the unknot.  Zero framing is arranged diagrammatically by adding
    writhe-compensating kinks before cabling.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Tuple

from .diagram import (CableSpec, KnotDiagram, TangleDiagram, _seg, add_kink,
                      cable, close_tangle, cut_at_marked, knot_to_closed_tangle)
from .errors import TooManyCrossings
from .laurent import LaurentPoly

DEFAULT_ORACLE_BOUND = 20

DELTA = LaurentPoly.from_dict({2: -1, -2: -1}, "A")


# ---------------------------------------------------------------------------
# bracket by contraction
# ---------------------------------------------------------------------------

def _contraction_order(t: TangleDiagram) -> List[int]:
    """Greedy order keeping the frontier small: always absorb the crossing
    sharing the most segments with the processed region."""
    seg_of = [{_seg(tok) for tok in x} for x in t.crossings]
    remaining = set(range(t.n_crossings))
    touched: set = set()
    order = []
    while remaining:
        best = max(remaining, key=lambda ci: (len(seg_of[ci] & touched), -ci))
        order.append(best)
        remaining.discard(best)
        touched |= seg_of[best]
    return order


def _paths_and_cycles(edges: List[Tuple[int, int]]) -> Tuple[List[Tuple[int, int]], int]:
    """Decompose a multigraph of maximum degree 2 into open paths and cycles.

    Returns (list of path endpoint pairs, cycle count).  Parallel edges and
    isolated 1-cycles behave as expected (a double edge is a 2-cycle).
    """
    adj: Dict[int, List[Tuple[int, int]]] = {}
    for eid, (a, b) in enumerate(edges):
        adj.setdefault(a, []).append((eid, b))
        adj.setdefault(b, []).append((eid, a))
    used = [False] * len(edges)
    paths = []
    for v, inc in adj.items():
        if len(inc) != 1:
            continue
        eid, _ = inc[0]
        if used[eid]:
            continue
        cur = v
        while True:
            step = next(((e, w) for e, w in adj[cur] if not used[e]), None)
            if step is None:
                break
            used[step[0]] = True
            cur = step[1]
        paths.append((v, cur))
    cycles = 0
    for eid, (a, b) in enumerate(edges):
        if used[eid]:
            continue
        # everything left is a disjoint union of cycles; eat one
        cycles += 1
        used[eid] = True
        cur = b
        while True:
            step = next(((e, w) for e, w in adj[cur] if not used[e]), None)
            if step is None:
                break
            used[step[0]] = True
            cur = step[1]
    return paths, cycles


def bracket_raw(t: TangleDiagram, bound: Optional[int] = None) -> LaurentPoly:
    """Unnormalized bracket of a closed tangle: every loop contributes delta."""
    if not t.is_closed():
        raise ValueError("bracket needs a closed (0-0) tangle")
    if bound is not None and t.n_crossings > bound:
        raise TooManyCrossings(
            f"{t.n_crossings} crossings exceed the oracle bound {bound}"
        )
    total = LaurentPoly.one("A")
    for _ in range(t.free_loops):
        total = total * DELTA
    if not t.crossings:
        return total

    where: Dict[int, List[Tuple[int, int]]] = {}
    for ci, x in enumerate(t.crossings):
        for pos, tok in enumerate(x):
            where.setdefault(_seg(tok), []).append((ci, pos))

    order = _contraction_order(t)
    rank_of = {ci: r for r, ci in enumerate(order)}
    one = LaurentPoly.one("A")
    a_pos = LaurentPoly.monomial(1, 1, "A")
    a_neg = LaurentPoly.monomial(-1, 1, "A")

    # states: canonical pairing (tuple of sorted (seg, seg) pairs) -> poly
    states: Dict[Tuple, LaurentPoly] = {(): one}
    for ci in order:
        x = t.crossings[ci]
        segs = [_seg(tok) for tok in x]
        local: Dict[int, int] = {}
        exits: Dict[int, int] = {}   # slot -> seg leaving the crossing
        for slot in range(4):
            s = segs[slot]
            a, b = where[s]
            other = b if a == (ci, slot) else a
            if other[0] == ci:
                local[slot] = other[1]
            else:
                exits[slot] = s

        smoothings = []
        for joins, factor in ((((0, 1), (2, 3)), a_pos), (((0, 3), (1, 2)), a_neg)):
            # slot graph: smoothing joins plus segments returning locally
            slot_edges = list(joins) + [(a, b) for a, b in local.items() if a < b]
            slot_paths, loops = _paths_and_cycles(slot_edges)
            conns = []
            for u, v in slot_paths:
                if u not in exits or v not in exits:
                    raise AssertionError("open slot path must end at exits")
                conns.append((exits[u], exits[v]))
            smoothings.append((factor * DELTA ** loops, conns))

        new_states: Dict[Tuple, LaurentPoly] = {}
        for pairing, coeff in states.items():
            for base, conns in smoothings:
                # splice graph on segments: one connection edge max per exit,
                # one pairing edge per frontier strand; paths re-pair their
                # dangling ends, cycles close up
                new_paths, ncycles = _paths_and_cycles(conns + list(pairing))
                coeff2 = coeff * base * DELTA ** ncycles
                key = tuple(sorted((min(a, b), max(a, b)) for a, b in new_paths))
                if key in new_states:
                    new_states[key] = new_states[key] + coeff2
                else:
                    new_states[key] = coeff2
        states = new_states
    if list(states) != [()]:
        raise AssertionError("contraction left open strands on a closed tangle")
    return total * states[()]


def kauffman_bracket(d, bound: int = DEFAULT_ORACLE_BOUND) -> LaurentPoly:
    """Bracket normalized so the round unknot evaluates to 1."""
    t = knot_to_closed_tangle(d) if isinstance(d, KnotDiagram) else d
    raw = bracket_raw(t, bound)
    return raw.exact_div(DELTA)


def _writhe_factor(w: int) -> LaurentPoly:
    # (-A^3)^(-w)
    sign = -1 if w % 2 else 1
    return LaurentPoly.monomial(-3 * w, sign, "A")


def _to_q(p: LaurentPoly) -> LaurentPoly:
    return p.map_square_to("q", -1, sign_alternates=True)


def jones(d: KnotDiagram, bound: int = DEFAULT_ORACLE_BOUND) -> LaurentPoly:
    """Writhe-corrected bracket in the q-form (A^2 -> -1/q).

    For a knot this is the reduced Jones polynomial normalized to 1 on the
    unknot; exponents are even.
    """
    f = _writhe_factor(d.writhe) * kauffman_bracket(d, bound)
    return _to_q(f)


def _zero_writhe(d: KnotDiagram) -> KnotDiagram:
    out = d
    w = d.writhe
    while w != 0:
        out = add_kink(out, -1 if w > 0 else 1)
        w += -1 if w > 0 else 1
    return out


def chebyshev_coeffs(n: int) -> List[Tuple[int, int]]:
    """S_n expansion: [(cable width, coefficient)] with width n-2j."""
    return [(n - 2 * j, (-1) ** j * comb(n - j, j)) for j in range(n // 2 + 1)]


def colored_jones_reduced(k: KnotDiagram, n: int,
                          bound: int = DEFAULT_ORACLE_BOUND) -> LaurentPoly:
    """Reduced colored Jones at level n via Jones-Wenzl cabling.

    Level n pairs with the n-cable complex: level 1 is the Jones polynomial.
    The bound applies to n^2 * crossings of the input diagram; the
    writhe-compensating kinks enlarge internal cables past it by design.
    """
    if n < 1:
        raise ValueError("color level must be >= 1")
    if n * n * k.n_crossings > bound:
        raise TooManyCrossings(
            f"n^2*l = {n * n * k.n_crossings} exceeds the oracle bound {bound}"
        )
    k0 = _zero_writhe(k)
    tangle = cut_at_marked(k0)
    num = LaurentPoly.zero("A")
    den = LaurentPoly.zero("A")
    for width, coeff in chebyshev_coeffs(n):
        if width == 0:
            term = LaurentPoly.one("A")
            uterm = LaurentPoly.one("A")
        else:
            term = bracket_raw(close_tangle(cable(tangle, width)))
            uterm = DELTA ** width
        num = num + coeff * term
        den = den + coeff * uterm
    return _to_q(num.exact_div(den))


# ---------------------------------------------------------------------------
# the frozen convention map
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConventionMap:
    """Variable substitution reconciling cube Euler characteristics with the
    oracle's colored Jones normalization.

    Pinned empirically on the unknot and trefoil (scripts/pin_convention_map
    reproduces the determination), then frozen: the cube computes the mirror
    diagram's invariant, so the oracle value matches after q -> 1/q; no
    residual power shift or sign was needed.
    """

    invert_q: bool = True
    q_shift: int = 0
    sign: int = 1

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        out = p.invert_var() if self.invert_q else p
        if self.q_shift:
            out = out.shift(self.q_shift)
        return out if self.sign == 1 else -out

    def to_json_dict(self) -> dict:
        return {"invert_q": self.invert_q, "q_shift": self.q_shift, "sign": self.sign}


CONVENTION_MAP = ConventionMap()


def chi_matches_oracle(chi: LaurentPoly, oracle_poly: LaurentPoly,
                       cmap: ConventionMap = CONVENTION_MAP) -> bool:
    """Check chi == cmap(oracle_poly); both sides in q."""
    return chi == cmap.apply(oracle_poly)
