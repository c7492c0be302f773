"""Resolutions of tangle diagrams and the saddles between them.

A resolution state is a bit per crossing: bit 0 reconnects the crossing's
counterclockwise slots as (0-3)(1-2), bit 1 as (0-1)(2-3).  With the under
strand entering at slot 0, the 1-reconnection is the Kauffman A-smoothing;
the package's "0" label therefore matches the branched-double-cover surgery
ordering rather than Khovanov's, and the computed invariant of a diagram is
the colored Khovanov homology of its mirror (see README).

Components of a resolved tangle are canonically indexed by their smallest
segment id, which keeps bases stable across the whole cube.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .diagram import TangleDiagram, _is_head, _seg
from .errors import (BitAlreadyOne, CubeTooLarge, InconsistentSaddle,
                     StateLengthMismatch, ZeroSaddleViolation)

State = Tuple[int, ...]

DEFAULT_CUBE_BOUND = 24

# slot pairings per resolution bit
_PAIRS = (((0, 3), (1, 2)), ((0, 1), (2, 3)))


class ArcKind(Enum):
    THROUGH = "through"
    BOTTOM_BOTTOM = "bottom-bottom"
    TOP_TOP = "top-top"


@dataclass(frozen=True)
class ResolvedTangle:
    """A crossingless configuration: circles plus boundary arcs.

    ``circles``/``arcs`` are sorted component ids (smallest member segment;
    free loops get ids past the segment range).  ``component_map`` sends each
    segment to its component id.
    """

    circles: Tuple[int, ...]
    arcs: Tuple[Tuple[int, ArcKind], ...]
    backtracks: bool
    component_map: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.circles)

    def component_count(self) -> int:
        return len(self.circles) + len(self.arcs)

    def arc_kind(self, comp: int) -> Optional[ArcKind]:
        for c, kind in self.arcs:
            if c == comp:
                return kind
        return None


@dataclass(frozen=True)
class SaddleKind:
    """Merge/split/zero classification of one cube edge, with participants.

    merge: src_components = (a, b), dst_components = (merged,)
    split: src_components = (c,),   dst_components = (a, b)
    zero:  the two arc components on each side, unchanged in number
    """

    kind: str
    src_components: Tuple[int, ...]
    dst_components: Tuple[int, ...]


def _check_state(t: TangleDiagram, s: Sequence[int]) -> None:
    if len(s) != t.n_crossings:
        raise StateLengthMismatch(
            f"state length {len(s)} != crossing count {t.n_crossings}"
        )
    if any(b not in (0, 1) for b in s):
        raise StateLengthMismatch("state bits must be 0 or 1")


def resolve(t: TangleDiagram, s: Sequence[int]) -> ResolvedTangle:
    """Resolve every crossing of ``t`` according to the state bits."""
    _check_state(t, s)
    parent = list(range(t.nseg))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            # keep the smallest id as representative
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    for bit, x in zip(s, t.crossings):
        for i, j in _PAIRS[bit]:
            union(_seg(x[i]), _seg(x[j]))

    ends_bottom: Dict[int, int] = {}
    ends_top: Dict[int, int] = {}
    for tok in t.bottom:
        r = find(_seg(tok))
        ends_bottom[r] = ends_bottom.get(r, 0) + 1
    for tok in t.top:
        r = find(_seg(tok))
        ends_top[r] = ends_top.get(r, 0) + 1

    comp_map = tuple(find(i) for i in range(t.nseg))
    reps = sorted(set(comp_map))
    circles: List[int] = []
    arcs: List[Tuple[int, ArcKind]] = []
    backtracks = False
    for r in reps:
        nb, nt = ends_bottom.get(r, 0), ends_top.get(r, 0)
        if nb + nt == 0:
            circles.append(r)
        elif nb == 1 and nt == 1:
            arcs.append((r, ArcKind.THROUGH))
        elif nb == 2 and nt == 0:
            arcs.append((r, ArcKind.BOTTOM_BOTTOM))
            backtracks = True
        elif nt == 2 and nb == 0:
            arcs.append((r, ArcKind.TOP_TOP))
            backtracks = True
        else:
            raise InconsistentSaddle(
                f"component {r} has {nb} bottom / {nt} top endpoints"
            )
    # crossing-free circles sit past the segment id range
    for i in range(t.free_loops):
        circles.append(t.nseg + i)
    return ResolvedTangle(tuple(circles), tuple(arcs), backtracks, comp_map)


def saddle_classify(t: TangleDiagram, s: Sequence[int], c: int,
                    rt0: Optional[ResolvedTangle] = None,
                    rt1: Optional[ResolvedTangle] = None) -> SaddleKind:
    """Classify the cube edge flipping bit ``c`` of ``s`` from 0 to 1.

    Passing precomputed resolutions for either side avoids recomputation.
    The component-count trichotomy is exhaustive for planar data; a
    count-preserving saddle where neither side's participating arcs
    backtrack raises ZeroSaddleViolation instead of proceeding silently.
    """
    _check_state(t, s)
    if s[c] != 0:
        raise BitAlreadyOne(f"bit {c} of the state is already 1")
    if rt0 is None:
        rt0 = resolve(t, s)
    if rt1 is None:
        s1 = list(s)
        s1[c] = 1
        rt1 = resolve(t, s1)
    x = t.crossings[c]
    sa, sb = _seg(x[0]), _seg(x[1])
    a0, b0 = rt0.component_map[sa], rt0.component_map[sb]
    a1, b1 = rt1.component_map[sa], rt1.component_map[_seg(x[2])]
    src_distinct = a0 != b0
    dst_distinct = a1 != b1
    if src_distinct and not dst_distinct:
        return SaddleKind("merge", (min(a0, b0), max(a0, b0)), (a1,))
    if not src_distinct and dst_distinct:
        return SaddleKind("split", (a0,), (min(a1, b1), max(a1, b1)))
    if src_distinct and dst_distinct:
        if not rt0.backtracks and not rt1.backtracks:
            raise ZeroSaddleViolation(
                f"zero saddle at crossing {c}, state {tuple(s)}: "
                "neither side backtracks; input is not planar"
            )
        return SaddleKind("zero", (min(a0, b0), max(a0, b0)),
                          (min(a1, b1), max(a1, b1)))
    raise InconsistentSaddle(
        f"saddle at crossing {c} neither merges, splits, nor repairs arcs"
    )


def enumerate_cube(t: TangleDiagram, bound: int = DEFAULT_CUBE_BOUND
                   ) -> Iterator[Tuple[State, ResolvedTangle]]:
    """Stream all 2^l states in lexicographic order (bit 0 most significant)."""
    l = t.n_crossings
    if l > bound:
        raise CubeTooLarge(
            f"{l} crossings exceed the cube bound {bound} ({2**l} states); "
            "raise --cube-bound or use the j-sliced pipeline"
        )
    for m in range(1 << l):
        s = tuple((m >> (l - 1 - i)) & 1 for i in range(l))
        yield s, resolve(t, s)


def state_from_int(m: int, l: int) -> State:
    return tuple((m >> (l - 1 - i)) & 1 for i in range(l))


def state_weight(s: Sequence[int]) -> int:
    return sum(s)
