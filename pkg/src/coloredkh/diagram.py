"""Knot and tangle diagrams: ingestion, validation, marking, cutting, cabling.

PD convention: a crossing is a 4-tuple of edge ids listed counterclockwise
starting from the incoming under-strand.  Edge orientations are recovered by
tracing the knot (the under strand enters at position 0 and leaves at
position 2); a crossing is positive exactly when the over strand enters at
position 3.

Tangles live in a strip with endpoints on the bottom and top boundary lines,
both ordered left to right.  Tangle connectivity is stored via segment-end
tokens: segment ``s`` has tail token ``2s`` and head token ``2s+1``, and every
token is attached exactly once, either to a crossing slot or to a boundary
point.  Planarity of the input is trusted, not verified.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InconsistentIncidence, MalformedPD, MultiComponent

Crossing = Tuple[int, int, int, int]


# ---------------------------------------------------------------------------
# knot diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KnotDiagram:
    """An oriented one-component planar diagram with a marked edge.

    ``signs``, ``edge_tail`` and ``edge_head`` are derived during parsing:
    ``edge_tail[e]``/``edge_head[e]`` give the (crossing, position) occurrence
    where edge ``e`` leaves/arrives.  A crossing-free diagram is the round
    unknot with the single closed edge 1.
    """

    crossings: Tuple[Crossing, ...]
    marked_edge: int
    name: str = ""
    signs: Tuple[int, ...] = field(default=(), compare=False)
    edge_tail: Tuple[Tuple[int, int, int], ...] = field(default=(), compare=False)
    edge_head: Tuple[Tuple[int, int, int], ...] = field(default=(), compare=False)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    def edges(self) -> List[int]:
        if not self.crossings:
            return [self.marked_edge]
        return sorted({e for x in self.crossings for e in x})


def _trace(crossings: Sequence[Crossing]):
    """Walk the knot, returning (signs, edge_tail, edge_head).

    Raises InconsistentIncidence for bad incidence or untraceable
    orientations and MultiComponent if the walk closes early.
    """
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for ci, x in enumerate(crossings):
        for pos, e in enumerate(x):
            occ.setdefault(e, []).append((ci, pos))
    for e, places in occ.items():
        if len(places) != 2:
            raise InconsistentIncidence(f"edge {e} used {len(places)} times, expected 2")

    heads: Dict[int, Tuple[int, int]] = {}
    tails: Dict[int, Tuple[int, int]] = {}
    # arrival at (crossing 0, position 0) is forced by the PD convention
    start = (0, 0)
    arrive = start
    edge0 = crossings[0][0]
    heads[edge0] = start
    steps = 0
    total = 2 * len(crossings)
    while True:
        ci, pos = arrive
        out_pos = pos ^ 2
        if out_pos == 0:
            raise InconsistentIncidence(
                f"crossing {ci}: strand would exit at the incoming-under slot"
            )
        e = crossings[ci][out_pos]
        if e in tails:
            raise InconsistentIncidence(f"edge {e} traced as outgoing twice")
        tails[e] = (ci, out_pos)
        a, b = occ[e]
        nxt = b if a == (ci, out_pos) else a
        if nxt[1] == 2:
            raise InconsistentIncidence(
                f"crossing {nxt[0]}: strand arrives at the outgoing-under slot"
            )
        if e in heads and heads[e] != nxt:
            raise InconsistentIncidence(f"edge {e} traced as incoming twice")
        heads[e] = nxt
        steps += 1
        arrive = nxt
        if arrive == start:
            break
        if steps > total:
            raise InconsistentIncidence("trace did not close")
    if steps < total:
        raise MultiComponent(
            f"diagram has more than one component (trace closed after {steps} of {total} passages)"
        )

    signs = []
    for ci, x in enumerate(crossings):
        over_in_pos = heads[x[3]] == (ci, 3)
        signs.append(1 if over_in_pos else -1)
    return tuple(signs), heads, tails


def make_knot(crossings: Sequence[Crossing], marked_edge: Optional[int] = None,
              name: str = "") -> KnotDiagram:
    """Validate a crossing list and build a KnotDiagram."""
    crossings = tuple(tuple(int(e) for e in x) for x in crossings)
    for x in crossings:
        if len(x) != 4:
            raise MalformedPD(f"crossing {x} does not have 4 edges")
    if not crossings:
        marked = 1 if marked_edge is None else marked_edge
        return KnotDiagram((), marked, name, (), (), ())
    signs, heads, tails = _trace(crossings)
    edges = sorted(heads)
    if marked_edge is None:
        marked_edge = edges[0]
    elif marked_edge not in heads:
        raise MalformedPD(f"marked edge {marked_edge} not present")
    et = tuple((e,) + tails[e] for e in edges)
    eh = tuple((e,) + heads[e] for e in edges)
    return KnotDiagram(crossings, marked_edge, name, signs, et, eh)


_PD_TOKEN = re.compile(r"[Xx]\s*[\(\[]\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*[\)\]]")


def parse_pd(text: str, name: str = "", marked_edge: Optional[int] = None) -> KnotDiagram:
    """Parse PD-code text: a sequence of X(a,b,c,d) tokens or a JSON object.

    The empty string is the round unknot.  Kinked crossings with repeated
    edge ids (e.g. ``X(1,1,2,2)``) are accepted when they trace consistently.
    """
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise MalformedPD(f"bad JSON: {e}") from None
        return knot_from_json(obj)
    if ":" in text and not text.startswith(("X", "x")):
        label, _, rest = text.partition(":")
        return parse_pd(rest, name=name or label.strip(), marked_edge=marked_edge)
    if not text:
        return make_knot((), marked_edge, name)
    tokens = _PD_TOKEN.findall(text)
    leftover = _PD_TOKEN.sub("", text).strip()
    if not tokens or leftover:
        raise MalformedPD(f"unrecognized PD syntax near {leftover[:40]!r}")
    crossings = [tuple(map(int, t)) for t in tokens]
    return make_knot(crossings, marked_edge, name)


def knot_from_json(obj: dict) -> KnotDiagram:
    """Build a diagram from {"name":..., "pd": [[a,b,c,d],...], "marked_edge":?}."""
    if "pd" not in obj:
        raise MalformedPD("JSON diagram needs a 'pd' field")
    return make_knot([tuple(x) for x in obj["pd"]],
                     obj.get("marked_edge"), obj.get("name", ""))


def mirror(d: KnotDiagram) -> KnotDiagram:
    """Switch every crossing over<->under; writhe negates.

    Each tuple is rotated to start at the old incoming-over slot, which is the
    new incoming-under slot.
    """
    out = []
    for x, s in zip(d.crossings, d.signs):
        if s > 0:
            out.append((x[3], x[0], x[1], x[2]))
        else:
            out.append((x[1], x[2], x[3], x[0]))
    return make_knot(out, d.marked_edge, d.name)


def add_kink(d: KnotDiagram, sign: int, edge: Optional[int] = None) -> KnotDiagram:
    """Insert a Reidemeister-1 kink of the given sign on an edge.

    The edge splits into three pieces s -> u -> t along its orientation; the
    kink crossing is X(s,t,u,u) for a positive kink and X(s,u,u,t) for a
    negative one.
    """
    if sign not in (1, -1):
        raise ValueError("kink sign must be +1 or -1")
    if not d.crossings:
        # kinked unknot from scratch
        x = (1, 1, 2, 2) if sign > 0 else (1, 2, 2, 1)
        return make_knot([x], 1, d.name)
    e = d.marked_edge if edge is None else edge
    heads = {t[0]: (t[1], t[2]) for t in d.edge_head}
    if e not in heads:
        raise MalformedPD(f"edge {e} not present")
    top = max(max(x) for x in d.crossings)
    u, t = top + 1, top + 2
    hc, hp = heads[e]
    crossings = [list(x) for x in d.crossings]
    crossings[hc][hp] = t
    kink = (e, t, u, u) if sign > 0 else (e, u, u, t)
    crossings.append(kink)
    return make_knot([tuple(x) for x in crossings], d.marked_edge, d.name)


def r2_variant(d: KnotDiagram, crossing_index: int = 0) -> KnotDiagram:
    """Insert a Reidemeister-2 finger: the under-in edge of the chosen
    crossing pokes over its position-3 neighbor (they cobound a region, so
    the move is planar).  Adds one positive and one negative crossing."""
    if not d.crossings:
        raise MalformedPD("cannot apply an R2 move to the round unknot")
    x = d.crossings[crossing_index]
    e, f = x[0], x[3]
    if e == f:
        for ci, y in enumerate(d.crossings):
            if y[0] != y[3]:
                return r2_variant(d, ci)
        raise MalformedPD("no crossing with distinct under-in/position-3 edges")
    top = max(max(c) for c in d.crossings)
    e_b, e_c, f_1, f_2 = top + 1, top + 2, top + 3, top + 4
    heads = {t[0]: (t[1], t[2]) for t in d.edge_head}
    crossings = [list(c) for c in d.crossings]
    crossings[crossing_index][0] = e_c
    f_into = heads[f] == (crossing_index, 3)
    if f_into:
        # f splits f -> f_1 -> f_2 entering the crossing
        crossings[crossing_index][3] = f_2
        y_new = (f, e_b, f_1, e)       # positive
        z_new = (f_1, e_b, f_2, e_c)   # negative
    else:
        # f leaves the crossing; splits f -> f_1 -> f_2 on the way out
        fhc, fhp = heads[f]
        crossings[fhc][fhp] = f_2
        y_new = (f_1, e_b, f_2, e)     # positive
        z_new = (f, e_b, f_1, e_c)     # negative
    crossings.append(y_new)
    crossings.append(z_new)
    return make_knot([tuple(c) for c in crossings], d.marked_edge, d.name)


# ---------------------------------------------------------------------------
# tangle diagrams
# ---------------------------------------------------------------------------

def _tok(seg: int, is_head: bool) -> int:
    return 2 * seg + (1 if is_head else 0)


def _seg(token: int) -> int:
    return token >> 1


def _is_head(token: int) -> bool:
    return bool(token & 1)


@dataclass(frozen=True)
class TangleDiagram:
    """A balanced tangle in the strip.

    ``crossings`` hold segment-end tokens counterclockwise with the under
    strand entering at position 0; ``bottom``/``top`` list boundary tokens
    left to right.  ``free_loops`` counts crossing-free circles (only closed
    tangles produced from the round unknot carry them).
    """

    crossings: Tuple[Crossing, ...]
    bottom: Tuple[int, ...]
    top: Tuple[int, ...]
    nseg: int
    free_loops: int = 0
    name: str = ""

    def __post_init__(self):
        if len(self.bottom) != len(self.top):
            raise InconsistentIncidence(
                f"unbalanced tangle: {len(self.bottom)} bottom vs {len(self.top)} top endpoints"
            )
        seen = set()
        for tok in self._all_tokens():
            if tok in seen:
                raise InconsistentIncidence(f"token {tok} attached twice")
            if not 0 <= tok < 2 * self.nseg:
                raise InconsistentIncidence(f"token {tok} out of range")
            seen.add(tok)
        if len(seen) != 2 * self.nseg:
            raise InconsistentIncidence("some segment end is unattached")
        for ci, x in enumerate(self.crossings):
            if not _is_head(x[0]) or _is_head(x[2]):
                raise InconsistentIncidence(f"crossing {ci}: under strand misoriented")
            if _is_head(x[1]) == _is_head(x[3]):
                raise InconsistentIncidence(f"crossing {ci}: over strand misoriented")

    def _all_tokens(self):
        for x in self.crossings:
            yield from x
        yield from self.bottom
        yield from self.top

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_ends(self) -> int:
        return len(self.bottom)

    @property
    def signs(self) -> Tuple[int, ...]:
        # positive iff the over strand enters at position 3
        return tuple(1 if _is_head(x[3]) else -1 for x in self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def is_closed(self) -> bool:
        return not self.bottom


def cut_at_marked(d: KnotDiagram) -> TangleDiagram:
    """Cut the knot at its marked edge, producing a 1-1 tangle.

    The strand enters at the single bottom endpoint and exits at the top;
    crossing count and signs are preserved.
    """
    if not d.crossings:
        return TangleDiagram((), (_tok(0, False),), (_tok(0, True),), 1, name=d.name)
    edges = d.edges()
    seg_of = {e: i for i, e in enumerate(edges)}
    m = d.marked_edge
    m_bot = seg_of[m]           # bottom piece: tail at boundary, head at m's head slot
    m_top = len(edges)          # top piece: tail at m's tail slot, head at boundary
    nseg = len(edges) + 1

    heads = {t[0]: (t[1], t[2]) for t in d.edge_head}
    tails = {t[0]: (t[1], t[2]) for t in d.edge_tail}
    crossings = []
    for ci, x in enumerate(d.crossings):
        toks = []
        for pos, e in enumerate(x):
            at_head = heads[e] == (ci, pos)
            if e == m:
                s = m_bot if at_head else m_top
            else:
                s = seg_of[e]
            toks.append(_tok(s, at_head))
        crossings.append(tuple(toks))
    return TangleDiagram(tuple(crossings), (_tok(m_bot, False),),
                         (_tok(m_top, True),), nseg, name=d.name)


@dataclass(frozen=True)
class CableSpec:
    """Parallel-cable parameters: strand count, framing, per-strand directions.

    Blackboard framing only.  ``orientation_pattern[k] = -1`` reverses strand
    k+1 against the original orientation; the default is all-parallel.
    """

    n: int
    framing: str = "blackboard"
    orientation_pattern: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("cable width must be >= 1")
        if self.framing != "blackboard":
            raise ValueError("only blackboard framing is supported")
        if self.orientation_pattern is not None:
            if len(self.orientation_pattern) != self.n:
                raise ValueError("orientation pattern length must equal n")
            if any(v not in (1, -1) for v in self.orientation_pattern):
                raise ValueError("orientation pattern entries must be +1/-1")

    @property
    def pattern(self) -> Tuple[int, ...]:
        return self.orientation_pattern or (1,) * self.n


class _TangleBuilder:
    """Accumulates segments whose head/tail attachments arrive separately."""

    def __init__(self):
        self.nseg = 0
        self._tail_at: Dict[int, object] = {}
        self._head_at: Dict[int, object] = {}

    def new_seg(self) -> int:
        s = self.nseg
        self.nseg += 1
        return s

    def attach(self, seg: int, is_head: bool, site: object):
        store = self._head_at if is_head else self._tail_at
        if seg in store:
            raise InconsistentIncidence(f"segment {seg} {'head' if is_head else 'tail'} attached twice")
        store[seg] = site

    def token_at(self) -> Dict[object, int]:
        sites: Dict[object, int] = {}
        for seg, site in self._tail_at.items():
            sites[site] = _tok(seg, False)
        for seg, site in self._head_at.items():
            if site in sites:
                raise InconsistentIncidence(f"site {site} attached twice")
            sites[site] = _tok(seg, True)
        return sites


def cable(t: TangleDiagram, spec) -> TangleDiagram:
    """Blackboard n-cable of a 1-1 tangle.

    Every crossing expands to an n x n grid of same-type crossings; strand
    copies are labeled 1..n by the left-to-right order across the original
    strand's direction, and ribbons attach to each site counterclockwise in
    label order when incoming, reversed when outgoing.
    """
    if isinstance(spec, int):
        spec = CableSpec(spec)
    if len(t.bottom) != 1 or len(t.top) != 1:
        raise ValueError("cable expects a 1-bottom/1-top tangle")
    n = spec.n
    pattern = spec.pattern
    b = _TangleBuilder()

    # ribbon copies of every original segment, 1-based by strand label
    rib = [[None] + [b.new_seg() for _ in range(n)] for _ in range(t.nseg)]

    def attach_ribbon(orig_token: int, slots_ccw: List[object]):
        """Attach copies of the segment behind orig_token to n CCW-ordered slots."""
        s = _seg(orig_token)
        incoming = _is_head(orig_token)
        for idx, site in enumerate(slots_ccw):
            label = idx + 1 if incoming else n - idx
            # pattern reverses a copy's orientation, swapping which end is its head
            head_end = _is_head(orig_token) if pattern[label - 1] == 1 else not _is_head(orig_token)
            b.attach(rib[s][label], head_end, site)

    crossings_out: List[Crossing] = []

    for ci, x in enumerate(t.crossings):
        # geometric slots: ("v", ci, x, y_side) etc.; build the n x n grid
        # verticals carry the under strand (label = x), horizontals the over
        over_in_pos3 = _is_head(x[3])
        # grid-internal segments: vert[xi][yi] spans y-levels yi..yi+1 (0 = south edge)
        vert = [[None] * (n + 1) for _ in range(n + 1)]
        horz = [[None] * (n + 1) for _ in range(n + 1)]
        for xi in range(1, n + 1):
            for yi in range(1, n):
                vert[xi][yi] = b.new_seg()
        for yi in range(1, n + 1):
            for xi in range(1, n):
                horz[yi][xi] = b.new_seg()

        # under copy xi oriented up when its pattern entry is +1
        def v_piece(xi: int, below_y: int):
            """segment occupying vertical xi between crossing rows below_y and below_y+1;
            row 0 means the south boundary, row n the north boundary."""
            if below_y == 0 or below_y == n:
                return None
            return vert[xi][below_y]

        def h_piece(yi: int, left_x: int):
            if left_x == 0 or left_x == n:
                return None
            return horz[yi][left_x]

        up = [None] + [pattern[xi - 1] == 1 for xi in range(1, n + 1)]
        # horizontal label: depends on which side the over strand enters
        def h_label(yi: int) -> int:
            return (n + 1 - yi) if over_in_pos3 else yi

        east = [None] + [None] * n
        for yi in range(1, n + 1):
            # geometric direction of horizontal yi: original over strand runs
            # W->E when entering at position 3; pattern may reverse the copy
            base_we = over_in_pos3
            east[yi] = base_we if pattern[h_label(yi) - 1] == 1 else not base_we

        for xi in range(1, n + 1):
            for yi in range(1, n + 1):
                s_site = ("g", ci, xi, yi, "S")
                n_site = ("g", ci, xi, yi, "N")
                e_site = ("g", ci, xi, yi, "E")
                w_site = ("g", ci, xi, yi, "W")
                below = v_piece(xi, yi - 1)
                above = v_piece(xi, yi)
                if below is not None:
                    b.attach(below, up[xi], s_site)          # head here if running up
                if above is not None:
                    b.attach(above, not up[xi], n_site)
                left = h_piece(yi, xi - 1)
                right = h_piece(yi, xi)
                if left is not None:
                    b.attach(left, east[yi], w_site)
                if right is not None:
                    b.attach(right, not east[yi], e_site)

        # ribbon attachments along the four grid sides, CCW slot order:
        # S: x=1..n, E: y=1..n, N: x=n..1, W: y=n..1
        attach_ribbon(x[0], [("g", ci, xi, 1, "S") for xi in range(1, n + 1)])
        attach_ribbon(x[2], [("g", ci, xi, n, "N") for xi in range(n, 0, -1)])
        if over_in_pos3:
            attach_ribbon(x[3], [("g", ci, 1, yi, "W") for yi in range(n, 0, -1)])
            attach_ribbon(x[1], [("g", ci, n, yi, "E") for yi in range(1, n + 1)])
        else:
            attach_ribbon(x[1], [("g", ci, n, yi, "E") for yi in range(1, n + 1)])
            attach_ribbon(x[3], [("g", ci, 1, yi, "W") for yi in range(n, 0, -1)])

    # boundary: bottom CCW is W->E, top CCW is E->W
    attach_ribbon(t.bottom[0], [("b", k) for k in range(n)])
    attach_ribbon(t.top[0], [("t", k) for k in range(n - 1, -1, -1)])

    site_tok = b.token_at()

    for ci, x in enumerate(t.crossings):
        for xi in range(1, n + 1):
            for yi in range(1, n + 1):
                s_t = site_tok[("g", ci, xi, yi, "S")]
                e_t = site_tok[("g", ci, xi, yi, "E")]
                n_t = site_tok[("g", ci, xi, yi, "N")]
                w_t = site_tok[("g", ci, xi, yi, "W")]
                geo = (s_t, e_t, n_t, w_t)
                # rotate so the under strand (vertical) enters at position 0
                toks = geo if _is_head(s_t) else (n_t, w_t, s_t, e_t)
                crossings_out.append(toks)

    bottom = tuple(site_tok[("b", k)] for k in range(n))
    top = tuple(site_tok[("t", k)] for k in range(n))
    return TangleDiagram(tuple(crossings_out), bottom, top, b.nseg,
                         free_loops=t.free_loops, name=t.name)


def weld(t: TangleDiagram, pairs: Iterable[Tuple[int, int]]) -> TangleDiagram:
    """Join boundary tokens pairwise, producing a closed tangle.

    Each pair must consist of one head and one tail token (orientations must
    agree across the weld).  Welded segments merge; a chain closing on itself
    becomes a free loop.
    """
    pairs = list(pairs)
    welded = {tok for p in pairs for tok in p}
    boundary = set(t.bottom) | set(t.top)
    if not welded <= boundary:
        raise InconsistentIncidence("weld tokens must be boundary tokens")
    if len(welded) != 2 * len(pairs) or welded != boundary:
        raise InconsistentIncidence("weld must pair up all boundary tokens exactly once")

    # union segments along welds
    parent = list(range(t.nseg))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in pairs:
        if _is_head(u) == _is_head(v):
            raise InconsistentIncidence("weld must join a head to a tail")
        ru, rv = find(_seg(u)), find(_seg(v))
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)

    reps = sorted({find(s) for s in range(t.nseg)})
    # chains with no crossing attachments close up into free loops
    attached = {find(_seg(tok)) for x in t.crossings for tok in x}
    loops = [r for r in reps if r not in attached]
    keep = [r for r in reps if r in attached]
    newid = {r: i for i, r in enumerate(keep)}

    # a merged chain keeps one free tail and one free head, both at crossings;
    # token side is preserved there
    crossings = tuple(
        tuple(_tok(newid[find(_seg(tok))], _is_head(tok)) for tok in x)
        for x in t.crossings
    )
    return TangleDiagram(crossings, (), (), len(keep),
                         free_loops=t.free_loops + len(loops), name=t.name)


def close_tangle(t: TangleDiagram) -> TangleDiagram:
    """Trace closure: join top_k to bottom_k for every k."""
    return weld(t, list(zip(t.top, t.bottom)))


def knot_to_closed_tangle(d: KnotDiagram) -> TangleDiagram:
    """View a knot diagram as a closed (0-0) tangle for state sums."""
    if not d.crossings:
        return TangleDiagram((), (), (), 0, free_loops=1, name=d.name)
    return close_tangle(cut_at_marked(d))


# ---------------------------------------------------------------------------
# bundled knot table
# ---------------------------------------------------------------------------

_TABLE_CACHE: Optional[Dict[str, dict]] = None


def knot_table() -> Dict[str, dict]:
    """The bundled table: name -> record with pd, genus, det and variants."""
    global _TABLE_CACHE
    if _TABLE_CACHE is None:
        table: Dict[str, dict] = {}
        path = resources.files("coloredkh.data").joinpath("knots_upto7.jsonl")
        with path.open() as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                rec = json.loads(line)
                if "schema" in rec:
                    continue
                table[rec["name"]] = rec
        _TABLE_CACHE = table
    return _TABLE_CACHE


def get_knot(name: str) -> KnotDiagram:
    """Look up a bundled diagram by name (e.g. '4_1', '3_1r1', '0_1k2')."""
    table = knot_table()
    if name in table:
        rec = table[name]
        return make_knot([tuple(x) for x in rec["pd"]], name=name)
    raise KeyError(f"unknown knot {name!r}; known: {', '.join(sorted(table))}")


def load_pd_lines(lines: Iterable[str]) -> List[KnotDiagram]:
    """Parse 'name: X(...) X(...)' lines (or bare PD / JSON per line)."""
    out = []
    for i, line in enumerate(lines):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        out.append(parse_pd(line, name=f"line{i}"))
    return out
