"""Decorated dual graphs of projective curves and their stability predicates.

A curve is modeled by its components (with geometric genus and a count of
ordinary cusps, which are unibranch and therefore live on a single
component) together with its reducible singular points: nodes and tacnodes,
each joining two branches.  On top of this combinatorial model the module
implements the classical stability notions for genus >= 2 curves --
Deligne-Mumford stability, pseudostability, c-(semi)stability and
h-(semi)stability -- plus the subcurve searches they depend on: elliptic
tails, elliptic bridges, open/closed (weak) elliptic chains, and rosaries.

All values are immutable; every operation is a pure function of its inputs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

NODE = "node"
TACNODE = "tacnode"

#: local contribution of a singularity to arithmetic genus
DELTA = {NODE: 1, TACNODE: 2}

#: hard cap on component count for the exhaustive subcurve predicates
DEFAULT_COMPONENT_CAP = 24


class CurveGraphError(ValueError):
    """Raised for malformed graphs or violated operation preconditions."""


End = tuple[str, int]


@dataclass(frozen=True)
class Component:
    """One irreducible component: geometric genus plus ordinary-cusp count."""

    id: str
    genus: int
    cusps: int = 0
    label: Optional[str] = None

    def __post_init__(self) -> None:
        if self.genus < 0 or self.cusps < 0:
            raise CurveGraphError(
                f"component {self.id!r}: genus and cusp count must be >= 0"
            )


@dataclass(frozen=True)
class Intersection:
    """A node or tacnode joining two branches, given as (component, slot) ends.

    Slots distinguish branches of the same component; an intersection whose
    two ends lie on one component is a self-node or self-tacnode.
    """

    kind: str
    ends: tuple[End, End]

    def __post_init__(self) -> None:
        if self.kind not in DELTA:
            raise CurveGraphError(f"unknown singularity kind {self.kind!r}")
        if len(self.ends) != 2:
            raise CurveGraphError("an intersection has exactly two ends")

    @property
    def delta(self) -> int:
        return DELTA[self.kind]

    def components(self) -> tuple[str, str]:
        return (self.ends[0][0], self.ends[1][0])


@dataclass(frozen=True)
class StabilityFlags:
    """Outcome of `classify`: one boolean per stability notion."""

    dm_stable: bool
    pseudostable: bool
    c_semistable: bool
    c_stable: bool
    h_semistable: bool
    h_stable: bool

    def as_dict(self) -> dict[str, bool]:
        return {
            "dm_stable": self.dm_stable,
            "pseudostable": self.pseudostable,
            "c_semistable": self.c_semistable,
            "c_stable": self.c_stable,
            "h_semistable": self.h_semistable,
            "h_stable": self.h_stable,
        }


@dataclass(frozen=True)
class CurveGraph:
    """Connected decorated dual graph of a projective curve.

    Connectivity is not enforced at construction; operations that require it
    raise `CurveGraphError("disconnected")`.
    """

    components: tuple[Component, ...]
    intersections: tuple[Intersection, ...] = ()
    marks: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise CurveGraphError("duplicate component ids")
        known = set(ids)
        used_ends: set[End] = set()
        for x in self.intersections:
            for end in x.ends:
                cid, _slot = end
                if cid not in known:
                    raise CurveGraphError(f"intersection references unknown component {cid!r}")
                if end in used_ends:
                    raise CurveGraphError(f"branch slot {end!r} used twice")
                used_ends.add(end)
        for cid, _label in self.marks:
            if cid not in known:
                raise CurveGraphError(f"mark references unknown component {cid!r}")

    # -- basic accessors -------------------------------------------------

    def ids(self) -> tuple[str, ...]:
        return tuple(c.id for c in self.components)

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise CurveGraphError(f"no component {cid!r}")

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {c.id: set() for c in self.components}
        for x in self.intersections:
            a, b = x.components()
            if a != b:
                adj[a].add(b)
                adj[b].add(a)
        return adj

    def is_connected(self) -> bool:
        if not self.components:
            return False
        adj = self.adjacency()
        seen = {self.components[0].id}
        stack = [self.components[0].id]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return len(seen) == len(self.components)

    def incident_ends(self, cid: str) -> list[tuple[int, int]]:
        """(intersection index, end index) pairs of branches on `cid`."""
        out = []
        for i, x in enumerate(self.intersections):
            for j, (c, _slot) in enumerate(x.ends):
                if c == cid:
                    out.append((i, j))
        return out

    def tacnode_count(self) -> int:
        return sum(1 for x in self.intersections if x.kind == TACNODE)

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        comps = []
        for c in self.components:
            entry: dict = {"id": c.id, "genus": c.genus, "cusps": c.cusps}
            if c.label is not None:
                entry["label"] = c.label
            comps.append(entry)
        return {
            "components": comps,
            "intersections": [
                {"kind": x.kind, "ends": [list(e) for e in x.ends]}
                for x in self.intersections
            ],
            "marks": [list(m) for m in self.marks],
        }

    @staticmethod
    def from_dict(doc: dict) -> "CurveGraph":
        try:
            comps = tuple(
                Component(c["id"], c["genus"], c.get("cusps", 0), c.get("label"))
                for c in doc["components"]
            )
            xs = tuple(
                Intersection(
                    x["kind"],
                    ((x["ends"][0][0], x["ends"][0][1]), (x["ends"][1][0], x["ends"][1][1])),
                )
                for x in doc.get("intersections", [])
            )
            marks = tuple((m[0], m[1]) for m in doc.get("marks", []))
        except (KeyError, IndexError, TypeError) as exc:
            raise CurveGraphError(f"malformed curve-graph document: {exc}") from exc
        return CurveGraph(comps, xs, marks)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "CurveGraph":
        return CurveGraph.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# cached bitmask view of a graph
# ---------------------------------------------------------------------------


class _GraphData:
    """Bitmask tables for the exhaustive subcurve searches."""

    __slots__ = (
        "ids",
        "index",
        "n",
        "contrib",
        "nbr",
        "end_bits",
        "pair_masks",
        "deltas",
        "kinds",
        "all_mask",
    )

    def __init__(self, g: CurveGraph):
        self.ids = g.ids()
        self.index = {cid: i for i, cid in enumerate(self.ids)}
        self.n = len(self.ids)
        self.contrib = [c.genus + c.cusps for c in g.components]
        self.nbr = [0] * self.n
        self.end_bits = []
        self.pair_masks = []
        self.deltas = []
        self.kinds = []
        for x in g.intersections:
            a, b = (self.index[c] for c in x.components())
            self.end_bits.append((a, b))
            self.pair_masks.append((1 << a) | (1 << b))
            self.deltas.append(x.delta)
            self.kinds.append(x.kind)
            if a != b:
                self.nbr[a] |= 1 << b
                self.nbr[b] |= 1 << a
        self.all_mask = (1 << self.n) - 1

    def mask_of(self, sub: Iterable[str]) -> int:
        mask = 0
        for cid in sub:
            mask |= 1 << self.index[cid]
        return mask

    def subset_of(self, mask: int) -> frozenset[str]:
        return frozenset(self.ids[i] for i in range(self.n) if mask >> i & 1)

    def connected(self, mask: int, drop: Optional[int] = None) -> bool:
        """Connectivity of the induced subgraph, optionally dropping one edge."""
        if mask == 0:
            return False
        if drop is not None:
            return self._connected_drop(mask, drop)
        seen = mask & -mask
        frontier = seen
        while frontier:
            nxt = 0
            m = frontier
            while m:
                bit = m & -m
                m ^= bit
                nxt |= self.nbr[bit.bit_length() - 1]
            frontier = nxt & mask & ~seen
            seen |= frontier
        return seen == mask

    def _connected_drop(self, mask: int, drop: int) -> bool:
        # neighbor masks with one intersection ignored: recompute adjacency on
        # the fly, skipping `drop` (cheap: only masks containing both ends).
        adj = [0] * self.n
        for i, (a, b) in enumerate(self.end_bits):
            if i == drop or a == b:
                continue
            if mask >> a & 1 and mask >> b & 1:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        seen = mask & -mask
        frontier = seen
        while frontier:
            nxt = 0
            m = frontier
            while m:
                bit = m & -m
                m ^= bit
                nxt |= adj[bit.bit_length() - 1]
            frontier = nxt & mask & ~seen
            seen |= frontier
        return seen == mask

    def genus(self, mask: int, exclude: frozenset[int] = frozenset()) -> int:
        total = 0
        m = mask
        count = 0
        while m:
            bit = m & -m
            m ^= bit
            total += self.contrib[bit.bit_length() - 1]
            count += 1
        for i, pm in enumerate(self.pair_masks):
            if i in exclude:
                continue
            if pm & mask == pm:
                total += self.deltas[i]
        return total - (count - 1)

    def crossings(self, mask: int) -> list[tuple[int, int]]:
        out = []
        for i, (a, b) in enumerate(self.end_bits):
            ina = mask >> a & 1
            inb = mask >> b & 1
            if ina != inb:
                out.append((i, 0 if ina else 1))
        return out


@lru_cache(maxsize=256)
def _graph_data(g: CurveGraph) -> _GraphData:
    return _GraphData(g)


@lru_cache(maxsize=256)
def _connected_masks(g: CurveGraph) -> tuple[int, ...]:
    """All nonempty connected subset masks, ascending."""
    data = _graph_data(g)
    return tuple(
        mask for mask in range(1, data.all_mask + 1) if data.connected(mask)
    )


# ---------------------------------------------------------------------------
# genus and contact arithmetic
# ---------------------------------------------------------------------------


def arithmetic_genus(g: CurveGraph) -> int:
    """Arithmetic genus: sum of (genus + cusps) and deltas, minus (#comps - 1)."""
    if not g.is_connected():
        raise CurveGraphError("disconnected")
    total = sum(c.genus + c.cusps for c in g.components)
    total += sum(x.delta for x in g.intersections)
    return total - (len(g.components) - 1)


def _subset_connected(g: CurveGraph, sub: frozenset[str]) -> bool:
    if not sub:
        return False
    data = _graph_data(g)
    return data.connected(data.mask_of(sub))


def subcurve_genus(
    g: CurveGraph, sub: Iterable[str], *, exclude: frozenset[int] = frozenset()
) -> int:
    """Arithmetic genus of the connected subcurve on the components `sub`.

    `exclude` removes intersections (by index) from the count; the chain
    searches use it to cut a closing singularity.
    """
    if len(exclude) > 1:
        raise CurveGraphError("at most one excluded intersection supported")
    data = _graph_data(g)
    mask = data.mask_of(sub)
    drop = next(iter(exclude)) if exclude else None
    if drop is not None and data.pair_masks[drop] & mask != data.pair_masks[drop]:
        drop = None  # the cut intersection does not touch this subcurve
    if not data.connected(mask, drop=drop):
        raise CurveGraphError("subcurve is not connected")
    return data.genus(mask, exclude)


def crossing_intersections(g: CurveGraph, sub: frozenset[str]) -> list[tuple[int, int]]:
    """Intersections joining `sub` to its complement.

    Returns (intersection index, end index of the branch inside `sub`).
    """
    data = _graph_data(g)
    return data.crossings(data.mask_of(sub))


def contact_multiplicity(g: CurveGraph, sub: Iterable[str]) -> int:
    """Branch-weighted contact of a subcurve with its complement (tacnode = 2)."""
    sub = frozenset(sub)
    if not sub or sub == frozenset(g.ids()):
        raise CurveGraphError("subcurve must be a nonempty proper subset")
    if not _subset_connected(g, sub):
        raise CurveGraphError("subcurve is not connected")
    return sum(g.intersections[i].delta for i, _ in crossing_intersections(g, sub))


def contact_points(g: CurveGraph, sub: frozenset[str]) -> int:
    """Number of distinct points where a subcurve meets its complement."""
    return len(crossing_intersections(g, sub))


def _check_cap(g: CurveGraph, cap: int) -> None:
    n = len(g.components)
    if n > cap:
        raise CurveGraphError(
            f"graph has {n} components; exhaustive search capped at {cap}"
        )


def connected_subsets(
    g: CurveGraph, *, proper: bool = True, cap: int = DEFAULT_COMPONENT_CAP
) -> Iterator[frozenset[str]]:
    """All connected component subsets, nonempty (and proper unless disabled).

    Exhaustive; errors out beyond `cap` components.
    """
    _check_cap(g, cap)
    data = _graph_data(g)
    for mask in _connected_masks(g):
        if proper and mask == data.all_mask:
            continue
        yield data.subset_of(mask)


# ---------------------------------------------------------------------------
# elliptic tails, bridges, chains
# ---------------------------------------------------------------------------


def _genus_one_with_crossings(
    g: CurveGraph, count: int, cap: int
) -> list[frozenset[str]]:
    if not g.is_connected():
        raise CurveGraphError("disconnected")
    _check_cap(g, cap)
    data = _graph_data(g)
    out = []
    for mask in _connected_masks(g):
        if mask == data.all_mask:
            continue
        cross = data.crossings(mask)
        if len(cross) != count:
            continue
        if not all(data.kinds[i] == NODE for i, _ in cross):
            continue
        if data.genus(mask) == 1:
            out.append(data.subset_of(mask))
    return sorted(out, key=lambda s: sorted(s))


def find_elliptic_tails(g: CurveGraph, *, cap: int = DEFAULT_COMPONENT_CAP) -> list[frozenset[str]]:
    """Connected genus-one subcurves meeting the rest in exactly one node."""
    return _genus_one_with_crossings(g, 1, cap)


def find_elliptic_bridges(g: CurveGraph, *, cap: int = DEFAULT_COMPONENT_CAP) -> list[frozenset[str]]:
    """Connected genus-one subcurves meeting the rest in exactly two nodes."""
    return _genus_one_with_crossings(g, 2, cap)


def bridge_links(g: CurveGraph, *, cap: int = DEFAULT_COMPONENT_CAP) -> list[frozenset[str]]:
    """Minimal elliptic bridges: the genus-one links of maximal bridge chains."""
    bridges = find_elliptic_bridges(g, cap=cap)
    links = [b for b in bridges if not any(o < b for o in bridges)]
    for a, b in itertools.combinations(links, 2):
        if a & b:
            raise CurveGraphError("overlapping minimal elliptic bridges")
    return links


@dataclass(frozen=True)
class ChainRecord:
    """An elliptic chain found in a graph.

    `blocks` are the genus-one links in order; `ends` holds the attachment
    intersection indices: (p-end, q-end) for open chains (for weak chains the
    tacnodal end comes first), or the closing intersection for closed chains.
    """

    closed: bool
    weak: bool
    length: int
    blocks: tuple[tuple[str, ...], ...]
    ends: tuple[int, ...]


def _joins(g: CurveGraph, a: frozenset[str], b: frozenset[str]) -> list[int]:
    out = []
    for i, x in enumerate(g.intersections):
        ca, cb = x.components()
        if (ca in a and cb in b) or (ca in b and cb in a):
            out.append(i)
    return out


def _chain_ample(
    g: CurveGraph,
    blocks: Sequence[frozenset[str]],
    mark_comps: Sequence[str],
    exclude: frozenset[int],
) -> bool:
    """Check ampleness of the dualizing sheaf twisted by the two end points.

    Combinatorial form: on every component of the chain, twice its local
    arithmetic genus, minus two, plus its branch-weighted contact inside the
    chain, plus end marks, must be positive.
    """
    union = frozenset().union(*blocks)
    for cid in union:
        c = g.component(cid)
        pa = c.genus + c.cusps
        contact = 0
        for i, x in enumerate(g.intersections):
            if i in exclude:
                continue
            a, b = x.components()
            if a == cid and b == cid:
                pa += x.delta
            elif a == cid and b in union:
                contact += x.delta
            elif b == cid and a in union:
                contact += x.delta
        deg = 2 * pa - 2 + contact + sum(1 for m in mark_comps if m == cid)
        if deg <= 0:
            return False
    return True


def _genus_one_blocks(
    g: CurveGraph, exclude: frozenset[int], cap: int
) -> list[frozenset[str]]:
    _check_cap(g, cap)
    data = _graph_data(g)
    drop = next(iter(exclude)) if exclude else None
    out = []
    for mask in _connected_masks(g):
        if data.genus(mask, exclude) != 1:
            continue
        if drop is not None and data.pair_masks[drop] & mask == data.pair_masks[drop]:
            if not data.connected(mask, drop=drop):
                continue
        out.append(data.subset_of(mask))
    return out


def _extend_chain_sequences(
    g: CurveGraph,
    blocks: list[frozenset[str]],
    seq: list[frozenset[str]],
    exclude: frozenset[int],
) -> Iterator[list[frozenset[str]]]:
    yield list(seq)
    last = seq[-1]
    used = frozenset().union(*seq)
    for b in blocks:
        if b & used:
            continue
        js = [j for j in _joins(g, last, b) if j not in exclude]
        if len(js) != 1 or g.intersections[js[0]].kind != TACNODE:
            continue
        if any(
            j not in exclude
            for earlier in seq[:-1]
            for j in _joins(g, earlier, b)
        ):
            continue
        seq.append(b)
        yield from _extend_chain_sequences(g, blocks, seq, exclude)
        seq.pop()


def _find_chains(g: CurveGraph, cap: int) -> list[ChainRecord]:
    if not g.is_connected():
        raise CurveGraphError("disconnected")
    all_ids = frozenset(g.ids())
    records: dict[tuple, ChainRecord] = {}

    def emit(rec: ChainRecord) -> None:
        # canonicalize direction so each chain is reported once; weak open
        # chains are already oriented with the tacnodal end on the first block
        fwd = rec.blocks
        rev = tuple(reversed(rec.blocks))
        if rec.closed and rev < fwd:
            rec = ChainRecord(rec.closed, rec.weak, rec.length, rev, rec.ends)
        elif not rec.closed and not rec.weak:
            if rev < fwd or (rev == fwd and rec.ends[::-1] < rec.ends):
                rec = ChainRecord(rec.closed, rec.weak, rec.length, rev, rec.ends[::-1])
        key = (rec.closed, rec.weak, rec.blocks, rec.ends)
        records.setdefault(key, rec)

    # open chains
    blocks = _genus_one_blocks(g, frozenset(), cap)
    for first in blocks:
        for seq in _extend_chain_sequences(g, blocks, [first], frozenset()):
            union = frozenset().union(*seq)
            cross = crossing_intersections(g, union)
            if len(cross) != 2:
                continue
            (i1, e1), (i2, e2) = cross
            c1 = g.intersections[i1].ends[e1][0]
            c2 = g.intersections[i2].ends[e2][0]
            placements = []
            if c1 in seq[0] and c2 in seq[-1]:
                placements.append(((i1, c1), (i2, c2)))
            if len(seq) > 1 and c2 in seq[0] and c1 in seq[-1]:
                placements.append(((i2, c2), (i1, c1)))
            for (ip, cp), (iq, cq) in placements:
                if not _chain_ample(g, seq, [cp, cq], frozenset()):
                    continue
                kp, kq = g.intersections[ip].kind, g.intersections[iq].kind
                blocks_t = tuple(tuple(sorted(b)) for b in seq)
                if kp == NODE and kq == NODE:
                    emit(ChainRecord(False, False, len(seq), blocks_t, (ip, iq)))
                elif kp == TACNODE and kq == NODE:
                    emit(ChainRecord(False, True, len(seq), blocks_t, (ip, iq)))
                elif kp == NODE and kq == TACNODE:
                    # orient the tacnodal attachment onto the first block
                    emit(
                        ChainRecord(
                            False, True, len(seq), tuple(reversed(blocks_t)), (iq, ip)
                        )
                    )

    # closed chains: the whole curve, cut at a closing node or tacnode
    for ci, cx in enumerate(g.intersections):
        exclude = frozenset([ci])
        cblocks = _genus_one_blocks(g, exclude, cap)
        ca, cb = cx.components()
        for first in cblocks:
            if ca not in first and cb not in first:
                continue
            for seq in _extend_chain_sequences(g, cblocks, [first], exclude):
                union = frozenset().union(*seq)
                if union != all_ids:
                    continue
                if len(seq) == 1:
                    ok = ca in seq[0] and cb in seq[0]
                else:
                    ok = (ca in seq[0] and cb in seq[-1]) or (cb in seq[0] and ca in seq[-1])
                if not ok:
                    continue
                if not _chain_ample(g, seq, [ca, cb], exclude):
                    continue
                blocks_t = tuple(tuple(sorted(b)) for b in seq)
                emit(
                    ChainRecord(
                        True, cx.kind == TACNODE, len(seq), blocks_t, (ci,)
                    )
                )
    return sorted(
        records.values(), key=lambda r: (r.closed, r.weak, r.length, r.blocks, r.ends)
    )


def find_elliptic_chains(g: CurveGraph, *, cap: int = DEFAULT_COMPONENT_CAP) -> list[ChainRecord]:
    """Open and closed elliptic chains admitted by the curve (nodal attachments)."""
    if arithmetic_genus(g) < 3:
        raise CurveGraphError("elliptic chains require arithmetic genus >= 3")
    return [r for r in _find_chains(g, cap) if not r.weak]


def find_weak_elliptic_chains(g: CurveGraph, *, cap: int = DEFAULT_COMPONENT_CAP) -> list[ChainRecord]:
    """Weak elliptic chains: one tacnodal attachment (or a tacnodal closing)."""
    if arithmetic_genus(g) < 3:
        raise CurveGraphError("elliptic chains require arithmetic genus >= 3")
    return [r for r in _find_chains(g, cap) if r.weak]


# ---------------------------------------------------------------------------
# rosaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RosaryRecord:
    """A maximal open rosary, or the whole curve as a (possibly broken) cycle.

    For open rosaries `length` counts beads and `ends` the two attachment
    intersections.  For closed records `length` counts tacnodal junctions, so
    the genus is always length + 1 regardless of broken beads.
    """

    closed: bool
    beads: tuple[str, ...]
    length: int
    broken_beads: int = 0
    ends: tuple[int, ...] = ()


def _bead_candidates(g: CurveGraph) -> dict[str, list[tuple[int, int]]]:
    """Components usable as rosary beads: smooth rational, exactly two branches."""
    beads = {}
    for c in g.components:
        if c.genus != 0 or c.cusps != 0:
            continue
        inc = g.incident_ends(c.id)
        if len(inc) != 2:
            continue
        if any(
            g.intersections[i].ends[0][0] == g.intersections[i].ends[1][0]
            for i, _ in inc
        ):
            continue  # self-intersection disqualifies a bead
        beads[c.id] = inc
    return beads


def _bead_cycle(g: CurveGraph) -> Optional[tuple[list[str], list[int]]]:
    """If the whole curve is a cycle of beads, return (beads in order, junctions)."""
    beads = _bead_candidates(g)
    if len(beads) != len(g.components) or len(g.components) < 2:
        return None
    if not g.is_connected():
        return None
    if len(g.intersections) != len(g.components):
        return None
    start = min(beads)
    order = [start]
    junctions: list[int] = []
    prev_x = None
    while True:
        cid = order[-1]
        nxt = None
        for i, _j in beads[cid]:
            if i == prev_x:
                continue
            other = [c for c in g.intersections[i].components() if c != cid]
            if not other:
                return None
            nxt = (i, other[0])
        if nxt is None:
            return None
        i, nb = nxt
        junctions.append(i)
        prev_x = i
        if nb == start:
            break
        if nb in order:
            return None
        order.append(nb)
    if len(order) != len(g.components):
        return None
    return order, junctions


def _open_runs(g: CurveGraph) -> list[RosaryRecord]:
    """Maximal tacnode-linked bead chains with nodal end attachments."""
    beads = _bead_candidates(g)
    runs: list[RosaryRecord] = []
    seen: set[frozenset[str]] = set()
    for cid, inc in beads.items():
        # start only from beads that are chain ends: at most one tacnode link to a bead
        links = []
        for i, j in inc:
            other = g.intersections[i].ends[1 - j][0]
            if g.intersections[i].kind == TACNODE and other in beads:
                links.append((i, other))
        if len(links) != 1:
            continue
        chain = [cid]
        xs: list[int] = []
        nxt = links[0]
        while True:
            i, other = nxt
            xs.append(i)
            chain.append(other)
            cont = [
                (k, g.intersections[k].ends[1 - j][0])
                for k, j in beads[other]
                if k != i
                and g.intersections[k].kind == TACNODE
                and g.intersections[k].ends[1 - j][0] in beads
            ]
            if not cont:
                break
            nxt = cont[0]
        if frozenset(chain) in seen:
            continue
        # end attachments must be single nodes
        end_nodes = []
        valid = True
        for end_bead in (chain[0], chain[-1]):
            outward = [
                (i, j) for i, j in beads[end_bead] if i not in xs
            ]
            if len(outward) != 1 or g.intersections[outward[0][0]].kind != NODE:
                valid = False
                break
            end_nodes.append(outward[0][0])
        if not valid:
            continue
        seen.add(frozenset(chain))
        runs.append(
            RosaryRecord(
                closed=False,
                beads=tuple(chain),
                length=len(chain),
                ends=tuple(end_nodes),
            )
        )
    return sorted(runs, key=lambda r: r.beads)


def _cycle_runs(g: CurveGraph, order: list[str], junctions: list[int]) -> list[RosaryRecord]:
    """Open rosaries inside a broken bead cycle: maximal runs between nodes."""
    n = len(order)
    node_pos = [k for k in range(n) if g.intersections[junctions[k]].kind == NODE]
    if not node_pos:
        return []
    runs = []
    for idx, k in enumerate(node_pos):
        nxt = node_pos[(idx + 1) % len(node_pos)]
        beads = []
        pos = (k + 1) % n
        while True:
            beads.append(order[pos])
            if pos == nxt:
                break
            pos = (pos + 1) % n
        ends = (junctions[k], junctions[nxt])
        runs.append(
            RosaryRecord(False, tuple(beads), len(beads), ends=tuple(sorted(ends)))
        )
    return sorted(runs, key=lambda r: r.beads)


def find_rosaries(g: CurveGraph) -> list[RosaryRecord]:
    """Maximal open rosaries (length >= 2), or the whole curve as a bead cycle."""
    if not g.is_connected():
        raise CurveGraphError("disconnected")
    cycle = _bead_cycle(g)
    if cycle is not None:
        order, junctions = cycle
        broken = sum(1 for i in junctions if g.intersections[i].kind == NODE)
        return [
            RosaryRecord(
                closed=True,
                beads=tuple(order),
                length=len(order) - broken,
                broken_beads=broken,
            )
        ]
    return [r for r in _open_runs(g) if r.length >= 2]


def open_rosaries(g: CurveGraph) -> list[RosaryRecord]:
    """All maximal open rosaries, including runs inside a broken bead cycle."""
    cycle = _bead_cycle(g)
    if cycle is not None:
        return _cycle_runs(g, *cycle)
    return _open_runs(g)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def _genus_contacts(
    g: CurveGraph, cap: int
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """(points, multiplicity) contact pairs of all proper genus-0 / genus-1 subcurves."""
    _check_cap(g, cap)
    data = _graph_data(g)
    zero, one = [], []
    for mask in _connected_masks(g):
        if mask == data.all_mask:
            continue
        genus = data.genus(mask)
        if genus > 1:
            continue
        cross = data.crossings(mask)
        pts = len(cross)
        mult = sum(data.deltas[i] for i, _ in cross)
        if genus == 0:
            zero.append((pts, mult))
        else:
            one.append((pts, mult))
    return zero, one


def classify(g: CurveGraph, *, cap: int = DEFAULT_COMPONENT_CAP) -> StabilityFlags:
    """Evaluate every stability notion on a connected curve of genus >= 2."""
    if not g.is_connected():
        raise CurveGraphError("disconnected")
    genus = arithmetic_genus(g)
    if genus < 2:
        raise CurveGraphError("stability notions require arithmetic genus >= 2")

    has_cusp = any(c.cusps > 0 for c in g.components)
    has_tacnode = any(x.kind == TACNODE for x in g.intersections)
    zero, one = _genus_contacts(g, cap)

    genus0_plain = all(pts >= 3 for pts, _ in zero)
    genus0_mult = all(mult >= 3 for _, mult in zero)
    genus1_two_points = all(pts >= 2 for pts, _ in one)
    genus1_three_mult = all(mult >= 3 for _, mult in one)

    dm_stable = (not has_cusp) and (not has_tacnode) and genus0_plain
    pseudostable = (not has_tacnode) and genus0_plain and genus1_two_points
    c_semistable = genus0_mult and genus1_two_points
    bridges = find_elliptic_bridges(g, cap=cap)
    c_stable = c_semistable and not has_tacnode and not bridges

    if genus >= 3:
        chains = _find_chains(g, cap)
        has_chain = any(not r.weak for r in chains)
        has_weak = any(r.weak for r in chains)
    else:
        has_chain = has_weak = False
    h_semistable = c_semistable and genus1_three_mult and not has_chain
    h_stable = h_semistable and not has_weak

    return StabilityFlags(
        dm_stable=dm_stable,
        pseudostable=pseudostable,
        c_semistable=c_semistable,
        c_stable=c_stable,
        h_semistable=h_semistable,
        h_stable=h_stable,
    )


def has_infinite_automorphisms(
    g: CurveGraph, *, cap: int = DEFAULT_COMPONENT_CAP
) -> tuple[bool, Optional[RosaryRecord]]:
    """Whether the identity component of the automorphism group is positive
    dimensional, with the witnessing rosary.

    True exactly when the curve admits an open rosary of length >= 2 or is an
    unbroken closed rosary of odd genus.  Requires a c-semistable curve of
    genus >= 4.
    """
    flags = classify(g, cap=cap)
    if not flags.c_semistable:
        raise CurveGraphError("automorphism classification requires a c-semistable curve")
    if arithmetic_genus(g) < 4:
        raise CurveGraphError("automorphism classification requires genus >= 4")
    cycle = _bead_cycle(g)
    if cycle is not None:
        order, junctions = cycle
        broken = sum(1 for i in junctions if g.intersections[i].kind == NODE)
        if broken == 0:
            rec = RosaryRecord(True, tuple(order), len(order))
            return (arithmetic_genus(g) % 2 == 1, rec)
        runs = _cycle_runs(g, order, junctions)
        long = [r for r in runs if r.length >= 2]
        return (bool(long), long[0] if long else None)
    runs = [r for r in _open_runs(g) if r.length >= 2]
    return (bool(runs), runs[0] if runs else None)


def aut_torus_rank(g: CurveGraph, *, cap: int = DEFAULT_COMPONENT_CAP) -> int:
    """Rank of the automorphism torus of a closed-orbit curve.

    Counts one factor per length-two rosary (Chow side: equals the tacnode
    count), one per length-three rosary (Hilbert side: half the tacnodes in
    rosaries), and a single factor for an unbroken closed rosary of odd genus.
    """
    from . import basins  # deferred: basins builds on this module

    cycle = _bead_cycle(g)
    if cycle is not None:
        order, junctions = cycle
        broken = sum(1 for i in junctions if g.intersections[i].kind == NODE)
        if broken == 0:
            return 1 if arithmetic_genus(g) % 2 == 1 else 0
    if basins.is_c_closed_orbit(g, cap=cap):
        return sum(1 for r in open_rosaries(g) if r.length == 2)
    if basins.is_h_closed_orbit(g, cap=cap):
        return sum(1 for r in open_rosaries(g) if r.length == 3)
    raise CurveGraphError("not a closed-orbit curve")


# ---------------------------------------------------------------------------
# constructors and isomorphism testing
# ---------------------------------------------------------------------------


def open_rosary_graph(length: int, *, prefix: str = "L") -> CurveGraph:
    """A free-standing open rosary: `length` beads joined by tacnodes."""
    if length < 1:
        raise CurveGraphError("rosary length must be >= 1")
    comps = tuple(Component(f"{prefix}{i}", 0) for i in range(1, length + 1))
    xs = tuple(
        Intersection(TACNODE, ((f"{prefix}{i}", 1), (f"{prefix}{i+1}", 0)))
        for i in range(1, length)
    )
    return CurveGraph(comps, xs)


def closed_rosary_graph(length: int, broken: Sequence[int] = ()) -> CurveGraph:
    """A closed rosary of the given length, optionally with broken beads.

    `broken` lists bead positions (0-based, < length) to replace by two
    rational curves meeting in a node; genus is length + 1 either way.
    """
    if length < 2:
        raise CurveGraphError("closed rosary length must be >= 2")
    broken = sorted(set(broken))
    if broken and (broken[0] < 0 or broken[-1] >= length):
        raise CurveGraphError("broken bead position out of range")
    names: list[str] = []
    xs: list[Intersection] = []
    for i in range(length):
        if i in broken:
            names.extend([f"L{i}a", f"L{i}b"])
            xs.append(Intersection(NODE, ((f"L{i}a", 1), (f"L{i}b", 0))))
        else:
            names.append(f"L{i}")
    comps = tuple(Component(n, 0) for n in names)
    heads = {}
    tails = {}
    for i in range(length):
        heads[i] = f"L{i}a" if i in broken else f"L{i}"
        tails[i] = f"L{i}b" if i in broken else f"L{i}"
    for i in range(length):
        j = (i + 1) % length
        xs.append(Intersection(TACNODE, ((tails[i], 2), (heads[j], 3))))
    return CurveGraph(comps, tuple(xs))


def bridge_chain_graph(
    link_genera: Sequence[int], end_genera: tuple[int, int] = (2, 2)
) -> CurveGraph:
    """C1 - E1 - ... - Ek - C2: an elliptic-bridge chain between two anchors."""
    comps = [Component("C1", end_genera[0])]
    comps += [Component(f"E{i+1}", gE) for i, gE in enumerate(link_genera)]
    comps += [Component("C2", end_genera[1])]
    names = [c.id for c in comps]
    xs = tuple(
        Intersection(NODE, ((names[i], 1), (names[i + 1], 0)))
        for i in range(len(names) - 1)
    )
    return CurveGraph(tuple(comps), xs)


def isomorphic(a: CurveGraph, b: CurveGraph) -> bool:
    """Decorated-graph isomorphism (backtracking; intended for small graphs)."""
    if len(a.components) != len(b.components):
        return False
    if len(a.intersections) != len(b.intersections):
        return False

    def profile(g: CurveGraph, cid: str) -> tuple:
        c = g.component(cid)
        kinds = sorted(
            g.intersections[i].kind for i, _ in g.incident_ends(cid)
        )
        return (c.genus, c.cusps, tuple(kinds))

    if sorted(profile(a, c.id) for c in a.components) != sorted(
        profile(b, c.id) for c in b.components
    ):
        return False

    def edge_multiset(mapping: dict[str, str]) -> bool:
        # verify all intersections between mapped components correspond
        mapped = set(mapping)
        want: dict[tuple, int] = {}
        for x in a.intersections:
            ca, cb = x.components()
            if ca in mapped and cb in mapped:
                key = (x.kind, tuple(sorted((mapping[ca], mapping[cb]))))
                want[key] = want.get(key, 0) + 1
        have: dict[tuple, int] = {}
        img = set(mapping.values())
        for x in b.intersections:
            ca, cb = x.components()
            if ca in img and cb in img:
                key = (x.kind, tuple(sorted((ca, cb))))
                have[key] = have.get(key, 0) + 1
        return want == have

    a_ids = sorted(c.id for c in a.components)
    b_ids = sorted(c.id for c in b.components)

    def backtrack(i: int, mapping: dict[str, str], used: set[str]) -> bool:
        if i == len(a_ids):
            return True
        ca = a_ids[i]
        for cb in b_ids:
            if cb in used or profile(a, ca) != profile(b, cb):
                continue
            mapping[ca] = cb
            used.add(cb)
            if edge_multiset(mapping) and backtrack(i + 1, mapping, used):
                return True
            del mapping[ca]
            used.remove(cb)
        return False

    return backtrack(0, {}, set())
