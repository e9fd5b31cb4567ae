"""Track and queue layouts from recursive layered separations.

The recursion assigns every vertex a (depth, label) pair: removed set Q
gets depth 0; each recursive call separates the current sample, labels
the separator vertices per layer, and recurses on the two strict sides.
Tracks are keyed by (layer mod 3, depth, label); within a track vertices
are ordered by layer, breaking ties by the side taken at the lowest
common ancestor of the recursion tree.  Queue layouts read the tracks
left to right and assign each edge the difference of its track indices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, cmp_to_key
from typing import Iterable, Optional

from .decomposition import (
    LayeredDecomposition,
    _components_within,
    layered_separation,
    separator_from_decomposition,
)
from .graphs import Graph, GraphInputError, Layering, Report


class LayoutError(ValueError):
    """Raised when a layout invariant that should hold by construction
    fails."""


@dataclass(frozen=True)
class RecursionNode:
    """One recursive call: the sample it received and the separator
    vertices it labelled."""

    id: int
    parent: Optional[int]
    rank: int  # index among the parent's ordered children
    tree_depth: int
    sample: frozenset[int]
    separator: frozenset[int]


@dataclass(frozen=True)
class ComputeLabels:
    """Depth/label assignment produced by the separation recursion."""

    depth: dict[int, int]
    label: dict[int, int]
    node_of: dict[int, int]  # vertices of depth >= 1 only
    nodes: tuple[RecursionNode, ...]
    ell1: int
    ell2: int
    mode: str

    @property
    def max_depth(self) -> int:
        return max(self.depth.values(), default=0)


def compute_recursion(
    g: Graph,
    layering: Layering,
    ld_minus_q: LayeredDecomposition,
    q: Iterable[int] = (),
    mode: str = "separation",
) -> ComputeLabels:
    """Run the labelling recursion on G with removed set Q.

    ``ld_minus_q`` must be a layered decomposition of G - Q whose layer
    indices agree with ``layering``.  Mode "separation" splits each
    sample with a 2/3-balanced layered separation (depth grows like
    log base 3/2); mode "separator" removes a single halving bag and
    recurses on every component (depth grows like log base 2).
    """
    if mode not in ("separation", "separator"):
        raise GraphInputError(f"unknown recursion mode {mode!r}")
    q = frozenset(q)
    rest = frozenset(g.vertices()) - q
    for i, layer in enumerate(ld_minus_q.layering.layers):
        if not layer <= layering.layers[i]:
            raise GraphInputError(
                f"restricted layering disagrees with the global one at layer {i}"
            )
    gq = Graph.from_edges(
        g.n, [(u, v) for u, v in g.edges if u in rest and v in rest]
    )
    ell2 = max(ld_minus_q.layered_width, 1)

    depth: dict[int, int] = {}
    label: dict[int, int] = {}
    node_of: dict[int, int] = {}
    nodes: list[RecursionNode] = []
    layer_of = layering.layer_of

    def assign_labels(vs: frozenset[int], d: int, cap: int) -> None:
        per_layer: dict[int, list[int]] = {}
        for v in sorted(vs):
            per_layer.setdefault(layer_of[v], []).append(v)
        for vlist in per_layer.values():
            if len(vlist) > cap:
                raise LayoutError(
                    f"{len(vlist)} separator vertices in one layer exceeds {cap}"
                )
            for j, v in enumerate(vlist):
                depth[v] = d
                label[v] = j + 1

    ell1 = 0
    if q:
        per_layer_q: dict[int, int] = {}
        for v in q:
            i = layer_of[v]
            per_layer_q[i] = per_layer_q.get(i, 0) + 1
        ell1 = max(per_layer_q.values())
        assign_labels(q, 0, ell1)

    max_allowed_depth = 1 + (
        math.log(max(g.n, 2)) / math.log(1.5 if mode == "separation" else 2.0)
    )

    def rec(sample: frozenset[int], d: int, parent: Optional[int], rank: int) -> None:
        if not sample:
            return
        if d > max_allowed_depth + 1e-9:
            raise LayoutError(f"recursion depth {d} exceeds the sample-shrink bound")
        if mode == "separation":
            sep = layered_separation(gq, ld_minus_q, sample)
            mid = sep.intersection & sample
            children = [
                (sep.part1 - sep.part2) & sample,
                (sep.part2 - sep.part1) & sample,
            ]
        else:
            idx, _ = separator_from_decomposition(
                gq, ld_minus_q.decomposition, sample
            )
            bag = ld_minus_q.decomposition.bags[idx]
            mid = bag & sample
            children = sorted(
                _components_within(gq, sample - bag), key=min
            )
        # balance: separation children hold <= 2/3 of the sample,
        # separator children <= 1/2
        for child in children:
            if mode == "separation" and 3 * len(child) > 2 * len(sample):
                raise LayoutError("separation child exceeds 2/3 of the sample")
            if mode == "separator" and 2 * len(child) > len(sample):
                raise LayoutError("separator child exceeds 1/2 of the sample")
        me = len(nodes)
        nodes.append(RecursionNode(me, parent, rank, d, sample, frozenset(mid)))
        assign_labels(frozenset(mid), d, ell2)
        for v in mid:
            node_of[v] = me
        for i, child in enumerate(children):
            rec(child, d + 1, me, i)

    rec(rest, 1, None, 0)
    missing = rest - set(depth)
    if missing:
        raise LayoutError(f"recursion left {len(missing)} vertices unlabelled")
    return ComputeLabels(depth, label, node_of, tuple(nodes), ell1, ell2, mode)


@dataclass(frozen=True)
class TrackLayout:
    """Ordered tracks; each vertex appears in exactly one."""

    tracks: tuple[tuple[int, ...], ...]

    @cached_property
    def track_of(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i, track in enumerate(self.tracks):
            for v in track:
                if v in out:
                    raise GraphInputError(f"vertex {v} on two tracks")
                out[v] = i
        return out

    @cached_property
    def position_of(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for track in self.tracks:
            for j, v in enumerate(track):
                out[v] = j
        return out


def track_layout_from_compute(
    g: Graph, layering: Layering, labels: ComputeLabels
) -> TrackLayout:
    """Assemble the track layout keyed by (layer mod 3, depth, label)."""
    layer_of = layering.layer_of
    key: dict[int, tuple[int, int, int]] = {}
    for v in g.vertices():
        key[v] = (layer_of[v] % 3, labels.depth[v], labels.label[v])

    ancestors: dict[int, list[tuple[int, int]]] = {}

    def path(nid: int) -> list[tuple[int, int]]:
        # (node id, rank) pairs from the root down to nid
        if nid in ancestors:
            return ancestors[nid]
        node = labels.nodes[nid]
        base = [] if node.parent is None else path(node.parent)
        out = base + [(nid, node.rank)]
        ancestors[nid] = out
        return out

    def cmp(v: int, w: int) -> int:
        iv, iw = layer_of[v], layer_of[w]
        if iv != iw:
            return -1 if iv < iw else 1
        if v == w:
            return 0
        pv, pw = path(labels.node_of[v]), path(labels.node_of[w])
        for (nv, rv), (nw, rw) in zip(pv, pw):
            if nv == nw:
                continue
            # first divergence: the previous entries matched, so both
            # nodes hang off the same parent; order by child rank there
            if rv != rw:
                return -1 if rv < rw else 1
            raise LayoutError("distinct recursion children share a rank")
        raise LayoutError(
            f"vertices {v} and {w} share a layer, key and recursion node"
        )

    grouped: dict[tuple[int, int, int], list[int]] = {}
    for v in g.vertices():
        grouped.setdefault(key[v], []).append(v)
    tracks = []
    for k in sorted(grouped):
        vs = grouped[k]
        if k[1] == 0:
            vs.sort(key=lambda v: layer_of[v])
        else:
            vs.sort(key=cmp_to_key(cmp))
        tracks.append(tuple(vs))
    return TrackLayout(tuple(tracks))


def track_bound(n: int, ell1: int, ell2: int, mode: str = "separation") -> float:
    """Closed-form cap on the number of tracks the recursion can use."""
    base = 1.5 if mode == "separation" else 2.0
    return 3 * ell1 + 3 * ell2 * (1 + math.log(max(n, 2)) / math.log(base))


def verify_track_layout(g: Graph, tl: TrackLayout) -> Report:
    """Independent check: partition, no intra-track edge, no X-crossing.

    Every pair of edges sharing a pair of tracks is tested exhaustively.
    """
    violations: list[str] = []
    try:
        track_of = tl.track_of
    except GraphInputError as exc:
        return Report.of([str(exc)])
    for v in g.vertices():
        if v not in track_of:
            violations.append(f"vertex {v} on no track")
    if violations:
        return Report.of(violations)
    pos = tl.position_of
    by_pair: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for u, v in sorted(g.edges):
        tu, tv = track_of[u], track_of[v]
        if tu == tv:
            violations.append(f"edge ({u},{v}) lies within track {tu}")
            continue
        if tu > tv:
            u, v = v, u
            tu, tv = tv, tu
        by_pair.setdefault((tu, tv), []).append((u, v))
    for (tu, tv), pairs in by_pair.items():
        for a in range(len(pairs)):
            va, wa = pairs[a]
            for b in range(a + 1, len(pairs)):
                vb, wb = pairs[b]
                if (pos[va] - pos[vb]) * (pos[wa] - pos[wb]) < 0:
                    violations.append(
                        f"edges ({va},{wa}) and ({vb},{wb}) form an "
                        f"X-crossing between tracks {tu} and {tv}"
                    )
    return Report.of(violations)


@dataclass(frozen=True)
class QueueLayout:
    """Total vertex order plus an edge -> queue assignment."""

    order: tuple[int, ...]
    queue_of: dict[tuple[int, int], int]

    @cached_property
    def position_of(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    @property
    def queue_count(self) -> int:
        return len(set(self.queue_of.values())) if self.queue_of else 0


def queue_from_tracks(g: Graph, tl: TrackLayout) -> QueueLayout:
    """Queue layout with at most (tracks - 1) queues: concatenate the
    tracks and put each edge in the queue indexed by its track gap."""
    rep = verify_track_layout(g, tl)
    if not rep.ok:
        raise LayoutError(f"input is not a track layout: {rep.violations[0]}")
    order = tuple(v for track in tl.tracks for v in track)
    track_of = tl.track_of
    queue_of = {
        e: abs(track_of[e[0]] - track_of[e[1]]) - 1 for e in sorted(g.edges)
    }
    return QueueLayout(order, queue_of)


def verify_queue_layout(g: Graph, ql: QueueLayout) -> Report:
    """Independent check: order covers V(G), every edge is assigned, and
    no two same-queue edges nest."""
    violations: list[str] = []
    if sorted(ql.order) != list(g.vertices()):
        violations.append("order is not a permutation of the vertex set")
        return Report.of(violations)
    pos = ql.position_of
    by_queue: dict[int, list[tuple[int, int]]] = {}
    for e in sorted(g.edges):
        if e not in ql.queue_of:
            violations.append(f"edge {e} assigned to no queue")
            continue
        l, r = sorted((pos[e[0]], pos[e[1]]))
        by_queue.setdefault(ql.queue_of[e], []).append((l, r))
    for qi, spans in by_queue.items():
        for a in range(len(spans)):
            la, ra = spans[a]
            for b in range(a + 1, len(spans)):
                lb, rb = spans[b]
                if (la < lb and rb < ra) or (lb < la and ra < rb):
                    violations.append(
                        f"queue {qi} holds nested edges {spans[a]} and {spans[b]}"
                    )
    return Report.of(violations)


# ---------------------------------------------------------------------------
# Text formats.
# Track layout: one line per track, "track_id: v0 v1 ...".
# Queue layout: "order: v0 v1 ..." then one line "u v queue_id" per edge.
# ---------------------------------------------------------------------------


def format_track_layout(tl: TrackLayout) -> str:
    lines = [
        f"{i}: " + " ".join(map(str, track))
        for i, track in enumerate(tl.tracks)
    ]
    return "\n".join(lines) + "\n"


def parse_track_layout(text: str) -> TrackLayout:
    tracks: dict[int, tuple[int, ...]] = {}
    for ln in text.splitlines():
        ln = ln.strip()
        if not ln:
            continue
        head, _, rest = ln.partition(":")
        try:
            tid = int(head)
            vs = tuple(map(int, rest.split()))
        except ValueError as exc:
            raise GraphInputError(f"bad track line {ln!r}") from exc
        if tid in tracks:
            raise GraphInputError(f"duplicate track id {tid}")
        tracks[tid] = vs
    if sorted(tracks) != list(range(len(tracks))):
        raise GraphInputError("track ids must be 0..t-1")
    return TrackLayout(tuple(tracks[i] for i in range(len(tracks))))


def format_queue_layout(ql: QueueLayout) -> str:
    lines = ["order: " + " ".join(map(str, ql.order))]
    for (u, v), qi in sorted(ql.queue_of.items()):
        lines.append(f"{u} {v} {qi}")
    return "\n".join(lines) + "\n"


def parse_queue_layout(text: str) -> QueueLayout:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("order:"):
        raise GraphInputError("queue layout must start with an order line")
    order = tuple(map(int, lines[0].split(":", 1)[1].split()))
    queue_of: dict[tuple[int, int], int] = {}
    for ln in lines[1:]:
        try:
            u, v, qi = map(int, ln.split())
        except ValueError as exc:
            raise GraphInputError(f"bad queue line {ln!r}") from exc
        queue_of[(min(u, v), max(u, v))] = qi
    return QueueLayout(order, queue_of)
