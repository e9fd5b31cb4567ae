"""Rich tree decompositions and shadow-complete layerings.

A tree decomposition is k-rich if adjacent bags intersect in a clique of
at most k vertices.  Rich decompositions yield shadow-complete layerings
(every layer-component's neighbourhood in the previous layer is a
clique) whose layers carry (k-1)-rich decompositions, so track layouts
and nonrepetitive colourings compose level by level: each level costs a
factor 3c^(s+1) in tracks or 4 in colours.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence

from .decomposition import (
    LayeredDecomposition,
    TreeDecomposition,
    _components_within,
    validate_tree_decomposition,
)
from .graphs import Graph, GraphInputError, Layering, Report, bfs_layering
from .layouts import TrackLayout, verify_track_layout
from .nonrep import Colouring, LayerPatternColouring, layer_pattern_colouring, shadow_nonrep_compose


class ShadowError(ValueError):
    """Raised when richness or shadow-completeness preconditions fail."""


@dataclass(frozen=True)
class RichDecomposition:
    """Tree decomposition whose adjacent bags meet in small cliques."""

    decomposition: TreeDecomposition

    @cached_property
    def richness(self) -> int:
        td = self.decomposition
        return max(
            (len(td.bags[x] & td.bags[y]) for x, y in td.tree_edges),
            default=0,
        )


def validate_rich(g: Graph, rd: RichDecomposition, k: Optional[int] = None) -> Report:
    """Check the decomposition plus the clique condition on every tree
    edge intersection."""
    violations = list(validate_tree_decomposition(g, rd.decomposition).violations)
    td = rd.decomposition
    for x, y in sorted(td.tree_edges):
        inter = td.bags[x] & td.bags[y]
        if not g.is_clique(inter):
            violations.append(f"bags {x},{y} intersect in a non-clique")
        if k is not None and len(inter) > k:
            violations.append(
                f"bags {x},{y} intersect in {len(inter)} > {k} vertices"
            )
    return Report.of(violations)


@dataclass(frozen=True)
class ShadowLayering:
    """Shadow-complete layering plus one rich decomposition per layer,
    each contained in the parent decomposition."""

    layering: Layering
    per_layer: tuple[RichDecomposition, ...]

    def shadows(self, g: Graph) -> list[tuple[int, frozenset[int], frozenset[int]]]:
        """(layer, suffix component, shadow) triples, layers >= 1."""
        out = []
        layers = self.layering.layers
        for i in range(1, len(layers)):
            suffix = frozenset().union(*layers[i:])
            for comp in _components_within(g, suffix):
                shadow = frozenset(
                    w
                    for v in comp
                    for w in g.adjacency[v]
                    if w in layers[i - 1]
                )
                out.append((i, comp, shadow))
        return out


def _contract_redundant(td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose bags nest, keeping the larger bag."""
    bags = list(td.bags)
    adj = {i: set(ns) for i, ns in td.tree_adjacency.items()}
    alive = set(range(len(bags)))
    changed = True
    while changed:
        changed = False
        for x in sorted(alive):
            for y in sorted(adj[x]):
                if bags[x] <= bags[y]:
                    # merge x into y
                    for z in adj[x]:
                        if z != y:
                            adj[z].discard(x)
                            adj[z].add(y)
                            adj[y].add(z)
                    adj[y].discard(x)
                    alive.discard(x)
                    adj[x] = set()
                    changed = True
                    break
            if changed:
                break
    order = sorted(alive)
    remap = {old: i for i, old in enumerate(order)}
    edges = set()
    for x in order:
        for y in adj[x]:
            edges.add((min(remap[x], remap[y]), max(remap[x], remap[y])))
    return TreeDecomposition(tuple(bags[x] for x in order), frozenset(edges))


def rich_shadow_layering(g: Graph, rd: RichDecomposition) -> ShadowLayering:
    """Shadow-complete layering from a k-rich decomposition.

    BFS-layers the bag-completed graph from the minimum-id vertex; each
    bag then spans two consecutive layers, layer indices are
    non-decreasing down the tree (property checked), and restricting the
    bags of the subtree reaching layer i to that layer gives a
    (k-1)-rich decomposition of the layer.
    """
    if g.n == 0:
        raise GraphInputError("graph must be non-empty")
    rep = validate_rich(g, rd)
    if not rep.ok:
        raise ShadowError(f"input decomposition invalid: {rep.violations[0]}")
    k = max(rd.richness, 1)
    td = _contract_redundant(rd.decomposition)

    # bag-completed graph
    edges = set(g.edges)
    for bag in td.bags:
        bs = sorted(bag)
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                edges.add((bs[i], bs[j]))
    gp = Graph.from_edges(g.n, edges)
    r = 0
    layering, _ = bfs_layering(gp, [r])
    layer_of = layering.layer_of

    # root the tree at the least bag containing r
    alpha = next(i for i, bag in enumerate(td.bags) if r in bag)
    b = len(td.bags)
    parent = [-1] * b
    order = [alpha]
    seen = {alpha}
    for x in order:
        for y in td.tree_adjacency[x]:
            if y not in seen:
                seen.add(y)
                parent[y] = x
                order.append(y)
    if len(order) != b:
        raise ShadowError("decomposition tree is disconnected")

    # first-appearance part of each bag and its layer index
    ell = [0] * b
    for x in order:
        if x == alpha:
            fresh = td.bags[x] - {r}
        else:
            fresh = td.bags[x] - td.bags[parent[x]]
            if not fresh:
                raise ShadowError("redundant tree edge survived contraction")
        levels = {layer_of[v] for v in fresh}
        if len(levels) > 1:
            raise ShadowError(f"fresh part of bag {x} spans several layers")
        ell[x] = levels.pop() if levels else 0
        if x != alpha and ell[x] < ell[parent[x]]:
            raise ShadowError("layer index decreased down the tree")

    per_layer: list[RichDecomposition] = []
    per_layer.append(
        RichDecomposition(TreeDecomposition.single_bag({r}))
    )
    for i in range(1, len(layering)):
        nodes = [x for x in order if ell[x] <= i]
        idx = {x: j for j, x in enumerate(nodes)}
        bags = tuple(td.bags[x] & layering.layers[i] for x in nodes)
        tedges = frozenset(
            (min(idx[x], idx[parent[x]]), max(idx[x], idx[parent[x]]))
            for x in nodes
            if x != alpha and parent[x] in idx
        )
        sub = RichDecomposition(TreeDecomposition(bags, tedges))
        if sub.richness > k - 1:
            raise ShadowError(
                f"layer {i} decomposition is {sub.richness}-rich, wanted {k - 1}"
            )
        per_layer.append(sub)
    return ShadowLayering(layering, tuple(per_layer))


def validate_shadow_layering(g: Graph, rd: RichDecomposition, sl: ShadowLayering) -> Report:
    """Containment and per-layer validity of a shadow layering."""
    violations: list[str] = []
    parent_bags = rd.decomposition.bags
    for i, sub in enumerate(sl.per_layer):
        layer = sl.layering.layers[i]
        gi, to_new = g.induced(sorted(layer))
        mapped = TreeDecomposition(
            tuple(frozenset(to_new[v] for v in bag) for bag in sub.decomposition.bags),
            sub.decomposition.tree_edges,
        )
        if layer:
            rep = validate_tree_decomposition(gi, mapped)
            violations.extend(f"layer {i}: {v}" for v in rep.violations)
        for j, bag in enumerate(sub.decomposition.bags):
            if bag and not any(bag <= pb for pb in parent_bags):
                violations.append(f"layer {i} bag {j} not contained in any parent bag")
    return Report.of(violations)


def verify_shadow_complete(g: Graph, layering: Layering, k: int) -> Report:
    """For every suffix component, its neighbourhood in the previous
    layer must be a clique of size at most k."""
    violations: list[str] = []
    layers = layering.layers
    t = len(layers)
    for i in range(1, t):
        suffix = frozenset().union(*layers[i:]) if layers[i:] else frozenset()
        for comp in _components_within(g, suffix):
            shadow = {
                w
                for v in comp
                for w in g.adjacency[v]
                if w in layers[i - 1]
            }
            if len(shadow) > k:
                violations.append(
                    f"shadow of a layer-{i} component has {len(shadow)} > {k} vertices"
                )
            if not g.is_clique(sorted(shadow)):
                violations.append(
                    f"shadow of a layer-{i} component is not a clique"
                )
    return Report.of(violations)


# ---------------------------------------------------------------------------
# Track composition over a shadow-complete layering.
# ---------------------------------------------------------------------------


def shadow_track_compose(
    g: Graph,
    sl: "ShadowLayering | Layering",
    layer_tracks: Sequence[TrackLayout],
    s: int,
) -> TrackLayout:
    """Track layout of G from per-layer track layouts.

    Contract each layer component to a forest node; lay the forest on 3
    tracks by layer mod 3 with children grouped by parent and ordered by
    the position of their parent clique; give every (forest track,
    parent-clique signature, layer track) its own final track.  With c
    layer tracks and shadows of size at most s, this uses at most
    3c^(s+1) tracks; the X-crossing verifier remains the authority.
    """
    layering = sl.layering if isinstance(sl, ShadowLayering) else sl
    layers = layering.layers
    t = len(layers)
    if len(layer_tracks) != t:
        raise GraphInputError("one track layout per layer required")
    if t == 1:
        return layer_tracks[0]
    for i, tl in enumerate(layer_tracks):
        if set(tl.track_of) != set(layers[i]):
            raise GraphInputError(
                f"layer {i} track layout does not cover exactly its vertices"
            )

    # forest of layer components
    comp_of: dict[int, tuple[int, int]] = {}  # vertex -> (layer, comp index)
    comps: list[list[frozenset[int]]] = []
    for i in range(t):
        cs = sorted(_components_within(g, layers[i]), key=min)
        comps.append(cs)
        for j, c in enumerate(cs):
            for v in c:
                comp_of[v] = (i, j)

    # parent cliques and signatures
    clique_of: list[list[frozenset[int]]] = []
    parent_of: list[list[Optional[int]]] = []
    sig_of: list[list[tuple[int, ...]]] = []
    for i in range(t):
        cliques, parents, sigs = [], [], []
        for comp in comps[i]:
            clique = frozenset(
                w
                for v in comp
                for w in g.adjacency[v]
                if i > 0 and w in layers[i - 1]
            )
            if len(clique) > s:
                raise ShadowError(
                    f"parent clique of size {len(clique)} exceeds s={s}"
                )
            cliques.append(clique)
            if clique:
                owners = {comp_of[w][1] for w in clique}
                if len(owners) != 1:
                    raise ShadowError(
                        "parent clique spans several components: layering "
                        "is not shadow complete"
                    )
                parents.append(owners.pop())
                sigs.append(
                    tuple(sorted({layer_tracks[i - 1].track_of[w] for w in clique}))
                )
            else:
                parents.append(None)
                sigs.append(())
        clique_of.append(cliques)
        parent_of.append(parents)
        sig_of.append(sigs)

    # order the forest nodes layer by layer
    node_pos: list[list[int]] = []
    for i in range(t):
        if i == 0:
            ranked = sorted(range(len(comps[i])), key=lambda j: min(comps[i][j]))
        else:
            pos_prev = node_pos[i - 1]
            tlp = layer_tracks[i - 1]

            def sort_key(j: int) -> tuple:
                sig = sig_of[i][j]
                clique = clique_of[i][j]
                if sig:
                    pos_by_track = {
                        tlp.track_of[w]: tlp.position_of[w] for w in clique
                    }
                    anchor = tuple(pos_by_track[tr] for tr in sig)
                else:
                    anchor = ()
                par = parent_of[i][j]
                return (
                    pos_prev[par] if par is not None else -1,
                    sig,
                    anchor,
                    min(comps[i][j]),
                )

            ranked = sorted(range(len(comps[i])), key=sort_key)
            _assert_clique_order_consistent(
                ranked, parent_of[i], sig_of[i], clique_of[i], layer_tracks[i - 1]
            )
        pos = [0] * len(comps[i])
        for p, j in enumerate(ranked):
            pos[j] = p
        node_pos.append(pos)

    # final tracks keyed by (layer mod 3, signature, layer track); the
    # root layer (empty signature) shares the track family of the least
    # signature on forest track 0: within-track order is layer-sorted,
    # so root vertices precede everything they could cross with
    sigs_on_zero = sorted(
        {sig_of[i][j] for i in range(0, t, 3) for j in range(len(comps[i])) if sig_of[i][j]}
    )
    root_sig = sigs_on_zero[0] if sigs_on_zero else ()
    grouped: dict[tuple, list[tuple]] = {}
    for v in g.vertices():
        i, j = comp_of[v]
        sig = sig_of[i][j] or root_sig
        key = (i % 3, sig, layer_tracks[i].track_of[v])
        grouped.setdefault(key, []).append(
            (i, node_pos[i][j], layer_tracks[i].position_of[v], v)
        )
    tracks = []
    for key in sorted(grouped):
        vs = sorted(grouped[key])
        tracks.append(tuple(v for _, _, _, v in vs))
    return TrackLayout(tuple(tracks))


def _assert_clique_order_consistent(
    ranked: Sequence[int],
    parents: Sequence[Optional[int]],
    sigs: Sequence[tuple[int, ...]],
    cliques: Sequence[frozenset[int]],
    parent_layout: TrackLayout,
) -> None:
    """Same-parent, same-signature cliques must be ordered identically on
    every track of the signature."""
    last: dict[tuple, dict[int, int]] = {}
    for j in ranked:
        if not sigs[j]:
            continue
        key = (parents[j], sigs[j])
        positions = {
            parent_layout.track_of[w]: parent_layout.position_of[w]
            for w in cliques[j]
        }
        prev = last.get(key)
        if prev is not None:
            for tr, p in positions.items():
                if p < prev[tr]:
                    raise ShadowError(
                        "clique ordering inconsistent across the tracks of "
                        f"signature {sigs[j]}"
                    )
        last[key] = positions


def shadow_track_bound(c: int, s: int) -> int:
    total_sigs = 1 + sum(math.comb(c, i) for i in range(1, s + 1))
    return 3 * c * total_sigs


# ---------------------------------------------------------------------------
# Recursive drivers: one shadow level per unit of richness.
# ---------------------------------------------------------------------------

TrackSolver = Callable[[Graph], TrackLayout]
ColourSolver = Callable[[Graph], Colouring]


def _restrict_rd(
    rd: RichDecomposition, comp: frozenset[int], to_new: dict[int, int]
) -> RichDecomposition:
    td = rd.decomposition
    return RichDecomposition(
        TreeDecomposition(
            tuple(frozenset(to_new[v] for v in bag & comp) for bag in td.bags),
            td.tree_edges,
        )
    )


def _merge_component_tracks(parts: Sequence[TrackLayout]) -> TrackLayout:
    """Concatenate per-component layouts track by track.  Components are
    edge-disjoint, and each occupies a contiguous block on every track,
    so no X-crossing can involve two components."""
    width = max(len(p.tracks) for p in parts)
    tracks = []
    for i in range(width):
        row: list[int] = []
        for p in parts:
            if i < len(p.tracks):
                row.extend(p.tracks[i])
        tracks.append(tuple(row))
    return TrackLayout(tuple(tracks))


def recursive_track_driver(
    g: Graph, rd: RichDecomposition, bag_solver: TrackSolver
) -> TrackLayout:
    """Track layout by recursing on richness: split off one shadow level
    per call until the pieces are 0-rich, then delegate to the solver."""
    k = rd.richness
    if k == 0 or g.n <= 1:
        return bag_solver(g)
    comps = sorted(g.components(), key=min)
    if len(comps) > 1:
        parts = []
        for comp in comps:
            sub_g, to_new = g.induced(sorted(comp))
            to_old = {j: v for v, j in to_new.items()}
            sub_tl = recursive_track_driver(
                sub_g, _restrict_rd(rd, comp, to_new), bag_solver
            )
            parts.append(
                TrackLayout(
                    tuple(tuple(to_old[j] for j in tr) for tr in sub_tl.tracks)
                )
            )
        return _merge_component_tracks(parts)
    sl = rich_shadow_layering(g, rd)
    layer_tracks: list[TrackLayout] = []
    for i, layer in enumerate(sl.layering.layers):
        sub_g, to_new = g.induced(sorted(layer))
        to_old = {j: v for v, j in to_new.items()}
        sub_td = TreeDecomposition(
            tuple(
                frozenset(to_new[v] for v in bag)
                for bag in sl.per_layer[i].decomposition.bags
            ),
            sl.per_layer[i].decomposition.tree_edges,
        )
        sub_tl = recursive_track_driver(
            sub_g, RichDecomposition(sub_td), bag_solver
        )
        layer_tracks.append(
            TrackLayout(
                tuple(tuple(to_old[j] for j in tr) for tr in sub_tl.tracks)
            )
        )
    c = max((len(tl.tracks) for tl in layer_tracks), default=1)
    out = shadow_track_compose(g, sl.layering, layer_tracks, k)
    if len(out.tracks) > shadow_track_bound(c, k):
        raise ShadowError(
            f"{len(out.tracks)} tracks exceed the level bound "
            f"{shadow_track_bound(c, k)}"
        )
    return out


def recursive_nonrep_driver(
    g: Graph,
    rd: RichDecomposition,
    bag_solver: ColourSolver,
    lp_factory: Callable[[int], LayerPatternColouring] = layer_pattern_colouring,
) -> Colouring:
    """Nonrepetitive colouring by the same recursion; each level
    multiplies the palette by the layer-pattern symbol count."""
    k = rd.richness
    if k == 0 or g.n <= 1:
        return bag_solver(g)
    comps = sorted(g.components(), key=min)
    if len(comps) > 1:
        merged: dict[int, int] = {}
        for comp in comps:
            sub_g, to_new = g.induced(sorted(comp))
            to_old = {j: v for v, j in to_new.items()}
            sub_c = recursive_nonrep_driver(
                sub_g, _restrict_rd(rd, comp, to_new), bag_solver, lp_factory
            )
            merged.update(
                {to_old[j]: col for j, col in sub_c.colour.items()}
            )
        return Colouring(merged)
    sl = rich_shadow_layering(g, rd)
    layer_colourings: list[Colouring] = []
    for i, layer in enumerate(sl.layering.layers):
        sub_g, to_new = g.induced(sorted(layer))
        to_old = {j: v for v, j in to_new.items()}
        sub_td = TreeDecomposition(
            tuple(
                frozenset(to_new[v] for v in bag)
                for bag in sl.per_layer[i].decomposition.bags
            ),
            sl.per_layer[i].decomposition.tree_edges,
        )
        sub_c = recursive_nonrep_driver(
            sub_g, RichDecomposition(sub_td), bag_solver, lp_factory
        )
        layer_colourings.append(
            Colouring({to_old[j]: col for j, col in sub_c.colour.items()})
        )
    lp = lp_factory(len(sl.layering))
    return shadow_nonrep_compose(g, sl.layering, layer_colourings, lp)


# ---------------------------------------------------------------------------
# Text format: decomposition format preceded by a "rich k" line.
# ---------------------------------------------------------------------------


def format_rich(rd: RichDecomposition) -> str:
    from .decomposition import format_decomposition

    return f"rich {rd.richness}\n" + format_decomposition(rd.decomposition)


def parse_rich(text: str) -> RichDecomposition:
    from .decomposition import parse_decomposition

    lines = text.splitlines()
    idx = next(i for i, ln in enumerate(lines) if ln.strip())
    head = lines[idx].split()
    if len(head) != 2 or head[0] != "rich":
        raise GraphInputError("rich decomposition must start with 'rich k'")
    declared = int(head[1])
    rd = RichDecomposition(parse_decomposition("\n".join(lines[idx + 1 :])))
    if rd.richness > declared:
        raise GraphInputError(
            f"declared richness {declared} below actual {rd.richness}"
        )
    return rd
