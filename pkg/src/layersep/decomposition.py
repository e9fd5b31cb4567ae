"""Tree decompositions with layered width.

Implements the genus-driven layered decomposition (tree-cotree bags), the
clique-sum composition of good decompositions, balanced-separator
extraction from a decomposition, the converse recursion building a
decomposition from a separation oracle, the sqrt(kn) treewidth
construction, closed-form bound reports and an exact treewidth oracle
for small graphs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

from .embedding import EmbeddedGraph, contract_clique, embed_planar, multigraph_bfs, tree_cotree, triangulate
from .graphs import (
    Graph,
    GraphInputError,
    Layering,
    Report,
    Separation,
    bfs_layering,
    validate_separation,
)


class DecompositionError(ValueError):
    """Raised for invalid decompositions or broken oracle contracts."""


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed 0..b-1 joined by a tree on the bag indices."""

    bags: tuple[frozenset[int], ...]
    tree_edges: frozenset[tuple[int, int]]

    @staticmethod
    def single_bag(vs: Iterable[int]) -> "TreeDecomposition":
        return TreeDecomposition((frozenset(vs),), frozenset())

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    @cached_property
    def tree_adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in range(len(self.bags))}
        for x, y in self.tree_edges:
            adj[x].append(y)
            adj[y].append(x)
        for lst in adj.values():
            lst.sort()
        return adj

    @cached_property
    def vertex_bags(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for i, bag in enumerate(self.bags):
            for v in bag:
                out.setdefault(v, []).append(i)
        return {v: tuple(ids) for v, ids in out.items()}

    @cached_property
    def rooted(self) -> tuple[list[int], list[int], list[int]]:
        """(parent, preorder, tin) with the tree rooted at bag 0."""
        b = len(self.bags)
        parent = [-1] * b
        order: list[int] = []
        tin = [0] * b
        stack = [0]
        seen = [False] * b
        seen[0] = True
        while stack:
            x = stack.pop()
            tin[x] = len(order)
            order.append(x)
            for y in self.tree_adjacency[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    stack.append(y)
        if len(order) != b:
            raise DecompositionError("decomposition tree is disconnected")
        return parent, order, tin


@dataclass(frozen=True)
class LayeredDecomposition:
    """A tree decomposition together with the layering realising its
    layered width."""

    decomposition: TreeDecomposition
    layering: Layering

    @cached_property
    def layered_width(self) -> int:
        best = 0
        layer_of = self.layering.layer_of
        for bag in self.decomposition.bags:
            counts: dict[int, int] = {}
            for v in bag:
                i = layer_of[v]
                counts[i] = counts.get(i, 0) + 1
            if counts:
                best = max(best, max(counts.values()))
        return best

    def restricted_to(self, keep: Iterable[int]) -> "LayeredDecomposition":
        """Restriction to a vertex subset: bags and layers intersected."""
        keep = frozenset(keep)
        td = TreeDecomposition(
            tuple(bag & keep for bag in self.decomposition.bags),
            self.decomposition.tree_edges,
        )
        layers = tuple(layer & keep for layer in self.layering.layers)
        return LayeredDecomposition(td, Layering(layers))


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> Report:
    """Check bag-tree shape, edge coverage and subtree connectivity."""
    violations: list[str] = []
    b = len(td.bags)
    # tree shape: connected and acyclic on bag indices
    if b == 0:
        return Report.of(["decomposition has no bags"])
    if len(td.tree_edges) != b - 1:
        violations.append(
            f"tree has {len(td.tree_edges)} edges for {b} bags"
        )
    seen = {0}
    stack = [0]
    adj = td.tree_adjacency
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != b:
        violations.append("decomposition tree is disconnected")
        return Report.of(violations)
    where: dict[int, list[int]] = {}
    for i, bag in enumerate(td.bags):
        for v in bag:
            where.setdefault(v, []).append(i)
    for u, v in sorted(g.edges):
        if not any(u in td.bags[i] for i in where.get(v, ())):
            violations.append(f"edge ({u},{v}) covered by no bag")
    for v in g.vertices():
        nodes = where.get(v)
        if not nodes:
            violations.append(f"vertex {v} in no bag")
            continue
        nodeset = set(nodes)
        comp = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in nodeset and y not in comp:
                    comp.add(y)
                    stack.append(y)
        if comp != nodeset:
            violations.append(f"bags of vertex {v} are not a subtree")
    return Report.of(violations)


# ---------------------------------------------------------------------------
# Genus-driven layered decomposition (tree-cotree bags).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenusDecompositionResult:
    """Layered decomposition of an embedded graph rooted at a clique,
    plus the path set Q whose removal leaves layered width <= 3."""

    ld: LayeredDecomposition
    apex_paths: frozenset[int]  # Q
    genus: int
    root_clique: tuple[int, ...]

    @property
    def restricted_width(self) -> int:
        return self.ld.restricted_to(
            set(self.ld.layering.layer_of) - self.apex_paths
        ).layered_width

    def q_per_layer(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for v in self.apex_paths:
            i = self.ld.layering.layer_of[v]
            out[i] = out.get(i, 0) + 1
        return out


def genus_layered_decomposition(
    eg: EmbeddedGraph, root_clique: Iterable[int]
) -> GenusDecompositionResult:
    """Layered tree decomposition of width <= 2g+3 whose first layer is
    the given clique.

    Contract the clique to a root, triangulate, split the edges by
    tree-cotree, take one bag per face (root paths of its corners plus
    the root paths of the leftover dual edges' endpoints), then expand
    the root back to the clique.
    """
    clique = tuple(sorted(set(root_clique)))
    if not clique:
        raise GraphInputError("root clique must be non-empty")
    base = eg.to_graph()
    if not base.is_clique(clique):
        raise GraphInputError("root set is not a clique")
    g = eg.euler_genus

    if len(clique) > 1:
        ceg, vmap = contract_clique(eg, clique)
        r = vmap[clique[0]]
        back: dict[int, list[int]] = {}
        for old, new in vmap.items():
            back.setdefault(new, []).append(old)
    else:
        ceg, r = eg, clique[0]
        back = {v: [v] for v in range(eg.n)}

    def expand(vs: Iterable[int]) -> frozenset[int]:
        out: list[int] = []
        for v in vs:
            out.extend(back[v])
        return frozenset(out)

    if ceg.n < 3:
        layering, _ = bfs_layering(ceg.to_graph(), [r])
        td = TreeDecomposition.single_bag(range(ceg.n))
        bags = tuple(expand(b) for b in td.bags)
        layers = tuple(expand(layer) for layer in layering.layers)
        ld = LayeredDecomposition(
            TreeDecomposition(bags, frozenset()), Layering(layers)
        )
        return GenusDecompositionResult(ld, frozenset(), g, clique)

    tri = triangulate(ceg)
    tree, _ = multigraph_bfs(tri, [r])
    t = max(tree.depth.values())
    layer_sets: list[set[int]] = [set() for _ in range(t + 1)]
    for v, d in tree.depth.items():
        layer_sets[d].add(v)

    paths = {v: tree.path_to_root(v) for v in range(tri.n)}
    tc = tree_cotree(tri, r)
    q_core: set[int] = set()
    for e in tc.extra_edges:
        a, b = tri.edge_list[e]
        q_core |= paths[a] | paths[b]

    bags = []
    for walk in tri.faces:
        x, y, z = (tri.dart_tail(d) for d in walk)
        bags.append(expand(q_core | paths[x] | paths[y] | paths[z]))
    tree_edges = frozenset(
        (min(f1, f2), max(f1, f2))
        for e, f1, f2 in tc.dual_edges
        if e in tc.dual_tree_edges
    )
    layering = Layering(tuple(expand(layer) for layer in layer_sets))
    ld = LayeredDecomposition(TreeDecomposition(tuple(bags), tree_edges), layering)
    q = expand(q_core) - set(clique)
    result = GenusDecompositionResult(ld, q, g, clique)
    if ld.layered_width > 2 * g + 3:
        raise DecompositionError(
            f"layered width {ld.layered_width} exceeds 2g+3 = {2 * g + 3}"
        )
    return result


# ---------------------------------------------------------------------------
# Good decompositions and clique-sums.
# ---------------------------------------------------------------------------

# A good-decomposition provider maps a requested clique (possibly empty ->
# the provider picks a default root) to a LayeredDecomposition whose first
# layer is exactly that clique.
GoodProvider = Callable[[tuple[int, ...]], LayeredDecomposition]


def planar_good_provider(g: Graph) -> GoodProvider:
    """3-good provider for a connected planar graph."""
    eg = embed_planar(g)

    def provider(clique: tuple[int, ...]) -> LayeredDecomposition:
        root = clique if clique else (0,)
        return genus_layered_decomposition(eg, root).ld

    return provider


def _treedec_from_elimination(g: Graph, order: Sequence[int]) -> TreeDecomposition:
    """Clique-tree style decomposition from an elimination ordering."""
    pos = {v: i for i, v in enumerate(order)}
    nbrs = {v: set(g.adjacency[v]) for v in g.vertices()}
    bags: list[frozenset[int]] = []
    bag_of: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    for v in order:
        higher = {w for w in nbrs[v] if pos[w] > pos[v]}
        bags.append(frozenset({v} | higher))
        bag_of[v] = len(bags) - 1
        for a in higher:
            nbrs[a] |= higher - {a}
            nbrs[a].discard(v)
    for v in order:
        higher = [w for w in bags[bag_of[v]] if pos[w] > pos[v]]
        if higher:
            nxt = min(higher, key=lambda w: pos[w])
            edges.append((bag_of[v], bag_of[nxt]))
    return TreeDecomposition(tuple(bags), frozenset(edges))


def small_good_provider(g: Graph, ell: int) -> GoodProvider:
    """Search-based ell-good provider for tiny graphs (n <= 9).

    BFS-layers the graph from the requested clique and searches
    elimination orderings for a tree decomposition of layered width at
    most ell with respect to that layering.
    """
    if g.n > 9:
        raise GraphInputError("search provider only supports n <= 9")

    def provider(clique: tuple[int, ...]) -> LayeredDecomposition:
        root = tuple(sorted(set(clique))) if clique else (0,)
        if not g.is_clique(root):
            raise GraphInputError("requested root set is not a clique")
        if len(root) > ell:
            raise GraphInputError(f"clique larger than ell={ell}")
        layering, _ = bfs_layering_from_set(g, root)
        for order in itertools.permutations(g.vertices()):
            td = _treedec_from_elimination(g, order)
            ld = LayeredDecomposition(td, layering)
            if ld.layered_width <= ell:
                return ld
        raise DecompositionError(
            f"no layered-width-{ell} decomposition found for the given root"
        )

    return provider


def bfs_layering_from_set(g: Graph, roots: Iterable[int]) -> tuple[Layering, dict[int, int]]:
    """Multi-root BFS layering: all roots form layer 0."""
    layering, tree = bfs_layering(g, roots)
    return layering, tree.depth


def clique_sum_compose(
    g1: Graph,
    ld1: LayeredDecomposition,
    g2: Graph,
    provider2: GoodProvider,
    join: Sequence[tuple[int, int]],
    deleted_edges: Iterable[tuple[int, int]] = (),
) -> tuple[Graph, LayeredDecomposition, dict[int, int]]:
    """Clique-sum of G1 and G2, overlaying a good decomposition of G2
    onto the layering of G1.

    ``join`` identifies clique vertices pairwise as (v in G1, w in G2).
    ``deleted_edges`` are clique edges (as G1 pairs) to drop from the
    sum.  Returns the composed graph, its layered decomposition and the
    G2-vertex -> composed-vertex map.  The layered width of the result is
    at most the maximum of the two inputs'.
    """
    c1 = [v for v, _ in join]
    c2 = [w for _, w in join]
    if len(set(c1)) != len(join) or len(set(c2)) != len(join):
        raise GraphInputError("join lists repeat a vertex")
    if not join:
        raise GraphInputError("join must identify at least one vertex")
    if not g1.is_clique(c1) or not g2.is_clique(c2):
        raise GraphInputError("join sets must be cliques in both graphs")

    vmap2: dict[int, int] = {}
    for v, w in join:
        vmap2[w] = v
    nxt = g1.n
    for w in range(g2.n):
        if w not in vmap2:
            vmap2[w] = nxt
            nxt += 1
    deleted = {(min(a, b), max(a, b)) for a, b in deleted_edges}
    clique_pairs = {
        (min(a, b), max(a, b)) for a in c1 for b in c1 if a != b
    }
    if not deleted <= clique_pairs:
        raise GraphInputError("deleted edges must lie inside the join clique")
    edges = {e for e in g1.edges if e not in deleted}
    for u, v in g2.edges:
        a, b = vmap2[u], vmap2[v]
        e = (min(a, b), max(a, b))
        if e not in deleted:
            edges.add(e)
    composed = Graph.from_edges(nxt, edges)

    layer_of1 = ld1.layering.layer_of
    x_layers = sorted({layer_of1[v] for v in c1})
    if len(x_layers) > 2 or (len(x_layers) == 2 and x_layers[1] - x_layers[0] != 1):
        raise DecompositionError(
            "join clique spans non-consecutive layers of the G1 layering"
        )
    i0 = x_layers[0]
    x_prime2 = tuple(sorted(w for v, w in join if layer_of1[v] == i0))

    ld2 = provider2(x_prime2)
    layer_of2 = ld2.layering.layer_of
    if frozenset(x_prime2) != ld2.layering.layers[0]:
        raise DecompositionError("provider did not root its layering at X'")
    for v, w in join:
        if layer_of1[v] != i0 + layer_of2[w]:
            raise DecompositionError("layerings disagree on the join clique")

    n_layers = max(len(ld1.layering), i0 + len(ld2.layering))
    layers = [set(layer) for layer in ld1.layering.layers]
    layers.extend(set() for _ in range(n_layers - len(layers)))
    for w in range(g2.n):
        if w not in c2:
            layers[i0 + layer_of2[w]].add(vmap2[w])

    bags1 = ld1.decomposition.bags
    bags2 = tuple(
        frozenset(vmap2[w] for w in bag) for bag in ld2.decomposition.bags
    )
    x_in_g = frozenset(c1)
    b1 = next(i for i, bag in enumerate(bags1) if x_in_g <= bag)
    b2 = next(i for i, bag in enumerate(bags2) if x_in_g <= bag)
    offset = len(bags1)
    tree_edges = set(ld1.decomposition.tree_edges)
    tree_edges |= {
        (x + offset, y + offset) for x, y in ld2.decomposition.tree_edges
    }
    tree_edges.add((b1, b2 + offset))
    ld = LayeredDecomposition(
        TreeDecomposition(bags1 + bags2, frozenset(tree_edges)),
        Layering.from_sets(layers),
    )
    return composed, ld, vmap2


# ---------------------------------------------------------------------------
# Separators from decompositions.
# ---------------------------------------------------------------------------


def _components_within(g: Graph, allowed: frozenset[int]) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            for w in g.adjacency[v]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


def _halving_bag(td: TreeDecomposition, sample: frozenset[int]) -> int:
    """Bag whose removal leaves at most half the sample in every
    component, found by walking the decomposition tree toward the heavy
    side.

    For each tree edge the sample weight of either side is derived from
    subtree sums of top-bag counts, so the walk costs O(bags + |S|)
    instead of one component computation per bag.
    """
    parent, order, tin = td.rooted
    vbags = td.vertex_bags
    b = len(td.bags)
    cnt_top = [0] * b
    for v in sample:
        ids = vbags.get(v)
        if not ids:
            raise DecompositionError(f"sample vertex {v} appears in no bag")
        cnt_top[min(ids, key=lambda i: tin[i])] += 1
    sub_sum = cnt_top[:]
    for x in reversed(order):
        if parent[x] >= 0:
            sub_sum[parent[x]] += sub_sum[x]
    total = len(sample)

    def side_weight(y: int, towards: int) -> int:
        # sample weight of the side of bag y containing its neighbour
        if parent[towards] == y:
            return sub_sum[towards]
        # towards is y's parent: everything above minus the part of the
        # sample glued into B_y from above
        in_bag = sum(1 for v in td.bags[y] if v in sample)
        return total - sub_sum[y] - (in_bag - cnt_top[y])

    y = 0
    for _ in range(b + 1):
        heavy = None
        for x in td.tree_adjacency[y]:
            if 2 * side_weight(y, x) > total:
                heavy = x
                break
        if heavy is None:
            return y
        y = heavy
    raise DecompositionError("halving-bag walk failed to terminate")


def separator_from_decomposition(
    g: Graph, td: TreeDecomposition, sample: Iterable[int]
) -> tuple[int, Separation]:
    """Bag whose removal halves the sample, regrouped to a 2/3-balanced
    separation.

    Scans the bags for one where every component of G - B holds at most
    half the sample; groups the components greedily (descending sample
    count, lighter side first) and runs the exchange step if the greedy
    grouping exceeds 2/3.
    """
    sample = frozenset(sample)
    if not sample:
        raise GraphInputError("sample must be non-empty")
    idx = _halving_bag(td, sample)
    bag = td.bags[idx]
    comps = _components_within(g, frozenset(g.vertices()) - bag)
    if any(2 * len(c & sample) > len(sample) for c in comps):
        raise DecompositionError("no halving bag found: invalid decomposition")

    weighted = sorted(
        comps, key=lambda c: (-len(c & sample), min(c) if c else -1)
    )
    p_side: list[frozenset[int]] = []
    q_side: list[frozenset[int]] = []
    p_cnt = q_cnt = 0
    for c in weighted:
        w = len(c & sample)
        if p_cnt <= q_cnt:
            p_side.append(c)
            p_cnt += w
        else:
            q_side.append(c)
            q_cnt += w
    # exchange step: move a light component off the heavy side until
    # both sides are within 2/3 of the sample
    for _ in range(len(comps) + 1):
        heavy, light = (
            (p_side, q_side) if p_cnt >= q_cnt else (q_side, p_side)
        )
        hv = max(p_cnt, q_cnt)
        if 3 * hv <= 2 * len(sample):
            break
        movable = [
            c for c in heavy if 0 < len(c & sample) and 2 * len(c & sample) <= hv
        ]
        if not movable:
            raise DecompositionError("exchange step stuck: balance unreachable")
        c = min(movable, key=lambda c: (len(c & sample), min(c)))
        heavy.remove(c)
        light.append(c)
        w = len(c & sample)
        if heavy is p_side:
            p_cnt -= w
            q_cnt += w
        else:
            q_cnt -= w
            p_cnt += w
    part1 = frozenset(bag | {v for c in p_side for v in c})
    part2 = frozenset(bag | {v for c in q_side for v in c})
    return idx, Separation(part1, part2)


def layered_separation(
    g: Graph, ld: LayeredDecomposition, sample: Iterable[int]
) -> Separation:
    """Balanced separation whose separator meets each layer in at most
    ``ld.layered_width`` vertices (the separator is one bag)."""
    _, sep = separator_from_decomposition(g, ld.decomposition, sample)
    return sep


# ---------------------------------------------------------------------------
# Reed's converse: separations -> tree decomposition of width < 4k.
# ---------------------------------------------------------------------------

SeparationOracle = Callable[[frozenset[int]], Separation]


def treedec_from_separations(
    g: Graph, oracle: SeparationOracle, k: int
) -> TreeDecomposition:
    """Tree decomposition with bags of size at most 4k from a
    2/3-balanced separation oracle of order at most k."""
    if k < 1:
        raise GraphInputError("k must be positive")
    bags: list[frozenset[int]] = []
    tree_edges: list[tuple[int, int]] = []

    def check(sep: Separation, w: frozenset[int]) -> None:
        rep = validate_separation(g, sep, w, Fraction(2, 3))
        if not rep.ok or sep.order > k:
            raise DecompositionError(
                f"oracle broke its contract: order={sep.order}, {rep.violations}"
            )

    def build(u: frozenset[int], w: frozenset[int]) -> int:
        if len(u) <= 4 * k:
            bags.append(u)
            return len(bags) - 1
        sep = oracle(w)
        check(sep, w)
        b = w | (sep.intersection & u)
        if b == w:
            b = b | {min(u - w)}
        if len(b) > 4 * k:
            raise DecompositionError("root bag exceeded 4k")
        bags.append(b)
        me = len(bags) - 1
        for comp in _components_within(g, u - b):
            nbrs = frozenset(
                x for v in comp for x in g.adjacency[v] if x in b
            )
            if len(nbrs) > 3 * k:
                raise DecompositionError("child boundary exceeded 3k")
            child = build(comp | nbrs, nbrs)
            tree_edges.append((me, child))
        return me

    whole = frozenset(g.vertices())
    if not whole:
        return TreeDecomposition.single_bag(())
    roots = []
    for comp in _components_within(g, whole):
        roots.append(build(comp, frozenset()))
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b))
    return TreeDecomposition(tuple(bags), frozenset(tree_edges))


def decomposition_separation_oracle(
    g: Graph, td: TreeDecomposition
) -> SeparationOracle:
    """Separation oracle backed by separator_from_decomposition."""

    def oracle(sample: frozenset[int]) -> Separation:
        if not sample:
            sample = frozenset([0])
        _, sep = separator_from_decomposition(g, td, sample)
        return sep

    return oracle


# ---------------------------------------------------------------------------
# sqrt(kn) treewidth from layered width (residue-class deletion).
# ---------------------------------------------------------------------------


def norin_treewidth(g: Graph, ld: LayeredDecomposition) -> TreeDecomposition:
    """Tree decomposition of width at most 2*sqrt(k*n) from a layered
    decomposition of layered width k.

    Deletes the lightest residue class of layers (period ceil(sqrt(n/k)))
    and decomposes each leftover run of consecutive layers by restricting
    the input decomposition, adding the deleted class to every bag.
    """
    n = g.n
    k = max(ld.layered_width, 1)
    if n == 0:
        return TreeDecomposition.single_bag(())
    p = math.isqrt((n + k - 1) // k)
    if p * p * k < n:
        p += 1
    p = max(p, 1)
    layers = ld.layering.layers
    classes: list[set[int]] = [set() for _ in range(p)]
    for i, layer in enumerate(layers):
        classes[i % p] |= layer
    j = min(range(p), key=lambda j: (len(classes[j]), j))
    w = frozenset(classes[j])

    bags: list[frozenset[int]] = []
    tree_edges: list[tuple[int, int]] = []
    roots: list[int] = []
    for comp in _components_within(g, frozenset(g.vertices()) - w):
        sub = ld.restricted_to(comp)
        offset = len(bags)
        nonempty = False
        for bag in sub.decomposition.bags:
            bags.append(bag | w)
            nonempty = nonempty or bool(bag)
        tree_edges.extend(
            (x + offset, y + offset) for x, y in sub.decomposition.tree_edges
        )
        roots.append(offset)
    if not bags:
        bags.append(w)
        roots.append(0)
    for a, b in zip(roots, roots[1:]):
        tree_edges.append((a, b))
    td = TreeDecomposition(tuple(bags), frozenset(tree_edges))
    bound = 2 * math.sqrt(k * n)
    if td.width > bound:
        raise DecompositionError(
            f"width {td.width} exceeds 2*sqrt(kn) = {bound:.2f}"
        )
    return td


# ---------------------------------------------------------------------------
# Closed-form bound report.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    n: int
    m: int
    ell: int
    diameter: int
    radius: int
    edge_bound: int  # (3*ell - 1) * n
    edge_bound_ok: bool
    tw_bound_diameter: int  # ell*(d+1) - 1
    tw_bound_diameter_sep: int  # 4*ell*(d+1) - 1 (strict bound realised)
    norin_bound: float  # 2*sqrt(ell*n)

    def local_treewidth(self, r: int) -> int:
        return self.ell * (2 * r + 1) - 1

    def local_treewidth_sep(self, r: int) -> int:
        return 4 * self.ell * (2 * r + 1) - 1


def _eccentricities(g: Graph) -> list[int]:
    out = []
    for v in g.vertices():
        _, tree = bfs_layering(g, [v])
        out.append(max(tree.depth.values()))
    return out


def bound_report(g: Graph, ld: LayeredDecomposition) -> BoundReport:
    """All closed-form bounds implied by layered width ell."""
    ell = max(ld.layered_width, 1)
    ecc = _eccentricities(g) if g.n else [0]
    d = max(ecc)
    radius = min(ecc)
    edge_bound = (3 * ell - 1) * g.n
    return BoundReport(
        n=g.n,
        m=g.m,
        ell=ell,
        diameter=d,
        radius=radius,
        edge_bound=edge_bound,
        edge_bound_ok=g.m <= edge_bound,
        tw_bound_diameter=ell * (d + 1) - 1,
        tw_bound_diameter_sep=4 * ell * (d + 1) - 1,
        norin_bound=2 * math.sqrt(ell * g.n),
    )


# ---------------------------------------------------------------------------
# Exact treewidth (elimination-ordering DP over vertex subsets).
# ---------------------------------------------------------------------------


def exact_treewidth(g: Graph) -> int:
    """Exact treewidth for n <= 16 by dynamic programming over the
    subsets of eliminated vertices."""
    n = g.n
    if n > 16:
        raise GraphInputError("exact treewidth oracle limited to n <= 16")
    if n == 0:
        return -1
    nb = [0] * n
    for u, v in g.edges:
        nb[u] |= 1 << v
        nb[v] |= 1 << u
    full = (1 << n) - 1
    dp = [n] * (full + 1)
    dp[0] = 0
    for s in range(1, full + 1):
        best = n
        rem = s
        while rem:
            b = rem & (-rem)
            rem ^= b
            v = b.bit_length() - 1
            prev = dp[s ^ b]
            if prev >= best:
                continue
            # degree of v when eliminated after s^b: neighbours of the
            # component of v inside (s^b) | {v}
            inside = s ^ b
            reach = b
            frontier = b
            acc = 0
            while frontier:
                w = frontier & (-frontier)
                frontier ^= w
                nw = nb[w.bit_length() - 1]
                acc |= nw
                add = nw & inside & ~reach
                reach |= add
                frontier |= add
            deg = (acc & ~inside & ~b).bit_count()
            cost = prev if prev >= deg else deg
            if cost < best:
                best = cost
        dp[s] = best
    return dp[full]


# ---------------------------------------------------------------------------
# Text format: "bags B", B lines "id: v1 v2 ...", "tree", B-1 lines "x y".
# The layered variant appends the layering block.
# ---------------------------------------------------------------------------


def format_decomposition(td: TreeDecomposition) -> str:
    lines = [f"bags {len(td.bags)}"]
    for i, bag in enumerate(td.bags):
        lines.append(f"{i}: " + " ".join(str(v) for v in sorted(bag)))
    lines.append("tree")
    lines.extend(f"{x} {y}" for x, y in sorted(td.tree_edges))
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> TreeDecomposition:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("bags "):
        raise GraphInputError("decomposition must start with 'bags B'")
    b = int(lines[0].split()[1])
    if len(lines) < 1 + b + 1:
        raise GraphInputError("truncated decomposition")
    bags: list[frozenset[int]] = []
    for ln in lines[1 : 1 + b]:
        head, _, rest = ln.partition(":")
        if int(head) != len(bags):
            raise GraphInputError(f"bag ids must be consecutive, got {head!r}")
        bags.append(frozenset(int(v) for v in rest.split()))
    if lines[1 + b] != "tree":
        raise GraphInputError("expected 'tree' after the bag list")
    edges = set()
    for ln in lines[2 + b :]:
        x, y = map(int, ln.split())
        if not (0 <= x < b and 0 <= y < b) or x == y:
            raise GraphInputError(f"bad tree edge {ln!r}")
        edges.add((min(x, y), max(x, y)))
    return TreeDecomposition(tuple(bags), frozenset(edges))


def format_layered_decomposition(ld: LayeredDecomposition) -> str:
    from .graphs import format_layering

    return format_decomposition(ld.decomposition) + format_layering(ld.layering)


def parse_layered_decomposition(text: str) -> LayeredDecomposition:
    from .graphs import parse_layering

    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines or not lines[0].startswith("bags "):
        raise GraphInputError("decomposition must start with 'bags B'")
    b = int(lines[0].split()[1])
    # tree edges are exactly the B-1 pair lines after "tree"
    split = 2 + b + (b - 1)
    td = parse_decomposition("\n".join(lines[: split]))
    layering = parse_layering("\n".join(lines[split:]))
    return LayeredDecomposition(td, layering)
