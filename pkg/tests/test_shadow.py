import pytest

from layersep.decomposition import TreeDecomposition
from layersep.generators import (
    complete_graph,
    cycle_graph,
    path_graph,
    random_chordal_with_decomposition,
    random_tree,
)
from layersep.graphs import Graph, GraphInputError, Layering
from layersep.layouts import TrackLayout, verify_track_layout
from layersep.nonrep import Colouring, verify_nonrepetitive, verify_proper
from layersep.shadow import (
    RichDecomposition,
    ShadowError,
    format_rich,
    parse_rich,
    recursive_nonrep_driver,
    recursive_track_driver,
    rich_shadow_layering,
    shadow_track_bound,
    shadow_track_compose,
    validate_rich,
    validate_shadow_layering,
    verify_shadow_complete,
)


def edge_bag_rd(g: Graph) -> RichDecomposition:
    bags = tuple(frozenset(e) for e in sorted(g.edges))
    edges = []
    for i, b in enumerate(bags):
        if i == 0:
            continue
        hit = next((j for j in range(i) if bags[j] & b), 0)
        edges.append((hit, i))
    return RichDecomposition(TreeDecomposition(bags, tuple(edges)))


def rainbow_tracks(g: Graph) -> TrackLayout:
    return TrackLayout(tuple((v,) for v in g.vertices()))


def rainbow_colours(g: Graph) -> Colouring:
    return Colouring({v: v for v in g.vertices()})


def test_tree_edge_bags_one_rich():
    g = random_tree(12, seed=1)
    rd = edge_bag_rd(g)
    assert rd.richness == 1
    assert validate_rich(g, rd, k=1).ok


def test_single_bag_zero_rich():
    g = complete_graph(4)
    rd = RichDecomposition(TreeDecomposition.single_bag(range(4)))
    assert rd.richness == 0
    assert validate_rich(g, rd, k=0).ok


def test_shadow_layering_of_tree():
    g = random_tree(15, seed=3)
    rd = edge_bag_rd(g)
    sl = rich_shadow_layering(g, rd)
    assert validate_shadow_layering(g, rd, sl).ok
    assert verify_shadow_complete(g, sl.layering, k=1).ok
    # shadows of a 1-rich decomposition are single vertices
    assert all(len(shadow) <= 1 for _, _, shadow in sl.shadows(g))
    # each layer of a tree under edge bags induces an edgeless graph
    for layer in sl.layering.layers:
        assert not any(
            g.has_edge(u, v) for u in layer for v in layer if u < v
        )
    # layer 0 is the root alone
    assert sl.layering.layers[0] == frozenset({0})
    # per-layer decompositions are 0-rich
    assert all(pl.richness == 0 for pl in sl.per_layer)


def test_shadow_layering_chordal():
    for n, k in ((30, 3), (60, 4)):
        g, td = random_chordal_with_decomposition(n, seed=n, max_clique=k)
        rd = RichDecomposition(td)
        assert rd.richness <= k - 1
        sl = rich_shadow_layering(g, rd)
        assert validate_shadow_layering(g, rd, sl).ok
        assert verify_shadow_complete(g, sl.layering, rd.richness).ok
        assert all(
            pl.richness <= rd.richness - 1 for pl in sl.per_layer[1:]
        )
        assert all(len(s) <= rd.richness for _, _, s in sl.shadows(g))


def test_verify_shadow_complete_c4_violation():
    # {1,3} is a suffix component whose shadow {0} union {2}... the
    # neighbourhood of component {2} in layer {1,3} is not a clique
    g = cycle_graph(4)
    layering = Layering.from_sets([{0}, {1, 3}, {2}])
    rep = verify_shadow_complete(g, layering, k=1)
    assert not rep.ok
    assert any("clique" in v or "size" in v for v in rep.violations)
    # with k=2 the size is fine but {1,3} is still not a clique
    assert not verify_shadow_complete(g, layering, k=2).ok


def test_rich_shadow_layering_rejects_bad_input():
    g = cycle_graph(4)
    # a single bag is 0-rich; requesting a layering is fine, but an
    # invalid decomposition must be rejected
    bad = RichDecomposition(
        TreeDecomposition((frozenset({0, 1}), frozenset({2, 3})), ((0, 1),))
    )
    with pytest.raises(ShadowError):
        rich_shadow_layering(g, bad)
    with pytest.raises(GraphInputError):
        rich_shadow_layering(Graph.from_edges(0, []), RichDecomposition(
            TreeDecomposition.single_bag([])
        ))


def test_shadow_track_compose_tree():
    g = random_tree(20, seed=4)
    rd = edge_bag_rd(g)
    sl = rich_shadow_layering(g, rd)
    layer_tracks = [
        TrackLayout((tuple(sorted(layer)),)) for layer in sl.layering.layers
    ]
    tl = shadow_track_compose(g, sl.layering, layer_tracks, s=1)
    assert verify_track_layout(g, tl).ok
    assert len(tl.tracks) <= shadow_track_bound(1, 1)


def test_shadow_track_compose_single_layer_identity():
    g = complete_graph(3)
    layering = Layering.from_sets([{0, 1, 2}])
    inner = rainbow_tracks(g)
    tl = shadow_track_compose(g, layering, [inner], s=1)
    assert tl.tracks == inner.tracks


def test_shadow_track_bound_formula():
    assert shadow_track_bound(1, 1) == 6  # 3*1*(1 + C(1,1))
    assert shadow_track_bound(2, 1) == 18  # 3*2*(1 + C(2,1))
    assert shadow_track_bound(2, 2) == 24  # 3*2*(1 + 2 + 1)


def test_recursive_track_driver_chordal():
    for n, k in ((30, 3), (80, 4)):
        g, td = random_chordal_with_decomposition(n, seed=2 * n, max_clique=k)
        rd = RichDecomposition(td)
        tl = recursive_track_driver(g, rd, rainbow_tracks)
        assert verify_track_layout(g, tl).ok


def test_recursive_nonrep_driver_chordal():
    g, td = random_chordal_with_decomposition(40, seed=11, max_clique=3)
    rd = RichDecomposition(td)
    c = recursive_nonrep_driver(g, rd, rainbow_colours)
    assert verify_proper(g, c).ok
    assert verify_nonrepetitive(g, c, max_path=g.n) is None


def test_recursive_drivers_disconnected():
    base = random_tree(8, seed=5)
    edges = list(base.edges) + [(u + 8, v + 8) for u, v in base.edges]
    g = Graph.from_edges(16, edges)
    rd = edge_bag_rd(g)
    tl = recursive_track_driver(g, rd, rainbow_tracks)
    assert verify_track_layout(g, tl).ok
    c = recursive_nonrep_driver(g, rd, rainbow_colours)
    assert verify_proper(g, c).ok
    assert verify_nonrepetitive(g, c, max_path=g.n) is None


def test_validate_rich_rejects_overdeclared():
    g = path_graph(3)
    rd = edge_bag_rd(g)
    assert not validate_rich(g, rd, k=0).ok


def test_rich_format_roundtrip():
    g = random_tree(10, seed=6)
    rd = edge_bag_rd(g)
    back = parse_rich(format_rich(rd))
    assert back.decomposition.bags == rd.decomposition.bags
    assert set(map(frozenset, back.decomposition.tree_edges)) == set(
        map(frozenset, rd.decomposition.tree_edges)
    )
    assert back.richness == rd.richness


def test_parse_rich_rejects_understated_richness():
    g = path_graph(3)
    rd = edge_bag_rd(g)
    text = format_rich(rd).replace("rich 1", "rich 0")
    with pytest.raises((GraphInputError, ShadowError)):
        parse_rich(text)
