import pytest

from layersep.drawing3d import (
    DrawingError,
    GridDrawing3D,
    draw_from_tracks,
    export_obj,
    export_svg,
    format_drawing,
    parse_drawing,
    segment_through_point,
    segments_intersect_fraction,
    segments_intersect_int,
    verify_drawing,
    volume_report,
)
from layersep.generators import Lcg, complete_graph, cycle_graph, path_graph
from layersep.graphs import Graph, GraphInputError
from layersep.layouts import TrackLayout
from tests.conftest import planar_pipeline, torus_pipeline


def test_segments_cross_at_midpoint():
    assert segments_intersect_int((0, 0, 0), (2, 2, 2), (0, 0, 2), (2, 2, 0))
    assert segments_intersect_fraction(
        (0, 0, 0), (2, 2, 2), (0, 0, 2), (2, 2, 0)
    )


def test_segments_shared_endpoint_ok():
    # open segments: a common endpoint is not an intersection
    assert not segments_intersect_int((0, 0, 0), (1, 0, 0), (0, 0, 0), (0, 1, 0))
    assert not segments_intersect_fraction(
        (0, 0, 0), (1, 0, 0), (0, 0, 0), (0, 1, 0)
    )


def test_segments_skew_ok():
    assert not segments_intersect_int((0, 0, 0), (1, 0, 0), (0, 1, 1), (1, 1, 2))


def test_collinear_overlap_detected():
    assert segments_intersect_int((0, 0, 0), (4, 0, 0), (2, 0, 0), (6, 0, 0))
    assert not segments_intersect_int((0, 0, 0), (2, 0, 0), (2, 0, 0), (4, 0, 0))


def test_segment_through_point():
    assert segment_through_point((0, 0, 0), (4, 4, 4), (2, 2, 2))
    assert not segment_through_point((0, 0, 0), (4, 4, 4), (1, 2, 3))
    assert not segment_through_point((0, 0, 0), (4, 4, 4), (0, 0, 0))


def test_predicates_agree_random():
    rng = Lcg(99)
    agree = 0
    for _ in range(1500):
        pts = [
            (rng.randrange(5), rng.randrange(5), rng.randrange(5))
            for _ in range(4)
        ]
        if pts[0] == pts[1] or pts[2] == pts[3]:
            continue
        a = segments_intersect_int(*pts)
        b = segments_intersect_fraction(*pts)
        assert a == b
        agree += 1
    assert agree > 1000


def test_draw_c6():
    g = cycle_graph(6)
    tl = TrackLayout(((0, 3), (1, 5), (2, 4)))
    d = draw_from_tracks(g, tl)
    assert verify_drawing(g, d).ok
    x, y, z = d.bounding_box
    assert x <= 3 and y <= 3 and z <= 6


def test_draw_k4():
    g = complete_graph(4)
    tl = TrackLayout(((0,), (1,), (2,), (3,)))
    d = draw_from_tracks(g, tl)
    assert verify_drawing(g, d).ok
    assert d.volume <= 4 * 16 * 4


def test_draw_single_edge():
    g = path_graph(2)
    d = draw_from_tracks(g, TrackLayout(((0,), (1,))))
    assert verify_drawing(g, d).ok


def test_draw_rejects_invalid_layout():
    g = cycle_graph(6)
    with pytest.raises(GraphInputError):
        draw_from_tracks(g, TrackLayout(((0, 3), (1, 4), (2, 5))))


def test_draw_corpus_volume_bound():
    for n in (30, 100):
        g, _, _, tl = planar_pipeline(n)
        d = draw_from_tracks(g, tl)
        assert verify_drawing(g, d).ok
        t = len(tl.tracks)
        assert d.volume <= 4 * t * t * g.n


def test_draw_torus():
    g, _, _, tl = torus_pipeline(4, 4)
    d = draw_from_tracks(g, tl)
    assert verify_drawing(g, d).ok


def test_verify_drawing_negative():
    g = path_graph(4)
    bad = GridDrawing3D(
        {0: (0, 0, 0), 1: (2, 2, 2), 2: (0, 0, 2), 3: (2, 2, 0)}
    )
    assert not verify_drawing(g, bad).ok
    dup = GridDrawing3D({0: (0, 0, 0), 1: (0, 0, 0), 2: (1, 1, 1), 3: (2, 1, 1)})
    assert not verify_drawing(g, dup).ok
    # vertex 2 sits inside edge (0,1)
    through = GridDrawing3D(
        {0: (0, 0, 0), 1: (4, 4, 4), 2: (2, 2, 2), 3: (0, 1, 0)}
    )
    assert not verify_drawing(g, through).ok


def test_volume_report():
    g, _, _, tl = planar_pipeline(40)
    d = draw_from_tracks(g, tl)
    rep = volume_report(d, g=g, track_count=len(tl.tracks))
    assert rep.bound_ok
    assert rep.volume == d.volume
    assert rep.upper_bound == 4 * len(tl.tracks) ** 2 * g.n
    assert rep.lower_floor > 0


def test_drawing_format_roundtrip():
    g, _, _, tl = planar_pipeline(20)
    d = draw_from_tracks(g, tl)
    assert parse_drawing(format_drawing(d)).position == d.position
    svg = export_svg(g, d)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    obj = export_obj(g, d)
    assert obj.count("\nl ") + obj.startswith("l ") == len(g.edges)
