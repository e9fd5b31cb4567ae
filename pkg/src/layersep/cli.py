"""Command-line front end.

Every subcommand reads the plain-text formats defined by the library,
writes its artifact plus a JSON run manifest, and exits 0 only after the
matching verifier passed.  Exit codes: 0 verified success, 1
verification failure (counterexample printed), 2 invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from .decomposition import (
    LayeredDecomposition,
    format_layered_decomposition,
    genus_layered_decomposition,
    layered_separation,
    parse_layered_decomposition,
    validate_tree_decomposition,
)
from .drawing3d import (
    draw_from_tracks,
    export_obj,
    export_svg,
    format_drawing,
    parse_drawing,
    verify_drawing,
    volume_report,
)
from .embedding import EmbeddedGraph, embed_planar, parse_rotation_system, format_rotation_system
from .generators import gen as gen_fixture
from .graphs import (
    Graph,
    GraphInputError,
    format_graph,
    format_layering,
    parse_graph,
    parse_layering,
    validate_layering,
)
from .layouts import (
    compute_recursion,
    format_queue_layout,
    format_track_layout,
    parse_queue_layout,
    parse_track_layout,
    queue_from_tracks,
    track_layout_from_compute,
    verify_queue_layout,
    verify_track_layout,
)
from .nonrep import (
    default_max_path,
    format_colouring,
    nonrep_from_compute,
    parse_colouring,
    verify_nonrepetitive,
    verify_proper,
)
from .shadow import parse_rich, rich_shadow_layering, verify_shadow_complete

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2


@dataclass
class RunManifest:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)  # path -> sha256
    parameters: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    verdicts: dict[str, str] = field(default_factory=dict)

    def add_input(self, path: str) -> None:
        digest = hashlib.sha256(Path(path).read_bytes()).hexdigest()
        self.inputs[path] = digest

    def write(self, out_path: Optional[str]) -> None:
        text = json.dumps(asdict(self), indent=2, default=str) + "\n"
        if out_path:
            Path(out_path).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_embedded(args, manifest: RunManifest) -> EmbeddedGraph:
    if getattr(args, "embedded", None):
        manifest.add_input(args.embedded)
        return parse_rotation_system(Path(args.embedded).read_text(encoding="utf-8"))
    manifest.add_input(args.graph)
    g = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
    return embed_planar(g)


def _root_clique(args) -> tuple[int, ...]:
    return tuple(int(x) for x in str(args.root).split(",")) if args.root else (0,)


def _pipeline(args, manifest: RunManifest):
    """Embedded input -> layered decomposition -> recursion labels."""
    eg = _load_embedded(args, manifest)
    g = eg.to_graph()
    res = genus_layered_decomposition(eg, _root_clique(args))
    ld = res.ld
    labels = compute_recursion(
        g, ld.layering, ld, q=tuple(res.apex_paths), mode="separation"
    )
    manifest.bounds["layered_width"] = ld.layered_width
    manifest.bounds["genus"] = res.genus
    return g, res, labels


def cmd_decompose(args) -> int:
    manifest = RunManifest("decompose", parameters={"root": args.root})
    eg = _load_embedded(args, manifest)
    g = eg.to_graph()
    res = genus_layered_decomposition(eg, _root_clique(args))
    ld = res.ld
    rep_d = validate_tree_decomposition(g, ld.decomposition)
    rep_l = validate_layering(g, ld.layering)
    manifest.bounds["layered_width"] = ld.layered_width
    manifest.bounds["width"] = ld.decomposition.width
    manifest.bounds["genus"] = res.genus
    manifest.verdicts["decomposition"] = "pass" if rep_d.ok else "fail"
    manifest.verdicts["layering"] = "pass" if rep_l.ok else "fail"
    _write(args.out, format_layered_decomposition(ld))
    manifest.write(args.manifest)
    if not (rep_d.ok and rep_l.ok):
        print((rep_d.violations + rep_l.violations)[0], file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_separate(args) -> int:
    manifest = RunManifest("separate", parameters={"root": args.root})
    g, res, _ = _pipeline(args, manifest)
    from .graphs import validate_separation

    sample = frozenset(g.vertices())
    sep = layered_separation(g, res.ld, sample)
    report = validate_separation(g, sep, sample, layering=res.ld.layering)
    manifest.bounds["separator_size"] = len(sep.intersection)
    manifest.verdicts["separation"] = "pass" if report.ok else "fail"
    lines = [
        " ".join(map(str, sorted(part)))
        for part in (sep.part1 - sep.part2, sep.intersection, sep.part2 - sep.part1)
    ]
    _write(args.out, "\n".join(lines) + "\n")
    manifest.write(args.manifest)
    if not report.ok:
        print(report.violations[0], file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_tracks(args) -> int:
    manifest = RunManifest("tracks", parameters={"root": args.root})
    g, res, labels = _pipeline(args, manifest)
    tl = track_layout_from_compute(g, res.ld.layering, labels)
    rep = verify_track_layout(g, tl)
    manifest.bounds["tracks"] = len(tl.tracks)
    manifest.verdicts["tracks"] = "pass" if rep.ok else "fail"
    _write(args.out, format_track_layout(tl))
    manifest.write(args.manifest)
    if not rep.ok:
        print(rep.violations[0], file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_queues(args) -> int:
    manifest = RunManifest("queues", parameters={"root": args.root})
    g, res, labels = _pipeline(args, manifest)
    tl = track_layout_from_compute(g, res.ld.layering, labels)
    ql = queue_from_tracks(g, tl)
    rep = verify_queue_layout(g, ql)
    manifest.bounds["tracks"] = len(tl.tracks)
    manifest.bounds["queues"] = ql.queue_count
    manifest.verdicts["queues"] = "pass" if rep.ok else "fail"
    _write(args.out, format_queue_layout(ql))
    manifest.write(args.manifest)
    if not rep.ok:
        print(rep.violations[0], file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_nonrep(args) -> int:
    manifest = RunManifest("nonrep", parameters={"root": args.root})
    g, res, labels = _pipeline(args, manifest)
    colouring = nonrep_from_compute(g, res.ld.layering, labels)
    max_path = args.verify_max_path or default_max_path(g.n)
    manifest.parameters["max_path"] = max_path
    proper = verify_proper(g, colouring)
    counterexample = verify_nonrepetitive(g, colouring, max_path)
    manifest.bounds["palette"] = colouring.palette_size
    manifest.verdicts["proper"] = "pass" if proper.ok else "fail"
    manifest.verdicts["nonrepetitive"] = "pass" if counterexample is None else "fail"
    _write(args.out, format_colouring(colouring))
    manifest.write(args.manifest)
    if not proper.ok:
        print(proper.violations[0], file=sys.stderr)
        return EXIT_VERIFY
    if counterexample is not None:
        print(f"repetitive path: {counterexample}", file=sys.stderr)
        return EXIT_VERIFY
    print("pass")
    return EXIT_OK


def cmd_draw3d(args) -> int:
    manifest = RunManifest("draw3d", parameters={"root": args.root, "seed": args.seed})
    g, res, labels = _pipeline(args, manifest)
    tl = track_layout_from_compute(g, res.ld.layering, labels)
    d = draw_from_tracks(g, tl, seed=args.seed)
    rep = verify_drawing(g, d)
    vr = volume_report(d, g, track_count=len(tl.tracks))
    manifest.bounds["tracks"] = len(tl.tracks)
    manifest.bounds["volume"] = vr.volume
    manifest.bounds["volume_bound"] = vr.upper_bound
    manifest.verdicts["drawing"] = "pass" if rep.ok else "fail"
    _write(args.out, format_drawing(d))
    if args.svg:
        Path(args.svg).write_text(export_svg(g, d), encoding="utf-8")
    if args.obj:
        Path(args.obj).write_text(export_obj(g, d), encoding="utf-8")
    manifest.write(args.manifest)
    if not rep.ok:
        print(rep.violations[0], file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_verify(args) -> int:
    manifest = RunManifest("verify", parameters={"kind": args.kind})
    manifest.add_input(args.artifact)
    manifest.add_input(args.graph)
    g = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
    text = Path(args.artifact).read_text(encoding="utf-8")
    kind = args.kind
    if kind == "tracks":
        rep = verify_track_layout(g, parse_track_layout(text))
    elif kind == "queues":
        rep = verify_queue_layout(g, parse_queue_layout(text))
    elif kind == "layering":
        rep = validate_layering(g, parse_layering(text))
    elif kind == "decomposition":
        ld = parse_layered_decomposition(text)
        rep = validate_tree_decomposition(g, ld.decomposition)
        if rep.ok:
            rep = validate_layering(g, ld.layering)
    elif kind == "nonrep":
        colouring = parse_colouring(text)
        rep = verify_proper(g, colouring)
        if rep.ok:
            hit = verify_nonrepetitive(
                g, colouring, args.verify_max_path or default_max_path(g.n)
            )
            if hit is not None:
                print(f"repetitive path: {hit}", file=sys.stderr)
                manifest.verdicts[kind] = "fail"
                manifest.write(args.manifest)
                return EXIT_VERIFY
    elif kind == "drawing":
        rep = verify_drawing(g, parse_drawing(text))
    elif kind == "shadow":
        layering = parse_layering(text)
        rep = verify_shadow_complete(g, layering, args.k)
    else:
        raise GraphInputError(f"unknown verification kind {kind!r}")
    manifest.verdicts[kind] = "pass" if rep.ok else "fail"
    manifest.write(args.manifest)
    if not rep.ok:
        print(rep.violations[0], file=sys.stderr)
        return EXIT_VERIFY
    print("pass")
    return EXIT_OK


def cmd_gen(args) -> int:
    fixture = gen_fixture(args.family, args.size, args.seed)
    manifest = RunManifest(
        "gen",
        parameters={"family": args.family, "size": args.size, "seed": args.seed},
        bounds=dict(fixture.expected),
    )
    if args.rotation:
        if fixture.embedded is None:
            raise GraphInputError(f"family {args.family!r} has no embedding")
        _write(args.out, format_rotation_system(fixture.embedded))
    else:
        _write(args.out, format_graph(fixture.graph))
    manifest.write(args.manifest)
    return EXIT_OK


_BENCH_FAMILIES = (
    ("planar_triangulation", 60),
    ("planar_triangulation", 150),
    ("toroidal_grid", 5),
    ("grid", 8),
)


def cmd_bench(args) -> int:
    rows = []
    for family, size in _BENCH_FAMILIES:
        fixture = gen_fixture(family, size, args.seed)
        eg = fixture.embedded or embed_planar(fixture.graph)
        g = eg.to_graph()
        t0 = time.perf_counter()
        res = genus_layered_decomposition(eg, (0,))
        t1 = time.perf_counter()
        labels = compute_recursion(
            g, res.ld.layering, res.ld, q=tuple(res.apex_paths), mode="separation"
        )
        tl = track_layout_from_compute(g, res.ld.layering, labels)
        t2 = time.perf_counter()
        d = draw_from_tracks(g, tl, seed=args.seed)
        t3 = time.perf_counter()
        rows.append(
            (f"{family}/{size}", g.n, t1 - t0, t2 - t1, t3 - t2, len(tl.tracks), d.volume)
        )
    print(f"{'fixture':<26}{'n':>5}{'decomp':>9}{'tracks':>9}{'draw':>9}{'t':>4}{'vol':>9}")
    for name, n, a, b, c, t, vol in rows:
        print(f"{name:<26}{n:>5}{a:>9.3f}{b:>9.3f}{c:>9.3f}{t:>4}{vol:>9}")
    return EXIT_OK


_REPORT_FAMILIES = (
    ("planar_triangulation", 40, 3),
    ("planar_triangulation", 120, 3),
    ("toroidal_grid", 5, 7),
    ("toroidal_grid", 7, 7),
)


def cmd_report(args) -> int:
    import math

    print("| fixture | n | layered width | bound | tracks | track bound | palette | palette bound |")
    print("|---|---|---|---|---|---|---|---|")
    for family, size, lw_bound in _REPORT_FAMILIES:
        fixture = gen_fixture(family, size, args.seed)
        eg = fixture.embedded
        g = eg.to_graph()
        res = genus_layered_decomposition(eg, (0,))
        labels = compute_recursion(
            g, res.ld.layering, res.ld, q=tuple(res.apex_paths), mode="separation"
        )
        tl = track_layout_from_compute(g, res.ld.layering, labels)
        colouring = nonrep_from_compute(g, res.ld.layering, labels)
        logn = 1 + math.log(max(g.n, 2)) / math.log(1.5)
        gcap = res.genus
        track_bound = math.ceil(3 * (2 * gcap + 3) + 3 * (2 * gcap + 3) * logn)
        pal_bound = math.ceil(4 * (2 * gcap + 3) * (1 + logn))
        print(
            f"| {family}/{size} | {g.n} | {res.ld.layered_width} | {lw_bound} "
            f"| {len(tl.tracks)} | {track_bound} | {colouring.palette_size} | {pal_bound} |"
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="layersep")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed")
    sub = parser.add_subparsers(dest="command", required=True)

    def pipeline_args(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("graph", nargs="?", help="graph file (planar input)")
        src.add_argument("--embedded", help="rotation-system file")
        p.add_argument("--root", default="0", help="root clique, comma-separated ids")
        p.add_argument("--out", help="output artifact path (default stdout)")
        p.add_argument("--manifest", help="manifest JSON path (default stdout)")

    for name, fn in (
        ("decompose", cmd_decompose),
        ("separate", cmd_separate),
        ("tracks", cmd_tracks),
        ("queues", cmd_queues),
        ("nonrep", cmd_nonrep),
        ("draw3d", cmd_draw3d),
    ):
        p = sub.add_parser(name, parents=[common])
        pipeline_args(p)
        p.set_defaults(fn=fn)
        if name == "nonrep":
            p.add_argument("--verify-max-path", type=int, default=None)
        if name == "draw3d":
            p.add_argument("--svg", help="also export an SVG projection")
            p.add_argument("--obj", help="also export an OBJ line set")

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("kind", choices=["tracks", "queues", "layering", "decomposition", "nonrep", "drawing", "shadow"])
    p.add_argument("artifact")
    p.add_argument("graph")
    p.add_argument("--k", type=int, default=1, help="shadow size bound for kind=shadow")
    p.add_argument("--verify-max-path", type=int, default=None)
    p.add_argument("--manifest")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("gen", parents=[common])
    p.add_argument("family")
    p.add_argument("size", type=int)
    p.add_argument("--rotation", action="store_true", help="emit the rotation-system format")
    p.add_argument("--out")
    p.add_argument("--manifest")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("bench", parents=[common])
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("report", parents=[common])
    p.set_defaults(fn=cmd_report)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (GraphInputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
