"""Command-line pipeline: ingest, render, stats, query, serve.

Exit codes: 0 success, 1 validation or data errors (details on stderr),
2 usage errors. Data goes to stdout or --out, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import server as server_mod
from .atlas_io import AtlasFileError, dumps_atlas, loads_atlas
from .ingest import (
    AssemblyError,
    IngestError,
    assemble,
    parse_affiliations,
    parse_geometry,
    parse_regions,
    parse_secondary,
)
from .model import Layer, validate_atlas
from .pipeline import build_atlas
from .projection import ProjectionError
from .render import RenderError, ViewSpec, render_map
from .stats import Query, answer_query
from .topology import TopologyError


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def cmd_ingest(args: argparse.Namespace) -> int:
    pre = assemble(
        parse_geometry(_read(args.geometry)),
        parse_affiliations(_read(args.affiliations)),
        parse_regions(_read(args.regions)),
        parse_secondary(_read(args.secondary)) if args.secondary else [],
    )
    atlas = build_atlas(pre, projection=args.projection, scale=args.scale)
    report = validate_atlas(atlas)
    for issue in report.issues:
        print(f"{issue.severity}: {issue.code}: {issue.message}", file=sys.stderr)
    if not report.ok:
        return 1
    Path(args.out).write_text(dumps_atlas(atlas), encoding="utf-8")
    print(
        f"wrote {args.out}: {len(atlas.counties)} counties, {len(atlas.regions)} regions",
        file=sys.stderr,
    )
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    atlas, style = loads_atlas(_read(args.atlas))
    spec = ViewSpec(view=args.view, layer=Layer(args.layer.upper()), style=style)
    svg = render_map(atlas, spec)
    Path(args.out).write_text(svg, encoding="utf-8")
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    atlas, _ = loads_atlas(_read(args.atlas))
    stats = atlas.stats.to_dict() if atlas.stats else {}
    if args.format == "json":
        print(json.dumps(stats, sort_keys=True, separators=(",", ":")))
        return 0
    rows = [
        ("RIGOs", stats["rigo_count"]),
        ("MSAs", stats["msa_count"]),
        ("dual-RIGO counties", stats["dual_rigo_count"]),
    ]
    rows += [(f"counties {name}", n) for name, n in sorted(stats["category_counts"].items())]
    rows.append(("cross-state RIGOs", ", ".join(stats["cross_state_rigos"]) or "-"))
    rows.append(("cross-state MSAs", ", ".join(stats["cross_state_msas"]) or "-"))
    width = max(len(label) for label, _ in rows)
    for label, value in rows:
        print(f"{label:<{width}}  {value}")
    return 0


def cmd_query(args: argparse.Namespace) -> int:
    atlas, _ = loads_atlas(_read(args.atlas))
    answer = answer_query(atlas, Query(args.q))
    print(json.dumps(answer.to_dict(), separators=(",", ":")))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    atlas, style = loads_atlas(_read(args.atlas))
    port = args.port if args.port is not None else int(os.environ.get("ATLAS_PORT", "8000"))
    server_mod.serve(atlas, style, port=port, assets_dir=args.assets, host=args.host)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="govatlas", description="Regional governance atlas toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build an atlas file from geometry and CSV tables")
    p.add_argument("--geometry", required=True, help="GeoJSON FeatureCollection of counties")
    p.add_argument("--affiliations", required=True, help="county_fips,rigo_code,msa_code CSV")
    p.add_argument("--regions", required=True, help="code,kind,name,population CSV")
    p.add_argument("--secondary", help="county_fips,rigo_code CSV of secondary RIGOs")
    p.add_argument("--projection", choices=["albers", "identity"], default="albers")
    p.add_argument("--scale", type=float, default=None, help="grid cells per projected unit")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("render", help="render an SVG map from an atlas file")
    p.add_argument("--atlas", required=True)
    p.add_argument("--view", required=True, help='"national" or a state code')
    p.add_argument("--layer", choices=["rigo", "msa", "both"], default="rigo")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("stats", help="print dashboard statistics")
    p.add_argument("--atlas", required=True)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("query", help="answer a comparison query")
    p.add_argument("--atlas", required=True)
    p.add_argument(
        "--q",
        required=True,
        choices=[q.value for q in Query],
    )
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("serve", help="serve the atlas JSON API and frontend assets")
    p.add_argument("--atlas", required=True)
    p.add_argument("--port", type=int, default=None, help="overrides ATLAS_PORT")
    p.add_argument("--assets", help="directory of static frontend files")
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except AssemblyError as exc:
        for err in exc.errors:
            print(f"{err.code}: {err.message}", file=sys.stderr)
        return 1
    except (IngestError, TopologyError, ProjectionError, RenderError, AtlasFileError) as exc:
        print(f"{exc.code}: {exc.message}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"E_NO_FILE: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
