"""Read-only HTTP service: atlas JSON API plus static frontend assets.

One atlas is loaded at startup and shared across request threads; every
response is cached after first render, so identical requests are
byte-identical for the service's lifetime.
"""

from __future__ import annotations

import json
import logging
import mimetypes
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlsplit

from .atlas_io import _encode_arc, style_to_dict
from .model import Atlas, Layer, RegionKind
from .render import StyleConfig, ViewSpec, build_legend, style_for, _layer_regions
from .topology import categorize_arcs, dissolve

log = logging.getLogger(__name__)

FALLBACK_INDEX = """<!doctype html>
<html><head><title>govatlas</title></head>
<body>
<h1>govatlas API</h1>
<p>No frontend assets configured (pass --assets DIR). Endpoints:</p>
<ul>
<li><a href="/api/meta">/api/meta</a></li>
<li><a href="/api/stats">/api/stats</a></li>
<li><a href="/api/national?layer=rigo">/api/national?layer=rigo|msa|both</a></li>
<li>/api/state/{code}?layer=rigo|msa|both</li>
<li>/api/county/{fips}</li>
</ul>
</body></html>
"""


def _json_bytes(payload) -> bytes:
    return (json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n").encode("utf-8")


def meta_payload(atlas: Atlas, style: StyleConfig) -> dict:
    return {
        "county_count": len(atlas.counties),
        "rigo_count": len(atlas.regions_of_kind(RegionKind.RIGO)),
        "msa_count": len(atlas.regions_of_kind(RegionKind.MSA)),
        "bin_count": atlas.bin_count,
        "states": list(atlas.states),
        "layers": [layer.value for layer in Layer],
        "style": style_to_dict(style),
    }


def county_payload(atlas: Atlas, fips: str) -> dict | None:
    county = atlas.county_index.get(fips)
    if county is None:
        return None
    overlap = atlas.categories[fips]
    rigos = []
    primary = atlas.primary_rigo.get(fips)
    if primary:
        rigos.append(primary)
    secondary = atlas.secondary_rigo.get(fips)
    if secondary:
        rigos.append(secondary)
    return {
        "fips": fips,
        "name": county.name,
        "state": county.state,
        "population": county.population,
        "rigos": rigos,
        "msa": atlas.primary_msa.get(fips),
        "category": overlap.category.value,
        "dual_rigo": overlap.dual_rigo,
    }


def view_payload(atlas: Atlas, style: StyleConfig, layer: Layer, state: str | None = None) -> dict | None:
    """Arc topology, per-county styling, dissolved outlines and legend for one view.

    State views ship only the arcs incident to that state's counties, re-indexed.
    """
    topology = atlas.topology
    if state is None:
        counties = sorted(atlas.counties, key=lambda c: c.fips)
    else:
        if state not in atlas.states:
            return None
        counties = sorted((c for c in atlas.counties if c.state == state), key=lambda c: c.fips)
    visible = {c.fips for c in counties}

    categories = categorize_arcs(topology, atlas, layer)
    included = [
        i
        for i, (a, b) in enumerate(topology.adjacency)
        if a in visible or b in visible
    ]
    remap = {old: new for new, old in enumerate(included)}

    def remap_ref(ref: int) -> int:
        idx = ref if ref >= 0 else ~ref
        new = remap[idx]
        return new if ref >= 0 else ~new

    county_entries = {}
    for county in counties:
        fill, texture = style_for(county, atlas, layer, style)
        county_entries[county.fips] = {
            "rings": [
                [remap_ref(r) for r in refs] for refs in topology.county_rings[county.fips]
            ],
            "fill": fill.color(style),
            "texture": texture,
            "state": county.state,
        }

    outlines = []
    for region in _layer_regions(atlas, layer):
        members = region.members & visible
        if not members:
            continue
        shape = dissolve(topology, members, code=region.code)
        outlines.append(
            {
                "code": region.code,
                "kind": region.kind.value,
                "rings": [[remap_ref(r) for r in refs] for refs in shape.arc_refs],
            }
        )

    state_outlines = []
    for code in atlas.states:
        members = {c.fips for c in counties if c.state == code}
        if not members:
            continue
        shape = dissolve(topology, members, code=code)
        state_outlines.append(
            {"code": code, "rings": [[remap_ref(r) for r in refs] for refs in shape.arc_refs]}
        )

    view_name = state if state is not None else "national"
    spec = ViewSpec(view=view_name, layer=layer, style=style)
    return {
        "view": view_name,
        "layer": layer.value,
        "scale": topology.scale,
        "translate": list(topology.translate),
        "arcs": [_encode_arc(topology.arcs[i]) for i in included],
        "arc_categories": [categories[i].value for i in included],
        "counties": county_entries,
        "outlines": outlines,
        "state_outlines": state_outlines,
        "legend": [entry.to_dict() for entry in build_legend(spec, atlas)],
    }


class AtlasServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, atlas: Atlas, style: StyleConfig, assets_dir: str | None = None):
        self.atlas = atlas
        self.style = style
        self.assets_dir = Path(assets_dir).resolve() if assets_dir else None
        self._cache: dict[str, tuple[int, bytes]] = {}
        self._cache_lock = threading.Lock()
        super().__init__(address, AtlasRequestHandler)

    def cached(self, key: str, build) -> tuple[int, bytes]:
        with self._cache_lock:
            if key not in self._cache:
                self._cache[key] = build()
            return self._cache[key]


class AtlasRequestHandler(BaseHTTPRequestHandler):
    server: AtlasServer

    def log_message(self, fmt, *args):  # route request noise to logging
        log.debug("%s - %s", self.address_string(), fmt % args)

    def _send(self, status: int, body: bytes, content_type: str = "application/json; charset=utf-8"):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _error(self, status: int, code: str, message: str):
        self._send(status, _json_bytes({"code": code, "message": message}))

    def _parse_layer(self, query: str) -> Layer | None:
        values = parse_qs(query).get("layer", ["rigo"])
        try:
            return Layer(values[-1].upper())
        except ValueError:
            return None

    def do_GET(self):  # noqa: N802 (http.server API)
        parts = urlsplit(self.path)
        path = parts.path
        atlas, style = self.server.atlas, self.server.style

        if path == "/api/meta":
            status, body = self.server.cached(
                "meta", lambda: (200, _json_bytes(meta_payload(atlas, style)))
            )
            return self._send(status, body)
        if path == "/api/stats":
            status, body = self.server.cached(
                "stats", lambda: (200, _json_bytes(atlas.stats.to_dict() if atlas.stats else {}))
            )
            return self._send(status, body)
        if path.startswith("/api/county/"):
            fips = path.removeprefix("/api/county/")
            payload = county_payload(atlas, fips)
            if payload is None:
                return self._error(404, "E_UNKNOWN_FIPS", f"no county {fips!r}")
            status, body = self.server.cached(f"county:{fips}", lambda: (200, _json_bytes(payload)))
            return self._send(status, body)
        if path == "/api/national":
            layer = self._parse_layer(parts.query)
            if layer is None:
                return self._error(400, "E_BAD_LAYER", "layer must be rigo, msa or both")
            status, body = self.server.cached(
                f"national:{layer.value}",
                lambda: (200, _json_bytes(view_payload(atlas, style, layer))),
            )
            return self._send(status, body)
        if path.startswith("/api/state/"):
            code = path.removeprefix("/api/state/")
            layer = self._parse_layer(parts.query)
            if layer is None:
                return self._error(400, "E_BAD_LAYER", "layer must be rigo, msa or both")
            payload = view_payload(atlas, style, layer, state=code)
            if payload is None:
                return self._error(404, "E_UNKNOWN_STATE", f"no state {code!r}")
            status, body = self.server.cached(
                f"state:{code}:{layer.value}", lambda: (200, _json_bytes(payload))
            )
            return self._send(status, body)
        if path.startswith("/api/"):
            return self._error(404, "E_NOT_FOUND", f"unknown endpoint {path}")
        return self._serve_asset(path)

    def _serve_asset(self, path: str):
        assets = self.server.assets_dir
        if path in ("", "/"):
            path = "/index.html"
        if assets is None:
            if path == "/index.html":
                return self._send(200, FALLBACK_INDEX.encode("utf-8"), "text/html; charset=utf-8")
            return self._error(404, "E_NOT_FOUND", f"no asset {path}")
        target = (assets / path.lstrip("/")).resolve()
        if not str(target).startswith(str(assets)) or not target.is_file():
            return self._error(404, "E_NOT_FOUND", f"no asset {path}")
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        if ctype.startswith("text/") or ctype in ("application/javascript", "application/json"):
            ctype += "; charset=utf-8"
        return self._send(200, target.read_bytes(), ctype)


def make_server(
    atlas: Atlas,
    style: StyleConfig,
    port: int = 0,
    assets_dir: str | None = None,
    host: str = "127.0.0.1",
) -> AtlasServer:
    return AtlasServer((host, port), atlas, style, assets_dir)


def serve(
    atlas: Atlas,
    style: StyleConfig,
    port: int,
    assets_dir: str | None = None,
    host: str = "127.0.0.1",
) -> None:
    """Serve until interrupted; the atlas is never mutated."""
    import sys

    server = make_server(atlas, style, port, assets_dir, host)
    host_name, bound_port = server.server_address[:2]
    log.info("serving atlas on http://%s:%s/", host_name, bound_port)
    print(f"serving on http://{host_name}:{bound_port}/", file=sys.stderr, flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.shutdown()
        server.server_close()
