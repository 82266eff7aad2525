"""Serve the demo atlas over HTTP and poke the JSON API from the same process.

Pass a port to keep the server running for a browser; with no argument the
script fetches a few endpoints and exits. Point --assets (or the frontend/dist
build) at the server to get the interactive viewer.
"""

import json
import sys
import threading
import urllib.request

from govatlas.fixtures import fixture_atlas
from govatlas.render import DEFAULT_STYLE
from govatlas.server import make_server, serve


def explore_once() -> None:
    atlas = fixture_atlas()
    server = make_server(atlas, DEFAULT_STYLE, port=0)
    port = server.server_address[1]
    threading.Thread(target=server.serve_forever, daemon=True).start()
    try:
        for path in (
            "/api/meta",
            "/api/stats",
            "/api/county/00001",
            "/api/national?layer=rigo",
        ):
            with urllib.request.urlopen(f"http://127.0.0.1:{port}{path}") as response:
                body = json.loads(response.read())
            keys = ", ".join(sorted(body)) if isinstance(body, dict) else body
            print(f"GET {path}\n   -> {keys}")
    finally:
        server.shutdown()
        server.server_close()


def main() -> None:
    if len(sys.argv) > 1:
        serve(fixture_atlas(), DEFAULT_STYLE, port=int(sys.argv[1]))
    else:
        explore_once()


if __name__ == "__main__":
    main()
