import json
import threading
import urllib.error
import urllib.request

import pytest

from govatlas.model import Layer
from govatlas.render import DEFAULT_STYLE
from govatlas.server import make_server


@pytest.fixture(scope="module")
def server(atlas16):
    srv = make_server(atlas16, DEFAULT_STYLE, port=0)
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    yield srv
    srv.shutdown()
    srv.server_close()


@pytest.fixture(scope="module")
def get(server):
    port = server.server_address[1]

    def _get(path: str):
        try:
            with urllib.request.urlopen(f"http://127.0.0.1:{port}{path}") as response:
                return response.status, response.read()
        except urllib.error.HTTPError as err:
            return err.code, err.read()

    return _get


def test_county_detail(get):
    status, body = get("/api/county/00006")
    assert status == 200
    doc = json.loads(body)
    assert doc["category"] == "MsaOnly"
    assert doc["msa"] == "M1"
    assert doc["rigos"] == []
    assert doc["state"] == "BB"


def test_dual_county_lists_both_rigos(get):
    status, body = get("/api/county/00001")
    assert status == 200
    doc = json.loads(body)
    assert doc["rigos"] == ["R1", "R3"]
    assert doc["dual_rigo"] is True


def test_unknown_county_404(get):
    status, body = get("/api/county/99999")
    assert status == 404
    assert json.loads(body)["code"] == "E_UNKNOWN_FIPS"


def test_bad_layer_400(get):
    status, body = get("/api/national?layer=banana")
    assert status == 400
    assert json.loads(body)["code"] == "E_BAD_LAYER"


def test_stats_passthrough(get, atlas16):
    status, body = get("/api/stats")
    assert status == 200
    assert json.loads(body) == atlas16.stats.to_dict()


def test_meta(get, atlas16):
    status, body = get("/api/meta")
    doc = json.loads(body)
    assert doc["county_count"] == 16
    assert doc["states"] == ["AA", "BB"]
    assert doc["bin_count"] == 5
    assert doc["style"]["ramps"]["rigo"][0] == "#edf8e9"
    assert doc["layers"] == ["RIGO", "MSA", "BOTH"]


def test_national_county_count_every_layer(get, atlas16):
    for layer in ("rigo", "msa", "both"):
        status, body = get(f"/api/national?layer={layer}")
        assert status == 200
        doc = json.loads(body)
        assert len(doc["counties"]) == len(atlas16.counties)
        assert len(doc["arcs"]) == len(doc["arc_categories"])


def test_national_payload_contents(get):
    _, body = get("/api/national?layer=rigo")
    doc = json.loads(body)
    assert doc["counties"]["00001"]["texture"] is True
    assert doc["counties"]["00000"]["texture"] is False
    assert doc["counties"]["00002"]["state"] == "BB"
    assert [o["code"] for o in doc["outlines"]] == ["R1", "R2", "R3"]
    assert [o["code"] for o in doc["state_outlines"]] == ["AA", "BB"]
    assert any(e["kind"] == "hatch" for e in doc["legend"])
    # Ring references stay within the shipped arc list.
    arc_count = len(doc["arcs"])
    for county in doc["counties"].values():
        for ring in county["rings"]:
            for ref in ring:
                assert 0 <= (ref if ref >= 0 else ~ref) < arc_count


def test_state_view_clipped(get):
    status, body = get("/api/state/BB?layer=msa")
    assert status == 200
    doc = json.loads(body)
    assert len(doc["counties"]) == 8
    assert set(doc["counties"]) == {f"000{n:02d}" for n in (2, 3, 6, 7, 10, 11, 14, 15)}
    arc_count = len(doc["arcs"])
    for county in doc["counties"].values():
        for ring in county["rings"]:
            for ref in ring:
                assert 0 <= (ref if ref >= 0 else ~ref) < arc_count
    assert [o["code"] for o in doc["outlines"]] == ["M1", "M2"]


def test_unknown_state_404(get):
    status, body = get("/api/state/XX?layer=rigo")
    assert status == 404
    assert json.loads(body)["code"] == "E_UNKNOWN_STATE"


def test_unknown_endpoint_404(get):
    status, body = get("/api/unknown")
    assert status == 404


def test_responses_byte_identical(get):
    first = get("/api/national?layer=both")
    second = get("/api/national?layer=both")
    assert first == second


def test_fallback_index(get):
    status, body = get("/")
    assert status == 200
    assert b"govatlas" in body


def test_assets_directory(atlas16, tmp_path):
    (tmp_path / "index.html").write_text("<html>app</html>", encoding="utf-8")
    (tmp_path / "app.js").write_text("console.log('hi')", encoding="utf-8")
    srv = make_server(atlas16, DEFAULT_STYLE, port=0, assets_dir=str(tmp_path))
    thread = threading.Thread(target=srv.serve_forever, daemon=True)
    thread.start()
    port = srv.server_address[1]

    def fetch(path):
        try:
            with urllib.request.urlopen(f"http://127.0.0.1:{port}{path}") as response:
                return response.status, response.read(), response.headers.get("Content-Type")
        except urllib.error.HTTPError as err:
            return err.code, err.read(), err.headers.get("Content-Type")

    try:
        status, body, ctype = fetch("/")
        assert status == 200 and body == b"<html>app</html>"
        assert "text/html" in ctype
        status, body, ctype = fetch("/app.js")
        assert status == 200 and b"console" in body
        status, _, _ = fetch("/../secrets.txt")
        assert status == 404
        status, _, _ = fetch("/missing.css")
        assert status == 404
    finally:
        srv.shutdown()
        srv.server_close()
