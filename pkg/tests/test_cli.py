import json

import pytest

from govatlas.cli import main
from govatlas.fixtures import write_inputs


@pytest.fixture()
def inputs(tmp_path):
    return write_inputs(tmp_path)


def _ingest(tmp_path, inputs, extra=()):
    out = tmp_path / "atlas.json"
    code = main(
        [
            "ingest",
            "--geometry", str(inputs["geometry"]),
            "--affiliations", str(inputs["affiliations"]),
            "--regions", str(inputs["regions"]),
            "--secondary", str(inputs["secondary"]),
            "--projection", "identity",
            "--out", str(out),
            *extra,
        ]
    )
    return code, out


def test_ingest_builds_atlas(tmp_path, inputs, capsys):
    code, out = _ingest(tmp_path, inputs)
    captured = capsys.readouterr()
    assert code == 0
    assert out.exists()
    assert captured.out == ""  # data goes to --out, diagnostics to stderr
    assert "16 counties" in captured.err
    doc = json.loads(out.read_text())
    assert doc["stats"]["rigo_count"] == 3


def test_query_output_exact(tmp_path, inputs, capsys):
    code, out = _ingest(tmp_path, inputs)
    assert code == 0
    capsys.readouterr()
    assert main(["query", "--atlas", str(out), "--q", "more-rigos-or-msas"]) == 0
    assert capsys.readouterr().out == '{"answer":"RIGO","rigo_count":3,"msa_count":2}\n'
    assert main(["query", "--atlas", str(out), "--q", "cross-state-rigo"]) == 0
    assert capsys.readouterr().out == '{"answer":true,"evidence":["R3"]}\n'
    assert main(["query", "--atlas", str(out), "--q", "cross-state-msa"]) == 0
    assert capsys.readouterr().out == '{"answer":true,"evidence":["M1"]}\n'


def test_stats_json(tmp_path, inputs, capsys):
    _, out = _ingest(tmp_path, inputs)
    capsys.readouterr()
    assert main(["stats", "--atlas", str(out)]) == 0
    stats = json.loads(capsys.readouterr().out)
    assert stats["category_counts"] == {"Both": 3, "RigoOnly": 6, "MsaOnly": 1, "Neither": 6}


def test_stats_table(tmp_path, inputs, capsys):
    _, out = _ingest(tmp_path, inputs)
    capsys.readouterr()
    assert main(["stats", "--atlas", str(out), "--format", "table"]) == 0
    table = capsys.readouterr().out
    assert "RIGOs" in table and "cross-state MSAs" in table


def test_render_writes_svg(tmp_path, inputs):
    _, atlas_path = _ingest(tmp_path, inputs)
    svg_path = tmp_path / "map.svg"
    code = main(
        [
            "render",
            "--atlas", str(atlas_path),
            "--view", "national",
            "--layer", "both",
            "--out", str(svg_path),
        ]
    )
    assert code == 0
    assert svg_path.read_text().startswith("<svg")


def test_render_unknown_state_exits_1(tmp_path, inputs, capsys):
    _, atlas_path = _ingest(tmp_path, inputs)
    capsys.readouterr()
    code = main(
        [
            "render",
            "--atlas", str(atlas_path),
            "--view", "XX",
            "--layer", "rigo",
            "--out", str(tmp_path / "x.svg"),
        ]
    )
    assert code == 1
    assert "E_UNKNOWN_STATE" in capsys.readouterr().err


def test_ingest_assembly_errors_exit_1(tmp_path, inputs, capsys):
    bad = tmp_path / "affiliations-bad.csv"
    bad.write_text(
        inputs["affiliations"].read_text().replace("00000,R1,", "00000,R9,"),
        encoding="utf-8",
    )
    code = main(
        [
            "ingest",
            "--geometry", str(inputs["geometry"]),
            "--affiliations", str(bad),
            "--regions", str(inputs["regions"]),
            "--projection", "identity",
            "--out", str(tmp_path / "atlas.json"),
        ]
    )
    assert code == 1
    err = capsys.readouterr().err
    assert "E_UNKNOWN_REGION" in err and "R9" in err
    assert not (tmp_path / "atlas.json").exists()


def test_usage_error_exits_2(capsys):
    assert main(["frobnicate"]) == 2
    assert main([]) == 2
    assert main(["query", "--atlas", "x.json", "--q", "nonsense"]) == 2


def test_missing_file_exits_1(capsys):
    code = main(["stats", "--atlas", "/nonexistent/atlas.json"])
    assert code == 1
    assert "E_NO_FILE" in capsys.readouterr().err


def test_ingest_without_secondary(tmp_path, inputs):
    out = tmp_path / "atlas2.json"
    code = main(
        [
            "ingest",
            "--geometry", str(inputs["geometry"]),
            "--affiliations", str(inputs["affiliations"]),
            "--regions", str(inputs["regions"]),
            "--projection", "identity",
            "--out", str(out),
        ]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["stats"]["dual_rigo_count"] == 0


def test_albers_projection_pipeline(tmp_path, inputs):
    # Same tables, real projection: counts are projection-independent.
    out = tmp_path / "atlas-albers.json"
    code = main(
        [
            "ingest",
            "--geometry", str(inputs["geometry"]),
            "--affiliations", str(inputs["affiliations"]),
            "--regions", str(inputs["regions"]),
            "--secondary", str(inputs["secondary"]),
            "--out", str(out),
        ]
    )
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["stats"]["rigo_count"] == 3
    assert doc["topology"]["scale"] == 1e4
