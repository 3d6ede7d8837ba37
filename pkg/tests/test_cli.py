from __future__ import annotations

import json
from pathlib import Path

import pytest

from orientk.cli import EXIT_OK, EXIT_REFUTED, EXIT_USAGE, build_parser, main, run
from orientk.graph import Multidigraph, Multigraph, parse_graph
from orientk.reduction import GadgetMap


TRIANGLE = "graph undirected\nv a\nv b\nv c\ne a b\ne b c\ne c a\n"
BRIDGE = "graph undirected\nv a\nv b\ne a b\n"
ARC = "graph directed\nv a\nv b\ne a b\n"
XYZ = "p nae\nclause x y !z\n"
XX = "p nae\nclause x x\n"


def _write(tmp_path: Path, name: str, text: str) -> str:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


def test_gen_gk_then_check_euler(tmp_path) -> None:
    out = str(tmp_path / "g4.graph")
    assert main(["gen", "gk", "--k", "4", "-o", out]) == EXIT_OK
    graph = parse_graph(Path(out).read_text(encoding="utf-8"))
    assert isinstance(graph, Multigraph)
    assert len(graph.vertices) == 39
    assert main(["check", "euler", out]) == EXIT_OK


def test_gen_h3_prime_writes_graph_and_map(tmp_path) -> None:
    out = str(tmp_path / "h.graph")
    gmap = str(tmp_path / "h.json")
    report = run(["gen", "h3-prime", "-o", out, "--map", gmap])
    assert report.exit_code == EXIT_OK
    assert report.outcome["vertices"] == 17
    assert GadgetMap.from_json(Path(gmap).read_text(encoding="utf-8")).W == ("w.C0",)


def test_check_euler_reports_odd_vertices(tmp_path) -> None:
    path = _write(tmp_path, "bridge.graph", BRIDGE)
    report = run(["check", "euler", path])
    assert report.exit_code == EXIT_REFUTED
    assert report.outcome["witness"] == "ODD a b"


def test_check_weak(tmp_path) -> None:
    path = _write(tmp_path, "tri.graph", TRIANGLE)
    assert run(["check", "weak", "--k", "1", path]).exit_code == EXIT_OK
    report = run(["check", "weak", "--k", "2", path])
    assert report.exit_code == EXIT_REFUTED
    assert report.outcome["witness"].startswith("PAIR")


def test_check_weak_certificates(tmp_path) -> None:
    path = _write(tmp_path, "tri.graph", TRIANGLE)
    report = run(["--certificates", "check", "weak", "--k", "1", path])
    assert report.exit_code == EXIT_OK
    assert len(report.outcome["certificates"]) == 3


def test_check_kconn_single_arc(tmp_path, capsys) -> None:
    path = _write(tmp_path, "arc.graph", ARC)
    assert main(["check", "kconn", "--k", "1", path]) == EXIT_REFUTED
    out = capsys.readouterr().out
    # b cannot reach a
    assert "witness: PAIR b a SEPARATOR" in out
    assert "exit: 1" in out


def test_check_kconn_with_orientation(tmp_path) -> None:
    graph = _write(tmp_path, "tri.graph", TRIANGLE)
    cyclic = _write(tmp_path, "cyclic.orient", "0 +\n1 +\n2 +\n")
    assert run(["check", "kconn", "--k", "1", graph, cyclic]).exit_code == EXIT_OK
    acyclic = _write(tmp_path, "acyclic.orient", "0 +\n1 +\n2 -\n")
    assert run(["check", "kconn", "--k", "1", graph, acyclic]).exit_code == EXIT_REFUTED
    partial = _write(tmp_path, "partial.orient", "0 +\n")
    assert run(["check", "kconn", "--k", "1", graph, partial]).exit_code == EXIT_USAGE
    assert run(["check", "kconn", "--k", "1", graph]).exit_code == EXIT_USAGE


def test_usage_errors(tmp_path) -> None:
    assert run([]).exit_code == EXIT_USAGE
    assert run(["check", "weak", "--k", "x", "g"]).exit_code == EXIT_USAGE
    missing = run(["check", "euler", str(tmp_path / "nope.graph")])
    assert missing.exit_code == EXIT_USAGE
    assert "cannot read" in missing.outcome["error"]
    bad = _write(tmp_path, "bad.graph", "graph sideways\n")
    assert run(["check", "euler", bad]).exit_code == EXIT_USAGE
    directed = _write(tmp_path, "arc.graph", ARC)
    assert run(["check", "euler", directed]).exit_code == EXIT_USAGE


def test_json_output(tmp_path, capsys) -> None:
    path = _write(tmp_path, "tri.graph", TRIANGLE)
    assert main(["--json", "search", "--k", "1", path]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["exit_code"] == 0
    assert doc["outcome"]["status"] == "found"
    assert doc["command"][0] == "--json"
    assert path in doc["inputs"]


def test_search_exit_codes(tmp_path) -> None:
    tri = _write(tmp_path, "tri.graph", TRIANGLE)
    found = run(["search", "--k", "1", tri])
    assert found.exit_code == EXIT_OK
    assert found.outcome["orientation"].count("\n") == 3
    bridge = _write(tmp_path, "bridge.graph", BRIDGE)
    assert run(["search", "--k", "1", bridge]).exit_code == EXIT_REFUTED
    assert run(["search", "--k", "1", "--budget", "0", tri]).exit_code == EXIT_USAGE


def test_encode_then_decode(tmp_path) -> None:
    nae = _write(tmp_path, "xyz.nae", XYZ)
    out = str(tmp_path / "xyz.graph")
    gmap = str(tmp_path / "xyz.json")
    report = run(["encode", "--k", "3", nae, "-o", out, "--map", gmap])
    assert report.exit_code == EXIT_OK
    assert report.outcome["vertices"] == 25
    assert isinstance(parse_graph(Path(out).read_text(encoding="utf-8")), Multidigraph)

    empty = _write(tmp_path, "none.orient", "")
    decoded = run(["decode", gmap, empty])
    assert decoded.exit_code == EXIT_OK
    assert decoded.outcome["assignment"] == ["x true", "y true", "z true"]


def test_encode_eulerized(tmp_path) -> None:
    nae = _write(tmp_path, "xyz.nae", XYZ)
    report = run([
        "encode", "--k", "3", "--eulerize", nae,
        "-o", str(tmp_path / "e.graph"), "--map", str(tmp_path / "e.json"),
    ])
    assert report.exit_code == EXIT_OK
    assert report.outcome["F"] == 5


def test_decode_inconsistent(tmp_path) -> None:
    nae = _write(tmp_path, "xyz.nae", XYZ)
    gmap = str(tmp_path / "xyz.json")
    run(["encode", "--k", "3", nae, "-o", str(tmp_path / "xyz.graph"), "--map", gmap])
    delta_x = GadgetMap.from_json(Path(gmap).read_text(encoding="utf-8")).delta["x"][0]
    flipped = _write(tmp_path, "flip.orient", f"{delta_x} -\n")
    report = run(["decode", gmap, flipped])
    assert report.exit_code == EXIT_REFUTED
    assert report.outcome["witness"].startswith("INCONSISTENT")


def test_verify_reduction(tmp_path) -> None:
    report = run(["verify", "reduction", "--k", "3", _write(tmp_path, "xyz.nae", XYZ)])
    assert report.exit_code == EXIT_OK
    assert report.outcome["connected"] == report.outcome["nae_bruteforce"] == 6
    report = run(["verify", "reduction", "--k", "3", _write(tmp_path, "xx.nae", XX)])
    assert report.exit_code == EXIT_OK
    assert report.outcome["connected"] == 0


def test_verify_counterexample_on_a_bridge(tmp_path) -> None:
    report = run(["verify", "counterexample", "--k", "1", _write(tmp_path, "b.graph", BRIDGE)])
    assert report.exit_code == EXIT_REFUTED
    assert report.outcome["weakly_2k"] is False


def test_threads_from_environment(tmp_path, monkeypatch) -> None:
    path = _write(tmp_path, "tri.graph", TRIANGLE)
    monkeypatch.setenv("ORIENTK_THREADS", "2")
    assert run(["check", "weak", "--k", "1", path]).exit_code == EXIT_OK
    monkeypatch.setenv("ORIENTK_THREADS", "many")
    assert run(["check", "weak", "--k", "1", path]).exit_code == EXIT_USAGE


def test_version_flag(capsys) -> None:
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--version"])
    assert capsys.readouterr().out.startswith("orientk ")


def test_global_flags_after_the_subcommand(tmp_path, capsys) -> None:
    path = _write(tmp_path, "tri.graph", TRIANGLE)
    report = run(["check", "euler", path, "--json", "--certificates", "--threads", "2"])
    assert report.exit_code == EXIT_OK
    assert report.as_json
    assert "circuit" in report.outcome
    assert main(["check", "euler", path, "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["outcome"]["holds"] is True
    # flags given before the subcommand survive the subparser defaults
    assert run(["--json", "check", "euler", path]).as_json


def test_unwritable_output_is_a_usage_error(tmp_path) -> None:
    out = str(tmp_path / "missing" / "h3.graph")
    report = run(["gen", "h3", "-o", out])
    assert report.exit_code == EXIT_USAGE
    assert "cannot write" in report.outcome["error"]
    nae = _write(tmp_path, "xyz.nae", XYZ)
    report = run(["encode", "--k", "3", nae, "-o", str(tmp_path / "ok.graph"), "--map", str(tmp_path / "no" / "m.json")])
    assert report.exit_code == EXIT_USAGE


def test_verify_reduction_eulerized(tmp_path) -> None:
    report = run(["verify", "reduction", "--k", "3", "--eulerize", _write(tmp_path, "xyz.nae", XYZ)])
    assert report.exit_code == EXIT_OK
    assert (report.outcome["assignments"], report.outcome["connected"]) == (8, 6)
