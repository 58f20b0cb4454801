import json

from stratacert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--genus", "2")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert lines == [
        "g=2;gb=0;legs=2;top=[(1,[1,1])]",
        "g=2;gb=1;legs=2;top=[(1,[1])]",
    ]
    assert "# config:" in out


def test_enumerate_raw_count(capsys):
    code, out, _ = run(capsys, "enumerate", "--genus", "2", "--raw")
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert code == 0 and len(lines) == 3


def test_output_is_byte_identical(capsys):
    _, out1, _ = run(capsys, "enumerate", "--genus", "5")
    _, out2, _ = run(capsys, "enumerate", "--genus", "5")
    assert out1 == out2
    _, out3, _ = run(capsys, "scan", "--from", "29", "--to", "33", "--mode", "coarse")
    _, out4, _ = run(capsys, "scan", "--from", "29", "--to", "33", "--mode", "coarse",
                     "--workers", "4")
    assert out3 == out4


def test_certify_coarse_json(capsys):
    code, out, _ = run(capsys, "certify", "--genus", "31", "--mode", "coarse",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "certified"
    assert data["y"] == "14700793/79300000"
    assert data["config"]["genus"] == 31


def test_certify_exact_small(capsys):
    code, out, _ = run(capsys, "certify", "--genus", "8", "--mode", "exact",
                       "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["status"] == "infeasible"
    assert data["graph_count"] == 716


def test_certify_exact_no_hbb_flag(capsys):
    code, out, _ = run(capsys, "certify", "--genus", "9", "--mode", "exact",
                       "--no-hbb-shape", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert any("shape test disabled" in n for n in data["notes"])


def test_scan_csv(capsys):
    code, out, _ = run(capsys, "scan", "--from", "29", "--to", "34",
                       "--mode", "coarse")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert lines[0] == "genus,mode,status,y,margin,graph_count,seconds"
    rows = {int(l.split(",")[0]): l.split(",") for l in lines[1:]}
    assert rows[31][2] == "certified"
    assert rows[32][2] == "coarse_bounds_conflict"
    assert rows[29][6] == ""  # timings off by default


def test_pullback_check(capsys):
    code, out, _ = run(capsys, "pullback-check", "--genus", "4")
    assert code == 0
    data = json.loads(out)
    assert data["match"] is True
    assert data["mu"] == [4, 4]
    assert data["alpha"] == [4, 0]


def test_identities_command(capsys):
    code, out, _ = run(capsys, "identities", "--genus-max", "5")
    assert code == 0
    assert "y_hor root equivalence" in out


def test_class_command(capsys):
    code, out, _ = run(capsys, "class", "--genus", "31", "--which", "bn",
                       "--atlas", "/dev/null")
    assert code == 0
    data = json.loads(out)
    assert data["lambda"] == "6"
    assert data["d_h"] == "-16/17"
    code, out, _ = run(capsys, "class", "--genus", "4", "--which", "wplus",
                       "--form", "raw")
    data = json.loads(out)
    assert data["psi"] == "7"


def test_class_genw(capsys):
    code, out, _ = run(capsys, "class", "--genus", "4", "--which", "genw",
                       "--mu", "4,4", "--alpha", "4,0", "--form", "raw")
    assert code == 0
    data = json.loads(out)
    assert data["psi"] == ["10", "0"]


def test_atlas_cache_round_trip(tmp_path, capsys):
    atlas = tmp_path / "g5.txt"
    code, out, _ = run(capsys, "enumerate", "--genus", "5", "--out", str(atlas))
    assert code == 0
    code, out, _ = run(capsys, "invariants", "--genus", "5",
                       "--atlas", str(atlas), "--format", "csv")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert len(lines) == 1 + 58  # header + atlas size at genus 5


def test_usage_errors(capsys):
    assert run(capsys, "certify", "--genus", "31", "--y", "zz")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "class", "--genus", "4", "--which", "genw")[0] == 1
    # parity mismatch: Brill--Noether needs odd genus
    assert run(capsys, "certify", "--genus", "8", "--mode", "exact",
               "--effdiv", "bn")[0] == 1


def test_out_file(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "certify", "--genus", "31", "--mode", "coarse",
                       "--out", str(path))
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert data["status"] == "certified"


def test_identities_detects_violations(monkeypatch, capsys):
    from stratacert import cli as cli_mod

    def broken_suite(graphs, hbb_shape_test=True, with_assembly=True):
        return 1, ["synthetic violation"]

    monkeypatch.setattr(cli_mod.checks, "identity_suite", broken_suite)
    code, out, _ = run(capsys, "identities", "--genus-max", "3")
    assert code == 2


def test_internal_assertion_maps_to_exit_2(monkeypatch, capsys):
    from stratacert import cli as cli_mod

    def boom(args):
        raise AssertionError("engine self-check failed")

    monkeypatch.setattr(cli_mod, "_cmd_certify", boom)
    monkeypatch.setitem(cli_mod._COMMANDS, "certify", boom)
    code, _, err = run(capsys, "certify", "--genus", "31", "--mode", "coarse")
    assert code == 2
    assert "invariant violation" in err


def test_identities_moderate_genus(capsys):
    code, out, _ = run(capsys, "identities", "--genus-max", "12",
                       "--full-max", "8", "--samples", "40")
    assert code == 0
    assert "genus 12: 40 graphs (40 spread samples): ok" in out


def test_identities_workers_equivalence(capsys):
    _, out1, _ = run(capsys, "identities", "--genus-max", "6")
    _, out2, _ = run(capsys, "identities", "--genus-max", "6", "--workers", "2")
    assert out1 == out2


def test_exact_scan_reports_first_feasible_genus(capsys):
    code, out, _ = run(capsys, "scan", "--from", "8", "--to", "10",
                       "--mode", "exact", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["first_feasible_genus"] is None
    assert len(data["certificates"]) == 3
