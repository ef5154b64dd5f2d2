import json

from lazytwist.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_h2_a4(capsys):
    code, out, _ = run_cli(capsys, "h2", "A4")
    assert code == 0
    rep = json.loads(out)
    assert rep["exact_order"] == 2
    assert rep["order_bounds"] == [2, 2]
    assert rep["status"] == "exact"


def test_twist_verify_fixture(capsys):
    code, out, _ = run_cli(capsys, "twist-verify", "A4", "A4_twist")
    assert code == 0
    assert json.loads(out) == {"twist": True, "invariant": True,
                               "normalized": True}


def test_twist_theta_fixture(capsys):
    code, out, _ = run_cli(capsys, "twist-theta", "A4", "A4_twist")
    assert code == 0
    rep = json.loads(out)
    assert rep["socle_order"] == 4
    assert rep["form"]["matrix"] == [[0, 1], [1, 0]]


def test_liecheck_s3(capsys):
    code, out, _ = run_cli(capsys, "liecheck", "S3")
    assert code == 0
    assert json.loads(out) == {"group": "S3", "injective": True,
                               "exact": True, "kernel_dim": 6}


def test_group_info_autc_bg(capsys):
    code, out, _ = run_cli(capsys, "group-info", "Wall32")
    assert code == 0
    info = json.loads(out)
    assert info["order"] == 32 and info["center_order"] == 2
    code, out, _ = run_cli(capsys, "autc", "Wall32")
    assert json.loads(out)["inn_index"] == 2
    code, out, _ = run_cli(capsys, "bg", "D8")
    assert json.loads(out)["bg_size"] == 3


def test_inline_and_file_groups(tmp_path, capsys):
    table = {"name": "K", "table": [[0, 1], [1, 0]]}
    path = tmp_path / "k.json"
    path.write_text(json.dumps(table))
    code, out, _ = run_cli(capsys, "h2", str(path))
    assert code == 0 and json.loads(out)["exact_order"] == 1
    perms = {"name": "S3", "perm_generators": [[2, 1, 3], [2, 3, 1]]}
    code, out, _ = run_cli(capsys, "h2", json.dumps(perms))
    assert code == 0 and json.loads(out)["exact_order"] == 1


def test_error_exits(tmp_path, capsys):
    code, _, err = run_cli(capsys, "h2", "NoSuchGroup")
    assert code == 2 and "error" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"table": [[0, 1], [0, 1]]}))
    code, _, err = run_cli(capsys, "h2", str(bad))
    assert code == 2 and "error" in err
    code, _, err = run_cli(capsys, "twist-verify", "A4", "missing.json")
    assert code == 2
    # Wr_5 is addressable but refuses to build at desk scale
    code, _, err = run_cli(capsys, "group-info", "Wr_5")
    assert code == 2 and "error" in err


def test_output_byte_stable(capsys):
    runs = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, "h2", "D8")
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
    code, out1, _ = run_cli(capsys, "twist-theta", "Wall32", "Wall_F")
    code, out2, _ = run_cli(capsys, "twist-theta", "Wall32", "Wall_F")
    assert out1 == out2


def test_fixture_dir_flag(tmp_path, capsys):
    from lazytwist.fixtures import builtin_group
    from lazytwist.cli import packaged_tensor

    A4 = builtin_group("A4")
    F = packaged_tensor("A4_twist", A4)
    path = tmp_path / "mytwist.json"
    path.write_text(json.dumps(F.to_json("A4")))
    code, out, _ = run_cli(capsys, "--fixture-dir", str(tmp_path),
                           "twist-verify", "A4", "mytwist")
    assert code == 0 and json.loads(out)["twist"] is True


def test_paper_suite(capsys):
    code, out, _ = run_cli(capsys, "paper-suite")
    assert code == 0
    data = json.loads(out)
    assert data["summary"]["failed"] == []
    assert data["summary"]["total"] == 16
    assert {r["group"] for r in data["reports"]} >= {"A4", "D8", "Wall32"}


def test_twist_theta_rejects_non_invariant(tmp_path, capsys):
    import json as _json
    from lazytwist.fixtures import builtin_group
    from lazytwist.hopf import GTensor, gauge
    from lazytwist.cli import packaged_tensor

    A4 = builtin_group("A4")
    F = packaged_tensor("A4_twist", A4)
    sigma = next(x for x in range(A4.order) if A4.element_order(x) == 3)
    a = GTensor(A4, 1, {(0,): 2, (sigma,): 1})
    skew = gauge(a, F)
    path = tmp_path / "skew.json"
    path.write_text(_json.dumps(skew.to_json("A4")))
    code = main(["twist-theta", "A4", str(path)])
    captured = capsys.readouterr()
    assert code == 2 and "error" in captured.err
