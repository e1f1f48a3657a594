import json

import pytest

from zigrank.cli import main
from zigrank.exceptions import ParseError, ValidationError
from zigrank.generate import example_nested_module, example_non_decomposable_module, random_presented_module
from zigrank.io import FIELD_ENV, dumps_module, load_input, loads_module, save_module


@pytest.fixture
def nested_file(tmp_path):
    path = tmp_path / "nested.json"
    save_module(example_nested_module(scramble_seed=1), path)
    return str(path)


@pytest.fixture
def bifil_file(tmp_path):
    path = tmp_path / "b.txt"
    assert main(["gen", "--kind", "random-bifiltration", "--seed", "4", "--grid", "3x3", "--out", str(path)]) == 0
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_module_json_roundtrip():
    M = random_presented_module(5, (3, 2), 3)
    N = loads_module(dumps_module(M))
    assert dumps_module(N) == dumps_module(M)


def test_loader_reports_first_bad_square():
    text = json.dumps(
        {
            "grid": {"rect": [0, 0, 1, 1]},
            "dims": {"0,0": 1, "1,0": 1, "0,1": 1, "1,1": 1},
            "maps": {"0,0->1,0": [[1]], "0,0->0,1": [[1]], "1,0->1,1": [[1]], "0,1->1,1": [[0]]},
        }
    )
    with pytest.raises(ValidationError, match="square"):
        loads_module(text)


@pytest.mark.parametrize(
    "text,exc",
    [
        ("{", ParseError),
        ('{"dims": {}}', ParseError),
        ('{"grid": {"rect": [0,0,1,0]}, "dims": {"0;0": 1}}', ParseError),
        ('{"grid": {"rect": [0,0,1,0]}, "dims": {"0,0": 1, "1,0": 1}, "maps": {"0,0->1,1": [[1]]}}', ValidationError),
        ('{"grid": {"rect": [0,0,1,0]}, "dims": {"0,0": 1, "1,0": 1}, "maps": {"0,0->1,0": [[1, 1]]}}', ValidationError),
    ],
)
def test_loader_errors(text, exc):
    with pytest.raises(exc):
        loads_module(text)


def test_autodetect(tmp_path, nested_file, bifil_file):
    assert type(load_input(nested_file)).__name__ == "ExplicitModule"
    assert type(load_input(bifil_file)).__name__ == "Bifiltration"
    bad = tmp_path / "bad.txt"
    bad.write_text("hello\n")
    with pytest.raises(ParseError):
        load_input(bad)


def test_field_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "m.json"
    obj = json.loads(dumps_module(random_presented_module(1, (2, 2), 3)))
    del obj["field"]
    path.write_text(json.dumps(obj))
    monkeypatch.setenv(FIELD_ENV, "3")
    assert load_input(path).field == 3
    monkeypatch.delenv(FIELD_ENV)
    assert load_input(path).field == 2


def test_rank_both_methods(capsys, bifil_file):
    code, out, _ = run(capsys, ["rank", bifil_file, "--method", "both", "--format", "json"])
    assert code == 0
    res = json.loads(out)
    assert res["ranks"]["zigzag"] == res["ranks"]["direct"]


def test_rank_rectangle_is_classical_rank(capsys, nested_file):
    code, out, _ = run(capsys, ["rank", nested_file, "--interval", "rect: 2 1 2 2"])
    assert code == 0 and out.strip().endswith("= 2")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["rank", "{f}", "--interval", "cols: 0:"], 2),
        (["rank", "{f}", "--interval", "rect: 0 0 9 9"], 3),
        (["rank", "/nonexistent/file"], 2),
        (["dgm", "{f}"], 3),
        (["dgm", "{f}", "--interval", "rect: 1 1 1 1", "--guard", "1"], 4),
        (["ensemble", "{f}", "--max-dim", "2"], 4),
    ],
)
def test_exit_codes(capsys, nested_file, argv, code):
    argv = [a.replace("{f}", nested_file) for a in argv]
    assert run(capsys, argv)[0] == code


def test_decompose_and_check(capsys, nested_file, tmp_path):
    code, out, err = run(capsys, ["decompose", nested_file, "--trace"])
    assert code == 0 and len(out.strip().splitlines()) == 3
    assert err.startswith("try q=")
    code, out, _ = run(capsys, ["check", nested_file, "--format", "json"])
    assert code == 0 and json.loads(out)["decomposable"] is True
    bad = tmp_path / "n.json"
    save_module(example_non_decomposable_module(), bad)
    code, out, _ = run(capsys, ["check", str(bad)])
    assert code == 1 and "failing interval" in out


def test_dgm_all_prints_identity_check(capsys, nested_file):
    code, out, _ = run(capsys, ["dgm", nested_file, "--all"])
    assert code == 0 and "pass" in out.splitlines()[-1]
    assert len(out.splitlines()) == 4


def test_dims_match_direct(capsys, bifil_file):
    code, out, _ = run(capsys, ["dims", bifil_file, "--format", "json"])
    F = load_input(bifil_file)
    dims = json.loads(out)["dims"]
    assert {k: v for k, v in dims.items()} == {f"{p.x},{p.y}": F.homology_basis(p, 0).dim for p in F.domain}


def test_zigzag_and_isinterval(capsys, nested_file):
    code, out, _ = run(capsys, ["zigzag", nested_file, "--format", "json"])
    assert code == 0 and "bars" in json.loads(out)
    code, out, _ = run(capsys, ["isinterval", nested_file])
    assert code == 0 and out.strip() == "0"


def test_ensemble_command(capsys, nested_file):
    code, out, _ = run(capsys, ["ensemble", nested_file, "--interval", "rect: 2 1 2 2"])
    assert code == 0
    assert out.splitlines()[0].startswith("member 0")
    assert out.strip().endswith("= 2")


def test_gen_is_deterministic_and_sidecar_roundtrips(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["gen", "--kind", "interval-sum", "--seed", "9", "--grid", "4x4", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    side = json.loads((tmp_path / "a.json.barcode.json").read_text())
    code, out, _ = run(capsys, ["decompose", str(a), "--format", "json"])
    got = sorted((json.dumps(e["interval"], sort_keys=True), e["mult"]) for e in json.loads(out)["entries"])
    want = sorted((json.dumps(e["interval"], sort_keys=True), e["mult"]) for e in side["barcode"])
    assert got == want


def test_gen_other_kinds(capsys):
    code, out, _ = run(capsys, ["gen", "--kind", "indecomposable-candidate", "--seed", "1", "--grid", "2x2"])
    assert code == 0 and loads_module(out).domain.to_spec() == "cols: 0:0-1; 1:0-1"
    code, _, _ = run(capsys, ["gen", "--kind", "interval-sum", "--grid", "0x3"])
    assert code == 2
