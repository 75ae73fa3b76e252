import json

import pytest

from cpuniq.cli import main, minimize
from cpuniq.instances import parse_instance
from cpuniq.sweeps import lattice_checks

SIERPINSKI = {"kind": "graph", "points": 2, "opens": [[0]], "edges": [[1, 0], [1, 1]]}


def write(tmp_path, doc, name="inst.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_cuntz(tmp_path, capsys):
    f = write(tmp_path, {"kind": "correspondence", "dims": [1], "mult": [[2]], "ideal": [0]})
    code, out, _ = run(capsys, "check", f, "--json")
    flags = json.loads(out)["flags"]
    assert code == 0
    assert flags["uniqueness"] and flags["simple"]


def test_check_sierpinski(tmp_path, capsys):
    code, out, _ = run(capsys, "check", write(tmp_path, SIERPINSKI), "--json")
    flags = json.loads(out)["flags"]
    assert code == 0
    assert flags["topologically_free"] and not flags["strongly_topologically_free"]


def test_check_endomorphism_index_one(tmp_path, capsys):
    doc = {"kind": "endomorphism", "points": 1, "phi": {"0": 0}, "index": {"0": 1}}
    code, out, _ = run(capsys, "check", write(tmp_path, doc), "--json")
    assert code == 0
    assert json.loads(out)["flags"]["uniqueness"] is False


def test_check_is_byte_deterministic(tmp_path, capsys):
    f = write(tmp_path, {"kind": "correspondence", "dims": [2, 1], "mult": [[1, 1], [0, 1]]})
    outs = {run(capsys, "check", f, "--json")[1] for _ in range(3)}
    assert len(outs) == 1


@pytest.mark.parametrize(
    "doc",
    [
        {"kind": "correspondence", "dims": [1], "mult": [[2]], "ideal": [1]},
        {"kind": "correspondence", "dims": [1], "mult": [["inf"]]},
        {"kind": "graph", "points": 2, "opens": [[0]], "edges": [[1, 0]], "u": [1]},
        {"kind": "quiver", "vertices": 1, "edges": [{"src": 0, "rng": 0, "weight": 0.5}]},
        {"kind": "teapot"},
    ],
)
def test_invalid_input_exits_1(tmp_path, capsys, doc):
    code, _, err = run(capsys, "check", write(tmp_path, doc))
    assert code == 1
    assert err.startswith("invalid input")


def test_unparseable_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{", encoding="utf-8")
    assert run(capsys, "check", str(p))[0] == 1
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 1


@pytest.mark.parametrize(
    "mult,ideal,count",
    [([[2]], [0], 2), ([[1]], [0], 2), ([[0]], [], 2)],
)
def test_tpairs(tmp_path, capsys, mult, ideal, count):
    doc = {"kind": "correspondence", "dims": [1], "mult": mult, "ideal": ideal}
    code, out, _ = run(capsys, "tpairs", write(tmp_path, doc))
    assert code == 0
    assert out.strip().endswith(f"count: {count}")


def test_tpairs_wrong_kind(tmp_path, capsys):
    assert run(capsys, "tpairs", write(tmp_path, SIERPINSKI))[0] == 1


def test_oracle_agrees(tmp_path, capsys):
    code, out, _ = run(capsys, "oracle", write(tmp_path, SIERPINSKI), "--max-n", "6")
    assert code == 0 and "all agree" in out
    loop = {"kind": "graph", "points": 1, "edges": [[0, 0]]}
    assert run(capsys, "oracle", write(tmp_path, loop), "--max-n", "3")[0] == 0


def test_oracle_budget(tmp_path, capsys):
    edges = [[a, b] for a in range(5) for b in range(5)] * 3
    doc = {"kind": "graph", "points": 5, "opens": [], "edges": edges}
    code, _, err = run(capsys, "oracle", write(tmp_path, doc), "--max-n", "60", "--max-steps", "100000")
    assert code == 1
    assert "lower n_max" in err


def test_selftest_trivial(tmp_path, capsys):
    code, out, _ = run(capsys, "selftest", "--size", "1", "--max-mult", "1", "--seed", "1",
                       "--random-count", "20", "--dims-count", "10", "--out", str(tmp_path))
    assert code == 0
    assert out.rstrip().endswith("PASS")
    again = run(capsys, "selftest", "--size", "1", "--max-mult", "1", "--seed", "1",
                "--random-count", "20", "--dims-count", "10", "--out", str(tmp_path))[1]
    assert again == out


def test_selftest_rejects_bad_bounds(capsys):
    assert run(capsys, "selftest", "--size", "0")[0] == 1


def test_minimize_keeps_the_failure():
    doc = {"kind": "graph", "points": 3, "opens": [[2]], "edges": [[0, 1], [1, 2], [2, 2]], "u": [0, 1, 2]}
    inst = parse_instance(doc)
    assert not lattice_checks(inst.obj, inst.u)["s_injective_tf_implies_weak"]
    small = minimize("s_injective_tf_implies_weak", doc)
    assert len(small["edges"]) <= 2
    inst = parse_instance(small)
    assert not lattice_checks(inst.obj, inst.u)["s_injective_tf_implies_weak"]
