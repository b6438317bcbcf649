import json

import pytest

from convexlab import io
from convexlab.cli import main
from convexlab.generators import gen_binary_words, gen_shatter_family
from convexlab.harness import blocks_family
from convexlab.setcore import SetSystem


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line)


@pytest.fixture
def words3(tmp_path):
    system, pts = gen_binary_words(3)
    path = tmp_path / "bw3.txt"
    io.save(system, path)
    return path


def test_analyze_binary_words(capsys, words3):
    code, out, _ = run(capsys, "analyze", "--input", str(words3),
                       "--params", "radon,helly,graded:radon,graded:helly,colorful-helly")
    rep = kv(out)
    assert code == 0
    assert rep["radon"] == "4" and rep["helly"] == "2" and rep["colorful-helly"] == "4"
    assert rep["graded.radon"] == "2,3,3,3,3,4"
    assert rep["graded.helly"] == "1,2,2,2,2,2"


def test_analyze_json(capsys, words3):
    code, out, _ = run(capsys, "analyze", "--input", str(words3), "--json")
    assert code == 0 and json.loads(out)["radon"] == 4


def test_generate_to_file(capsys, tmp_path):
    out_path, pts_path = tmp_path / "g.txt", tmp_path / "p.txt"
    code, out, _ = run(capsys, "generate", "binary-words", "--k", "3",
                       "--out", str(out_path), "--points-out", str(pts_path))
    rep = kv(out)
    assert code == 0 and rep["certified"] == "true" and rep["words"] == "000,110,101"
    code, out, _ = run(capsys, "verify", "minimal-np", "--input", str(out_path), "--points", str(pts_path))
    assert code == 0 and kv(out)["verdict"] == "minimal"


def test_generate_to_stdout(capsys):
    code, out, err = run(capsys, "generate", "helly-seq", "--u", "1,2,2")
    assert code == 0 and out.startswith("convexlab-setsystem v1")
    assert kv(err)["certified"] == "true"
    assert len(io.loads(out)) == 5


def test_generate_errors(capsys):
    assert run(capsys, "generate", "helly-seq", "--u", "1,2,4")[0] == 2
    assert run(capsys, "generate", "binary-words", "--k", "6")[0] == 3
    code, _, err = run(capsys, "generate", "shatter", "--f", "1,9")
    assert code == 3 and "required grid dims" in err


def test_generate_random_deterministic(capsys):
    a = run(capsys, "generate", "random", "--kind", "abstract", "--n", "4", "--ground", "6", "--seed", "7")
    b = run(capsys, "generate", "random", "--kind", "abstract", "--n", "4", "--ground", "6", "--seed", "7")
    assert a == b


def test_verify_exit_codes_and_replay(capsys, tmp_path):
    assert run(capsys, "verify", "radon-bound", "--corpus", "exhaustive:3,3")[0] == 0
    assert run(capsys, "verify", "levi", "--corpus", "random:50:3")[0] == 0
    assert run(capsys, "verify", "helly-growth", "--corpus", "exhaustive:2,2")[0] == 0
    cx = tmp_path / "cx.txt"
    code, out, _ = run(capsys, "verify", "radon-bound", "--corpus", "exhaustive:3,3",
                       "--slack", "0", "--counterexample-out", str(cx))
    assert code == 1 and kv(out)["passed"] == "false"
    code, out, _ = run(capsys, "analyze", "--input", str(cx), "--params", "radon")
    rep = kv(out)
    # the witness subfamily has at most t members, and its Radon number exceeds t
    assert code == 0 and int(rep["radon"]) > int(rep["members"])


def test_verify_minimal_np_corpus(capsys):
    code, out, _ = run(capsys, "verify", "minimal-np", "--corpus", "binary-words:3,4")
    assert code == 0 and kv(out)["checked"] == "2"


def test_verify_not_minimal(capsys, tmp_path):
    s, pts = gen_binary_words(3)
    dup = SetSystem(s.ground_size, s.sets + (s.sets[0],))
    io.save(dup, tmp_path / "d.txt")
    (tmp_path / "p.txt").write_text(io.dump_points(pts))
    code, out, _ = run(capsys, "verify", "minimal-np", "--input", str(tmp_path / "d.txt"),
                       "--points", str(tmp_path / "p.txt"))
    assert code == 1 and kv(out)["verdict"] == "not-minimal"


def test_input_errors(capsys, tmp_path):
    assert run(capsys, "analyze", "--input", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("convexlab-setsystem v1\nground 2\nA 012\n")
    code, _, err = run(capsys, "analyze", "--input", str(bad))
    assert code == 2 and "line 3" in err
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "verify", "radon-bound")[0] == 2


def test_guard_exit(capsys, tmp_path):
    io.save(blocks_family(4, 12), tmp_path / "b.txt")
    code, _, _ = run(capsys, "analyze", "--input", str(tmp_path / "b.txt"),
                     "--params", "colorful-helly", "--guard", "4")
    assert code == 3


def test_homology_and_shatter(capsys, tmp_path):
    fam, _ = gen_shatter_family((1, 1, 2))
    io.save(fam, tmp_path / "s.txt")
    code, out, _ = run(capsys, "shatter", "--input", str(tmp_path / "s.txt"), "--h", "0", "--t-max", "3")
    assert code == 0 and kv(out)["phi"] == "0,1,1,2"
    code, out, _ = run(capsys, "homology", "--input", str(tmp_path / "s.txt"),
                       "--subfamily", "3,4,5", "--h", "1")
    assert code == 0 and kv(out)["reduced_betti"] == "2,2"
    assert run(capsys, "homology", "--input", str(tmp_path / "s.txt"), "--subfamily", "9")[0] == 2


def test_probe(capsys, tmp_path):
    io.save(blocks_family(4, 40), tmp_path / "b.txt")
    code, out, _ = run(capsys, "probe-fh", "--input", str(tmp_path / "b.txt"),
                       "--s", "3", "--k", "3", "--budget", "1000", "--seed", "1")
    assert code == 0 and kv(out)["fingerprint"] == "db42759dec9fc0dd"


def test_psi(capsys, tmp_path):
    r = tmp_path / "r.txt"
    m = tmp_path / "m.txt"
    r.write_text(io.dump_table({b: 2 ** b for b in range(1, 8)}))
    m.write_text(io.dump_table({x: x + 1 for x in range(1, 129)}))
    code, out, _ = run(capsys, "psi", "--b", "2", "--r-table", str(r), "--m-table", str(m), "--t", "3,10,21")
    assert code == 0 and kv(out)["psi"] == "1,2,3"
    code, _, err = run(capsys, "psi", "--b", "9", "--r-table", str(r), "--m-table", str(m), "--t", "1")
    assert code == 2 and "b=9" in err
