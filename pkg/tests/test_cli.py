import io
import json
import subprocess
import sys

import pytest

from rm3.cli import main
from rm3.ideals import default_table_path


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue().splitlines()


def _lines(n):
    with open(default_table_path(), encoding="utf-8") as fh:
        return [next(fh) for _ in range(n)]


def test_table_small():
    code, lines = run("table", "--max-disc", "81")
    assert code == 0
    assert lines[0].startswith("D\th\t")
    assert [ln.split("\t")[3:] for ln in lines[1:]] == [["1", "2", "ok"], ["1", "6", "ok"]]


def test_table_empty():
    code, lines = run("table", "--max-disc", "48")
    assert code == 0 and len(lines) == 1


def test_missing_data_file(tmp_path):
    code, _ = run("table", "--data", str(tmp_path / "nope.jsonl"))
    assert code == 1


def test_corrupted_record_gives_partial(tmp_path):
    good = _lines(1)[0]
    bad = good.replace('"disc":49', '"disc":81')
    p = tmp_path / "t.jsonl"
    p.write_text(good + bad, encoding="utf-8")
    code, lines = run("search-hyp4", "--data", str(p), "--max-disc", "100")
    assert code == 2
    assert any("rejected" in ln for ln in lines)
    assert lines[-1] == "HITS\t1"


def test_search_hyp4_counts():
    code, lines = run("search-hyp4", "--max-disc", "48")
    assert code == 0 and lines == ["HITS\t0"]
    code, lines = run("search-hyp4", "--max-disc", "100")
    assert code == 0 and lines[-1] == "HITS\t1"
    assert sum(1 for ln in lines if "\tHIT\t" in ln) == 1


@pytest.mark.parametrize("name", ["veech7", "t234"])
def test_verify_examples(name):
    code, lines = run("verify-example", name)
    assert code == 0, lines
    assert lines and all(ln.startswith("ok") for ln in lines)


def test_unknown_example():
    with pytest.raises(SystemExit) as exc:
        run("verify-example", "nonesuch")
    assert exc.value.code == 64


def test_check_basis():
    code, lines = run("check-basis", "--disc", "49", "--", "1,0,0", "-2,1,1", "-2,0,1")
    assert code == 0 and lines == ["1,0,0;-2,1,1;-2,0,1\tadmissible"]
    # 1, theta, theta^2 with theta = x/2 a root of the index form of the disc-961 field
    code, lines = run("check-basis", "--disc", "961", "1,0,0", "0,1/2,0", "0,0,1/4")
    assert code == 0 and lines[0].endswith("\tnot-admissible")
    code, lines = run("check-basis", "--disc", "49", "1,0,0", "0,1,0", "0,2,0")
    assert code == 0 and lines[0].endswith("\tnot-a-basis")


@pytest.mark.parametrize("argv", [
    ["check-basis", "--disc", "49", "1,0", "0,1,0", "0,0,1"],
    ["check-basis", "--disc", "49", "1,0,0", "0,1,0"],
    ["check-basis", "--disc", "49", "a,0,0", "0,1,0", "0,0,1"],
    ["seed", "--disc", "50"],
    ["seed", "--disc", "x"],
    ["table", "--jobs", "0"],
    ["enumerate", "--disc", "49", "--class", "3"],
])
def test_usage_errors(argv):
    code, _ = run(*argv)
    assert code == 64


def test_bad_flag_exits_64():
    with pytest.raises(SystemExit) as exc:
        run("table", "--bogus")
    assert exc.value.code == 64


def test_enumerate_jsonl_roundtrip():
    code, lines = run("enumerate", "--disc", "49", "--format", "jsonl", "--embedding", "0")
    assert code == 0
    objs = [json.loads(ln) for ln in lines]
    strata = [o for o in objs if "key" in o]
    summary = [o for o in objs if "six" in o]
    assert summary == [{"field": "D=49#0", "class": 0, "six": 1, "total": 2, "strata": len(strata)}]
    for o in strata:
        assert o["cone"] in ("S", "A") and len(o["embedding"]) == len(o["edges"])
        assert json.loads(json.dumps(o)) == o


def test_seed_output():
    code, lines = run("seed", "--disc", "961", "--format", "jsonl")
    assert code == 0
    obj = json.loads(lines[0])
    assert obj["field"] == "D=961#0" and len(obj["triple"]) == 3
    assert all(c > 0 for c in obj["c"]) or all(c < 0 for c in obj["c"])


def test_fields_verify():
    code, lines = run("fields", "verify", "--max-disc", "200")
    assert code == 0
    assert lines == ["D=49#0\tok", "D=81#0\tok", "D=148#0\tok", "D=169#0\tok"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rm3.cli", "search-hyp4", "--max-disc", "48"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "HITS\t0"
