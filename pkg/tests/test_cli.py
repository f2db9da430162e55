import json
import os
import subprocess
import sys

from hmlchar.cli import QueryResult, main

HERE = os.path.dirname(__file__)
DATA = os.path.join(HERE, "data")
GOLDEN = os.path.join(HERE, "golden.json")

CASES = {
    "char_example": ["char", "--fragment", "S", "--alphabet", "a,b", "<a>tt"],
    "metrics_example": ["metrics", "<a>(<a>tt & <b>tt) & <b>(<a>tt & <b>tt)"],
    "preorder_ts": ["preorder", "--kind", "TS", os.path.join(DATA, "p.proc"), "b.0"],
    "mc": ["mc", "a.b.0", "<a><b>tt"],
    "sat_cs": ["sat", "--alphabet", "a,b", "0 & <a>tt"],
    "valid": ["valid", "<a>tt | [a]ff"],
    "prime_rs": ["prime", "--fragment", "RS", "--alphabet", "a,b", "<a>0"],
    "char_rs": ["char", "--alphabet", "a,b", "<a>0 & [b]ff"],
    "synth_rs": ["synth", "--kind", "RS", "--alphabet", "a,b", "a.0"],
    "synth_ts_explicit": ["synth", "--kind", "TS", "--form", "explicit", "--alphabet", "a,b", "a.0"],
    "kernel_cs": ["kernel", "--kind", "CS", "--alphabet", "a,b", "0"],
    "dnf": ["dnf", "<a>(<a>tt | <b>tt)"],
    "metrics_file": ["metrics", os.path.join(DATA, "phi.es")],
    "gen": ["gen", "--fragment", "RS", "--count", "3", "--seed", "5"],
}
EXIT = {"preorder_ts": 1, "sat_cs": 1, "prime_rs": 1}


def run(argv, capsys):
    code = main(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def _normal(res):
    res = dict(res)
    res.pop("seconds")
    res["inputs"] = [os.path.basename(x) if os.path.sep in x else x for x in res["inputs"]]
    return res


def test_golden(capsys):
    with open(GOLDEN) as fh:
        golden = json.load(fh)
    for name, argv in CASES.items():
        code, res = run(argv, capsys)
        assert code == EXIT.get(name, 0), name
        assert _normal(res) == golden[name], name


def test_documented_examples(capsys):
    code, res = run(CASES["char_example"], capsys)
    assert code == 0 and res["witness"] == "a.0"
    code, res = run(CASES["metrics_example"], capsys)
    assert res["verdict"]["explicit_size"] == 13
    assert (res["verdict"]["decl_size"], res["verdict"]["eq_length"]) == (2, 5)
    code, _ = run(["preorder", "--kind", "TS", "a.0", "b.0"], capsys)
    assert code == 1


def test_exit_codes(capsys):
    assert main(["sat", "0 & <a>tt"]) == 2  # 0 without an alphabet
    assert main(["sat", "<a>tt &"]) == 2
    assert main(["prime", "--fragment", "S", "[a]ff"]) == 2
    assert main(["nosuch"]) == 2
    assert main(["dnf", "--size-cap", "2", "(<a>tt | <b>tt) & (<a>tt | <b>tt)"]) == 3
    p = "a.(a.(a.0 + b.0) + b.(a.0 + b.0)) + b.(a.(a.0 + b.0) + b.(a.0 + b.0))"
    assert main(["synth", "--kind", "3S", "--form", "explicit", "--size-cap", "20", p]) == 3
    capsys.readouterr()


def test_query_result_roundtrip(capsys):
    _, res = run(CASES["char_rs"], capsys)
    q = QueryResult.from_json(json.dumps(res))
    assert json.loads(q.to_json()) == res


def test_dot_output(tmp_path, capsys):
    path = tmp_path / "g.dot"
    assert main(["prime", "--dot", str(path), "<a>tt | <a><b>tt"]) == 0
    assert path.read_text().startswith("digraph")
    capsys.readouterr()


def test_deterministic(capsys):
    a = run(["gen", "--fragment", "CS", "--alphabet", "a,b", "--seed", "3"], capsys)
    b = run(["gen", "--fragment", "CS", "--alphabet", "a,b", "--seed", "3"], capsys)
    assert a[0] == b[0] and _normal(a[1]) == _normal(b[1])


def test_oracle_batch(capsys):
    code, res = run(["oracle", "--fragment", "RS", "--count", "40", "--jobs", "2"], capsys)
    assert code == 0 and res["extra"]["disagreements"] == []


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "hmlchar", "char", "--alphabet", "a,b", "<a>tt"],
                         capture_output=True, text=True)
    assert out.returncode == 0 and "witness a.0" in out.stdout


def regenerate():
    golden = {}
    for name, argv in CASES.items():
        import io
        from contextlib import redirect_stdout
        buf = io.StringIO()
        with redirect_stdout(buf):
            main(argv + ["--json"])
        golden[name] = _normal(json.loads(buf.getvalue()))
    with open(GOLDEN, "w") as fh:
        json.dump(golden, fh, indent=1, sort_keys=True)
        fh.write("\n")


if __name__ == "__main__":
    regenerate()
