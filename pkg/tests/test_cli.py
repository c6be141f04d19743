import io
import subprocess
import sys
from pathlib import Path

import pytest

import superlinks
from superlinks.chords import ChordDiagram, circle, enumerate_diagrams, format_diagram, four_term_combinations, interval
from superlinks.cli import main, parse_colors, UsageError
from superlinks.tangles.braids import braid_closure_pd, parse_braid
from superlinks.tangles.corpus import link
from superlinks.tangles.pd import format_pd

DATA = Path(superlinks.__file__).parent / "data"


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_colors():
    assert parse_colors("1=a, 2=3/2") == {1: "a", 2: "3/2"}
    with pytest.raises(UsageError):
        parse_colors("1a")


def test_invariant_unknot(tmp_path):
    f = _write(tmp_path, "u.pd", format_pd(link("unknot")))
    code, out = run("invariant", f, "--colors", "1=a")
    assert code == 0
    assert out.startswith("(1/2)/(a)") and out.strip().endswith("O(h^8)")


def test_invariant_cut_independence(tmp_path):
    f = _write(tmp_path, "hopf.pd", format_pd(link("hopf")))
    _, one = run("invariant", f, "--colors", "1=a,2=b", "--cut", "1")
    _, two = run("invariant", f, "--colors", "1=a,2=b", "--cut", "2")
    assert one == two and one


def test_invariant_atypical_cut(capsys):
    code, _ = run("invariant", "corpus:hopf", "--colors", "1=0,2=b", "--cut", "1")
    assert code != 0
    assert "component 1" in capsys.readouterr().err


def test_invariant_trunc_and_errors(capsys):
    code, out = run("invariant", "corpus:unknot", "--trunc", "4")
    assert code == 0 and "O(h^4)" in out
    assert run("invariant", "corpus:unknot", "--trunc", "1")[0] == 2
    assert run("invariant", "corpus:nosuch")[0] == 2
    assert run("invariant", "/nonexistent/file.pd")[0] == 2
    capsys.readouterr()


def test_vassiliev_singular_pd(tmp_path):
    f = _write(tmp_path, "s.pd", format_pd(braid_closure_pd(2, parse_braid("s1"))))
    assert run("vassiliev", f, "--order", "0")[1].strip() == "(0)"
    # d_0 * (4a^2 - 2a) with d_0 = 1/(2a)
    assert run("vassiliev", f, "--order", "1")[1].strip() == "(2*a - 1)"


def test_vassiliev_matches_weight(tmp_path):
    for d in enumerate_diagrams(interval(), 2):
        closed = ChordDiagram(circle(1), d.words)
        f = _write(tmp_path, "d.chord", format_diagram(closed))
        _, v = run("vassiliev", f, "--order", "2", "--rep", "1")
        _, w = run("weight", f, "--cut", "1")
        assert v == w


def test_vassiliev_odd_framing(capsys):
    code, _ = run("vassiliev", "corpus:unknot_curl", "--order", "1")
    assert code == 2
    assert "even framing" in capsys.readouterr().err


def test_weight_examples(tmp_path):
    (empty,) = enumerate_diagrams(interval(), 0)
    f = _write(tmp_path, "e.chord", format_diagram(empty))
    assert run("weight", f)[1].strip() == "(1)"
    combo = four_term_combinations(interval(), 3)[0]
    text = "".join(f"term {c}\n{format_diagram(d)}" for d, c in combo.items())
    f = _write(tmp_path, "r.chord", text)
    assert run("weight", f, "--colors", "1=a")[1].strip() == "(0)"
    assert run("weight", f, "--algebra", "sl2")[1].strip() == "(0)"


def test_weight_bad_file(tmp_path, capsys):
    f = _write(tmp_path, "bad.chord", "component 1 (p q r)\nchord p q\n")
    assert run("weight", f)[0] == 2
    assert "error" in capsys.readouterr().err


def test_verify_qdim_and_determinism(tmp_path):
    code, out = run("verify", "--suite", "qdim", "--algebra", "gl11")
    assert code == 0
    lines = [ln for ln in out.splitlines() if ln.startswith("CASE")]
    assert all(ln.endswith("PASS") for ln in lines)
    assert lines == sorted(lines)
    assert run("verify", "--suite", "qdim", "--algebra", "gl11")[1] == out
    summary = out.splitlines()[-1]
    assert summary.startswith("SUMMARY") and f"{len(lines)}/{len(lines)} PASS" in summary


def test_verify_out_file(tmp_path):
    target = tmp_path / "report.txt"
    code, out = run("verify", "--suite", "cut", "--corpus", "hopf,chain3", "--out", str(target))
    assert code == 0 and target.read_text().startswith("CASE")
    assert out.startswith("SUMMARY")


def test_verify_corrupted_plugin(tmp_path):
    text = (DATA / "gl11.ribbon").read_text()
    f = _write(tmp_path, "bad.ribbon", text.replace("twist : exp_h(2*a^2 - a)", "twist : exp_h(2*a^2)"))
    code, out = run("verify", "--suite", "ybe", "--ribbon", f)
    assert code == 1
    assert any(ln.endswith("FAIL") for ln in out.splitlines())


def test_verify_unknown_suite(capsys):
    assert run("verify", "--suite", "nope")[0] == 2
    capsys.readouterr()


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "superlinks", "invariant", "corpus:unknot", "--trunc", "3"],
                         capture_output=True, text=True, check=True)
    assert "O(h^3)" in res.stdout
