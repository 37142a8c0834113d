import subprocess
import sys

from mutants import reversed_cycle_edge
from thurstonquad import fixtures
from thurstonquad.cli import FAIL, OK, USAGE, main
from thurstonquad.quadfile import parse_quad, write_quad


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_fixture(capsys):
    code, out, _ = run(capsys, "validate", "fixture:g2")
    assert code == OK
    assert "admissible: yes" in out and "dynamic: yes" in out


def test_validate_exp_dynamic_flag(capsys):
    assert run(capsys, "validate", "fixture:exp")[0] == OK
    code, out, _ = run(capsys, "validate", "--dynamic", "fixture:exp")
    assert code == FAIL
    assert "dynamic: no" in out


def test_validate_broken_file(capsys, tmp_path):
    path = tmp_path / "bad.quad"
    write_quad(reversed_cycle_edge(3), path)
    code, out, _ = run(capsys, "validate", str(path))
    assert code == FAIL
    assert "admissible: no" in out and "violation:" in out


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.quad"))
    assert code == FAIL
    assert err


def test_usage_errors(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == USAGE and "invalid choice" in err
    assert run(capsys, "approx", "fixture:exp")[0] == USAGE


def test_faces_and_portrait(capsys):
    code, out, _ = run(capsys, "faces", "fixture:cycle3")
    assert code == OK and out.splitlines()[0].startswith("face\tlabel")
    code, out, _ = run(capsys, "portrait", "fixture:g1")
    assert code == OK and len(out.splitlines()) == 3


def test_degree(capsys):
    code, out, _ = run(capsys, "degree", "fixture:cycle5")
    assert "degree: 5" in out
    code, out, _ = run(capsys, "degree", "fixture:exp")
    assert "class: exponential" in out.lower()


def test_approx_writes_file(capsys, tmp_path):
    out_path = tmp_path / "exp3.quad"
    code, out, _ = run(capsys, "approx", "fixture:exp", "--n", "3", "--out", str(out_path))
    assert code == OK
    assert "vertices: 7" in out
    q = parse_quad(out_path)
    assert len(q.graph.vertices) == 7
    code, out, _ = run(capsys, "degree", str(out_path))
    assert "degree: 7" in out


def test_embed(capsys, tmp_path):
    code, out, _ = run(capsys, "embed", "fixture:exp", "fixture:cycle7", "--n", "1")
    assert code == OK and "embedding: found" in out
    code, out, _ = run(capsys, "embed", "fixture:exp", "fixture:cycle3", "--n", "4")
    assert code == FAIL and "witness:" in out


def test_converge(capsys, tmp_path):
    code, out, _ = run(capsys, "converge", "fixture:exp", "--radius", "8", "--n-max", "10")
    assert code == OK and "N: 4" in out
    paths = []
    for k in range(1, 4):
        p = tmp_path / f"c{k}.quad"
        write_quad(fixtures.load("cycle2"), p)
        paths.append(str(p))
    code, out, _ = run(capsys, "converge", "fixture:exp", *paths, "--radius", "4")
    assert code == FAIL and "witness: x1 x1" in out


def test_member_lift_class(capsys):
    assert "member: yes" in run(capsys, "member", "fixture:cycle3", "--word", "x1 x1 x1")[1]
    assert "member: no" in run(capsys, "member", "fixture:exp", "--word", "x1 x1")[1]
    code, out, _ = run(capsys, "lift", "fixture:exp", "--word", "x1")
    assert "terminal: ('up', 1, 'v')" in out and "closed: no" in out
    code, out, _ = run(capsys, "class", "fixture:cycle2", "--word", "x1 x1")
    assert "class: y1" in out
    code, _, err = run(capsys, "class", "fixture:exp", "--word", "x1")
    assert code == FAIL and err


def test_generator_roots(capsys):
    code, out, _ = run(capsys, "lift", "fixture:exp", "--word", "x1^-1", "--root", "up:2:v")
    assert "terminal: ('up', 1, 'v')" in out
    assert run(capsys, "lift", "fixture:exp", "--word", "x1", "--root", "nowhere")[0] == FAIL


def test_isotopic(capsys):
    assert run(capsys, "isotopic", "fixture:cycle3", "fixture:cycle3")[0] == OK
    code, out, _ = run(capsys, "isotopic", "fixture:cycle2", "fixture:cycle3")
    assert code == FAIL and "isotopic: no" in out


def test_numlift(capsys):
    code, out, _ = run(capsys, "numlift", "--map", "exp(z)", "--z0", "0", "--closure", "--max-k", "10")
    assert code == OK
    assert "closed: no" in out and "closure_degree: exceeds(10)" in out
    code, out, _ = run(capsys, "numlift", "--map", "(1+z/8)**8", "--z0", "0", "--closure")
    assert "closure_degree: 8" in out


def test_reconstruct(capsys, tmp_path):
    out_path = tmp_path / "cubic.quad"
    code, out, _ = run(capsys, "reconstruct", "--map", "z**3-3*z", "--marked=-2,0;2,0", "--center", "0",
                       "--out", str(out_path))
    assert code == OK
    assert "degree: 3" in out and "admissible: yes" in out
    assert run(capsys, "validate", "--dynamic", str(out_path))[0] == OK


def test_verify_num(capsys):
    code, out, _ = run(capsys, "verify-num", "--family", "(1+z/{n})**{n}", "--ns", "16,32,64",
                       "--target", "exp(z)")
    assert code == OK and "verdict: PASS" in out
    code, out, _ = run(capsys, "verify-num", "--family", "(1+z/{n})**{n}", "--ns", "16,32",
                       "--target", "cos(z)+sin(z)", "--radius", "2")
    assert code == FAIL and "witness: x1" in out


def test_teich_bound(capsys):
    code, out, _ = run(capsys, "teich-bound", "1", "2")
    assert code == OK and out.startswith("bound: 1.0986")
    assert run(capsys, "teich-bound", "2", "1")[0] == FAIL


def test_render(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "fixture:cycle3")
    assert code == OK and out.startswith("<svg")
    p = tmp_path / "g.dot"
    run(capsys, "render", "fixture:g2", "--format", "dot", "--n", "1", "--out", str(p))
    assert p.read_text().startswith("digraph")


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "thurstonquad.cli", "teich-bound", "1", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "bound:" in res.stdout
