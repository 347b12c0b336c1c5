import io
import subprocess
import sys

import pytest

from finitary.cli import main


def run(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdin=io.StringIO(stdin), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["dist", "{}", "{{}}"], "1/2"),
        (["dist", "{{}}", "{{},{{}}}"], "1/4"),
        (["dist", "x={x}", "y={{y}}"], "0"),
        (["algebra-size", "3"], "65536"),
        (["algebra-size", "4"], "2^65536"),
        (["eval", "y = {{y}};"], "x0={x0}"),
        (["eval", "{{{}},{}}"], "{{},{{}}}"),
        (["bisim", "x={x}", "y={{y}}"], "true"),
        (["member", "{}", "x={x}"], "false"),
        (["solve", "x={{},y}; y={y}", "--all"], "x: x0={{},x1}; x1={x1}\ny: x0={x0}"),
        (["solve", "x={{},y}; y={y}", "--var", "y"], "x0={x0}"),
        (["minimize", "x={y}; y={z}; z={x}", "--stats"], "x0={x0}\nnodes: 3 -> 1"),
        (["trunc", "3", "x={x}"], "{{{{}}}}"),
        (["sat", "{}", "[]false"], "true"),
        (["master", "{{}}"], "[][]false & <>[]false"),
        (["nf", "<>true"], "depth 1: 1 of 2\n{{}}"),
        (["valid", "<>true"], "false"),
        (["satisfiable", "<>true"], "true"),
        (["levels", "4"], "65536"),
        (["levels", "2", "--list"], "{}\n{{}}\n{{{}}}\n{{},{{}}}"),
        (["atoms", "1"], "[]false\n[]true & <>true"),
        (["sep", "{{},{{}}}", "<>true"], "{{{}}}"),
        (["replace", "{{},{{}}}", "{v}"], "{{{}},{{{}}}}"),
        (["choice", "{{{},{{}}},{{{}}}}", "v"], "{{},{{}}}"),
        (["em-leq", "{_|_,{},{_|_,{}}}", "{{},{{}}}"], "true"),
        (["em-leq", "{{}}", "{{},_|_}"], "false"),
        (["bot-trunc", "1", "{{},{{}}}"], "{_|_}"),
        (["point", "infinity", "--k", "3"], "{{},{{}},{{{}}}}"),
        (["point", "omega", "--k", "6", "--member", "omega"], "yes-at-6"),
        (["point", "universe", "--k", "6", "--member", "universe"], "yes-at-6"),
        (["point", "omega", "--k", "2", "--member", "{}"], "no-at-2"),
        (["point", "omega", "--k", "6", "--dist", "x={x}"], "<= 1/64"),
        (["point", "omega", "--k", "6", "--dist", "{}"], "1/2"),
        (["process", "e.0 + e.(e.0)"], "{{},{{}}}"),
        (["iterate", "{{}} | map(v, {v})"], "S0 = {}\nS1 = {{}}  d=1/2\nS2 = {{},{{}}}  d=1/4\nS3 = {{},{{}},{{{}}}}  d=1/8"),
    ],
)
def test_verbs(argv, expected):
    code, out, err = run(*argv)
    assert (code, out, err) == (0, expected + "\n", "")


def test_dot():
    code, out, _ = run("dot", "x={x}", "--name", "omega")
    assert code == 0
    assert out.startswith("digraph omega {") and "n0 -> n0;" in out


def test_stdin_is_read_once_for_both_arguments():
    assert run("member", "-", "-", stdin="x0={x0}\n") == (0, "true\n", "")


def test_file_arguments(tmp_path):
    f = tmp_path / "sys.txt"
    f.write_text("x = {x};\n")
    assert run("eval", f"@{f}") == (0, "x0={x0}\n", "")


@pytest.mark.parametrize(
    "argv, code",
    [
        (["eval", "{"], 2),
        (["sat", "{}", "[] &"], 2),
        (["point", "nothing", "--k", "2"], 2),
        (["bogus-verb"], 2),
        (["trunc", "x", "{}"], 2),
        (["master", "x={x}"], 1),
        (["solve", "x = x;"], 1),
        (["solve", "x = {x};", "--var", "z"], 1),
        (["choice", "{{}}", "v"], 1),
        (["levels", "5", "--list"], 1),
        (["algebra-size", "6"], 1),
        (["iterate", "v"], 1),
        (["eval", "@/nonexistent/file"], 1),
    ],
)
def test_exit_codes(argv, code, capsys):
    got, out, err = run(*argv)
    assert got == code
    assert out == ""


def test_output_is_byte_stable():
    argv = ["solve", "a={b,{}}; b={a,c}; c={{c}}", "--all"]
    assert run(*argv) == run(*argv)


def test_suite_verb():
    code, out, _ = run("suite", "--pairs", "20", "--samples", "20")
    assert code == 0
    assert out.splitlines()[0] == "PASS empty checked=1"


def test_console_pipeline():
    exe = [sys.executable, "-m", "finitary"]
    solved = subprocess.run(exe + ["solve", "x={x};"], capture_output=True, text=True, check=True)
    member = subprocess.run(exe + ["member", "-", "-"], input=solved.stdout, capture_output=True, text=True)
    assert (member.returncode, member.stdout) == (0, "true\n")
