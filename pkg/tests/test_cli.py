import pytest

from boolmin import formats
from boolmin.cli import main
from boolmin.model import equivalent
from boolmin.std import theorem9_language


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "base.lang").write_text(formats.serialize_language(theorem9_language(3)))
    (tmp_path / "f.cnf").write_text(
        "language base.lang\nvars x y z\nclause or2 x y\nclause or3 x y z\n"
    )
    (tmp_path / "basis.fns").write_text(
        "function or2 arity 2 table 0111\nfunction or3 arity 3 table 01111111\n"
    )
    (tmp_path / "phi.bf").write_text("(or2 x (or2 x y))\n")
    return tmp_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_classify_language(workdir, capsys):
    code, out = run(capsys, "classify", "--language", "base.lang")
    assert code == 0
    assert "verdict=P-ihsb+" in out


def test_classify_basis(workdir, capsys):
    code, out = run(capsys, "classify", "--basis", "basis.fns")
    assert code == 0
    assert "verdict=P-or" in out


def test_minimize_roundtrip(workdir, capsys):
    code, out = run(capsys, "minimize", "--formula", "f.cnf", "--stats")
    assert code == 0
    assert "# output_clauses=1" in out
    body = "\n".join(line for line in out.splitlines() if not line.startswith("#"))
    minimized = formats.parse_cnf_formula(body, str(workdir))
    original = formats.load_cnf_formula(str(workdir / "f.cnf"))
    assert equivalent(minimized, original)
    assert len(minimized.clauses) == 1


def test_minimize_refuses_horn(workdir, capsys):
    (workdir / "horn.lang").write_text(
        "relation horn2 arity 3\n000 001 010 011 100 101 111\n"
    )
    (workdir / "h.cnf").write_text("language horn.lang\nvars x y z\nclause horn2 x y z\n")
    code = main(["minimize", "--formula", "h.cnf"])
    assert code == 4


def test_minimize_refuses_reducible(workdir, capsys):
    (workdir / "red.lang").write_text("relation top arity 1\n0 1\n")
    (workdir / "r.cnf").write_text("language red.lang\nvars x\nclause top x\n")
    code = main(["minimize", "--formula", "r.cnf"])
    assert code == 4


def test_minimize_post(workdir, capsys):
    code, out = run(
        capsys, "minimize-post", "--basis", "basis.fns", "--formula", "phi.bf",
        "--measure", "literals", "--stats",
    )
    assert code == 0
    assert "# min_size=2" in out
    assert "(or2 x y)" in out


def test_irreducible_exit_codes(workdir, capsys):
    (workdir / "or3.rel").write_text("relation or3 arity 3\n001 010 011 100 101 110 111\n")
    assert main(["irreducible", "--relation", "or3.rel"]) == 0
    (workdir / "full.rel").write_text("relation full arity 2\n00 01 10 11\n")
    assert main(["irreducible", "--relation", "full.rel"]) == 1


def test_equiv_exit_codes(workdir, capsys):
    (workdir / "g.cnf").write_text(
        "language base.lang\nvars x y z\nclause or3 x x y\nclause or2 y x\n"
    )
    assert main(["equiv", "--a", "f.cnf", "--b", "g.cnf"]) == 0
    (workdir / "h.cnf").write_text("language base.lang\nvars x\nclause pos x\n")
    assert main(["equiv", "--a", "f.cnf", "--b", "h.cnf"]) == 1


def test_equiv_bformulas(workdir, capsys):
    (workdir / "a.bf").write_text("(or2 x y)\n")
    (workdir / "b.bf").write_text("(or2 y x)\n")
    assert main(["equiv", "--a", "a.bf", "--b", "b.bf", "--basis", "basis.fns"]) == 0


def test_oracle_subcommands(workdir, capsys):
    code, out = run(capsys, "oracle", "min-cnf", "--formula", "f.cnf", "--max-clauses", "4")
    assert code == 0 and "min_clauses=1" in out
    code, out = run(
        capsys, "oracle", "min-bf", "--basis", "basis.fns", "--formula", "phi.bf",
        "--measure", "literals", "--max-size", "6",
    )
    assert code == 0 and "min_size=2" in out
    (workdir / "imp.rel").write_text("relation imp arity 2\n00 01 11\n")
    code, out = run(
        capsys, "oracle", "expressible", "--relation", "imp.rel", "--base", "base.lang",
        "--max-clauses", "8",
    )
    assert code == 0 and "expressible=true" in out
    code, out = run(capsys, "oracle", "min-unsat", "--language", "base.lang", "--max-clauses", "3")
    assert code == 0 and "min_unsat_clauses=2" in out
    (workdir / "or.lang").write_text("relation or2 arity 2\n01 10 11\n")
    code, out = run(capsys, "oracle", "min-unsat", "--language", "or.lang", "--max-clauses", "3")
    assert code == 1 and "min_unsat=none" in out


def test_dualize_writes_language(workdir, capsys):
    code, _ = run(capsys, "dualize", "--formula", "f.cnf", "--out", "dual.cnf")
    assert code == 0
    dual = formats.load_cnf_formula(str(workdir / "dual.cnf"))
    original = formats.load_cnf_formula(str(workdir / "f.cnf"))
    assert dual == original.dual()


def test_gadget_unsat_cnf(workdir, capsys):
    (workdir / "xor.lang").write_text("relation odd2 arity 2\n01 10\n")
    (workdir / "u.cnf").write_text("language xor.lang\nvars x\nclause odd2 x x\n")
    code, out = run(capsys, "gadget", "unsat-cnf", "--formula", "u.cnf")
    assert code == 0
    assert out.startswith("mee bound=1 measure=clauses")
    (workdir / "s.cnf").write_text("language xor.lang\nvars x y\nclause odd2 x y\n")
    code, out = run(capsys, "gadget", "unsat-cnf", "--formula", "s.cnf")
    assert code == 1
    assert "fixed-negative=1" in out.splitlines()[0]


def test_gadget_unsat_post(workdir, capsys):
    (workdir / "an.fns").write_text("function andnot arity 2 table 0010\n")
    (workdir / "psi.bf").write_text("(andnot x x)\n")
    (workdir / "target.bf").write_text("(andnot y y)\n")
    code, out = run(
        capsys, "gadget", "unsat-post", "--basis", "an.fns", "--psi", "psi.bf",
        "--formula", "target.bf", "--measure", "literals",
    )
    assert code == 0 and out.startswith("mee bound=2 measure=literals")


def test_gadget_and_or(workdir, capsys):
    (workdir / "g.fns").write_text(
        "function and2 arity 2 table 0001\nfunction orT arity 3 table 00010111\n"
    )
    (workdir / "fand.bf").write_text("(and2 x y)\n")
    (workdir / "for.bf").write_text("(orT x y t)\n")
    (workdir / "h1.bf").write_text("x\n")
    (workdir / "h2.bf").write_text("(and2 x x)\n")
    code, out = run(
        capsys, "gadget", "and-or", "--basis", "g.fns", "--f-and", "fand.bf",
        "--f-or", "for.bf", "--h1", "h1.bf", "--h2", "h2.bf",
    )
    assert code == 0 and out.startswith("mee bound=")


def test_gadget_horn_dnf(workdir, capsys):
    (workdir / "d.dnf").write_text("term x ~y\nterm x z ~w\n")
    code, out = run(capsys, "gadget", "horn-dnf", "--dnf", "d.dnf")
    assert code == 0
    assert "clause horn2 x x y" in out


def test_gen_random_deterministic(workdir, capsys):
    code, out1 = run(capsys, "gen-random", "--language", "base.lang", "--vars", "4",
                     "--clauses", "3", "--seed", "9")
    code2, out2 = run(capsys, "gen-random", "--language", "base.lang", "--vars", "4",
                      "--clauses", "3", "--seed", "9")
    assert code == code2 == 0 and out1 == out2
    parsed = formats.parse_cnf_formula(out1, str(workdir))
    assert len(parsed.clauses) == 3


def test_malformed_input_exit_code(workdir, capsys):
    (workdir / "bad.cnf").write_text("language base.lang\nvars x\nclause or2 x q\n")
    assert main(["minimize", "--formula", "bad.cnf"]) == 2
    assert main(["minimize", "--formula", "missing.cnf"]) == 2
