from pathlib import Path
from gs.cli import main
from gs.parser import parse_file

FIXTURES = Path(__file__).parent.parent / "fixtures"


def fixture(name):
    return str(FIXTURES / name)


def test_example_subcommand(capsys):
    assert main(["example-paper"]) == 0
    out = capsys.readouterr().out.splitlines()
    verdicts = [line for line in out if line.startswith("example\t")]
    assert len(verdicts) == 10
    assert all("\tPASS\t" in line for line in verdicts)
    assert out[-1].endswith('"status":"PASS"}')


def test_permutable_fixed_points(capsys):
    assert main(["permutable", fixture("two_fixed_points.gset")]) == 0
    assert capsys.readouterr().out == "gset_permutable\ttwo fixed points\tPASS\t-\n"


def test_permutable_fails_on_two_orbits(capsys):
    assert main(["permutable", fixture("z2_two_orbits.gset")]) == 1
    assert '"pair":[0,3]' in capsys.readouterr().out


def test_sg_permutable_example(capsys):
    assert main(["sg-permutable", fixture("example.semigroup")]) == 1
    out = capsys.readouterr().out
    assert "\tFAIL\t" in out
    assert '"pair":[2,3]' in out


def test_congruences_of_z4(capsys):
    assert main(["congruences", fixture("z4_regular.gset")]) == 0
    assert capsys.readouterr().out.splitlines() == ["{{0,1,2,3}}", "{{0,2},{1,3}}", "{{0},{1},{2},{3}}"]


def test_sg_congruences_of_example(capsys):
    assert main(["sg-congruences", fixture("example.semigroup")]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 6


def test_orbits_and_stabilizer(capsys):
    assert main(["orbits", fixture("z2_two_orbits.gset")]) == 0
    assert capsys.readouterr().out == "{{0,1},{2,3}}\n"
    assert main(["stabilizer", fixture("s3_natural.gset"), "0"]) == 0
    assert capsys.readouterr().out == "{0,1}\n"
    assert main(["stabilizer", fixture("s3_natural.gset"), "5"]) == 2


def test_segregated(capsys):
    assert main(["segregated", fixture("z2_regular.gset")]) == 0
    assert main(["segregated", fixture("z2_two_orbits.gset")]) == 1


def test_semigroup_output_file(tmp_path):
    out = tmp_path / "example.semigroup"
    assert main(["semigroup", fixture("two_fixed_points.gset"), "-o", str(out)]) == 0
    built = parse_file(str(out))
    expected = parse_file(fixture("example.semigroup"))
    assert built.name == "(two fixed points,0)"
    assert built.table == expected.table
    assert built.roles == expected.roles


def test_ideals(capsys):
    assert main(["ideals", fixture("example.semigroup")]) == 0
    assert capsys.readouterr().out.splitlines() == ["{3}", "{1,3}", "{2,3}", "{1,2,3}", "{0,1,2,3}"]
    assert main(["ideals", "--chain", fixture("example.semigroup")]) == 1
    assert '"ideals":[[1,3],[2,3]]' in capsys.readouterr().out


def test_validate(tmp_path, capsys):
    assert main(["validate", fixture("s3.group")]) == 0
    assert "\tPASS\t" in capsys.readouterr().out

    bad = tmp_path / "bad.group"
    bad.write_text("group 2\n0 1\n1 1\n")
    assert main(["validate", str(bad)]) == 1
    assert '"error":"NoInverse"' in capsys.readouterr().out


def test_usage_errors(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "missing.group")]) == 2
    assert "not found" in capsys.readouterr().err

    broken = tmp_path / "broken.gset"
    broken.write_text("gset 2 1\ngroup 1\n0\n0\n1 x\n")
    assert main(["orbits", str(broken)]) == 2
    assert "line 5" in capsys.readouterr().err

    undecodable = tmp_path / "latin1.group"
    undecodable.write_bytes(b"# caf\xe9\ngroup 1\n0\n")
    assert main(["validate", str(undecodable)]) == 2
    err = capsys.readouterr().err
    assert "line 1" in err
    assert "byte 5" in err

    assert main(["orbits", str(tmp_path)]) == 2
    assert "cannot read" in capsys.readouterr().err

    assert main(["orbits", fixture("z2.group")]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["verify", "thm2"]) == 2
    assert main(["verify", "thm1", "--max-group", "9"]) == 2


def test_verify_is_deterministic(tmp_path, capsys):
    args = ["verify", "lemma3", "thm6", "--max-group", "2", "--max-carrier", "3", "--max-orbits", "2"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    assert "claim lemma3" in first

    out = tmp_path / "report.txt"
    assert main(args + ["-o", str(out)]) == 0
    assert out.read_text() == first
