from pathlib import Path
import pytest
from gs.algebra import FiniteGroup
from gs.congruence import Partition
from gs.errors import FormatError, NoInverse, TokenType
from gs.groups import cyclic, group_named
from gs.gset import GSet, catalog, orbits
from gs.lexer import Lexer
from gs.parser import parse_file, parse_text
from gs.printer import Printer
from gs.report import SuiteSummary, VerdictReport
from gs.semigroup import FiniteSemigroup, build_gx0

FIXTURES = Path(__file__).parent.parent / "fixtures"


def test_lexer_tokens():
    tokens = Lexer().scan("# Z2\ngroup 2\n0 1\nroles g0 z\n", "test")
    assert [t.ttype for t in tokens] == [
        TokenType.COMMENT, TokenType.NEWLINE,
        TokenType.GROUP, TokenType.INTEGER, TokenType.NEWLINE,
        TokenType.INTEGER, TokenType.INTEGER, TokenType.NEWLINE,
        TokenType.ROLES, TokenType.TAG, TokenType.TAG, TokenType.NEWLINE,
        TokenType.EOF,
    ]
    assert tokens[0].literal == "Z2"
    assert tokens[3].literal == 2


def test_parse_group_files():
    z2 = parse_file(str(FIXTURES / "z2.group"))
    assert isinstance(z2, FiniteGroup)
    assert z2 == cyclic(2)
    assert parse_file(str(FIXTURES / "s3.group")) == group_named("S3")


def test_parse_gset_files():
    X = parse_file(str(FIXTURES / "z2_two_orbits.gset"))
    assert isinstance(X, GSet)
    assert X.name == "Z2 two orbits"
    assert X.group == cyclic(2)
    assert orbits(X).blocks == ((0, 1), (2, 3))


def test_parse_semigroup_file():
    S = parse_file(str(FIXTURES / "example.semigroup"))
    assert isinstance(S, FiniteSemigroup)
    X = parse_file(str(FIXTURES / "two_fixed_points.gset"))
    built = build_gx0(X.group, X)
    assert S.table == built.table
    assert S.zero == built.zero
    assert S.roles == built.roles


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.iterdir()))
def test_fixtures_reparse(name):
    instance = parse_file(str(FIXTURES / name))
    assert parse_text(Printer().print(instance)) == instance


def test_built_structures_reparse():
    for X in catalog(4, 4, 2):
        assert parse_text(Printer().print(X)) == X
        S = build_gx0(X.group, X)
        assert parse_text(Printer().print(S)) == S


def test_group_text():
    assert Printer().print(cyclic(2)) == "# Z2\ngroup 2\n0 1\n1 0\n"


def test_gset_text():
    text = Printer().print(parse_file(str(FIXTURES / "z2_regular.gset")))
    assert text == "# Z2 regular\ngset 2 2\n# Z2\ngroup 2\n0 1\n1 0\n0 1\n1 0\n"


def test_format_errors_carry_the_line():
    with pytest.raises(FormatError) as e:
        parse_text("group 2\n0 1\n1\n")
    assert e.value.line == 3
    assert "^" in e.value.context

    with pytest.raises(FormatError) as e:
        parse_text("# bad\ngroup 2\n0 -1\n")
    assert e.value.line == 3

    with pytest.raises(FormatError) as e:
        parse_text("0 1\n1 0\n")
    assert e.value.line == 1

    with pytest.raises(FormatError) as e:
        parse_text("gset 1 2\ngroup 1\n0\n0 0\n")
    assert e.value.line == 2

    with pytest.raises(FormatError) as e:
        parse_text("group 1\n0\n0\n")
    assert e.value.line == 3


def test_role_errors():
    with pytest.raises(FormatError) as e:
        parse_text("semigroup 2\n0 1\n1 1\nroles g0\n")
    assert e.value.line == 4
    with pytest.raises(FormatError):
        parse_text("semigroup 2\n0 1\n1 1\nroles g0 q\n")
    with pytest.raises(FormatError):
        parse_text("semigroup 2\n0 1\n1 1\nroles z g0\n")


def test_axiom_errors_pass_through():
    with pytest.raises(NoInverse):
        parse_text("group 2\n0 1\n1 1\n")


def test_partition_and_relation_text():
    p = Partition.from_blocks(3, [[0, 2]])
    assert Printer().print(p) == "{{0,2},{1}}"
    assert str(p) == "{{0,2},{1}}"


def test_verdict_lines():
    passing = VerdictReport(claim_id="thm1", instance_descriptor="Z2/{0}", verdict=True)
    failing = VerdictReport(claim_id="thm1", verdict=False, witness={"pair": [2, 3], "alpha": "{{0}}"})
    assert Printer().print(passing) == "thm1\tZ2/{0}\tPASS\t-"
    assert Printer().print(failing) == 'thm1\t-\tFAIL\t{"alpha":"{{0}}","pair":[2,3]}'


def test_summary_text():
    reports = [
        VerdictReport(claim_id="lemma3", instance_descriptor="X", verdict=True),
        VerdictReport(claim_id="thm1", instance_descriptor="X", verdict=False, witness={"pair": [0, 1]}),
    ]
    lines = Printer().print(SuiteSummary.collect(reports)).splitlines()
    assert lines[2] == "# summary"
    assert lines[3] == "claim lemma3 run=1 pass=1 fail=0"
    assert lines[4] == "claim thm1 run=1 pass=0 fail=1"
    assert lines[5].startswith('summary {"claims":')
    assert lines[5].endswith('"failed":1,"run":2,"status":"FAIL"}')


def test_verdicts_need_witnesses_exactly_when_failing():
    with pytest.raises(ValueError):
        VerdictReport(claim_id="thm1", verdict=False)
    with pytest.raises(ValueError):
        VerdictReport(claim_id="thm1", verdict=True, witness={"pair": [0, 1]})


def test_undecodable_files_are_format_errors(tmp_path):
    path = tmp_path / "latin1.gset"
    path.write_bytes(b"# two points\n# caf\xe9\ngset 2 1\n")
    with pytest.raises(FormatError) as e:
        parse_file(str(path))
    assert e.value.line == 2
    assert "byte 18" in str(e.value)
