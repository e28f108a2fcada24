import pytest

from hermcert.groupfile import SpecError, load_group_file, parse_group_spec, parse_group_text, word_to_indices
from hermcert.groups import FiniteCayley, FreeGroup, FreeProductCyclic, RewritingSystem

S3 = """\
kind: cayley   # symmetric group
table:
  0 1 2 3 4 5
  1 0 4 5 2 3
  2 5 0 4 3 1
  3 4 5 0 1 2
  4 3 1 2 5 0
  5 2 3 1 0 4
generators: 1, 2
"""

Z2 = """\
kind: rws
generators: 2
rule: ba -> ab
rule: ba' -> a'b
rule: b'a -> ab'
rule: b'a' -> a'b'
"""


def test_inline_specs():
    assert isinstance(parse_group_spec("free:2"), FreeGroup)
    assert parse_group_spec("fpc:2,3").backend_id == "fpc:2,3"
    for bad in ("free", "free:x", "fpc:", "blah:3", "fpc:-1"):
        with pytest.raises(SpecError):
            parse_group_spec(bad)


def test_files(tmp_path):
    path = tmp_path / "s3.grp"
    path.write_text(S3)
    G = parse_group_spec(f"cayley:{path}")
    assert isinstance(G, FiniteCayley) and G.order == 6 and G.generators == (1, 2)
    path2 = tmp_path / "z2.grp"
    path2.write_text(Z2)
    R = parse_group_spec(f"rws:{path2}")
    assert isinstance(R, RewritingSystem)
    assert R.format(R.parse_word("bab'a'")) == "1"
    assert isinstance(parse_group_spec(f"file:{path2}"), RewritingSystem)
    with pytest.raises(SpecError, match="expected kind"):
        parse_group_spec(f"cayley:{path2}")
    with pytest.raises(SpecError, match="cannot read"):
        load_group_file(tmp_path / "missing.grp")
    assert isinstance(parse_group_text("kind: fpc\norders: 2, 3\n"), FreeProductCyclic)
    assert isinstance(parse_group_text("kind: free\nrank: 3\n"), FreeGroup)


@pytest.mark.parametrize("text,field,line", [
    ("rank: 2\n", "kind", 0),
    ("kind: free\n", "rank", 0),
    ("kind: cayley\ntable:\n 0 1\n 1 x\n", "table", 4),
    ("kind: rws\ngenerators: 1\nrule: aa\n", "rule", 3),
    ("kind: rws\ngenerators: 1\nrule: a! -> 1\n", "rule", 3),
    ("kind: free\nrank: 2\ncolour: red\n", "colour", 3),
    ("kind: free\nkind: fpc\n", "kind", 2),
    ("kind: cayley\ntable:\n 0 1\n 1 1\n", "cayley", 1),
])
def test_errors_name_field_and_line(text, field, line):
    with pytest.raises(SpecError) as info:
        parse_group_text(text, "g.grp")
    assert info.value.field == field and info.value.line == line
    assert "g.grp" in str(info.value)


def test_words():
    assert word_to_indices("ab'") == [1, -2]
    assert word_to_indices("1") == []
    with pytest.raises(ValueError):
        word_to_indices("aB")
