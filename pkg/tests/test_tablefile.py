import pytest

from harmsum import tablefile
from harmsum.alphabet import AlphabetSpec
from harmsum.basis import build_table
from harmsum.words import paper_fixture_order


@pytest.mark.parametrize("spec,d,order", [
    (AlphabetSpec.harmonic(), 4, paper_fixture_order()),
    (AlphabetSpec.alternating(), 3, None),
    (AlphabetSpec.cyclotomic(1, 2), 2, None),
])
def test_roundtrip(tmp_path, spec, d, order):
    table = build_table(spec, d, order)
    path = tmp_path / "t.txt"
    tablefile.save(table, path)
    back = tablefile.load(path)
    assert back == table
    assert back.report.basis == table.report.basis
    assert tablefile.dumps(back) == tablefile.dumps(table)


def test_header():
    text = tablefile.dumps(build_table(AlphabetSpec.harmonic(), 2))
    assert text.splitlines()[:4] == ["harmsum-table 1", "alphabet harmonic", "max_weight 2", "order default"]
    assert "S[1,1] := 1/2*S[1]^2 + 1/2*S[2]" in text


@pytest.mark.parametrize("text", [
    "",
    "not-a-table 1\n",
    "harmsum-table 1\nmax_weight 1\n",
    "harmsum-table 1\nalphabet harmonic\nmax_weight 2\nS[1,1] := S[1\n",
    "harmsum-table 1\nalphabet harmonic\nmax_weight 2\nwhat is this\n",
    "harmsum-table 1\nalphabet harmonic\nmax_weight 1\nS[1,1] := S[2]\n",
])
def test_malformed(text):
    with pytest.raises(tablefile.TableFormatError):
        tablefile.loads(text)
