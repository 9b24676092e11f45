import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tourncycles import core, gen
from tourncycles.core import Tournament, TournamentMatrix


def test_cyclic_triangle_is_valid(triangle):
    assert core.validate(triangle) == []


def test_double_arc_reported():
    adj = np.array([[0, 1], [1, 0]], dtype=np.uint8)
    assert core.validate(Tournament(adj)) == [(0, 1)]


def test_loop_reported():
    adj = np.array([[1, 1], [0, 0]], dtype=np.uint8)
    assert (0, 0) in core.validate(Tournament(adj))


def test_checked_raises_with_violations():
    with pytest.raises(core.TournamentError) as exc:
        Tournament(np.zeros((2, 2), dtype=np.uint8)).checked()
    assert exc.value.violations == [(0, 1)]


def test_to_matrix_examples(triangle):
    assert np.array_equal(core.to_matrix(triangle).entries,
                          [[.5, 1, 0], [0, .5, 1], [1, 0, .5]])
    assert np.array_equal(core.to_matrix(gen.gen_transitive(2)).entries, [[.5, 1], [0, .5]])
    assert np.array_equal(core.to_matrix(gen.gen_transitive(1)).entries, [[.5]])


def test_matrix_rejects_bad_entries():
    with pytest.raises(ValueError):
        TournamentMatrix(np.array([[.5, .7], [.2, .5]]))
    with pytest.raises(ValueError):
        TournamentMatrix(np.array([[.5, 1.5], [-.5, .5]]))


def test_read_trn_triangle(triangle):
    assert core.read_trn("TRN 1 3\n010\n001\n100\n") == triangle


def test_read_trn_unoriented_pair():
    with pytest.raises(core.TRNFormatError) as exc:
        core.read_trn("TRN 1 2\n00\n00\n")
    assert "(1,2)" in str(exc.value)


def test_read_trn_single_arc_is_transitive():
    assert core.read_trn("TRN 1 2\n01\n00\n") == gen.gen_transitive(2)


@pytest.mark.parametrize("text, line", [
    ("TRN 2 3\n010\n001\n100\n", 1),
    ("TRN 1 3\n01\n001\n100\n", 2),
    ("TRN 1 3\n010\n0x1\n100\n", 3),
    ("TRN 1 3\n010\n001\n", 4),
])
def test_read_trn_errors_carry_position(text, line):
    with pytest.raises(core.TRNFormatError) as exc:
        core.read_trn(text)
    assert exc.value.line == line


def test_bad_char_column():
    with pytest.raises(core.TRNFormatError) as exc:
        core.read_trn("TRN 1 3\n010\n0x1\n100\n")
    assert exc.value.column == 2


def test_generated_roundtrip_bytes(tmp_path):
    t = gen.gen_uniform(37, seed=5)
    p = tmp_path / "t.trn"
    core.save_trn(t, p)
    assert core.write_trn(core.load_trn(p)) == p.read_bytes() == core.write_trn(t)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 64), seed=st.integers(0, 2**32))
def test_roundtrip_random(n, seed):
    t = gen.gen_uniform(n, seed)
    assert core.read_trn(core.write_trn(t)) == t


def test_from_upper_bits_and_arcs(triangle):
    # pairs (0,1), (0,2), (1,2): 0->1 yes, 0->2 no, 1->2 yes
    assert core.from_upper_bits(3, [1, 0, 1]) == triangle
    assert core.from_arcs(3, [(0, 1), (1, 2), (2, 0)]) == triangle


def test_reversal_is_involution():
    t = gen.gen_uniform(9, 3)
    assert t.reversed() != t
    assert t.reversed().reversed() == t
