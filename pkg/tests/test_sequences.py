import io

import pytest

from vseq import (DeadSequence, SequenceTable, first_difference, gen_f,
                  gen_qrs, gen_v, read_table, write_table)

V20 = [1, 1, 1, 1, 2, 3, 4, 5, 5, 6, 6, 7, 8, 8, 9, 9, 10, 11, 11, 11]
F20 = [4, 1, 1, 1, 2, 2, 1, 2, 2, 1, 3, 2, 1, 2, 2, 1, 3, 2, 1, 2]


def test_v_first_20():
    assert list(gen_v(20).values) == V20


def test_v_seed():
    assert list(gen_v(4).values) == [1, 1, 1, 1]


def test_v_bounds_and_label():
    t = gen_v(20)
    assert (t.lo, t.hi, t.label) == (1, 20, "V")
    assert t[1] == 1 and t[20] == 11


def test_v_requires_four_terms():
    with pytest.raises(ValueError):
        gen_v(3)


def test_v_prefix_stable():
    assert list(gen_v(60).values) == list(gen_v(300).values)[:60]


def test_v_million_regression():
    t = gen_v(10 ** 6)
    assert t[10 ** 6] == 500012
    assert list(t.values[-5:]) == [500010, 500011, 500011, 500012, 500012]


def test_v_steps_in_01():
    t = gen_v(100_000)
    vals = t.values
    assert all(vals[i + 1] - vals[i] in (0, 1) for i in range(len(vals) - 1))


def test_f_first_20():
    t = gen_f(20)
    assert (t.lo, t.hi) == (0, 20)
    assert t[0] == 0
    assert list(t.values[1:]) == F20


def test_f_tiny():
    t = gen_f(1)
    assert list(t.values) == [0, 4]


def test_f_spot_461_464():
    t = gen_f(464)
    assert [t[a] for a in range(461, 465)] == [2, 1, 3, 3]


def test_f_range():
    t = gen_f(5000)
    assert t[1] == 4
    assert all(t[a] in (1, 2, 3) for a in range(2, 5001))


def test_f_requires_positive_bound():
    with pytest.raises(ValueError):
        gen_f(0)


def test_counting_identity():
    # partial sums of F are the right edges of the value runs in V
    a_max = 2000
    f = gen_f(a_max)
    v = gen_v(2 * a_max + 100)
    s = 0
    for a in range(1, a_max + 1):
        s += f[a]
        assert v[s] == a
        assert v[s + 1] == a + 1


def test_qrs_14_equals_v():
    assert list(gen_qrs(1, 4, 2000).values) == list(gen_v(2000).values)


def test_qrs_12_regression():
    t = gen_qrs(1, 2, 12)
    assert list(t.values) == [1, 1, 2, 3, 3, 4, 5, 5, 6, 6, 6, 8]
    assert t.label == "Q[1,2]"


def test_qrs_25_dies_at_38():
    with pytest.raises(DeadSequence) as excinfo:
        gen_qrs(2, 5, 10 ** 4)
    e = excinfo.value
    assert e.n == 38
    assert e.label == "Q[2,5]"
    assert len(e.partial) == 37
    assert e.argument < 1


def test_qrs_preconditions():
    with pytest.raises(ValueError):
        gen_qrs(4, 1, 100)
    with pytest.raises(ValueError):
        gen_qrs(0, 4, 100)
    with pytest.raises(ValueError):
        gen_qrs(1, 4, 3)


def test_first_difference_of_v():
    d = first_difference(gen_v(20))
    assert list(d.values) == [0, 0, 0, 1, 1, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0, 0]
    assert (d.lo, d.hi) == (1, 19)
    assert set(d.values) <= {0, 1}


def test_first_difference_of_f_prefix():
    t = SequenceTable(1, 6, F20[:6], "F")
    assert list(first_difference(t).values) == [-3, 0, 0, 1, 0]


def test_first_difference_constant():
    t = SequenceTable(0, 9, [7] * 10, "c")
    assert list(first_difference(t).values) == [0] * 9


def test_first_difference_needs_two():
    with pytest.raises(ValueError):
        first_difference(SequenceTable(5, 5, [1], "x"))


def test_table_invariants():
    with pytest.raises(ValueError):
        SequenceTable(3, 2, [], "x")
    with pytest.raises(ValueError):
        SequenceTable(0, 2, [1, 2], "x")


def test_table_access_and_padding():
    t = SequenceTable(0, 4, [0, 4, 1, 1, 1], "F")
    assert t[0] == 0 and t[4] == 1
    with pytest.raises(IndexError):
        t[5]
    with pytest.raises(IndexError):
        t[-1]
    assert t.get(-2) == 0
    assert t.window4(0) == (0, 0, 0, 4)
    assert t.window4(3) == (4, 1, 1, 1)
    with pytest.raises(IndexError):
        t.window4(4)  # needs index 5


def test_io_round_trip():
    t = gen_f(30)
    buf = io.StringIO()
    write_table(t, buf)
    text = buf.getvalue()
    assert text.startswith("seq F 0 30\n")
    back = read_table(io.StringIO("# comment\n" + text))
    assert (back.lo, back.hi, back.label) == (t.lo, t.hi, t.label)
    assert list(back.values) == list(t.values)


def test_read_table_rejects_garbage():
    with pytest.raises(ValueError):
        read_table(io.StringIO("not a header\n1\n"))
    with pytest.raises(ValueError):
        read_table(io.StringIO(""))
