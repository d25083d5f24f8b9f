import pytest

from vseq import (OutsideDomain, RuleConflict, SequenceTable, apply_rule,
                  derive_rules, format_rules, gen_f, verify_rules)


@pytest.fixture(scope="module")
def f50k():
    return gen_f(50_000)


@pytest.fixture(scope="module")
def rules10k(f50k):
    return derive_rules(f50k, 4, 10_000)


def test_window_at_4(rules10k):
    # window (F(2), F(3), F(4), F(5)) = (1,1,1,2) maps to F(8), F(9)
    assert apply_rule(rules10k, (1, 1, 1, 2), "even") == 2
    assert apply_rule(rules10k, (1, 1, 1, 2), "odd") == 2


def test_window_at_5(rules10k):
    assert apply_rule(rules10k, (1, 1, 2, 2), "even") == 1
    assert apply_rule(rules10k, (1, 1, 2, 2), "odd") == 3


def test_unrealized_window(rules10k):
    assert (3, 3, 3, 3) not in rules10k.domain
    with pytest.raises(OutsideDomain):
        apply_rule(rules10k, (3, 3, 3, 3), "even")


def test_bad_parity(rules10k):
    with pytest.raises(ValueError):
        apply_rule(rules10k, (1, 1, 1, 2), "both")


def test_domain_size_and_first_occurrences(rules10k):
    # 24 realized windows, the last first appearing at a = 232
    assert len(rules10k) == 24
    assert rules10k.domain == set(rules10k.odd_rule)
    assert max(rules10k.first_seen.values()) == 232
    assert rules10k.first_seen[(1, 1, 1, 2)] == 4


def test_images_stay_in_range(rules10k):
    for table in (rules10k.even_rule, rules10k.odd_rule):
        assert set(table.values()) <= {1, 2, 3}
    for w in rules10k.domain:
        assert set(w) <= {1, 2, 3}


def test_reconstruction(f50k, rules10k):
    for a in range(4, 20_001):
        w = (f50k[a - 2], f50k[a - 1], f50k[a], f50k[a + 1])
        assert apply_rule(rules10k, w, "even") == f50k[2 * a]
        assert apply_rule(rules10k, w, "odd") == f50k[2 * a + 1]


def test_verify_beyond_derivation(f50k, rules10k):
    report = verify_rules(rules10k, f50k, 24_000)
    assert report.a_checked == 24_000
    assert report.new_windows == {}  # every window occurs by a = 232


def test_verify_on_derivation_range(f50k, rules10k):
    report = verify_rules(rules10k, f50k, 10_000)
    assert report.new_windows == {}


def test_verify_reports_new_windows(f50k):
    # deriving on a tiny range misses windows the longer range realizes
    small = derive_rules(f50k, 4, 6)
    report = verify_rules(small, f50k, 1000)
    assert report.new_windows
    assert all(a > 6 for a in report.new_windows.values())


def test_conflict_detected(f50k):
    # corrupt the image of a repeated window; the rescan must object
    clean = derive_rules(f50k, 4, 1000)
    first_at = {}
    repeat_a = None
    for a in range(4, 1001):
        w = (f50k[a - 2], f50k[a - 1], f50k[a], f50k[a + 1])
        if w in first_at:
            repeat_a = a
            break
        first_at[w] = a
    assert repeat_a is not None
    corrupt = bytearray(f50k.values)
    corrupt[2 * repeat_a] = f50k[2 * repeat_a] % 3 + 1
    bad = SequenceTable(0, f50k.hi, corrupt, "F")
    with pytest.raises(RuleConflict) as excinfo:
        derive_rules(bad, 4, 1000)
    assert excinfo.value.a_second == repeat_a
    with pytest.raises(RuleConflict):
        verify_rules(clean, bad, 1000)


def test_derivation_preconditions(f50k):
    with pytest.raises(ValueError):
        derive_rules(f50k, 3, 100)  # rules only hold from a = 4
    with pytest.raises(ValueError):
        derive_rules(f50k, 4, f50k.hi)  # needs F(2a+1)
    with pytest.raises(ValueError):
        verify_rules(derive_rules(f50k, 4, 10), f50k, f50k.hi)


def test_format(rules10k):
    text = format_rules(rules10k)
    lines = text.splitlines()
    assert len(lines) == 2 * len(rules10k)
    assert lines[0] == "g 1112 -> 2"
    assert "h 1122 -> 3" in lines
    g_lines = [l for l in lines if l.startswith("g ")]
    assert g_lines == sorted(g_lines)


def test_determinism(f50k):
    a = derive_rules(f50k, 4, 5000)
    b = derive_rules(f50k, 4, 5000)
    assert a.even_rule == b.even_rule
    assert a.odd_rule == b.odd_rule
    assert a.first_seen == b.first_seen
