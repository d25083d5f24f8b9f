"""Empirical derivation of the doubling rules for the frequency sequence.

For every a > 3 the pair (F(2a), F(2a+1)) is a function of the 4-window
(F(a-2), F(a-1), F(a), F(a+1)).  The even map g and odd map h are derived
here by scanning an F table, never transcribed from elsewhere: determinism
of the scan (no window ever demands two images) is itself the empirical
fact the rest of the pipeline leans on.

The maps are partial by design.  Only windows actually realized by F get
images; inventing values for the other tuples over {1,2,3}^4 would poison
automaton certification.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .sequences import SequenceTable

Window = tuple[int, int, int, int]

DERIVATION_START = 4  # the doubling rules hold for a > 3


class RuleConflict(Exception):
    """One window demanded two images: either the oracle is broken or the
    doubling property itself is false on this range."""

    def __init__(self, window: Window, parity: str, a_first: int, v_first: int,
                 a_second: int, v_second: int):
        self.window = window
        self.parity = parity
        self.a_first = a_first
        self.v_first = v_first
        self.a_second = a_second
        self.v_second = v_second
        super().__init__(
            f"{parity} image of window {window} is {v_first} at a={a_first} "
            f"but {v_second} at a={a_second}"
        )


class OutsideDomain(Exception):
    """Window never observed; callers must treat this as 'cannot extend'."""


@dataclass(frozen=True)
class WindowRuleTable:
    even_rule: dict[Window, int]  # window -> F(2a)
    odd_rule: dict[Window, int]   # window -> F(2a+1)
    first_seen: dict[Window, int]  # window -> least a realizing it
    derivation_bound: int

    @property
    def domain(self) -> frozenset[Window]:
        return frozenset(self.even_rule)

    def __len__(self) -> int:
        return len(self.even_rule)


@dataclass(frozen=True)
class RuleVerification:
    """Outcome of re-checking frozen rules against a longer oracle.

    A conflict raises RuleConflict instead of being recorded, so an instance
    of this report always means zero violations.
    """

    a_checked: int
    new_windows: dict[Window, int]  # windows absent from the frozen table


def _buffer(f: SequenceTable) -> bytes:
    # scans key dicts by raw bytes slices, so values must fit one byte each
    if f.lo != 0:
        raise ValueError("rule scans expect an F table starting at index 0")
    return bytes(f.values)


def derive_rules(f: SequenceTable, a_min: int, a_max: int) -> WindowRuleTable:
    """Record window -> (F(2a), F(2a+1)) for every a in [a_min, a_max]."""
    if a_min <= 3:
        raise ValueError("a_min must be > 3: the doubling rules start at a = 4")
    if a_max < a_min:
        raise ValueError("a_max must be >= a_min")
    if f.hi < 2 * a_max + 1:
        raise ValueError(
            f"oracle ends at {f.hi}, need F up to {2 * a_max + 1} for a_max={a_max}"
        )
    buf = _buffer(f)
    even: dict[bytes, int] = {}
    odd: dict[bytes, int] = {}
    first: dict[bytes, int] = {}
    for a in range(a_min, a_max + 1):
        w = buf[a - 2:a + 2]
        e = buf[2 * a]
        o = buf[2 * a + 1]
        if w in even:
            if even[w] != e:
                raise RuleConflict(tuple(w), "even", first[w], even[w], a, e)
            if odd[w] != o:
                raise RuleConflict(tuple(w), "odd", first[w], odd[w], a, o)
        else:
            even[w] = e
            odd[w] = o
            first[w] = a
    return WindowRuleTable(
        even_rule={tuple(w): v for w, v in even.items()},
        odd_rule={tuple(w): v for w, v in odd.items()},
        first_seen={tuple(w): a for w, a in first.items()},
        derivation_bound=a_max,
    )


def apply_rule(rules: WindowRuleTable, window: Window,
               parity: Literal["even", "odd"]) -> int:
    """Pure lookup of the stored image; OutsideDomain if never observed."""
    if parity == "even":
        table = rules.even_rule
    elif parity == "odd":
        table = rules.odd_rule
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    window = tuple(window)
    try:
        return table[window]
    except KeyError:
        raise OutsideDomain(f"window {window} never observed") from None


def verify_rules(rules: WindowRuleTable, f: SequenceTable,
                 a_max: int, a_min: int = DERIVATION_START) -> RuleVerification:
    """Re-check every a in [a_min, a_max] against the frozen table.

    Windows not present in the frozen domain are reported, not adopted:
    the table under verification never changes.
    """
    if a_min <= 3:
        raise ValueError("a_min must be > 3")
    if f.hi < 2 * a_max + 1:
        raise ValueError(
            f"oracle ends at {f.hi}, need F up to {2 * a_max + 1} for a_max={a_max}"
        )
    buf = _buffer(f)
    even = {bytes(w): v for w, v in rules.even_rule.items()}
    odd = {bytes(w): v for w, v in rules.odd_rule.items()}
    first = {bytes(w): a for w, a in rules.first_seen.items()}
    new: dict[Window, int] = {}
    for a in range(a_min, a_max + 1):
        w = buf[a - 2:a + 2]
        e = buf[2 * a]
        o = buf[2 * a + 1]
        ge = even.get(w)
        if ge is None:
            wt = tuple(w)
            if wt not in new:
                new[wt] = a
            continue
        if ge != e:
            raise RuleConflict(tuple(w), "even", first[w], ge, a, e)
        if odd[w] != o:
            raise RuleConflict(tuple(w), "odd", first[w], odd[w], a, o)
    return RuleVerification(a_checked=a_max, new_windows=new)


def format_rules(rules: WindowRuleTable) -> str:
    """Rule table as ``g <wwww> -> <v>`` / ``h <wwww> -> <v>`` lines,
    windows in lexicographic order."""
    lines = []
    for name, table in (("g", rules.even_rule), ("h", rules.odd_rule)):
        for w in sorted(table):
            lines.append(f"{name} {''.join(map(str, w))} -> {table[w]}")
    return "\n".join(lines) + "\n"
