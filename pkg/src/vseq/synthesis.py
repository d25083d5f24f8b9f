"""Automaton synthesis from a sequence oracle, and its certification.

Synthesis is conjecture-then-certify.  A breadth-first Myhill-Nerode style
discovery reads the oracle and merges digit strings whose observable
behavior agrees up to a horizon; the result is only a conjecture, because a
finite horizon can over-merge.  Two independent gates follow:

* ``cross_validate`` replays every n up to a bound through the automaton
  and compares against the oracle;
* ``certify_transitions`` instantiates the inductive correctness scheme
  for the base-2 window automaton: per-state output windows, per-transition
  window equality at the empty extension and along the three boundary
  families 0^j, 0^j 1, 1^j, plus the doubling-rule propagation that carries
  window equality from each extension length to the next.

The signature of a string with value m collects, level by level, the oracle
slice covering all length-L extensions of the string (with the two-left
one-right fringe when windows are tracked).  Levels are capped by the
configured horizon and by oracle coverage; two strings are merged when
their signatures agree on every common level.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .automaton import SINGLE, WINDOW, Dfao
from .rules import WindowRuleTable
from .sequences import SequenceTable


class NonpositiveDivisor(ValueError):
    pass


class OracleTooShort(Exception):
    """A needed oracle value lies beyond the table end."""


class InsufficientHorizon(Exception):
    """Discovery merged states that later validation distinguishes."""


class CertificationFailure(Exception):
    def __init__(self, message: str, from_name: str = "", digit: int | None = None,
                 to_name: str = "", witness: str = ""):
        self.from_name = from_name
        self.digit = digit
        self.to_name = to_name
        self.witness = witness
        arrow = f" at {from_name} -{digit}-> {to_name}" if to_name else ""
        super().__init__(f"{message}{arrow} witness={witness!r}")


def euclid_div(s: int, q: int) -> tuple[int, int]:
    """X, Y with s = q*X + Y and 0 <= Y < q (X = floor(s/q), floor to -inf)."""
    if q < 1:
        raise NonpositiveDivisor(f"divisor must be positive, got {q}")
    return s // q, s % q


def shift_bounds(q: int, t: int, a: int, b: int, n0: int) -> tuple[int, int]:
    """Minimal shift bounds A = max(n0, ceil(q(a+1)/(q-1))), B = ceil(q(b+1)/(q-1)).

    ``t`` (the tower exponent) does not enter the bounds; it is accepted so
    call sites can pass a full parameter set.
    """
    if q < 2:
        raise ValueError("base must be >= 2")
    if min(t, a, b, n0) < 0:
        raise ValueError("t, a, b, n0 must be nonnegative")
    big_a = max(n0, -(-(q * (a + 1)) // (q - 1)))
    big_b = -(-(q * (b + 1)) // (q - 1))
    return big_a, big_b


@dataclass(frozen=True)
class SynthesisConfig:
    """Parameters of the recursion scheme and of the discovery run.

    q, t, a, b, n0 describe the scheme itself: values at q^(t+1)*n + j are
    functions of the window [-a, b] around n (valid from n0 on).  A and B
    are the shift bounds the scheme forces.  horizon caps signature depth,
    validate_to is the exhaustive cross-check bound.
    """

    q: int
    t: int
    a: int
    b: int
    n0: int
    big_a: int
    big_b: int
    horizon: int = 24
    validate_to: int = 2 ** 22

    def __post_init__(self) -> None:
        min_a, min_b = shift_bounds(self.q, self.t, self.a, self.b, self.n0)
        if self.big_a < min_a or self.big_b < min_b:
            raise ValueError(
                f"shift bounds ({self.big_a}, {self.big_b}) below minimal "
                f"({min_a}, {min_b})")
        if self.horizon < 1:
            raise ValueError("horizon must be >= 1")
        if self.validate_to < 2:
            raise ValueError("validate_to must be >= 2")

    @classmethod
    def for_frequency(cls, horizon: int = 24,
                      validate_to: int = 2 ** 22) -> "SynthesisConfig":
        """The instance for F: base 2, t = 0, window extents a = 2, b = 1,
        threshold n0 = 4 (the doubling rules hold for a > 3)."""
        big_a, big_b = shift_bounds(2, 0, 2, 1, 4)
        return cls(q=2, t=0, a=2, b=1, n0=4, big_a=big_a, big_b=big_b,
                   horizon=horizon, validate_to=validate_to)


@dataclass(frozen=True)
class KernelNode:
    """A discovered state: canonical access string, output annotation, and
    the oracle signature that separates it from every other node."""

    rep: str           # shortlex-least access string; "" for the initial state
    value: int         # integer the access string denotes
    window: tuple[int, int, int, int]
    signature: tuple[bytes, ...]

    @property
    def name(self) -> str:
        return self.rep if self.rep else "eps"


def _oracle_buffer(oracle: SequenceTable) -> bytes:
    if oracle.lo != 0:
        raise ValueError("synthesis expects an oracle table starting at index 0")
    return bytes(oracle.values)


def signature(buf: bytes, hi: int, m: int, q: int, horizon: int,
              kind: str) -> tuple[bytes, ...]:
    """Per-level oracle slices describing all extensions of a value-m string.

    Level L covers values at q^L*m + c for 0 <= c < q^L; window signatures
    widen that by two to the left and one to the right (indices below zero
    read as 0).  Levels stop at the horizon or where the oracle ends.
    """
    fringe_hi = 1 if kind == WINDOW else 0
    out = []
    step = 1
    for _ in range(horizon + 1):
        top = (m + 1) * step - 1 + fringe_hi
        if top > hi:
            break
        if kind == WINDOW:
            start = m * step - 2
            sl = (bytes(-start) + buf[:top + 1]) if start < 0 else buf[start:top + 1]
        else:
            sl = buf[m * step:top + 1]
        out.append(sl)
        step *= q
    if not out:
        raise OracleTooShort(
            f"oracle ends at {hi}; cannot form a level-0 signature for value {m}")
    return tuple(out)


def _window(buf: bytes, hi: int, m: int) -> tuple[int, int, int, int]:
    if m + 1 > hi:
        raise OracleTooShort(f"oracle ends at {hi}; need window at {m}")
    return tuple(buf[i] if i >= 0 else 0 for i in (m - 2, m - 1, m, m + 1))


def discover(oracle: SequenceTable, cfg: SynthesisConfig,
             kind: str = WINDOW) -> tuple[list[KernelNode], list[list[int]]]:
    """Breadth-first state discovery from the empty string.

    Each candidate extension of a known state is merged with the first
    existing node whose signature agrees on all common levels, or becomes a
    new node otherwise.  Breadth-first order makes every rep shortlex-least.
    """
    buf = _oracle_buffer(oracle)
    hi = oracle.hi
    q = cfg.q

    def sig(m: int) -> tuple[bytes, ...]:
        return signature(buf, hi, m, q, cfg.horizon, kind)

    nodes = [KernelNode("", 0, _window(buf, hi, 0), sig(0))]
    trans: list[list[int]] = []
    queue = [0]
    head = 0
    while head < len(queue):
        s = queue[head]
        head += 1
        row = []
        for d in range(q):
            c = nodes[s].value * q + d
            cs = sig(c)
            tgt = None
            for j, node in enumerate(nodes):
                k = min(len(cs), len(node.signature))
                if cs[:k] == node.signature[:k]:
                    tgt = j
                    break
            if tgt is None:
                nodes.append(KernelNode(nodes[s].rep + str(d), c,
                                        _window(buf, hi, c), cs))
                tgt = len(nodes) - 1
                queue.append(tgt)
            row.append(tgt)
        trans.append(row)
    return nodes, trans


def synthesize_msb(oracle: SequenceTable, cfg: SynthesisConfig,
                   kind: str = WINDOW) -> Dfao:
    """Conjecture an automaton for the oracle; certification comes separately.

    Window kind annotates each state with the 4-window at its access value;
    single kind annotates the plain oracle value.
    """
    nodes, trans = discover(oracle, cfg, kind)
    outputs: tuple
    if kind == WINDOW:
        outputs = tuple(n.window for n in nodes)
    else:
        outputs = tuple(n.window[2] for n in nodes)
    m = Dfao(
        alphabet_size=cfg.q,
        initial=0,
        transitions=tuple(tuple(r) for r in trans),
        outputs=outputs,
        output_kind=kind,
        names=tuple(n.name for n in nodes),
    )
    # digit 0 must fix the initial state, else leading zeros would change results
    if m.transitions[m.initial][0] != m.initial:
        raise AssertionError("discovery broke leading-zero stability")
    return m


@dataclass(frozen=True)
class Validation:
    passed: bool
    first_mismatch: int | None
    n_max: int


def _states_upto(m: Dfao, n_max: int) -> np.ndarray:
    """state(n) for all n in [0, n_max]: the state after reading the base-q
    numeral of n, computed level by level (state(n) = step(state(n//q), n%q))."""
    q = m.alphabet_size
    flat = np.asarray(m.transitions, dtype=np.int32).reshape(-1)
    states = np.zeros(n_max + 1, dtype=np.int32)
    states[0] = m.initial
    lo = 1
    while lo <= n_max:
        hi = min(lo * q - 1, n_max)
        idx = np.arange(lo, hi + 1)
        states[idx] = flat[states[idx // q] * q + idx % q]
        lo *= q
    return states


def _expected_outputs(m: Dfao, oracle: SequenceTable, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """(per-n automaton output code, per-n oracle output code)."""
    f = np.frombuffer(_oracle_buffer(oracle), dtype=np.uint8)
    states = _states_upto(m, n_max)
    if m.output_kind == SINGLE:
        out = np.asarray(m.outputs, dtype=np.int64)
        return out[states], f[:n_max + 1].astype(np.int64)
    wins = np.asarray(m.outputs, dtype=np.int64)
    code = wins[:, 0] | (wins[:, 1] << 8) | (wins[:, 2] << 16) | (wins[:, 3] << 24)
    seg = f[:n_max + 2].astype(np.int64)
    pad = np.concatenate([np.zeros(2, dtype=np.int64), seg])  # pad[i+2] = F(i)
    n = np.arange(n_max + 1)
    truth = pad[n] | (pad[n + 1] << 8) | (pad[n + 2] << 16) | (pad[n + 3] << 24)
    return code[states], truth


def cross_validate(m: Dfao, oracle: SequenceTable, n_max: int,
                   jobs: int = 1) -> Validation:
    """Compare the automaton against the oracle for every n in [0, n_max].

    A mismatch is a verdict, not an error.  ``jobs`` partitions [0, n_max]
    into that many ranges compared independently; verdicts merge by least
    failing index, so the result never depends on the partitioning.
    """
    need = n_max + (1 if m.output_kind == WINDOW else 0)
    if oracle.hi < need:
        raise OracleTooShort(f"oracle ends at {oracle.hi}, need {need}")
    got, want = _expected_outputs(m, oracle, n_max)
    jobs = max(1, jobs)
    bounds = np.linspace(0, n_max + 1, jobs + 1, dtype=np.int64)
    for k in range(jobs):
        a, b = int(bounds[k]), int(bounds[k + 1])
        bad = np.nonzero(got[a:b] != want[a:b])[0]
        if bad.size:
            return Validation(False, a + int(bad[0]), n_max)
    return Validation(True, None, n_max)


def synthesize_validated(oracle: SequenceTable, cfg: SynthesisConfig,
                         kind: str = WINDOW) -> tuple[Dfao, Validation]:
    """Synthesize and cross-validate, doubling the horizon (up to 3 retries)
    when validation exposes an over-merge."""
    attempt_cfg = cfg
    last = None
    for attempt in range(4):
        m = synthesize_msb(oracle, attempt_cfg, kind)
        verdict = cross_validate(m, oracle, min(attempt_cfg.validate_to, oracle.hi - 1))
        if verdict.passed:
            return m, verdict
        last = verdict
        if attempt < 3:
            attempt_cfg = replace(attempt_cfg, horizon=attempt_cfg.horizon * 2)
    raise InsufficientHorizon(
        f"automaton still disagrees with the oracle at n = {last.first_mismatch} "
        f"after raising the horizon to {attempt_cfg.horizon}")


# -- certification ------------------------------------------------------------

@dataclass(frozen=True)
class TransitionCertificate:
    from_name: str
    digit: int
    to_name: str
    base_ok: bool
    family_depth: int
    witness: str  # deepest extension checked


@dataclass(frozen=True)
class CertificateReport:
    transitions: tuple[TransitionCertificate, ...]
    states_checked: int
    propagation_checked_to: int
    validate_to: int
    depth: int

    @property
    def verdict(self) -> str:
        # a report is only constructed when every check passed;
        # failures surface as CertificationFailure instead
        return "pass"

    def format(self) -> str:
        lines = [f"OK {t.from_name} -{t.digit}-> {t.to_name}"
                 for t in self.transitions]
        lines.append(f"verdict: {self.verdict} "
                     f"({len(self.transitions)} transitions, depth {self.depth}, "
                     f"outputs checked for {self.states_checked} states, "
                     f"rule propagation to a = {self.propagation_checked_to})")
        return "\n".join(lines) + "\n"


def _name_values(m: Dfao) -> list[int]:
    # names are the states' claimed access values; every certification check
    # tests those claims against the oracle, so no structural trust is needed
    vals = []
    for s, name in enumerate(m.names):
        if name == "eps":
            v = 0
        else:
            try:
                v = int(name, m.alphabet_size)
            except ValueError:
                raise ValueError(
                    f"state {s} name {name!r} is not a base-{m.alphabet_size} "
                    "access string; certification needs synthesized names") from None
        vals.append(v)
    return vals


def certify_transitions(m: Dfao, oracle: SequenceTable, rules: WindowRuleTable,
                        depth: int = 16, validate_to: int = 2 ** 22) -> CertificateReport:
    """Run the inductive correctness scheme against the oracle.

    Per state: the output window equals the oracle window at the state's
    access value.  Per transition u -d-> v: oracle windows agree at [u d]
    and [v], and at [u d x] and [v x] for the boundary families
    x in {0^j, 0^j 1, 1^j}, 1 <= j <= depth.  Globally: the doubling rules
    reproduce F(2a) and F(2a+1) for every a in (3, validate_to/2], which is
    the step carrying window equality from each extension length to the
    next.  Any failed check raises CertificationFailure naming a witness.
    """
    if m.output_kind != WINDOW:
        raise CertificationFailure("certification applies to window automata")
    if m.alphabet_size != 2:
        raise CertificationFailure("certification scheme is specific to base 2")
    if depth < 2:
        raise ValueError("depth must be >= 2")
    buf = _oracle_buffer(oracle)
    hi = oracle.hi
    values = _name_values(m)

    max_ud = max((values[s] << 1) | d
                 for s in range(m.state_count) for d in (0, 1))
    max_needed = max(((max_ud << (depth + 1)) | 1) + 1, (max_ud + 1) << depth)
    if hi < max_needed:
        raise OracleTooShort(
            f"oracle ends at {hi}; depth {depth} family checks need {max_needed}")
    prop_to = validate_to // 2
    if hi < 2 * prop_to + 1:
        raise OracleTooShort(
            f"oracle ends at {hi}; rule propagation to {prop_to} needs {2 * prop_to + 1}")

    def win(n: int) -> tuple[int, int, int, int]:
        return tuple(buf[i] if i >= 0 else 0 for i in (n - 2, n - 1, n, n + 1))

    # (a) output windows
    for s in range(m.state_count):
        if tuple(m.outputs[s]) != win(values[s]):
            raise CertificationFailure(
                f"state output {m.outputs[s]} != oracle window {win(values[s])}",
                from_name=m.names[s], witness=m.names[s])

    # (b) base case and boundary families per transition
    certs = []
    for s in range(m.state_count):
        for d in (0, 1):
            p = m.transitions[s][d]
            mu = (values[s] << 1) | d
            mv = values[p]
            if win(mu) != win(mv):
                raise CertificationFailure(
                    "base windows differ", m.names[s], d, m.names[p], witness="")
            witness = ""
            for j in range(1, depth + 1):
                for xval, xlen, x in ((0, j, "0" * j),
                                      (1, j + 1, "0" * j + "1"),
                                      ((1 << j) - 1, j, "1" * j)):
                    if win((mu << xlen) | xval) != win((mv << xlen) | xval):
                        raise CertificationFailure(
                            "family windows differ", m.names[s], d, m.names[p],
                            witness=x)
                    witness = x
            certs.append(TransitionCertificate(
                from_name=m.names[s], digit=d, to_name=m.names[p],
                base_ok=True, family_depth=depth, witness=witness))

    # (iii) doubling rules propagate windows across the validation range
    even = {bytes(w): v for w, v in rules.even_rule.items()}
    odd = {bytes(w): v for w, v in rules.odd_rule.items()}
    for a in range(4, prop_to + 1):
        w = buf[a - 2:a + 2]
        ge = even.get(w)
        if ge is None:
            raise CertificationFailure(
                f"window {tuple(w)} at a = {a} outside the rule domain",
                witness=str(a))
        if ge != buf[2 * a] or odd[w] != buf[2 * a + 1]:
            raise CertificationFailure(
                f"doubling rules disagree with the oracle at a = {a}",
                witness=str(a))

    return CertificateReport(
        transitions=tuple(certs),
        states_checked=m.state_count,
        propagation_checked_to=prop_to,
        validate_to=validate_to,
        depth=depth,
    )


# -- kernel-size probe ---------------------------------------------------------

@dataclass(frozen=True)
class ProbeLevel:
    level: int
    block_len: int
    samples: int
    distinct: int


@dataclass(frozen=True)
class ProbeReport:
    q: int
    depth: int
    prefix_len: int
    levels: tuple[ProbeLevel, ...]
    truncated: bool  # oracle ran out before the requested depth

    @property
    def stabilized(self) -> bool:
        """Distinct count unchanged over the last two completed levels."""
        if len(self.levels) < 2:
            return False
        return self.levels[-1].distinct == self.levels[-2].distinct

    def format(self) -> str:
        lines = [f"# base {self.q}, depth {self.depth}, prefix {self.prefix_len}"]
        for lv in self.levels:
            lines.append(f"level {lv.level}: distinct {lv.distinct} "
                         f"(blocks of {lv.block_len}, {lv.samples} samples)")
        if self.truncated:
            lines.append("# truncated: oracle too short for deeper levels")
        lines.append(f"stabilized: {'yes' if self.stabilized else 'no'}")
        return "\n".join(lines) + "\n"


def kernel_probe(table: SequenceTable, q: int, depth: int,
                 prefix_len: int) -> ProbeReport:
    """Count distinct aligned blocks (S(q^e n + c))_{c} level by level.

    A q-automatic sequence has finitely many such blocks at every depth
    (they refine toward the state classes of its automaton), so a count
    that stops growing is evidence for automaticity and a count that keeps
    growing with e is evidence against.  Blocks are truncated to the first
    ``prefix_len`` entries; levels where the oracle holds fewer than two
    complete blocks are not reported (a single sample cannot witness any
    distinction) and set the truncated flag instead.
    """
    if q < 2 or depth < 0 or prefix_len < 1:
        raise ValueError("need q >= 2, depth >= 0, prefix_len >= 1")
    vals = np.asarray(table.values)
    if vals.dtype != np.uint8:
        if int(vals.min()) < 0 or int(vals.max()) > 255:
            raise ValueError("probe expects values in [0, 255]")
        vals = vals.astype(np.uint8)
    lo, hi = table.lo, table.hi
    levels = []
    truncated = False
    step = 1
    for e in range(depth + 1):
        block = min(prefix_len, step)
        n0 = -(-lo // step)
        n1 = (hi - block + 1) // step
        if n1 < n0 + 1:
            truncated = True
            break
        base = np.arange(n0, n1 + 1, dtype=np.int64) * step
        rows = vals[(base[:, None] + np.arange(block)) - lo]
        rows = np.ascontiguousarray(rows)
        distinct = len(np.unique(rows.view(f"V{block}")))
        levels.append(ProbeLevel(e, block, int(n1 - n0 + 1), distinct))
        step *= q
    return ProbeReport(q=q, depth=depth, prefix_len=prefix_len,
                       levels=tuple(levels), truncated=truncated)
