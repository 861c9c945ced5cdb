"""Chain-construction adversary for lower bounds on parity and majority circuits.

Given a circuit for p_n or m_n, the adversary walks down from the top of the
cube and up from the bottom, fixing one input per action, and builds a chain of
n+1 tuples.  Every tuple on which some gate is the *first non-zero gate* is
charged to that gate; no gate is charged twice, so the number of charges is a
lower bound on the gate count.  The result is a :class:`ChainCertificate` that
:func:`check_certificate` validates without re-running the construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .circuit import Circuit, Evaluator, reduce, truth_table, validate, MAX_TABLE_INPUTS
from .cube import BitTuple, Subcube, is_chain, target_table
from .errors import (CapacityError, InvalidCircuitError, InvariantViolation,
                     NotTargetFunctionError, ParseError)

TARGETS = ("parity", "majority")
CERT_HEADER = "ac-cert v1"


def theorem_bound(function: str, n: int) -> int:
    if function == "parity":
        return (n + 1) // 2
    if function == "majority":
        return n // 2 + 1
    raise ValueError(f"unknown target function {function!r}")


def _fmt_set(s) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


@dataclass
class AdversaryState:
    n: int
    i: int = 0
    F: set[int] = field(default_factory=set)
    T: set[int] = field(default_factory=set)
    frozen: set[int] = field(default_factory=set)
    tops: list[BitTuple] = field(default_factory=list)
    bottoms: list[BitTuple] = field(default_factory=list)
    charges: dict[BitTuple, int] = field(default_factory=dict)
    transcript: list[str] = field(default_factory=list)

    @classmethod
    def initial(cls, n: int) -> "AdversaryState":
        st = cls(n)
        st.tops.append(st.top)
        st.bottoms.append(st.bottom)
        return st

    @property
    def free(self) -> frozenset[int]:
        return frozenset(range(1, self.n + 1)) - self.F - self.T

    @property
    def top(self) -> BitTuple:
        return BitTuple.from_set(set(range(1, self.n + 1)) - self.F, self.n)

    @property
    def bottom(self) -> BitTuple:
        return BitTuple.from_set(self.T, self.n)

    def extreme(self, side: str) -> BitTuple:
        return self.top if side == "top" else self.bottom

    def subcube(self) -> Subcube:
        return Subcube(self.n, frozenset(self.F), frozenset(self.T))

    def chain(self) -> list[BitTuple]:
        return sorted(set(self.tops) | set(self.bottoms), key=lambda t: t.weight)

    def log(self, msg: str) -> None:
        self.transcript.append(msg)

    def describe(self) -> str:
        return f"state i={self.i} F={_fmt_set(self.F)} T={_fmt_set(self.T)} E={_fmt_set(self.frozen)}"


def first_nonzero_gate(c: Circuit, st: AdversaryState, a: Sequence[int],
                       evaluator: Evaluator | None = None) -> Optional[int]:
    """Smallest k <= st.i outside the frozen set with h_k(a) = 1 and a wire to a free input."""
    if BitTuple(a) not in st.subcube():
        raise ValueError(f"{BitTuple(a)} is not in the current subcube")
    ev = evaluator or Evaluator(c)
    vals = ev.values(a)
    free = st.free
    for k in range(1, st.i + 1):
        if k in st.frozen or not vals[k - 1]:
            continue
        if c.gate(k).input_indices() & free:
            return k
    return None


@dataclass(frozen=True)
class ChainCertificate:
    n: int
    function: str
    tuples: tuple[BitTuple, ...]
    charges: Mapping[int, int]  # chain position -> gate index
    claimed_bound: int
    transcript: tuple[str, ...] = ()

    def charged_gates(self) -> list[int]:
        return [self.charges[p] for p in sorted(self.charges)]


class _ChainBuilder:
    def __init__(self, c: Circuit, function: str):
        self.c = c
        self.function = function
        self.ev = Evaluator(c)
        self.s = c.size
        self.wired = [None] + [gate.input_indices() for gate in c.gates]
        self.st = AdversaryState.initial(c.inputs)

    # -- helpers ----------------------------------------------------------
    def fail(self, msg: str):
        self.st.log(f"FAIL {msg}")
        raise InvariantViolation(msg, self.st.transcript)

    def h(self, k: int, a: BitTuple) -> int:
        return self.ev.values(a)[k - 1]

    def active(self, k: int) -> bool:
        return k <= self.st.i and k not in self.st.frozen

    def choose_coordinate(self, k: int, a: BitTuple) -> int:
        """Smallest free input wired into gate k whose flip changes g_k at ``a``."""
        gate = self.c.gate(k)
        vals = self.ev.values(a)
        local = [a[w.index - 1] if w.is_input else vals[w.index - 1] for w in gate.wires]
        here = gate.function(local)
        free = self.st.free
        for p, w in sorted(enumerate(gate.wires), key=lambda pw: (not pw[1].is_input, pw[1].index)):
            if w.is_input and w.index in free:
                flipped = list(local)
                flipped[p] ^= 1
                if gate.function(flipped) != here:
                    return w.index
        self.fail(f"Lemma 1: gate {k} fires on {a} but has no free essential variable")

    def fix(self, v: int, side: str, charge: Optional[int], reason: str) -> None:
        st = self.st
        a = st.extreme(side)
        if charge is not None:
            if a in st.charges:
                self.fail(f"tuple {a} charged twice")
            if charge in st.charges.values():
                self.fail(f"Lemma 4: gate {charge} is first non-zero twice (again on {a})")
            st.charges[a] = charge
        if v not in st.free:
            self.fail(f"x{v} is not free")
        if side == "top":
            st.F.add(v)
            st.tops.append(st.top)
        else:
            st.T.add(v)
            st.bottoms.append(st.bottom)
        if st.F & st.T:
            self.fail(f"Property 1: F and T intersect in {_fmt_set(st.F & st.T)}")
        val = 0 if side == "top" else 1
        new = st.extreme(side)
        charged = f"charge {a} -> g{charge}; " if charge is not None else ""
        st.log(f"  {reason}: {charged}fix x{v}={val}; {side} {new}")
        self.refreeze()

    def refreeze(self) -> None:
        st = self.st
        free = st.free
        newly = [j for j in range(1, st.i + 1) if j not in st.frozen and not self.wired[j] & free]
        st.frozen.update(newly)
        for k in newly:
            st.log(f"  freeze g{k}")
            self.check_lemma2(k)

    def check_lemma2(self, k: int) -> None:
        for side in ("top", "bottom"):
            t = self.st.extreme(side)
            vals = self.ev.values(t)
            if all(vals[j - 1] == 0 for j in range(1, k) if self.active(j)) and vals[k - 1]:
                self.fail(f"Lemma 2: newly frozen gate {k} outputs 1 on the {side} {t}")

    def restore(self, side: str) -> int:
        """Fix variables on one side until no first non-zero gate remains there."""
        actions = 0
        while self.st.free:
            a = self.st.extreme(side)
            k = first_nonzero_gate(self.c, self.st, a, self.ev)
            if k is None:
                break
            v = self.choose_coordinate(k, a)
            self.fix(v, side, k, f"first non-zero g{k} on {side}")
            actions += 1
        return actions

    def check_property2(self) -> None:
        st = self.st
        if not st.free:
            return
        if not st.frozen <= set(range(1, st.i + 1)):
            self.fail(f"frozen set {_fmt_set(st.frozen)} exceeds step {st.i}")
        top, bot = st.top, st.bottom
        for j in range(1, st.i + 1):
            if self.active(j) and (self.h(j, top) or self.h(j, bot)):
                self.fail(f"Property 2: gate {j} is non-zero on an extreme after step {st.i}")

    # -- stages -----------------------------------------------------------
    def stage1(self) -> None:
        st = self.st
        for k in range(1, self.s + 1):
            if not st.free:
                st.log(f"chain complete before step {k}")
                break
            st.i = k
            frozen_before = set(st.frozen)
            if not self.wired[k] & st.free:
                st.frozen.add(k)
                st.log(f"step {k} case 1: g{k} has no free input; freeze")
            else:
                top, bot = st.top, st.bottom
                vt, vb = self.h(k, top), self.h(k, bot)
                if vt and vb:
                    self.fail(f"Lemma 3: gate {k} fires on both extremes {top} and {bot}")
                if vt:
                    st.log(f"step {k} case 2b: g{k} fires on top {top}")
                    self.restore("top")
                elif vb:
                    st.log(f"step {k} case 2c: g{k} fires on bottom {bot}")
                    self.restore("bottom")
                else:
                    st.log(f"step {k} case 2a: g{k} is zero on both extremes")
            if not frozen_before <= st.frozen:
                self.fail("frozen set shrank")
            self.check_property2()
            st.log(st.describe())

    def stage2(self) -> int:
        st = self.st
        st.i = self.s
        top = st.top
        a = self.h(self.s, top)
        if not st.free:
            return a
        if self.h(self.s, st.bottom) != a:
            self.fail("output differs on the extremes after stage 1")
        if self.function == "parity" and len(st.free) % 2:
            self.fail(f"odd free dimension {len(st.free)} left for parity")
        st.log(f"stage 2: a={a} free={_fmt_set(st.free)}")
        while st.free:
            prev = st.bottom
            v = min(st.free)
            self.fix(v, "bottom", None, "stage 2 flip")
            cur = st.bottom
            pv, cv = self.ev.values(prev), self.ev.values(cur)
            diff = next((j for j in range(1, self.s + 1) if pv[j - 1] != cv[j - 1]), None)
            st.log(f"  first differing gate: {'none' if diff is None else 'g%d' % diff}")
            if st.free and self.function == "parity":
                if first_nonzero_gate(self.c, st, cur, self.ev) is None:
                    self.fail(f"stage 2: no first non-zero gate on {cur} although parity flipped")
            self.restore("bottom")
            self.restore("top")
            self.check_property2()
            st.log(st.describe())
        return a

    def run(self) -> ChainCertificate:
        st = self.st
        st.log(f"init n={self.c.inputs} s={self.s} function={self.function}")
        self.stage1()
        a = self.stage2()
        if st.free:
            self.fail("free variables remain")
        chain = st.chain()
        n = self.c.inputs
        if len(chain) != n + 1 or [t.weight for t in chain] != list(range(n + 1)) or not is_chain(chain):
            self.fail(f"constructed tuples do not form an {n + 1}-chain")
        charges = {p: st.charges[t] for p, t in enumerate(chain) if t in st.charges}
        if len(charges) != len(st.charges):
            self.fail("a charged tuple is missing from the chain")
        for t in chain:
            if t not in st.charges and self.ev.output(t) != a:
                self.fail(f"uncharged chain tuple {t} has output {1 - a}")
        bound = len(charges)
        if self.function == "majority" and a == 1 and self.s not in charges.values():
            bound += 1
            st.log(f"output gate g{self.s} is uncharged: bound {bound - 1} + 1")
        if bound < theorem_bound(self.function, n):
            self.fail(f"bound {bound} below {theorem_bound(self.function, n)}")
        st.log(f"done: {len(charges)} charges, bound {bound}")
        return ChainCertificate(n, self.function, tuple(chain), charges, bound, tuple(st.transcript))


def _prepare(c: Circuit, function: str) -> Circuit:
    if c.inputs > MAX_TABLE_INPUTS:
        raise CapacityError(f"the target check is limited to {MAX_TABLE_INPUTS} inputs")
    problems = [v for v in validate(c) if v.kind != "duplicate-wire"]
    if problems:
        raise InvalidCircuitError("invalid circuit: " + "; ".join(map(str, problems)), problems)
    rc = reduce(c)
    if not np.array_equal(truth_table(rc), target_table(function, c.inputs)):
        raise NotTargetFunctionError(f"circuit does not compute {function} of {c.inputs} inputs")
    return rc


def run_adversary(c: Circuit, function: str) -> ChainCertificate:
    if function not in TARGETS:
        raise ValueError(f"unknown target function {function!r}")
    return _ChainBuilder(_prepare(c, function), function).run()


def run_parity_adversary(c: Circuit) -> ChainCertificate:
    return run_adversary(c, "parity")


def run_majority_adversary(c: Circuit) -> ChainCertificate:
    return run_adversary(c, "majority")


# -- certificate checking -------------------------------------------------

@dataclass(frozen=True)
class Diagnostic:
    prop: str  # chain | fires | injective | bound | coverage | inputs | circuit
    message: str

    def __str__(self):
        return f"[{self.prop}] {self.message}"


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    bound: int
    diagnostics: tuple[Diagnostic, ...]

    def __bool__(self):
        return self.ok

    def props(self) -> set[str]:
        return {d.prop for d in self.diagnostics}


def check_certificate(c: Circuit, cert: ChainCertificate) -> CertificateCheck:
    """Validate a certificate against a circuit using chain-local facts only.

    Passing implies L(c) >= cert.claimed_bound: each charged gate fires on its
    tuple and no gate is charged twice.
    """
    diags: list[Diagnostic] = []
    n = c.inputs
    if cert.n != n:
        diags.append(Diagnostic("inputs", f"certificate has {cert.n} inputs, circuit has {n}"))
        return CertificateCheck(False, cert.claimed_bound, tuple(diags))
    if cert.function not in TARGETS:
        diags.append(Diagnostic("coverage", f"unknown target function {cert.function!r}"))
    try:
        ev = Evaluator(c)
    except InvalidCircuitError as exc:
        diags.append(Diagnostic("circuit", str(exc)))
        return CertificateCheck(False, cert.claimed_bound, tuple(diags))

    tuples = list(cert.tuples)
    # (a) chain of n+1 distinct tuples listed by weight 0..n
    if any(len(t) != n for t in tuples):
        diags.append(Diagnostic("chain", f"tuple widths differ from {n}"))
        return CertificateCheck(False, cert.claimed_bound, tuple(diags))
    if len(tuples) != n + 1:
        diags.append(Diagnostic("chain", f"{len(tuples)} tuples, expected {n + 1}"))
    bad_w = [p for p, t in enumerate(tuples) if BitTuple(t).weight != p]
    if bad_w:
        diags.append(Diagnostic("chain", f"positions {bad_w} do not hold a tuple of that weight"))
    if len(set(tuples)) != len(tuples):
        diags.append(Diagnostic("chain", "repeated tuple"))
    if not is_chain(tuples):
        diags.append(Diagnostic("chain", "tuples are not pairwise comparable"))

    # (b) charged gates fire on their tuples
    for p, k in sorted(cert.charges.items()):
        if not 0 <= p < len(tuples):
            diags.append(Diagnostic("fires", f"charge on missing position {p}"))
        elif not 1 <= k <= c.size:
            diags.append(Diagnostic("fires", f"charge to nonexistent gate {k}"))
        elif not ev.values(tuples[p])[k - 1]:
            diags.append(Diagnostic("fires", f"gate {k} outputs 0 on charged tuple {BitTuple(tuples[p])}"))

    # (c) injectivity
    seen: dict[int, int] = {}
    for p, k in sorted(cert.charges.items()):
        if k in seen:
            diags.append(Diagnostic("injective", f"gate {k} charged at positions {seen[k]} and {p}"))
        else:
            seen[k] = p

    # (d) claimed bound
    count = len(cert.charges)
    bonus_ok = cert.function == "majority" and c.size not in cert.charges.values()
    if not (cert.claimed_bound == count or (bonus_ok and cert.claimed_bound == count + 1)):
        extra = " (+1 for the uncharged output gate)" if bonus_ok else ""
        diags.append(Diagnostic("bound", f"claimed {cert.claimed_bound} but {count} charges{extra}"))

    # (e) coverage: every tuple off the uncharged value carries a charge
    if cert.function in TARGETS and not any(d.prop == "chain" for d in diags):
        table = target_table(cert.function, n)
        charged = set(cert.charges)

        def covered(a: int) -> bool:
            return all(p in charged for p, t in enumerate(tuples) if table[BitTuple(t).code] != a)

        if not (covered(0) or covered(1)):
            diags.append(Diagnostic("coverage", "uncharged tuples take both values of the target"))

    return CertificateCheck(not diags, cert.claimed_bound, tuple(diags))


# -- text format ----------------------------------------------------------

def format_certificate(cert: ChainCertificate, with_transcript: bool = True) -> str:
    lines = [CERT_HEADER, f"inputs {cert.n}", f"function {cert.function}", f"bound {cert.claimed_bound}"]
    for p, t in enumerate(cert.tuples):
        ln = f"tuple {BitTuple(t)}"
        if p in cert.charges:
            ln += f" charge {cert.charges[p]}"
        lines.append(ln)
    if with_transcript and cert.transcript:
        lines.append("transcript")
        lines.extend(cert.transcript)
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> ChainCertificate:
    raw = text.splitlines()
    body = [(i, ln.strip()) for i, ln in enumerate(raw, start=1)]
    if "transcript" in [ln for _, ln in body]:
        cut = [ln for _, ln in body].index("transcript")
        transcript = tuple(ln.rstrip() for ln in raw[cut + 1:])
        body = body[:cut]
    else:
        transcript = ()
    body = [(i, ln) for i, ln in body if ln]
    if not body or body[0][1] != CERT_HEADER:
        raise ParseError(f"expected header {CERT_HEADER!r}", body[0][0] if body else 1)

    def field_line(pos: int, key: str) -> str:
        if pos >= len(body):
            raise ParseError(f"missing '{key}' line")
        i, ln = body[pos]
        parts = ln.split()
        if len(parts) != 2 or parts[0] != key:
            raise ParseError(f"expected '{key} <value>'", i)
        return parts[1]

    try:
        n = int(field_line(1, "inputs"))
        function = field_line(2, "function")
        bound = int(field_line(3, "bound"))
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad numeric field: {exc}") from None
    if function not in TARGETS:
        raise ParseError(f"unknown function {function!r}", body[2][0])
    tuples: list[BitTuple] = []
    charges: dict[int, int] = {}
    for i, ln in body[4:]:
        parts = ln.split()
        if parts[0] != "tuple" or len(parts) not in (2, 4) or (len(parts) == 4 and parts[2] != "charge"):
            raise ParseError("expected 'tuple <bitstring> [charge <gate>]'", i)
        try:
            t = BitTuple.from_string(parts[1])
        except ValueError as exc:
            raise ParseError(str(exc), i) from None
        if len(parts) == 4:
            if not parts[3].isdigit():
                raise ParseError(f"bad gate index {parts[3]!r}", i)
            charges[len(tuples)] = int(parts[3])
        tuples.append(t)
    return ChainCertificate(n, function, tuple(tuples), charges, bound, transcript)


def load_certificate(path: str) -> ChainCertificate:
    with open(path) as fh:
        return parse_certificate(fh.read())


def save_certificate(cert: ChainCertificate, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_certificate(cert))
