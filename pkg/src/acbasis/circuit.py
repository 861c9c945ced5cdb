"""Circuits over the antichain basis.

Gates are numbered 1..s in a regular numeration: gate k reads circuit inputs
and outputs of gates j < k.  The circuit output is the last gate.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .antichain import AntichainFunction, codes_form_antichain
from .cube import BitTuple, MAX_WIDTH, check_width
from .errors import CapacityError, DimensionError, InvalidCircuitError, ParseError

MAX_TABLE_INPUTS = 20
FORMAT_HEADER = "ac-circuit v1"


@dataclass(frozen=True, order=True)
class Wire:
    kind: str  # "x" for a circuit input, "g" for a gate output
    index: int

    def __post_init__(self):
        if self.kind not in ("x", "g"):
            raise ValueError(f"wire kind must be 'x' or 'g', got {self.kind!r}")
        if self.index < 1:
            raise ValueError(f"wire index must be positive, got {self.index}")

    @classmethod
    def parse(cls, text: str) -> "Wire":
        if len(text) < 2 or text[0] not in "xg" or not text[1:].isdigit():
            raise ValueError(f"bad wire {text!r}")
        return cls(text[0], int(text[1:]))

    @property
    def is_input(self) -> bool:
        return self.kind == "x"

    def __str__(self):
        return f"{self.kind}{self.index}"


def x(i: int) -> Wire:
    return Wire("x", i)


def g(j: int) -> Wire:
    return Wire("g", j)


@dataclass(frozen=True)
class Gate:
    wires: tuple[Wire, ...]
    function: AntichainFunction

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(self.wires))

    @property
    def arity(self) -> int:
        return len(self.wires)

    def input_indices(self) -> frozenset[int]:
        return frozenset(w.index for w in self.wires if w.is_input)


@dataclass(frozen=True)
class Violation:
    kind: str  # duplicate-wire | forward-reference | bad-index | arity-mismatch | not-antichain | empty
    gate: int | None
    message: str

    def __str__(self):
        where = f"gate {self.gate}: " if self.gate is not None else ""
        return f"{self.kind}: {where}{self.message}"


@dataclass(frozen=True)
class Circuit:
    inputs: int
    gates: tuple[Gate, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    @property
    def size(self) -> int:
        """L(S), the number of gates."""
        return len(self.gates)

    def gate(self, k: int) -> Gate:
        return self.gates[k - 1]


def validate(c: Circuit) -> list[Violation]:
    out: list[Violation] = []
    if c.inputs < 1 or c.inputs > MAX_WIDTH:
        out.append(Violation("bad-index", None, f"input count {c.inputs} outside 1..{MAX_WIDTH}"))
    if not c.gates:
        out.append(Violation("empty", None, "circuit has no gates"))
    for k, gate in enumerate(c.gates, start=1):
        seen = set()
        for w in gate.wires:
            if w in seen:
                out.append(Violation("duplicate-wire", k, f"wire {w} feeds the gate twice"))
            seen.add(w)
            if w.is_input and w.index > c.inputs:
                out.append(Violation("bad-index", k, f"input {w} does not exist"))
            if not w.is_input:
                if w.index >= k:
                    out.append(Violation("forward-reference", k, f"reads {w}, not a smaller gate"))
        if gate.function.arity != gate.arity:
            out.append(Violation("arity-mismatch", k,
                                 f"{gate.arity} wires but function arity {gate.function.arity}"))
        elif not codes_form_antichain(gate.function.codes, gate.function.arity):
            out.append(Violation("not-antichain", k, "support contains a comparable pair"))
    return out


def _require_evaluable(c: Circuit) -> None:
    # duplicate wires do not obstruct evaluation; reduce() removes them
    bad = [v for v in validate(c) if v.kind != "duplicate-wire"]
    if bad:
        raise InvalidCircuitError("invalid circuit: " + "; ".join(map(str, bad)), bad)


def _evaluate_unchecked(c: Circuit, a: Sequence[int]) -> tuple[int, ...]:
    values: list[int] = []
    for gate in c.gates:
        code = 0
        for w in gate.wires:
            code = (code << 1) | (a[w.index - 1] if w.is_input else values[w.index - 1])
        values.append(1 if gate.function.contains_code(code) else 0)
    return tuple(values)


def evaluate(c: Circuit, a: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Gate values h_1..h_s on input ``a`` and the output h_s."""
    if len(a) != c.inputs:
        raise DimensionError(f"input of width {len(a)} for a circuit with {c.inputs} inputs")
    _require_evaluable(c)
    values = _evaluate_unchecked(c, BitTuple(a))
    return values, values[-1]


class Evaluator:
    """Repeated evaluation of one circuit without re-validating it each call."""

    def __init__(self, c: Circuit):
        _require_evaluable(c)
        self.circuit = c
        self._cache: dict[tuple[int, ...], tuple[int, ...]] = {}

    def values(self, a: Sequence[int]) -> tuple[int, ...]:
        key = tuple(a)
        if len(key) != self.circuit.inputs:
            raise DimensionError(f"input of width {len(key)} for {self.circuit.inputs} inputs")
        if key not in self._cache:
            self._cache[key] = _evaluate_unchecked(self.circuit, key)
        return self._cache[key]

    def output(self, a: Sequence[int]) -> int:
        return self.values(a)[-1]


def gate_columns(c: Circuit) -> list[np.ndarray]:
    """Value column of every gate over all 2^n inputs (lexicographic row order)."""
    n = c.inputs
    if n > MAX_TABLE_INPUTS:
        raise CapacityError(f"truth tables are limited to {MAX_TABLE_INPUTS} inputs")
    _require_evaluable(c)
    rows = np.arange(1 << n, dtype=np.int64)
    inputs = [((rows >> (n - i)) & 1).astype(np.int64) for i in range(1, n + 1)]
    cols: list[np.ndarray] = []
    for gate in c.gates:
        wires = [inputs[w.index - 1] if w.is_input else cols[w.index - 1] for w in gate.wires]
        if gate.arity <= 62:
            code = np.zeros(1 << n, dtype=np.int64)
            for col in wires:
                code = (code << 1) | col
            support = np.fromiter(gate.function.codes, dtype=np.int64, count=len(gate.function))
            out = np.isin(code, support)
        else:
            out = np.fromiter(
                (gate.function.contains_code(int("".join(map(str, bits)), 2))
                 for bits in zip(*(col.tolist() for col in wires))),
                dtype=bool, count=1 << n)
        cols.append(out.astype(np.int64))
    return cols


def truth_table(c: Circuit) -> np.ndarray:
    """Output bit for each input in lexicographic order, as a uint8 array."""
    return gate_columns(c)[-1].astype(np.uint8)


def restrict_diagonal(f: AntichainFunction, groups: Sequence[Sequence[int]]) -> AntichainFunction:
    """Merge coordinates of ``f``: output coordinate r reads every position in groups[r].

    A support tuple survives iff it is constant on every group.  Lifting is
    monotone, so the result is again an antichain.
    """
    m = f.arity
    codes = []
    for t in f.support:
        vals = []
        for grp in groups:
            v = {t[p] for p in grp}
            if len(v) != 1:
                break
            vals.append(v.pop())
        else:
            codes.append(BitTuple(vals).code)
    assert sorted(p for grp in groups for p in grp) == list(range(m))
    return AntichainFunction(len(groups), codes)


def reduce(c: Circuit) -> Circuit:
    """Collapse repeated wires into a gate by restricting its function to the diagonal."""
    gates = []
    for gate in c.gates:
        order: list[Wire] = []
        groups: dict[Wire, list[int]] = {}
        for p, w in enumerate(gate.wires):
            if w not in groups:
                order.append(w)
                groups[w] = []
            groups[w].append(p)
        if len(order) == len(gate.wires):
            gates.append(gate)
        else:
            fn = restrict_diagonal(gate.function, [groups[w] for w in order])
            gates.append(Gate(tuple(order), fn))
    return Circuit(c.inputs, tuple(gates), c.name)


def format_circuit(c: Circuit) -> str:
    lines = [FORMAT_HEADER, f"inputs {c.inputs}"]
    for k, gate in enumerate(c.gates, start=1):
        lines.append(" ".join([f"gate {k} wires", *map(str, gate.wires)]))
        lines.extend(f"support {s}".rstrip() for s in gate.function.lines())
        lines.append("endgate")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    """Parse ``ac-circuit v1`` text.  Support sets are not antichain-checked here; see validate()."""
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0][1] != FORMAT_HEADER:
        raise ParseError(f"expected header {FORMAT_HEADER!r}", lines[0][0] if lines else 1)
    if len(lines) < 2:
        raise ParseError("missing 'inputs' line")
    lineno, ln = lines[1]
    parts = ln.split()
    if len(parts) != 2 or parts[0] != "inputs" or not parts[1].isdigit():
        raise ParseError("expected 'inputs <n>'", lineno)
    n = int(parts[1])
    try:
        check_width(n)
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None

    gates: list[Gate] = []
    pos = 2
    while pos < len(lines):
        lineno, ln = lines[pos]
        parts = ln.split()
        if len(parts) < 3 or parts[0] != "gate" or parts[2] != "wires":
            raise ParseError("expected 'gate <k> wires ...'", lineno)
        if parts[1] != str(len(gates) + 1):
            raise ParseError(f"gate index {parts[1]} out of order (expected {len(gates) + 1})", lineno)
        try:
            wires = tuple(Wire.parse(w) for w in parts[3:])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        pos += 1
        support: list[str] = []
        while True:
            if pos >= len(lines):
                raise ParseError("missing 'endgate'", lineno)
            sl, ln = lines[pos]
            pos += 1
            if ln == "endgate":
                break
            sp = ln.split()
            if not sp or sp[0] != "support" or len(sp) > 2:
                raise ParseError("expected 'support <bitstring>' or 'endgate'", sl)
            bits = sp[1] if len(sp) == 2 else ""
            if len(bits) != len(wires) or any(ch not in "01" for ch in bits):
                raise ParseError(f"support tuple {bits!r} does not match {len(wires)} wires", sl)
            support.append(bits)
        fn = AntichainFunction.from_strings(len(wires), support, check=False)
        gates.append(Gate(wires, fn))
    return Circuit(n, tuple(gates))


def load_circuit(path: str) -> Circuit:
    with open(path) as fh:
        return parse_circuit(fh.read())


def save_circuit(c: Circuit, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(format_circuit(c))


def make_gate(wires: Iterable[Wire | str], support: Iterable[str], arity: int | None = None) -> Gate:
    """Convenience constructor: ``make_gate(["x1", "g2"], ["10", "01"])``."""
    wires = tuple(w if isinstance(w, Wire) else Wire.parse(w) for w in wires)
    fn = AntichainFunction.from_strings(len(wires) if arity is None else arity, support)
    return Gate(wires, fn)
