"""Optimal AC circuits for symmetric functions given by a union of weight layers.

For a layer set L with top layer t* the circuit is

    y_t = h_t(x)          for t in L \\ {t*}, ascending
    out = g(y, x)

where g fires on (e_t, x) with weight(x) = t, and on (0, x) with weight(x) = t*.
Majority uses L = {ceil(n/2), ..., n}, parity the odd layers.
"""
from __future__ import annotations

from dataclasses import dataclass

from .antichain import AntichainFunction, layer_codes, layer_function
from .circuit import Circuit, Gate, Wire
from .cube import check_width
from .errors import InvariantViolation

MAX_SYNTH_INPUTS = 20


@dataclass(frozen=True)
class LayerPlan:
    n: int
    layers: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "layers", frozenset(self.layers))
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        if not self.layers:
            raise ValueError("layer set must be nonempty")
        bad = sorted(t for t in self.layers if not 0 <= t <= self.n)
        if bad:
            raise ValueError(f"layers {bad} outside 0..{self.n}")

    @property
    def top_layer(self) -> int:
        return max(self.layers)

    @property
    def lower_layers(self) -> list[int]:
        """Layers that get their own h_t gate (the y-block), ascending."""
        return sorted(self.layers - {self.top_layer})

    @classmethod
    def majority(cls, n: int) -> "LayerPlan":
        return cls(n, frozenset(range((n + 1) // 2, n + 1)))

    @classmethod
    def parity(cls, n: int) -> "LayerPlan":
        return cls(n, frozenset(range(1, n + 1, 2)))


def build_g_function(plan: LayerPlan) -> AntichainFunction:
    n, top = plan.n, plan.top_layer
    lower = plan.lower_layers
    if not lower:
        return layer_function(n, top)
    m = len(lower)
    codes = []
    for j, t in enumerate(lower):
        y = 1 << (m - 1 - j)
        codes.extend((y << n) | xc for xc in layer_codes(n, t))
    codes.extend(layer_codes(n, top))  # y = 0
    try:
        return AntichainFunction(m + n, codes)
    except ValueError as exc:
        raise InvariantViolation(f"g gate for layers {sorted(plan.layers)} is not an antichain: {exc}")


def build_symmetric_circuit(plan: LayerPlan) -> Circuit:
    check_width(plan.n, MAX_SYNTH_INPUTS)
    n = plan.n
    xs = tuple(Wire("x", i) for i in range(1, n + 1))
    gates = [Gate(xs, layer_function(n, t)) for t in plan.lower_layers]
    ys = tuple(Wire("g", j) for j in range(1, len(gates) + 1))
    gates.append(Gate(ys + xs, build_g_function(plan)))
    return Circuit(n, tuple(gates), f"layers{sorted(plan.layers)}")


def build_majority_circuit(n: int) -> Circuit:
    c = build_symmetric_circuit(LayerPlan.majority(n))
    return Circuit(c.inputs, c.gates, f"m_{n}")


def build_parity_circuit(n: int) -> Circuit:
    c = build_symmetric_circuit(LayerPlan.parity(n))
    return Circuit(c.inputs, c.gates, f"p_{n}")


def build_layered_parity_circuit(n: int) -> Circuit:
    """Parity with one gate to spare: every odd layer gets an h_t gate, and an
    exactly-one-of gate over those outputs forms the result."""
    if n < 2:
        raise ValueError("layered parity needs n >= 2")
    check_width(n, MAX_SYNTH_INPUTS)
    xs = tuple(Wire("x", i) for i in range(1, n + 1))
    odd = list(range(1, n + 1, 2))
    gates = [Gate(xs, layer_function(n, t)) for t in odd]
    ys = tuple(Wire("g", j) for j in range(1, len(odd) + 1))
    gates.append(Gate(ys, layer_function(len(odd), 1)))
    return Circuit(n, tuple(gates), f"layered-p_{n}")


def parity_gate_count(n: int) -> int:
    return (n + 1) // 2


def majority_gate_count(n: int) -> int:
    return n // 2 + 1
