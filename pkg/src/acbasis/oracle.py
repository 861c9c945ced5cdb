"""Exhaustive search for minimum AC circuits at tiny sizes (n <= 4, s <= 2).

A gate candidate is a wire subset S plus an antichain over the |S|-cube, so the
space is finite even though the basis is not.  For s = 2 the first gate reads
inputs only and the second reads inputs and possibly gate 1.

Every (gate-1, gate-2) pair is counted as visited.  Gate-1 candidates with an
output column already seen are not re-evaluated, and each surviving pair is
screened on a seeded random probe of input rows before the full table compare.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .antichain import AntichainFunction, antichain_codes, codes_form_antichain, membership_matrix
from .circuit import Circuit, Gate, Wire, truth_table, validate, MAX_TABLE_INPUTS
from .errors import CapacityError, DimensionError

MAX_SEARCH_INPUTS = 4
MAX_SEARCH_GATES = 2
PROBE_SIZE = 4
DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class SearchBudget:
    n: int
    max_gates: int = 2
    parallelism: int = 1
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if not 1 <= self.n <= MAX_SEARCH_INPUTS:
            raise CapacityError(f"search is limited to 1 <= n <= {MAX_SEARCH_INPUTS}")
        if not 1 <= self.max_gates <= MAX_SEARCH_GATES:
            raise CapacityError(f"search is limited to 1..{MAX_SEARCH_GATES} gates")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")

    def space_size(self, s: int) -> int:
        """Number of candidate circuits with exactly s gates."""
        one = first_gate_space(self.n)
        if s == 1:
            return one
        return one * second_gate_space(self.n)


def _subsets(items: Sequence) -> list[tuple]:
    return [c for r in range(len(items) + 1) for c in combinations(items, r)]


def first_gate_space(n: int) -> int:
    return sum(len(antichain_codes(len(S))) for S in _subsets(range(n)))


def second_gate_space(n: int) -> int:
    return sum(len(antichain_codes(len(S))) for S in _subsets(range(n + 1)))


@dataclass(frozen=True)
class SearchResult:
    n: int
    gates: int
    circuit: Optional[Circuit]
    visited: int
    evaluated: int
    probe_rejected: int


@dataclass(frozen=True)
class ComplexityReport:
    n: int
    max_gates: int
    min_gates: Optional[int]
    circuit: Optional[Circuit]
    results: tuple[SearchResult, ...]

    def summary(self) -> str:
        lines = []
        for r in self.results:
            lines.append(f"s={r.gates}: visited {r.visited} candidates, "
                         f"evaluated {r.evaluated}, probe-rejected {r.probe_rejected}")
        return "\n".join(lines)


def _check_table(f, n: Optional[int] = None) -> np.ndarray:
    f = np.asarray(f, dtype=np.uint8).ravel()
    m = len(f).bit_length() - 1
    if 1 << m != len(f):
        raise DimensionError(f"truth table length {len(f)} is not a power of two")
    if n is not None and m != n:
        raise DimensionError(f"truth table has {m} inputs, expected {n}")
    if np.any(f > 1):
        raise ValueError("truth table entries must be 0 or 1")
    return f


def is_antichain_function_of(f) -> bool:
    """Is the support of the truth table an antichain?"""
    f = _check_table(f)
    n = len(f).bit_length() - 1
    if n > MAX_TABLE_INPUTS:
        raise CapacityError(f"tables are limited to {MAX_TABLE_INPUTS} inputs")
    return codes_form_antichain(np.flatnonzero(f).tolist(), n)


def _input_columns(n: int) -> list[np.ndarray]:
    rows = np.arange(1 << n)
    return [((rows >> (n - i)) & 1).astype(np.int64) for i in range(1, n + 1)]


def _points(cols: Sequence[np.ndarray], size: int) -> np.ndarray:
    """Index of each input row in the cube of the given wires (first wire = MSB)."""
    p = np.zeros(size, dtype=np.int64)
    for col in cols:
        p = (p << 1) | col
    return p


def _first_gate_candidates(n: int):
    """(wire subset, antichain index, output column) in enumeration order."""
    xs = _input_columns(n)
    out = []
    for S in _subsets(range(n)):
        mat = membership_matrix(len(S))
        cols = mat[:, _points([xs[i] for i in S], 1 << n)]
        for r in range(len(mat)):
            out.append((S, r, cols[r].astype(np.int64)))
    return out


def _match_rows(mat, points, f, probe):
    """Rows of ``mat`` whose induced table equals f; also the probe rejection count."""
    ok = np.ones(len(mat), dtype=bool)
    for row in probe:
        ok &= mat[:, points[row]] == bool(f[row])
    rejected = int(len(mat) - ok.sum())
    cand = np.flatnonzero(ok)
    if len(cand) == 0:
        return [], rejected
    full = mat[np.ix_(cand, points)] == f.astype(bool)
    return cand[full.all(axis=1)].tolist(), rejected


def _probe_rows(n: int, seed: int) -> list[int]:
    rows = list(range(1 << n))
    return random.Random(seed).sample(rows, min(PROBE_SIZE, len(rows)))


def _scan_second(n: int, f: np.ndarray, col1: Optional[np.ndarray], probe, with_g1: bool):
    """Second-gate candidates over subsets that do (or do not) include gate 1.

    Returns (first match as (second-gate index, subset, row) or None, evaluated, rejected).
    The second-gate index follows the full enumeration order over subsets of x1..xn, g1.
    """
    xs = _input_columns(n)
    wires = xs + [col1]
    size = 1 << n
    index = 0
    best = None
    evaluated = rejected = 0
    for S in _subsets(range(n + 1)):
        k = len(S)
        count = len(antichain_codes(k))
        uses_g1 = n in S
        if uses_g1 == with_g1:
            mat = membership_matrix(k)
            rows, rej = _match_rows(mat, _points([wires[i] for i in S], size), f, probe)
            evaluated += count
            rejected += rej
            if rows and best is None:
                best = (index + rows[0], S, rows[0])
        index += count
    return best, evaluated, rejected


def _worker(args):
    n, f, group_cols, probe = args
    results = []
    for key, col1 in group_cols:
        best, ev, rej = _scan_second(n, f, col1, probe, with_g1=True)
        results.append((key, best, ev, rej))
    return results


def _gate_from(n: int, S: Sequence[int], row: int, g1: bool = False) -> Gate:
    wires = tuple(Wire("g", 1) if i == n and g1 else Wire("x", i + 1) for i in S)
    return Gate(wires, AntichainFunction(len(S), antichain_codes(len(S))[row]))


def search_circuits(f, s: int, budget: SearchBudget) -> SearchResult:
    """Exhaustive search over circuits with exactly s gates (s <= 2)."""
    n = budget.n
    f = _check_table(f, n)
    if not 1 <= s <= budget.max_gates:
        raise CapacityError(f"gate count {s} outside the budget 1..{budget.max_gates}")
    probe = _probe_rows(n, budget.seed)
    first = _first_gate_candidates(n)

    if s == 1:
        best = None
        evaluated = rejected = 0
        xs = _input_columns(n)
        for S in _subsets(range(n)):
            mat = membership_matrix(len(S))
            rows, rej = _match_rows(mat, _points([xs[i] for i in S], 1 << n), f, probe)
            evaluated += len(mat)
            rejected += rej
            if rows and best is None:
                best = (S, rows[0])
        circuit = None
        if best is not None:
            circuit = Circuit(n, (_gate_from(n, *best),))
        return _finish(f, SearchResult(n, 1, circuit, len(first), evaluated, rejected))

    per_gate2 = second_gate_space(n)
    visited = len(first) * per_gate2

    # second gates that ignore gate 1 behave identically for every first gate
    free_best, evaluated, rejected = _scan_second(n, f, np.zeros(1 << n, dtype=np.int64), probe, with_g1=False)

    groups: dict[bytes, int] = {}
    for idx, (_, _, col) in enumerate(first):
        groups.setdefault(col.astype(np.uint8).tobytes(), idx)
    reps = sorted(groups.values())
    jobs = max(1, min(budget.parallelism, len(reps)))
    chunks = [[(idx, first[idx][2]) for idx in reps[j::jobs]] for j in range(jobs)]
    tasks = [(n, f, chunk, probe) for chunk in chunks]
    if jobs == 1:
        outputs = [_worker(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(_worker, tasks))

    rep_best: dict[int, tuple] = {}
    for out in outputs:
        for key, best, ev, rej in out:
            evaluated += ev
            rejected += rej
            if best is not None:
                rep_best[key] = best

    # lexicographic (gate-1 index, gate-2 index) order; every gate-1 candidate
    # shares the g1-free matches, and duplicates share their representative's
    candidates = []
    if free_best is not None:
        candidates.append((0, free_best))
    for key, best in rep_best.items():
        candidates.append((key, best))
    circuit = None
    if candidates:
        g1_idx, (g2_idx, S2, row2) = min(candidates, key=lambda kb: (kb[0], kb[1][0]))
        S1, row1, _ = first[g1_idx]
        circuit = Circuit(n, (_gate_from(n, S1, row1), _gate_from(n, S2, row2, g1=True)))
    return _finish(f, SearchResult(n, 2, circuit, visited, evaluated, rejected))


def _finish(f: np.ndarray, result: SearchResult) -> SearchResult:
    c = result.circuit
    if c is not None:
        assert not validate(c), validate(c)
        assert np.array_equal(truth_table(c), f), "search returned a circuit with the wrong table"
    return result


def exists_circuit(f, s: int, budget: SearchBudget) -> Optional[Circuit]:
    """A circuit with at most s gates computing f, or None."""
    return search_circuits(f, s, budget).circuit


def complexity_report(f, budget: SearchBudget) -> ComplexityReport:
    results = []
    for s in range(1, budget.max_gates + 1):
        r = search_circuits(f, s, budget)
        results.append(r)
        if r.circuit is not None:
            return ComplexityReport(budget.n, budget.max_gates, s, r.circuit, tuple(results))
    return ComplexityReport(budget.n, budget.max_gates, None, None, tuple(results))


def min_complexity(f, budget: SearchBudget) -> Optional[int]:
    return complexity_report(f, budget).min_gates


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)
