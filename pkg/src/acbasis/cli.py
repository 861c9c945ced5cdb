"""Command-line interface.

Exit codes: 0 ok, 1 check failed, 2 usage, 3 parse error, 4 precondition
(circuit does not compute the named function), 5 internal invariant violation.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import adversary, circuit, oracle, synth
from .cube import BitTuple, majority_table, parity_table, table_from_string, table_to_string
from .errors import (CapacityError, DimensionError, InvalidCircuitError, InvariantViolation,
                     NotTargetFunctionError, ParseError)

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_PARSE, EXIT_PRECOND, EXIT_INTERNAL = range(6)


class UsageError(Exception):
    pass


def _parse_layers(text: str) -> frozenset[int]:
    try:
        return frozenset(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise UsageError(f"bad layer list {text!r}") from None


def _parse_range(text: str) -> tuple[int, int]:
    parts = text.split("..")
    if len(parts) != 2 or not all(p.strip().isdigit() for p in parts):
        raise UsageError(f"bad range {text!r}, expected A..B")
    a, b = int(parts[0]), int(parts[1])
    if not 1 <= a <= b <= 64:
        raise UsageError(f"range {a}..{b} must satisfy 1 <= A <= B <= 64")
    return a, b


def _load(path: str) -> circuit.Circuit:
    try:
        return circuit.load_circuit(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def cmd_synth(args) -> int:
    n = args.n
    if not 1 <= n <= synth.MAX_SYNTH_INPUTS:
        raise UsageError(f"--n must be in 1..{synth.MAX_SYNTH_INPUTS}")
    if args.func == "parity":
        c = synth.build_parity_circuit(n)
    elif args.func == "majority":
        c = synth.build_majority_circuit(n)
    elif args.func == "layered-parity":
        if n < 2:
            raise UsageError("layered-parity needs --n >= 2")
        c = synth.build_layered_parity_circuit(n)
    else:
        if not args.layers:
            raise UsageError("--func symmetric requires --layers")
        try:
            plan = synth.LayerPlan(n, _parse_layers(args.layers))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        c = synth.build_symmetric_circuit(plan)
    if args.output:
        circuit.save_circuit(c, args.output)
    print(f"gates: {c.size}")
    return EXIT_OK


def cmd_eval(args) -> int:
    c = _load(args.circuit)
    try:
        a = BitTuple.from_string(args.input)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    values, out = circuit.evaluate(c, a)
    for k, v in enumerate(values, start=1):
        print(f"h{k} = {v}")
    print(f"out = {out}")
    return EXIT_OK


def cmd_validate(args) -> int:
    c = _load(args.circuit)
    problems = circuit.validate(c)
    for v in problems:
        print(v)
    if problems:
        return EXIT_CHECK
    print(f"valid: {c.inputs} inputs, {c.size} gates")
    if args.func:
        target = parity_table(c.inputs) if args.func == "parity" else majority_table(c.inputs)
        if not np.array_equal(circuit.truth_table(c), target):
            print(f"circuit does not compute {args.func}")
            return EXIT_CHECK
        print(f"computes {args.func}")
    if args.table:
        print(f"table: {table_to_string(circuit.truth_table(c))}")
    return EXIT_OK


def cmd_certify(args) -> int:
    c = _load(args.circuit)
    try:
        cert = adversary.run_adversary(c, args.func)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        for line in exc.transcript:
            print(line, file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        adversary.save_certificate(cert, args.output)
    print(f"bound: {cert.claimed_bound}")
    print(f"gates: {c.size}")
    if cert.claimed_bound == c.size:
        print("tight")
    return EXIT_OK


def cmd_check_cert(args) -> int:
    c = _load(args.circuit)
    try:
        cert = adversary.load_certificate(args.cert)
    except OSError as exc:
        raise UsageError(f"cannot read {args.cert}: {exc}") from None
    result = adversary.check_certificate(c, cert)
    if result.ok:
        print(f"certificate OK: L >= {result.bound}")
        return EXIT_OK
    for d in result.diagnostics:
        print(d)
    return EXIT_CHECK


def cmd_search(args) -> int:
    if args.table:
        try:
            f = table_from_string(args.table)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        n = len(f).bit_length() - 1
        if args.n is not None and args.n != n:
            raise UsageError(f"--n {args.n} does not match a table of {n} inputs")
        label = "f"
    else:
        if not args.func or args.n is None:
            raise UsageError("search needs --func with --n, or --table")
        n = args.n
        f = None
        label = f"{args.func[0]}_{n}"
    try:
        budget = oracle.SearchBudget(n, args.max_gates, args.jobs or oracle.default_jobs(), args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if f is None:
        f = parity_table(n) if args.func == "parity" else majority_table(n)
    report = oracle.complexity_report(f, budget)
    print(report.summary())
    if report.min_gates is None:
        print(f"no circuit with <= {args.max_gates} gates; L({label}) >= {args.max_gates + 1}")
    else:
        print(f"min gates: {report.min_gates}")
        if args.output:
            circuit.save_circuit(report.circuit, args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    a, b = _parse_range(args.n_range)
    print(f"{'n':>3} {'L(p_n)':>7} {'L(m_n)':>7} {'lower':>6} {'upper':>6}")
    for n in range(a, b + 1):
        lp = synth.parity_gate_count(n)
        lm = synth.majority_gate_count(n)
        lower, upper = lm, n  # upper bound L(n) <= n is quoted from prior work
        assert lower <= upper
        print(f"{n:>3} {lp:>7} {lm:>7} {lower:>6} {upper:>6}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="acbasis", description="Circuits over the antichain basis.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("synth", help="build an optimal circuit")
    s.add_argument("--func", required=True, choices=["parity", "majority", "layered-parity", "symmetric"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--layers", help="comma-separated layer list for --func symmetric")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_synth)

    s = sub.add_parser("eval", help="evaluate a circuit on one input")
    s.add_argument("--circuit", required=True)
    s.add_argument("--input", required=True)
    s.set_defaults(run=cmd_eval)

    s = sub.add_parser("validate", help="check circuit invariants")
    s.add_argument("--circuit", required=True)
    s.add_argument("--func", choices=["parity", "majority"])
    s.add_argument("--table", action="store_true", help="print the truth table bitstring")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("certify", help="run the lower-bound adversary")
    s.add_argument("--circuit", required=True)
    s.add_argument("--func", required=True, choices=list(adversary.TARGETS))
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_certify)

    s = sub.add_parser("check-cert", help="validate a certificate against a circuit")
    s.add_argument("--circuit", required=True)
    s.add_argument("--cert", required=True)
    s.set_defaults(run=cmd_check_cert)

    s = sub.add_parser("search", help="exhaustive minimum-circuit search (n <= 4, s <= 2)")
    s.add_argument("--func", choices=["parity", "majority"])
    s.add_argument("--table")
    s.add_argument("--n", type=int)
    s.add_argument("--max-gates", type=int, default=2)
    s.add_argument("--jobs", type=int, default=0, help="worker processes (default: all cores)")
    s.add_argument("--seed", type=int, default=oracle.DEFAULT_SEED)
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_search)

    s = sub.add_parser("bounds", help="print the complexity table")
    s.add_argument("--n-range", default="1..16")
    s.set_defaults(run=cmd_bounds)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DimensionError, CapacityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotTargetFunctionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECOND
    except InvalidCircuitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECOND
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
