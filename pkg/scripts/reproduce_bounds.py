"""Synthesize parity and majority circuits and certify them with the adversary.

Prints one row per n: gate counts, certified lower bounds and whether they meet.
"""
import argparse
import time

from acbasis.adversary import check_certificate, run_adversary, theorem_bound
from acbasis.synth import build_layered_parity_circuit, build_majority_circuit, build_parity_circuit


def row(n, layered):
    out = [n]
    builds = [("parity", build_parity_circuit), ("majority", build_majority_circuit)]
    if layered and n >= 2:
        builds.append(("parity", build_layered_parity_circuit))
    for fn, build in builds:
        c = build(n)
        cert = run_adversary(c, fn)
        assert check_certificate(c, cert).ok
        assert cert.claimed_bound >= theorem_bound(fn, n)
        out += [c.size, cert.claimed_bound]
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=14)
    ap.add_argument("--layered", action="store_true", help="also certify the non-tight layered parity circuit")
    args = ap.parse_args()
    head = ["n", "p gates", "p bound", "m gates", "m bound"]
    if args.layered:
        head += ["lp gates", "lp bound"]
    print("  ".join(f"{h:>8}" for h in head))
    start = time.perf_counter()
    for n in range(1, args.max_n + 1):
        print("  ".join(f"{v:>8}" for v in row(n, args.layered)))
    print(f"elapsed {time.perf_counter() - start:.2f}s")


if __name__ == "__main__":
    main()
