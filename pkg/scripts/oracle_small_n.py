"""Exhaustive minimum-circuit search for parity and majority at n <= 4."""
import argparse
import time

from acbasis.cube import majority_table, parity_table
from acbasis.oracle import SearchBudget, complexity_report, default_jobs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jobs", type=int, default=default_jobs())
    ap.add_argument("--verbose", action="store_true", help="print visited/evaluated counts")
    args = ap.parse_args()
    for n in range(1, 5):
        for name, table in (("p", parity_table(n)), ("m", majority_table(n))):
            start = time.perf_counter()
            rep = complexity_report(table, SearchBudget(n, 2, args.jobs))
            found = f"= {rep.min_gates}" if rep.min_gates is not None else "> 2"
            print(f"L({name}_{n}) {found}   ({time.perf_counter() - start:.2f}s)")
            if args.verbose:
                print("  " + rep.summary().replace("\n", "\n  "))


if __name__ == "__main__":
    main()
