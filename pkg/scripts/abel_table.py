"""Tabulate both sides of the digit Abel identities."""

import argparse
from fractions import Fraction

from zeropascal.rgroup import abel_entries


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=2)
    parser.add_argument("--nmax", type=int, default=8)
    parser.add_argument("--phi", type=Fraction, default=Fraction(1))
    parser.add_argument("--beta", type=Fraction, default=Fraction(1))
    args = parser.parse_args()
    print(f"{'identity':<15} {'n':>3} {'lhs':>24} {'rhs':>24}  ok")
    for n in range(args.nmax + 1):
        for e in abel_entries(args.q, n, args.phi, args.beta):
            print(f"{e.identity:<15} {n:>3} {str(e.lhs):>24} {str(e.rhs):>24}  {'y' if e.passed else 'n'}")


if __name__ == "__main__":
    main()
