"""Print every transcribed matrix next to its recomputation and report mismatches."""

import argparse
import sys

from zeropascal.suites import fixture_tokens, golden_checks, load_fixture


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--show", action="store_true", help="also print each fixture")
    args = parser.parse_args()
    if args.show:
        for name in ("block_phi_q2", "block_phi_q3", "pauli", "fractal_q2", "lagrange_pair_product",
                     "bell_pair_product", "exp_block_pseudo_involution"):
            rows = fixture_tokens(name)
            width = max(len(t) for r in rows for t in r)
            print(f"# {load_fixture(name)['name']} ({len(rows)} rows)")
            for r in rows:
                print(" ".join(t.rjust(width) for t in r))
            print()
    checks = golden_checks()
    for c in checks:
        print(f"{'ok  ' if c.passed else 'FAIL'} {c.name}" + (f"  {c.detail}" if c.detail else ""))
    bad = sum(not c.passed for c in checks)
    print(f"{len(checks) - bad}/{len(checks)} checks pass")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
