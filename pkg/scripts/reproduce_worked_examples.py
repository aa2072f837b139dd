#!/usr/bin/env python3
"""Run the two worked channel-count analyses and print their reports.

The four-party function x1*x2*x3 + x3*x4 + x1 is amplifiable: one channel
instead of three, verified end to end.  The six-party function
x1*x2 + x2*x3 + x4*x5*x6 + x5 splits into two blocks and is not.
"""

from fractions import Fraction

from nsboxes.boolfn import parse_expr
from nsboxes.commcost import report_text


def main():
    four = parse_expr("x1*x2*x3 + x3*x4 + x1", 4)
    print(report_text(four, verify_eps=Fraction(1, 2), verify_steps=2))
    six = parse_expr("x1*x2 + x2*x3 + x4*x5*x6 + x5", 6)
    print(report_text(six))


if __name__ == "__main__":
    main()
