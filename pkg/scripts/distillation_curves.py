#!/usr/bin/env python3
"""Write boosting trajectories for 2..5 parties as CSV files.

Starting from eps = 1/2, iterate the two-copy boosting map and record the
exact weights; files land in the working directory as boost_n<k>.csv.
"""

from fractions import Fraction

from nsboxes.distill import iterate, trajectory_csv


def main():
    for n in range(2, 6):
        trajectory = iterate(n, Fraction(1, 2), 8)
        path = f"boost_n{n}.csv"
        with open(path, "w") as handle:
            handle.write(trajectory_csv(trajectory))
        final = trajectory.final
        print(f"n={n}: eps after 8 rounds = {final} (~{float(final):.6f}) -> {path}")


if __name__ == "__main__":
    main()
