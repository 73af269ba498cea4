#!/usr/bin/env python3
"""Sweep r(n)/n for an equation and compare the exact values against every
construction the library knows, printing one table row per n.

Example:
    python scripts/density_tables.py --eq "2x+2y=5z" --n-max 36
    python scripts/density_tables.py --eq "x+2y=13z" --n-max 60 --k-max 4
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from solfree.constructions import best_multi_interval, residue_set, top_interval
from solfree.equations import parse_equation
from solfree.errors import QDividesS
from solfree.family2 import family2_extremal
from solfree.search import max_avoiding, rho_best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eq", required=True)
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--k-max", type=int, default=4)
    ap.add_argument("--q", type=int, default=3, help="modulus for the residue construction")
    ap.add_argument("--m-max", type=int, default=12)
    args = ap.parse_args()

    eq = parse_equation(args.eq)
    form = eq.linear_form()
    density = rho_best(eq, args.m_max)
    print(f"equation {eq}   best modular density rho_m = {density.rho} at m = {density.m}")
    print(f"{'n':>4} {'exact':>6} {'ratio':>10} {'top':>5} {'multi':>6} {'residue':>8} {'closed':>7}")
    for n in range(1, args.n_max + 1):
        exact = max_avoiding(eq, n, canonical=False).size
        top = top_interval(form, n).size
        multi = best_multi_interval(form, n, args.k_max)[1].size
        try:
            residue = residue_set(form, args.q, n).size
        except QDividesS:
            residue = "-"
        closed = "-"
        if eq.family.value == "II" and eq.a > 1:
            closed = family2_extremal(eq.a, eq.c, n).size
        ratio = Fraction(exact, n)
        print(f"{n:>4} {exact:>6} {str(ratio):>10} {top:>5} {multi:>6} {residue!s:>8} {closed!s:>7}")


if __name__ == "__main__":
    main()
