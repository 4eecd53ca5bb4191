#!/usr/bin/env python3
"""Truncation-height study of the period integrals.

Shows that the capped pairing is flat across a T-grid while the uncapped
integrals grow polynomially (the caps do the cancelling).
"""

import sys

sys.path.insert(0, "src")

from spectacle.periods import HolomorphicFormSpec, completed_L, spectacle_period


def main() -> None:
    grid = (3.0, 5.0, 10.0)
    for weight, k in ((4, 1), (8, 3)):
        form = HolomorphicFormSpec.eisenstein(weight)
        lam = completed_L(form, float(k + 1))
        print(f"\nweight {weight}: Lambda(k+1) = {lam:.12g}")
        print("  T1    T2    capped pairing      uncapped")
        for t1 in grid:
            for t2 in grid:
                full = spectacle_period(form, k, 0, t1, t2)
                bare = spectacle_period(form, k, 0, t1, t2, include_caps=False)
                print(f"  {t1:<5} {t2:<5} {full:+.12f}  {bare:+.3f}")


if __name__ == "__main__":
    main()
