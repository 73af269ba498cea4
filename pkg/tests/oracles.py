"""Independent oracles used by the tests.

These deliberately share no code with the package's solver: solutions come
from a cubic triple loop and maxima from a full 2^n subset scan, so that the
branch-and-bound results are checked through a second route.
"""
from __future__ import annotations

from solfree.equations import IntSet, Solution, ThreeVarEquation


def brute_solutions(eq: ThreeVarEquation, n: int) -> list[Solution]:
    """Every solution triple, by exhaustive loops over [1, n]^3 (or [1, n]^2)."""
    out = []
    if eq.b == 0:
        for x in range(1, n + 1):
            for z in range(1, n + 1):
                if eq.a * x == eq.c * z:
                    out.append(Solution(x, 0, z))
        return out
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            for z in range(1, n + 1):
                if eq.a * x + eq.b * y == eq.c * z:
                    out.append(Solution(x, y, z))
    return out


def _clique_masks_by_max(eq: ThreeVarEquation, n: int) -> list[list[int]]:
    by_max: list[list[int]] = [[] for _ in range(n + 1)]
    seen = set()
    for sol in brute_solutions(eq, n):
        members = tuple(sorted({sol.x, sol.z} if eq.b == 0 else {sol.x, sol.y, sol.z}))
        if members in seen:
            continue
        seen.add(members)
        full = 0
        for v in members:
            full |= 1 << (v - 1)
        by_max[members[-1]].append(full & ~(1 << (members[-1] - 1)))
    return by_max


def avoiding_mask_table(eq: ThreeVarEquation, n: int) -> bytearray:
    """ok[S] = 1 iff the subset encoded by bitmask S avoids the equation.

    Subset-DP: S avoids iff S minus its largest element avoids and adding
    that element back completes no solution clique.
    """
    by_max = _clique_masks_by_max(eq, n)
    ok = bytearray(1 << n)
    ok[0] = 1
    for S in range(1, 1 << n):
        h = S.bit_length()  # largest element of S
        rest = S & ~(1 << (h - 1))
        if not ok[rest]:
            continue
        good = 1
        for others in by_max[h]:
            if others & rest == others:
                good = 0
                break
        ok[S] = good
    return ok


def exhaustive_max(eq: ThreeVarEquation, n: int) -> tuple[int, list[int]]:
    """(r(n), every maximum avoiding subset as a bitmask, ascending)."""
    ok = avoiding_mask_table(eq, n)
    best = 0
    masks: list[int] = [0]
    for S in range(1, 1 << n):
        if not ok[S]:
            continue
        pc = S.bit_count()
        if pc > best:
            best, masks = pc, [S]
        elif pc == best:
            masks.append(S)
    return best, masks


def all_avoiding_sets(eq: ThreeVarEquation, n: int) -> list[IntSet]:
    ok = avoiding_mask_table(eq, n)
    return [mask_to_set(n, S) for S in range(1 << n) if ok[S]]


def mask_to_set(n: int, mask: int) -> IntSet:
    return IntSet(n, tuple(i + 1 for i in range(n) if mask >> i & 1))


def brute_rho_numerator(eq: ThreeVarEquation, m: int) -> int:
    """Max size of R in [1, m] with no solutions mod m, by scanning all 2^m subsets."""
    best = 0
    for S in range(1 << m):
        members = [i + 1 for i in range(m) if S >> i & 1]
        if len(members) <= best:
            continue
        good = True
        if eq.b == 0:
            for x in members:
                for z in members:
                    if (eq.a * x - eq.c * z) % m == 0:
                        good = False
                        break
                if not good:
                    break
        else:
            for x in members:
                for y in members:
                    t = eq.a * x + eq.b * y
                    for z in members:
                        if (t - eq.c * z) % m == 0:
                            good = False
                            break
                    if not good:
                        break
                if not good:
                    break
        if good:
            best = len(members)
    return best
