"""Structure theory for equations x + b*y = c*z with b > 1.

For c large enough (the eligibility bound), the extremal avoiding subsets of
[1, n] collapse onto two intervals.  This module provides:

* the eligibility test and the exact two-interval density,
* the interval-compression transform that pushes any avoiding set into
  canonical interval form without losing size,
* location estimates for the smallest element of an extremal set,
* the finite list of two-interval extremal candidates for a given n,
* the solution-window deficiency count around any member of an avoiding set.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .equations import Family, IntSet, ThreeVarEquation, avoids
from .errors import (
    DegenerateDenominator,
    EmptyInput,
    IntervalOutOfRange,
    InvariantViolation,
    NotAvoiding,
    ScanFailed,
)


def eligible(b: int, c: int) -> bool:
    """True iff c*(b-1) > (b+1)*b^2, the regime where the two-interval
    classification applies."""
    if b < 2:
        raise InvariantViolation(f"b must be at least 2, got {b}")
    if c < 1:
        raise InvariantViolation(f"c must be positive, got {c}")
    return c * (b - 1) > (b + 1) * b * b


def interval_density(b: int, c: int) -> Fraction:
    """Density (c-b-1)(c^2-b^2+1) / (c (c^2 - b(b+1))) of the two-interval family."""
    den = c * (c * c - b * (b + 1))
    if den == 0:
        raise DegenerateDenominator(f"denominator vanishes for b={b}, c={c}")
    return Fraction((c - b - 1) * (c * c - b * b + 1), den)


def _family1_params(eq: ThreeVarEquation) -> tuple[int, int]:
    if eq.family is not Family.FAMILY_I:
        raise InvariantViolation(f"{eq} is not of the form x+by=cz with b>1")
    return eq.b, eq.c


@dataclass(frozen=True)
class MinElementStats:
    """Scale estimate and scan crossover for the smallest element of an
    extremal set; the crossover always lands in [predicted, predicted + 1]."""

    predicted: int  # floor((b+1)^2 n / (c (c^2 - b(b+1))))
    crossover: int  # least s with l2(s) < s


def min_element_stats(n: int, b: int, c: int) -> MinElementStats:
    if not eligible(b, c):
        raise InvariantViolation(f"(b, c) = ({b}, {c}) is outside the eligible range")
    if n < 1:
        raise InvariantViolation(f"n must be positive, got {n}")
    predicted = (b + 1) * (b + 1) * n // (c * (c * c - b * (b + 1)))
    l1 = (b + 1) * n // c
    for s in range(1, n + 1):
        r2 = (l1 + b * s) // c
        l2 = (b + 1) * r2 // c
        if l2 < s:
            return MinElementStats(predicted, s)
    raise ScanFailed(f"no crossover for n={n}, b={b}, c={c}")


@dataclass(frozen=True)
class CompressionTrace:
    """Stages of the interval-compression transform.

    r_seq holds r_1..r_{t+1} and l_seq holds l_1..l_t; stages are A_0..A_t.
    The final stage is [alpha, r_t] followed by the blocks (l_j, r_j].
    """

    n: int
    s: int
    r_seq: tuple[int, ...]
    l_seq: tuple[int, ...]
    t: int
    stages: tuple[IntSet, ...]
    alpha: int

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(stage.size for stage in self.stages)


def interval_compression(eq: ThreeVarEquation, A: IntSet) -> CompressionTrace:
    """Push an avoiding set into canonical interval form, stage by stage.

    Stage i replaces everything in (r_{i+1}, r_i] by the block
    [max(l_i + 1, s), r_i]; every stage stays avoiding and never shrinks.
    """
    b, c = _family1_params(eq)
    if c <= b + 1:
        raise InvariantViolation(f"compression needs c > b+1, got b={b}, c={c}")
    if A.size == 0:
        raise EmptyInput("the transform needs a nonempty set")
    ok, violation = avoids(eq, A)
    if not ok:
        raise NotAvoiding(f"input contains the solution {violation}")
    n = A.n
    s = A.min()
    r_seq = [n]
    l_seq: list[int] = []
    stages = [A]
    current = set(A.members)
    t = 0
    while True:
        r_i = r_seq[-1]
        l_i = (b + 1) * r_i // c
        r_next = (l_i + b * s) // c
        l_seq.append(l_i)
        r_seq.append(r_next)
        current = {x for x in current if not (r_next < x <= l_i)}
        current.update(range(max(l_i + 1, s), r_i + 1))
        stage = IntSet.of(n, current)
        stages.append(stage)
        t += 1
        if r_next < s:
            break
        if t > n + 1:  # pragma: no cover - cannot happen for c > b+1
            raise ScanFailed("compression failed to terminate")
    for stage in stages[1:]:
        ok, violation = avoids(eq, stage)
        if not ok:  # pragma: no cover - transform bug guard
            raise NotAvoiding(f"compression stage lost avoidance at {violation}")
    alpha = max(l_seq[-1] + 1, s)
    return CompressionTrace(n, s, tuple(r_seq), tuple(l_seq), t, tuple(stages), alpha)


@dataclass(frozen=True)
class TwoIntervalCandidate:
    """One candidate extremal set: a low block near s and a high block near n."""

    s: int
    low_variant: str
    low: tuple[int, int]
    low_removed: tuple[int, ...]
    high_variant: str
    high: tuple[int, int]
    high_removed: tuple[int, ...]
    xi: tuple[tuple[str, int], ...]
    members: IntSet

    @property
    def size(self) -> int:
        return self.members.size

    def to_json_dict(self) -> dict:
        return {
            "s": self.s,
            "I2": {"variant": self.low_variant, "lo": self.low[0], "hi": self.low[1]},
            "I1": {"variant": self.high_variant, "lo": self.high[0], "hi": self.high[1]},
            "xi": dict(self.xi),
            "size": self.size,
            "avoids": True,
        }


def _materialize_candidate(
    low: tuple[int, int],
    low_removed: tuple[int, ...],
    high: tuple[int, int],
    high_removed: tuple[int, ...],
) -> set[int]:
    out = set(range(low[0], low[1] + 1))
    out.difference_update(low_removed)
    out.update(range(high[0], high[1] + 1))
    out.difference_update(high_removed)
    return out


def extremal_candidates(n: int, b: int, c: int) -> list[TwoIntervalCandidate]:
    """All consistent two-interval candidates over the smallest-element window.

    The window [max(1, S - c), S + 2] is deliberately wider than the location
    estimate needs, scanning is cheap.  Every emitted candidate has been
    checked to avoid the equation and to match its own membership labels.
    """
    stats = min_element_stats(n, b, c)
    eq = ThreeVarEquation(1, b, c)
    l1 = (b + 1) * n // c
    out: list[TwoIntervalCandidate] = []
    for s in range(max(1, stats.predicted - c), stats.predicted + 3):
        if s > n:
            break
        r2 = (l1 + b * s) // c
        l2 = (b + 1) * r2 // c
        low_variants: list[tuple[str, tuple[int, int], tuple[int, ...], dict[str, int]]] = []
        if s >= stats.crossover:
            low_variants.append(("closed", (s, r2), (), {}))
            low_variants.append(("extended", (s, r2 + 1), (), {}))
        else:
            low_variants.append(("trimmed", (s, r2 - 1), (), {}))
            xi1 = (b + 1) * r2 - c * l2
            if 1 <= xi1 <= b and s <= r2 - xi1 <= r2:
                low_variants.append(("punctured", (s, r2), (r2 - xi1,), {"xi1": xi1}))
        for low_variant, low, low_removed, low_xi in low_variants:
            has_top = low[1] >= low[0] and low[1] == r2 + 1
            high_variants: list[tuple[str, tuple[int, int], tuple[int, ...], dict[str, int]]] = []
            if not has_top:
                high_variants.append(("open", (l1 + 1, n), (), {}))
                xi2 = (b + 1) * n - c * l1
                if l1 >= 1 and 0 <= xi2 <= n and l1 < n - xi2 <= n:
                    high_variants.append(("closed", (l1, n), (n - xi2,), {"xi2": xi2}))
            else:
                xi3 = c * (r2 + 1) - b * s - l1
                if 1 <= xi3 <= n and l1 + xi3 <= n:
                    high_variants.append(("open-punctured", (l1 + 1, n), (l1 + xi3,), {"xi3": xi3}))
                xi4 = c * (r2 + 1) - b * s - l1
                xi5 = (b + 1) * n - c * l1
                if l1 >= 1 and 1 <= xi4 <= b - 1 and 0 <= xi5 <= n and l1 < n - xi5 <= n:
                    high_variants.append(
                        ("closed-punctured", (l1, n), (l1 + xi4, n - xi5), {"xi4": xi4, "xi5": xi5})
                    )
            for high_variant, high, high_removed, high_xi in high_variants:
                members = _materialize_candidate(low, low_removed, high, high_removed)
                if not members or min(members) != s or max(members) > n:
                    continue
                if ((r2 + 1) in members) != has_top:
                    continue
                if (l1 in members) != (high_variant in ("closed", "closed-punctured")):
                    continue
                A = IntSet.of(n, members)
                if not avoids(eq, A).ok:
                    continue
                xi = tuple(sorted({**low_xi, **high_xi}.items()))
                out.append(
                    TwoIntervalCandidate(
                        s, low_variant, low, low_removed, high_variant, high, high_removed, xi, A
                    )
                )
    return out


def best_candidate(n: int, b: int, c: int) -> TwoIntervalCandidate | None:
    cands = extremal_candidates(n, b, c)
    if not cands:
        return None
    return max(cands, key=lambda cand: (cand.size, -cand.s))


def solution_window_deficiency(eq: ThreeVarEquation, A: IntSet, z: int, d: int) -> int:
    """Count the elements missing from A in the solution window around c*z/(b+1).

    The window [x_d, y_d] packs d+1 disjoint solution pairs through z, so an
    avoiding set containing z must miss at least d+1 of its elements.
    """
    b, c = _family1_params(eq)
    if d < 0:
        raise InvariantViolation(f"d must be nonnegative, got {d}")
    if z not in A:
        raise InvariantViolation(f"z={z} is not a member of the set")
    ok, violation = avoids(eq, A)
    if not ok:
        raise NotAvoiding(f"input contains the solution {violation}")
    y_d = c * z // (b + 1) + 1 + d
    x_d = c * z - b * y_d
    if not (1 <= x_d <= y_d <= A.n):
        raise IntervalOutOfRange(f"window [{x_d}, {y_d}] escapes [1, {A.n}]")
    window = range(x_d, y_d + 1)
    return sum(1 for v in window if v not in A)
