"""Constructive lower bounds: residue classes, top intervals, multi-interval
sets built from the shrinking recurrence, two-variable chain greedy sets, and
the cube-valuation sets that beat the two-interval density at c = b*b.

Every constructor re-verifies its output through the avoidance checker when
the form corresponds to a two- or three-variable equation (``check=False``
skips the guard, which is quadratic in the set size).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .equations import IntSet, LinearForm, ThreeVarEquation, avoids, equation_from_form, normalize
from .errors import AvoidanceCheckFailed, Infeasible, InvariantViolation, QDividesS

_FIXED_POINT_CAP = 1000  # downward iteration shrinks xi every step, so this is generous


@dataclass(frozen=True)
class Interval:
    """Integer interval with inclusive right end; ``closed_lo`` picks [lo, hi] vs (lo, hi]."""

    lo: int
    hi: int
    closed_lo: bool = True

    @property
    def first(self) -> int:
        return self.lo if self.closed_lo else self.lo + 1

    @property
    def length(self) -> int:
        return max(0, self.hi - self.first + 1)

    def members(self) -> range:
        return range(self.first, self.hi + 1)

    def to_json_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "closed_lo": self.closed_lo}


@dataclass(frozen=True)
class StructuredSet:
    """Symbolic union of disjoint intervals plus removed/added singletons."""

    n: int
    intervals: tuple[Interval, ...]
    removed: tuple[int, ...] = ()
    added: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.intervals, key=lambda iv: iv.first))
        object.__setattr__(self, "intervals", ordered)
        object.__setattr__(self, "removed", tuple(sorted(self.removed)))
        object.__setattr__(self, "added", tuple(sorted(self.added)))
        covered: set[int] = set()
        for iv in ordered:
            if iv.length and not (1 <= iv.first and iv.hi <= self.n):
                raise InvariantViolation(f"interval {iv} escapes [1, {self.n}]")
            mem = set(iv.members())
            if covered & mem:
                raise InvariantViolation("intervals must be pairwise disjoint")
            covered |= mem
        if not set(self.removed) <= covered:
            raise InvariantViolation("removed singletons must lie inside the intervals")
        if set(self.added) & covered:
            raise InvariantViolation("added singletons must lie outside the intervals")
        if any(not (1 <= x <= self.n) for x in self.added):
            raise InvariantViolation(f"added singletons escape [1, {self.n}]")

    def materialize(self) -> IntSet:
        out: set[int] = set(self.added)
        for iv in self.intervals:
            out.update(iv.members())
        out.difference_update(self.removed)
        return IntSet.of(self.n, out)

    @property
    def size(self) -> int:
        return sum(iv.length for iv in self.intervals) - len(self.removed) + len(self.added)

    def to_json_dict(self) -> dict:
        return {
            "intervals": [iv.to_json_dict() for iv in self.intervals],
            "removed": list(self.removed),
            "added": list(self.added),
            "size": self.size,
        }


def _guard(form: LinearForm, A: IntSet, label: str, check: bool) -> None:
    if not check:
        return
    eq = equation_from_form(form)
    if eq is None:
        return  # no checker for forms in more than three variables
    result = avoids(eq, A)
    if not result.ok:
        raise AvoidanceCheckFailed(f"{label} produced {result.violation} for {eq}")


def residue_set(form: LinearForm, q: int, n: int, *, check: bool = True) -> IntSet:
    """The class {x in [1, n] : x = 1 mod q}; avoiding because the coefficient
    sum s is not divisible by q."""
    if q < 2:
        raise InvariantViolation(f"q must be at least 2, got {q}")
    if n < 1:
        raise InvariantViolation(f"n must be positive, got {n}")
    if abs(form.s) % q == 0:
        raise QDividesS(f"q={q} divides s={form.s}")
    A = IntSet.of(n, range(1, n + 1, q))
    _guard(form, A, "residue_set", check)
    return A


def top_interval(form: LinearForm, n: int, *, check: bool = True) -> IntSet:
    """The interval (s_minus/s_plus * n, n], via the integer test s_plus*x > s_minus*n."""
    if n < 1:
        raise InvariantViolation(f"n must be positive, got {n}")
    form = normalize(form)
    lo = form.s_minus * n // form.s_plus
    A = IntSet.of(n, range(lo + 1, n + 1))
    _guard(form, A, "top_interval", check)
    return A


def _interval_sequence(form: LinearForm, n: int, k: int, xi: int) -> list[int]:
    """n_1..n_k, each maximal under s_plus^2 * n_{j+1} <= a*s_minus*n_j + (s_minus - a)*xi*s_plus."""
    sp, sm, a = form.s_plus, form.s_minus, form.a_min
    seq = [n]
    for _ in range(k - 1):
        nxt = (a * sm * seq[-1] + (sm - a) * xi * sp) // (sp * sp)
        if nxt < 1:
            raise Infeasible(f"interval sequence dies at length {len(seq)} (k={k}, xi={xi})")
        seq.append(nxt)
    return seq


def _canonical_xi(form: LinearForm, n: int, k: int) -> tuple[int, list[int]]:
    """Greatest fixed point of xi -> 1 + floor(s_minus * n_k(xi) / s_plus).

    The map is monotone, so iterating downward from the k = 1 value converges;
    starting from below can stall on a smaller, worse fixed point.
    """
    sp, sm = form.s_plus, form.s_minus
    xi = 1 + sm * n // sp
    for _ in range(_FIXED_POINT_CAP):
        seq = _interval_sequence(form, n, k, xi)
        nxt = 1 + sm * seq[-1] // sp
        if nxt == xi:
            return xi, seq
        xi = nxt
    raise Infeasible(f"fixed-point iteration did not settle for k={k}")  # pragma: no cover


def multi_interval(
    form: LinearForm, n: int, k: int, xi: int | None = None, *, check: bool = True
) -> StructuredSet:
    """Union of k shrinking intervals: (s_minus/s_plus * n_j, n_j] for j < k
    plus the tail [xi, n_k].  With xi omitted, the canonical fixed-point value
    xi = 1 + floor(s_minus * n_k / s_plus) is used."""
    if k < 1:
        raise InvariantViolation(f"k must be positive, got {k}")
    if n < 1:
        raise InvariantViolation(f"n must be positive, got {n}")
    form = normalize(form)
    sp, sm = form.s_plus, form.s_minus
    if xi is None:
        xi, seq = _canonical_xi(form, n, k)
    else:
        seq = _interval_sequence(form, n, k, xi)
    nk = seq[-1]
    if not (sm * nk < xi * sp and xi <= nk):
        raise Infeasible(f"xi={xi} violates s_minus*n_k < xi*s_plus <= n_k*s_plus (n_k={nk})")
    intervals = [Interval(xi, nk, closed_lo=True)]
    for nj in reversed(seq[:-1]):
        intervals.append(Interval(sm * nj // sp, nj, closed_lo=False))
    out = StructuredSet(n, tuple(intervals))
    _guard(form, out.materialize(), "multi_interval", check)
    return out


def best_multi_interval(
    form: LinearForm, n: int, k_max: int, *, check: bool = True
) -> tuple[int, StructuredSet]:
    """Largest canonical-xi multi-interval set over 1 <= k <= k_max."""
    if k_max < 1:
        raise InvariantViolation(f"k_max must be positive, got {k_max}")
    best: tuple[int, StructuredSet] | None = None
    for k in range(1, k_max + 1):
        try:
            cand = multi_interval(form, n, k, check=check)
        except Infeasible:
            continue  # larger k only shrinks the tail further; keep scanning anyway
        if best is None or cand.size > best[1].size:
            best = (k, cand)
    if best is None:  # k = 1 is always feasible
        raise Infeasible(f"no feasible k in 1..{k_max}")  # pragma: no cover
    return best


def _chains(a: int, b: int, n: int) -> list[list[int]]:
    """Partition of [1, n] into orbits of x -> (a/b) x for the equation ax = by.

    An element starts a chain iff a does not divide it; the successor of x is
    a*x/b when b divides x.
    """
    chains = []
    for start in range(1, n + 1):
        if start % a == 0:
            continue
        chain = [start]
        x = start
        while x % b == 0:
            x = a * x // b
            if x > n:
                break
            chain.append(x)
        chains.append(chain)
    return chains


def two_var_extremal(a: int, b: int, n: int) -> tuple[int, IntSet]:
    """Extremal size and greedy witness for the two-variable equation ax = by.

    Each chain of length L contributes ceil(L / 2); the witness takes the
    alternating elements starting with the smallest of each chain.
    """
    if not (a > b >= 1):
        raise InvariantViolation(f"need a > b >= 1, got a={a}, b={b}")
    if gcd(a, b) != 1:
        raise InvariantViolation(f"gcd({a},{b}) must be 1")
    if n < 1:
        raise InvariantViolation(f"n must be positive, got {n}")
    members: list[int] = []
    total = 0
    for chain in _chains(a, b, n):
        total += (len(chain) + 1) // 2
        members.extend(chain[::2])
    A = IntSet.of(n, members)
    assert A.size == total
    # pair guard: no member may have its (a/b)-successor in the set
    for x in A.members:
        if x % b == 0:
            y = a * x // b
            if y <= n and y in A:  # pragma: no cover - construction bug guard
                raise AvoidanceCheckFailed(f"two_var_extremal kept the pair ({x}, {y})")
    return total, A


def ab_set(b: int, n: int, *, check: bool = True) -> tuple[IntSet, Fraction]:
    """The set {u * b^(3i) : b does not divide u} inside [1, n], together with
    its asymptotic density b^2 / (b^2 + b + 1).  Avoids x + b y = b^2 z."""
    if b < 2:
        raise InvariantViolation(f"b must be at least 2, got {b}")
    if n < 1:
        raise InvariantViolation(f"n must be positive, got {n}")
    members: list[int] = []
    power = 1
    step = b ** 3
    while power <= n:
        members.extend(u * power for u in range(1, n // power + 1) if u % b != 0)
        power *= step
    A = IntSet.of(n, members)
    density = Fraction(b * b, b * b + b + 1)
    if check:
        result = avoids(ThreeVarEquation(1, b, b * b), A)
        if not result.ok:  # pragma: no cover - construction bug guard
            raise AvoidanceCheckFailed(f"ab_set({b}, {n}) contains {result.violation}")
    return A, density
