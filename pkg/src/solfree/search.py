"""Exact maximum-avoiding-set search.

The solver answers r(n) = max  |A| over A subset of [1, n] avoiding the
equation, by depth-first branch and bound over elements in descending order.
Solving proceeds as a sweep m = 1, 2, ..., n so that every prefix value r(m)
is available; besides being the natural warm start, the prefix table is a
strong admissible bound, because any avoiding subset of [1, n] restricted to
[1, m] is an avoiding subset of [1, m].

The same engine runs three instance kinds: solution triples of ax+by=cz,
pair constraints of a degenerate two-variable equation, and congruence
triples modulo m (used for the modular densities).
"""
from __future__ import annotations

import random
import time
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .equations import IntSet, ThreeVarEquation, avoids, enumerate_solutions
from .errors import BudgetExceeded, InvariantViolation

_CANONICAL_NODE_CAP = 250_000  # budget for the optional lex-least witness pass


@dataclass
class ExtremalResult:
    """Outcome of one exact solve; ``optimal`` is False only when a budget was hit."""

    n: int
    size: int
    witness: IntSet
    optimal: bool
    nodes: int
    millis: int
    all_witnesses: list[IntSet] | None = None


@dataclass(frozen=True)
class ModularDensity:
    """Maximum density of residues in [1, m] with no solutions modulo m."""

    m: int
    rho: Fraction
    witness: IntSet  # residues, with m standing in for the zero class


@dataclass
class AllExtremal:
    n: int
    size: int
    sets: list[IntSet]
    truncated: bool


@dataclass(frozen=True)
class RatioRow:
    n: int
    size: int
    ratio: Fraction


@dataclass
class RatioTable:
    rows: list[RatioRow]
    monotone: bool  # r nondecreasing and r(n2) <= r(n1) + (n2 - n1) on the sorted rows


class _Exhausted(Exception):
    pass


class _CapHit(Exception):
    pass


class _RunState:
    __slots__ = ("nodes", "node_cap", "deadline")

    def __init__(self, node_cap: int | None = None, time_cap: float | None = None):
        self.nodes = 0
        self.node_cap = node_cap
        self.deadline = time.monotonic() + time_cap if time_cap else None


def cliques_for(eq: ThreeVarEquation, n: int) -> list[tuple[int, ...]]:
    """Distinct member sets of solutions inside [1, n], each of size 2 or 3."""
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    for sol in enumerate_solutions(eq, n):
        members = {sol.x, sol.z} if eq.b == 0 else {sol.x, sol.y, sol.z}
        key = tuple(sorted(members))
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def congruence_cliques(eq: ThreeVarEquation, m: int) -> list[tuple[int, ...]]:
    """Member sets of solutions modulo m over residues [1, m] (m is the zero class).

    Unlike the integer case these can be singletons, which simply ban a residue.
    """
    seen: set[tuple[int, ...]] = set()
    out: list[tuple[int, ...]] = []
    rng = range(1, m + 1)
    if eq.b == 0:
        for x in rng:
            for z in rng:
                if (eq.a * x - eq.c * z) % m == 0:
                    key = tuple(sorted({x, z}))
                    if key not in seen:
                        seen.add(key)
                        out.append(key)
        return out
    for x in rng:
        for y in rng:
            t = eq.a * x + eq.b * y
            for z in rng:
                if (t - eq.c * z) % m == 0:
                    key = tuple(sorted({x, y, z}))
                    if key not in seen:
                        seen.add(key)
                        out.append(key)
    return out


def element_cliques(eq: ThreeVarEquation, n: int) -> list[list[int]]:
    """For each element e in [1, n], bitmasks of the other members of every
    clique through e.  Bit i stands for element i+1.  Used by greedy builders."""
    table: list[list[int]] = [[] for _ in range(n + 1)]
    for cl in cliques_for(eq, n):
        full = 0
        for v in cl:
            full |= 1 << (v - 1)
        for v in cl:
            table[v].append(full & ~(1 << (v - 1)))
    return table


class _Core:
    """Branch-and-bound engine over a universe [1, size] with forbidden cliques."""

    def __init__(self, size: int, cliques: list[tuple[int, ...]]):
        self.size = size
        self.cliques = cliques
        min_others: list[list[int]] = [[] for _ in range(size + 1)]
        max_others: list[list[int]] = [[] for _ in range(size + 1)]
        elem_others: list[list[int]] = [[] for _ in range(size + 1)]
        # forced-exclusion triggers: once every member of a clique except the
        # smallest (resp. largest) is included, that last member is dead.
        force_down: list[list[tuple[int, int]]] = [[] for _ in range(size + 1)]
        force_up: list[list[tuple[int, int]]] = [[] for _ in range(size + 1)]
        for cl in cliques:
            full = 0
            for v in cl:
                full |= 1 << (v - 1)
            for v in cl:
                elem_others[v].append(full & ~(1 << (v - 1)))
            lo, hi = cl[0], cl[-1]
            min_others[lo].append(full & ~(1 << (lo - 1)))
            max_others[hi].append(full & ~(1 << (hi - 1)))
            if len(cl) == 1:
                continue
            mid = cl[1] if len(cl) == 3 else None
            if len(cl) == 2:
                force_down[hi].append((0, 1 << (lo - 1)))
                force_up[lo].append((0, 1 << (hi - 1)))
            else:
                force_down[mid].append((1 << (hi - 1), 1 << (lo - 1)))
                force_up[mid].append((1 << (lo - 1), 1 << (hi - 1)))
        self.min_others = min_others
        self.max_others = max_others
        self.elem_others = elem_others
        self.force_down = force_down
        self.force_up = force_up
        # residual-bound structures: cliques sorted by max element, plus a
        # per-element index and a mutable excluded-member counter
        order = sorted(range(len(cliques)), key=lambda i: (cliques[i][-1], cliques[i]))
        self.sorted_masks: list[int] = []
        self.sorted_maxes: list[int] = []
        by_elem_ids: list[list[int]] = [[] for _ in range(size + 1)]
        for pos, i in enumerate(order):
            cl = cliques[i]
            mask = 0
            for v in cl:
                mask |= 1 << (v - 1)
            self.sorted_masks.append(mask)
            self.sorted_maxes.append(cl[-1])
            for v in cl:
                by_elem_ids[v].append(pos)
        self.by_elem_ids = by_elem_ids
        self.excl = [0] * len(cliques)
        self.r: list[int] = [0]  # r[m] once solved
        self.wit: list[int] = [0]  # witness masks

    # -- seeding -----------------------------------------------------------

    def greedy(self, m: int, order) -> int:
        """Greedy avoiding mask over the given element order (any order is legal:
        a clique is caught when its last member comes up)."""
        inc = 0
        eo = self.elem_others
        for e in order:
            bit = 1 << (e - 1)
            ok = True
            for om in eo[e]:
                if om & inc == om:
                    ok = False
                    break
            if ok:
                inc |= bit
        return inc

    def _seed_masks(self, m: int):
        yield self.greedy(m, range(m, 0, -1))
        yield self.greedy(m, range(1, m + 1))
        for pass_no in (1, 2):
            order = list(range(1, m + 1))
            random.Random(m * 7919 + pass_no).shuffle(order)
            yield self.greedy(m, order)

    # -- exact solve of the next prefix -------------------------------------

    def advance(self, state: _RunState) -> None:
        m = len(self.r)
        best_mask = self.wit[m - 1]
        best_size = best_mask.bit_count()
        for g in self._seed_masks(m):
            if g.bit_count() > best_size:
                best_mask, best_size = g, g.bit_count()

        rt = self.r + [1 << 60]  # index m is the unbounded root
        min_others = self.min_others
        force_down = self.force_down
        by_elem_ids = self.by_elem_ids
        excl = self.excl
        sorted_masks = self.sorted_masks
        limit = bisect_right(self.sorted_maxes, m)  # cliques reaching above m cannot fire
        node_cap = state.node_cap
        deadline = state.deadline

        # Bounds at a node deciding e (undecided region [1, e]):
        #  * prefix table: at most r(e) more elements;
        #  * forced split: charge [1, j] to the table and (j, e] to the count
        #    of slots not yet provably dead, j = lowest forced element;
        #  * residual scan: every alive clique needs one more exclusion among
        #    its undecided members, so pairwise-disjoint residuals count.
        def dfs(e: int, size: int, inc: int, forced: int) -> None:
            nonlocal best_size, best_mask
            state.nodes += 1
            if node_cap is not None and state.nodes > node_cap:
                raise _Exhausted
            if deadline is not None and state.nodes & 4095 == 0 and time.monotonic() > deadline:
                raise _Exhausted
            if forced:
                j = (forced & -forced).bit_length() - 1
                split = rt[j] + (e - j) - forced.bit_count()
                bound = rt[e] if rt[e] < split else split
            else:
                bound = rt[e] if rt[e] < e else e
            if size + bound <= best_size:
                return
            if e == 0:
                best_size, best_mask = size, inc
                return
            thresh = e - (best_size - size)  # prune once this many disjoint residuals exist
            if 0 < thresh <= limit:
                # capped scan: survivors must not pay for the full clique list
                iters = (thresh << 2) + 64
                if iters > limit:
                    iters = limit
                region = (1 << e) - 1
                union = 0
                need = thresh
                for i in range(iters):
                    if not excl[i]:
                        res = sorted_masks[i] & region
                        if res and res & union == 0:
                            union |= res
                            need -= 1
                            if need == 0:
                                return
            legal = True
            for om in min_others[e]:
                if om & inc == om:
                    legal = False
                    break
            e1 = e - 1
            if legal:
                f2 = forced
                for high, low in force_down[e]:
                    if high & inc == high:
                        f2 |= low
                dfs(e1, size + 1, inc | (1 << e1), f2)
            ids = by_elem_ids[e]
            for i in ids:
                excl[i] += 1
            # drop e's own forced bit: it is decided now, not pending
            dfs(e1, size, inc, forced & ~(1 << e1))
            for i in ids:
                excl[i] -= 1

        try:
            dfs(m, 0, 0, 0)
        except _Exhausted:
            # the raise unwinds past the exclusion undos; scrub the counters
            for i in range(len(excl)):
                excl[i] = 0
            raise
        self.r.append(best_size)
        self.wit.append(best_mask)

    def solve_to(self, n: int, state: _RunState) -> None:
        while len(self.r) <= n:
            self.advance(state)

    # -- lexicographic enumeration of maximum sets --------------------------

    def enumerate_at(self, m: int, target: int, cap: int, state: _RunState):
        """Maximum sets of [1, m] in ascending lexicographic order, up to cap.

        Returns (masks, truncated).  Truncated means at least one more
        maximum set exists beyond the cap.
        """
        out: list[int] = []
        max_others = self.max_others
        force_up = self.force_up
        node_cap = state.node_cap
        deadline = state.deadline

        def edfs(e: int, size: int, inc: int, forced: int) -> None:
            state.nodes += 1
            if node_cap is not None and state.nodes > node_cap:
                raise _Exhausted
            if deadline is not None and state.nodes & 4095 == 0 and time.monotonic() > deadline:
                raise _Exhausted
            if size + (m - e + 1) - forced.bit_count() < target:
                return
            if e > m:
                out.append(inc)
                if len(out) > cap:
                    raise _CapHit
                return
            legal = True
            for om in max_others[e]:
                if om & inc == om:
                    legal = False
                    break
            if legal:
                f2 = forced
                for low, high in force_up[e]:
                    if low & inc == low and high >> m == 0:
                        f2 |= high
                edfs(e + 1, size + 1, inc | (1 << (e - 1)), f2)
            edfs(e + 1, size, inc, forced & ~(1 << (e - 1)))

        try:
            edfs(1, 0, 0, 0)
        except _CapHit:
            return out[:cap], True
        return out, False


class ExactSolver:
    """Per-equation solver that caches the prefix table r(1..n) and witnesses."""

    def __init__(self, eq: ThreeVarEquation):
        self.eq = eq
        self._core: _Core | None = None
        self._core_n = 0

    def core(self, n: int) -> _Core:
        if self._core is None or n > self._core_n:
            fresh = _Core(n, cliques_for(self.eq, n))
            if self._core is not None:
                # prefix results do not depend on the structure bound
                fresh.r = self._core.r
                fresh.wit = self._core.wit
            self._core = fresh
            self._core_n = n
        return self._core

    def solve_to(self, n: int, state: _RunState) -> _Core:
        core = self.core(n)
        core.solve_to(n, state)
        return core


_SOLVERS: dict[ThreeVarEquation, ExactSolver] = {}


def solver_for(eq: ThreeVarEquation) -> ExactSolver:
    solver = _SOLVERS.get(eq)
    if solver is None:
        solver = _SOLVERS[eq] = ExactSolver(eq)
    return solver


def _mask_to_set(n: int, mask: int) -> IntSet:
    return IntSet(n, tuple(i + 1 for i in range(n) if mask >> i & 1))


def max_avoiding(
    eq: ThreeVarEquation,
    n: int,
    *,
    node_cap: int | None = None,
    time_cap: float | None = None,
    canonical: bool = True,
) -> ExtremalResult:
    """Exact r(n) with a witness.

    When a budget is exceeded the best set found so far is returned with
    ``optimal=False``; the answer is then a lower bound, never wrong.
    With ``canonical`` the witness is re-derived as the lexicographically
    least maximum set, budget permitting.
    """
    if n < 1:
        raise InvariantViolation(f"n must be positive, got {n}")
    t0 = time.perf_counter()
    solver = solver_for(eq)
    state = _RunState(node_cap, time_cap)
    try:
        core = solver.solve_to(n, state)
    except _Exhausted:
        core = solver.core(n)
        best = 0
        solved = len(core.r) - 1
        if solved > 0:
            best = core.wit[solved]
        for g in core._seed_masks(n):
            if g.bit_count() > best.bit_count():
                best = g
        millis = int((time.perf_counter() - t0) * 1000)
        return ExtremalResult(n, best.bit_count(), _mask_to_set(n, best), False, state.nodes, millis)
    size = core.r[n]
    mask = core.wit[n]
    if canonical:
        cstate = _RunState(_CANONICAL_NODE_CAP, None)
        try:
            masks, _ = core.enumerate_at(n, size, 1, cstate)
            if masks:
                mask = masks[0]
        except _Exhausted:
            pass  # keep the search incumbent; size is certified either way
        state.nodes += cstate.nodes
    millis = int((time.perf_counter() - t0) * 1000)
    return ExtremalResult(n, size, _mask_to_set(n, mask), True, state.nodes, millis)


def all_extremal(
    eq: ThreeVarEquation,
    n: int,
    cap: int = 1000,
    *,
    node_cap: int | None = None,
    time_cap: float | None = None,
) -> AllExtremal:
    """All maximum avoiding subsets of [1, n] in lexicographic order, up to cap."""
    if cap < 1:
        raise InvariantViolation(f"cap must be positive, got {cap}")
    solver = solver_for(eq)
    state = _RunState(node_cap, time_cap)
    try:
        core = solver.solve_to(n, state)
        size = core.r[n]
        masks, truncated = core.enumerate_at(n, size, cap, state)
    except _Exhausted as exc:
        raise BudgetExceeded(f"budget exceeded enumerating extremal sets at n={n}") from exc
    return AllExtremal(n, size, [_mask_to_set(n, mk) for mk in masks], truncated)


def rho_m(
    eq: ThreeVarEquation,
    m: int,
    *,
    node_cap: int | None = None,
    time_cap: float | None = None,
) -> ModularDensity:
    """Exact maximum density of a residue set with no solutions modulo m."""
    if m < 1:
        raise InvariantViolation(f"m must be positive, got {m}")
    core = _Core(m, congruence_cliques(eq, m))
    state = _RunState(node_cap, time_cap)
    try:
        core.solve_to(m, state)
        masks, _ = core.enumerate_at(m, core.r[m], 1, state)
    except _Exhausted as exc:
        raise BudgetExceeded(f"budget exceeded computing rho_{m}") from exc
    mask = masks[0] if masks else 0
    return ModularDensity(m, Fraction(core.r[m], m), _mask_to_set(m, mask))


def rho_best(
    eq: ThreeVarEquation,
    m_max: int,
    *,
    node_cap: int | None = None,
    time_cap: float | None = None,
) -> ModularDensity:
    """Best modular density over moduli m <= m_max (a lower bound for rho)."""
    if m_max < 1:
        raise InvariantViolation(f"m_max must be positive, got {m_max}")
    best: ModularDensity | None = None
    for m in range(1, m_max + 1):
        cand = rho_m(eq, m, node_cap=node_cap, time_cap=time_cap)
        if best is None or cand.rho > best.rho:
            best = cand
    assert best is not None
    return best


def ratio_table(
    eq: ThreeVarEquation,
    ns,
    *,
    node_cap: int | None = None,
    time_cap: float | None = None,
) -> RatioTable:
    """Rows (n, r(n), r(n)/n) for each requested n, plus monotonicity diagnostics."""
    rows: list[RatioRow] = []
    for n in ns:
        res = max_avoiding(eq, n, node_cap=node_cap, time_cap=time_cap, canonical=False)
        if not res.optimal:
            raise BudgetExceeded(f"budget exceeded at n={n}; table would not be exact")
        rows.append(RatioRow(n, res.size, Fraction(res.size, n)))
    ordered = sorted(rows, key=lambda r: r.n)
    monotone = all(
        ordered[i].size <= ordered[i + 1].size
        and ordered[i + 1].size <= ordered[i].size + (ordered[i + 1].n - ordered[i].n)
        for i in range(len(ordered) - 1)
    )
    return RatioTable(rows, monotone)


def random_avoiding_set(eq: ThreeVarEquation, n: int, rng: random.Random) -> IntSet:
    """One randomized-greedy avoiding subset of [1, n] (shuffled element order)."""
    solver = solver_for(eq)
    core = solver.core(n)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    mask = core.greedy(n, order)
    if mask >> n:
        mask &= (1 << n) - 1  # structure may be built for a larger bound
    return _mask_to_set(n, mask)


def random_avoiding_sets(eq: ThreeVarEquation, n: int, count: int, seed: int = 0) -> list[IntSet]:
    rng = random.Random(seed)
    out = [random_avoiding_set(eq, n, rng) for _ in range(count)]
    for A in out:
        check = avoids(eq, A)
        if not check.ok:  # pragma: no cover - greedy is avoiding by construction
            raise AssertionError(f"greedy generator produced a non-avoiding set: {check.violation}")
    return out
