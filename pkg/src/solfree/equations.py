"""Equations ax+by=cz, their solutions inside [1,n], and the avoidance checker.

Every other module funnels its output through :func:`avoids`; this module is
deliberately small, exact (integer arithmetic only) and free of search logic.

Conventions
-----------
* An equation is stored with positive a, b, c.  Its linear-form view is the
  coefficient vector (a, b, -c), which :func:`normalize` orients so that the
  positive coefficients outweigh the negative ones.
* Solutions are ordered triples (x, y, z) with the variables ranging
  independently over the set, so repeated values are allowed.  The constant
  triple x = y = z never solves a valid equation because a + b != c.
* A degenerate two-variable equation a*x = c*z (the y term absent) is carried
  with b = 0 and family ``TWO_VAR``; its solutions use y = 0 as a placeholder.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from math import gcd
from typing import NamedTuple

from .errors import InvariantViolation, MalformedEquation


class Family(Enum):
    """Coarse classification of ax+by=cz used to route the structure theory."""

    FAMILY_I = "I"  # a = 1 < b
    FAMILY_II = "II"  # a = b with gcd(b, c) = 1
    TWO_VAR = "two-var"  # degenerate pair constraint a*x = c*z
    OTHER = "other"


class Solution(NamedTuple):
    """One solution triple; y = 0 marks the unused slot of a two-variable equation."""

    x: int
    y: int
    z: int


@dataclass(frozen=True)
class LinearForm:
    """A homogeneous linear form sum(a_i * x_i) = 0 with nonzero integer coefficients.

    Mixed signs are mandatory (otherwise there are no positive solutions) and
    the gcd of the absolute values must be one.  ``s`` may be negative until
    the form is passed through :func:`normalize`.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        cs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", cs)
        if not cs or any(c == 0 for c in cs):
            raise InvariantViolation(f"coefficients must be nonzero: {cs!r}")
        g = 0
        for c in cs:
            g = gcd(g, abs(c))
        if g != 1:
            raise InvariantViolation(f"gcd of |coefficients| must be 1, got {g}")
        if all(c > 0 for c in cs) or all(c < 0 for c in cs):
            raise InvariantViolation("need at least one positive and one negative coefficient")
        if sum(cs) == 0:
            raise InvariantViolation("translation-invariant form (sum of coefficients is 0)")

    @property
    def s_plus(self) -> int:
        return sum(c for c in self.coeffs if c > 0)

    @property
    def s_minus(self) -> int:
        return sum(-c for c in self.coeffs if c < 0)

    @property
    def s(self) -> int:
        return self.s_plus - self.s_minus

    @property
    def a_min(self) -> int:
        """Smallest absolute value among the negative coefficients."""
        return min(-c for c in self.coeffs if c < 0)

    def negated(self) -> "LinearForm":
        return LinearForm(tuple(-c for c in self.coeffs))


def normalize(form: LinearForm) -> LinearForm:
    """Orient a form so that s_plus > s_minus.  Idempotent."""
    if form.s_plus > form.s_minus:
        return form
    return form.negated()


@dataclass(frozen=True)
class IntSet:
    """A finite subset of [1, n] with canonical ascending serialization."""

    n: int
    members: tuple[int, ...]
    _mset: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvariantViolation(f"bound must be positive, got {self.n}")
        ms = tuple(self.members)
        if any(not (1 <= x <= self.n) for x in ms):
            raise InvariantViolation(f"members must lie in [1, {self.n}]")
        if any(ms[i] >= ms[i + 1] for i in range(len(ms) - 1)):
            raise InvariantViolation("members must be strictly ascending")
        object.__setattr__(self, "members", ms)
        object.__setattr__(self, "_mset", frozenset(ms))

    @classmethod
    def of(cls, n: int, items) -> "IntSet":
        return cls(n, tuple(sorted(set(int(x) for x in items))))

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "IntSet":
        text = text.strip()
        items = [int(tok) for tok in text.split(",") if tok.strip()] if text else []
        bound = n if n is not None else (max(items) if items else 1)
        return cls.of(bound, items)

    def to_text(self) -> str:
        return ",".join(str(x) for x in self.members)

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset:
        return self._mset

    def __contains__(self, x: int) -> bool:
        return x in self._mset

    def __iter__(self):
        return iter(self.members)

    def min(self) -> int:
        return self.members[0]


@dataclass(frozen=True)
class ThreeVarEquation:
    """The equation a*x + b*y = c*z with positive coefficients.

    b = 0 encodes the degenerate two-variable equation a*x = c*z.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        a, b, c = self.a, self.b, self.c
        if self.b == 0:
            if a < 1 or c < 1:
                raise InvariantViolation("coefficients must be positive")
            if gcd(a, c) != 1:
                raise InvariantViolation(f"gcd({a},{c}) must be 1")
            if a == c:
                raise InvariantViolation("a*x = c*z with a = c is translation-invariant")
            return
        if a < 1 or b < 1 or c < 1:
            raise InvariantViolation("coefficients must be positive")
        if gcd(gcd(a, b), c) != 1:
            raise InvariantViolation(f"gcd({a},{b},{c}) must be 1")
        if a + b == c:
            raise InvariantViolation(f"{a}x+{b}y={c}z is translation-invariant (a+b=c)")

    @property
    def family(self) -> Family:
        if self.b == 0:
            return Family.TWO_VAR
        if self.a == 1 and self.b > 1:
            return Family.FAMILY_I
        if self.a == self.b and gcd(self.b, self.c) == 1:
            return Family.FAMILY_II
        return Family.OTHER

    def linear_form(self) -> LinearForm:
        """Normalized linear-form view; zero coefficients are dropped."""
        if self.b == 0:
            return normalize(LinearForm((self.a, -self.c)))
        return normalize(LinearForm((self.a, self.b, -self.c)))

    def __str__(self) -> str:
        def coef(v: int) -> str:
            return "" if v == 1 else str(v)

        if self.b == 0:
            return f"{coef(self.a)}x={coef(self.c)}z"
        return f"{coef(self.a)}x+{coef(self.b)}y={coef(self.c)}z"


_TERM = r"(-?\d*)\s*([xyz])"
_EQ_RE = re.compile(
    rf"^\s*{_TERM}\s*(?:\+\s*{_TERM}\s*)?=\s*{_TERM}\s*$"
)
_TRIPLE_RE = re.compile(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*$")


def _coef(tok: str) -> int:
    if tok in ("", "+"):
        return 1
    if tok == "-":
        return -1
    return int(tok)


def parse_equation(text: str) -> ThreeVarEquation:
    """Parse ``[k]x + [k]y = [k]z`` (coefficients default to 1) or a triple "a,b,c".

    A missing middle term, as in ``3x=2z``, yields the degenerate
    two-variable equation.  Syntax errors raise :class:`MalformedEquation`;
    structurally valid text with bad coefficients raises
    :class:`InvariantViolation`.
    """
    m = _TRIPLE_RE.match(text)
    if m:
        a, b, c = (int(m.group(i)) for i in (1, 2, 3))
        if a <= 0 or b < 0 or c <= 0:
            raise InvariantViolation(f"nonpositive coefficient in {text!r}")
        return ThreeVarEquation(a, b, c)
    m = _EQ_RE.match(text)
    if not m:
        raise MalformedEquation(f"cannot parse equation {text!r}")
    c1, v1, c2, v2, c3, v3 = m.groups()
    if v2 is None:
        # two terms only: a pair constraint
        if v1 == v3:
            raise MalformedEquation(f"repeated variable in {text!r}")
        a, c = _coef(c1), _coef(c3)
        if a <= 0 or c <= 0:
            raise InvariantViolation(f"nonpositive coefficient in {text!r}")
        return ThreeVarEquation(a, 0, c)
    if (v1, v2, v3) != ("x", "y", "z"):
        raise MalformedEquation(f"expected variables in x, y, z order in {text!r}")
    a, b, c = _coef(c1), _coef(c2), _coef(c3)
    if a <= 0 or b <= 0 or c <= 0:
        raise InvariantViolation(f"nonpositive coefficient in {text!r}")
    return ThreeVarEquation(a, b, c)


def enumerate_solutions(eq: ThreeVarEquation, n: int) -> list[Solution]:
    """All solutions with variables in [1, n], in lexicographic (x, y, z) order."""
    if n < 1:
        raise InvariantViolation(f"n must be positive, got {n}")
    out: list[Solution] = []
    if eq.b == 0:
        a, c = eq.a, eq.c
        for x in range(1, n + 1):
            z, r = divmod(a * x, c)
            if r == 0 and 1 <= z <= n:
                out.append(Solution(x, 0, z))
        return out
    a, b, c = eq.a, eq.b, eq.c
    for x in range(1, n + 1):
        base = a * x
        for y in range(1, n + 1):
            z, r = divmod(base + b * y, c)
            if r == 0 and 1 <= z <= n:
                out.append(Solution(x, y, z))
    return out


class AvoidanceCheck(NamedTuple):
    ok: bool
    violation: Solution | None


def avoids(eq: ThreeVarEquation, A: IntSet) -> AvoidanceCheck:
    """True iff no triple from A solves the equation.

    On failure the lexicographically first violating solution is returned.
    """
    members = A.members
    mset = A._mset
    if eq.b == 0:
        a, c = eq.a, eq.c
        for x in members:
            z, r = divmod(a * x, c)
            if r == 0 and z in mset:
                return AvoidanceCheck(False, Solution(x, 0, z))
        return AvoidanceCheck(True, None)
    a, b, c = eq.a, eq.b, eq.c
    for x in members:
        base = a * x
        for y in members:
            z, r = divmod(base + b * y, c)
            if r == 0 and z in mset:
                return AvoidanceCheck(False, Solution(x, y, z))
    return AvoidanceCheck(True, None)


def equation_from_form(form: LinearForm) -> ThreeVarEquation | None:
    """Reconstruct the equation behind a 2- or 3-coefficient form, if any.

    Forms with more coefficients have no checker; callers skip the guard.
    """
    pos = [c for c in form.coeffs if c > 0]
    neg = [-c for c in form.coeffs if c < 0]
    if len(form.coeffs) == 2:
        return ThreeVarEquation(pos[0], 0, neg[0])
    if len(form.coeffs) != 3:
        return None
    if len(pos) == 2:
        return ThreeVarEquation(pos[0], pos[1], neg[0])
    return ThreeVarEquation(neg[0], neg[1], pos[0])
