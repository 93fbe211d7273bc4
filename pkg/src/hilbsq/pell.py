"""Arbitrary-precision solvers for x^2 - d*y^2 = m.

Fundamental solutions come from the continued-fraction expansion of
sqrt(d); generalized right-hand sides are decided by a class-representative
search inside a classical bound, with small-modulus congruence
certificates as a fast path for non-existence.  Everything is plain
Python integers, so nothing overflows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

__all__ = [
    "PellProblem",
    "PellSolution",
    "CfExpansion",
    "ReducedEquation",
    "is_perfect_square",
    "cf_sqrt",
    "fundamental_solution",
    "minimal_negative_solution",
    "search_bound",
    "solve_generalized",
    "compose",
    "unsolvable_mod",
    "find_certificate",
    "reduce_minus_eight",
    "has_solution",
    "expand_solutions",
    "DEFAULT_MODULI",
]

# moduli tried, in order, before any bounded search is launched
DEFAULT_MODULI: tuple[int, ...] = (4, 8, 16, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_perfect_square(t: int) -> Optional[int]:
    """Integer square root of t when t is a perfect square, else None."""
    if t < 0:
        raise ValueError("is_perfect_square expects a nonnegative integer")
    r = math.isqrt(t)
    return r if r * r == t else None


def _require_nonsquare(d: int) -> None:
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    if is_perfect_square(d) is not None:
        raise ValueError(f"d must be non-square, got {d}")


@dataclass(frozen=True)
class PellProblem:
    """The equation x^2 - d*y^2 = m for non-square d >= 2 and m != 0."""

    d: int
    m: int

    def __post_init__(self):
        _require_nonsquare(self.d)
        if self.m == 0:
            raise ValueError("right-hand side m must be nonzero")

    def holds(self, x: int, y: int) -> bool:
        return x * x - self.d * y * y == self.m


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int

    def as_pair(self) -> tuple[int, int]:
        return (self.x, self.y)


@dataclass(frozen=True)
class CfExpansion:
    """Periodic continued fraction of sqrt(d): [a0; period repeated]."""

    a0: int
    period: tuple[int, ...]

    @property
    def period_length(self) -> int:
        return len(self.period)


@dataclass(frozen=True)
class ReducedEquation:
    """The form a*x^2 - d*y^2 = m (leading coefficient not 1)."""

    a: int
    d: int
    m: int


def cf_sqrt(d: int) -> CfExpansion:
    """Minimal-period continued fraction of sqrt(d), d non-square.

    Standard recurrence on (m, q): the period closes exactly when the
    partial quotient reaches 2*a0.
    """
    _require_nonsquare(d)
    a0 = math.isqrt(d)
    period = []
    m, q, a = 0, 1, a0
    while True:
        m = q * a - m
        q = (d - m * m) // q
        a = (a0 + m) // q
        period.append(a)
        if a == 2 * a0:
            return CfExpansion(a0, tuple(period))


@lru_cache(maxsize=None)
def _cf_convergent(d: int, upto: int) -> tuple[int, int]:
    """Convergent (h_k, k_k) of sqrt(d) at index ``upto`` (0-based)."""
    cf = cf_sqrt(d)
    h_prev, h = 1, cf.a0
    k_prev, k = 0, 1
    for i in range(1, upto + 1):
        a = cf.period[(i - 1) % cf.period_length]
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
    return h, k


@lru_cache(maxsize=None)
def fundamental_solution(d: int) -> PellSolution:
    """Minimal positive solution of x^2 - d*y^2 = 1."""
    cf = cf_sqrt(d)
    l = cf.period_length
    idx = l - 1 if l % 2 == 0 else 2 * l - 1
    x, y = _cf_convergent(d, idx)
    assert x * x - d * y * y == 1
    return PellSolution(x, y)


@lru_cache(maxsize=None)
def minimal_negative_solution(d: int) -> Optional[PellSolution]:
    """Minimal positive solution of x^2 - d*y^2 = -1, or None.

    Exists exactly when the continued-fraction period length is odd.
    """
    cf = cf_sqrt(d)
    l = cf.period_length
    if l % 2 == 0:
        return None
    x, y = _cf_convergent(d, l - 1)
    assert x * x - d * y * y == -1
    return PellSolution(x, y)


def compose(p: PellProblem, s: PellSolution, u: PellSolution) -> PellSolution:
    """Combine a solution of P_d(m) with a solution of P_d(1).

    (x, y) * (a, b) = (x*a + y*b*d, y*a + x*b) solves P_d(m) again.
    """
    if not p.holds(s.x, s.y):
        raise ValueError("first argument does not solve the given equation")
    if u.x * u.x - p.d * u.y * u.y != 1:
        raise ValueError("second argument does not solve the unit equation")
    out = PellSolution(s.x * u.x + s.y * u.y * p.d, s.y * u.x + s.x * u.y)
    assert p.holds(out.x, out.y)
    return out


def _congruence_has_residues(a: int, d: int, m: int, modulus: int) -> bool:
    squares = {(v * v) % modulus for v in range(modulus)}
    lhs = {(a * s1 - d * s2) % modulus for s1 in squares for s2 in squares}
    return (m % modulus) in lhs


def unsolvable_mod(p: PellProblem, modulus: int) -> Optional[int]:
    """Modulus certificate for non-existence, or None.

    Returns the modulus when x^2 - d*y^2 = m has no solutions mod it;
    a returned certificate implies the equation has no integer solutions.
    """
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if _congruence_has_residues(1, p.d, p.m, modulus):
        return None
    return modulus


def reduced_unsolvable_mod(eq: ReducedEquation, modulus: int) -> Optional[int]:
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if _congruence_has_residues(eq.a, eq.d, eq.m, modulus):
        return None
    return modulus


def find_certificate(p: PellProblem, moduli=DEFAULT_MODULI) -> Optional[int]:
    for modulus in moduli:
        if unsolvable_mod(p, modulus) is not None:
            return modulus
    return None


def reduce_minus_eight(d: int) -> ReducedEquation:
    """Equivalent form of x^2 - d*y^2 = -8 when 8 | d.

    Any solution forces 16 | x^2, so x = 4x' and the equation becomes
    2x'^2 - (d/8)y^2 = -1; solvability is preserved in both directions.
    """
    if d % 8 != 0:
        raise ValueError("reduction requires 8 | d")
    return ReducedEquation(2, d // 8, -1)


def search_bound(p: PellProblem) -> int:
    """Class-representative bound: every solution class of P_d(m) has a
    member with |y| <= ceil(sqrt(|m|(x1+1)/(2d))) + 1."""
    x1 = fundamental_solution(p.d).x
    num = abs(p.m) * (x1 + 1)
    den = 2 * p.d
    root = math.isqrt(num // den)
    while root * root * den < num:
        root += 1
    return root + 1


def _same_class(p: PellProblem, s: PellSolution, t: PellSolution) -> bool:
    # s ~ t iff s * conj(t) / m is integral (then automatically a unit)
    m = abs(p.m)
    return (s.x * t.x - p.d * s.y * t.y) % m == 0 and (
        s.x * t.y - s.y * t.x
    ) % m == 0


def solve_generalized(p: PellProblem) -> tuple[PellSolution, ...]:
    """One representative per solution class of x^2 - d*y^2 = m.

    Representatives are normalized to y >= 0; when +x and -x lie in
    distinct classes both are kept.  An empty result means the equation
    has no integer solutions at all.
    """
    bound = search_bound(p)
    found: list[PellSolution] = []
    for y in range(bound + 1):
        t = p.m + p.d * y * y
        if t < 0:
            continue
        x = is_perfect_square(t)
        if x is None:
            continue
        candidates = [PellSolution(x, y)]
        if x != 0:
            candidates.append(PellSolution(-x, y))
        for cand in candidates:
            if not any(_same_class(p, cand, seen) for seen in found):
                found.append(cand)
    found.sort(key=lambda s: (s.y, -s.x))
    return tuple(found)


def has_solution(p: PellProblem) -> bool:
    """Decide solvability: congruence certificates, then bounded search."""
    if find_certificate(p) is not None:
        return False
    if p.m == -8 and p.d % 8 == 0:
        if reduced_unsolvable_mod(reduce_minus_eight(p.d), 8) is not None:
            return False
    return bool(solve_generalized(p))


def expand_solutions(
    p: PellProblem, reps, y_bound: int
) -> set[tuple[int, int]]:
    """All solutions with |y| <= y_bound generated from class reps.

    Walks each representative forward under the fundamental unit and
    closes under the four sign flips; the backward orbit is covered
    because conjugation swaps it with the forward orbit of a flip.
    """
    u = fundamental_solution(p.d)
    out: set[tuple[int, int]] = set()
    for rep in reps:
        for start in {(rep.x, rep.y), (rep.x, -rep.y)}:
            x, y = start
            for _ in range(10_000):
                if abs(y) <= y_bound:
                    out.update({(x, y), (-x, y), (x, -y), (-x, -y)})
                # once the walk is same-sign beyond the window it grows
                # monotonically and can never re-enter
                if (x >= 0 and y > y_bound) or (x <= 0 and y < -y_bound):
                    break
                x, y = x * u.x + y * u.y * p.d, y * u.x + x * u.y
            else:
                raise RuntimeError("orbit walk failed to leave the window")
    return {(x, y) for (x, y) in out if abs(y) <= y_bound}
