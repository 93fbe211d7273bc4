"""Rank-2 K3 Picard-lattice analysis.

Forms [[4, b], [b, 2c]] carry a degree-4 class h1 and a second class h2;
representability of a square 2k reduces to the generalized Pell equation
x^2 - r*y^2 = 8k with r = b^2 - 8c, via the identity
4*q(v) = (v,h1)^2 - r*beta^2.  On top of that sit the positive-cone
ampleness test and the lattice-level very-ampleness conditions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .pell import PellProblem, fundamental_solution, is_perfect_square, solve_generalized
from .zlattice import DivisorClass, IntLattice, make_lattice

__all__ = [
    "RankTwoForm",
    "SnFamily",
    "qn",
    "norm_identity_check",
    "has_isotropic_class",
    "classes_of_square",
    "is_ample",
    "very_ample_check",
    "VeryAmpleResult",
    "Violation",
    "DEFAULT_COEFF_BOUND",
]

DEFAULT_COEFF_BOUND = 500


@dataclass(frozen=True)
class RankTwoForm:
    """Even rank-2 form [[4, b], [b, 2c]]; r = b^2 - 8c = -discriminant."""

    b: int
    c: int

    @property
    def r(self) -> int:
        return self.b * self.b - 8 * self.c

    @property
    def gram(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((4, self.b), (self.b, 2 * self.c))

    def lattice(self, labels: Sequence[str] = ("h1", "h2")) -> IntLattice:
        return make_lattice(self.gram, labels)

    def q(self, v) -> int:
        a, t = _pair(v)
        return 4 * a * a + 2 * self.b * a * t + 2 * self.c * t * t

    def pair(self, v, w) -> int:
        a1, t1 = _pair(v)
        a2, t2 = _pair(w)
        return 4 * a1 * a2 + self.b * (a1 * t2 + a2 * t1) + 2 * self.c * t1 * t2

    def pair_h1(self, v) -> int:
        a, t = _pair(v)
        return 4 * a + self.b * t


@dataclass(frozen=True)
class SnFamily:
    """Picard lattice [[4, 8n], [8n, 2]] with basis {H, W}."""

    n: int

    @property
    def form(self) -> RankTwoForm:
        return RankTwoForm(8 * self.n, 1)

    def lattice(self) -> IntLattice:
        return self.form.lattice(("H", "W"))


def qn(n: int) -> SnFamily:
    if n < 1:
        raise ValueError(f"family parameter must be >= 1, got {n}")
    return SnFamily(n)


def _pair(v) -> tuple[int, int]:
    coords = tuple(v)
    if len(coords) != 2:
        raise ValueError("rank-2 coordinate vector expected")
    return int(coords[0]), int(coords[1])


def _form_of(obj) -> RankTwoForm:
    return obj.form if isinstance(obj, SnFamily) else obj


def norm_identity_check(form: RankTwoForm, v) -> bool:
    """4*q(v) == (v, h1)^2 - r * beta^2, exactly."""
    form = _form_of(form)
    _, beta = _pair(v)
    return 4 * form.q(v) == form.pair_h1(v) ** 2 - form.r * beta * beta


def has_isotropic_class(form: RankTwoForm) -> bool:
    """Nonzero vectors of square 0 exist iff r is a perfect square."""
    form = _form_of(form)
    return form.r >= 0 and is_perfect_square(form.r) is not None


def _normalize(v: tuple[int, int]) -> tuple[int, int]:
    for x in v:
        if x < 0:
            return (-v[0], -v[1])
        if x > 0:
            return v
    return v


def _box_vectors(form: RankTwoForm, square: int, bound: int) -> set[tuple[int, int]]:
    """All v = (alpha, beta) with q(v) = square and |alpha|, |beta| <= bound.

    For fixed beta the alpha values solve a quadratic whose discriminant
    is r*beta^2 + 4*square, so each beta costs one integer square root.
    """
    out: set[tuple[int, int]] = set()
    for beta in range(-bound, bound + 1):
        disc = form.r * beta * beta + 4 * square
        if disc < 0:
            continue
        s = is_perfect_square(disc)
        if s is None:
            continue
        for sign in ((s,) if s == 0 else (s, -s)):
            num = -form.b * beta + sign
            if num % 4 == 0:
                alpha = num // 4
                if abs(alpha) <= bound and (alpha, beta) != (0, 0):
                    out.add(_normalize((alpha, beta)))
    return out


def _pell_route(form: RankTwoForm, square: int) -> Optional[set[tuple[int, int]]]:
    """Exact decision via x^2 - r*y^2 = 8k when r > 0 is non-square.

    Each solution class is walked through one full period of its
    (x mod 4, y mod 4) orbit under the fundamental unit; states with
    x = b*y (mod 4) pull back to lattice vectors.  Returns None when the
    route does not apply.
    """
    r = form.r
    if r <= 0 or is_perfect_square(r) is not None or square == 0:
        return None
    problem = PellProblem(r, 4 * square)
    reps = solve_generalized(problem)
    if not reps:
        return set()
    unit = fundamental_solution(r)
    out: set[tuple[int, int]] = set()
    for rep in reps:
        for start in ((rep.x, rep.y), (rep.x, -rep.y)):
            x, y = start
            seen_states: set[tuple[int, int]] = set()
            while (x % 4, y % 4) not in seen_states:
                seen_states.add((x % 4, y % 4))
                if (x - form.b * y) % 4 == 0:
                    out.add(_normalize(((x - form.b * y) // 4, y)))
                x, y = x * unit.x + y * unit.y * r, y * unit.x + x * unit.y
    return out


def _definite_bound(form: RankTwoForm, square: int) -> int:
    # 4*q(v) = x^2 + |r|*beta^2 for r < 0 bounds both coordinates
    if square <= 0:
        return 1
    beta_max = math.isqrt(4 * square // -form.r) + 1
    x_max = math.isqrt(4 * square) + 1
    return max(beta_max, (x_max + abs(form.b) * beta_max) // 4 + 1)


def classes_of_square(
    form: RankTwoForm, square: int, coeff_bound: int = DEFAULT_COEFF_BOUND
) -> tuple[DivisorClass, ...]:
    """Vectors of self-intersection ``square``, up to sign.

    For indefinite non-square r and for definite forms this is an exact
    decision: the empty tuple genuinely means no such vectors exist.
    For square r (isotropic directions present) the returned witnesses
    are the ones inside the coefficient box.
    """
    form = _form_of(form)
    if square % 2 != 0:
        return ()  # the form is even
    bound = coeff_bound
    if form.r < 0:
        bound = max(bound, _definite_bound(form, square))
    found: set[tuple[int, int]] = set()
    exact = _pell_route(form, square)
    if exact is not None:
        if not exact:
            return ()
        found |= exact
    found |= _box_vectors(form, square, bound)
    ordered = sorted(found, key=lambda v: (abs(v[0]) + abs(v[1]), v))
    return tuple(DivisorClass(v) for v in ordered)


def _assert_plain_cone(form: RankTwoForm, coeff_bound: int) -> None:
    if has_isotropic_class(form):
        raise ValueError("ample test needs a family without isotropic classes")
    if classes_of_square(form, -2, coeff_bound):
        raise ValueError("ample test needs a family without square -2 classes")


def is_ample(
    family,
    v,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
    reference=(1, 0),
) -> bool:
    """Positive-cone membership on the component of the reference class.

    Only valid when the lattice has no square -2 and no isotropic
    classes, so that the positive cone and the ample cone agree; the
    reference class fixes which of the two components counts as ample.
    """
    form = _form_of(family)
    _assert_plain_cone(form, coeff_bound)
    if form.q(reference) <= 0:
        raise ValueError("reference class must have positive square")
    return form.q(v) > 0 and form.pair(v, reference) > 0


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: DivisorClass
    pairing: int


@dataclass(frozen=True)
class VeryAmpleResult:
    ok: bool
    violations: tuple[Violation, ...]


def very_ample_check(
    family, hc, coeff_bound: int = DEFAULT_COEFF_BOUND
) -> VeryAmpleResult:
    """Lattice-level very-ampleness test for a square >= 4 class.

    Checks the three numerical conditions: no isotropic class pairing to
    1 or 2 with hc, hc is not twice a square-2 class, and no square -2
    class orthogonal to hc.  Any lattice class satisfying a condition is
    reported as a violation, so the test may over-reject but never
    over-accepts relative to the lattice data.
    """
    form = _form_of(family)
    hc = tuple(hc)
    if form.q(hc) < 4:
        raise ValueError("very-ampleness requires a class of square >= 4")
    violations: list[Violation] = []
    for cls in classes_of_square(form, 0, coeff_bound):
        pairing = form.pair(hc, cls.coords)
        if abs(pairing) in (1, 2):
            violations.append(Violation("isotropic-low-degree", cls, pairing))
    if all(x % 2 == 0 for x in hc):
        half = (hc[0] // 2, hc[1] // 2)
        if form.q(half) == 2:
            violations.append(
                Violation("double-of-square-2", DivisorClass(half), form.q(hc))
            )
    for cls in classes_of_square(form, -2, coeff_bound):
        pairing = form.pair(hc, cls.coords)
        if pairing == 0:
            violations.append(Violation("orthogonal-minus-2", cls, 0))
    return VeryAmpleResult(not violations, tuple(violations))
