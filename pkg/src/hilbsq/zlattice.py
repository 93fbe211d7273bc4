"""Exact integral-lattice core.

Gram-matrix arithmetic over plain Python integers: classification
invariants (discriminant, signature, discriminant group), isometries,
reflections and anti-reflections, invariant sublattices and orthogonal
complements.  Everything is fraction-free or runs over
``fractions.Fraction``; no floating point anywhere.

Conventions:
  * vectors are coordinate tuples in the lattice basis,
  * isometry matrices act on column vectors and their columns are the
    images of the basis vectors,
  * sublattices are given by tuples of (primitive, saturated) basis
    vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

__all__ = [
    "IntLattice",
    "Signature",
    "DiscriminantGroup",
    "Isometry",
    "DivisorClass",
    "make_lattice",
    "hyperbolic_u",
    "e8",
    "e7",
    "rank_one",
    "rescale",
    "direct_sum",
    "inner",
    "norm",
    "discriminant",
    "signature",
    "is_even",
    "is_unimodular",
    "smith_normal_form",
    "hermite_normal_form",
    "kernel_basis",
    "discriminant_group",
    "is_p_elementary",
    "make_isometry",
    "reflection",
    "anti_reflection",
    "invariant_sublattice",
    "orthogonal_complement",
    "conjugate",
    "same_sublattice",
    "rank2_base_change",
    "mat_mul",
    "mat_vec",
    "mat_identity",
    "mat_transpose",
    "mat_det",
    "mat_inverse_unimodular",
]


# ---------------------------------------------------------------------------
# plain integer matrix helpers
# ---------------------------------------------------------------------------

def _freeze(rows: Iterable[Iterable[int]]) -> Matrix:
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(a: Matrix) -> Matrix:
    if not a:
        return ()
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch in matrix product")
    bt = mat_transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Sequence[int]) -> Vector:
    if a and len(a[0]) != len(v):
        raise ValueError("dimension mismatch in matrix-vector product")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_det(a: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    m = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hermite_normal_form(a: Matrix) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U @ a == H``, ``U`` unimodular, ``H`` in row
    echelon form with positive pivots and the entries above each pivot
    reduced into ``[0, pivot)``.  Zero rows sit at the bottom, so ``H`` is
    a canonical form of the row span: two integer row spans are equal iff
    their HNFs agree.
    """
    h = [[int(x) for x in row] for row in a]
    m = len(h)
    n = len(h[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def _row_sub(dst: int, src: int, q: int) -> None:
        if q:
            hr, hs = h[dst], h[src]
            for j in range(n):
                hr[j] -= q * hs[j]
            ur, us = u[dst], u[src]
            for j in range(m):
                ur[j] -= q * us[j]

    row = 0
    for col in range(n):
        if row == m:
            break
        while True:
            live = [i for i in range(row, m) if h[i][col] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(h[i][col]))
            if best != row:
                h[row], h[best] = h[best], h[row]
                u[row], u[best] = u[best], u[row]
            done = True
            for i in range(row + 1, m):
                if h[i][col]:
                    _row_sub(i, row, h[i][col] // h[row][col])
                    if h[i][col]:
                        done = False
            if done:
                break
        if h[row][col] != 0:
            if h[row][col] < 0:
                h[row] = [-x for x in h[row]]
                u[row] = [-x for x in u[row]]
            for i in range(row):
                _row_sub(i, row, h[i][col] // h[row][col])
            row += 1
    return _freeze(h), _freeze(u)


def kernel_basis(a: Matrix) -> tuple[Vector, ...]:
    """Basis of the right integer kernel ``{v : a @ v = 0}``.

    Computed from the HNF of the transpose; the rows of the unimodular
    transform attached to zero rows of the echelon form are a basis, and
    that basis is automatically primitive (the kernel is saturated).
    """
    if not a or not a[0]:
        n = len(a[0]) if a else 0
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    h, u = hermite_normal_form(mat_transpose(a))
    return tuple(
        u[i] for i in range(len(h)) if all(x == 0 for x in h[i])
    )


def mat_inverse_unimodular(a: Matrix) -> Matrix:
    """Inverse of a matrix with determinant +-1, over the integers."""
    h, u = hermite_normal_form(a)
    if h != mat_identity(len(a)):
        raise ValueError("matrix is not unimodular")
    return u


def smith_normal_form(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``P @ a @ Q = D``.

    ``P`` and ``Q`` are unimodular, ``D`` is diagonal with nonnegative
    entries and ``D[0][0] | D[1][1] | ...``.  The pivot is always chosen
    as a nonzero entry of minimal absolute value and the trailing block
    is forced into divisibility before the pivot is locked, which yields
    the invariant-factor chain directly.
    """
    d = [[int(x) for x in row] for row in a]
    m = len(d)
    n = len(d[0]) if m else 0
    p = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    q = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        p[i], p[j] = p[j], p[i]

    def col_swap(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in q:
            row[i], row[j] = row[j], row[i]

    def row_sub(dst, src, f):
        if f:
            for j in range(n):
                d[dst][j] -= f * d[src][j]
            for j in range(m):
                p[dst][j] -= f * p[src][j]

    def col_sub(dst, src, f):
        if f:
            for row in d:
                row[dst] -= f * row[src]
            for row in q:
                row[dst] -= f * row[src]

    t = 0
    while t < min(m, n):
        entries = [
            (abs(d[i][j]), i, j)
            for i in range(t, m)
            for j in range(t, n)
            if d[i][j] != 0
        ]
        if not entries:
            break
        _, pi, pj = min(entries)
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            # clear the pivot column
            restart = False
            for i in range(t + 1, m):
                if d[i][t]:
                    row_sub(i, t, d[i][t] // d[t][t])
                    if d[i][t]:
                        row_swap(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, n):
                if d[t][j]:
                    col_sub(j, t, d[t][j] // d[t][t])
                    if d[t][j]:
                        col_swap(t, j)
                        restart = True
                        break
            if restart:
                continue
            # force the pivot to divide the trailing block
            pivot = d[t][t]
            offender = next(
                (
                    (i, j)
                    for i in range(t + 1, m)
                    for j in range(t + 1, n)
                    if d[i][j] % pivot != 0
                ),
                None,
            )
            if offender is None:
                break
            row_sub(t, offender[0], -1)
        if d[t][t] < 0:
            for j in range(n):
                d[t][j] = -d[t][j]
            for j in range(m):
                p[t][j] = -p[t][j]
        t += 1
    return _freeze(d), _freeze(p), _freeze(q)


# ---------------------------------------------------------------------------
# lattice values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntLattice:
    """Free Z-module of finite rank with an integer Gram matrix."""

    gram: Matrix
    basis_labels: Optional[tuple[str, ...]] = None

    @property
    def rank(self) -> int:
        return len(self.gram)

    def label(self, i: int) -> str:
        if self.basis_labels is not None:
            return self.basis_labels[i]
        return f"x{i}"


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_minus: int
    n_zero: int = 0

    @property
    def pair(self) -> tuple[int, int]:
        return (self.n_plus, self.n_minus)


@dataclass(frozen=True)
class DiscriminantGroup:
    """Invariant factors d1 | d2 | ... (each > 1) of the dual quotient."""

    invariant_factors: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out


@dataclass(frozen=True)
class DivisorClass:
    """Integer coordinate vector in the basis of an ambient lattice."""

    coords: Vector

    def __iter__(self):
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-c for c in self.coords))


def _coords(v: Sequence[int] | DivisorClass) -> Vector:
    if isinstance(v, DivisorClass):
        return v.coords
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class Isometry:
    """Gram-preserving integer matrix; columns are images of basis vectors."""

    matrix: Matrix
    lattice: IntLattice

    def apply(self, v: Sequence[int] | DivisorClass) -> Vector:
        return mat_vec(self.matrix, _coords(v))

    def is_involution(self) -> bool:
        return mat_mul(self.matrix, self.matrix) == mat_identity(self.lattice.rank)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def make_lattice(
    gram: Iterable[Iterable[int]],
    basis_labels: Optional[Sequence[str]] = None,
) -> IntLattice:
    g = _freeze(gram)
    n = len(g)
    if any(len(row) != n for row in g):
        raise ValueError("Gram matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] != g[j][i]:
                raise ValueError(f"Gram matrix not symmetric at ({i},{j})")
    labels = tuple(basis_labels) if basis_labels is not None else None
    if labels is not None and len(labels) != n:
        raise ValueError("label count must equal rank")
    return IntLattice(g, labels)


def hyperbolic_u() -> IntLattice:
    return make_lattice([[0, 1], [1, 0]], ("e", "f"))


_E8_EDGES = ((1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (6, 7), (7, 8))


def e8() -> IntLattice:
    """Even unimodular positive-definite lattice of rank 8."""
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for i, j in _E8_EDGES:
        g[i - 1][j - 1] = g[j - 1][i - 1] = -1
    return make_lattice(g)


def e7() -> IntLattice:
    """Even positive-definite lattice of rank 7 and discriminant 2."""
    g = [[0] * 7 for _ in range(7)]
    for i in range(7):
        g[i][i] = 2
    for i, j in _E8_EDGES:
        if i <= 7 and j <= 7:
            g[i - 1][j - 1] = g[j - 1][i - 1] = -1
    return make_lattice(g)


def rank_one(k: int, label: str = "g") -> IntLattice:
    return make_lattice([[int(k)]], (label,))


def rescale(lat: IntLattice, s: int) -> IntLattice:
    if s == 0:
        raise ValueError("rescale factor must be nonzero")
    return IntLattice(
        tuple(tuple(s * x for x in row) for row in lat.gram), lat.basis_labels
    )


def direct_sum(a: IntLattice, b: IntLattice) -> IntLattice:
    na, nb = a.rank, b.rank
    g = [[0] * (na + nb) for _ in range(na + nb)]
    for i in range(na):
        for j in range(na):
            g[i][j] = a.gram[i][j]
    for i in range(nb):
        for j in range(nb):
            g[na + i][na + j] = b.gram[i][j]
    labels = None
    if a.basis_labels is not None and b.basis_labels is not None:
        labels = a.basis_labels + b.basis_labels
    return IntLattice(_freeze(g), labels)


# ---------------------------------------------------------------------------
# pairings and invariants
# ---------------------------------------------------------------------------

def inner(lat: IntLattice, v, w) -> int:
    cv, cw = _coords(v), _coords(w)
    if len(cv) != lat.rank or len(cw) != lat.rank:
        raise ValueError("vector length must equal lattice rank")
    gw = mat_vec(lat.gram, cw)
    return sum(x * y for x, y in zip(cv, gw))


def norm(lat: IntLattice, v) -> int:
    return inner(lat, v, v)


def discriminant(lat: IntLattice) -> int:
    return mat_det(lat.gram)


def is_even(lat: IntLattice) -> bool:
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def is_unimodular(lat: IntLattice) -> bool:
    return discriminant(lat) in (1, -1)


def signature(lat: IntLattice) -> Signature:
    """Signature by exact symmetric (congruence) diagonalization.

    Zero diagonal with a nonzero off-diagonal entry is handled by adding
    the partner basis vector first, the standard trick for hyperbolic
    blocks; degenerate directions are counted in ``n_zero``.
    """
    n = lat.rank
    m = [[Fraction(x) for x in row] for row in lat.gram]
    n_plus = n_minus = n_zero = 0

    def add_into(i: int, j: int) -> None:
        # basis change e_i <- e_i + e_j (rows and columns)
        for k in range(n):
            m[i][k] += m[j][k]
        for k in range(n):
            m[k][i] += m[k][j]

    def swap(i: int, j: int) -> None:
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]

    for i in range(n):
        if m[i][i] == 0:
            k = next((j for j in range(i + 1, n) if m[j][j] != 0), None)
            if k is not None:
                swap(i, k)
            else:
                pair = next(
                    (
                        (j, l)
                        for j in range(i, n)
                        for l in range(j + 1, n)
                        if m[j][l] != 0
                    ),
                    None,
                )
                if pair is None:
                    n_zero += n - i
                    break
                j, l = pair
                if j != i:
                    swap(i, j)  # l > j >= i, so the nonzero pair lands at (i, l)
                add_into(i, l)
        a = m[i][i]
        if a > 0:
            n_plus += 1
        else:
            n_minus += 1
        for j in range(i + 1, n):
            f = m[j][i] / a
            if f:
                for k in range(n):
                    m[j][k] -= f * m[i][k]
                for k in range(n):
                    m[k][j] -= f * m[k][i]
    return Signature(n_plus, n_minus, n_zero)


def discriminant_group(lat: IntLattice) -> DiscriminantGroup:
    if discriminant(lat) == 0:
        raise ValueError("discriminant group of a degenerate lattice")
    d, _, _ = smith_normal_form(lat.gram)
    factors = tuple(d[i][i] for i in range(lat.rank) if d[i][i] > 1)
    return DiscriminantGroup(factors)


def is_p_elementary(lat: IntLattice, p: int) -> bool:
    return all(f == p for f in discriminant_group(lat).invariant_factors)


# ---------------------------------------------------------------------------
# isometries
# ---------------------------------------------------------------------------

def make_isometry(lat: IntLattice, matrix: Iterable[Iterable[int]]) -> Isometry:
    m = _freeze(matrix)
    n = lat.rank
    if len(m) != n or any(len(row) != n for row in m):
        raise ValueError("isometry matrix size must equal lattice rank")
    if mat_mul(mat_mul(mat_transpose(m), lat.gram), m) != lat.gram:
        raise ValueError("matrix does not preserve the Gram matrix")
    if mat_det(m) not in (1, -1):
        raise ValueError("isometry matrix must have determinant +-1")
    return Isometry(m, lat)


def reflection(lat: IntLattice, d) -> Isometry:
    """Reflection in a non-isotropic vector: l -> l - 2(l,d)/(d,d) d.

    Requires 2(b,d) divisible by (d,d) for every basis vector b, else the
    map is not defined over the integers and a ValueError is raised.
    """
    cd = _coords(d)
    nd = norm(lat, cd)
    if nd == 0:
        raise ValueError("reflection in an isotropic vector")
    w = mat_vec(lat.gram, cd)  # w[j] = (e_j, d)
    coeffs = []
    for j in range(lat.rank):
        num = 2 * w[j]
        if num % nd != 0:
            raise ValueError("reflection is not integral on this lattice")
        coeffs.append(num // nd)
    n = lat.rank
    mat = tuple(
        tuple((1 if i == j else 0) - coeffs[j] * cd[i] for j in range(n))
        for i in range(n)
    )
    return make_isometry(lat, mat)


def anti_reflection(lat: IntLattice, d) -> Isometry:
    r = reflection(lat, d)
    return make_isometry(lat, tuple(tuple(-x for x in row) for row in r.matrix))


def invariant_sublattice(f: Isometry) -> tuple[tuple[Vector, ...], IntLattice]:
    """Saturated basis of the fixed sublattice, with its induced Gram."""
    n = f.lattice.rank
    a = tuple(
        tuple(f.matrix[i][j] - (1 if i == j else 0) for j in range(n))
        for i in range(n)
    )
    basis = kernel_basis(a)
    return basis, _induced(f.lattice, basis)


def _induced(lat: IntLattice, basis: Sequence[Vector]) -> IntLattice:
    g = tuple(
        tuple(inner(lat, v, w) for w in basis) for v in basis
    )
    return IntLattice(g)


def _is_primitive_basis(vectors: Sequence[Vector]) -> bool:
    if not vectors:
        return True
    d, _, _ = smith_normal_form(tuple(vectors))
    k = min(len(vectors), len(vectors[0]))
    return all(d[i][i] == 1 for i in range(k))


def orthogonal_complement(
    lat: IntLattice, basis: Sequence[Vector | DivisorClass]
) -> tuple[tuple[Vector, ...], IntLattice]:
    """Saturated basis of everything orthogonal to the given sublattice."""
    if discriminant(lat) == 0:
        raise ValueError("orthogonal complement in a degenerate lattice")
    rows = tuple(_coords(v) for v in basis)
    if not rows:
        full = tuple(
            tuple(1 if i == j else 0 for j in range(lat.rank))
            for i in range(lat.rank)
        )
        return full, lat
    if any(len(r) != lat.rank for r in rows):
        raise ValueError("sublattice vectors must have ambient rank")
    if not _is_primitive_basis(rows):
        raise ValueError("sublattice basis is not primitive")
    pairing = mat_mul(rows, lat.gram)
    comp = kernel_basis(pairing)
    return comp, _induced(lat, comp)


def conjugate(f: Isometry, g: Isometry) -> Isometry:
    """Isometry with matrix Mg @ Mf @ Mg.

    For point maps k = g . f . g with involutive g, this is the stored
    pullback in the columns-are-images convention.
    """
    if f.lattice.gram != g.lattice.gram:
        raise ValueError("isometries act on different lattices")
    return make_isometry(f.lattice, mat_mul(g.matrix, mat_mul(f.matrix, g.matrix)))


def same_sublattice(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    """Equality of saturated spans, via canonical Hermite forms."""
    if not a and not b:
        return True
    ha, _ = hermite_normal_form(tuple(a))
    hb, _ = hermite_normal_form(tuple(b))
    ra = tuple(r for r in ha if any(r))
    rb = tuple(r for r in hb if any(r))
    return ra == rb


def rank2_base_change(
    gram: Matrix, target: Matrix, coeff_bound: int = 64
) -> Optional[Matrix]:
    """Explicit GL(2,Z) base change taking ``gram`` to a diagonal ``target``.

    Searches vectors u with u.G.u = target[0][0] in the coefficient box
    |c| <= coeff_bound; the partner vector is then forced by the two
    linear conditions (u,v) = 0 and det(u|v) = +-1, so no second search
    is needed.  Returns the column matrix (u|v) or None.
    """
    if len(gram) != 2 or len(target) != 2 or target[0][1] != 0:
        raise ValueError("rank-2 diagonal targets only")
    a_val, b_val = target[0][0], target[1][1]
    if a_val == 0:
        raise ValueError("target must start with a nonzero entry")
    for u0 in range(-coeff_bound, coeff_bound + 1):
        for u1 in range(-coeff_bound, coeff_bound + 1):
            gu0 = gram[0][0] * u0 + gram[0][1] * u1
            gu1 = gram[1][0] * u0 + gram[1][1] * u1
            if u0 * gu0 + u1 * gu1 != a_val:
                continue
            for eps in (1, -1):
                # solve gu0*v0 + gu1*v1 = 0, u0*v1 - u1*v0 = eps
                num0, num1 = -eps * gu1, eps * gu0
                if num0 % a_val or num1 % a_val:
                    continue
                v0, v1 = num0 // a_val, num1 // a_val
                gv = gram[0][0] * v0 * v0 + 2 * gram[0][1] * v0 * v1 + gram[1][1] * v1 * v1
                if gv == b_val:
                    return ((u0, v0), (u1, v1))
    return None
