import pytest

from hilbsq import hilb2, zlattice as zl
from hilbsq.pell import PellSolution


def test_ns_hilb2():
    ns = hilb2.ns_of_qn(1)
    assert ns.lattice.rank == 3
    assert ns.lattice.basis_labels == ("H", "W", "delta")
    assert ns.delta_index == 2
    assert zl.norm(ns.lattice, (0, 0, 1)) == -2
    assert zl.discriminant(ns.lattice) == 112
    pol = hilb2.ns_of_polarization(5)
    assert pol.lattice.gram == ((10, 0), (0, -2))
    with pytest.raises(ValueError):
        hilb2.ns_hilb2(zl.make_lattice([[0]]))


def test_bcns_examples():
    v2 = hilb2.bcns_check(2)
    assert v2.exists
    assert v2.minimal_solution == PellSolution(1, 1)
    assert v2.d_class.coords == (1, -1)

    v4 = hilb2.bcns_check(4)
    assert v4.square_flag and not v4.exists
    assert v4.p4t5_flag is None  # not evaluated for squares

    v5 = hilb2.bcns_check(5)
    assert not v5.exists and v5.p4t5_flag is True

    v3 = hilb2.bcns_check(3)
    assert not v3.exists and v3.pt_neg1_flag is False

    big = hilb2.bcns_check(3250)
    assert big.exists and big.minimal_solution == PellSolution(57, 1)

    with pytest.raises(ValueError):
        hilb2.bcns_check(1)


def test_bcns_norm_identity():
    for t in (2, 10, 13, 3250, 62002):
        verdict = hilb2.bcns_check(t)
        if not verdict.exists:
            continue
        ns = hilb2.ns_of_polarization(t)
        assert zl.norm(ns.lattice, verdict.d_class) == 2
        a, b = verdict.minimal_solution.x, verdict.minimal_solution.y
        assert t * b * b - a * a == 1


def test_beauville_action_matrix():
    for n in (1, 2, 5):
        i1 = hilb2.beauville_action(n, 1)
        assert i1.matrix == ((3, 8 * n, 2), (0, -1, 0), (-4, -8 * n, -3))
        assert i1.apply((0, 0, 1)) == (2, 0, -3)  # delta -> 2H - 3*delta
        i2 = hilb2.beauville_action(n, 2)
        assert i2.is_involution()
        ns = hilb2.ns_of_qn(n)
        assert zl.norm(ns.lattice, (-1, 8 * n, -1)) == 2
    with pytest.raises(ValueError):
        hilb2.beauville_action(1, 3)


def test_natural_involution():
    for n in (1, 3):
        phi = hilb2.natural_involution_action(n)
        assert phi.apply((1, 0, 0)) == (-1, 8 * n, 0)
        assert phi.apply((0, 1, 0)) == (0, 1, 0)
        assert phi.apply((0, 0, 1)) == (0, 0, 1)
        assert phi.is_involution()


def test_is_natural():
    ns = hilb2.ns_of_qn(1)
    assert hilb2.is_natural(ns, hilb2.natural_involution_action(1))
    assert not hilb2.is_natural(ns, hilb2.beauville_action(1, 1))
    assert not hilb2.is_natural(ns, hilb2.beauville_action(1, 2))
    ident = zl.make_isometry(ns.lattice, zl.mat_identity(3))
    assert hilb2.is_natural(ns, ident)


def test_kappa_invariants():
    for n in (1, 2, 3):
        pair = hilb2.kappa_invariants(n)
        m = 64 * n * n
        assert pair.kappa2.generator.coords == (m - 5, -8 * n, -(m - 7))
        assert pair.kappa1.generator.coords == (-(m - 5), 8 * n * (m - 6), -(m - 7))
        assert pair.kappa1.norm == 2
        assert pair.kappa2.norm == 2
        # rank-1 invariant lattices
        basis1, _ = zl.invariant_sublattice(pair.kappa1.pullback)
        basis2, _ = zl.invariant_sublattice(pair.kappa2.pullback)
        assert len(basis1) == 1 and len(basis2) == 1


def test_kappa_reference_mismatch():
    ns = hilb2.ns_of_qn(1)
    ref = hilb2.kappa1_reference_class(1)
    assert ref.coords == (59, 464, -57)
    assert zl.norm(ns.lattice, ref) == 876034
    derived = hilb2.kappa1_derived_class(1)
    assert zl.norm(ns.lattice, derived) == 2


def test_family_rows_a():
    rows = hilb2.family_rows("A", 3)
    assert [r.t for r in rows] == [3250, 62002, 323762]
    for r in rows:
        assert r.verdict.exists
        assert r.minimal_matches
        assert r.b == 1
        assert r.t == r.a * r.a + 1


def test_family_rows_b():
    rows = hilb2.family_rows("B", 2)
    assert [r.t for r in rows] == [101506, 1634818]
    for k, r in zip((1, 2), rows):
        assert r.t == 102400 * k**4 - 896 * k * k + 2
        assert r.a == 1600 * k * k - 7
        assert r.b == 5
        assert r.verdict.exists and r.minimal_matches
        assert r.gcd_value == 5
    assert 1593 * 1593 - 25 * 101506 == -1


def test_family_b_reference_disagrees():
    assert hilb2.family_b_reference_t(1) == 102178
    assert hilb2.family_rows("B", 1)[0].t == 101506
    assert hilb2.family_b_reference_t(1) != hilb2.family_rows("B", 1)[0].t


def test_family_gcd_dichotomy():
    from math import gcd

    for n in range(1, 21):
        value = gcd(64 * n * n - 5, 8 * n)
        assert (value == 5) == (n % 5 == 0)
        if n % 5 != 0:
            assert value == 1


def test_family_errors():
    with pytest.raises(ValueError):
        hilb2.family_rows("C", 1)
    with pytest.raises(ValueError):
        hilb2.family_rows("A", 0)


def test_l23():
    amb = hilb2.l23()
    assert amb.rank == 23
    assert zl.discriminant(amb) == 2
    assert zl.signature(amb).pair == (3, 20)
    assert zl.is_even(amb)
    assert zl.discriminant_group(amb).invariant_factors == (2,)


def test_l23_embedding():
    amb = hilb2.l23()
    for n in (1, 2):
        h, w, d = hilb2.l23_embedding(n)
        assert zl.norm(amb, h) == 4
        assert zl.norm(amb, w) == 2
        assert zl.norm(amb, d) == -2
        assert zl.inner(amb, h, w) == 8 * n
        assert zl.inner(amb, h, d) == 0
        assert zl.inner(amb, w, d) == 0
        # primitivity of the embedded rank-3 sublattice
        dmat, _, _ = zl.smith_normal_form((h, w, d))
        assert [dmat[i][i] for i in range(3)] == [1, 1, 1]


def test_alternative_complement():
    alt = hilb2.alternative_complement()
    assert alt.rank == 21
    assert zl.signature(alt).pair == (2, 19)
    assert zl.discriminant_group(alt).invariant_factors == (2, 2, 2)


def test_theorem2_verify():
    res = hilb2.theorem2_verify(1)
    assert res.ns_invariant.basis[0].coords == (8, -1, -8)
    assert res.ns_invariant.basis[1].coords == (2, 0, -3)
    assert res.ns_invariant.gram == ((2, 0), (0, -2))
    assert res.ns_invariant.matches_kernel
    assert res.ambient_invariant.gram == ((2, 0), (0, -2))
    assert res.ambient_invariant.matches_kernel
    assert res.complement.rank == 21
    assert res.complement.signature.pair == (2, 19)
    assert res.complement.invariant_factors == (2,)
    assert res.alternative_factors == (2, 2, 2)
    assert res.normalized_gram == ((2, 0), (0, -2))
    with pytest.raises(ValueError):
        hilb2.theorem2_verify(0)


def test_theorem2_invariant_orthogonal_to_complement():
    res = hilb2.theorem2_verify(2)
    amb = hilb2.l23()
    inv = [c.coords for c in res.ambient_invariant.basis]
    comp_basis, _ = zl.orthogonal_complement(amb, inv)
    assert len(comp_basis) + len(inv) == 23
    for v in inv:
        for w in comp_basis:
            assert zl.inner(amb, v, w) == 0


def test_actions_are_involutions_and_gram_preserving():
    for n in range(1, 9):
        ns = hilb2.ns_of_qn(n)
        for f in (
            hilb2.beauville_action(n, 1),
            hilb2.beauville_action(n, 2),
            hilb2.natural_involution_action(n),
        ):
            assert f.is_involution()
            g = ns.lattice.gram
            assert zl.mat_mul(zl.mat_mul(zl.mat_transpose(f.matrix), g), f.matrix) == g
        assert hilb2.is_natural(ns, hilb2.natural_involution_action(n))
        assert not hilb2.is_natural(ns, hilb2.beauville_action(n, 1))
        assert not hilb2.is_natural(ns, hilb2.beauville_action(n, 2))


def test_conjugation_route_matches_kernel_route():
    # the image of one invariant line under the other involution spans
    # the invariant line of the conjugated map
    for n in (1, 2):
        i1 = hilb2.beauville_action(n, 1)
        i2 = hilb2.beauville_action(n, 2)
        basis_i1, _ = zl.invariant_sublattice(i1)
        image = tuple(i2.apply(v) for v in basis_i1)
        kappa1 = zl.conjugate(i1, i2)
        basis_k, _ = zl.invariant_sublattice(kappa1)
        assert zl.same_sublattice(image, basis_k)
