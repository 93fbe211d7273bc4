import random

import numpy as np
import pytest

from hilbsq import k3pic
from hilbsq.k3pic import RankTwoForm, classes_of_square, qn


def box_oracle(form, square, bound):
    """Dumb grid enumeration of q(v) = square, sign-normalized."""
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    a, b = np.meshgrid(rng, rng, indexing="ij")
    q = 4 * a * a + 2 * form.b * a * b + 2 * form.c * b * b
    mask = (q == square) & ~((a == 0) & (b == 0))
    out = set()
    for x, y in zip(a[mask].tolist(), b[mask].tolist()):
        if x < 0 or (x == 0 and y < 0):
            x, y = -x, -y
        out.add((x, y))
    return out


def test_qn():
    fam = qn(1)
    assert fam.form.gram == ((4, 8), (8, 2))
    assert fam.form.r == 56
    assert qn(2).form.r == 248
    with pytest.raises(ValueError):
        qn(0)


def test_norm_identity_examples():
    form = qn(1).form
    assert k3pic.norm_identity_check(form, (1, 0))
    assert form.q((0, 1)) == 2 and 8 == 64 - 56
    assert k3pic.norm_identity_check(form, (0, 1))
    assert form.q((1, 1)) == 22
    assert k3pic.norm_identity_check(form, (1, 1))


def test_norm_identity_random():
    rng = random.Random(23)
    for _ in range(60):
        form = RankTwoForm(rng.randint(-20, 20), rng.randint(-10, 10))
        v = (rng.randint(-50, 50), rng.randint(-50, 50))
        assert k3pic.norm_identity_check(form, v)


def test_has_isotropic_class():
    # r = 8(8n^2 - 1) has 2-adic valuation 3, never a square
    for n in range(1, 9):
        form = qn(n).form
        assert not k3pic.has_isotropic_class(form)
        assert box_oracle(form, 0, 200) == set()
    iso = RankTwoForm(3, 1)  # r = 1
    assert k3pic.has_isotropic_class(iso)
    assert box_oracle(iso, 0, 200) != set()
    assert not k3pic.has_isotropic_class(RankTwoForm(0, 1))  # r = -8, definite


def test_classes_of_square_examples():
    for n in range(1, 9):
        assert classes_of_square(qn(n).form, -2) == ()
    s4 = classes_of_square(qn(1).form, 4)
    assert any(c.coords == (1, 0) for c in s4)
    s2 = classes_of_square(qn(1).form, 2)
    assert any(c.coords == (0, 1) for c in s2)
    # odd squares cannot occur in an even lattice
    assert classes_of_square(qn(1).form, 3) == ()


def test_classes_agree_with_exhaustive_search():
    bound = 500
    for n in range(1, 5):
        form = qn(n).form
        for square in (-4, -2, 2, 4, 6):
            got = {
                c.coords
                for c in classes_of_square(form, square, bound)
                if abs(c.coords[0]) <= bound and abs(c.coords[1]) <= bound
            }
            expected = box_oracle(form, square, bound)
            assert got == expected, (n, square)
            # the Pell route and the box search agree about emptiness
            assert (classes_of_square(form, square, bound) == ()) == (
                expected == set()
            )


def test_classes_definite_form():
    form = RankTwoForm(0, 1)  # diag(4, 2), positive definite
    assert classes_of_square(form, -2) == ()
    got = {c.coords for c in classes_of_square(form, 2)}
    assert got == {(0, 1)}
    got4 = {c.coords for c in classes_of_square(form, 4)}
    assert got4 == {(1, 0)}
    # the definite search bound is derived from the square, not from the
    # caller's box
    got8 = {c.coords for c in classes_of_square(form, 8, coeff_bound=1)}
    assert got8 == {(0, 2)}


def test_is_ample():
    fam = qn(1)
    assert k3pic.is_ample(fam, (1, 0))
    assert k3pic.is_ample(fam, (-1, 8))
    assert not k3pic.is_ample(fam, (-1, 0))
    with pytest.raises(ValueError):
        k3pic.is_ample(RankTwoForm(3, 1), (1, 0))  # isotropic classes exist


def test_is_ample_component_dichotomy():
    rng = random.Random(31)
    fam = qn(2)
    form = fam.form
    checked = 0
    while checked < 40:
        v = (rng.randint(-30, 30), rng.randint(-30, 30))
        if v == (0, 0):
            continue
        both = k3pic.is_ample(fam, v) and k3pic.is_ample(fam, (-v[0], -v[1]))
        assert not both
        if form.q(v) > 0:
            assert k3pic.is_ample(fam, v) != k3pic.is_ample(fam, (-v[0], -v[1]))
            checked += 1


def test_very_ample_check():
    for n in (1, 2, 3):
        fam = qn(n)
        assert k3pic.very_ample_check(fam, (1, 0)).ok
        assert k3pic.very_ample_check(fam, (-1, 8 * n)).ok
    # r = 1: isotropic classes meet the degree-4 class in degree 1 or 2
    bad = RankTwoForm(3, 1)
    res = k3pic.very_ample_check(bad, (1, 0), coeff_bound=200)
    assert not res.ok
    assert any(v.condition == "isotropic-low-degree" for v in res.violations)
    with pytest.raises(ValueError):
        k3pic.very_ample_check(qn(1), (0, 1))  # square 2 < 4


def test_very_ample_double_condition():
    # hc = 2*(0, 1) has square 8 and is twice a square-2 class
    fam = qn(1)
    res = k3pic.very_ample_check(fam, (0, 2))
    assert not res.ok
    assert any(v.condition == "double-of-square-2" for v in res.violations)
