import random
from fractions import Fraction

import pytest

from qaffine import lattice as lat
from qaffine.bicharacter import QMatrix, all_subsets, complement, radical, validate_q
from qaffine.oracles import random_odd_qmatrices
from qaffine.problem import load_problem
from qaffine.quotient_map import closed_form_oracle
from qaffine.scalars import ScalarGroup
from qaffine.strata import (
    character,
    compatibility_check,
    fiber_equivalent,
    fiber_explanation,
    make_stratum,
    stratify,
    stratum_of_point,
)


def test_non_closed_fixture(fixture_path):
    q = load_problem(fixture_path("non_closed_map.json")).q
    top = stratify(q)[0]
    assert top.w == ()
    assert top.s_w.basis == ((1, 0, 0),)
    assert top.fiber_dim == 2 and top.image_dim == 1
    assert top.perp.dimension == 2 and top.perp.component_count == 1


def test_stratify_covers_all_subsets():
    strata = stratify(QMatrix.uniparameter(4))
    assert [s.w for s in strata] == all_subsets(4)
    assert len(strata) == 16
    assert strata[-1].s_w.is_zero() and strata[-1].gamma_w_rank == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_free_uniparameter_dims(n):
    for s in stratify(QMatrix.uniparameter(n)):
        k = n - len(s.w)
        assert s.image_dim == k % 2
        assert s.fiber_dim == k - k % 2
        assert s.perp.component_count == 1


@pytest.mark.parametrize("t", [3, 5])
def test_root_of_unity_components(t):
    n = 3
    for s in stratify(QMatrix.uniparameter(n, t)):
        k = n - len(s.w)
        assert s.s_w == closed_form_oracle(t, n, s.w).lattice
        assert s.image_dim == k
        # perp = finite group of order [Z^n : S_w] restricted to Gamma_w, times the torus on w
        assert s.perp.dimension == len(s.w)
        assert s.perp.component_count == t ** (k - k % 2)


def test_odd_complement_shape_example():
    s = make_stratum(validate_q(QMatrix.uniparameter(3, 3)), ())
    assert s.quotient_shape.free_rank == 0
    assert s.quotient_shape.torsion_order == 9


def test_commutative_strata():
    for s in stratify(QMatrix.commutative(3)):
        assert s.fiber_dim == 0
        assert s.s_w == lat.coordinate_sublattice(3, complement(3, s.w))


def test_compatibility_holds_on_random():
    for q in random_odd_qmatrices(20, seed=11):
        assert compatibility_check(q) == []


def test_compatibility_detects_fake_strata():
    q = QMatrix.uniparameter(3)
    strata = stratify(q)
    # S_{} := Gamma meets Gamma_{1} in Gamma_{1}, which is not inside S_{1} = 0
    fake = [s if s.w != () else type(s)((), lat.full_lattice(3), 3, s.quotient_shape) for s in strata]
    bad = compatibility_check(q, fake)
    assert any(v.v == () and v.w == (0,) for v in bad)


def test_point_helpers():
    assert stratum_of_point([0, 2, 0]) == (0, 2)
    assert character([2, 3, 5], (1, -1, 2)) == Fraction(50, 3)


def test_fiber_free_n2_orbit():
    q = QMatrix.uniparameter(2)
    # S_{} = 0: every point of the open torus is equivalent
    assert fiber_equivalent(q, [1, 2], [7, -3])
    assert not fiber_equivalent(q, [1, 2], [0, 2])


def test_fiber_free_n3_character():
    q = QMatrix.uniparameter(3)
    # S_{} = Z(1,-1,1): invariant l1 l3 / l2
    assert fiber_equivalent(q, [1, 1, 1], [2, 4, 2])
    assert not fiber_equivalent(q, [1, 1, 1], [2, 1, 2])


def test_fiber_orbit_moves_random():
    rng = random.Random(3)
    for q in random_odd_qmatrices(10, seed=12):
        b = validate_q(q)
        n = q.n
        for _ in range(10):
            lam = [Fraction(rng.choice([0, 1, 2, -3, 5])) for _ in range(n)]
            w = stratum_of_point(lam)
            s_w = radical(b, w)
            # torus element in S_w^perp: choose random t, project by checking characters
            t = [Fraction(rng.choice([1, -1, 2, 3])) for _ in range(n)]
            mu = [x * y for x, y in zip(lam, t)]
            expect = all(character(t, a) == 1 for a in s_w.basis)
            assert fiber_equivalent(q, lam, mu, s_w) == expect


def test_fiber_explanation_shape():
    q = QMatrix.uniparameter(3)
    ex = fiber_explanation(q, [1, 1, 1], [2, 1, 2])
    assert ex["equivalent"] is False
    assert ex["characters"][0]["mu"] == 4
    assert fiber_explanation(q, [0, 1, 1], [1, 1, 1])["reason"] == "different strata"


def test_fiber_rejects_bad_length():
    with pytest.raises(ValueError):
        fiber_equivalent(QMatrix.uniparameter(3), [1, 2], [1, 2, 3])


def test_mixed_group_strata():
    g = ScalarGroup(1, 3)
    q = QMatrix.from_upper(3, g, {(0, 1): ((1,), 0), (1, 2): ((0,), 1)})
    for s in stratify(q):
        assert lat.contains_lattice(lat.coordinate_sublattice(3, complement(3, s.w)), s.s_w)
