from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaffine.scalars import (
    HalfElement,
    HypothesisError,
    ScalarGroup,
    SymbolicCoefficient,
    coeff_eq,
    coeff_mul,
    minus_one_in_group,
    sqrt_element,
)

G = ScalarGroup(2, 5)


def elements(group):
    return st.builds(
        lambda f, t: group.element(f, t),
        st.lists(st.integers(-20, 20), min_size=group.free_rank, max_size=group.free_rank),
        st.integers(0, group.torsion - 1),
    )


def test_inverse_and_identity():
    g = G.element([3, -1], 2)
    assert (g * g.inverse()).is_identity()
    assert G.identity().is_identity()
    assert not g.is_identity()


def test_torsion_wraps():
    z3 = ScalarGroup(0, 3)
    assert (z3.element(tor=2) * z3.element(tor=2)).tor == 1


def test_mixed_groups_rejected():
    with pytest.raises(TypeError):
        G.element([0, 0], 1) * ScalarGroup(2, 7).element([0, 0], 1)


@given(elements(G), elements(G), elements(G))
def test_group_laws(g, h, k):
    assert g * h == h * g
    assert (g * h) * k == g * (h * k)


@pytest.mark.parametrize(
    "group, expected",
    [
        (ScalarGroup(1, 1), False),
        (ScalarGroup(0, 5), False),
        (ScalarGroup(0, 2), True),
        (ScalarGroup(3, 6), True),
        (ScalarGroup(0, 2, char2=True), False),
    ],
)
def test_minus_one(group, expected):
    assert minus_one_in_group(group) is expected


def test_order_two_elements_by_enumeration():
    for m in range(1, 13):
        has_order_two = any((2 * e) % m == 0 and e % m for e in range(m))
        assert has_order_two == minus_one_in_group(ScalarGroup(0, m))


def test_sqrt_examples():
    z5 = ScalarGroup(0, 5)
    assert sqrt_element(z5.identity()).is_identity()
    h = sqrt_element(z5.element(tor=3))
    assert h.tor == 4 and h.square() == z5.element(tor=3)
    free = ScalarGroup(1, 1)
    h = sqrt_element(free.element([1]))
    assert h.doubled == (1,)
    assert h.square() == free.element([1])


def test_sqrt_refuses_even_torsion():
    with pytest.raises(HypothesisError):
        sqrt_element(ScalarGroup(0, 2).element(tor=1))
    with pytest.raises(HypothesisError, match="inconsistent"):
        sqrt_element(ScalarGroup(0, 4, char2=True).element(tor=1))


@given(elements(G), elements(G))
def test_sqrt_homomorphism(g, h):
    assert sqrt_element(g).square() == g
    assert sqrt_element(g * h) == sqrt_element(g) * sqrt_element(h)


@pytest.mark.parametrize("m", [1, 3, 5, 7, 9, 15])
def test_no_order_two_in_odd_group(m):
    grp = ScalarGroup(0, m)
    for e in range(m):
        g = grp.element(tor=e)
        if (g * g).is_identity():
            assert g.is_identity()


def test_coefficient_algebra():
    one = SymbolicCoefficient.one(G, 3)
    u = SymbolicCoefficient(Fraction(2, 3), HalfElement(G, (1, 0), 2), (0, 1, 0))
    assert coeff_mul(u, one) == u
    l2 = SymbolicCoefficient(1, G.half_identity(), (0, 1, 0))
    l13 = SymbolicCoefficient(1, G.half_identity(), (1, 0, 1))
    assert coeff_mul(l2, l13).lam == (1, 1, 1)
    free = ScalarGroup(1, 1)
    a = SymbolicCoefficient(1, HalfElement(free, (-1,)), (0, 1, 0))
    b = SymbolicCoefficient(1, HalfElement(free, (1,)), (0, -1, 0))
    assert coeff_eq(a * b, SymbolicCoefficient.one(free, 3))


def test_zero_is_normalized():
    z = SymbolicCoefficient(0, HalfElement(G, (4, 4), 1), (1, 2, 3))
    assert z == SymbolicCoefficient.zero(G, 3)


@given(
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
    st.tuples(st.integers(-5, 5), st.integers(-5, 5)),
)
def test_coefficient_monoid(a, b, c):
    grp = ScalarGroup(1, 3)
    mk = lambda v: SymbolicCoefficient(Fraction(v[0] or 1, 3), HalfElement(grp, (v[1],), v[0] % 3), v)
    x, y, z = mk(a), mk(b), mk(c)
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)


def test_support_check():
    c = SymbolicCoefficient(1, G.half_identity(), (0, -1, 0))
    c.check_support([0, 2])
    with pytest.raises(ValueError):
        c.check_support([1])


def test_rendering():
    free = ScalarGroup(1, 1)
    c = SymbolicCoefficient(1, HalfElement(free, (-1,)), (0, 1, 0))
    assert c.render() == "p^{-1} * l2^{1}"
    assert str(free.element([2])) == "q^{2}"
