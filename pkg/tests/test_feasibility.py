import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qaffine.bicharacter import QMatrix, all_subsets, complement, radical, validate_q
from qaffine.feasibility import (
    FRAGMENTS,
    bichar_feasibility,
    decide_by_enumeration,
    decide_by_linear_algebra,
    solve_mod_prime_power,
)


def minus_one(n):
    return validate_q(QMatrix.uniparameter(n, 2))


def sigma_exp(b, a, c):
    n = b.n
    return sum(a[i] * b.tor[i][j] * c[j] for i in range(n) for j in range(n)) % 2


def check_witness(b, wit, rng, trials=300):
    """Direct check on random vectors: cocycle identity, commutator = sigma, trivial on S_w x Gamma_w."""
    n, N = b.n, wit.modulus
    vec = lambda: tuple(rng.randint(-4, 4) for _ in range(n))
    for _ in range(trials):
        a, c, d = vec(), vec(), vec()
        ac = tuple(x + y for x, y in zip(a, c))
        cd = tuple(x + y for x, y in zip(c, d))
        assert (wit(a, c) + wit(ac, d) - wit(a, cd) - wit(c, d)) % N == 0
        assert (wit(a, c) - wit(c, a)) % N == sigma_exp(b, a, c) * (N // 2)
    for w in all_subsets(n):
        s = radical(b, w)
        comp = complement(n, w)
        for _ in range(trials // 10):
            co = [rng.randint(-2, 2) for _ in s.basis]
            sv = tuple(sum(k * r[i] for k, r in zip(co, s.basis)) for i in range(n))
            g = tuple(rng.randint(-4, 4) if i in comp else 0 for i in range(n))
            assert wit(sv, g) % N == 0


@given(st.lists(st.lists(st.integers(-20, 20), min_size=4, max_size=4), min_size=1, max_size=4),
       st.lists(st.integers(-20, 20), min_size=4, max_size=4), st.integers(1, 4))
@settings(max_examples=80, deadline=None)
def test_solver_agrees_with_enumeration(rows, x0, k):
    mod = 2**k
    # consistent system built from a known solution
    b = [sum(r[j] * x0[j] for j in range(4)) for r in rows]
    x = solve_mod_prime_power(rows, b, 2, k)
    assert x is not None
    assert all((sum(r[j] * x[j] for j in range(4)) - bb) % mod == 0 for r, bb in zip(rows, b))


def test_solver_detects_inconsistency():
    assert solve_mod_prime_power([[2, 0], [0, 4]], [1, 0], 2, 3) is None
    assert solve_mod_prime_power([[2], [2]], [0, 2], 2, 2) is None


def test_solver_small_exhaustive():
    rng = random.Random(0)
    for _ in range(60):
        rows = [[rng.randint(0, 3) for _ in range(2)] for _ in range(2)]
        rhs = [rng.randint(0, 3) for _ in range(2)]
        exists = any(
            all((r[0] * u + r[1] * v - c) % 4 == 0 for r, c in zip(rows, rhs))
            for u, v in itertools.product(range(4), repeat=2)
        )
        assert (solve_mod_prime_power(rows, rhs, 2, 2) is not None) == exists


@pytest.mark.parametrize("n", [2, 3, 4])
def test_alternating_fragment_never_works(n):
    # c(2e1, e2) = c(e1, e2)^2 = sigma(e1, e2) = -1, yet 2e1 lies in S_{}
    assert decide_by_linear_algebra(minus_one(n), "alternating") is None


def test_n2_bicharacter_witness():
    b = minus_one(2)
    res = bichar_feasibility(b)
    assert res.feasible and res.witness.fragment == "bicharacter"
    check_witness(b, res.witness, random.Random(1))


def test_n3_needs_coboundary_twist():
    b = minus_one(3)
    res = bichar_feasibility(b)
    assert res.feasible and res.witness.fragment == "coboundary-twisted"
    assert [v.feasible for v in res.verdicts] == [False, False, True]
    check_witness(b, res.witness, random.Random(2))


def test_n4_infeasible_everywhere():
    res = bichar_feasibility(minus_one(4))
    assert not res.feasible
    assert [v.fragment for v in res.verdicts] == list(FRAGMENTS)
    assert "consistent with the expected nonexistence" in res.summary()
    assert res.verdicts[0].method == "exhaustive"


# n=3 coboundary-twisted has over 10^6 candidates; not enumerated
ENUMERABLE = [(2, f) for f in FRAGMENTS] + [(3, "alternating"), (3, "bicharacter")]


@pytest.mark.parametrize("n,frag", ENUMERABLE)
def test_linear_and_enumeration_agree(n, frag):
    b = minus_one(n)
    lin = decide_by_linear_algebra(b, frag)
    found = decide_by_enumeration(b, frag)
    assert found is not None
    assert (lin is None) == (found[0] is None)


def test_rejects_non_sign_groups():
    with pytest.raises(ValueError):
        bichar_feasibility(validate_q(QMatrix.uniparameter(3, 3)))
    with pytest.raises(ValueError):
        bichar_feasibility(minus_one(2), k=0)
