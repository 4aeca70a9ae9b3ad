"""Quick oracle suite behind ``qaffine selftest``."""

from __future__ import annotations

import random

from . import lattice as lat
from .bicharacter import QMatrix, all_subsets, radical, validate_q
from .feasibility import bichar_feasibility
from .oracles import radical_mismatches, random_odd_qmatrices
from .quotient_map import closed_form_oracle
from .strata import compatibility_check


def _snf_ok(rng):
    for _ in range(30):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = [[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)]
        u, d, v = lat.smith_normal_form(m)
        if lat.matmul(lat.matmul(u, m), v) != d or abs(lat.det(u)) != 1 or abs(lat.det(v)) != 1:
            return False
        diag = [d[i][i] for i in range(min(r, c))]
        if any(diag[i + 1] % diag[i] for i in range(len(diag) - 1) if diag[i]):
            return False
    return True


def _radical_ok():
    for q in random_odd_qmatrices(20, seed=1):
        b = validate_q(q)
        for w in all_subsets(q.n):
            if radical_mismatches(b, w, radical(b, w), bound=4):
                return False
    return True


def _closed_form_ok():
    for t in (0, 3, 5):
        for n in range(1, 5):
            b = validate_q(QMatrix.uniparameter(n, t))
            for w in all_subsets(n):
                if radical(b, w) != closed_form_oracle(t, n, w).lattice:
                    return False
    return True


def _compat_ok():
    return all(not compatibility_check(q) for q in random_odd_qmatrices(10, seed=2))


def _feasibility_ok():
    got = [bichar_feasibility(validate_q(QMatrix.uniparameter(n, 2))).feasible for n in (2, 3, 4)]
    return got == [True, True, False]


CHECKS = (
    ("smith normal form: U M V = D, unimodular, divisor chain", _snf_ok),
    ("radical agrees with box enumeration", _radical_ok),
    ("radical agrees with one-parameter closed forms", _closed_form_ok),
    ("S_v & Gamma_w <= S_w on random matrices", _compat_ok),
    ("q = -1 cocycle search: n = 2, 3 feasible; n = 4 not", _feasibility_ok),
)


def run_selftest():
    rng = random.Random(0)
    results = []
    for name, fn in CHECKS:
        ok = fn(rng) if fn is _snf_ok else fn()
        results.append((name, ok))
    return results
