"""Brute-force reference computations used by the self-test and the test suite."""

from __future__ import annotations

import itertools
import random

from . import lattice as lat
from .bicharacter import QMatrix, complement
from .scalars import ScalarGroup


def box(n, bound):
    return itertools.product(range(-bound, bound + 1), repeat=n)


def brute_radical_points(b, w, bound=6):
    """All alpha in Gamma_w with entries in [-bound, bound] pairing trivially with Gamma_w."""
    n = b.n
    keep = complement(n, w)
    units = [tuple(int(i == j) for i in range(n)) for j in keep]
    out = []
    for coords in box(len(keep), bound):
        alpha = [0] * n
        for c, i in zip(coords, keep):
            alpha[i] = c
        alpha = tuple(alpha)
        if all(b(alpha, e).is_identity() for e in units):
            out.append(alpha)
    return out


def radical_mismatches(b, w, lattice, bound=6):
    """Disagreements between a computed S_w and box enumeration, in both directions."""
    bad = []
    for alpha in brute_radical_points(b, w, bound):
        if not lat.lattice_contains(lattice, alpha):
            bad.append(("missing", alpha))
    n = b.n
    keep = complement(n, w)
    units = [tuple(int(i == j) for i in range(n)) for j in keep]
    for row in lattice.basis:
        if any(row[i] for i in w) or not all(b(row, e).is_identity() for e in units):
            bad.append(("spurious", row))
    return bad


def random_qmatrix(rng, n, free_rank, torsion, lo=-3, hi=3):
    group = ScalarGroup(free_rank, torsion)
    upper = {
        (i, j): ([rng.randint(lo, hi) for _ in range(free_rank)], rng.randint(0, torsion - 1))
        for i in range(n)
        for j in range(i + 1, n)
    }
    return QMatrix.from_upper(n, group, upper)


def random_odd_qmatrices(count, seed=0, max_n=4):
    """Reproducible matrices: n <= max_n, free rank <= 2, torsion in {1, 3, 5}."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        fr = rng.randint(0, 2)
        tor = rng.choice([1, 3, 5])
        if fr == 0 and tor == 1:
            fr = 1
        out.append(random_qmatrix(rng, n, fr, tor))
    return out
