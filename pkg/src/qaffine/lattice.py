"""Exact integer matrices and sublattices of Z^n.

Matrices are plain lists (or tuples) of rows of Python ints, so there is no
overflow anywhere. Lattices are always stored by their row-style Hermite
normal form, which makes equality of lattices equality of bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def transpose(a, cols=None):
    if not a:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*a)]


def det(a):
    """Integer determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(m):
    """Return ``(U, D, V)`` with ``U * m * V == D`` and U, V unimodular.

    D is diagonal with non-negative entries forming a divisor chain. A thin
    wrapper over sympy's decomposition, which is deterministic in m.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0 or cols == 0:
        return identity(rows), [[0] * cols for _ in range(rows)], identity(cols)
    d, u, v = smith_normal_decomp(Matrix(m), domain=ZZ)
    d, u, v = (_to_lists(x) for x in (d, u, v))
    for t in range(min(rows, cols)):
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def _to_lists(mat):
    return [[int(x) for x in mat.row(i)] for i in range(mat.rows)]


def invariant_factors(m):
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hnf_rows(vectors, n):
    """Row-style Hermite normal form of the span of ``vectors`` in Z^n.

    Nonzero rows only; pivots strictly increase to the right, are positive, and
    entries above each pivot lie in ``[0, pivot)``.
    """
    rows = [list(v) for v in vectors if any(v)]
    out = []
    col = 0
    while rows and col < n:
        active = [r for r in rows if r[col]]
        if not active:
            col += 1
            continue
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                f = r[col] // piv[col]
                r = [a - f * b for a, b in zip(r, piv)]
                if r[col]:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        out.append(piv)
        rows = rest
        col += 1
    # reduce above pivots
    for i, row in enumerate(out):
        c = next(j for j, x in enumerate(row) if x)
        p = row[c]
        for k in range(i):
            f = out[k][c] // p
            if f:
                out[k] = [a - f * b for a, b in zip(out[k], row)]
    return [tuple(r) for r in out]


@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^ambient_rank, basis rows in Hermite normal form."""

    ambient_rank: int
    basis: tuple

    @property
    def rank(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def is_full(self):
        return self.basis == tuple(tuple(r) for r in identity(self.ambient_rank))

    def pivots(self):
        return [next(j for j, x in enumerate(r) if x) for r in self.basis]

    def __contains__(self, v):
        return lattice_contains(self, v)

    def tolist(self):
        return [list(r) for r in self.basis]


@dataclass(frozen=True)
class QuotientShape:
    """Z^n / L as Z^free_rank + Z/d_1 + ... with d_1 | d_2 | ..."""

    free_rank: int
    torsion_orders: tuple

    @property
    def torsion_order(self):
        out = 1
        for d in self.torsion_orders:
            out *= d
        return out


def hermite_basis(vectors, n=None):
    vectors = [tuple(int(x) for x in v) for v in vectors]
    if n is None:
        if not vectors:
            raise ValueError("ambient rank needed for an empty generating set")
        n = len(vectors[0])
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"vector {v} does not lie in Z^{n}")
    return Lattice(n, tuple(hnf_rows(vectors, n)))


def zero_lattice(n):
    return Lattice(n, ())


def full_lattice(n):
    return hermite_basis(identity(n), n)


def integer_kernel(m, cols):
    """Basis (as rows) of {x in Z^cols : m x = 0}."""
    if not m:
        return identity(cols)
    _, d, v = smith_normal_form(m)
    r = sum(1 for i in range(min(len(d), cols)) if d[i][i])
    return [[v[i][j] for i in range(cols)] for j in range(r, cols)]


def kernel_with_moduli(m, moduli, cols=None):
    """Lattice of integer x with (m x)_r = 0, or = 0 mod moduli[r] when nonzero."""
    if cols is None:
        cols = len(m[0]) if m else 0
    if len(moduli) != len(m):
        raise ValueError("one modulus per row required")
    if any(mod < 0 for mod in moduli):
        raise ValueError("moduli must be non-negative")
    slack = [r for r, mod in enumerate(moduli) if mod]
    # m x - mod * s = 0 with one slack integer per congruence row
    aug = []
    for r, row in enumerate(m):
        extra = [(-moduli[r] if s == r else 0) for s in slack]
        aug.append(list(row) + extra)
    kern = integer_kernel(aug, cols + len(slack))
    return hermite_basis([k[:cols] for k in kern], cols)


def quotient_shape(ambient_rank, lattice):
    if lattice.ambient_rank != ambient_rank:
        raise ValueError("ambient rank mismatch")
    if lattice.is_zero():
        return QuotientShape(ambient_rank, ())
    facs = invariant_factors(lattice.basis)
    return QuotientShape(ambient_rank - len(facs), tuple(d for d in facs if d > 1))


def lattice_contains(lattice, v):
    v = list(v)
    if len(v) != lattice.ambient_rank:
        raise ValueError("length mismatch")
    for row, c in zip(lattice.basis, lattice.pivots()):
        if any(v[:c]):
            return False
        q, r = divmod(v[c], row[c])
        if r:
            return False
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def contains_lattice(big, small):
    return all(lattice_contains(big, r) for r in small.basis)


def intersect(a, b):
    """Intersection of two sublattices of the same Z^n."""
    if a.ambient_rank != b.ambient_rank:
        raise ValueError("ambient rank mismatch")
    n = a.ambient_rank
    if a.is_zero() or b.is_zero():
        return zero_lattice(n)
    # x*A = y*B  <=>  [A; -B]^T (x, y) = 0
    stacked = [list(r) for r in a.basis] + [[-x for x in r] for r in b.basis]
    kern = integer_kernel(transpose(stacked), len(stacked))
    vecs = [[sum(k[i] * a.basis[i][j] for i in range(a.rank)) for j in range(n)] for k in kern]
    return hermite_basis(vecs, n)


def sum_lattice(a, b):
    return hermite_basis(list(a.basis) + list(b.basis), a.ambient_rank)


def coordinate_sublattice(n, support):
    """Gamma_w: the span of the standard basis vectors indexed by ``support`` (0-based)."""
    return hermite_basis([[int(i == j) for i in range(n)] for j in sorted(support)], n)
