"""Parameter matrices, their bicharacters, radicals and cocycles.

Subsets ``w`` of {1..n} are handled 0-based internally (tuples of indices);
only the report layer shifts to 1-based labels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import lattice as lat
from .scalars import (
    GroupElement,
    HalfElement,
    HypothesisError,
    ScalarGroup,
    minus_one_in_group,
    sqrt_element,
)


class ValidationError(ValueError):
    """The parameter matrix is not multiplicatively antisymmetric."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


def complement(n, w):
    w = set(w)
    return tuple(i for i in range(n) if i not in w)


def _bilinear(mat, a, b):
    return sum(a[i] * mat[i][j] * b[j] for i in range(len(a)) if a[i] for j in range(len(b)) if b[j])


@dataclass(frozen=True)
class QMatrix:
    n: int
    group: ScalarGroup
    entries: tuple  # n x n GroupElement

    @classmethod
    def from_upper(cls, n, group, upper):
        """Build q from ``{(i, j): (free_exponents, torsion_exponent)}``, 0-based, i < j.

        Missing pairs are the identity; the lower half is filled by inversion.
        """
        rows = [[group.identity() for _ in range(n)] for _ in range(n)]
        for (i, j), val in upper.items():
            if not 0 <= i < j < n:
                raise ValueError(f"upper-triangular index expected, got {(i + 1, j + 1)}")
            free, tor = val
            g = group.element(free, tor)
            rows[i][j] = g
            rows[j][i] = g.inverse()
        return cls(n, group, tuple(tuple(r) for r in rows))

    @classmethod
    def uniparameter(cls, n, t=0):
        """O_q(k^n): x_i x_j = q x_j x_i for i < j, q of order t (0: not a root of unity)."""
        group = ScalarGroup(1, 1) if t == 0 else ScalarGroup(0, t)
        one = ((1,), 0) if t == 0 else ((), 1)
        return cls.from_upper(n, group, {(i, j): one for i in range(n) for j in range(i + 1, n)})

    @classmethod
    def commutative(cls, n, group=None):
        return cls.from_upper(n, group or ScalarGroup(1, 1), {})

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


@dataclass(frozen=True)
class Bicharacter:
    """sigma(a, b) with free exponents a.E_l.b and torsion exponent a.T.b mod m."""

    group: ScalarGroup
    n: int
    free: tuple  # one n x n integer matrix per free generator
    tor: tuple  # n x n matrix read mod group.torsion

    def __call__(self, a, b):
        m = self.group.torsion
        return GroupElement(
            self.group,
            tuple(_bilinear(e, a, b) for e in self.free),
            _bilinear(self.tor, a, b) % m,
        )

    def restrict(self, w):
        """Exponent matrices on Gamma_w, indexed by the complement of w."""
        keep = complement(self.n, w)
        sub = lambda mat: tuple(tuple(mat[i][j] for j in keep) for i in keep)
        return Bicharacter(self.group, len(keep), tuple(sub(e) for e in self.free), sub(self.tor))

    def is_trivial(self):
        m = self.group.torsion
        return not any(x for e in self.free for r in e for x in r) and not any(
            x % m for r in self.tor for x in r
        )


def validate_q(q):
    """Check q_ii = 1 and q_ji = q_ij^{-1}; return the bicharacter of q."""
    n = q.n
    if len(q.entries) != n or any(len(r) != n for r in q.entries):
        raise ValidationError("q must be a square n x n matrix")
    for i in range(n):
        if not q[i, i].is_identity():
            raise ValidationError(f"q_{i + 1}{i + 1} is not 1", (i + 1, i + 1))
        for j in range(i + 1, n):
            if not (q[i, j] * q[j, i]).is_identity():
                raise ValidationError(
                    f"q_{j + 1}{i + 1} is not the inverse of q_{i + 1}{j + 1}", (i + 1, j + 1)
                )
    a = q.group.free_rank
    free = tuple(tuple(tuple(q[i, j].free[l] for j in range(n)) for i in range(n)) for l in range(a))
    tor = tuple(tuple(q[i, j].tor for j in range(n)) for i in range(n))
    return Bicharacter(q.group, n, free, tor)


def sigma_eval(b, alpha, beta):
    return b(alpha, beta)


def radical(b, w=()):
    """S_w = {a in Gamma_w : sigma(a, -) = 1 on Gamma_w}, as a lattice in Z^n."""
    n, m = b.n, b.group.torsion
    keep = complement(n, w)
    rows, moduli = [], []
    for e in b.free:
        for j in keep:
            rows.append([e[i][j] for i in keep])
            moduli.append(0)
    if m > 1:
        for j in keep:
            rows.append([b.tor[i][j] for i in keep])
            moduli.append(m)
    sub = lat.kernel_with_moduli(rows, moduli, len(keep))
    embedded = []
    for r in sub.basis:
        v = [0] * n
        for k, i in enumerate(keep):
            v[i] = r[k]
        embedded.append(v)
    return lat.hermite_basis(embedded, n)


@dataclass(frozen=True)
class SqrtBicharacter:
    """Alternating c with c^2 = sigma; free part stored doubled, torsion halved."""

    group: ScalarGroup
    n: int
    doubled: tuple
    tor: tuple

    def __call__(self, a, b):
        return HalfElement(
            self.group,
            tuple(_bilinear(e, a, b) for e in self.doubled),
            _bilinear(self.tor, a, b) % self.group.torsion,
        )


def sqrt_bicharacter(b):
    if minus_one_in_group(b.group):
        raise HypothesisError(
            "-1 lies in <q_ij> and char k != 2: no square-root bicharacter with c = 1 "
            "wherever sigma = 1 (the -1 hypothesis of the quotient theorem fails)"
        )
    m = b.group.torsion
    if m % 2 == 0:
        # char 2 flagged but even torsion: sqrt_element explains the inconsistency
        sqrt_element(b.group.element(tor=1))
    half = (m + 1) // 2
    tor = tuple(tuple((x * half) % m for x in r) for r in b.tor)
    return SqrtBicharacter(b.group, b.n, b.free, tor)


@dataclass(frozen=True)
class AdaptedCocycle:
    """Upper-triangular cocycle built on a basis adapted to S = rad(sigma).

    ``basis`` rows gamma_i form a basis of Z^n, S is spanned by
    orders[i] * gamma_i, and c(a, b) has exponents a.C.b (group-valued).
    """

    group: ScalarGroup
    n: int
    basis: tuple
    orders: tuple
    free: tuple
    tor: tuple

    def __call__(self, a, b):
        return GroupElement(
            self.group,
            tuple(_bilinear(e, a, b) for e in self.free),
            _bilinear(self.tor, a, b) % self.group.torsion,
        )

    def radical_generators(self):
        return [tuple(m * x for x in g) for m, g in zip(self.orders, self.basis)]


def _strict_upper(mat):
    n = len(mat)
    return [[mat[i][j] if j > i else 0 for j in range(n)] for i in range(n)]


def adapted_cocycle(b):
    """Cocycle with c(a,b)c(b,a)^{-1} = sigma(a,b) and c = 1 on S x Gamma."""
    n = b.n
    s = radical(b)
    if s.is_zero():
        v = lat.identity(n)
        orders = ()
    else:
        _, d, v = lat.smith_normal_form(s.basis)
        orders = tuple(d[i][i] for i in range(s.rank))
    # rows of V^{-1} are the adapted basis: S is spanned by d_i * (row i of V^{-1})
    g = _inverse_unimodular(v)
    vt = lat.transpose(v)

    def adapt(e, mod=None):
        p = lat.matmul(lat.matmul(g, e), lat.transpose(g))
        c = lat.matmul(lat.matmul(v, _strict_upper(p)), vt)
        if mod:
            c = [[x % mod for x in r] for r in c]
        return tuple(tuple(r) for r in c)

    m = b.group.torsion
    return AdaptedCocycle(
        b.group,
        n,
        tuple(tuple(r) for r in g),
        orders,
        tuple(adapt(e) for e in b.free),
        adapt(b.tor, m),
    )


def _inverse_unimodular(v):
    # U V = D for V alone: smith of V gives unimodular factors with V^{-1} = V' U'
    u2, d2, v2 = lat.smith_normal_form(v)
    if any(d2[i][i] != 1 for i in range(len(v))):
        raise ValueError("matrix is not unimodular")
    return lat.matmul(v2, u2)


def _prime_factors(k):
    from sympy import primefactors

    return tuple(primefactors(k)) if k > 1 else ()


@dataclass(frozen=True)
class StratumHypothesis:
    w: tuple
    shape: lat.QuotientShape
    torsion_primes: tuple
    contradiction: bool


@dataclass(frozen=True)
class HypothesisReport:
    theorem_applies: bool
    reason: str
    declared_char: int | None
    strata: tuple

    @property
    def contradictions(self):
        return [s for s in self.strata if s.contradiction]


def all_subsets(n):
    """Subsets of range(n) ordered by size, then lexicographically."""
    return [c for r in range(n + 1) for c in itertools.combinations(range(n), r)]


def hypothesis_report(q, declared_char=None):
    b = validate_q(q)
    group = q.group
    if group.char2:
        applies, reason = True, "char k = 2"
    elif minus_one_in_group(group):
        applies = False
        reason = (
            f"-1 lies in <q_ij> (torsion of order {group.torsion}) and char k != 2; "
            "the -1 hypothesis of the quotient theorem fails"
        )
    else:
        applies, reason = True, "-1 is not in <q_ij>"
    if declared_char is None:
        declared_char = group.declared_char
    strata = []
    for w in all_subsets(q.n):
        shape = gamma_quotient_shape(b, w)
        primes = _prime_factors(shape.torsion_order)
        strata.append(StratumHypothesis(w, shape, primes, declared_char in primes))
    return HypothesisReport(applies, reason, declared_char, tuple(strata))


def gamma_quotient_shape(b, w, s_w=None):
    """Shape of Gamma_w / S_w."""
    keep = complement(b.n, w)
    if s_w is None:
        s_w = radical(b, w)
    local = lat.hermite_basis([[r[i] for i in keep] for r in s_w.basis], len(keep))
    return lat.quotient_shape(len(keep), local)
