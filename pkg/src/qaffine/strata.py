"""Stratification of k^n by zero sets, per-stratum radicals and orbit tests."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lattice as lat
from .bicharacter import all_subsets, complement, gamma_quotient_shape, radical, validate_q


@dataclass(frozen=True)
class TorusSubgroup:
    """The closed subgroup of (k^x)^n killed by every character in ``vanishing_lattice``."""

    vanishing_lattice: lat.Lattice

    @property
    def dimension(self):
        return self.vanishing_lattice.ambient_rank - self.vanishing_lattice.rank

    @property
    def component_count(self):
        L = self.vanishing_lattice
        return lat.quotient_shape(L.ambient_rank, L).torsion_order


@dataclass(frozen=True)
class Stratum:
    w: tuple
    s_w: lat.Lattice
    gamma_w_rank: int
    quotient_shape: lat.QuotientShape

    @property
    def fiber_dim(self):
        return self.gamma_w_rank - self.s_w.rank

    @property
    def image_dim(self):
        return self.s_w.rank

    @property
    def perp(self):
        return TorusSubgroup(self.s_w)

    def label(self):
        return "{" + ",".join(str(i + 1) for i in self.w) + "}"


def make_stratum(b, w):
    w = tuple(sorted(w))
    s_w = radical(b, w)
    return Stratum(w, s_w, b.n - len(w), gamma_quotient_shape(b, w, s_w))


def stratify(q):
    b = validate_q(q)
    return [make_stratum(b, w) for w in all_subsets(q.n)]


@dataclass(frozen=True)
class CompatibilityViolation:
    v: tuple
    w: tuple
    witness: tuple


def compatibility_check(q, strata=None):
    """Check S_v & Gamma_w <= S_w for all v <= w; return the violations (normally none)."""
    n = q.n
    strata = strata if strata is not None else stratify(q)
    by_w = {s.w: s for s in strata}
    bad = []
    for v, sv in by_w.items():
        for w, sw in by_w.items():
            if not set(v) <= set(w):
                continue
            meet = lat.intersect(sv.s_w, lat.coordinate_sublattice(n, complement(n, w)))
            for row in meet.basis:
                if not lat.lattice_contains(sw.s_w, row):
                    bad.append(CompatibilityViolation(v, w, row))
                    break
    return bad


def stratum_of_point(lam):
    return tuple(i for i, x in enumerate(lam) if x == 0)


def character(lam, alpha):
    """lam^alpha as an exact rational; alpha must vanish wherever lam does."""
    out = Fraction(1)
    for x, e in zip(lam, alpha):
        if e:
            out *= Fraction(x) ** e
    return out


def fiber_equivalent(q, lam, mu, s_w=None):
    """Whether lam and mu lie in the same S_w^perp-orbit (same fiber of psi).

    Equal zero sets, and equal values on each basis character of S_w.
    """
    lam = [Fraction(x) for x in lam]
    mu = [Fraction(x) for x in mu]
    if len(lam) != q.n or len(mu) != q.n:
        raise ValueError(f"points must have {q.n} coordinates")
    w = stratum_of_point(lam)
    if w != stratum_of_point(mu):
        return False
    if s_w is None:
        s_w = radical(validate_q(q), w)
    return all(character(lam, a) == character(mu, a) for a in s_w.basis)


def fiber_explanation(q, lam, mu):
    """Per-basis-character comparison, for reports."""
    lam = [Fraction(x) for x in lam]
    mu = [Fraction(x) for x in mu]
    wl, wm = stratum_of_point(lam), stratum_of_point(mu)
    if wl != wm:
        return {"equivalent": False, "reason": "different strata", "w_lambda": wl, "w_mu": wm}
    s_w = radical(validate_q(q), wl)
    rows = [
        {"alpha": list(a), "lambda": character(lam, a), "mu": character(mu, a)} for a in s_w.basis
    ]
    return {
        "equivalent": all(r["lambda"] == r["mu"] for r in rows),
        "reason": "characters of S_w compared",
        "w": wl,
        "characters": rows,
    }
