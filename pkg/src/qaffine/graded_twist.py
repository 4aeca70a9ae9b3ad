"""Twists of Z^m-graded commutative algebras, pulled back to quantum affine space.

A presentation records generator degrees delta_1..delta_n in G = Z^m and a
bicharacter c on G (exponent matrices over a ScalarGroup). The commutation
form of the twist is sigma_G(a, b) = c(a, b) c(b, a)^{-1}; pulling back along
rho(alpha) = sum alpha_i delta_i gives the parameters of the ambient space.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import lattice as lat
from .bicharacter import Bicharacter, QMatrix, sqrt_bicharacter
from .scalars import HypothesisError, minus_one_in_group


@dataclass(frozen=True)
class GradedPresentation:
    n: int
    m: int
    degrees: tuple  # n vectors in Z^m
    cocycle: Bicharacter  # on Z^m; need not be alternating

    def __post_init__(self):
        if len(self.degrees) != self.n or any(len(d) != self.m for d in self.degrees):
            raise ValueError(f"need {self.n} degree vectors in Z^{self.m}")
        if self.cocycle.n != self.m:
            raise ValueError("cocycle must live on Z^m")

    @property
    def group(self):
        return self.cocycle.group


def _congruent(mat, mod):
    return tuple(tuple(x % mod for x in r) for r in mat) if mod > 1 else tuple(
        tuple(0 for _ in r) for r in mat
    )


def commutation_form(c):
    """sigma_G = c / c^T as a bicharacter (antisymmetric exponent matrices)."""
    anti = lambda e: tuple(tuple(e[i][j] - e[j][i] for j in range(c.n)) for i in range(c.n))
    return Bicharacter(
        c.group, c.n, tuple(anti(e) for e in c.free), _congruent(anti(c.tor), c.group.torsion)
    )


def _pull(mat, degrees):
    d = [list(x) for x in degrees]
    return tuple(tuple(r) for r in lat.matmul(lat.matmul(d, [list(r) for r in mat]), lat.transpose(d)))


def pullback(c, degrees):
    """The bicharacter (a, b) -> c(rho a, rho b) on Z^n."""
    tor = _pull(c.tor, degrees)
    return Bicharacter(
        c.group,
        len(degrees),
        tuple(_pull(e, degrees) for e in c.free),
        _congruent(tor, c.group.torsion),
    )


@dataclass(frozen=True)
class Pullback:
    cocycle: Bicharacter  # c~ on Z^n
    q: QMatrix  # q~_ij = sigma_G(delta_i, delta_j)


def pullback_bicharacter(p):
    c_tilde = pullback(p.cocycle, p.degrees)
    sigma = pullback(commutation_form(p.cocycle), p.degrees)
    upper = {}
    for i in range(p.n):
        for j in range(i + 1, p.n):
            g = sigma(_unit(p.n, i), _unit(p.n, j))
            upper[(i, j)] = (g.free, g.tor)
    return Pullback(c_tilde, QMatrix.from_upper(p.n, p.group, upper))


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


@dataclass(frozen=True)
class TwistVerdict:
    ok: bool
    reason: str
    normalized: object = None  # alternating d on G with d^2 = sigma_G


def twist_hypothesis_check(p):
    """-1 must lie outside the group generated by the values of c, unless char k = 2."""
    g = p.group
    if g.char2:
        reason = "char k = 2"
    elif minus_one_in_group(g):
        return TwistVerdict(
            False,
            f"-1 lies in the group generated by the cocycle values (torsion of order {g.torsion}) "
            "and char k != 2; the twist cannot be reduced to an alternating square-root cocycle",
        )
    else:
        reason = "-1 is not in the group generated by the cocycle values"
    try:
        d = sqrt_bicharacter(commutation_form(p.cocycle))
    except HypothesisError as exc:
        # char 2 with even torsion: passes the hypothesis, but no such group exists in char 2
        return TwistVerdict(True, f"{reason}; {exc}")
    return TwistVerdict(True, reason, d)


def ambient_analysis(p, lam=None):
    """Full analysis of O_{q~}(k^n); the prime spectrum of A sits inside as V(Phi~(I)), I untracked."""
    from .report import analyze

    verdict = twist_hypothesis_check(p)
    if not verdict.ok:
        raise HypothesisError(verdict.reason)
    pb = pullback_bicharacter(p)
    report = analyze(pb.q)
    report.notes.append(
        "the prime spectrum of A corresponds to the closed set V(Phi~(I)) of the ambient quantum space, "
        "where I is the kernel of k[y_1..y_n] -> R; I is not tracked"
    )
    return report
