"""Twisted monomials, the relabelling x_a <-> y_a, and psi(lambda) as ideal generators.

A cocycle ``c`` here is any callable ``c(a, b)`` returning a HalfElement or a
GroupElement (the square-root bicharacter, or the adapted cocycle).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lattice as lat
from .bicharacter import complement
from .scalars import GroupElement, HalfElement, SymbolicCoefficient


def _half(v):
    return HalfElement.from_element(v) if isinstance(v, GroupElement) else v


@dataclass(frozen=True)
class TwistedTerm:
    coefficient: SymbolicCoefficient
    exponent: tuple
    kind: str = "x"  # "x": basis of k^c Gamma, "y": basis of the group algebra

    def render(self, ordered=False, cocycle=None):
        coef = self.coefficient
        if ordered:
            if self.kind != "x":
                raise ValueError("ordered form only applies to x-terms")
            # x_a = d^{-1} x^a
            coef = coef * ordered_form(cocycle, self.exponent).inverse()
            mono = _ordered_monomial(self.exponent)
        else:
            mono = f"{self.kind}[" + ",".join(str(e) for e in self.exponent) + "]"
        c = _coef_text(coef)
        if mono == "1":
            return c
        return mono if c == "1" else f"{c} * {mono}"


def _coef_text(coef):
    text = coef.render()
    if coef.rational < 0:
        text = text.replace(str(coef.rational), f"({coef.rational})", 1)
    return text


def _ordered_monomial(alpha):
    parts = []
    for i, e in enumerate(alpha):
        if e == 1:
            parts.append(f"x[{i + 1}]")
        elif e:
            parts.append(f"x[{i + 1}]^{{{e}}}")
    return "*".join(parts) if parts else "1"


def unit_term(group, exponent, kind="x"):
    return TwistedTerm(SymbolicCoefficient.one(group, len(exponent)), tuple(exponent), kind)


def twisted_mul(cocycle, s, t):
    """x_a x_b = c(a, b) x_{a+b}."""
    if s.kind != "x" or t.kind != "x":
        raise ValueError("twisted product is defined on x-terms")
    coef = s.coefficient * t.coefficient * _half(cocycle(s.exponent, t.exponent))
    return TwistedTerm(coef, tuple(a + b for a, b in zip(s.exponent, t.exponent)), "x")


def untwisted_mul(s, t):
    """y_a y_b = y_{a+b} in the commutative group algebra."""
    if s.kind != "y" or t.kind != "y":
        raise ValueError("group-algebra product is defined on y-terms")
    return TwistedTerm(
        s.coefficient * t.coefficient, tuple(a + b for a, b in zip(s.exponent, t.exponent)), "y"
    )


def phi_relabel(direction, term):
    """Phi(x_a) = y_a (``"forward"``) and its inverse (``"inverse"``); linear, not multiplicative."""
    src, dst = {"forward": ("x", "y"), "inverse": ("y", "x")}[direction]
    if term.kind != src:
        raise ValueError(f"{direction} relabelling expects a {src}-term")
    return TwistedTerm(term.coefficient, term.exponent, dst)


def ordered_form(cocycle, alpha):
    """The scalar d with x_1^a1 ... x_n^an = d * x_alpha, folded left to right."""
    if any(a < 0 for a in alpha):
        raise ValueError("ordered monomials need non-negative exponents")
    n = len(alpha)
    cur = [0] * n
    d = None
    for i, a in enumerate(alpha):
        step = tuple(int(j == i) for j in range(n))
        for _ in range(a):
            v = _half(cocycle(tuple(cur), step))
            d = v if d is None else d * v
            cur[i] += 1
    return cocycle.group.half_identity() if d is None else d


@dataclass(frozen=True)
class Binomial:
    """lead - trail."""

    lead: TwistedTerm
    trail: TwistedTerm

    def render(self, ordered=False, cocycle=None):
        return f"{self.lead.render(ordered, cocycle)} - {self.trail.render(ordered, cocycle)}"

    def normalized(self):
        """(larger exponent, smaller exponent, r): the binomial is a multiple of x_hi - r x_lo."""
        a, b = self.lead, self.trail
        hi, lo = (a, b) if a.exponent > b.exponent else (b, a)
        return hi.exponent, lo.exponent, lo.coefficient * hi.coefficient.inverse()


AFFINE_NOTE = "saturate by x_j, j not in w"


@dataclass(frozen=True)
class IdealPresentation:
    n: int
    w: tuple
    binomials: tuple
    form_tag: str = "localized"

    @property
    def monomial_generators(self):
        return self.w

    @property
    def annotation(self):
        return AFFINE_NOTE if self.form_tag == "affine-saturation" else ""

    def generators(self, ordered=False, cocycle=None):
        out = [f"x[{i + 1}]" for i in self.w]
        out.extend(b.render(ordered, cocycle) for b in self.binomials)
        return out

    def render(self, ordered=False, cocycle=None):
        return "<" + ", ".join(self.generators(ordered, cocycle)) + ">"

    def key(self):
        return self.w, tuple(sorted(b.normalized() for b in self.binomials))

    def as_form(self, tag):
        return IdealPresentation(self.n, self.w, self.binomials, tag)


def split_signs(alpha):
    return tuple(max(a, 0) for a in alpha), tuple(max(-a, 0) for a in alpha)


def psi_generators(cocycle, stratum, lam=None, basis=None, form_tag="localized"):
    """Generators of psi(lam) for lam in the stratum (k^n)_w.

    ``lam=None`` gives the symbolic template in l1..ln. ``basis`` may replace
    the Hermite basis of S_w by any other generating set of S_w.
    """
    n = stratum.s_w.ambient_rank
    w = stratum.w
    group = cocycle.group
    if lam is not None:
        lam = [Fraction(x) for x in lam]
        if len(lam) != n:
            raise ValueError(f"lambda must have {n} coordinates")
        zeros = tuple(i for i, x in enumerate(lam) if x == 0)
        if zeros != w:
            raise ValueError(
                f"lambda vanishes exactly at {[i + 1 for i in zeros]}, not at {[i + 1 for i in w]}"
            )
    if basis is None:
        basis = stratum.s_w.basis
    else:
        basis = [tuple(v) for v in basis]
        if lat.hermite_basis(basis, n) != stratum.s_w:
            raise ValueError("supplied vectors do not generate S_w")
    keep = set(complement(n, w))
    binomials = []
    for alpha in basis:
        if any(alpha[i] for i in w):
            raise ValueError("S_w vectors must vanish on w")
        plus, minus = split_signs(alpha)
        # x_alpha x_minus = c(alpha, minus) x_plus with c = 1 on S_w x Gamma_w
        if not _half(cocycle(tuple(alpha), minus)).is_identity():
            raise ValueError("cocycle is not trivial on S_w x Gamma_w")
        if lam is None:
            lead_c = SymbolicCoefficient(1, group.half_identity(), minus)
            trail_c = SymbolicCoefficient(1, group.half_identity(), plus)
            lead_c.check_support(w)
            trail_c.check_support(w)
        else:
            lead_c = SymbolicCoefficient(_power(lam, minus), group.half_identity(), (0,) * n)
            trail_c = SymbolicCoefficient(_power(lam, plus), group.half_identity(), (0,) * n)
        assert all(i in keep for i, e in enumerate(alpha) if e)
        binomials.append(Binomial(TwistedTerm(lead_c, plus), TwistedTerm(trail_c, minus)))
    return IdealPresentation(n, w, tuple(binomials), form_tag)


def _power(lam, e):
    out = Fraction(1)
    for x, k in zip(lam, e):
        if k:
            out *= x**k
    return out


@dataclass(frozen=True)
class ClosedForm:
    """Closed-form S_w for the one-parameter space O_q(k^n)."""

    lattice: lat.Lattice
    generators: tuple  # generating set as written in the closed form
    gamma_plus: tuple | None
    gamma_minus: tuple | None


def closed_form_oracle(t, n, w):
    """S_w for q of multiplicative order t (0: not a root of unity), from the interleaving rule.

    Complement of w in ascending order w_1 < w_2 < ...; odd positions give
    gamma_+, even positions gamma_-. S_w is t*Gamma_w, plus Z(gamma_+ - gamma_-)
    when the complement has odd size.
    """
    if t < 0 or (t and (t % 2 == 0 or t == 1)):
        raise ValueError("order must be 0 (not a root of unity) or odd and > 1")
    w = tuple(sorted(w))
    comp = [i for i in range(n) if i not in w]
    gens = []
    if t:
        gens.extend(tuple(t * int(i == j) for i in range(n)) for j in comp)
    gp = gm = None
    if len(comp) % 2 == 1:
        gp = tuple(int(i in comp[0::2]) for i in range(n))
        gm = tuple(int(i in comp[1::2]) for i in range(n))
        gens.append(tuple(a - b for a, b in zip(gp, gm)))
    return ClosedForm(lat.hermite_basis(gens, n), tuple(gens), gp, gm)
