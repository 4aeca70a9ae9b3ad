"""The scalar group <q_ij> = Z^a + Z/m and formal coefficients built from it.

Nothing here ever touches the base field itself. A scalar is a vector of
exponents over fixed generators: ``a`` free generators (named ``q1..qa``, or
``q`` when a == 1) and one torsion generator ``z`` of order m. Square roots of
the free generators are written ``p``/``p1..pa``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class HypothesisError(ValueError):
    """An input violates the -1 hypothesis needed for square roots."""


@dataclass(frozen=True)
class ScalarGroup:
    free_rank: int = 0
    torsion: int = 1
    char2: bool = False
    declared_char: int | None = None

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if self.torsion < 1:
            raise ValueError("torsion order must be >= 1")

    def element(self, free=None, tor=0):
        free = tuple(int(x) for x in (free or (0,) * self.free_rank))
        if len(free) != self.free_rank:
            raise ValueError(f"expected {self.free_rank} free exponents, got {len(free)}")
        return GroupElement(self, free, int(tor) % self.torsion)

    def identity(self):
        return self.element()

    def half_identity(self):
        return HalfElement(self, (0,) * self.free_rank, 0)

    def generator_names(self, root=False):
        base = "p" if root else "q"
        if self.free_rank == 1:
            return [base]
        return [f"{base}{i + 1}" for i in range(self.free_rank)]


def minus_one_in_group(group):
    """True iff -1 != 1 lies in the group: the cyclic torsion has even order."""
    return group.torsion % 2 == 0 and not group.char2


def _check_same(a, b):
    if a.group != b.group:
        raise TypeError("elements belong to different scalar groups")


@dataclass(frozen=True)
class GroupElement:
    group: ScalarGroup
    free: tuple
    tor: int = 0

    def __mul__(self, other):
        _check_same(self, other)
        return GroupElement(
            self.group,
            tuple(a + b for a, b in zip(self.free, other.free)),
            (self.tor + other.tor) % self.group.torsion,
        )

    def inverse(self):
        return GroupElement(self.group, tuple(-a for a in self.free), (-self.tor) % self.group.torsion)

    def __pow__(self, k):
        return GroupElement(self.group, tuple(k * a for a in self.free), (k * self.tor) % self.group.torsion)

    def is_identity(self):
        return not any(self.free) and self.tor == 0

    def __str__(self):
        return _render(self.group.generator_names(), self.free, self.tor) or "1"


def element_mul(g, h):
    return g * h


def element_inverse(g):
    return g.inverse()


def is_identity(g):
    return g.is_identity()


@dataclass(frozen=True)
class HalfElement:
    """An element of the square-root extension: free exponents kept doubled."""

    group: ScalarGroup
    doubled: tuple
    tor: int = 0

    def __mul__(self, other):
        _check_same(self, other)
        return HalfElement(
            self.group,
            tuple(a + b for a, b in zip(self.doubled, other.doubled)),
            (self.tor + other.tor) % self.group.torsion,
        )

    def inverse(self):
        return HalfElement(self.group, tuple(-a for a in self.doubled), (-self.tor) % self.group.torsion)

    def __pow__(self, k):
        return HalfElement(self.group, tuple(k * a for a in self.doubled), (k * self.tor) % self.group.torsion)

    def square(self):
        return GroupElement(self.group, self.doubled, (2 * self.tor) % self.group.torsion)

    def is_identity(self):
        return not any(self.doubled) and self.tor == 0

    @classmethod
    def from_element(cls, g):
        """Embed a group element (its doubled exponents are twice its own)."""
        return cls(g.group, tuple(2 * a for a in g.free), g.tor)

    def __str__(self):
        return _render(self.group.generator_names(root=True), self.doubled, self.tor) or "1"


def _render(names, free, tor):
    parts = [f"{name}^{{{e}}}" for name, e in zip(names, free) if e]
    if tor:
        parts.append(f"z^{{{tor}}}")
    return " * ".join(parts)


def sqrt_element(g):
    """The unique square root of g in the divisible hull (no elements of order 2).

    Raises HypothesisError if the torsion part has even order, where square
    roots are not unique.
    """
    m = g.group.torsion
    if m % 2 == 0:
        if g.group.char2:
            raise HypothesisError(
                f"torsion of even order {m} cannot occur in characteristic 2; input is inconsistent"
            )
        raise HypothesisError(
            f"-1 lies in the scalar group (torsion order {m} is even) and char k != 2; "
            "square roots are not unique"
        )
    return HalfElement(g.group, g.free, (g.tor * (m + 1) // 2) % m)


@dataclass(frozen=True)
class SymbolicCoefficient:
    """rational * (scalar in the square-root group) * prod(l_i ^ e_i)."""

    rational: Fraction
    scalar: HalfElement
    lam: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rational", Fraction(self.rational))
        object.__setattr__(self, "lam", tuple(int(x) for x in self.lam))
        if self.rational == 0:
            object.__setattr__(self, "scalar", self.scalar.group.half_identity())
            object.__setattr__(self, "lam", (0,) * len(self.lam))

    @classmethod
    def one(cls, group, n):
        return cls(Fraction(1), group.half_identity(), (0,) * n)

    @classmethod
    def zero(cls, group, n):
        return cls(Fraction(0), group.half_identity(), (0,) * n)

    def is_zero(self):
        return self.rational == 0

    def __mul__(self, other):
        if isinstance(other, HalfElement):
            return SymbolicCoefficient(self.rational, self.scalar * other, self.lam)
        if len(self.lam) != len(other.lam):
            raise ValueError("coefficients use different numbers of lambda symbols")
        return SymbolicCoefficient(
            self.rational * other.rational,
            self.scalar * other.scalar,
            tuple(a + b for a, b in zip(self.lam, other.lam)),
        )

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("zero coefficient")
        return SymbolicCoefficient(1 / self.rational, self.scalar.inverse(), tuple(-a for a in self.lam))

    def check_support(self, w):
        """Lambda symbols indexed by w (0-based) are zero there, so no negative powers."""
        bad = [i + 1 for i in w if self.lam[i] < 0]
        if bad:
            raise ValueError(f"negative power of l{bad[0]}, which vanishes on this stratum")

    def render(self):
        parts = []
        if self.rational != 1:
            parts.append(str(self.rational))
        s = str(self.scalar)
        if s != "1":
            parts.append(s)
        parts.extend(f"l{i + 1}^{{{e}}}" for i, e in enumerate(self.lam) if e)
        return " * ".join(parts) if parts else "1"

    __str__ = render


def coeff_mul(u, v):
    return u * v


def coeff_eq(u, v):
    return u == v
