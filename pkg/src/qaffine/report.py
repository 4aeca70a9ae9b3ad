"""Whole-problem analysis and its text / JSON renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import lattice as lat
from .bicharacter import adapted_cocycle, hypothesis_report, sqrt_bicharacter, validate_q
from .quotient_map import psi_generators
from .scalars import HypothesisError
from .strata import compatibility_check, stratify


def _label(w):
    return [i + 1 for i in w]


@dataclass(frozen=True)
class StratumRecord:
    w: tuple  # 1-based
    s_w: lat.Lattice
    fiber_dim: int
    image_dim: int
    free_rank: int
    torsion_orders: tuple
    torsion_primes: tuple
    perp_dimension: int
    perp_components: int
    psi_localized: str
    psi_ordered: str
    psi_affine: str

    def to_dict(self):
        return {
            "w": list(self.w),
            "S_w": {"ambient_rank": self.s_w.ambient_rank, "basis": self.s_w.tolist()},
            "fiber_dim": self.fiber_dim,
            "image_dim": self.image_dim,
            "quotient_shape": {"free_rank": self.free_rank, "torsion": list(self.torsion_orders)},
            "torsion_primes": list(self.torsion_primes),
            "perp": {"dimension": self.perp_dimension, "components": self.perp_components},
            "psi": {
                "localized": self.psi_localized,
                "ordered": self.psi_ordered,
                "affine_saturation": self.psi_affine,
            },
        }

    @classmethod
    def from_dict(cls, d):
        s = d["S_w"]
        return cls(
            tuple(d["w"]),
            lat.Lattice(s["ambient_rank"], tuple(tuple(r) for r in s["basis"])),
            d["fiber_dim"],
            d["image_dim"],
            d["quotient_shape"]["free_rank"],
            tuple(d["quotient_shape"]["torsion"]),
            tuple(d["torsion_primes"]),
            d["perp"]["dimension"],
            d["perp"]["components"],
            d["psi"]["localized"],
            d["psi"]["ordered"],
            d["psi"]["affine_saturation"],
        )


@dataclass
class AnalysisReport:
    n: int
    theorem_applies: bool
    hypothesis_reason: str
    declared_char: int | None
    char_contradictions: list
    strata: list
    compatibility_violations: list
    square_root_cocycle: dict
    adapted_cocycle: dict
    notes: list = field(default_factory=list)
    source: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "source": self.source,
            "n": self.n,
            "hypothesis": {
                "theorem_applies": self.theorem_applies,
                "reason": self.hypothesis_reason,
                "declared_char": self.declared_char,
                "char_contradictions": [list(w) for w in self.char_contradictions],
            },
            "strata": [s.to_dict() for s in self.strata],
            "compatibility_violations": [list(map(list, v)) for v in self.compatibility_violations],
            "cocycles": {"square_root": self.square_root_cocycle, "adapted": self.adapted_cocycle},
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, d):
        h = d["hypothesis"]
        return cls(
            d["n"],
            h["theorem_applies"],
            h["reason"],
            h["declared_char"],
            [tuple(w) for w in h["char_contradictions"]],
            [StratumRecord.from_dict(s) for s in d["strata"]],
            [tuple(tuple(x) for x in v) for v in d["compatibility_violations"]],
            d["cocycles"]["square_root"],
            d["cocycles"]["adapted"],
            list(d["notes"]),
            d["source"],
        )

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self):
        out = [f"quantum affine space, n = {self.n}"]
        out.append(
            f"quotient theorem applies: {'yes' if self.theorem_applies else 'no'} ({self.hypothesis_reason})"
        )
        if self.declared_char is not None:
            out.append(f"declared characteristic: {self.declared_char}")
        for w in self.char_contradictions:
            out.append(
                f"CONTRADICTION: char k = {self.declared_char} divides the torsion of "
                f"Gamma_w/S_w for w = {_fmt_w(w)}; this is impossible, so the input is inconsistent"
            )
        out.append(
            "compatibility S_v & Gamma_w <= S_w: "
            + ("holds" if not self.compatibility_violations else f"VIOLATED {self.compatibility_violations}")
        )
        for s in self.strata:
            out.append("")
            out.append(f"stratum w = {_fmt_w(s.w)}")
            out.append(f"  S_w basis: {s.s_w.tolist()}")
            out.append(f"  fiber dim {s.fiber_dim}, image dim {s.image_dim}")
            tors = " x ".join(f"Z/{d}" for d in s.torsion_orders) or "none"
            out.append(f"  Gamma_w/S_w: free rank {s.free_rank}, torsion {tors}")
            out.append(f"  S_w^perp: dimension {s.perp_dimension}, {s.perp_components} component(s)")
            out.append(f"  psi (localized): {s.psi_localized}")
            out.append(f"  psi (ordered):   {s.psi_ordered}")
            out.append(f"  psi (affine):    {s.psi_affine}")
        for note in self.notes:
            out.append("")
            out.append(f"note: {note}")
        return "\n".join(out) + "\n"


def _fmt_w(w):
    return "{" + ",".join(str(i) for i in w) + "}"


def _matrices(obj):
    return {
        "free": [[list(r) for r in e] for e in obj.free],
        "torsion": [list(r) for r in obj.tor],
    }


def analyze(q, declared_char=None):
    """Stratify, check hypotheses and build psi templates for every stratum."""
    b = validate_q(q)
    hyp = hypothesis_report(q, declared_char)
    if not hyp.theorem_applies:
        raise HypothesisError(hyp.reason)
    c = sqrt_bicharacter(b)
    strata = stratify(q)
    by_w = {s.w: s for s in hyp.strata}
    records = []
    for st in strata:
        pres = psi_generators(c, st)
        perp = st.perp
        h = by_w[st.w]
        records.append(
            StratumRecord(
                tuple(_label(st.w)),
                st.s_w,
                st.fiber_dim,
                st.image_dim,
                st.quotient_shape.free_rank,
                st.quotient_shape.torsion_orders,
                h.torsion_primes,
                perp.dimension,
                perp.component_count,
                pres.render(),
                pres.render(ordered=True, cocycle=c),
                pres.as_form("affine-saturation").render() + f"  [{pres.as_form('affine-saturation').annotation}]",
            )
        )
    adapted = adapted_cocycle(b)
    violations = [
        (tuple(_label(v.v)), tuple(_label(v.w))) for v in compatibility_check(q, strata)
    ]
    return AnalysisReport(
        n=q.n,
        theorem_applies=True,
        hypothesis_reason=hyp.reason,
        declared_char=hyp.declared_char,
        char_contradictions=[tuple(_label(s.w)) for s in hyp.contradictions],
        strata=records,
        compatibility_violations=violations,
        square_root_cocycle={
            "doubled_free": [[list(r) for r in e] for e in c.doubled],
            "torsion": [list(r) for r in c.tor],
        },
        adapted_cocycle={
            "basis": [list(r) for r in adapted.basis],
            "orders": list(adapted.orders),
            **_matrices(adapted),
        },
    )
