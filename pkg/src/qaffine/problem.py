"""Problem files: one JSON document describing q, a one-parameter shortcut, or a graded twist.

Indices in files are 1-based. Example::

    {"n": 3,
     "q": {"group": {"free_rank": 1, "torsion": 1},
           "entries": [{"i": 2, "j": 3, "free": [2], "tor": 0}]}}

    {"n": 3, "uniparameter": {"t": 0}}

    {"n": 3,
     "graded": {"m": 2, "group": {"free_rank": 1, "torsion": 1},
                "degrees": [[1, 0], [0, 1], [1, 1]],
                "cocycle": {"free": [[[0, 1], [0, 0]]]}}}

Optional top-level keys: ``char2`` (bool) and ``declared_char`` (a prime).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .bicharacter import Bicharacter, QMatrix
from .graded_twist import GradedPresentation
from .scalars import ScalarGroup

FORMS = ("q", "uniparameter", "graded")


class ProblemError(ValueError):
    """Malformed problem file."""


@dataclass
class Problem:
    n: int
    kind: str
    q: QMatrix | None = None
    graded: GradedPresentation | None = None
    declared_char: int | None = None
    raw: dict = field(default_factory=dict)


def _int(x, what):
    if isinstance(x, bool) or not isinstance(x, int):
        raise ProblemError(f"{what} must be an integer, got {x!r}")
    return x


def _group(d, char2, declared_char):
    if not isinstance(d, dict):
        raise ProblemError("group must be an object with free_rank and torsion")
    tor = d.get("torsion", 1)
    if isinstance(tor, list):
        raise ProblemError("torsion must be a single cyclic order: subgroups of k^x have cyclic torsion")
    free_rank = _int(d.get("free_rank", 0), "free_rank")
    tor = _int(tor, "torsion")
    if free_rank < 0 or tor < 1:
        raise ProblemError("free_rank must be >= 0 and torsion >= 1")
    return ScalarGroup(free_rank, tor, char2, declared_char)


def _matrix(rows, size, what):
    if not isinstance(rows, list) or len(rows) != size or any(
        not isinstance(r, list) or len(r) != size for r in rows
    ):
        raise ProblemError(f"{what} must be a {size}x{size} integer matrix")
    return tuple(tuple(_int(x, what) for x in r) for r in rows)


def parse_problem(doc):
    if not isinstance(doc, dict):
        raise ProblemError("problem must be a JSON object")
    unknown = set(doc) - {"n", "char2", "declared_char", *FORMS}
    if unknown:
        raise ProblemError(f"unknown keys: {sorted(unknown)}")
    n = _int(doc.get("n"), "n")
    if n < 1:
        raise ProblemError("n must be positive")
    present = [k for k in FORMS if k in doc]
    if len(present) != 1:
        raise ProblemError(f"exactly one of {FORMS} is required, got {present}")
    kind = present[0]
    char2 = bool(doc.get("char2", False))
    declared = doc.get("declared_char")
    if declared is not None:
        declared = _int(declared, "declared_char")
    body = doc[kind]
    prob = Problem(n, kind, declared_char=declared, raw=doc)
    if kind == "q":
        group = _group(body.get("group", {}), char2, declared)
        upper = {}
        for e in body.get("entries", []):
            i, j = _int(e.get("i"), "i") - 1, _int(e.get("j"), "j") - 1
            if not 0 <= i < j < n:
                raise ProblemError(f"entry ({i + 1},{j + 1}) must satisfy 1 <= i < j <= n")
            free = [_int(x, "free exponent") for x in e.get("free", [0] * group.free_rank)]
            if len(free) != group.free_rank:
                raise ProblemError(f"entry ({i + 1},{j + 1}) needs {group.free_rank} free exponents")
            upper[(i, j)] = (free, _int(e.get("tor", 0), "tor"))
        prob.q = QMatrix.from_upper(n, group, upper)
    elif kind == "uniparameter":
        t = _int(body.get("t", 0), "t")
        if t < 0 or t == 1:
            raise ProblemError("t must be 0 (q not a root of unity) or the order of q (> 1)")
        group = ScalarGroup(1, 1, char2, declared) if t == 0 else ScalarGroup(0, t, char2, declared)
        if "b" in body:
            bmat = _matrix(body["b"], n, "b")
            if any(bmat[i][j] != -bmat[j][i] for i in range(n) for j in range(n)):
                raise ProblemError("b must be antisymmetric")
        else:
            bmat = tuple(tuple((i < j) - (i > j) for j in range(n)) for i in range(n))
        one = lambda e: ((e,), 0) if t == 0 else ((), e)
        prob.q = QMatrix.from_upper(
            n, group, {(i, j): one(bmat[i][j]) for i in range(n) for j in range(i + 1, n)}
        )
    else:
        m = _int(body.get("m"), "m")
        group = _group(body.get("group", {}), char2, declared)
        degrees = body.get("degrees")
        if not isinstance(degrees, list) or len(degrees) != n:
            raise ProblemError(f"graded block needs {n} degree vectors")
        degrees = tuple(tuple(_int(x, "degree") for x in d) for d in degrees)
        if any(len(d) != m for d in degrees):
            raise ProblemError(f"degrees must lie in Z^{m}")
        coc = body.get("cocycle", {})
        free = coc.get("free", [[[0] * m for _ in range(m)]] * group.free_rank)
        if len(free) != group.free_rank:
            raise ProblemError(f"cocycle needs {group.free_rank} free exponent matrices")
        tor = coc.get("torsion") or [[0] * m for _ in range(m)]
        cocycle = Bicharacter(
            group,
            m,
            tuple(_matrix(e, m, "cocycle") for e in free),
            tuple(tuple(x % group.torsion for x in r) for r in _matrix(tor, m, "cocycle torsion")),
        )
        prob.graded = GradedPresentation(n, m, degrees, cocycle)
    return prob


def load_problem(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ProblemError(f"cannot read {path}: {exc}") from exc
    return parse_problem(doc)
