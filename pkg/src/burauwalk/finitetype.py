"""Singular string links and the h-expansion coefficients of B.

A double point is resolved positively by keeping its stored roles and sign
and negatively by swapping over/under and flipping the sign.  The value of a
singular link is the alternating sum over all ``2^|D|`` resolutions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Union

from .diagram import SingularStringLink, StringLinkDiagram, _raw, build_diagram
from .engine import burau_matrix, series_burau
from .errors import DiagramError
from .matrices import BurauMatrix, SeriesMatrix

__all__ = [
    "VassilievValue",
    "resolve",
    "resolutions",
    "vassiliev_value",
    "bk_coefficient",
]


@dataclass(frozen=True)
class VassilievValue:
    matrix: Union[BurauMatrix, SeriesMatrix]
    double_point_count: int

    @property
    def is_series(self):
        return isinstance(self.matrix, SeriesMatrix)


def _choice_sign(value):
    if value in ("+", 1):
        return 1
    if value in ("-", -1):
        return -1
    raise DiagramError(f"resolution choice must be '+' or '-', got {value!r}")


def resolve(s, choice):
    """Resolve every double point of ``s`` according to ``choice``."""
    keys = set(choice)
    if keys != set(s.double):
        missing = sorted(set(s.double) - keys)
        extra = sorted(map(str, keys - set(s.double)))
        raise DiagramError(f"resolution keys mismatch: missing {missing}, extraneous {extra}")
    return _switch(s.diagram, {c for c, v in choice.items() if _choice_sign(v) < 0})


def _switch(d, flipped):
    strands, signs = _raw(d)
    strands = [
        (a, b, [(c, r.swapped() if c in flipped else r) for c, r in encs])
        for a, b, encs in strands
    ]
    for c in flipped:
        signs[c] = -signs[c]
    return build_diagram(d.n, strands, signs)


def resolutions(s):
    """``[(sign, diagram)]`` over all resolutions; sign is ``(-1)^#negative``."""
    points = sorted(s.double)
    out = []
    for pattern in itertools.product((1, -1), repeat=len(points)):
        flipped = {c for c, e in zip(points, pattern) if e < 0}
        sign = -1 if len(flipped) % 2 else 1
        out.append((sign, _switch(s.diagram, flipped)))
    return out


def _as_singular(x):
    if isinstance(x, StringLinkDiagram):
        return SingularStringLink(x, frozenset())
    return x


def vassiliev_value(s, K=None):
    """Alternating resolution sum of B.

    With ``K`` given the sum is taken over ``series_burau(., K)`` (mod
    ``h^(K+1)``), otherwise exactly over Q(t).
    """
    s = _as_singular(s)
    total = None
    for sign, d in resolutions(s):
        m = burau_matrix(d) if K is None else series_burau(d, K)
        if total is None:
            total = m if sign > 0 else _negate(m)
        else:
            total = total + m if sign > 0 else total - m
    return VassilievValue(total, len(s.double))


def _negate(m):
    if isinstance(m, BurauMatrix):
        return -m
    return SeriesMatrix([[-a for a in r] for r in m.rows])


def bk_coefficient(x, k):
    """Rational matrix multiplying ``h^k`` in the expansion of B (or its singular extension)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    value = vassiliev_value(x, max(k, 1))
    return value.matrix.coefficient(k)
