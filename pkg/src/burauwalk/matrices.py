"""Square matrices over Q(t) and over truncated h-series."""

from __future__ import annotations

import json
from fractions import Fraction

from .ratfun import ONE, ZERO, HSeries, LaurentPoly, RatFun, eval_at, expand_h

__all__ = ["BurauMatrix", "SeriesMatrix", "render_number_grid"]


def _as_ratfun(x):
    if isinstance(x, RatFun):
        return x
    return RatFun(x) if isinstance(x, int) else ONE * x


def _poly_json(p):
    return [[e, c] for e, c in sorted(p.coeffs.items())]


def _poly_from_json(pairs):
    return LaurentPoly({int(e): int(c) for e, c in pairs})


class BurauMatrix:
    """Immutable ``n x n`` matrix of :class:`RatFun`; rows are sources, columns sinks."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(_as_ratfun(x) for x in row) for row in rows)
        if any(len(r) != len(self.rows) for r in self.rows):
            raise ValueError("matrix must be square")

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def permutation(cls, perm):
        """Row ``i`` has its 1 in column ``perm[i] - 1``."""
        n = len(perm)
        return cls([[ONE if perm[i] - 1 == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self):
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, BurauMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return BurauMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        return BurauMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return BurauMatrix([[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        n = self.n
        if other.n != n:
            raise ValueError("matrix sizes differ")
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = ZERO
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return BurauMatrix(out)

    def map(self, fn):
        return BurauMatrix([[fn(a) for a in r] for r in self.rows])

    def invert_variable(self):
        """Entrywise ``t -> 1/t``."""
        return self.map(RatFun.invert_variable)

    def reversed(self):
        """``J M J`` with ``J`` the index-reversal permutation."""
        return BurauMatrix([r[::-1] for r in self.rows[::-1]])

    def row_sums(self):
        out = []
        for r in self.rows:
            acc = ZERO
            for a in r:
                acc = acc + a
            out.append(acc)
        return out

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def evaluate(self, t0, exact=True):
        return [[eval_at(a, t0, exact=exact) for a in r] for r in self.rows]

    def to_text(self):
        return "\n".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "\n"

    def to_dict(self):
        return {
            "n": self.n,
            "entries": [
                [{"num": _poly_json(a.num), "den": _poly_json(a.den)} for a in r]
                for r in self.rows
            ],
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data):
        rows = [
            [RatFun(_poly_from_json(e["num"]), _poly_from_json(e["den"])) for e in r]
            for r in data["entries"]
        ]
        if len(rows) != data["n"]:
            raise ValueError("entry count does not match n")
        return cls(rows)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __repr__(self):
        return f"BurauMatrix({[[str(a) for a in r] for r in self.rows]})"

    __str__ = to_text


class SeriesMatrix:
    """``n x n`` matrix of :class:`HSeries` sharing one truncation order."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(rows_i) for rows_i in rows)

    @classmethod
    def from_burau(cls, B, K):
        """Entrywise ``expand_h`` with ``K`` coefficients."""
        return cls([[expand_h(a, K) for a in r] for r in B.rows])

    @classmethod
    def zero(cls, n, K):
        return cls([[HSeries.constant(0, K) for _ in range(n)] for _ in range(n)])

    @property
    def n(self):
        return len(self.rows)

    @property
    def order(self):
        return self.rows[0][0].order if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return SeriesMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        return SeriesMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def coefficient(self, k):
        """Rational matrix multiplying ``h^k``."""
        return tuple(tuple(a[k] for a in r) for r in self.rows)

    def valuation(self):
        """Lowest ``k`` with a nonzero coefficient matrix, ``None`` if all vanish."""
        vals = [a.valuation() for r in self.rows for a in r]
        vals = [v for v in vals if v is not None]
        return min(vals) if vals else None

    def to_text(self):
        lines = []
        for k in range(self.order):
            lines.append(f"h^{k}:")
            lines.append(render_number_grid(self.coefficient(k)))
        return "\n".join(lines)

    def to_dict(self):
        return {
            "n": self.n,
            "order": self.order,
            "coefficients": [
                [[str(c) for c in row] for row in self.coefficient(k)] for k in range(self.order)
            ],
        }

    def __repr__(self):
        return f"SeriesMatrix(n={self.n}, order={self.order})"


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool):
        return "T" if x else "F"
    if isinstance(x, int):
        return str(x)
    return format(float(x), ".12g")


def render_number_grid(rows):
    return "\n".join("[" + ", ".join(_fmt(x) for x in r) + "]" for r in rows) + "\n"
