"""Exact arithmetic in Q(t).

Three value types live here:

``LaurentPoly``
    integer Laurent polynomial in ``t`` (negative exponents allowed).
``RatFun``
    reduced quotient of two ``LaurentPoly``.  The canonical form keeps the
    denominator an ordinary polynomial with nonzero, positive constant term;
    every power of ``t`` is pushed into the numerator.  Two equal rational
    functions therefore have identical ``(num, den)`` pairs, and ``==`` is a
    structural comparison.
``HSeries``
    truncated power series in ``h = 1 - t`` with ``Fraction`` coefficients.

Dense coefficient tuples (ascending powers, no trailing zeros) are used
internally; the public ``coeffs`` mapping is derived on demand.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational

from .errors import DomainError

__all__ = [
    "LaurentPoly",
    "RatFun",
    "HSeries",
    "ratfun_arith",
    "kleene_star",
    "expand_h",
    "eval_at",
    "parse_t0",
    "T",
    "TBAR",
    "ONE",
    "ZERO",
]


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (tuples, ascending powers)

def _strip(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _strip(out)


def _psub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, x in enumerate(b):
        out[i] -= x
    return _strip(out)


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        x = a[0]
        return tuple(x * y for y in b)
    if len(b) == 1:
        y = b[0]
        return tuple(x * y for x in a)
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _pscale(a, k):
    return tuple(x * k for x in a) if k else ()


def _content(a):
    return reduce(math.gcd, a, 0)


def _pexact_div(a, b):
    """Quotient ``a / b`` in Z[t]; the division must be exact."""
    if len(b) == 1:
        d = b[0]
        if d == 1:
            return a
        if d == -1:
            return tuple(-x for x in a)
        return tuple(x // d for x in a)
    rem = list(a)
    db = len(b) - 1
    lc = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        coef = rem[k + db]
        if coef:
            qk, r = divmod(coef, lc)
            if r:
                raise ArithmeticError("inexact polynomial division")
            q[k] = qk
            for j, y in enumerate(b):
                rem[k + j] -= qk * y
    if any(rem):
        raise ArithmeticError("inexact polynomial division")
    return tuple(q)


def _prem(a, b):
    """Pseudo-remainder of ``a`` by ``b`` (``deg a >= deg b``)."""
    rem = list(a)
    db = len(b) - 1
    lc = b[-1]
    for k in range(len(a) - 1 - db, -1, -1):
        coef = rem[k + db]
        rem = [x * lc for x in rem]
        if coef:
            for j, y in enumerate(b):
                rem[k + j] -= coef * y
        rem.pop()
    return _strip(rem)


def _primitive(a):
    c = _content(a)
    if a[-1] < 0:
        c = -c
    return a if c == 1 else tuple(x // c for x in a)


def _pgcd(a, b):
    """Greatest common divisor in Z[t], positive leading coefficient."""
    if not a:
        return _primitive(b) if b else ()
    if not b:
        return _primitive(a)
    c = math.gcd(_content(a), _content(b))
    if len(a) == 1 or len(b) == 1:
        return (c,)
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            return tuple(c * x for x in b)
        a, b = b, _primitive(r)
    if b:
        return (c,)
    return tuple(c * x for x in a)


def _peval(c, x):
    acc = 0
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


# ---------------------------------------------------------------------------

class LaurentPoly:
    """Integer Laurent polynomial ``sum c_e t^e``.

    Stored as ``low`` (lowest exponent) plus a dense tuple whose first and
    last entries are nonzero.  The zero polynomial is ``low=0, dense=()``.
    """

    __slots__ = ("low", "dense", "_hash")

    def __init__(self, coeffs=None):
        if not coeffs:
            self.low, self.dense = 0, ()
        else:
            items = {e: c for e, c in dict(coeffs).items() if c}
            if not items:
                self.low, self.dense = 0, ()
            else:
                lo, hi = min(items), max(items)
                self.low = lo
                self.dense = tuple(items.get(e, 0) for e in range(lo, hi + 1))
        self._hash = None

    @classmethod
    def from_dense(cls, dense, low=0):
        """Build from ascending coefficients starting at exponent ``low``."""
        self = object.__new__(cls)
        dense = list(dense)
        while dense and dense[-1] == 0:
            dense.pop()
        start = 0
        while start < len(dense) and dense[start] == 0:
            start += 1
        if start == len(dense):
            self.low, self.dense = 0, ()
        else:
            self.low, self.dense = low + start, tuple(dense[start:])
        self._hash = None
        return self

    @classmethod
    def monomial(cls, exponent, coefficient=1):
        return cls.from_dense((coefficient,), exponent)

    @classmethod
    def constant(cls, c):
        return cls.from_dense((c,), 0)

    @property
    def coeffs(self):
        """Mapping exponent -> nonzero coefficient."""
        return {self.low + i: c for i, c in enumerate(self.dense) if c}

    @property
    def high(self):
        return self.low + len(self.dense) - 1

    def is_zero(self):
        return not self.dense

    def is_one(self):
        return self.low == 0 and self.dense == (1,)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.low == other.low and self.dense == other.dense

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.low, self.dense))
        return self._hash

    def __neg__(self):
        return LaurentPoly.from_dense([-x for x in self.dense], self.low)

    def _aligned(self, other):
        lo = min(self.low, other.low)
        a = (0,) * (self.low - lo) + self.dense
        b = (0,) * (other.low - lo) + other.dense
        return lo, a, b

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not self.dense:
            return other
        if not other.dense:
            return self
        lo, a, b = self._aligned(other)
        return LaurentPoly.from_dense(_padd(a, b), lo)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly.from_dense(_pscale(self.dense, other), self.low)
        if not self.dense or not other.dense:
            return LaurentPoly()
        return LaurentPoly.from_dense(_pmul(self.dense, other.dense), self.low + other.low)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.dense) != 1 or self.dense[0] not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly.monomial(self.low * k, self.dense[0] ** -k)
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def invert_variable(self):
        """Substitute ``t -> 1/t``."""
        if not self.dense:
            return self
        return LaurentPoly.from_dense(self.dense[::-1], -self.high)

    def __call__(self, x):
        if not self.dense:
            return 0 * x
        val = _peval(self.dense, x)
        if self.low >= 0:
            return val * x ** self.low
        return val / x ** (-self.low)

    def __repr__(self):
        return f"LaurentPoly({self.coeffs!r})"

    def __str__(self):
        return _render_poly(self)


def _render_poly(p):
    if not p.dense:
        return "0"
    parts = []
    for i, c in enumerate(p.dense):
        if not c:
            continue
        e = p.low + i
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "t" if e == 1 else f"t^{e}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


# ---------------------------------------------------------------------------

def _coerce(x):
    if isinstance(x, RatFun):
        return x
    if isinstance(x, int):
        return RatFun._raw(LaurentPoly.constant(x), _ONE_POLY)
    if isinstance(x, LaurentPoly):
        return RatFun._raw(x, _ONE_POLY)
    if isinstance(x, Fraction):
        return RatFun(x.numerator, x.denominator)
    return NotImplemented


class RatFun:
    """Element of Q(t) in canonical reduced form.

    ``num`` is a Laurent polynomial, ``den`` an ordinary polynomial with a
    positive constant term, and ``gcd(num, den) = 1`` in Z[t, 1/t].
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=1):
        if isinstance(num, Fraction) or isinstance(den, Fraction):
            q = Fraction(num) / Fraction(den)
            num, den = q.numerator, q.denominator
        if isinstance(num, int):
            num = LaurentPoly.constant(num)
        if isinstance(den, int):
            den = LaurentPoly.constant(den)
        n, d = _canonical(num, den)
        self.num, self.den = n, d
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        self.num, self.den = num, den
        self._hash = None
        return self

    @classmethod
    def t_power(cls, e):
        return cls._raw(LaurentPoly.monomial(e), _ONE_POLY)

    def is_zero(self):
        return not self.num.dense

    def is_laurent(self):
        return self.den.is_one()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num.dense)

    def __neg__(self):
        return RatFun._raw(-self.num, self.den)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.dense:
            return self
        if not self.num.dense:
            return other
        if self.den.is_one() and other.den.is_one():
            return RatFun._raw(self.num + other.num, _ONE_POLY)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num.dense or not other.num.dense:
            return ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFun._raw(self.num * other.num, _ONE_POLY)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def reciprocal(self):
        if not self.num.dense:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.num.dense:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return self.reciprocal() ** -k
        return RatFun(self.num ** k, self.den ** k)

    def invert_variable(self):
        """Substitute ``t -> 1/t``."""
        return RatFun(self.num.invert_variable(), self.den.invert_variable())

    def at(self, t0):
        return eval_at(self, t0)

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def _canonical(num, den):
    if not den.dense:
        raise ZeroDivisionError("rational function with zero denominator")
    if not num.dense:
        return LaurentPoly(), _ONE_POLY
    shift = num.low - den.low
    n0, d0 = num.dense, den.dense
    if len(d0) > 1 or d0[0] not in (1, -1):
        g = _pgcd(n0, d0)
        if g != (1,):
            n0, d0 = _pexact_div(n0, g), _pexact_div(d0, g)
    if d0[0] < 0:
        n0 = tuple(-x for x in n0)
        d0 = tuple(-x for x in d0)
    return LaurentPoly.from_dense(n0, shift), (
        _ONE_POLY if d0 == (1,) else LaurentPoly.from_dense(d0, 0)
    )


_ONE_POLY = LaurentPoly.constant(1)
ZERO = RatFun._raw(LaurentPoly(), _ONE_POLY)
ONE = RatFun._raw(_ONE_POLY, _ONE_POLY)
T = RatFun.t_power(1)
TBAR = RatFun.t_power(-1)


def ratfun_arith(a, b, op):
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two rational functions."""
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# evaluation

def parse_t0(value):
    """Parse a parameter value: ``"1/2"`` and ints become Fractions, ``"0.3"`` a float."""
    if isinstance(value, (Fraction, float)):
        return value
    if isinstance(value, int):
        return Fraction(value)
    text = str(value).strip()
    try:
        return Fraction(text) if ("." not in text and "e" not in text.lower()) else float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse parameter value {value!r}") from exc


def eval_at(f, t0, exact=True):
    """Value of ``f`` at ``t = t0``.

    Rational ``t0`` gives an exact ``Fraction`` unless ``exact`` is false;
    floats give floats.  Raises ``DomainError`` at a pole.
    """
    f = _coerce(f)
    if isinstance(t0, str):
        t0 = parse_t0(t0)
    if isinstance(t0, Rational):
        t0 = Fraction(t0)
    if t0 == 0 and f.num.low < 0:
        raise DomainError(f"{f} has a pole at t = 0")
    dval = _peval(f.den.dense, t0)
    if dval == 0:
        raise DomainError(f"{f} has a pole at t = {t0}")
    nval = f.num(t0)
    value = nval / dval
    if isinstance(value, Fraction) and not exact:
        return float(value)
    return value


# ---------------------------------------------------------------------------
# series in h = 1 - t

class HSeries:
    """Power series ``sum c_k h^k`` truncated mod ``h^K``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("truncation order must be positive")

    @classmethod
    def _raw(cls, coeffs):
        self = object.__new__(cls)
        self.coeffs = tuple(coeffs)
        return self

    @classmethod
    def constant(cls, c, K):
        return cls._raw((Fraction(c),) + (Fraction(0),) * (K - 1))

    @property
    def order(self):
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return HSeries.constant(other, len(self.coeffs))
        if not isinstance(other, HSeries):
            return NotImplemented
        if len(other.coeffs) != len(self.coeffs):
            raise ValueError("series truncation orders differ")
        return other

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return HSeries._raw(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return HSeries._raw(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return HSeries._raw(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        K = len(a)
        out = [Fraction(0)] * K
        for i, x in enumerate(a):
            if x:
                for j in range(K - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return HSeries._raw(tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        a = self.coeffs
        if a[0] == 0:
            raise DomainError("series with zero constant term is not invertible")
        K = len(a)
        inv = [Fraction(0)] * K
        inv[0] = 1 / a[0]
        for k in range(1, K):
            s = sum((a[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv[k] = -s * inv[0]
        return HSeries._raw(tuple(inv))

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k):
        out = HSeries.constant(1, len(self.coeffs))
        for _ in range(k):
            out = out * self
        return out

    def valuation(self):
        """Index of the first nonzero coefficient, or ``None`` for zero."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def evaluate(self, h):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * h + c
        return acc

    def __repr__(self):
        return f"HSeries({[str(c) for c in self.coeffs]})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                var = "" if k == 0 else ("h" if k == 1 else f"h^{k}")
                if var and abs(c) == 1:
                    body = var
                else:
                    body = f"{abs(c)}" + (f"*{var}" if var else "")
                sign = "-" if c < 0 else "+"
                terms.append((sign, body))
        if not terms:
            return f"O(h^{len(self.coeffs)})"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return f"{out} + O(h^{len(self.coeffs)})"


def _one_minus_h_power(e, K):
    # generalized binomial series of (1 - h)^e, any integer e
    out = [Fraction(0)] * K
    c = Fraction(1)
    for k in range(K):
        out[k] = c
        c = c * (-(e - k)) / (k + 1)
    return out


def _laurent_to_h(p, K):
    out = [Fraction(0)] * K
    for e, c in p.coeffs.items():
        for k, b in enumerate(_one_minus_h_power(e, K)):
            if b:
                out[k] += c * b
    return HSeries._raw(tuple(out))


def expand_h(f, K):
    """Taylor expansion of ``f`` in ``h = 1 - t``, first ``K`` coefficients."""
    if K < 1:
        raise ValueError("truncation order must be positive")
    f = _coerce(f)
    den = _laurent_to_h(f.den, K)
    if den.coeffs[0] == 0:
        raise DomainError(f"{f} has a pole at t = 1")
    num = _laurent_to_h(f.num, K)
    if f.den.is_one():
        return num
    return num / den


def kleene_star(r):
    """Closed form ``1/(1 - r)`` of the geometric series ``sum_k r^k``.

    The series only makes sense around ``t = 1`` when ``r(1) = 0``; any other
    input raises ``DomainError``.
    """
    r = _coerce(r)
    if r.is_zero():
        return ONE
    try:
        at_one = eval_at(r, Fraction(1))
    except DomainError:
        at_one = None
    if at_one != 0:
        raise DomainError(
            f"geometric closure needs a weight vanishing at t = 1; got r(1) = {at_one}"
        )
    return ONE / (ONE - r)
