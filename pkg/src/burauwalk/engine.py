"""Burau matrices of string links.

A walker starting at a source moves up its strand.  Passing under a crossing
costs nothing; arriving on the upper segment it either stays (weight
``t^e``) or drops to the lower segment (weight ``1 - t^e``), where ``e`` is
the crossing sign.  The total weight of walks from every upper-segment
encounter ("decision point") to each sink satisfies one linear relation per
decision point.  :func:`burau_matrix` solves that system exactly over Q(t).

Two independent oracles are provided: :func:`classical_burau` multiplies the
2x2 generator blocks of a braid word, and :func:`series_burau` sums walk
weights with a bounded number of drops as truncated series in ``h = 1 - t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .diagram import Role, braid_tokens
from .errors import DomainError, SingularSystemError
from .matrices import BurauMatrix, SeriesMatrix
from .ratfun import ONE, T, TBAR, ZERO, HSeries, RatFun

__all__ = [
    "DecisionPoint",
    "Sink",
    "LinearSystem",
    "PathRecord",
    "build_system",
    "solve_exact",
    "solve_at",
    "burau_matrix",
    "burau_at",
    "classical_burau",
    "generator_matrix",
    "enumerate_paths_mod_h",
    "series_burau",
    "reachability",
    "primitivity_index",
]


@dataclass(frozen=True)
class DecisionPoint:
    strand: int  # source position of the strand
    ordinal: int  # 1-based index among upper-segment encounters on that strand
    crossing: int
    sign: int

    def __str__(self):
        return f"a[{self.ordinal},{self.strand}]"


class Sink(NamedTuple):
    position: int

    def __str__(self):
        return f"e{self.position}"


@dataclass(frozen=True)
class LinearSystem:
    """``A_v = t^e A_stay(v) + (1 - t^e) A_jump(v)`` for every decision point ``v``.

    Successors are variable indices or :class:`Sink` markers; ``entry[i]``
    is where a walker leaving source ``i + 1`` first arrives.
    """

    n: int
    variables: tuple
    stay: tuple
    jump: tuple
    entry: tuple

    def relations(self):
        out = []
        for v, dp in enumerate(self.variables):
            e = "t" if dp.sign > 0 else "t^-1"
            s, j = self.stay[v], self.jump[v]
            s = s if isinstance(s, Sink) else self.variables[s]
            j = j if isinstance(j, Sink) else self.variables[j]
            out.append(f"{dp} = {e}*{s} + (1 - {e})*{j}")
        return out


def build_system(d):
    variables = []
    at = {}
    for si, strand in enumerate(d.strands):
        k = 0
        for pos, enc in enumerate(strand.encounters):
            if enc.role is Role.OVER:
                k += 1
                at[(si, pos)] = len(variables)
                variables.append(DecisionPoint(strand.source, k, enc.crossing, d.sign(enc.crossing)))

    # nxt[si][pos]: first decision point at index >= pos on strand si, else its sink
    nxt = []
    for si, strand in enumerate(d.strands):
        row = [None] * (len(strand.encounters) + 1)
        row[-1] = Sink(strand.sink)
        for pos in range(len(strand.encounters) - 1, -1, -1):
            row[pos] = at.get((si, pos), row[pos + 1])
        nxt.append(row)

    stay, jump = [], []
    loc = d.locations
    for (si, pos), v in sorted(at.items(), key=lambda kv: kv[1]):
        stay.append(nxt[si][pos + 1])
        crossing = variables[v].crossing
        sj, q = loc[crossing][Role.UNDER]
        jump.append(nxt[sj][q + 1])
    return LinearSystem(
        n=d.n,
        variables=tuple(variables),
        stay=tuple(stay),
        jump=tuple(jump),
        entry=tuple(row[0] for row in nxt),
    )


def _eliminate(system, stay_w, jump_w, one):
    """Solve the walk system over any field by sparse substitution.

    Returns one dict ``{sink: value}`` per variable.  Variables are removed
    in min-fill order; a self-reference ``A_v = c A_v + ...`` is closed off
    by dividing through by ``1 - c``.
    """
    nv = len(system.variables)
    R = [dict() for _ in range(nv)]
    C = [dict() for _ in range(nv)]
    for v in range(nv):
        for target, w in ((system.stay[v], stay_w[v]), (system.jump[v], jump_w[v])):
            if not w:
                continue
            if isinstance(target, Sink):
                C[v][target.position] = C[v][target.position] + w if target.position in C[v] else w
            else:
                R[v][target] = R[v][target] + w if target in R[v] else w
        R[v] = {w: x for w, x in R[v].items() if x}
        C[v] = {s: x for s, x in C[v].items() if x}
    users = [set() for _ in range(nv)]
    for v in range(nv):
        for w in R[v]:
            users[w].add(v)

    remaining = set(range(nv))
    order = []
    while remaining:
        v = min(remaining, key=lambda x: (len(users[x]) * (len(R[x]) + len(C[x])), x))
        c = R[v].pop(v, None)
        users[v].discard(v)
        if c is not None:
            denom = one - c
            if not denom:
                raise SingularSystemError(f"no unique solution at {system.variables[v]}")
            f = one / denom
            R[v] = {w: x * f for w, x in R[v].items()}
            C[v] = {s: x * f for s, x in C[v].items()}
        for w in R[v]:
            users[w].discard(v)
        for u in users[v]:
            a = R[u].pop(v)
            for w, x in R[v].items():
                new = R[u][w] + a * x if w in R[u] else a * x
                if new:
                    R[u][w] = new
                    users[w].add(u)
                else:
                    R[u].pop(w, None)
                    users[w].discard(u)
            for s, x in C[v].items():
                new = C[u][s] + a * x if s in C[u] else a * x
                if new:
                    C[u][s] = new
                else:
                    C[u].pop(s, None)
        users[v] = set()
        remaining.discard(v)
        order.append(v)

    sol = [None] * nv
    for v in reversed(order):
        acc = dict(C[v])
        for w, x in R[v].items():
            for s, y in sol[w].items():
                acc[s] = acc[s] + x * y if s in acc else x * y
        sol[v] = {s: y for s, y in acc.items() if y}
    return sol


def _vector(n, d, zero):
    return tuple(d.get(j, zero) for j in range(1, n + 1))


def solve_exact(system):
    """Unique solution over Q(t): decision point -> row vector of RatFun."""
    stay_w = [T if dp.sign > 0 else TBAR for dp in system.variables]
    jump_w = [ONE - w for w in stay_w]
    sol = _eliminate(system, stay_w, jump_w, ONE)
    return {dp: _vector(system.n, s, ZERO) for dp, s in zip(system.variables, sol)}


def _rows(system, sol, one, zero):
    rows = []
    for target in system.entry:
        if isinstance(target, Sink):
            rows.append({target.position: one})
        else:
            rows.append(sol[target])
    return [_vector(system.n, r, zero) for r in rows]


@lru_cache(maxsize=2048)
def burau_matrix(d):
    """Exact Burau matrix of a string-link diagram."""
    system = build_system(d)
    stay_w = [T if dp.sign > 0 else TBAR for dp in system.variables]
    jump_w = [ONE - w for w in stay_w]
    sol = _eliminate(system, stay_w, jump_w, ONE)
    return BurauMatrix(_rows(system, sol, ONE, ZERO))


def solve_at(system, t0):
    """Solve the walk system with ``t`` specialised to the number ``t0``."""
    if t0 == 0:
        raise DomainError("t = 0 is a pole of the negative-crossing weights")
    one = Fraction(1) if isinstance(t0, (int, Fraction)) else 1.0
    t0 = one * t0
    stay_w = [t0 if dp.sign > 0 else one / t0 for dp in system.variables]
    jump_w = [one - w for w in stay_w]
    try:
        sol = _eliminate(system, stay_w, jump_w, one)
    except SingularSystemError as exc:
        raise DomainError(f"walk system is singular at t = {t0}") from exc
    return _rows(system, sol, one, one * 0)


def burau_at(d, t0):
    """``B(d)`` evaluated at ``t = t0`` without forming rational functions.

    Equal to entrywise evaluation of :func:`burau_matrix` wherever the
    specialised system is nonsingular (always the case for ``0 < t0 <= 1``
    on positive diagrams, where the drop probabilities are sub-stochastic).
    """
    return solve_at(build_system(d), t0)


# ---------------------------------------------------------------------------
# classical braid oracle

def generator_matrix(i, sign, n):
    """Block matrix of ``s_i`` (sign +1) or ``s_i^-1`` (sign -1) on ``n`` strands."""
    rows = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    a = i - 1
    if sign > 0:
        block = ((ONE - T, T), (ONE, ZERO))
    else:
        block = ((ZERO, ONE), (TBAR, ONE - TBAR))
    for r in range(2):
        for c in range(2):
            rows[a + r][a + c] = block[r][c]
    return BurauMatrix(rows)


def classical_burau(word, n):
    """Product of generator blocks for a braid word (first token leftmost)."""
    out = BurauMatrix.identity(n)
    for i, sign in braid_tokens(word, n):
        out = out @ generator_matrix(i, sign, n)
    return out


# ---------------------------------------------------------------------------
# series oracle

@dataclass(frozen=True)
class PathRecord:
    source: int
    sink: int
    jump_count: int
    weight: HSeries
    trace: tuple  # ((DecisionPoint, "stay" | "jump"), ...)


def _state_series(order):
    # t = 1 - h, t^-1 = 1 + h + h^2 + ...
    z = [Fraction(0)] * order
    t = list(z)
    t[0] = Fraction(1)
    if order > 1:
        t[1] = Fraction(-1)
    tbar = [Fraction(1)] * order
    t, tbar = HSeries(t), HSeries(tbar)
    one = HSeries.constant(1, order)
    return {1: (t, one - t), -1: (tbar, one - tbar)}


def enumerate_paths_mod_h(d, source, K):
    """Every walk from ``source`` with at most ``K`` drops, weights mod ``h^(K+1)``.

    Each drop weight is divisible by ``h`` and every loop contains a drop, so
    this list is finite and its weights sum to the exact series mod
    ``h^(K+1)``.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    system = build_system(d)
    states = _state_series(K + 1)
    out = []
    stack = [(system.entry[source - 1], 0, HSeries.constant(1, K + 1), ())]
    while stack:
        node, jumps, weight, trace = stack.pop()
        if isinstance(node, Sink):
            out.append(PathRecord(source, node.position, jumps, weight, trace))
            continue
        dp = system.variables[node]
        ws, wj = states[dp.sign]
        if jumps < K:
            stack.append((system.jump[node], jumps + 1, weight * wj, trace + ((dp, "jump"),)))
        stack.append((system.stay[node], jumps, weight * ws, trace + ((dp, "stay"),)))
    return out


def series_burau(d, K):
    """Sum of all walk weights as series in ``h``, mod ``h^(K+1)``.

    Aggregates the same walk tree as :func:`enumerate_paths_mod_h`:
    ``W(v, r)`` is the weight of walks from ``v`` with at most ``r`` drops,
    computed level by level in ``r``.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    order = K + 1
    system = build_system(d)
    states = _state_series(order)
    n = d.n
    zero = HSeries.constant(0, order)
    one = HSeries.constant(1, order)
    sink_vec = {j: tuple(one if k == j else zero for k in range(1, n + 1)) for j in range(1, n + 1)}

    # stay edges only move forward along a strand: process each strand back to front
    topo = sorted(
        range(len(system.variables)),
        key=lambda v: (system.variables[v].strand, -system.variables[v].ordinal),
    )

    def value(node, table):
        if isinstance(node, Sink):
            return sink_vec[node.position]
        return table[node]

    prev = None
    for r in range(K + 1):
        cur = [None] * len(system.variables)
        for v in topo:
            ws, wj = states[system.variables[v].sign]
            stay_vec = value(system.stay[v], cur)
            vec = [ws * x for x in stay_vec]
            if r > 0:
                jump_vec = value(system.jump[v], prev)
                vec = [a + wj * b for a, b in zip(vec, jump_vec)]
            cur[v] = tuple(vec)
        prev = cur

    rows = []
    for target in system.entry:
        if isinstance(target, Sink):
            rows.append(sink_vec[target.position])
        else:
            rows.append(prev[target])
    return SeriesMatrix(rows)


# ---------------------------------------------------------------------------
# reachability

def reachability(d):
    """``R[i][j]`` is true iff some walk joins source ``i + 1`` to sink ``j + 1``."""
    system = build_system(d)
    n = d.n
    out = []
    for start in system.entry:
        seen, sinks = set(), [False] * n
        stack = [start]
        while stack:
            node = stack.pop()
            if isinstance(node, Sink):
                sinks[node.position - 1] = True
                continue
            if node in seen:
                continue
            seen.add(node)
            stack.append(system.stay[node])
            stack.append(system.jump[node])
        out.append(tuple(sinks))
    return tuple(out)


def _bool_matmul(A, B):
    n = len(A)
    return tuple(
        tuple(any(A[i][k] and B[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def primitivity_index(R):
    """Smallest ``N`` with every entry of the boolean power ``R^N`` true.

    Searches up to the Wielandt bound ``(n - 1)^2 + 1``; a primitive matrix
    always reaches all-true within it, so ``None`` means no such ``N``.
    """
    R = tuple(tuple(bool(x) for x in r) for r in R)
    n = len(R)
    bound = (n - 1) ** 2 + 1
    P = R
    for N in range(1, bound + 1):
        if all(all(r) for r in P):
            return N
        P = _bool_matmul(P, R)
    return None
