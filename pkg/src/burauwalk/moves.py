"""Reidemeister moves as encounter-list surgery.

Strands are addressed by source position and sites by encounter index
(``0..len``; insertion happens before the encounter currently at that index).

Only braid-like triangles are slid by R3: all three strands pass through the
triangle in the same direction, the crossings occur at three distinct
heights, and every crossing sign agrees with the left-to-right order of the
strands below the triangle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Union

from .diagram import Role, _raw, build_diagram
from .errors import MoveError

__all__ = [
    "R1Insert",
    "R1Delete",
    "R2Insert",
    "R2Delete",
    "R3Slide",
    "MoveSpec",
    "apply_move",
    "deletion_sites",
    "r3_sites",
    "parse_move",
]


@dataclass(frozen=True)
class R1Insert:
    """Kink of the given sign; default order is over-first for ``+``, under-first for ``-``."""

    strand: int
    position: int
    sign: int
    over_first: Optional[bool] = None


@dataclass(frozen=True)
class R1Delete:
    strand: int
    position: int


@dataclass(frozen=True)
class R2Insert:
    """Two fresh crossings of opposite sign: over/over on one segment, under/under on the other.

    ``sign`` is the sign of the first crossing met on the over segment.
    ``parallel=False`` lists the under encounters in reverse order.
    """

    over_strand: int
    over_position: int
    under_strand: int
    under_position: int
    sign: int = 1
    parallel: bool = True


@dataclass(frozen=True)
class R2Delete:
    """Remove the cancelling pair whose over encounters sit at ``position``, ``position + 1``."""

    strand: int
    position: int


@dataclass(frozen=True)
class R3Slide:
    crossings: tuple


MoveSpec = Union[R1Insert, R1Delete, R2Insert, R2Delete, R3Slide]


def _check_strand(strands, k):
    if not 1 <= k <= len(strands):
        raise MoveError(f"no strand with source {k}")
    return strands[k - 1][2]


def _check_pos(encs, pos, span=0):
    if not 0 <= pos <= len(encs) - span:
        raise MoveError(f"position {pos} outside strand of length {len(encs)}")


def apply_move(d, move):
    """Return the diagram obtained from ``d`` by ``move``."""
    strands, signs = _raw(d)
    strands = [(a, b, list(e)) for a, b, e in strands]
    fresh = d.crossing_count + 1

    if isinstance(move, R1Insert):
        if move.sign not in (1, -1):
            raise MoveError("kink sign must be +1 or -1")
        encs = _check_strand(strands, move.strand)
        _check_pos(encs, move.position)
        over_first = move.over_first if move.over_first is not None else move.sign > 0
        pair = [(fresh, Role.OVER), (fresh, Role.UNDER)]
        encs[move.position:move.position] = pair if over_first else pair[::-1]
        signs[fresh] = move.sign

    elif isinstance(move, R1Delete):
        encs = _check_strand(strands, move.strand)
        _check_pos(encs, move.position, 2)
        a, b = encs[move.position], encs[move.position + 1]
        if a[0] != b[0]:
            raise MoveError(f"no kink at strand {move.strand}, position {move.position}")
        del encs[move.position:move.position + 2]
        del signs[a[0]]

    elif isinstance(move, R2Insert):
        if move.sign not in (1, -1):
            raise MoveError("crossing sign must be +1 or -1")
        top = _check_strand(strands, move.over_strand)
        bot = _check_strand(strands, move.under_strand)
        _check_pos(top, move.over_position)
        _check_pos(bot, move.under_position)
        c1, c2 = fresh, fresh + 1
        over = [(c1, Role.OVER), (c2, Role.OVER)]
        under = [(c1, Role.UNDER), (c2, Role.UNDER)]
        if not move.parallel:
            under.reverse()
        if top is bot:
            # both insertions refer to the original list; do the later one first
            first, second = sorted(
                [(move.over_position, 0, over), (move.under_position, 1, under)],
                key=lambda x: (x[0], x[1]),
                reverse=True,
            )
            top[first[0]:first[0]] = first[2]
            top[second[0]:second[0]] = second[2]
        else:
            top[move.over_position:move.over_position] = over
            bot[move.under_position:move.under_position] = under
        signs[c1], signs[c2] = move.sign, -move.sign

    elif isinstance(move, R2Delete):
        encs = _check_strand(strands, move.strand)
        _check_pos(encs, move.position, 2)
        (c1, r1), (c2, r2) = encs[move.position], encs[move.position + 1]
        if not (r1 is Role.OVER and r2 is Role.OVER and c1 != c2 and signs[c1] == -signs[c2]):
            raise MoveError(
                f"no cancelling pair over strand {move.strand} at position {move.position}"
            )
        u1 = d.locations[c1][Role.UNDER]
        u2 = d.locations[c2][Role.UNDER]
        if u1[0] != u2[0] or abs(u1[1] - u2[1]) != 1:
            raise MoveError("under encounters of the pair are not adjacent")
        for si in sorted({u1[0], move.strand - 1}):
            strands[si] = (
                strands[si][0],
                strands[si][1],
                [e for e in strands[si][2] if e[0] not in (c1, c2)],
            )
        del signs[c1], signs[c2]

    elif isinstance(move, R3Slide):
        segments = _triangle(d, tuple(move.crossings))
        if segments is None:
            raise MoveError(f"crossings {tuple(move.crossings)} do not form a braid-like triangle")
        for si, pos in segments:
            encs = strands[si][2]
            encs[pos], encs[pos + 1] = encs[pos + 1], encs[pos]

    else:
        raise MoveError(f"unknown move {move!r}")

    return build_diagram(d.n, strands, signs)


def _triangle(d, crossings):
    """Segments ``[(strand index, pos)]`` of a slidable triangle, or ``None``."""
    if len(crossings) != 3 or len(set(crossings)) != 3:
        return None
    if not all(1 <= c <= d.crossing_count for c in crossings):
        return None
    loc = d.locations
    spots = {}
    for c in crossings:
        for role, where in loc[c].items():
            spots[where] = (c, role)
    # candidate segments: adjacent encounters of two different triangle crossings
    cands = []
    for (si, pos), (c, _) in spots.items():
        nxt = spots.get((si, pos + 1))
        if nxt is not None and nxt[0] != c:
            cands.append((si, pos))
    for choice in itertools.combinations(cands, 3):
        used = set()
        for si, pos in choice:
            used.add((si, pos))
            used.add((si, pos + 1))
        if len(used) != 6:
            continue
        pairs = {frozenset((spots[(si, p)][0], spots[(si, p + 1)][0])) for si, p in choice}
        if len(pairs) != 3:
            continue
        if _slidable(d, choice, spots):
            return list(choice)
    return None


def _slidable(d, segments, spots):
    below = {}  # crossing -> set of crossings it precedes on some segment
    info = []
    for si, pos in segments:
        (ca, ra), (cb, rb) = spots[(si, pos)], spots[(si, pos + 1)]
        below.setdefault(ca, set()).add(cb)
        info.append(((ca, ra), (cb, rb)))
    # one strand passes over both others and one under both
    kinds = sorted((ra.value + rb.value) for (_, ra), (_, rb) in info)
    if kinds[0] != "OO" or kinds[-1] != "UU":
        return False
    # heights must be a total order: the three precedences are acyclic
    order = sorted(below, key=lambda c: -len(below[c]))
    if len(order) != 2 or len(below[order[0]]) != 2:
        return False
    lo = order[0]
    mid = order[1]
    (hi,) = below[mid]
    if hi not in below[lo]:
        return False
    # The strand holding the lowest and highest crossings starts in the
    # middle; the lowest crossing may lie on either side of it.
    by_crossing = {}
    for (ca, ra), (cb, rb) in info:
        key = frozenset((ca, cb))
        by_crossing.setdefault(ca, {})[ra] = key
        by_crossing.setdefault(cb, {})[rb] = key
    if any(set(roles) != {Role.OVER, Role.UNDER} for roles in by_crossing.values()):
        return False
    middle = frozenset((lo, hi))
    for left, right in ((frozenset((lo, mid)), frozenset((mid, hi))),
                        (frozenset((mid, hi)), frozenset((lo, mid)))):
        column = {left: 0, middle: 1, right: 2}
        # over strand starting left of the under strand gives a positive crossing
        if all(
            d.sign(c) == (1 if column[roles[Role.OVER]] < column[roles[Role.UNDER]] else -1)
            for c, roles in by_crossing.items()
        ):
            return True
    return False


def deletion_sites(d):
    """Every currently legal ``R1Delete`` and ``R2Delete``."""
    out = []
    for k, strand in enumerate(d.strands, start=1):
        encs = strand.encounters
        for p in range(len(encs) - 1):
            if encs[p].crossing == encs[p + 1].crossing:
                out.append(R1Delete(k, p))
            else:
                move = R2Delete(k, p)
                try:
                    apply_move(d, move)
                except MoveError:
                    continue
                out.append(move)
    return out


def r3_sites(d):
    """Every slidable triangle, as ``R3Slide`` moves."""
    adjacent = {}
    for si, strand in enumerate(d.strands):
        encs = strand.encounters
        for p in range(len(encs) - 1):
            a, b = encs[p].crossing, encs[p + 1].crossing
            if a != b:
                adjacent.setdefault(a, set()).add(b)
                adjacent.setdefault(b, set()).add(a)
    out = []
    seen = set()
    for a in adjacent:
        for b in adjacent[a]:
            for c in adjacent[b] & adjacent[a]:
                key = frozenset((a, b, c))
                if len(key) != 3 or key in seen:
                    continue
                seen.add(key)
                triple = tuple(sorted(key))
                if _triangle(d, triple) is not None:
                    out.append(R3Slide(triple))
    return out


def parse_move(kind, **fields):
    """Build a move from CLI-style fields (``kind`` like ``"r2-insert"``)."""
    kinds = {
        "r1-insert": R1Insert,
        "r1-delete": R1Delete,
        "r2-insert": R2Insert,
        "r2-delete": R2Delete,
        "r3": R3Slide,
    }
    if kind not in kinds:
        raise MoveError(f"unknown move kind {kind!r}")
    return kinds[kind](**fields)
