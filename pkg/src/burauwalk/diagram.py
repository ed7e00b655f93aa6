"""Combinatorial string-link diagrams.

A diagram on ``n`` strands is a list of strands, each running from a bottom
source position to a top sink position and meeting crossings in order.
Each crossing is met exactly twice: once on the upper segment (``O``) and
once on the lower segment (``U``).  Nothing about planarity is checked; the
walk semantics only needs this Gauss-code level data.

Crossing ids are relabelled ``1..m`` in order of first appearance (strands
taken by source position) whenever a diagram is built, so ``==`` on two
diagrams is a meaningful structural comparison.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .errors import DiagramError, TangleSyntaxError

__all__ = [
    "Role",
    "Encounter",
    "Strand",
    "StringLinkDiagram",
    "SingularStringLink",
    "build_diagram",
    "identity",
    "parse_braid",
    "braid_tokens",
    "parse_tangle",
    "parse_singular_tangle",
    "render_tangle",
    "compose",
    "power",
    "mirror_vertical",
    "make_singular",
    "split_union",
]


class Role(str, enum.Enum):
    OVER = "O"
    UNDER = "U"

    def swapped(self):
        return Role.UNDER if self is Role.OVER else Role.OVER


class Encounter(NamedTuple):
    crossing: int
    role: Role

    def __str__(self):
        return f"{self.role.value}{self.crossing}"


@dataclass(frozen=True)
class Strand:
    source: int
    sink: int
    encounters: tuple


@dataclass(frozen=True)
class StringLinkDiagram:
    """Validated, canonically labelled string link.

    ``strands`` is sorted by source position and ``signs[c - 1]`` is the
    sign of crossing ``c``.
    """

    n: int
    strands: tuple
    signs: tuple

    @property
    def crossing_count(self):
        return len(self.signs)

    @property
    def crossings(self):
        return {c: s for c, s in enumerate(self.signs, start=1)}

    def sign(self, c):
        return self.signs[c - 1]

    @property
    def permutation(self):
        """``permutation[i - 1]`` is the sink reached by the strand leaving source ``i``."""
        return tuple(s.sink for s in self.strands)

    def strand_from(self, source):
        return self.strands[source - 1]

    def is_positive(self):
        return all(s > 0 for s in self.signs)

    @cached_property
    def locations(self):
        """crossing -> {Role: (strand index, position)}, strand index 0-based."""
        loc = {}
        for si, strand in enumerate(self.strands):
            for pos, enc in enumerate(strand.encounters):
                loc.setdefault(enc.crossing, {})[enc.role] = (si, pos)
        return loc

    def __str__(self):
        return render_tangle(self)


@dataclass(frozen=True)
class SingularStringLink:
    """A diagram some of whose crossings are double points.

    The stored roles and sign of a double point are its base resolution.
    """

    diagram: StringLinkDiagram
    double: frozenset

    @property
    def n(self):
        return self.diagram.n

    def __str__(self):
        return render_tangle(self.diagram, self.double)


# ---------------------------------------------------------------------------
# construction and validation

def build_diagram(n, strands, signs, double=()):
    """Validate raw data and return the canonical diagram.

    ``strands`` is an iterable of ``(source, sink, encounters)`` where each
    encounter is ``(crossing_id, role)`` with role ``"O"``/``"U"`` or a
    :class:`Role`; ``signs`` maps crossing id to ``+1``/``-1``.  When
    ``double`` is non-empty a :class:`SingularStringLink` is returned.
    """
    if n < 1:
        raise DiagramError("a string link needs at least one strand")
    strands = [(src, snk, [(cid, Role(role)) for cid, role in encs]) for src, snk, encs in strands]
    if len(strands) != n:
        raise DiagramError(f"expected {n} strands, found {len(strands)}")
    sources = sorted(s[0] for s in strands)
    sinks = sorted(s[1] for s in strands)
    if sources != list(range(1, n + 1)):
        raise DiagramError(f"source positions {sources} are not a permutation of 1..{n}")
    if sinks != list(range(1, n + 1)):
        raise DiagramError(f"sink positions {sinks} are not a permutation of 1..{n}")

    signs = dict(signs)
    roles = {cid: [] for cid in signs}
    for _, _, encs in strands:
        for cid, role in encs:
            if cid not in roles:
                raise DiagramError(f"crossing {cid} is used but not declared")
            roles[cid].append(role)
    for cid, rs in roles.items():
        if len(rs) != 2:
            word = "encounter" if len(rs) == 1 else "encounters"
            raise DiagramError(f"crossing {cid} has {len(rs)} {word}")
        if rs[0] == rs[1]:
            kind = "Over" if rs[0] is Role.OVER else "Under"
            raise DiagramError(f"crossing {cid} has two {kind} encounters")
        if signs[cid] not in (1, -1):
            raise DiagramError(f"crossing {cid} has invalid sign {signs[cid]!r}")
    unknown = set(double) - set(signs)
    if unknown:
        raise DiagramError(f"unknown double point(s) {sorted(unknown, key=str)}")

    strands.sort(key=lambda s: s[0])
    relabel = {}
    for _, _, encs in strands:
        for cid, _ in encs:
            if cid not in relabel:
                relabel[cid] = len(relabel) + 1
    new_signs = [0] * len(relabel)
    for cid, new in relabel.items():
        new_signs[new - 1] = signs[cid]
    diagram = StringLinkDiagram(
        n=n,
        strands=tuple(
            Strand(src, snk, tuple(Encounter(relabel[cid], role) for cid, role in encs))
            for src, snk, encs in strands
        ),
        signs=tuple(new_signs),
    )
    if double:
        return SingularStringLink(diagram, frozenset(relabel[c] for c in double))
    return diagram


def _raw(d):
    """Diagram back to the ``build_diagram`` argument form."""
    return (
        [(s.source, s.sink, [(e.crossing, e.role) for e in s.encounters]) for s in d.strands],
        d.crossings,
    )


def identity(n):
    """The trivial diagram: ``n`` parallel strands, no crossings."""
    return build_diagram(n, [(i, i, []) for i in range(1, n + 1)], {})


def split_union(a, b):
    """Place ``b`` to the right of ``a`` with no crossings between them."""
    m = a.crossing_count
    strands = [(s.source, s.sink, [(e.crossing, e.role) for e in s.encounters]) for s in a.strands]
    strands += [
        (s.source + a.n, s.sink + a.n, [(e.crossing + m, e.role) for e in s.encounters])
        for s in b.strands
    ]
    signs = dict(a.crossings)
    signs.update({c + m: s for c, s in b.crossings.items()})
    return build_diagram(a.n + b.n, strands, signs)


# ---------------------------------------------------------------------------
# braid words

_TOKEN = re.compile(r"s(\d+)(\^-1)?$")


def braid_tokens(word, n):
    """Parse a braid word into ``[(i, +1 | -1), ...]``."""
    out = []
    for match in re.finditer(r"\S+", word):
        tok = match.group()
        m = _TOKEN.match(tok)
        if not m:
            raise TangleSyntaxError(f"malformed braid token {tok!r}", 1, match.start() + 1)
        i = int(m.group(1))
        if not 1 <= i <= n - 1:
            raise TangleSyntaxError(
                f"generator s{i} out of range for {n} strands", 1, match.start() + 1
            )
        out.append((i, -1 if m.group(2) else 1))
    return out


def parse_braid(word, n):
    """Diagram of a braid word read bottom to top.

    For ``s_i`` the strand entering at position ``i`` passes over and exits at
    ``i + 1``; for ``s_i^-1`` the strand entering at ``i + 1`` passes over
    with sign ``-1``.
    """
    if n < 1:
        raise DiagramError("a braid needs at least one strand")
    pos = list(range(1, n + 1))  # pos[p - 1] = strand (by source) sitting at position p
    encs = {s: [] for s in range(1, n + 1)}
    signs = {}
    for c, (i, e) in enumerate(braid_tokens(word, n), start=1):
        left, right = pos[i - 1], pos[i]
        over, under = (left, right) if e > 0 else (right, left)
        encs[over].append((c, Role.OVER))
        encs[under].append((c, Role.UNDER))
        signs[c] = e
        pos[i - 1], pos[i] = right, left
    sink = {strand: p for p, strand in enumerate(pos, start=1)}
    return build_diagram(n, [(s, sink[s], encs[s]) for s in range(1, n + 1)], signs)


# ---------------------------------------------------------------------------
# tangle files

_STRAND = re.compile(r"strand\s+(\S+)\s+from\s+(\S+)\s+to\s+([^\s:]+)\s*:(.*)$")
_ENC = re.compile(r"([OU])([A-Za-z0-9_]+)$")
_ID = re.compile(r"[A-Za-z0-9_]+$")


def _int_field(text, what, line, col):
    try:
        return int(text)
    except ValueError:
        raise TangleSyntaxError(f"{what} must be an integer, got {text!r}", line, col) from None


def _read_tangle(text):
    n = None
    signs = {}
    double = set()
    strands = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        head = stripped.split()[0]
        if n is None and head != "strands":
            raise TangleSyntaxError("file must start with 'strands <n>'", lineno, col0)
        if head == "strands":
            parts = stripped.split()
            if n is not None:
                raise TangleSyntaxError("duplicate 'strands' line", lineno, col0)
            if len(parts) != 2:
                raise TangleSyntaxError("expected 'strands <n>'", lineno, col0)
            n = _int_field(parts[1], "strand count", lineno, col0)
            if n < 1:
                raise TangleSyntaxError("strand count must be positive", lineno, col0)
        elif head == "crossing":
            parts = stripped.split()
            if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "double"):
                raise TangleSyntaxError("expected 'crossing <id> <+|-> [double]'", lineno, col0)
            cid, sgn = parts[1], parts[2]
            if not _ID.match(cid):
                raise TangleSyntaxError(f"bad crossing id {cid!r}", lineno, col0)
            if sgn not in ("+", "-"):
                raise TangleSyntaxError(f"crossing sign must be + or -, got {sgn!r}", lineno, col0)
            if cid in signs:
                raise TangleSyntaxError(f"crossing {cid} declared twice", lineno, col0)
            signs[cid] = 1 if sgn == "+" else -1
            if len(parts) == 4:
                double.add(cid)
        elif head == "strand":
            m = _STRAND.match(stripped)
            if not m:
                raise TangleSyntaxError(
                    "expected 'strand <k> from <i> to <j>: <encounters>'", lineno, col0
                )
            k = _int_field(m.group(1), "strand label", lineno, col0)
            src = _int_field(m.group(2), "source position", lineno, col0)
            snk = _int_field(m.group(3), "sink position", lineno, col0)
            if not 1 <= k <= n:
                raise TangleSyntaxError(f"strand label {k} outside 1..{n}", lineno, col0)
            if k in strands:
                raise TangleSyntaxError(f"strand {k} listed twice", lineno, col0)
            offset = col0 - 1 + m.start(4)
            encs = []
            for em in re.finditer(r"\S+", m.group(4)):
                tok = em.group()
                e = _ENC.match(tok)
                if not e:
                    raise TangleSyntaxError(
                        f"bad encounter {tok!r} (expected O<id> or U<id>)",
                        lineno,
                        offset + em.start() + 1,
                    )
                encs.append((e.group(2), e.group(1)))
            strands[k] = (src, snk, encs)
        else:
            raise TangleSyntaxError(f"unknown directive {head!r}", lineno, col0)
    if n is None:
        raise TangleSyntaxError("empty tangle file", 1, 1)
    missing = [k for k in range(1, n + 1) if k not in strands]
    if missing:
        raise DiagramError(f"missing strand line(s) for {missing}")
    return n, [strands[k] for k in range(1, n + 1)], signs, double


def parse_tangle(text):
    """Parse and validate a tangle file without double points."""
    n, strands, signs, double = _read_tangle(text)
    if double:
        raise DiagramError("file marks double points; read it as a singular tangle")
    return build_diagram(n, strands, signs)


def parse_singular_tangle(text):
    """Parse a tangle file whose crossings may carry the ``double`` flag."""
    n, strands, signs, double = _read_tangle(text)
    d = build_diagram(n, strands, signs, double)
    if isinstance(d, StringLinkDiagram):
        return SingularStringLink(d, frozenset())
    return d


def render_tangle(d, double=frozenset()):
    if isinstance(d, SingularStringLink):
        d, double = d.diagram, d.double
    lines = [f"strands {d.n}"]
    for c, s in d.crossings.items():
        lines.append(f"crossing {c} {'+' if s > 0 else '-'}" + (" double" if c in double else ""))
    for k, s in enumerate(d.strands, start=1):
        encs = " ".join(str(e) for e in s.encounters)
        lines.append(f"strand {k} from {s.source} to {s.sink}:" + (f" {encs}" if encs else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# operations

def compose(a, b):
    """Stack ``b`` on top of ``a`` (sink ``j`` of ``a`` feeds source ``j`` of ``b``)."""
    if a.n != b.n:
        raise DiagramError(f"cannot compose diagrams on {a.n} and {b.n} strands")
    m = a.crossing_count
    strands = []
    for s in a.strands:
        top = b.strand_from(s.sink)
        encs = [(e.crossing, e.role) for e in s.encounters]
        encs += [(e.crossing + m, e.role) for e in top.encounters]
        strands.append((s.source, top.sink, encs))
    signs = dict(a.crossings)
    signs.update({c + m: sg for c, sg in b.crossings.items()})
    return build_diagram(a.n, strands, signs)


def power(d, N):
    """``N``-fold stack of ``d`` with itself."""
    if N < 1:
        raise ValueError("power needs N >= 1")
    out = d
    for _ in range(N - 1):
        out = compose(d, out)
    return out


def mirror_vertical(d):
    """Left-right reflection: positions ``i -> n + 1 - i``, every sign flipped."""
    n = d.n
    strands = [
        (n + 1 - s.source, n + 1 - s.sink, [(e.crossing, e.role) for e in s.encounters])
        for s in d.strands
    ]
    return build_diagram(n, strands, {c: -s for c, s in d.crossings.items()})


def make_singular(d, ids):
    """Mark the crossings ``ids`` of ``d`` as double points."""
    ids = frozenset(ids)
    unknown = [c for c in ids if not (isinstance(c, int) and 1 <= c <= d.crossing_count)]
    if unknown:
        raise DiagramError(f"unknown crossing id(s) {sorted(map(str, unknown))}")
    return SingularStringLink(d, ids)
