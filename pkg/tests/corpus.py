"""Seeded generators of random diagrams shared by the test modules."""

import random

from burauwalk import diagram as dg
from burauwalk import moves
from burauwalk.errors import MoveError

LOOPED = """\
strands 2
crossing 1 -
crossing 2 +
crossing 3 +
strand 1 from 1 to 1: U1 O2 U3 O1
strand 2 from 2 to 2: O3 U2
"""


def looped():
    return dg.parse_tangle(LOOPED)


def braid_word(rng, n, length, positive=False):
    toks = []
    for _ in range(length):
        i = rng.randint(1, n - 1)
        neg = not positive and rng.random() < 0.5
        toks.append(f"s{i}^-1" if neg else f"s{i}")
    return " ".join(toks)


def random_braid(rng, n=None, length=None, positive=False):
    n = n or rng.randint(2, 4)
    length = rng.randint(0, 6) if length is None else length
    word = braid_word(rng, n, length, positive)
    return dg.parse_braid(word, n)


def random_move(rng, d, positive=False):
    """A random legal move on ``d`` (insertions always apply)."""
    options = moves.deletion_sites(d) + moves.r3_sites(d)
    if options and rng.random() < 0.5:
        return rng.choice(options)
    k = rng.randint(1, d.n)
    length = len(d.strand_from(k).encounters)
    if rng.random() < 0.5:
        sign = 1 if positive else rng.choice((1, -1))
        return moves.R1Insert(k, rng.randint(0, length), sign, rng.choice((None, True, False)))
    k2 = rng.randint(1, d.n)
    length2 = len(d.strand_from(k2).encounters)
    return moves.R2Insert(
        k, rng.randint(0, length), k2, rng.randint(0, length2),
        rng.choice((1, -1)), rng.random() < 0.5,
    )


def perturb(rng, d, steps, max_crossings=12):
    for _ in range(steps):
        move = random_move(rng, d)
        try:
            nxt = moves.apply_move(d, move)
        except MoveError:
            continue
        if nxt.crossing_count <= max_crossings:
            d = nxt
    return d


def mixed_corpus(seed, count, max_crossings=12):
    """Braid-generated diagrams, half of them perturbed by random moves."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        d = random_braid(rng, length=rng.randint(0, 7))
        if k % 2:
            d = perturb(rng, d, rng.randint(1, 4), max_crossings)
        out.append(d)
    return out


def positive_corpus(seed, count, min_length=1):
    rng = random.Random(seed)
    return [
        random_braid(rng, length=rng.randint(min_length, 6), positive=True)
        for _ in range(count)
    ]
