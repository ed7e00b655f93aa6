"""Acceptance suite: one check per criterion, one PASS/FAIL line each.

Run under pytest (lines appear in the verbose log) or directly with
``python3 tests/test_acceptance.py`` for the bare report.
"""

import itertools
import random
import sys
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from burauwalk import diagram as dg  # noqa: E402
from burauwalk import markov, moves  # noqa: E402
from burauwalk.engine import burau_matrix, series_burau  # noqa: E402
from burauwalk.errors import MoveError  # noqa: E402
from burauwalk.finitetype import bk_coefficient  # noqa: E402
from burauwalk.matrices import BurauMatrix, SeriesMatrix  # noqa: E402
from burauwalk.ratfun import ONE, T, TBAR, ZERO, expand_h, kleene_star  # noqa: E402

from corpus import looped, mixed_corpus, perturb, random_braid, random_move  # noqa: E402

T0_VALUES = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


def _block_matrix(n, i, block):
    rows = [[ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    for r, c in itertools.product(range(2), repeat=2):
        rows[i - 1 + r][i - 1 + c] = block[r][c]
    return BurauMatrix(rows)


BETA = ((ONE - T, T), (ONE, ZERO))
BETA_INV = ((ZERO, ONE), (TBAR, ONE - TBAR))


def _B(word, n):
    return burau_matrix(dg.parse_braid(word, n))


# ---------------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    checked = 0
    for n in range(2, 6):
        for i in range(1, n):
            if _B(f"s{i}", n) != _block_matrix(n, i, BETA):
                return False, f"s{i} on {n} strands differs from the block"
            if _B(f"s{i}^-1", n) != _block_matrix(n, i, BETA_INV):
                return False, f"s{i}^-1 on {n} strands differs from the block"
            checked += 2
    elapsed = time.perf_counter() - start
    return elapsed < 1.0, f"{checked} generators exact, {elapsed:.3f} s (limit 1 s)"


def criterion_2():
    relations = 0
    signs = ("", "^-1")
    for n in range(2, 6):
        for i in range(1, n):
            for e in signs:
                # cancellation
                if _B(f"s{i}{e} s{i}{signs[1 - signs.index(e)]}", n) != BurauMatrix.identity(n):
                    return False, f"s{i} does not cancel its inverse on {n} strands"
                relations += 1
        for i in range(1, n - 1):
            for e in signs:
                inv = signs[1 - signs.index(e)]
                pairs = [
                    (f"s{i}{e} s{i + 1}{e} s{i}{e}", f"s{i + 1}{e} s{i}{e} s{i + 1}{e}"),
                    # conjugated forms of the same relation
                    (f"s{i}{e} s{i + 1}{e} s{i}{inv}", f"s{i + 1}{inv} s{i}{e} s{i + 1}{e}"),
                    (f"s{i + 1}{e} s{i}{e} s{i + 1}{inv}", f"s{i}{inv} s{i + 1}{e} s{i}{e}"),
                ]
                for a, b in pairs:
                    if _B(a, n) != _B(b, n):
                        return False, f"{a} != {b} on {n} strands"
                    relations += 1
        for i, j in itertools.combinations(range(1, n), 2):
            if j - i < 2:
                continue
            for e, f in itertools.product(signs, repeat=2):
                if _B(f"s{i}{e} s{j}{f}", n) != _B(f"s{j}{f} s{i}{e}", n):
                    return False, f"s{i}{e} and s{j}{f} do not commute on {n} strands"
                relations += 1
    return True, f"{relations} braid, commutation and cancellation identities exact for n <= 5"


def _oracle_corpus():
    corpus = mixed_corpus(2024, 60, max_crossings=12)
    rng = random.Random(99)
    # extra move-perturbed diagrams built from longer positive and mixed words
    for _ in range(20):
        corpus.append(perturb(rng, random_braid(rng, length=rng.randint(3, 8)), 3, 12))
    return [d for d in corpus if d.crossing_count <= 12]


def criterion_3():
    corpus = _oracle_corpus()
    start = time.perf_counter()
    for d in corpus:
        lhs = series_burau(d, 5)
        rhs = SeriesMatrix([[expand_h(x, 6) for x in row] for row in burau_matrix(d).rows])
        if lhs != rhs:
            return False, f"mismatch on\n{dg.render_tangle(d)}"
    elapsed = time.perf_counter() - start
    sizes = Counter(d.crossing_count for d in corpus)
    ok = len(corpus) >= 50 and elapsed < 60
    return ok, (
        f"{len(corpus)} diagrams (max {max(sizes)} crossings), K = 5, "
        f"exact equality, {elapsed:.2f} s (limit 60 s)"
    )


def criterion_4():
    rng = random.Random(4)
    kinds = Counter()
    applied = 0
    d = None
    while applied < 200:
        if d is None or d.crossing_count > 14 or rng.random() < 0.1:
            d = random_braid(rng, length=rng.randint(1, 6))
        sites = moves.r3_sites(d)
        move = rng.choice(sites) if sites and rng.random() < 0.3 else random_move(rng, d)
        try:
            e = moves.apply_move(d, move)
        except MoveError as exc:
            return False, f"generated move {move} was rejected: {exc}"
        if burau_matrix(e) != burau_matrix(d):
            return False, f"{move} changed the matrix of\n{dg.render_tangle(d)}"
        kinds[type(move).__name__] += 1
        applied += 1
        d = e
    mix = ", ".join(f"{k} {v}" for k, v in sorted(kinds.items()))
    every_kind = len(kinds) == 5
    return every_kind, f"{applied} moves ({mix}), matrix unchanged"


def _one_strand_diagrams(count):
    rng = random.Random(1)
    out = []
    for _ in range(count):
        d = dg.identity(1)
        for _ in range(rng.randint(1, 5)):
            d = moves.apply_move(d, random_move(rng, d))
        out.append(d)
    return out


def criterion_5():
    corpus = _oracle_corpus()
    for d in corpus:
        B = burau_matrix(d)
        if any(s != ONE for s in B.row_sums()):
            return False, f"row sums differ from 1 on\n{dg.render_tangle(d)}"
        if B.evaluate(1) != BurauMatrix.permutation(d.permutation).evaluate(1):
            return False, f"B(1) is not the permutation matrix of\n{dg.render_tangle(d)}"
    singles = _one_strand_diagrams(30)
    for d in singles:
        if burau_matrix(d) != BurauMatrix([[ONE]]):
            return False, f"1-strand diagram does not give (1):\n{dg.render_tangle(d)}"
    most = max(d.crossing_count for d in singles)
    return True, (
        f"{len(corpus)} diagrams: row sums 1 and B(1) = permutation; "
        f"{len(singles)} one-strand diagrams (up to {most} kinks/crossings) give (1)"
    )


def criterion_6():
    if kleene_star(T * (ONE - TBAR)) != ONE / (2 - T):
        return False, "kleene_star(t(1 - 1/t)) != 1/(2 - t)"
    kink = dg.parse_tangle("strands 1\ncrossing 1 -\nstrand 1 from 1 to 1: U1 O1\n")
    if burau_matrix(kink) != BurauMatrix([[ONE]]):
        return False, "negative kink does not give (1)"
    inv = ONE / (2 - T)
    target = BurauMatrix([[inv, (ONE - T) * inv], [(TBAR - 1) * inv, (3 - T - TBAR) * inv]])
    got = burau_matrix(looped())
    if got != target:
        return False, f"reconstructed two-strand diagram gives\n{got.to_text()}"
    return True, "geometric closure 1/(2 - t), negative kink (1), reconstructed diagram matrix exact"


def criterion_7():
    rng = random.Random(77)
    start = time.perf_counter()
    cases = Counter()
    for k in (1, 2, 3):
        for trial in range(8):
            positive = trial % 2 == 0
            d = random_braid(rng, length=rng.randint(k, 7), positive=positive)
            if trial % 4 == 3:
                d = perturb(rng, d, 2, 10)
            s = dg.make_singular(d, rng.sample(range(1, d.crossing_count + 1), k))
            for j in range(k):
                if any(x != 0 for row in bk_coefficient(s, j) for x in row):
                    return False, f"b_{j} nonzero with {k} double points on\n{dg.render_tangle(s)}"
            cases[k] += 1
    elapsed = time.perf_counter() - start
    detail = ", ".join(f"|D| = {k}: {v}" for k, v in sorted(cases.items()))
    return elapsed < 30, f"{detail} links; b_k = 0 for k < |D|; {elapsed:.2f} s (limit 30 s)"


def _positive_diagrams(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        d = random_braid(rng, n=rng.randint(2, 4), length=rng.randint(2, 7), positive=True)
        if rng.random() < 0.3:
            d = moves.apply_move(d, moves.R1Insert(rng.randint(1, d.n), 0, 1))
        out.append(d)
    return out


def criterion_8():
    diagrams = _positive_diagrams(8, 12)
    trials = 100_000
    worst_z = 0.0
    worst_ck = 0.0
    for idx, d in enumerate(diagrams):
        for t0 in T0_VALUES:
            P = markov.evaluate_stochastic(d, t0).matrix
            if (P < 0).any() or np.abs(P.sum(axis=1) - 1).max() > 1e-12:
                return False, f"diagram {idx} is not stochastic at t = {t0}"
            est = markov.simulate_walks(d, t0, trials, seed=1000 + idx)
            freq = est.frequencies
            sigma = np.sqrt(P * (1 - P) / trials)
            degenerate = sigma == 0
            if (freq[degenerate] != P[degenerate]).any():
                return False, f"impossible or certain exit violated on diagram {idx}, t = {t0}"
            z = np.abs(freq - P)[~degenerate] / sigma[~degenerate]
            worst_z = max(worst_z, float(z.max(initial=0.0)))
            other = diagrams[(idx + 1) % len(diagrams)]
            if other.n == d.n:
                Q = markov.evaluate_stochastic(other, t0).matrix
                PQ = markov.evaluate_stochastic(dg.compose(d, other), t0).matrix
                worst_ck = max(worst_ck, float(np.abs(PQ - P @ Q).max()))
            P2 = markov.evaluate_stochastic(dg.compose(d, d), t0).matrix
            worst_ck = max(worst_ck, float(np.abs(P2 - P @ P).max()))
    ok = worst_z <= 5 and worst_ck <= 1e-10
    return ok, (
        f"{len(diagrams)} diagrams x t in {{1/4, 1/2, 3/4}}, {trials} walks per source: "
        f"max |z| = {worst_z:.2f} (limit 5), Chapman-Kolmogorov error {worst_ck:.1e} (limit 1e-10)"
    )


def criterion_9():
    candidates = _positive_diagrams(9, 30)
    checked = 0
    worst_limit = worst_slope = 0.0
    for d in candidates:
        N = markov.persistence_exponent(d)
        if N is None:
            continue
        P_N = markov.evaluate_stochastic(dg.power(d, N), Fraction(1, 2)).matrix
        if not (P_N > 0).all():
            return False, f"power {N} not positive for\n{dg.render_tangle(d)}"
        rep = markov.persistence_check(d, Fraction(1, 2), 200)
        st = markov.stationary(d, Fraction(1, 2))
        Pn = np.linalg.matrix_power(markov.evaluate_stochastic(d, Fraction(1, 2)).matrix, 200)
        worst_limit = max(worst_limit, float(np.abs(Pn - st.u).max()))
        worst_slope = max(worst_slope, float(np.abs(rep.slopes - st.u).max()))
        checked += 1
    ok = checked >= 10 and worst_limit <= 1e-8 and worst_slope <= 1e-4
    return ok, (
        f"{checked} regular diagrams: d^N positive, max |P^n - u| = {worst_limit:.1e} "
        f"(limit 1e-8), max slope error = {worst_slope:.1e} (limit 1e-4)"
    )


def criterion_10():
    # every quantitative statement, recomputed at desk scale
    checks = {
        "positive kink paths t + (1 - t)": T + (ONE - T) == ONE,
        "negative kink series": TBAR * kleene_star(ONE - TBAR) == ONE,
        "second move path sum": (ONE - TBAR) + TBAR * (ONE - T) == ZERO,
        "third move path sum": (ONE - TBAR) + TBAR * (ONE - T) ** 2 == T - 1 == T * (ONE - TBAR),
        "generator blocks": _B("s1", 2) == BurauMatrix(BETA)
        and _B("s1^-1", 2) == BurauMatrix(BETA_INV),
        "braid relation": _B("s1 s2 s1", 3) == _B("s2 s1 s2", 3),
        "loop closure": kleene_star(T * (ONE - TBAR)) == ONE / (2 - T),
        "two-strand example": criterion_6()[0],
    }
    local = [
        (dg.parse_braid("s1 s1^-1", 2), dg.identity(2)),
        (dg.parse_braid("s1 s2 s1", 3), dg.parse_braid("s2 s1 s2", 3)),
    ]
    checks["local move pictures"] = all(burau_matrix(a) == burau_matrix(b) for a, b in local)
    failed = [k for k, v in checks.items() if not v]
    if failed:
        return False, "not reproduced: " + ", ".join(failed)
    return True, f"{len(checks)} quantitative statements reproduced exactly; no large-scale runs needed"


CRITERIA = [
    (1, "generator fidelity", criterion_1),
    (2, "braid and commutation identities", criterion_2),
    (3, "series oracle equivalence", criterion_3),
    (4, "move invariance", criterion_4),
    (5, "row sums, kinks, t = 1", criterion_5),
    (6, "loop closure and two-strand example", criterion_6),
    (7, "finite-type vanishing", criterion_7),
    (8, "Markov suite", criterion_8),
    (9, "regularity and persistence", criterion_9),
    (10, "desk-scale reproducibility", criterion_10),
]


def report(number, title, fn):
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} ({title}): {detail}"
    return ok, line


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, line = report(number, title, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
