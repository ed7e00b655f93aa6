"""Pure-Python walk kernel; same contract and output as the compiled ``_walk``."""

import numpy as np

from .rng import GOLDEN, MASK, _M1, _M2, _SCALE


def walk_counts(stay_next, jump_next, stay_prob, start, n, trials, state, max_steps=10**7):
    """Run ``trials`` walks from ``start``; return ``(sink counts, final state)``.

    Nodes ``>= 0`` are decision points, node ``-k - 1`` is sink ``k``
    (0-based).  At a decision point the walker stays when the next uniform
    draw is below ``stay_prob[node]``.
    """
    stay_next = [int(x) for x in stay_next]
    jump_next = [int(x) for x in jump_next]
    stay_prob = [float(x) for x in stay_prob]
    counts = [0] * n
    for _ in range(trials):
        node = start
        steps = 0
        while node >= 0:
            state = (state + GOLDEN) & MASK
            z = state
            z = ((z ^ (z >> 30)) * _M1) & MASK
            z = ((z ^ (z >> 27)) * _M2) & MASK
            z ^= z >> 31
            if (z >> 11) * _SCALE < stay_prob[node]:
                node = stay_next[node]
            else:
                node = jump_next[node]
            steps += 1
            if steps > max_steps:
                raise RuntimeError("walk exceeded the step limit")
        counts[-node - 1] += 1
    return np.array(counts, dtype=np.int64), state
