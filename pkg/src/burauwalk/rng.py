"""SplitMix64 streams shared by the compiled and pure-Python walk kernels.

Stream rule: the walks leaving source ``i`` (1-based) draw from a SplitMix64
generator whose initial state is ``mix64(seed + i * GOLDEN mod 2**64)``.
A uniform double is ``(x >> 11) * 2**-53``; both kernels produce it with
exact arithmetic, so their outputs agree bit for bit on every platform.
"""

MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_SCALE = 2.0 ** -53


def mix64(z):
    z &= MASK
    z = ((z ^ (z >> 30)) * _M1) & MASK
    z = ((z ^ (z >> 27)) * _M2) & MASK
    return z ^ (z >> 31)


def stream_state(seed, source):
    """Initial SplitMix64 state for the walks leaving ``source``."""
    if not 0 <= seed <= MASK:
        raise ValueError("seed must fit in 64 bits")
    return mix64((seed + source * GOLDEN) & MASK)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, state):
        self.state = state & MASK

    def next_u64(self):
        self.state = (self.state + GOLDEN) & MASK
        return mix64(self.state)

    def random(self):
        return (self.next_u64() >> 11) * _SCALE
