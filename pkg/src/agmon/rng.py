"""SplitMix64 pseudo-random stream.

All seeded generation in the package (Erdos-Renyi edges, uniform
potentials, sweep seeds) draws from this generator so that a given seed
produces the same problem on every platform. The algorithm is Vigna's
SplitMix64: a Weyl sequence with increment 0x9E3779B97F4A7C15 followed by
the variant-13 finalizer of MurmurHash3.
"""

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z):
    """SplitMix64 output finalizer applied to a 64-bit integer."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Deterministic 64-bit generator.

    Parameters
    ----------
    seed : int
        Any integer; reduced modulo 2**64.
    """

    def __init__(self, seed):
        self.state = int(seed) & _MASK

    def next_u64(self):
        self.state = (self.state + _GAMMA) & _MASK
        return mix64(self.state)

    def random(self):
        """Uniform float in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, lo, hi):
        return lo + (hi - lo) * self.random()


def derive_seed(*parts):
    """Combine integers into one 64-bit seed (order sensitive)."""
    h = 0
    for p in parts:
        h = mix64(h ^ (int(p) & _MASK)) + _GAMMA
        h &= _MASK
    return h
