"""Counter-based random streams (Philox4x32-10).

Every draw is a pure function of ``(seed, counter words)``, so any sample can
be regenerated in isolation and results never depend on how work is split
across workers.
"""

import numpy as np

_M0 = np.uint64(0xD2511F53)
_M1 = np.uint64(0xCD9E8D57)
_W0 = 0x9E3779B9
_W1 = 0xBB67AE85
_LO = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)

# domain tags keep unrelated streams disjoint for the same seed
TAG_ALPHA = 1
TAG_ANGLE = 2


def philox4x32(c0, c1, c2, c3, key):
    """Ten-round Philox4x32 on broadcastable uint32 counter words.

    ``key`` is a 64-bit integer split into two 32-bit key words.
    Returns four uint64 arrays holding 32-bit outputs.
    """
    x = [np.asarray(c, dtype=np.uint64) & _LO for c in (c0, c1, c2, c3)]
    x = list(np.broadcast_arrays(*x))
    k0 = key & 0xFFFFFFFF
    k1 = (key >> 32) & 0xFFFFFFFF
    for _ in range(10):
        p0 = x[0] * _M0
        p1 = x[2] * _M1
        x = [
            (p1 >> _S32) ^ x[1] ^ np.uint64(k0),
            p1 & _LO,
            (p0 >> _S32) ^ x[3] ^ np.uint64(k1),
            p0 & _LO,
        ]
        k0 = (k0 + _W0) & 0xFFFFFFFF
        k1 = (k1 + _W1) & 0xFFFFFFFF
    return x


def uniform53(seed, index, sub, tag):
    """Uniform doubles in [0, 1) keyed by (seed, index, sub, tag)."""
    index = np.asarray(index, dtype=np.uint64)
    out = philox4x32(index & _LO, index >> _S32, sub, tag, _key(seed))
    bits = (out[0] << _S32) | out[1]
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def random_bits(seed, index, nbits, tag):
    """A Python integer with ``nbits`` uniform bits for sample ``index``."""
    value = 0
    have = 0
    block = 0
    key = _key(seed)
    while have < nbits:
        words = philox4x32(index & 0xFFFFFFFF, index >> 32, block, tag, key)
        for w in words:
            value = (value << 32) | int(w)
        have += 128
        block += 1
    return value >> (have - nbits)


def _key(seed):
    seed = int(seed)
    if seed < 0 or seed >= 1 << 64:
        raise ValueError("seed must be in [0, 2**64)")
    return seed
