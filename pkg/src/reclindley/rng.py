"""Seedable PCG32 generator (XSH-RR output, 64-bit LCG state).

The stream is fully specified so other implementations can reproduce it:

    state' = state * 6364136223846793005 + inc            (mod 2**64)
    out    = rotr32(((state >> 18) ^ state) >> 27, state >> 59)

Seeding follows ``pcg32_srandom_r(seed, stream)``: ``inc = 2*stream + 1``,
``state = 0``, step, ``state += seed``, step. A double in [0, 1) is built
from two outputs as ``((a >> 5) * 2**26 + (b >> 6)) / 2**53``.
"""

import math

import numpy as np

from ._accel import kernel

_MULT = np.uint64(6364136223846793005)
_MASK32 = np.uint64(0xFFFFFFFF)
_U18 = np.uint64(18)
_U27 = np.uint64(27)
_U59 = np.uint64(59)
_U31 = np.uint64(31)
_U32 = np.uint64(32)
_U5 = np.uint64(5)
_U6 = np.uint64(6)
_TWO_PI = 2.0 * math.pi


@kernel
def next_u32(st):
    old = st[0]
    st[0] = old * _MULT + st[1]
    x = (((old >> _U18) ^ old) >> _U27) & _MASK32
    rot = old >> _U59
    return ((x >> rot) | (x << ((_U32 - rot) & _U31))) & _MASK32


@kernel
def next_double(st):
    a = next_u32(st) >> _U5
    b = next_u32(st) >> _U6
    return (float(a) * 67108864.0 + float(b)) / 9007199254740992.0


@kernel
def next_open_closed(st):
    """Uniform on (0, 1], safe to take the log of."""
    return 1.0 - next_double(st)


@kernel
def next_normal(st):
    # Box-Muller, cosine half only so each call consumes exactly four words
    r = math.sqrt(-2.0 * math.log(next_open_closed(st)))
    return r * math.cos(_TWO_PI * next_double(st))


@kernel
def _fill_doubles(st, out):
    for i in range(out.size):
        out[i] = next_double(st)


@kernel
def _fill_u32(st, out):
    for i in range(out.size):
        out[i] = next_u32(st)


class RngState:
    """Owned generator state identified by ``(seed, stream)``.

    Two instances built from the same pair yield bit-identical sequences.
    Draws advance the instance in place.
    """

    def __init__(self, seed=0, stream=0):
        seed = int(seed)
        stream = int(stream)
        if not (0 <= seed < 2**64 and 0 <= stream < 2**64):
            raise ValueError("seed and stream must be unsigned 64-bit integers")
        self.seed = seed
        self.stream = stream
        mask = 2**64 - 1
        inc = ((stream << 1) | 1) & mask
        mult = int(_MULT)
        state = (0 * mult + inc) & mask
        state = (state + seed) & mask
        state = (state * mult + inc) & mask
        self.words = np.array([state, inc], dtype=np.uint64)

    def __repr__(self):
        return f"RngState(seed={self.seed}, stream={self.stream})"

    def substream(self, index):
        """Independent generator for shard ``index`` (stream counter offset)."""
        return RngState(self.seed, (self.stream + 1 + int(index)) % 2**64)

    def u32(self, size):
        out = np.empty(size, dtype=np.uint64)
        with np.errstate(over="ignore"):
            _fill_u32(self.words, out)
        return out.astype(np.uint32)

    def random(self, size):
        out = np.empty(size, dtype=float)
        with np.errstate(over="ignore"):
            _fill_doubles(self.words, out)
        return out
