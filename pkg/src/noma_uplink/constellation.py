"""Gray-mapped QPSK and 16QAM constellations with bit-level bookkeeping.

Both constellations are normalized so the mean symbol energy equals the
number of bits per symbol, i.e. the energy per bit is 1 for each user:

* QPSK: the four points ``+/-1 +/- 1j`` (mean energy 2), label (b0 b1)
  mapped to ``(1 - 2*b0) + 1j*(1 - 2*b1)``.
* 16QAM: the ``{+/-1, +/-3}^2`` grid scaled by ``1/sqrt(2.5)`` (mean energy
  4), with the per-axis Gray code 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
  applied to (b0 b1 | b2 b3) = (real | imag).

Points are indexed by their label read as a binary integer, so
``points[0]`` is the all-zeros label. Symbol identity is always by index,
never by floating-point comparison of coordinates.
"""

import math
from dataclasses import dataclass

QPSK = "qpsk"
QAM16 = "qam16"

_GRAY_AXIS_16 = {(0, 0): -3.0, (0, 1): -1.0, (1, 1): 1.0, (1, 0): 3.0}
_SCALE_16 = 1.0 / math.sqrt(2.5)


@dataclass(frozen=True)
class Constellation:
    """Finite complex symbol set with index-aligned bit labels."""

    kind: str
    points: tuple
    labels: tuple
    M: int
    bits_per_symbol: int

    def index_of_label(self, label):
        return int(label, 2)


@dataclass(frozen=True)
class Codeword:
    """A pair of user symbols drawn from one constellation.

    ``i1``/``i2`` are the symbol indices of users 1 and 2; they are the
    identity used for exact comparisons. ``label_bits`` is the concatenation
    of both users' labels (2 * bits_per_symbol bits).
    """

    i1: int
    i2: int
    x1: complex
    x2: complex
    label_bits: str


def build_constellation(kind):
    """Build the QPSK or 16QAM constellation described in the module docs."""
    if kind == QPSK:
        points = []
        labels = []
        for b0 in (0, 1):
            for b1 in (0, 1):
                points.append(complex(1 - 2 * b0, 1 - 2 * b1))
                labels.append(f"{b0}{b1}")
        return Constellation(QPSK, tuple(points), tuple(labels), 4, 2)
    if kind == QAM16:
        points = []
        labels = []
        for b0 in (0, 1):
            for b1 in (0, 1):
                for b2 in (0, 1):
                    for b3 in (0, 1):
                        re = _GRAY_AXIS_16[(b0, b1)] * _SCALE_16
                        im = _GRAY_AXIS_16[(b2, b3)] * _SCALE_16
                        points.append(complex(re, im))
                        labels.append(f"{b0}{b1}{b2}{b3}")
        return Constellation(QAM16, tuple(points), tuple(labels), 16, 4)
    raise ValueError(f"unsupported constellation kind: {kind!r} (expected 'qpsk' or 'qam16')")


def bit_distance(c, a, b):
    """Hamming distance between the labels of points ``a`` and ``b``."""
    if not (0 <= a < c.M and 0 <= b < c.M):
        raise IndexError(f"symbol index out of range for M={c.M}: ({a}, {b})")
    la, lb = c.labels[a], c.labels[b]
    return sum(x != y for x, y in zip(la, lb))


def _check_member(c, w):
    if not (0 <= w.i1 < c.M and 0 <= w.i2 < c.M):
        raise ValueError("codeword indices out of range for this constellation")
    if c.points[w.i1] != w.x1 or c.points[w.i2] != w.x2:
        raise ValueError("codeword symbols do not belong to this constellation")


def codeword_bit_distance(c, w, w_hat):
    """Total bits in error between two codewords of constellation ``c``."""
    _check_member(c, w)
    _check_member(c, w_hat)
    return bit_distance(c, w.i1, w_hat.i1) + bit_distance(c, w.i2, w_hat.i2)


def make_codeword(c, i1, i2):
    """Codeword for symbol indices (i1, i2) of constellation ``c``."""
    return Codeword(i1, i2, c.points[i1], c.points[i2], c.labels[i1] + c.labels[i2])


def enumerate_codewords(c):
    """All M^2 codewords, row-major by symbol indices (user 2 fastest)."""
    return [make_codeword(c, i1, i2) for i1 in range(c.M) for i2 in range(c.M)]
