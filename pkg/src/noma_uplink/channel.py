"""Unified 2-user uplink model: power split, Rayleigh fading, AWGN.

Signal model for one channel use (no time index needed; the channel is
redrawn independently for every codeword):

    r_i = sqrt(alpha) * h_i1 * x1 + sqrt(1 - alpha) * h_i2 * x2 + w_i

with ``alpha`` in [1/2, 1) the fraction of the total power given to user 1
(alpha = 1/2 is the power-balanced / MU-MIMO case), ``h_ij`` i.i.d.
zero-mean unit-variance circularly-symmetric complex Gaussian, and ``w_i``
complex AWGN.

SNR calibration: an operating point is stated as Eb/N0 in dB with the
per-user bit energy fixed at 1 by the constellation normalization, and
``n0 = 10**(-ebn0_db/10)``. The analytic bounds (see ``bounds``) use ``n0``
directly as their noise parameter. The *sampled* noise has variance ``n0``
per real component, i.e. ``2*n0`` per complex receive sample; this is the
calibration under which the simulated error rates line up with the analytic
table at the same stated Eb/N0.

All sampling consumes the owning ``numpy.random.Generator`` in a fixed
order (one uniform per normal variate, via the inverse CDF), which is what
makes the chunked Monte Carlo harness reproducible; see ``rng``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .rng import normals_from_uniforms


def validate_alpha(alpha):
    """Check the power-imbalance factor is in [1/2, 1); return it as float."""
    a = float(alpha)
    if not (0.5 <= a < 1.0):
        raise ValueError(f"power imbalance factor must satisfy 0.5 <= alpha < 1, got {alpha}")
    return a


@dataclass(frozen=True)
class NoiseModel:
    """Operating point: Eb/N0 in dB and the matching noise parameter n0."""

    ebn0_db: float
    n0: float

    @classmethod
    def from_ebn0_db(cls, ebn0_db):
        return cls(float(ebn0_db), 10.0 ** (-float(ebn0_db) / 10.0))

    @classmethod
    def from_n0(cls, n0):
        n0 = float(n0)
        if n0 <= 0:
            raise ValueError(f"n0 must be positive, got {n0}")
        return cls(-10.0 * math.log10(n0), n0)


@dataclass(frozen=True)
class ChannelMatrix:
    """One realization of the 2x2 uplink channel; h_ij is user j -> antenna i."""

    h11: complex
    h12: complex
    h21: complex
    h22: complex

    def as_array(self):
        return np.array([[self.h11, self.h12], [self.h21, self.h22]])


@dataclass(frozen=True)
class ReceivedVector:
    r1: complex
    r2: complex


def scale_codeword(w, alpha):
    """Transmit vector X = (sqrt(alpha) x1, sqrt(1-alpha) x2)."""
    alpha = validate_alpha(alpha)
    return (math.sqrt(alpha) * w.x1, math.sqrt(1.0 - alpha) * w.x2)


def sample_channel(rng):
    """Draw one channel matrix: four i.i.d. CN(0, 1) entries.

    Consumes exactly 8 uniforms, in the order h11, h12, h21, h22
    (real then imaginary part of each).
    """
    g = normals_from_uniforms(rng.random(8)) / math.sqrt(2.0)
    return ChannelMatrix(
        h11=complex(g[0], g[1]),
        h12=complex(g[2], g[3]),
        h21=complex(g[4], g[5]),
        h22=complex(g[6], g[7]),
    )


def sample_noise(rng, nm):
    """Draw the AWGN pair (w1, w2); variance n0 per real component.

    Consumes exactly 4 uniforms (w1 real, w1 imag, w2 real, w2 imag).
    """
    if nm.n0 <= 0:
        raise ValueError(f"n0 must be positive, got {nm.n0}")
    sigma = math.sqrt(nm.n0)
    g = normals_from_uniforms(rng.random(4)) * sigma
    return (complex(g[0], g[1]), complex(g[2], g[3]))


def transmit(h, w, alpha, noise):
    """Received vector for codeword ``w`` over channel ``h`` with given noise."""
    x1, x2 = scale_codeword(w, alpha)
    w1, w2 = noise
    return ReceivedVector(
        r1=h.h11 * x1 + h.h12 * x2 + w1,
        r2=h.h21 * x1 + h.h22 * x2 + w2,
    )
