"""Hard-decision detectors: joint ML over all M^2 codewords, and a 2M-metric
successive-interference-cancellation baseline.

Both detectors assume the channel matrix is known exactly and return a
single codeword (no soft outputs). Ties are broken toward the lowest
codeword enumeration index so results are reproducible; with continuous
noise a tie is a measure-zero event.
"""

import math
from dataclasses import dataclass

from .channel import scale_codeword, validate_alpha
from .constellation import enumerate_codewords, make_codeword


@dataclass
class MetricCounter:
    """Counts Euclidean metric evaluations; pass one in to audit complexity."""

    evaluated: int = 0

    def add(self, n):
        self.evaluated += n


def _metric(r, h, x1, x2):
    d1 = r.r1 - (h.h11 * x1 + h.h12 * x2)
    d2 = r.r2 - (h.h21 * x1 + h.h22 * x2)
    return (d1.real * d1.real + d1.imag * d1.imag
            + d2.real * d2.real + d2.imag * d2.imag)


def ml_detect(r, h, alpha, c, counter=None):
    """Maximum-likelihood decision: argmin ||R - H X(w)||^2 over all M^2 codewords.

    Evaluates exactly M^2 metrics. Ties go to the lowest enumeration index.
    """
    validate_alpha(alpha)
    best = None
    best_metric = None
    for w in enumerate_codewords(c):
        x1, x2 = scale_codeword(w, alpha)
        m = _metric(r, h, x1, x2)
        if counter is not None:
            counter.add(1)
        if best_metric is None or m < best_metric:
            best, best_metric = w, m
    return best


def sic_detect(r, h, alpha, c, counter=None):
    """Successive interference cancellation, strong user (user 1) first.

    Stage 1 slices user 1 by pure Euclidean distance, treating the user-2
    signal as extra noise; stage 2 subtracts the stage-1 decision and slices
    user 2. Exactly 2M metrics. Intended for alpha > 1/2; it still runs at
    alpha = 1/2 but the detection order is then arbitrary.
    """
    alpha = validate_alpha(alpha)
    s1 = math.sqrt(alpha)
    s2 = math.sqrt(1.0 - alpha)

    i1_hat = 0
    best = None
    for i, p in enumerate(c.points):
        d1 = r.r1 - s1 * h.h11 * p
        d2 = r.r2 - s1 * h.h21 * p
        m = (d1.real * d1.real + d1.imag * d1.imag
             + d2.real * d2.real + d2.imag * d2.imag)
        if counter is not None:
            counter.add(1)
        if best is None or m < best:
            best, i1_hat = m, i

    p1 = c.points[i1_hat]
    y1 = r.r1 - s1 * h.h11 * p1
    y2 = r.r2 - s1 * h.h21 * p1

    i2_hat = 0
    best = None
    for i, p in enumerate(c.points):
        d1 = y1 - s2 * h.h12 * p
        d2 = y2 - s2 * h.h22 * p
        m = (d1.real * d1.real + d1.imag * d1.imag
             + d2.real * d2.real + d2.imag * d2.imag)
        if counter is not None:
            counter.add(1)
        if best is None or m < best:
            best, i2_hat = m, i

    return make_codeword(c, i1_hat, i2_hat)
