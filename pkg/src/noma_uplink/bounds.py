"""Error-event enumeration, PEP upper bounds, and union bounds on the ABEP.

For an error event with symbol differences ``(u, v) = (x1 - x1_hat,
x2 - x2_hat)`` the scaled difference vector has squared norm

    d2(alpha) = alpha*|u|^2 + (1 - alpha)*|v|^2

and the pairwise error probability over 2x2 uncorrelated Rayleigh fading is
upper bounded by

    pep_bound(d2, n0) = (1 / (1 + d2/(4*n0)))^2

(the exponent 2 is the number of receive antennas). The bit-weighted union
bound averages ``n_bits * pep`` over every ordered pair of distinct
codewords and divides by ``M^2 * 2*log2(M)``. For QPSK the inner sum is the
same for every transmitted codeword; the implementation still performs the
full double sum so 16QAM (where it is not) needs no special case.

Because the summed PEPs span many orders of magnitude, every bound total is
accumulated with ``math.fsum`` (exactly rounded, partition-independent).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channel import validate_alpha
from .constellation import (
    bit_distance,
    build_constellation,
    enumerate_codewords,
    make_codeword,
)


@dataclass(frozen=True)
class ErrorEvent:
    """A nonzero difference pair with its bit count."""

    u: complex
    v: complex
    n_bits: int

    def norm_sq(self, alpha):
        return event_norm(self.u, self.v, alpha)


@dataclass(frozen=True)
class PepRecord:
    event_id: str
    u: complex
    v: complex
    n_bits: int
    d2: float
    pep: float


@dataclass(frozen=True)
class AbepBound:
    alpha: float
    n0: float
    bound: float
    per_event: tuple


@dataclass(frozen=True)
class PepTableRow:
    """One row of the QPSK error-event table for transmitted (1+1j, 1+1j)."""

    event_id: str
    u: complex
    v: complex
    n_bits: int
    d2_alpha_lo: float
    d2_alpha_hi: float
    pep_alpha_lo: float
    pep_alpha_hi: float


def pep_bound(d2, n0):
    """Upper bound on the pairwise error probability at squared distance d2."""
    if n0 <= 0:
        raise ValueError(f"n0 must be positive, got {n0}")
    if d2 < 0:
        raise ValueError(f"squared distance must be nonnegative, got {d2}")
    return (1.0 / (1.0 + d2 / (4.0 * n0))) ** 2


def _abs2(z):
    # re*re + im*im, not abs()**2: bit-identical between the scalar and
    # numpy evaluation paths, which keeps the table and the full union bound
    # exactly consistent.
    z = complex(z)
    return z.real * z.real + z.imag * z.imag


def event_norm(u, v, alpha):
    """Squared norm of the scaled difference vector: alpha|u|^2 + (1-alpha)|v|^2."""
    alpha = validate_alpha(alpha)
    return alpha * _abs2(u) + (1.0 - alpha) * _abs2(v)


def symmetry_gaps(u, v, alpha):
    """Norm gaps of the symmetric event pair (u,v) and (v,u) vs. the balanced case.

    Requires |u| > |v| and alpha > 1/2; returns the exact pair
    ((alpha - 1/2)(|u|^2 - |v|^2), -(alpha - 1/2)(|u|^2 - |v|^2)), the first
    strictly positive and the second its negative.
    """
    alpha = validate_alpha(alpha)
    if not alpha > 0.5:
        raise ValueError("symmetry gaps are defined for alpha > 1/2")
    if not _abs2(u) > _abs2(v):
        raise ValueError("symmetry gaps require |u| > |v|")
    gap = (alpha - 0.5) * (_abs2(u) - _abs2(v))
    return (gap, -gap)


def pairwise_sum_excess(u, v, alpha, n0):
    """PEP-bound sum of a symmetric event pair minus twice the balanced PEP.

    The balanced-case norm is computed as the average of the two event norms
    (identical by the sum rule), so the excess is exactly 0.0 when |u| = |v|
    and strictly positive otherwise: the bound kernel is strictly convex in
    the squared distance, so the midpoint value is below the average.
    """
    d2_a = event_norm(u, v, alpha)
    d2_b = event_norm(v, u, alpha)
    d2_balanced = 0.5 * (d2_a + d2_b)
    return pep_bound(d2_a, n0) + pep_bound(d2_b, n0) - 2.0 * pep_bound(d2_balanced, n0)


def enumerate_error_events(c, transmitted):
    """All M^2 - 1 error events for one transmitted codeword.

    Order matches ``enumerate_codewords`` with the transmitted codeword
    skipped (identity by symbol indices).
    """
    events = []
    for w_hat in enumerate_codewords(c):
        if w_hat.i1 == transmitted.i1 and w_hat.i2 == transmitted.i2:
            continue
        n_bits = (bit_distance(c, transmitted.i1, w_hat.i1)
                  + bit_distance(c, transmitted.i2, w_hat.i2))
        events.append(ErrorEvent(
            u=transmitted.x1 - w_hat.x1,
            v=transmitted.x2 - w_hat.x2,
            n_bits=n_bits,
        ))
    return events


@lru_cache(maxsize=4)
def _event_arrays(kind):
    """Flattened (|u|^2, |v|^2, n_bits, u, v) over all ordered codeword pairs.

    Covers every (transmitted, detected) pair with detected != transmitted:
    M^2 * (M^2 - 1) entries, transmitted-codeword-major, detected codewords
    in enumeration order.
    """
    c = build_constellation(kind)
    p = np.array(c.points)
    label_ints = [int(lbl, 2) for lbl in c.labels]
    dist = np.array([[bin(a ^ b).count("1") for b in label_ints] for a in label_ints])

    diff = p[:, None] - p[None, :]                  # diff[i, k] = points[i] - points[k]
    i1, i2, k1, k2 = np.meshgrid(
        np.arange(c.M), np.arange(c.M), np.arange(c.M), np.arange(c.M), indexing="ij"
    )
    keep = ~((i1 == k1) & (i2 == k2))
    u = diff[i1, k1][keep]
    v = diff[i2, k2][keep]
    n_bits = (dist[i1, k1] + dist[i2, k2])[keep]
    abs_u2 = u.real * u.real + u.imag * u.imag
    abs_v2 = v.real * v.real + v.imag * v.imag
    return abs_u2, abs_v2, n_bits.astype(float), u, v


def union_bound_value(c, alpha, n0):
    """Bit-weighted union bound on the ABEP (scalar fast path).

    Same sum as ``union_bound_abep(...).bound`` term for term.
    """
    alpha = validate_alpha(alpha)
    if n0 <= 0:
        raise ValueError(f"n0 must be positive, got {n0}")
    abs_u2, abs_v2, n_bits, _, _ = _event_arrays(c.kind)
    d2 = alpha * abs_u2 + (1.0 - alpha) * abs_v2
    weighted = n_bits * (1.0 / (1.0 + d2 / (4.0 * n0))) ** 2
    return math.fsum(weighted.tolist()) / (c.M**2 * 2 * c.bits_per_symbol)


def union_bound_abep(c, alpha, n0):
    """Bit-weighted union bound with the full per-event record list."""
    alpha = validate_alpha(alpha)
    if n0 <= 0:
        raise ValueError(f"n0 must be positive, got {n0}")
    abs_u2, abs_v2, n_bits, u, v = _event_arrays(c.kind)
    d2 = alpha * abs_u2 + (1.0 - alpha) * abs_v2
    pep = (1.0 / (1.0 + d2 / (4.0 * n0))) ** 2
    records = tuple(
        PepRecord(f"P{j}", complex(u[j]), complex(v[j]), int(n_bits[j]),
                  float(d2[j]), float(pep[j]))
        for j in range(len(d2))
    )
    bound = math.fsum((n_bits * pep).tolist()) / (c.M**2 * 2 * c.bits_per_symbol)
    return AbepBound(alpha=alpha, n0=n0, bound=bound, per_event=records)


# The 15 QPSK error events for transmitted codeword (1+1j, 1+1j), in the
# conventional presentation order: single-axis single-user errors first,
# then equal-magnitude pairs, then diagonal differences.
_QPSK_TABLE_DIFFS = (
    (2 + 0j, 0j),
    (0j, 2 + 0j),
    (2j, 0j),
    (0j, 2j),
    (2 + 0j, 2 + 0j),
    (2 + 0j, 2j),
    (2j, 2 + 0j),
    (2j, 2j),
    (2 + 2j, 0j),
    (0j, 2 + 2j),
    (2 + 2j, 2 + 0j),
    (2 + 0j, 2 + 2j),
    (2 + 2j, 2j),
    (2j, 2 + 2j),
    (2 + 2j, 2 + 2j),
)


def error_event_pep_table(n0=0.01, alpha_lo=0.5, alpha_hi=0.9):
    """The 15-row QPSK error-event table: norms and PEP bounds at two alphas.

    Rows are labeled E1..E15 in the fixed order above, for the transmitted
    codeword (1+1j, 1+1j); by symmetry the QPSK PEP set is the same for
    every transmitted codeword.
    """
    c = build_constellation("qpsk")
    tx = make_codeword(c, 0, 0)  # (1+1j, 1+1j)
    events = enumerate_error_events(c, tx)
    by_diff = {(e.u, e.v): e for e in events}
    rows = []
    for idx, (du, dv) in enumerate(_QPSK_TABLE_DIFFS, start=1):
        e = by_diff[(du, dv)]
        d2_lo = event_norm(du, dv, alpha_lo)
        d2_hi = event_norm(du, dv, alpha_hi)
        rows.append(PepTableRow(
            event_id=f"E{idx}",
            u=du,
            v=dv,
            n_bits=e.n_bits,
            d2_alpha_lo=d2_lo,
            d2_alpha_hi=d2_hi,
            pep_alpha_lo=pep_bound(d2_lo, n0),
            pep_alpha_hi=pep_bound(d2_hi, n0),
        ))
    return rows


def table_abep_bounds(rows):
    """Weighted ABEP bounds assembled from a 15-row table (lo and hi alpha)."""
    lo = math.fsum(r.n_bits * r.pep_alpha_lo for r in rows) / 4.0
    hi = math.fsum(r.n_bits * r.pep_alpha_hi for r in rows) / 4.0
    return lo, hi


def optimal_alpha(c, n0, grid):
    """Grid argmin of the union bound over alpha; ties go to the smaller alpha."""
    grid = list(grid)
    if not grid:
        raise ValueError("alpha grid must not be empty")
    best_alpha = None
    best_bound = None
    for a in sorted(validate_alpha(x) for x in grid):
        b = union_bound_value(c, a, n0)
        if best_bound is None or b < best_bound:
            best_alpha, best_bound = a, b
    return best_alpha
