"""PEP bound, error-event enumeration, union bound, and the symmetry analysis.

Frozen expected values were computed independently: the bound kernel
(1/(1 + d2/(4 n0)))^2 evaluated by hand for the tabulated squared distances
(e.g. d2 = 2, n0 = 0.01 gives 1/51^2 = 3.8447e-4), and the per-event bit
counts enumerated from the fixed Gray map.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noma_uplink import (
    build_constellation,
    enumerate_error_events,
    error_event_pep_table,
    event_norm,
    make_codeword,
    optimal_alpha,
    pairwise_sum_excess,
    pep_bound,
    symmetry_gaps,
    table_abep_bounds,
    union_bound_abep,
    union_bound_value,
)

QPSK = build_constellation("qpsk")
QAM16 = build_constellation("qam16")

# The 15 QPSK error events of the transmitted codeword (1+1j, 1+1j):
# (u, v, bits, d2 at alpha=0.5, d2 at alpha=0.9). Bits counted by hand from
# the Gray map: one-axis difference = 1 bit, diagonal difference = 2 bits.
QPSK_EVENTS = [
    ("E1", 2 + 0j, 0j, 1, 2.0, 3.6),
    ("E2", 0j, 2 + 0j, 1, 2.0, 0.4),
    ("E3", 2j, 0j, 1, 2.0, 3.6),
    ("E4", 0j, 2j, 1, 2.0, 0.4),
    ("E5", 2 + 0j, 2 + 0j, 2, 4.0, 4.0),
    ("E6", 2 + 0j, 2j, 2, 4.0, 4.0),
    ("E7", 2j, 2 + 0j, 2, 4.0, 4.0),
    ("E8", 2j, 2j, 2, 4.0, 4.0),
    ("E9", 2 + 2j, 0j, 2, 4.0, 7.2),
    ("E10", 0j, 2 + 2j, 2, 4.0, 0.8),
    ("E11", 2 + 2j, 2 + 0j, 3, 6.0, 7.6),
    ("E12", 2 + 0j, 2 + 2j, 3, 6.0, 4.4),
    ("E13", 2 + 2j, 2j, 3, 6.0, 7.6),
    ("E14", 2j, 2 + 2j, 3, 6.0, 4.4),
    ("E15", 2 + 2j, 2 + 2j, 4, 8.0, 8.0),
]


class TestPepBound:
    def test_known_values(self):
        assert pep_bound(2.0, 0.01) == pytest.approx(1 / 51**2, rel=1e-14)
        assert pep_bound(2.0, 0.01) == pytest.approx(3.845e-4, rel=1e-3)
        assert pep_bound(7.2, 0.01) == pytest.approx(1 / 181**2, rel=1e-14)
        assert pep_bound(0.4, 0.01) == pytest.approx(1 / 11**2, rel=1e-14)

    def test_zero_distance_gives_one(self):
        assert pep_bound(0.0, 0.37) == 1.0

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            pep_bound(1.0, 0.0)
        with pytest.raises(ValueError):
            pep_bound(1.0, -0.1)
        with pytest.raises(ValueError):
            pep_bound(-1.0, 0.1)

    @given(
        d2a=st.floats(0.0, 50.0),
        d2b=st.floats(0.0, 50.0),
        n0=st.floats(1e-4, 10.0),
    )
    @settings(max_examples=200)
    def test_monotone_decreasing_in_d2(self, d2a, d2b, n0):
        # Strict ordering is only required when the separation is resolvable
        # in double precision (sub-ulp differences collapse).
        pa, pb = pep_bound(d2a, n0), pep_bound(d2b, n0)
        if d2a < d2b:
            assert pa >= pb
            if d2b - d2a > 1e-6:
                assert pa > pb
        elif d2a == d2b:
            assert pa == pb

    @given(
        d2=st.floats(0.1, 50.0),
        n0a=st.floats(1e-4, 10.0),
        n0b=st.floats(1e-4, 10.0),
    )
    @settings(max_examples=200)
    def test_monotone_increasing_in_n0(self, d2, n0a, n0b):
        if n0a < n0b:
            assert pep_bound(d2, n0a) <= pep_bound(d2, n0b)
            if n0b - n0a > 1e-6 * n0b:
                assert pep_bound(d2, n0a) < pep_bound(d2, n0b)


class TestEventNorm:
    def test_known_values(self):
        assert event_norm(2, 0, 0.9) == pytest.approx(3.6, rel=1e-14)
        assert event_norm(2 + 2j, 0, 0.5) == pytest.approx(4.0, rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.5, 0.7, 0.99])
    def test_alpha_independent_when_magnitudes_equal(self, alpha):
        assert event_norm(2, 2j, alpha) == pytest.approx(4.0, rel=1e-14)

    @given(
        ur=st.floats(-4, 4), ui=st.floats(-4, 4),
        vr=st.floats(-4, 4), vi=st.floats(-4, 4),
        alpha=st.floats(0.5, 0.999),
    )
    @settings(max_examples=300)
    def test_sum_rule(self, ur, ui, vr, vi, alpha):
        u, v = complex(ur, ui), complex(vr, vi)
        total = event_norm(u, v, alpha) + event_norm(v, u, alpha)
        assert total == pytest.approx(abs(u) ** 2 + abs(v) ** 2, rel=1e-12, abs=1e-12)


class TestSymmetryGaps:
    def test_known_pair(self):
        g1, g2 = symmetry_gaps(2, 0, 0.9)
        assert g1 == pytest.approx(1.6, rel=1e-12)
        assert g2 == -g1

    def test_gaps_vanish_toward_balance(self):
        for alpha in (0.6, 0.51, 0.5001, 0.5 + 1e-9):
            g1, g2 = symmetry_gaps(2, 0, alpha)
            assert g1 > 0 and g1 + g2 == 0.0
            assert g1 == pytest.approx((alpha - 0.5) * 4.0, rel=1e-9)

    def test_matches_norm_differences(self):
        u, v, alpha = 2 + 2j, 1j, 0.87
        g1, g2 = symmetry_gaps(u, v, alpha)
        assert g1 == pytest.approx(event_norm(u, v, alpha) - event_norm(u, v, 0.5), rel=1e-12)
        assert g2 == pytest.approx(event_norm(v, u, alpha) - event_norm(u, v, 0.5), rel=1e-12)

    def test_rejects_non_dominant_u(self):
        with pytest.raises(ValueError):
            symmetry_gaps(1, 2, 0.9)
        with pytest.raises(ValueError):
            symmetry_gaps(2, 2j, 0.9)  # equal magnitudes


class TestPairwiseSumExcess:
    def test_table_pair(self):
        # E1/E2 pair at alpha = 0.9: (1.2e-4 + 8.26e-3) - 2 * 3.84e-4 > 0.
        excess = pairwise_sum_excess(2, 0, 0.9, 0.01)
        expected = pep_bound(3.6, 0.01) + pep_bound(0.4, 0.01) - 2 * pep_bound(2.0, 0.01)
        assert excess == pytest.approx(expected, rel=1e-12)
        assert excess > 0

    def test_equal_magnitudes_give_exact_zero(self):
        assert pairwise_sum_excess(2, 2j, 0.9, 0.01) == 0.0
        assert pairwise_sum_excess(1 + 1j, 1 - 1j, 0.77, 0.3) == 0.0

    def test_positive_on_exhaustive_qpsk_pairs(self):
        diffs = sorted({w.x1 - v.x1 for w in [make_codeword(QPSK, i, 0) for i in range(4)]
                        for v in [make_codeword(QPSK, j, 0) for j in range(4)]},
                       key=lambda z: (z.real, z.imag))
        for alpha in (0.6, 0.9, 0.99):
            for n0 in (0.1, 0.01, 0.001):
                for u in diffs:
                    for v in diffs:
                        if abs(u) ** 2 == abs(v) ** 2:
                            continue
                        assert pairwise_sum_excess(u, v, alpha, n0) > 0

    def test_positive_on_random_pairs(self):
        rng = np.random.default_rng(20260811)
        count = 0
        while count < 10_000:
            u = complex(*rng.uniform(-4, 4, 2))
            v = complex(*rng.uniform(-4, 4, 2))
            if abs(abs(u) ** 2 - abs(v) ** 2) < 1e-6:
                continue
            alpha = rng.uniform(0.51, 0.999)
            n0 = 10.0 ** rng.uniform(-4, 0)
            assert pairwise_sum_excess(u, v, alpha, n0) > 0
            count += 1


class TestErrorEventEnumeration:
    def test_qpsk_event_multiset_matches_table(self):
        tx = make_codeword(QPSK, 0, 0)  # (1+1j, 1+1j)
        events = enumerate_error_events(QPSK, tx)
        assert len(events) == 15
        got = sorted(((e.u, e.v, e.n_bits) for e in events),
                     key=lambda t: (t[0].real, t[0].imag, t[1].real, t[1].imag))
        expected = sorted(((u, v, b) for _, u, v, b, _, _ in QPSK_EVENTS),
                          key=lambda t: (t[0].real, t[0].imag, t[1].real, t[1].imag))
        assert got == expected

    @pytest.mark.parametrize("c,expected", [(QPSK, 15), (QAM16, 255)])
    def test_event_count(self, c, expected):
        assert len(enumerate_error_events(c, make_codeword(c, 1, 1))) == expected

    def test_events_are_nonzero_and_ordered(self):
        tx = make_codeword(QPSK, 2, 3)
        events = enumerate_error_events(QPSK, tx)
        assert all((e.u, e.v) != (0j, 0j) for e in events)
        assert all(e.n_bits >= 1 for e in events)


class TestPepTable:
    def test_rows_match_hand_computed_values(self):
        rows = error_event_pep_table(n0=0.01)
        assert [r.event_id for r in rows] == [e[0] for e in QPSK_EVENTS]
        for row, (eid, u, v, bits, d2_lo, d2_hi) in zip(rows, QPSK_EVENTS):
            assert (row.u, row.v) == (u, v)
            assert row.n_bits == bits
            assert row.d2_alpha_lo == pytest.approx(d2_lo, rel=1e-14)
            assert row.d2_alpha_hi == pytest.approx(d2_hi, rel=1e-14)
            assert row.pep_alpha_lo == pytest.approx(pep_bound(d2_lo, 0.01), rel=1e-14)
            assert row.pep_alpha_hi == pytest.approx(pep_bound(d2_hi, 0.01), rel=1e-14)

    def test_selected_cells(self):
        rows = {r.event_id: r for r in error_event_pep_table(n0=0.01)}
        assert rows["E2"].pep_alpha_hi == pytest.approx(1 / 121, rel=1e-12)
        assert rows["E10"].pep_alpha_hi == pytest.approx(1 / 441, rel=1e-12)
        assert rows["E15"].pep_alpha_lo == pytest.approx(2.5e-5, rel=0.01)
        assert rows["E15"].pep_alpha_hi == pytest.approx(2.5e-5, rel=0.01)


class TestUnionBound:
    def test_qpsk_totals_near_reported_values(self):
        assert union_bound_value(QPSK, 0.5, 0.01) == pytest.approx(8e-4, rel=0.15)
        assert union_bound_value(QPSK, 0.9, 0.01) == pytest.approx(5e-3, rel=0.15)

    def test_full_double_sum_equals_single_codeword_assembly(self):
        # QPSK PEPs do not depend on the transmitted codeword, so the
        # 16-codeword average must equal the one-codeword table sum exactly.
        rows = error_event_pep_table(n0=0.01)
        lo, hi = table_abep_bounds(rows)
        assert union_bound_value(QPSK, 0.5, 0.01) == pytest.approx(lo, rel=1e-15)
        assert union_bound_value(QPSK, 0.9, 0.01) == pytest.approx(hi, rel=1e-15)

    def test_record_assembly_matches_value(self):
        for c in (QPSK, QAM16):
            ab = union_bound_abep(c, 0.8, 0.01)
            assert ab.bound == union_bound_value(c, 0.8, 0.01)
            assert len(ab.per_event) == c.M**2 * (c.M**2 - 1)
            reassembled = math.fsum(r.n_bits * r.pep for r in ab.per_event)
            reassembled /= c.M**2 * 2 * c.bits_per_symbol
            assert ab.bound == pytest.approx(reassembled, rel=1e-15)

    def test_per_event_records_match_enumeration(self):
        # First M^2 - 1 records belong to the first transmitted codeword and
        # must agree with the public per-codeword enumeration.
        ab = union_bound_abep(QPSK, 0.9, 0.01)
        events = enumerate_error_events(QPSK, make_codeword(QPSK, 0, 0))
        for rec, ev in zip(ab.per_event[:15], events):
            assert (rec.u, rec.v, rec.n_bits) == (ev.u, ev.v, ev.n_bits)
            assert rec.d2 == pytest.approx(ev.norm_sq(0.9), rel=1e-14)

    @pytest.mark.parametrize("c", [QPSK, QAM16])
    @pytest.mark.parametrize("n0", [0.1, 0.01, 0.001])
    def test_nondecreasing_in_alpha(self, c, n0):
        grid = [0.5 + 0.01 * i for i in range(50)]
        values = [union_bound_value(c, a, n0) for a in grid]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert values[0] == min(values)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            union_bound_value(QPSK, 0.4, 0.01)
        with pytest.raises(ValueError):
            union_bound_value(QPSK, 0.5, 0.0)


class TestOptimalAlpha:
    def test_grid_argmin_is_balanced(self):
        grid = [0.5 + 0.01 * i for i in range(50)]
        assert optimal_alpha(QPSK, 0.01, grid) == 0.5
        assert optimal_alpha(QAM16, 0.01, grid) == 0.5

    def test_singleton_grid(self):
        assert optimal_alpha(QPSK, 0.01, [0.5]) == 0.5

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            optimal_alpha(QPSK, 0.01, [])

    def test_tie_breaks_toward_smaller_alpha(self):
        # Duplicate grid entries tie exactly; the smaller (identical) alpha wins.
        assert optimal_alpha(QPSK, 0.01, [0.7, 0.5, 0.5]) == 0.5
