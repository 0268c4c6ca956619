from __future__ import annotations

import numpy as np
import pytest

from influence_forge import EdgeModification, StubbornProfile, weight_sweep
from influence_forge.mods import COND_COROLLARY1, REDUNDANT, USEFUL
from influence_forge.sweep import DEFAULT_W_FRACTIONS

from .oracles import flow_graph


def half_mod(graph, a, b, d):
    return EdgeModification(a=a, b=b, d=d, w=float(0.5 * graph.weights[b, d]))


@pytest.fixture
def separator_setup():
    g = flow_graph(
        7,
        [(0, 1), (1, 3), (0, 2), (2, 3), (3, 4), (3, 5), (4, 0), (5, 0), (0, 6), (6, 0)],
    )
    return g, StubbornProfile.two_agent(7, 1, 0.5, 2, 0.5)


class TestWeightSweep:
    def test_redundant_mod_never_moves(self, separator_setup):
        g, p = separator_setup
        report = weight_sweep(g, p, half_mod(g, 4, 0, 5), trials=25, seed=3)
        assert report.sound and report.problems == ()
        assert report.verdict.verdict == REDUNDANT
        assert report.trials == 25
        assert len(report.rows) == 25 * len(DEFAULT_W_FRACTIONS)
        assert max(abs(report.min_delta_s1), abs(report.max_delta_s1)) < 1e-10
        assert max(abs(report.min_delta_s2), abs(report.max_delta_s2)) < 1e-10
        assert report.verdict_agreement == (("redundant:equally_connected", 25),)

    def test_useful_mod_always_gains(self, cert_graph, cert_profile):
        report = weight_sweep(cert_graph, cert_profile, half_mod(cert_graph, 3, 0, 5), trials=25, seed=3)
        assert report.sound
        assert report.verdict.verdict == USEFUL and report.verdict.target == 1
        assert report.min_delta_s1 > 0.0
        assert report.max_delta_s2 < 0.0  # the competitor pays for it

    def test_corollary1_pins_target_stubbornness(self, ring4):
        p = StubbornProfile.two_agent(4, 1, 0.5, 2, 0.7)
        report = weight_sweep(ring4, p, half_mod(ring4, 3, 2, 1), trials=25, seed=5)
        assert report.sound
        assert report.verdict.condition == COND_COROLLARY1
        assert all(row.beta_s2 >= 0.5 for row in report.rows)
        assert report.min_delta_s2 > 0.0

    def test_rows_carry_consistent_numbers(self, separator_setup):
        g, p = separator_setup
        report = weight_sweep(g, p, half_mod(g, 4, 0, 5), trials=5, seed=1)
        for row in report.rows:
            assert row.w_fraction in DEFAULT_W_FRACTIONS
            assert 0.0 < row.w
            assert row.c_s1_before + row.c_s2_before == pytest.approx(1.0, abs=1e-9)
            assert row.c_s1_after == row.c_s1_before + row.delta_s1
            assert row.c_s2_after == row.c_s2_before + row.delta_s2

    def test_deterministic_under_seed(self, separator_setup):
        g, p = separator_setup
        a = weight_sweep(g, p, half_mod(g, 4, 0, 5), trials=5, seed=11)
        b = weight_sweep(g, p, half_mod(g, 4, 0, 5), trials=5, seed=11)
        assert a.rows == b.rows

    def test_zero_trials(self, separator_setup):
        g, p = separator_setup
        report = weight_sweep(g, p, half_mod(g, 4, 0, 5), trials=0)
        assert report.rows == ()
        assert report.sound
        assert report.min_delta_s1 == report.max_delta_s2 == 0.0

    def test_custom_fractions(self, separator_setup):
        g, p = separator_setup
        report = weight_sweep(g, p, half_mod(g, 4, 0, 5), trials=4, seed=2, w_fractions=(0.25,))
        assert len(report.rows) == 4
        assert all(row.w_fraction == 0.25 for row in report.rows)

    def test_reclassification_agreement(self, cert_graph, cert_profile):
        report = weight_sweep(cert_graph, cert_profile, half_mod(cert_graph, 6, 0, 7), trials=10, seed=9)
        assert report.verdict_agreement == (("redundant:equally_neutral", 10),)
