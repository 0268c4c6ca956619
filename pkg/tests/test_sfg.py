from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from influence_forge import (
    ConvergenceError,
    EdgeModification,
    GraphError,
    NotTypeC1Error,
    ReducedGains,
    StubbornProfile,
    apply_modification,
    build_sfg,
    centrality_pair,
    direct_path_gain_sum,
    eliminate_self_loops,
    gain_centrality,
    generate_c1,
    predicted_delta,
    random_profile,
    reduce,
)

from .oracles import (
    brute_gain_sum,
    flow_graph,
    ratio_saturation_bound,
    ratio_saturation_equality,
    ring,
    source_saturation_bound,
    source_saturation_equality,
)


@pytest.fixture
def ring3_sfg():
    graph = ring(3)
    profile = StubbornProfile.two_agent(3, 1, 0.5, 2, 0.5)
    return graph, profile, build_sfg(graph, profile)


class TestBuildSfg:
    def test_layout_and_gains(self, ring3_sfg):
        graph, profile, sfg = ring3_sfg
        assert (sfg.source1, sfg.source2, sfg.sink) == (3, 4, 5)
        assert sfg.gains.shape == (6, 6)
        # opinion block carries (1 - beta_i) * w_ij
        assert sfg.gains[1, 0] == 0.5
        assert sfg.gains[2, 1] == 0.5
        assert sfg.gains[0, 2] == 1.0
        # sources inject beta, the sink collects 1/n
        assert sfg.gains[1, 3] == 0.5
        assert sfg.gains[2, 4] == 0.5
        np.testing.assert_allclose(sfg.gains[5, :3], 1.0 / 3.0)

    def test_requires_competition(self, ring3):
        saturated = StubbornProfile.two_agent(3, 1, 1.0, 2, 0.5)
        with pytest.raises(GraphError):
            build_sfg(ring3, saturated)

    def test_profile_size_must_match(self, ring3):
        with pytest.raises(GraphError):
            build_sfg(ring3, StubbornProfile.two_agent(4, 1, 0.5, 2, 0.5))


class TestEliminateSelfLoops:
    def test_rescales_outgoing_branches(self):
        graph = flow_graph(3, [(0, 1, 0.5), (1, 1, 0.5), (1, 2, 1.0), (2, 0, 1.0)])
        profile = StubbornProfile.two_agent(3, 1, 0.5, 2, 0.5)
        raw = build_sfg(graph, profile)
        assert raw.gains[1, 1] == pytest.approx(0.25)
        bar = eliminate_self_loops(raw)
        assert np.all(np.diagonal(bar.gains) == 0.0)
        # outgoing branches of node 1 are scaled by 1 / (1 - 0.25)
        assert bar.gains[2, 1] == pytest.approx(0.5 / 0.75)
        # incoming branches are untouched
        assert bar.gains[1, 0] == raw.gains[1, 0]
        assert bar.gains[1, 3] == raw.gains[1, 3]

    def test_no_loops_is_identity(self, ring3_sfg):
        _, _, sfg = ring3_sfg
        bar = eliminate_self_loops(sfg)
        np.testing.assert_array_equal(bar.gains, sfg.gains)

    def test_non_contractive_loop_rejected(self):
        graph = flow_graph(3, [(1, 1, 1.0), (0, 2, 1.0), (2, 0, 1.0)])
        profile = StubbornProfile.two_agent(3, 0, 0.5, 2, 0.5)
        with pytest.raises(GraphError):
            eliminate_self_loops(build_sfg(graph, profile))


class TestDirectPathGainSum:
    def test_ring3_reduced_branches(self, ring3_sfg):
        _, _, sfg = ring3_sfg
        s1, s2, o = sfg.source1, sfg.source2, sfg.sink
        assert direct_path_gain_sum(sfg, s1, 0, {0}) == pytest.approx(0.25)
        assert direct_path_gain_sum(sfg, s2, 0, {0}) == pytest.approx(0.5)
        assert direct_path_gain_sum(sfg, s1, o, {0}) == pytest.approx(0.25)
        assert direct_path_gain_sum(sfg, s2, o, {0}) == pytest.approx(1.0 / 6.0)
        assert direct_path_gain_sum(sfg, 0, 0, {0}) == pytest.approx(0.25)
        assert direct_path_gain_sum(sfg, 0, o, {0}) == pytest.approx(7.0 / 12.0)

    def test_single_branch_path_counts(self, ring3_sfg):
        _, _, sfg = ring3_sfg
        assert direct_path_gain_sum(sfg, 2, 0, {0}) == pytest.approx(1.0)

    def test_cyclic_interior_rejected(self, ring3_sfg):
        _, _, sfg = ring3_sfg
        with pytest.raises(NotTypeC1Error):
            direct_path_gain_sum(sfg, sfg.source1, sfg.sink)

    def test_requires_loop_free_gains(self):
        graph = flow_graph(3, [(0, 1, 0.5), (1, 1, 0.5), (1, 2, 1.0), (2, 0, 1.0)])
        profile = StubbornProfile.two_agent(3, 1, 0.5, 2, 0.5)
        raw = build_sfg(graph, profile)
        with pytest.raises(GraphError):
            direct_path_gain_sum(raw, 0, 2, {0})

    @given(seed=st.integers(0, 4_000))
    def test_matches_brute_enumeration(self, seed: int):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 8))
        g = generate_c1(n, 0.35, seed=rng, self_loop_prob=0.25).graph
        s1, s2 = (int(v) + 1 for v in rng.choice(n - 1, size=2, replace=False))
        profile = random_profile(n, s1, s2, seed=rng)
        bar = eliminate_self_loops(build_sfg(g, profile))
        frm = int(rng.choice([bar.source1, bar.source2, int(rng.integers(0, n))]))
        to = int(rng.choice([bar.sink, 0, int(rng.integers(0, n))]))
        if frm == to:
            to = bar.sink
        expected = brute_gain_sum(bar, frm, to, {0})
        assert direct_path_gain_sum(bar, frm, to, {0}) == pytest.approx(expected, abs=1e-12)


class TestReduceAndCentrality:
    def test_ring3_golden_centralities(self, ring3_sfg):
        _, _, sfg = ring3_sfg
        reduced = reduce(sfg, 0)
        assert reduced.g_m_m == pytest.approx(0.25)
        assert reduced.g_o_m == pytest.approx(7.0 / 12.0)
        c1, c2 = gain_centrality(reduced)
        assert c1 == pytest.approx(4.0 / 9.0, abs=1e-12)
        assert c2 == pytest.approx(5.0 / 9.0, abs=1e-12)

    def test_out_of_range_communicator(self, ring3_sfg):
        _, _, sfg = ring3_sfg
        with pytest.raises(GraphError):
            reduce(sfg, 5)

    def test_non_contractive_reduction_rejected(self):
        reduced = ReducedGains(
            m=0, g_m_s1=0.1, g_m_s2=0.1, g_o_s1=0.1, g_o_s2=0.1, g_m_m=1.0, g_o_m=0.5
        )
        with pytest.raises(ConvergenceError):
            gain_centrality(reduced)

    @given(seed=st.integers(0, 4_000))
    def test_agrees_with_dense_solve(self, seed: int):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(3, 10))
        g = generate_c1(n, float(rng.uniform(0, 0.6)), seed=rng, self_loop_prob=0.2).graph
        s1, s2 = (int(v) + 1 for v in rng.choice(n - 1, size=2, replace=False))
        profile = random_profile(n, s1, s2, seed=rng)
        bar = eliminate_self_loops(build_sfg(g, profile))
        got = gain_centrality(reduce(bar, 0))
        expected = centrality_pair(g, profile)
        np.testing.assert_allclose(got, expected, atol=1e-10)


class TestPredictedDelta:
    @pytest.mark.parametrize("source", [1, 2])
    @pytest.mark.parametrize("sink", ["m", "O"])
    def test_matches_reduction_difference(self, five_node, source, sink):
        profile = StubbornProfile.two_agent(5, 1, 0.4, 2, 0.6)
        mod = EdgeModification(a=2, b=4, d=3, w=0.25)
        got = predicted_delta(five_node, profile, 0, mod, source, sink)
        before = reduce(eliminate_self_loops(build_sfg(five_node, profile)), 0)
        after_graph = apply_modification(five_node, mod)
        after = reduce(eliminate_self_loops(build_sfg(after_graph, profile)), 0)
        attr = {("m", 1): "g_m_s1", ("m", 2): "g_m_s2", ("O", 1): "g_o_s1", ("O", 2): "g_o_s2"}
        key = attr[(sink, source)]
        expected = getattr(after, key) - getattr(before, key)
        assert got == pytest.approx(expected, abs=1e-12)

    def test_receiver_on_communicator(self, five_node):
        profile = StubbornProfile.two_agent(5, 1, 0.4, 2, 0.6)
        mod = EdgeModification(a=1, b=0, d=2, w=0.2)
        for source in (1, 2):
            got = predicted_delta(five_node, profile, 0, mod, source, "m")
            before = reduce(eliminate_self_loops(build_sfg(five_node, profile)), 0)
            after = reduce(
                eliminate_self_loops(build_sfg(apply_modification(five_node, mod), profile)), 0
            )
            key = "g_m_s1" if source == 1 else "g_m_s2"
            assert got == pytest.approx(getattr(after, key) - getattr(before, key), abs=1e-12)
            # shifting b = m's own attention never changes branches into the sink
            assert predicted_delta(five_node, profile, 0, mod, source, "O") == 0.0

    def test_argument_validation(self, five_node):
        profile = StubbornProfile.two_agent(5, 1, 0.4, 2, 0.6)
        good = EdgeModification(a=2, b=4, d=3, w=0.25)
        with pytest.raises(GraphError):
            predicted_delta(five_node, profile, 0, good, 3, "m")
        with pytest.raises(GraphError):
            predicted_delta(five_node, profile, 0, good, 1, "sink")
        missing_donor = EdgeModification(a=2, b=3, d=4, w=0.1)
        with pytest.raises(GraphError):
            predicted_delta(five_node, profile, 0, missing_donor, 1, "m")
        too_heavy = EdgeModification(a=2, b=4, d=3, w=0.5)
        with pytest.raises(GraphError):
            predicted_delta(five_node, profile, 0, too_heavy, 1, "m")


class TestGainSaturation:
    """Path-gain sums into a node never exceed their closed-form bounds, and
    the bound is attained exactly under a structural funnelling condition."""

    def _setup(self, graph, profile):
        raw = build_sfg(graph, profile)
        return raw, eliminate_self_loops(raw)

    def test_ring4_source_bounds(self, ring4):
        profile = StubbornProfile.two_agent(4, 1, 0.5, 2, 0.5)
        raw, bar = self._setup(ring4, profile)
        cases = {
            # (agent, e): (gain sum, bound attained?)
            (1, 1): (0.5, True),
            (1, 2): (0.25, False),
            (1, 3): (0.25, False),
            (2, 2): (0.5, True),
            (2, 3): (0.5, True),
        }
        for (agent, e), (expected_sum, attained) in cases.items():
            s = profile.s1 if agent == 1 else profile.s2
            src = bar.source1 if agent == 1 else bar.source2
            total = direct_path_gain_sum(bar, src, e, {0})
            bound = source_saturation_bound(raw, profile, s, e)
            assert total == pytest.approx(expected_sum)
            assert total <= bound + 1e-12
            assert (abs(total - bound) < 1e-12) == attained
            assert source_saturation_equality(ring4, profile, 0, s, e) == attained

    def test_ring4_ratio_bounds(self, ring4):
        profile = StubbornProfile.two_agent(4, 1, 0.5, 2, 0.5)
        raw, bar = self._setup(ring4, profile)
        cases = {
            # (e, f): (gain sum, bound attained?)
            (1, 2): (0.5, False),
            (2, 3): (1.0, True),
            (3, 0): (1.0, True),
            (1, 0): (0.5, False),
        }
        for (e, f), (expected_sum, attained) in cases.items():
            total = direct_path_gain_sum(bar, e, f, {0})
            bound = ratio_saturation_bound(raw, e, f)
            assert total == pytest.approx(expected_sum)
            assert total <= bound + 1e-12
            assert (abs(total - bound) < 1e-12) == attained
            assert ratio_saturation_equality(ring4, profile, 0, e, f) == attained
