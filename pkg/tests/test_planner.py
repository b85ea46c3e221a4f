import math
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import C_FH, REF_RF, chain_deployment
from thzfronthaul.capacity import TABLE1, frame_model
from thzfronthaul.planner import (
    ConfigurationError,
    Deployment,
    HopChain,
    Node,
    NodeKind,
    SpectralEfficiencyModel,
    ThzTransceiver,
    achievable_rate,
    antenna_tradeoff,
    multi_hop_latency,
    plan,
)
from thzfronthaul.report import plan_doc, to_json

FRAME_BITS = frame_model(TABLE1).per_symbol_payload


class TestAchievableRate:
    def test_capped(self, se_capped):
        assert achievable_rate(20.0, 12.29e9, se_capped) == pytest.approx(73.74e9, rel=1e-12)

    def test_gap_three(self):
        m = SpectralEfficiencyModel("shannon_gap", gap=3.0, max_se=8.0)
        # log2(1 + 10**1.7) * 12.29e9, 50-digit reference
        assert achievable_rate(20.0, 12.29e9, m) == pytest.approx(69.755334993e9, rel=1e-9)

    def test_vanishing_bandwidth(self, se_capped):
        assert achievable_rate(20.0, 1e-9, se_capped) < 1e-8

    def test_below_floor_is_zero(self, se_capped):
        assert achievable_rate(-0.5, 1e9, se_capped) == 0.0

    def test_table(self):
        m = SpectralEfficiencyModel("fixed_table", table=((5.0, 1.0), (10.0, 2.0), (20.0, 4.0)))
        assert achievable_rate(4.9, 1e9, m) == 0.0
        assert achievable_rate(5.0, 1e9, m) == 1e9
        assert achievable_rate(19.0, 1e9, m) == 2e9
        assert achievable_rate(40.0, 1e9, m) == 4e9

    def test_table_must_be_non_decreasing(self):
        with pytest.raises(ValueError):
            SpectralEfficiencyModel("fixed_table", table=((5.0, 2.0), (10.0, 1.0)))

    def test_defaults_are_gap3_cap6(self):
        m = SpectralEfficiencyModel()
        assert (m.mode, m.gap, m.max_se) == ("shannon_gap", 3.0, 6.0)


class TestMultiHopLatency:
    def test_single_hop(self):
        lat = multi_hop_latency([500.0], C_FH, FRAME_BITS, "store_and_forward")
        assert lat == pytest.approx(73.096391905e-6, abs=1e-12)
        assert lat < 100e-6

    def test_two_hop_store_and_forward(self):
        lat = multi_hop_latency([500.0, 500.0], C_FH, FRAME_BITS, "store_and_forward")
        assert lat == pytest.approx(146.192783809e-6, abs=1e-12)
        assert lat > 100e-6

    def test_two_hop_cut_through(self):
        lat = multi_hop_latency([500.0, 500.0], C_FH, FRAME_BITS, "cut_through")
        assert lat == pytest.approx(74.764212381e-6, abs=1e-12)

    def test_processing_per_hop(self):
        a = multi_hop_latency([500.0, 500.0], C_FH, FRAME_BITS, "store_and_forward", 1e-6)
        b = multi_hop_latency([500.0, 500.0], C_FH, FRAME_BITS, "store_and_forward", 0.0)
        assert a - b == pytest.approx(2e-6, abs=1e-15)

    def test_rejects(self):
        with pytest.raises(ValueError):
            multi_hop_latency([0.0], C_FH, FRAME_BITS)
        with pytest.raises(ValueError):
            multi_hop_latency([500.0], 0.0, FRAME_BITS)

    @given(st.lists(st.floats(1.0, 5000.0), min_size=1, max_size=6), st.floats(1e9, 1e11))
    def test_cut_through_never_slower(self, ds, rate):
        sf = multi_hop_latency(ds, rate, FRAME_BITS, "store_and_forward")
        ct = multi_hop_latency(ds, rate, FRAME_BITS, "cut_through")
        if len(ds) == 1:
            assert ct == sf
        else:
            assert ct < sf

    def test_serialization_equals_symbol_period(self):
        fm = frame_model(TABLE1)
        assert fm.per_symbol_payload / C_FH == pytest.approx(fm.symbol_period, rel=1e-15)


class TestPlan:
    def test_reference_scenario(self, baseline_deployment, se_capped):
        rep = plan(baseline_deployment, TABLE1, se_capped)
        ru = rep.ru("ru1")
        assert ru.required_rate == pytest.approx(15.929e9, rel=1e-4)
        assert ru.achievable_rate == pytest.approx(73.74e9, rel=1e-12)
        assert ru.margin == pytest.approx(4.63, abs=0.005)
        assert ru.latency == pytest.approx(73.1e-6, abs=0.01e-6)
        assert ru.rx_power == pytest.approx(-48.0, abs=0.2)
        assert ru.usable_bandwidth == 12.29e9
        assert ru.feasible and rep.feasible

    def test_four_rus_share_one_transceiver(self, se_capped):
        dep = chain_deployment([500.0], n_rus=4)
        rep = plan(dep, TABLE1, se_capped)
        trx = rep.transceiver("trx1")
        assert trx.rus == ("ru1", "ru2", "ru3", "ru4")
        assert trx.load == pytest.approx(4 * C_FH / 73.74e9, rel=1e-12)
        assert trx.load == pytest.approx(0.864, abs=0.001)
        assert rep.feasible

    def test_overloaded_transceiver(self, se_capped):
        rep = plan(chain_deployment([500.0], n_rus=5), TABLE1, se_capped)
        assert rep.transceiver("trx1").load > 1
        assert not rep.feasible
        assert not any(r.feasible for r in rep.rus)

    def test_dead_link(self, se_capped):
        dep = chain_deployment([50_000.0])
        rep = plan(dep, TABLE1, se_capped)
        ru = rep.ru("ru1")
        assert ru.achievable_rate == 0.0
        assert ru.margin == 0.0
        assert math.isinf(rep.transceiver("trx1").load)
        assert not ru.feasible and not rep.feasible

    def test_two_hop_violates_budget(self, se_capped):
        rep = plan(chain_deployment([500.0, 500.0]), TABLE1, se_capped)
        ru = rep.ru("ru1")
        assert ru.latency == pytest.approx(146.2e-6, abs=0.01e-6)
        assert ru.achievable_rate >= ru.required_rate
        assert not ru.feasible

    def test_two_hop_cut_through_fits(self, se_capped):
        rep = plan(chain_deployment([500.0, 500.0]), TABLE1, se_capped, forwarding="cut_through")
        assert rep.ru("ru1").latency == pytest.approx(74.8e-6, abs=0.05e-6)
        assert rep.feasible

    def test_adaptive_bandwidth_when_unset(self, se_capped):
        dep = chain_deployment([500.0], bandwidth=None)
        ru = plan(dep, TABLE1, se_capped).ru("ru1")
        assert ru.usable_bandwidth == pytest.approx(12.185255007e9, rel=1e-9)
        assert ru.hops[0].cnr == pytest.approx(20.0, abs=1e-9)

    def test_uplink_width_raises_requirement(self, baseline_deployment, se_capped):
        rep = plan(baseline_deployment, TABLE1, se_capped, ul_quant_bits=24)
        assert rep.ru("ru1").required_rate == pytest.approx(1.5 * C_FH, rel=1e-12)
        # serialization at the required rate is still one symbol period
        assert rep.ru("ru1").latency == pytest.approx(73.096391905e-6, abs=1e-12)

    def test_deterministic_bytes(self, se_capped):
        a = to_json(plan_doc(plan(chain_deployment([300.0, 400.0], n_rus=3), TABLE1, se_capped)))
        b = to_json(plan_doc(plan(chain_deployment([300.0, 400.0], n_rus=3), TABLE1, se_capped)))
        assert a == b

    @settings(max_examples=50)
    @given(st.floats(10.0, 3000.0), st.floats(1.0, 2000.0))
    def test_distance_monotonicity(self, d, extra):
        m = SpectralEfficiencyModel("shannon_gap", gap=3.0, max_se=6.0)
        near = plan(chain_deployment([d]), TABLE1, m).ru("ru1")
        far = plan(chain_deployment([d + extra]), TABLE1, m).ru("ru1")
        assert far.achievable_rate <= near.achievable_rate
        assert far.latency >= near.latency

    @given(st.integers(1, 32), st.integers(1, 32))
    def test_antennas_monotone(self, a, b):
        lo, hi = sorted((a, b))
        m = SpectralEfficiencyModel()
        dep = chain_deployment([500.0])
        r_lo = plan(dep, replace(TABLE1, num_antennas=lo), m).ru("ru1").required_rate
        r_hi = plan(dep, replace(TABLE1, num_antennas=hi), m).ru("ru1").required_rate
        assert r_hi >= r_lo

    def test_load_additive_under_split(self, se_capped):
        # one RU at 8 antennas vs two co-located RUs at 4 antennas each
        one = plan(chain_deployment([500.0]), TABLE1, se_capped).transceiver("trx1").load
        nodes = (
            Node("du", NodeKind.CENTRAL, (0.0, 0.0)),
            Node("a", NodeKind.FIELD, (500.0, 0.0)),
            Node("b", NodeKind.FIELD, (500.0, 0.0)),
        )
        trx = ThzTransceiver("trx1", "du", REF_RF, 20.0, 12.29e9)
        dep = Deployment(nodes, (trx,), (HopChain(("a", "du"), "trx1"), HopChain(("b", "du"), "trx1")))
        two = plan(dep, replace(TABLE1, num_antennas=4), se_capped).transceiver("trx1").load
        assert abs(one - two) <= 1e-12


class TestDeploymentValidation:
    def _nodes(self):
        return (
            Node("du", NodeKind.CENTRAL, (0.0, 0.0)),
            Node("ru1", NodeKind.FIELD, (500.0, 0.0)),
        )

    def _trx(self):
        return (ThzTransceiver("trx1", "du", REF_RF, 20.0),)

    def test_missing_chain_names_node(self):
        with pytest.raises(ConfigurationError, match="ru1"):
            Deployment(self._nodes(), self._trx(), ())

    def test_unknown_transceiver(self):
        with pytest.raises(ConfigurationError, match="trx9"):
            Deployment(self._nodes(), self._trx(), (HopChain(("ru1", "du"), "trx9"),))

    def test_duplicate_node(self):
        nodes = self._nodes() + (Node("ru1", NodeKind.FIELD, (1.0, 1.0)),)
        with pytest.raises(ConfigurationError, match="duplicate"):
            Deployment(nodes, self._trx(), (HopChain(("ru1", "du"), "trx1"),))

    def test_two_centrals(self):
        nodes = self._nodes() + (Node("du2", NodeKind.CENTRAL, (1.0, 1.0)),)
        with pytest.raises(ConfigurationError, match="exactly one"):
            Deployment(nodes, self._trx(), (HopChain(("ru1", "du"), "trx1"),))

    def test_interior_must_be_relay(self):
        nodes = self._nodes() + (Node("ru2", NodeKind.FIELD, (250.0, 0.0)),)
        chains = (HopChain(("ru1", "ru2", "du"), "trx1"), HopChain(("ru2", "du"), "trx1"))
        with pytest.raises(ConfigurationError, match="RelayNode"):
            Deployment(nodes, self._trx(), chains)

    def test_repeated_node(self):
        nodes = self._nodes() + (Node("r", NodeKind.RELAY, (250.0, 0.0)),)
        with pytest.raises(ConfigurationError, match="repeats"):
            Deployment(nodes, self._trx(), (HopChain(("ru1", "r", "r", "du"), "trx1"),))

    def test_design_cnr_positive(self):
        with pytest.raises(ConfigurationError):
            ThzTransceiver("t", "du", REF_RF, 0.0)


class TestAntennaTradeoff:
    def test_reference_gains(self, ref_link):
        ((gains, bw),) = antenna_tradeoff(ref_link, [(47.5, 47.5)], 20.0)
        assert gains == (47.5, 47.5)
        assert abs(bw - 12.29e9) / 12.29e9 <= 0.01

    def test_30_dbi_antennas(self, ref_link):
        (_, full), (_, small) = antenna_tradeoff(ref_link, [(47.5, 47.5), (30.0, 30.0)], 20.0)
        assert small / full == pytest.approx(10 ** -3.5, rel=1e-12)
        assert small == pytest.approx(3.853315969e6, rel=1e-9)

    def test_deterministic(self, ref_link):
        (_, a), (_, b) = antenna_tradeoff(ref_link, [(40.0, 41.0), (40.0, 41.0)], 15.0)
        assert a == b
