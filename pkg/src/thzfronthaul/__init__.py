"""Planning and simulation of wireless THz fronthaul for on-demand OpenRAN networks."""

from .capacity import TABLE1, FrameModel, FronthaulParams, frame_model, fronthaul_rate_dl, fronthaul_rate_ul, sweep_rates
from .datasets import ExperimentRecord, table2, table2_check
from .linkbudget import (
    LinkBudgetInput,
    LinkBudgetReport,
    RadioProfile,
    cnr_at_bandwidth,
    db_to_linear,
    fspl_db,
    link_budget,
    linear_to_db,
    max_bandwidth_for_cnr,
    noise_spectral_density,
    received_power_dbm,
)
from .planner import (
    ConfigurationError,
    Deployment,
    FeasibilityReport,
    Forwarding,
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
from .scenario import Scenario, ScenarioError, emit_scenario, load_scenario, parse_scenario
from .weather import WeatherProfile, WeatherSegment, excess_loss_at, link_state_timeline

__version__ = "0.1.0"
