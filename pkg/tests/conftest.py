import pytest

from thzfronthaul.capacity import TABLE1, fronthaul_rate_dl
from thzfronthaul.linkbudget import RadioProfile
from thzfronthaul.planner import (
    Deployment,
    HopChain,
    Node,
    NodeKind,
    SpectralEfficiencyModel,
    ThzTransceiver,
)

C_FH = fronthaul_rate_dl(TABLE1)

# 8 dBm, 47.5 dBi each side (95 dBi combined), 15 dB excess, NF 5 dB, 300 K
REF_RF = RadioProfile(300e9, 8.0, 47.5, 47.5, 15.0, 5.0, 300.0)
REF_BANDWIDTH = 12.29e9


@pytest.fixture
def ref_rf():
    return REF_RF


@pytest.fixture
def ref_link():
    return REF_RF.at(500.0)


@pytest.fixture
def se_capped():
    return SpectralEfficiencyModel("shannon_gap", gap=0.0, max_se=6.0)


def chain_deployment(distances, *, n_rus=1, bandwidth=REF_BANDWIDTH, rf=REF_RF):
    """Straight-line chain(s): RU(s) at sum(distances) from the DU, relays between.

    With several RUs each gets its own chain rotated around the DU.
    """
    import math

    nodes = [Node("du", NodeKind.CENTRAL, (0.0, 0.0))]
    chains = []
    for r in range(n_rus):
        ang = 2 * math.pi * r / n_rus
        ux, uy = math.cos(ang), math.sin(ang)
        path = ["du"]
        pos = 0.0
        for i, d in enumerate(distances):
            pos += d
            last = i == len(distances) - 1
            nid = f"ru{r + 1}" if last else f"relay{r + 1}_{i + 1}"
            kind = NodeKind.FIELD if last else NodeKind.RELAY
            nodes.append(Node(nid, kind, (pos * ux, pos * uy)))
            path.append(nid)
        chains.append(HopChain(tuple(reversed(path)), "trx1"))
    trx = ThzTransceiver("trx1", "du", rf, 20.0, bandwidth)
    return Deployment(tuple(nodes), (trx,), tuple(chains))


@pytest.fixture
def baseline_deployment():
    return chain_deployment([500.0])


# One verdict line per acceptance criterion, printed at the end of the run.
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
