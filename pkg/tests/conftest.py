from pathlib import Path

import pytest

from secwipt.channel import NodePlacement, PathLossModel, dbm_to_watts, los_channel
from secwipt.swipt_siso import SystemParams

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"

FIG3_NOISE = dbm_to_watts(-80)
FIG3_H_INFO = 20.0 ** -3
FIG3_H_EVE = 2.0 ** -3


@pytest.fixture
def config_dir():
    return CONFIG_DIR


@pytest.fixture
def fig3_params():
    return SystemParams(power=1.0, noise=FIG3_NOISE, eta=0.5)


@pytest.fixture
def fig5_channels():
    model = PathLossModel(3.0, 1.0)
    h_info = los_channel(NodePlacement(20.0, 0.0), 4, model)
    h_eve = los_channel(NodePlacement(2.0, 60.0), 4, model)
    return h_info, h_eve


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
