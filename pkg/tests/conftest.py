import os

import pytest

from srskit import RobotConfig

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_DIR = os.path.join(REPO_ROOT, "configs")


@pytest.fixture
def robot() -> RobotConfig:
    return RobotConfig()


@pytest.fixture
def configs_dir() -> str:
    return CONFIG_DIR
