"""
Shared fixtures and hypothesis settings for the Coherence Fraction SDK tests.
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

# Add the parent directory to the path so we can import the SDK
sys.path.append(str(Path(__file__).parent.parent))

from coherence_fraction_sdk.config import OptimizerConfig

settings.register_profile(
    "default",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
    derandomize=True,
)
settings.register_profile("fast", max_examples=5, deadline=None, derandomize=True)
settings.load_profile("default")

np.seterr(all="warn")

FIXTURES_DIR = Path(__file__).parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def cfg() -> OptimizerConfig:
    """Default optimizer settings."""
    return OptimizerConfig()


@pytest.fixture
def quick_cfg() -> OptimizerConfig:
    """Reduced search effort for the channel searches."""
    return OptimizerConfig(restarts=4, max_iters=200, bipartite_restarts=8, inner_restarts=2)
