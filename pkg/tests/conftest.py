"""Pytest configuration and fixtures."""

import os

# Set PYTEST_RUNNING before any imports that might use settings
# This ensures .env.test is loaded instead of .env
os.environ["PYTEST_RUNNING"] = "true"

import pytest

from app.models import MoebiusTable, WaveParams, WaveTrace, ZeroSet
from app.services.numtheory import default_zero_set, moebius_sieve
from app.services.parallel import BlockExecutor
from app.services.wave import CriticalWaveService


@pytest.fixture(scope="session")
def table() -> MoebiusTable:
    """Moebius table for n <= 10^4."""
    return moebius_sieve(10_000)


@pytest.fixture(scope="session")
def zero_set() -> ZeroSet:
    """First two nontrivial zeros plus twenty trivial-zero derivatives."""
    return default_zero_set(2, 20)


@pytest.fixture(scope="session")
def wave_service(table, zero_set) -> CriticalWaveService:
    """Wave service shared across the session (inner sums are cached)."""
    return CriticalWaveService(table, zero_set, BlockExecutor(4, 256))


@pytest.fixture(scope="session")
def default_params() -> WaveParams:
    """(alpha, beta, rho) = (15/2, 4, 1/2), N = 2000, x in [0, 30]."""
    return WaveParams()


@pytest.fixture(scope="session")
def psi_half(wave_service, default_params) -> WaveTrace:
    """psi_{1/2} on the default grid."""
    return wave_service.psi(default_params)


@pytest.fixture
def output_dir(tmp_path):
    """Fresh writable output directory."""
    directory = tmp_path / "output"
    directory.mkdir()
    return directory
