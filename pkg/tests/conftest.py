from __future__ import annotations

from typing import Callable

import pytest

from contispine.config.scenario_config import ScenarioConfig
from contispine.mechanism.mechanism_kinematics import DiscGeometry
from contispine.mechanism.mechanism_statics import TendonLoad
from contispine.utils.constants import ENV_OUTPUT_DIR


@pytest.fixture(autouse=True)
def _no_output_dir_from_env(monkeypatch):
    monkeypatch.delenv(ENV_OUTPUT_DIR, raising=False)


@pytest.fixture
def make_geometry() -> Callable[..., DiscGeometry]:
    def _geometry(
        *,
        n: int = 20,
        r: float = 0.07,
        d: float = 0.00216,
        l: float = 0.01,
        rho: float = 0.03,
        e: tuple = (0.0, 0.0, 0.02),
        psi_limit: float | None = None,
    ) -> DiscGeometry:
        return DiscGeometry(r=r, d=d, l=l, rho=rho, n=n, e=e, psi_limit=psi_limit)

    return _geometry


@pytest.fixture
def make_load() -> Callable[..., TendonLoad]:
    def _load(*, F_c: float = 200.0, r1: float = 0.03, r2: float = 0.03) -> TendonLoad:
        return TendonLoad(F_c=F_c, r1=r1, r2=r2)

    return _load


@pytest.fixture
def make_scenario(tmp_path) -> Callable[..., ScenarioConfig]:
    def _scenario(*overrides: str, config_path: str | None = None) -> ScenarioConfig:
        return ScenarioConfig.from_sources(
            config_path,
            [f"run.output_dir={tmp_path / 'out'}", *overrides],
        )

    return _scenario
