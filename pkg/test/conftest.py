from __future__ import annotations

import numpy as np
import pytest
from click.testing import CliRunner

from lyapcert.domains.problem.model import ProblemClass


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def pc100() -> ProblemClass:
    return ProblemClass(m=1.0, L=100.0)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()
