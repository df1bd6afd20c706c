import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cvoml import model

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

# filled by tests/test_acceptance.py, echoed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])


@pytest.fixture
def amp2():
    """Amplifier alpha = 2, n0 = 0, r = 1."""
    d = model.DerivedParams.from_alpha(2.0, "amplifier", 0.0, 1.0)
    return d, model.output_covariance(d)


@pytest.fixture
def att2():
    """Attenuator alpha' = 2, n0 = 0, r = 1."""
    d = model.DerivedParams.from_alpha(2.0, "attenuator", 0.0, 1.0)
    return d, model.output_covariance(d)


def dense(sigma):
    return np.asarray(sigma, dtype=float)
