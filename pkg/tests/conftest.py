import numpy as np
import pytest
from hypothesis import strategies as st


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


unit = st.floats(0.0, 1.0, allow_nan=False, allow_subnormal=False)
eigen = st.floats(-1.0, 1.0, allow_nan=False)


@st.composite
def bloch(draw):
    v = np.array([draw(eigen), draw(eigen), draw(eigen)])
    n = np.linalg.norm(v)
    return v / n if n > 1 else v


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[k])
