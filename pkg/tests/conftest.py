import numpy as np
import pytest

from tailsmith import _core, _fallback

try:
    from tailsmith import _kernels
except ImportError:  # extension not built
    _kernels = None

BACKENDS = ["python"] + (["cython"] if _kernels is not None else [])
KERNEL_NAMES = ("ramp_up", "ramp_down", "fold_ramp", "count_event")


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    mod = _fallback if request.param == "python" else _kernels
    for name in KERNEL_NAMES:
        monkeypatch.setattr(_core, name, getattr(mod, name))
    return mod


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
