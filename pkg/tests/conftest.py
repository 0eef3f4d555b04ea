import pytest

from nsea_df import ActuatorParams, NseeGeometry, table2
from nsea_df.config import load_config

_CRITERIA = {}


@pytest.fixture(scope='session')
def geom():
    # 4 springs, 32 N/mm, R = 70 mm, r = 40 mm
    return NseeGeometry(n=4, k_s=32000.0, R=0.07, r=0.04)


@pytest.fixture(scope='session')
def act():
    return ActuatorParams(J_act=0.005, D_act=0.1)


@pytest.fixture(scope='session')
def config():
    return load_config()


@pytest.fixture(scope='session')
def zc_table(config):
    """Both default sweeps; shared because they dominate suite runtime."""
    import time
    t0 = time.perf_counter()
    res = table2(config.actuator, config.geometry, config.sim,
                 config.amplitudes, config.frequencies)
    return res, time.perf_counter() - t0


@pytest.fixture
def criterion():
    """Record a named acceptance result for the terminal summary."""
    def record(name, ok, detail=''):
        _CRITERIA[name] = (ok, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section('acceptance criteria')
    for name in sorted(_CRITERIA, key=lambda n: int(n.split()[0][1:])):
        ok, detail = _CRITERIA[name]
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
