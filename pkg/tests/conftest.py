import math

import pytest

from lcwec.model import GeneratorParams, MechanicalParams

M_M, B_M, K_M = 10_000.0, 4_000.0, 31_580.0
K_E = K_T = 842.0
A_W = 10_000.0
R_STAR = K_E * K_T / B_M
OMEGA_0 = math.sqrt(K_M / M_M)


@pytest.fixture
def mech():
    return MechanicalParams(M_M, B_M, K_M)


@pytest.fixture
def gen():
    return GeneratorParams(K_E, K_T)


# -- acceptance summary: one pass/fail line per criterion ------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, title): acceptance criterion from the build contract"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        key = (marker.args[0], marker.args[1])
        ok = rep.passed
        _criteria.setdefault(key, []).append((item.name, ok))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for (num, title), results in sorted(_criteria.items()):
        ok = all(r for _, r in results)
        tr.write_line(f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title}")
        for name, r in results:
            if not r:
                tr.write_line(f"             failed: {name}")
