import pytest

from negcat import AbelianModel, build_arc_model, check_setup, compute_esets, make_params, parse_arcs
from negcat.torsion3 import EXAMPLE_SA, EXAMPLE_SB

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): numbered acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    num, title = marker
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[num] = (title, report.outcome == "passed")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep.acceptance = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        title, ok = _acceptance[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def p65():
    return make_params(6, 5)


@pytest.fixture(scope="session")
def m65(p65):
    return build_arc_model(p65)


@pytest.fixture(scope="session")
def A65(m65, p65):
    return AbelianModel.from_sms(m65, parse_arcs(EXAMPLE_SA, p65))


@pytest.fixture(scope="session")
def B65(m65, p65):
    return AbelianModel.from_sms(m65, parse_arcs(EXAMPLE_SB, p65))


@pytest.fixture(scope="session")
def setup65(A65, B65):
    return check_setup(A65, B65)


@pytest.fixture(scope="session")
def td65(setup65):
    assert setup65.pair is not None
    return compute_esets(setup65.pair)
