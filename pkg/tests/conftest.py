import pytest

from coreshell.well import WellConfig

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        verdict = "PASS" if report.outcome == "passed" else "FAIL"
        if _criteria.get(number, (title, "PASS"))[1] == "FAIL":
            verdict = "FAIL"
        _criteria[number] = (title, verdict)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, verdict = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {verdict}  {title}")


@pytest.fixture
def light_core():
    """Light core, heavy shell: the particle-like configuration."""
    return WellConfig(m1=1.5, m2=1.75, V0=1.0, r0=4.0)


@pytest.fixture
def heavy_core():
    """Heavy core, light shell."""
    return WellConfig(m1=1.75, m2=1.5, V0=1.0, r0=4.0)


@pytest.fixture
def no_well():
    return WellConfig(m1=1.5, m2=1.5, V0=0.0, r0=4.0)
