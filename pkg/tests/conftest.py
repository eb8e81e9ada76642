import json
import pathlib
from importlib import resources

import pytest

from hga import builtin_map

HERE = pathlib.Path(__file__).parent


@pytest.fixture(scope="session")
def frozen():
    """Hand-computed oracle values; see oracles/freeze_oracles.py."""
    return json.loads((HERE / "oracles" / "frozen.json").read_text())


@pytest.fixture(scope="session")
def cmap():
    return builtin_map()


@pytest.fixture(scope="session")
def data_dir():
    return HERE / "data"


@pytest.fixture(scope="session")
def check_schema():
    import jsonschema

    def check(doc, name):
        path = resources.files("hga") / "schemas" / f"{name}.schema.json"
        jsonschema.validate(doc, json.loads(path.read_text()))

    return check


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(num, title): acceptance criterion, reported as one "
        "PASS/FAIL line in the terminal summary",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker:
        report._criterion = (marker.args[0], marker.args[1], report.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One verdict line per executed acceptance criterion.

    Written through the terminal reporter so the lines survive output
    capture and land in piped logs.
    """
    verdicts = []
    for reports in terminalreporter.stats.values():
        for report in reports:
            crit = getattr(report, "_criterion", None)
            if crit is not None:
                verdicts.append(crit)
    if not verdicts:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num, title, passed in sorted(verdicts):
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {num:>2} {verdict}  {title}")
