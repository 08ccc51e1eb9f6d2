import sys
from pathlib import Path

from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

_CRITERIA: dict[str, tuple[int, str]] = {}
_OUTCOMES: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_collection_modifyitems(config, items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _CRITERIA[item.nodeid] = (m.args[0], m.args[1])


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    number, _ = _CRITERIA[report.nodeid]
    if report.when == "call" or report.outcome != "passed":
        _OUTCOMES.setdefault(number, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    titles = {}
    for number, title in _CRITERIA.values():
        titles.setdefault(number, title)
    terminalreporter.section("acceptance criteria")
    for number in sorted(titles):
        outcomes = _OUTCOMES.get(number)
        if not outcomes:
            status = "NOT RUN"
        else:
            status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number}: {titles[number]}")
