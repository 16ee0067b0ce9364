import collections

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_RESULTS: dict[int, list[tuple[str, bool]]] = collections.defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(n): test belongs to acceptance criterion n"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        _RESULTS[marker.args[0]].append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_RESULTS):
        entries = _RESULTS[crit]
        ok = all(passed for _, passed in entries)
        status = "PASS" if ok else "FAIL"
        detail = ""
        if not ok:
            failed = [name for name, passed in entries if not passed]
            detail = f"  ({', '.join(failed)})"
        terminalreporter.write_line(f"criterion {crit}: {status}{detail}")
