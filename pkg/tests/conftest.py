import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an acceptance criterion")
    config._acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        number, title = marker.args
        _, outcome, duration = item.config._acceptance.get(number, (title, "passed", 0.0))
        if rep.outcome != "passed":
            outcome = rep.outcome
        item.config._acceptance[number] = (title, outcome, duration + rep.duration)


def pytest_terminal_summary(terminalreporter, config):
    results = config._acceptance
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(results, key=int):
        title, outcome, duration = results[number]
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title} ({duration:.2f}s)")
