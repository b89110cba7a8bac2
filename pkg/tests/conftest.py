import pytest

_RESULTS: dict[str, list[tuple]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k, title): acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        key = str(mark.args[0])
        _RESULTS.setdefault(key, []).append((mark.args[1], item.name, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_RESULTS):
        for title, name, outcome, dur in _RESULTS[key]:
            status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[outcome]
            tr.write_line(f"[{status}] criterion {key}: {title} ({name}, {dur:.1f}s)")
