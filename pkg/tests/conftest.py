import pytest

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    if rep.when == "setup" and rep.passed:
        return
    number, title = mark.args
    entry = _results.setdefault(number, {"title": title, "parts": []})
    entry["parts"].append((item.name, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        ok = all(p for _, p in entry["parts"])
        failed = [name for name, p in entry["parts"] if not p]
        suffix = f"  (failed: {', '.join(failed)})" if failed else ""
        tr.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {entry['title']}{suffix}")
