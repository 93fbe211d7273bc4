import pytest

_acceptance_results: list[tuple[str, bool]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" and item.module.__name__ == "test_acceptance":
        _acceptance_results.append((item.name, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, passed in _acceptance_results:
        label = name.removeprefix("test_")
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}")
