import pytest


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False,
                     help="include the larger grid points ((3,3) trace symmetry, (4,2) streaming rank)")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: larger grid points")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_CRITERIA_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion_log(request):
    """Append one summary line per acceptance criterion; printed at the end of the run."""
    lines = request.config.stash.setdefault(_CRITERIA_KEY, [])

    def log(number, ok, text):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}"
        lines.append(line)
        print(line)
        return ok

    return log


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERIA_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
