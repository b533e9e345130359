import pytest

_CRITERIA_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_CRITERIA_KEY] = {}


@pytest.fixture
def record_criterion(request):
    """Store one acceptance outcome for the end-of-run summary."""
    table = request.config.stash[_CRITERIA_KEY]

    def record(number, title, passed, detail=""):
        table[number] = (title, bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    table = config.stash.get(_CRITERIA_KEY, {})
    if not table:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(table):
        title, passed, detail = table[number]
        terminalreporter.write_line(f"criterion {number:>2} {'PASS' if passed else 'FAIL'}  {title}  {detail}")
