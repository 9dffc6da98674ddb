import pytest

# filled by test_acceptance.py: criterion number -> (title, passed)
ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record PASS/FAIL for one acceptance criterion from the test outcome."""
    num, title = request.node.get_closest_marker("criterion").args
    ACCEPTANCE[num] = (title, False)
    yield
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    ACCEPTANCE[num] = (title, ok)
    print(f"criterion {num} {'PASS' if ok else 'FAIL'}: {title}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion covered by the test")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {title}")
