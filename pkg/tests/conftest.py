import pytest


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", default=False,
                     help="run the full-scale (q=2^64, n=2048, k=256) reproduction")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip = pytest.mark.skip(reason="full-scale run; pass --run-long")
    for item in items:
        if "longrun" in item.keywords:
            item.add_marker(skip)


ACCEPTANCE = {}


@pytest.fixture
def verdict(request):
    """Record one acceptance line: verdict(ok, detail)."""
    label = request.node.get_closest_marker("criterion").args[0]

    def record(ok, detail):
        line = f"criterion {label}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE[label] = line
        print(line)
        return ok
    return record


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: (int(s.rstrip("ab")), s)):
        terminalreporter.write_line(ACCEPTANCE[label])
