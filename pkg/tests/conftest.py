import os
from collections import OrderedDict

import pytest

CRITERIA = OrderedDict(
    [
        ("AC1", "closed-form diagonals"),
        ("AC2", "oracle equivalence"),
        ("AC3", "conjectured limits"),
        ("AC4", "close encounters table"),
        ("AC5", "24l table"),
        ("AC6", "extrema of C_{0,1,1}"),
        ("AC7", "top-down fitting"),
        ("AC8", "reconstruction"),
        ("AC9", "float-backend audit"),
        ("AC10", "determinism"),
    ]
)
_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion this test belongs to")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    os.environ["RADEMACHER_CACHE_DIR"] = str(tmp_path_factory.mktemp("cache"))
    yield


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    name = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _outcomes.setdefault(name, []).append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, label in CRITERIA.items():
        results = _outcomes.get(name)
        if not results:
            continue
        failed = [n for n, o in results if o == "failed"]
        skipped = [n for n, o in results if o == "skipped"]
        passed = len(results) - len(failed) - len(skipped)
        status = "FAIL" if failed else ("SKIP" if passed == 0 else "PASS")
        line = f"{name:<5} {status:<4}  {label} ({passed}/{len(results)} checks passed"
        line += f", {len(skipped)} skipped)" if skipped else ")"
        if failed:
            line += "  failing: " + ", ".join(failed)
        tr.write_line(line)
