import sys
from collections import OrderedDict
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_criteria = OrderedDict()


def pytest_runtest_logreport(report):
    item_marks = getattr(report, "criterion", None)
    if item_marks is None:
        return
    num, title = item_marks
    ok = _criteria.setdefault(num, [title, True])
    if report.failed:
        ok[1] = False


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = (mark.args[0], mark.kwargs.get("title", ""))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, ok = _criteria[num]
        terminalreporter.write_line(f"CRITERION {num:>2} {'PASS' if ok else 'FAIL'}  {title}")
