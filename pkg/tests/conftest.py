import re

import pytest

from delpezzo.enumeration import surface_context

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture(params=range(1, 9), ids=lambda r: f"r{r}")
def every_rank(request):
    return request.param


@pytest.fixture
def ctx(every_rank):
    return surface_context(every_rank)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        m = re.match(r"test_criterion_(\d+)", item.name)
        if m:
            num = int(m.group(1))
            passed = rep.passed and _CRITERIA.get(num, (True, ""))[0]
            _CRITERIA[num] = (passed, item.name)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for num in sorted(_CRITERIA):
            passed, name = _CRITERIA[num]
            verdict = "PASS" if passed else "FAIL"
            terminalreporter.write_line(f"criterion {num}: {verdict}  ({name})")
