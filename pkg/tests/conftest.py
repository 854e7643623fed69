import pytest
from hypothesis import settings

from modgl2 import BaseField

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)]

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=SMALL_FIELDS, ids=lambda pf: f"p{pf[0]}f{pf[1]}")
def fld(request):
    return BaseField(*request.param)


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, seconds: float, budget: float, detail: str = ""):
        status = "PASS" if ok and seconds < budget else "FAIL"
        line = f"criterion {number} [{status}] {title}: {seconds:.1f}s (budget {budget:.0f}s)"
        if detail:
            line += f"; {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return status == "PASS"

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
