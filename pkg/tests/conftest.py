from __future__ import annotations

import pytest

from stopred import codes as cd
from stopred.perms import wolfmann_set

ACCEPTANCE: list[tuple[str, str, str]] = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.append((criterion, "PASS" if ok else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, verdict, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{verdict} {name}" + (f"  {detail}" if detail else ""))


@pytest.fixture(scope="session")
def wolfmann_h():
    return cd.golay24_wolfmann()


@pytest.fixture(scope="session")
def golay24_code():
    return cd.golay24()


@pytest.fixture(scope="session")
def wolfmann_perms():
    return wolfmann_set()


@pytest.fixture(scope="session")
def bch_cog_matrix():
    D = cd.dual(cd.bch31_16())
    return cd.cog_matrix(cd.cogs(cd.min_weight_words(D, D.min_distance()), 31), 15)
