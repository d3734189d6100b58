from __future__ import annotations

import pytest

from rm3.ideals import load_field_table
from rm3.numberfield import CubicField

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def table():
    records, failures = load_field_table()
    assert not failures
    return records


@pytest.fixture(scope="session")
def by_disc(table):
    out = {}
    for rec in table:
        out.setdefault(rec.disc, []).append(rec)
    return out


@pytest.fixture(scope="session")
def f49():
    return CubicField([-1, -2, 1, 1], name="v")


@pytest.fixture(scope="session")
def f81():
    return CubicField([1, -3, 0, 1], name="v")


@pytest.fixture(scope="session")
def veech(f49):
    v = f49.gen
    return (f49.one, v * v + v - 2, v * v - 2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
