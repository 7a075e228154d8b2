from __future__ import annotations

import pytest

from spin101.builtins import (
    extended_configuration,
    peres33,
    peres33_automorphisms,
    peres33_graph,
)
from spin101.exactgeom import RaySet, orthogonality_graph, ray_from_ints

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion():
    def record(num: int, ok: bool, text: str) -> None:
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'} - {text}"
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return record


@pytest.fixture(scope="session")
def peres():
    return peres33()


@pytest.fixture(scope="session")
def peres_graph():
    return peres33_graph()


@pytest.fixture(scope="session")
def peres_autos():
    return list(peres33_automorphisms())


@pytest.fixture(scope="session")
def extended():
    return extended_configuration()


@pytest.fixture(scope="session")
def basis_graph():
    basis = RaySet(
        rays=(
            ray_from_ints((1, 0), (0, 0), (0, 0)),
            ray_from_ints((0, 0), (1, 0), (0, 0)),
            ray_from_ints((0, 0), (0, 0), (1, 0)),
        ),
        label="basis",
    )
    return orthogonality_graph(basis)
