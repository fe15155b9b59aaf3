import pytest

from tcinv.degeneration import build_configuration

CUBIC = dict(
    coordinates=["Z0", "Z1", "Z2", "Z3"],
    ideal_gens=["Z1^2 - Z0*Z2", "Z1*Z2 - Z0*Z3", "Z2^2 - Z1*Z3"],
    w_coords=["Z0", "Z2", "Z3"],
    weights={"Z1": 1},
)
CONIC = dict(
    coordinates=["Z0", "Z1", "Z2"],
    ideal_gens=["Z1^2 - Z0*Z2"],
    w_coords=["Z0", "Z2"],
    weights={"Z1": 1},
)

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def cubic():
    return build_configuration(**CUBIC)


@pytest.fixture(scope="session")
def conic():
    return build_configuration(**CONIC)


@pytest.fixture
def acceptance_record():
    def record(number, ok, text):
        _ACCEPTANCE.append((number, ok, text))
        print(f"[acceptance {number}] {'PASS' if ok else 'FAIL'}: {text}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, text in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}")
