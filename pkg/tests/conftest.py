import pytest

from reidemine import codec, corpus

TREFOIL_PD = "X 1 5 2 4\nX 3 1 4 6\nX 5 3 6 2"
KINK_PD = "X 1 1 2 2"

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def trefoil():
    return codec.parse(TREFOIL_PD)


@pytest.fixture
def kink():
    return codec.parse(KINK_PD)


@pytest.fixture(scope="session")
def knots():
    return corpus.knots()


@pytest.fixture(scope="session")
def padded():
    return corpus.padded_knots()


@pytest.fixture(scope="session")
def clasped():
    return corpus.clasp_diagrams()
