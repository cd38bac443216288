import pytest

from daggerkit import examples

# filled by test_acceptance, printed at the end of the run
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def strict_corpus():
    return examples.strict_corpus()


@pytest.fixture(scope="session")
def anti_corpus():
    return examples.anti_corpus()


@pytest.fixture(scope="session")
def flagged_corpus():
    return examples.flagged_corpus()


@pytest.fixture(scope="session")
def coherent_corpus():
    return examples.coherent_corpus()


@pytest.fixture(scope="session")
def bi_corpus():
    return examples.bi_involutive_corpus()


@pytest.fixture(scope="session")
def mat22():
    return examples.build_mat_category(2, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line[1])
