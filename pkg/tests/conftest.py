import pytest
from hypothesis import settings, strategies as st

from smalldoubling.group import HEISENBERG, GroupContext, MalcevElement

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


def elements(n: int = 2, gen_bound: int = 6, comm_bound: int = 40):
    ctx = GroupContext(n)
    return st.builds(
        MalcevElement,
        st.tuples(*[st.integers(-gen_bound, gen_bound)] * ctx.n),
        st.tuples(*[st.integers(-comm_bound, comm_bound)] * ctx.comm_dim),
    )


@pytest.fixture
def H():
    return HEISENBERG


@pytest.fixture
def xyz():
    """x, y and z = [x, y] in the Heisenberg group."""
    return HEISENBERG.generator(0), HEISENBERG.generator(1), HEISENBERG.basic_commutator(0, 1)


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
