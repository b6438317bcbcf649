import sys
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from convexlab.setcore import SetSystem  # noqa: E402


@st.composite
def set_systems(draw, max_ground=4, max_members=4, min_members=0):
    g = draw(st.integers(1, max_ground))
    sets = draw(st.lists(st.integers(0, (1 << g) - 1), min_size=min_members, max_size=max_members))
    return SetSystem(g, tuple(sets))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
