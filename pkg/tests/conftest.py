from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from zeropascal.fps import Series

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def series(draw, order=6, unit=False, const=None):
    head = Fraction(1) if unit else (const if const is not None else draw(small_rationals.filter(lambda v: v != 0)))
    tail = draw(st.lists(small_rationals, min_size=order, max_size=order))
    return Series((Fraction(head),) + tuple(tail))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
