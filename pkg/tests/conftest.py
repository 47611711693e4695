import itertools

from hypothesis import HealthCheck, settings, strategies as st

from markov_complexity.intlin import IntMatrix

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def int_matrices(draw, max_m=3, max_n=4, lo=-3, hi=3, min_m=1, min_n=1):
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    rows = draw(st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=m, max_size=m))
    return IntMatrix(rows, ncols=n)


def nonneg_solutions(A, b, bound):
    """All t in {0..bound}^n with A t = b (brute force)."""
    for t in itertools.product(range(bound + 1), repeat=A.n):
        if tuple(A.apply(t)) == tuple(b):
            yield t


def pytest_addoption(parser):
    parser.addoption("--stretch", action="store_true", default=False,
                     help="also run the s = 5 witness certification")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
