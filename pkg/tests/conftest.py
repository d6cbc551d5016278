import random
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

rationals = st.fractions(min_value=-9, max_value=9, max_denominator=5)
nonzero_rationals = rationals.filter(bool)


def small_matrix(rows, cols=None):
    cols = rows if cols is None else cols
    return st.lists(st.lists(rationals, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def symmetric(draw, n):
    vals = draw(st.lists(rationals, min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    it = iter(vals)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = next(it)
    return m


def rng(seed):
    return random.Random(f"tests:{seed}")


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, when that module ran
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if results[n] else 'FAIL'}")
