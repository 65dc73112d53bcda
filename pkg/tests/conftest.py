import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from nashblow.poly import Polynomial, VariableContext

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_EXAMPLES", "60")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

XY = VariableContext(["x", "y"])
XYZ = VariableContext(["x", "y", "z"])

small_fraction = st.builds(
    Fraction, st.integers(-5, 5), st.integers(1, 3)
)


def polynomials(ctx: VariableContext, max_degree: int = 3, max_terms: int = 4):
    exps = st.tuples(*[st.integers(0, max_degree) for _ in ctx.names]).filter(
        lambda e: sum(e) <= max_degree
    )
    return st.dictionaries(exps, small_fraction, max_size=max_terms).map(
        lambda d: Polynomial.from_terms(ctx, d)
    )


# acceptance criterion lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
