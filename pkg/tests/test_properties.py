"""Hypothesis drives the same generators and checks the harness uses."""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from ringcrosscap.properties import PROPERTIES, run_property


class Draw:
    """The ``choice``/``randint`` interface the generators expect, backed by hypothesis."""

    def __init__(self, data):
        self.data = data

    def choice(self, seq):
        return self.data.draw(st.sampled_from(list(seq)))

    def randint(self, a, b):
        return self.data.draw(st.integers(a, b))


@pytest.mark.parametrize("prop", PROPERTIES, ids=lambda p: p.name)
@settings(max_examples=200, deadline=None,
          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
@given(data=st.data())
def test_property(prop, data):
    prop.check(prop.generate(Draw(data)))


def test_seeded_runner_reports_first_failure():
    from ringcrosscap.properties import Property, PropertyViolation

    def bad(case):
        if case > 5:
            raise PropertyViolation(f"case {case}")

    n, err = run_property(Property("toy", "", lambda d: d.randint(0, 10), bad), cases=200)
    assert err is not None and n <= 200
    n, err = run_property(Property("toy", "", lambda d: d.randint(0, 5), bad), cases=50)
    assert (n, err) == (50, None)
