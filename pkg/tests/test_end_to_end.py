from hypothesis import given, settings, strategies as st

from e2e_support import accepted_runs, check_run


def test_thirty_random_equations():
    count = 0
    for eq, res in accepted_runs(seed=11, count=30):
        check_run(eq, res)
        count += 1
    assert count == 30


@given(st.integers(0, 10**9))
@settings(max_examples=15, deadline=None)
def test_random_equation_property(seed):
    for eq, res in accepted_runs(seed=seed, count=1):
        check_run(eq, res)
