import pytest
from hypothesis import settings, strategies as st

from hecke_wild.partitions import Partition, partitions_of

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_BY_SIZE = {n: list(partitions_of(n)) for n in range(21)}


def partitions_upto(n_max: int):
    """Hypothesis strategy drawing a partition of size at most n_max."""
    return st.integers(0, n_max).flatmap(lambda n: st.sampled_from(_BY_SIZE[n]))


@pytest.fixture
def P():
    return Partition.parse


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance verdicts at the end of the run, one line per criterion."""
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
