import pytest

from goimll.graphs import WeightedGraph


@pytest.fixture
def four_cycle():
    """The 4-cycle 1 -> 2 -> 4 -> 3 -> 1 at unit weights."""
    return WeightedGraph.build(
        [1, 2, 3, 4], [(1, 2, 1.0), (2, 4, 1.0), (4, 3, 1.0), (3, 1, 1.0)]
    )


@pytest.fixture
def loop_pair():
    """Unit loops at 1 and 2."""
    return WeightedGraph.build([1, 2], [(1, 1, 1.0), (2, 2, 1.0)])


@pytest.fixture
def swap_pair():
    """The unit 2-cycle between 1 and 2."""
    return WeightedGraph.build([1, 2], [(1, 2, 1.0), (2, 1, 1.0)])
