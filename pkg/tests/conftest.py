import pytest

from exptree.partition import validate_base
from exptree.sequences import canonicalize
from exptree.treebuild import build_tree

ACCEPTANCE_SEED = 20240810
ACCEPTANCE_COUNT = 100


@pytest.fixture(scope="session")
def P_a():
    """Partition of the base address 0(1)."""
    return validate_base(canonicalize([0], [1]))


@pytest.fixture(scope="session")
def P_b():
    """Partition of the base address 0(0,1)."""
    return validate_base(canonicalize([0], [0, 1]))


@pytest.fixture(scope="session")
def tree_a(P_a):
    return build_tree(P_a)


@pytest.fixture(scope="session")
def tree_b(P_b):
    return build_tree(P_b)


@pytest.fixture(scope="session")
def acceptance_corpus():
    """The acceptance corpus: 100 bases, entries in [-3, 3], preperiod
    up to 3, period up to 4, with all trees built."""
    from exptree.verify import make_corpus

    return make_corpus(
        ACCEPTANCE_COUNT, ACCEPTANCE_SEED, max_preperiod=3, max_period=4, entry_range=3
    )
