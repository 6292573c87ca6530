import random

import pytest
from hypothesis import settings, strategies as st

from treetrop.balancing import three_cherry_star
from treetrop.tree import parse_newick, random_tree

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

QUARTET = "((1:1,2:1):1,3:1,4:1);"
# the resolution of the three-cherry star whose new edge cuts off {5,6,7}
CHERRY_LEFT = "((1,2),(3,4),((5,6),7));"


@st.composite
def trees(draw, min_n=3, max_n=8):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_tree(n, random.Random(seed))


@pytest.fixture
def quartet():
    return parse_newick(QUARTET)


@pytest.fixture
def cherry_star():
    return three_cherry_star()


@pytest.fixture
def cherry_left():
    return parse_newick(CHERRY_LEFT).topology


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
