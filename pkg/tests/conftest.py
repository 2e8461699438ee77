import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from generators import trefoil  # noqa: E402

from polyknot import certify_knot, make_knot  # noqa: E402


@pytest.fixture(scope="session")
def line_knot():
    return certify_knot(make_knot(3, {(1, 1): 1}))


@pytest.fixture(scope="session")
def cubic_knot():
    return certify_knot(make_knot(2, {(1, 3): 1, (1, 1): 1}))


@pytest.fixture(scope="session")
def trefoil_knot():
    return certify_knot(trefoil())
