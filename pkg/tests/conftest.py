from pathlib import Path

import pytest

from knotforge.diagram import Diagram

DATA = Path(__file__).parent / "data"

TREFOIL_PD = [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)]
FIGURE_EIGHT_PD = [(4, 2, 5, 1), (8, 6, 1, 5), (6, 3, 7, 4), (2, 7, 3, 8)]
UNKNOT_KINK_PD = [(1, 2, 2, 1)]
# trefoil with an extra Reidemeister I kink spliced into edge 6
KINKED_TREFOIL_PD = [(1, 5, 2, 4), (3, 1, 4, 8), (5, 3, 6, 2), (6, 7, 7, 8)]


@pytest.fixture
def trefoil():
    return Diagram.from_pd(TREFOIL_PD)


@pytest.fixture
def figure_eight():
    return Diagram.from_pd(FIGURE_EIGHT_PD)


@pytest.fixture
def unknot_kink():
    return Diagram.from_pd(UNKNOT_KINK_PD)
