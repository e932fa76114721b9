import pytest

from drinfeld_canrep.gfq import build_field

QS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
SMALL = [(2, 1), (3, 1), (2, 2), (5, 1)]


@pytest.fixture(params=QS, ids=lambda pr: f"q{pr[0] ** pr[1]}")
def field(request):
    return build_field(*request.param)


@pytest.fixture(params=SMALL, ids=lambda pr: f"q{pr[0] ** pr[1]}")
def small_field(request):
    return build_field(*request.param)
