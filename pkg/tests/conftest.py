import pytest

from abshift.expansion import Params

# Intercept 2/7, slope 7/2: the worked example used throughout the docs.
FIG_ALPHA = "2/7"
FIG_BETA = "7/2"

# Main-mode parameter triple: slope > 3 with intercept = 1/slope.
MAIN_MODE_SETS = [("2/7", "7/2"), ("1/4", "4"), ("3/10", "10/3")]

# A slope below 3 with a generic intercept, outside the main mode.
OFF_MODE_SETS = [("1/4", "5/2"), ("1/3", "2")]


@pytest.fixture(scope="session")
def fig1():
    return Params.make(FIG_ALPHA, FIG_BETA)


@pytest.fixture(scope="session", params=MAIN_MODE_SETS, ids=lambda s: f"b={s[1]}")
def main_mode_params(request):
    al, be = request.param
    return Params.make(al, be)


@pytest.fixture(scope="session")
def off_mode():
    al, be = OFF_MODE_SETS[0]
    return Params.make(al, be)
