import pytest

from bkhp.context import make_context


@pytest.fixture(scope="session")
def ctx0():
    # Q_3, E = u - 3
    return make_context("mixed", 3, 1, [-3, 1], 12, 32, 6)


@pytest.fixture(scope="session")
def ctx1():
    # Q_2 ramified, E = u^2 - 2
    return make_context("mixed", 2, 2, [-2, 0, 1], 12, 32, 6)


@pytest.fixture(scope="session")
def ctxe():
    # F_3[[pi]], E = u - pi
    return make_context("equal", 3, 1, ["z^1*-1", 1], 12, 32, 6)


@pytest.fixture(scope="session", params=["ctx0", "ctxe"])
def ctx_pair(request, ctx0, ctxe):
    """Degree-one contexts in both characteristics."""
    return {"ctx0": ctx0, "ctxe": ctxe}[request.param]
