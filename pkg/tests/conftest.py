import pytest

from qhyper.verify import _Workspace


@pytest.fixture(scope="session")
def ws89():
    return _Workspace.get(8, 9, 3)


@pytest.fixture(scope="session")
def ws1012():
    return _Workspace.get(10, 12, 3)


@pytest.fixture(scope="session")
def ws1112():
    return _Workspace.get(11, 12, 5)
