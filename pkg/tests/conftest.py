import pytest

from multired.monoid import MonoidContext
from multired.presentation import preset


@pytest.fixture(scope="session")
def att():
    return MonoidContext(preset("A2tilde"))


@pytest.fixture(scope="session")
def braid3():
    return MonoidContext(preset("braid(3)"))


@pytest.fixture(scope="session")
def k43():
    return MonoidContext(preset("K(4,3)"))


@pytest.fixture(scope="session")
def free2():
    return MonoidContext(preset("free(2)"))
