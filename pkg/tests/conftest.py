import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from auslander.io import load_algebra, load_module  # noqa: E402
from auslander.functors import endo_algebra  # noqa: E402


@pytest.fixture(scope="session")
def a2():
    return load_algebra("a2.alg")


@pytest.fixture(scope="session")
def a3():
    return load_algebra("a3rad2.alg")


@pytest.fixture(scope="session")
def a4():
    return load_algebra("a4rad2.alg")


@pytest.fixture(scope="session")
def kx2():
    return load_algebra("kx2.alg")


@pytest.fixture(scope="session")
def ss2():
    return load_algebra("semisimple2.alg")


@pytest.fixture(scope="session")
def a2_all(a2):
    return load_module("a2_all.mod", a2)


@pytest.fixture(scope="session")
def a3_ct(a3):
    return load_module("a3rad2_ct.mod", a3)


@pytest.fixture(scope="session")
def auslander_a2(a2_all):
    """End(P1+P2+S1) over K A_2, the Auslander algebra (dimension 5)."""
    return endo_algebra(a2_all)
