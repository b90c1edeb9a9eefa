import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from cdiffkit import build_field


@pytest.fixture(scope="session")
def gf8():
    return build_field(2, 3)


@pytest.fixture(scope="session")
def gf9():
    return build_field(3, 2)


@pytest.fixture(scope="session")
def gf16():
    return build_field(2, 4)


@pytest.fixture(scope="session")
def gf27():
    return build_field(3, 3)
