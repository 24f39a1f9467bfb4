import pathlib
import sys

import pytest

HERE = pathlib.Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

FIXTURES = HERE.parent / "fixtures"


@pytest.fixture
def fixtures():
    return FIXTURES
