from __future__ import annotations

import pytest

from x0quartic.auxdata import load_default_aux
from x0quartic.curvedb import load_default_database


@pytest.fixture(scope="session")
def db():
    return load_default_database()


@pytest.fixture(scope="session")
def aux():
    return load_default_aux()
