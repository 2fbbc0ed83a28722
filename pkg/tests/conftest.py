from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings

from seshadri.sl3 import build_sl3_stratification, sl3_poset
from seshadri.toric import toric_fan, toric_poset

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def sl3():
    return build_sl3_stratification()


@pytest.fixture(scope="session")
def sl3_fan(sl3):
    return sl3.fan


@pytest.fixture
def sl3_poset_():
    return sl3_poset()


@pytest.fixture(scope="session")
def toric():
    return toric_fan()


@pytest.fixture
def toric_poset_():
    return toric_poset()


@pytest.fixture
def data_dir() -> Path:
    return DATA
