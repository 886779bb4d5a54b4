from __future__ import annotations

import pytest

from gwa.action import all_gwa_on_group
from gwa.groups import catalog


@pytest.fixture(scope="session")
def klein():
    return catalog(4, 2)


@pytest.fixture(scope="session")
def s3():
    return catalog(6, 1)


@pytest.fixture(scope="session")
def q8():
    return catalog(8, 4)


@pytest.fixture(scope="session")
def klein_objects(klein):
    return all_gwa_on_group(klein)


@pytest.fixture(scope="session")
def s3_objects(s3):
    return all_gwa_on_group(s3)


@pytest.fixture(scope="session")
def q8_objects(q8):
    return all_gwa_on_group(q8)
