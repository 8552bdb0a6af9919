import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hotk.models import (build_fjt_canonical, build_pure_model,
                         build_sttd_companion, build_sttu_companion)


@pytest.fixture(scope="session")
def pure4():
    return build_pure_model(4)


@pytest.fixture(scope="session")
def pure4_up(pure4):
    return build_sttu_companion(pure4)


@pytest.fixture(scope="session")
def fjt2():
    return build_fjt_canonical(2)


@pytest.fixture(scope="session")
def fjt3():
    return build_fjt_canonical(3)


@pytest.fixture(scope="session")
def fjt3_down(fjt3):
    return build_sttd_companion(fjt3)
