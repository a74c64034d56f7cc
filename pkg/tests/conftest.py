import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from algebra.coeff import FieldSpec  # noqa: E402
from fermat.arrangement import build_config  # noqa: E402


@pytest.fixture
def f7():
    return FieldSpec.prime(7, 3)


@pytest.fixture
def f31():
    return FieldSpec.prime(31, 3)


@pytest.fixture
def q3():
    return FieldSpec.cyclotomic(3)


@pytest.fixture
def rational():
    """Q itself: the cyclotomic field of order 1."""
    return FieldSpec.cyclotomic(1)


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture(scope="session")
def cfg23_f7():
    return build_config(2, 3, FieldSpec.prime(7, 3))


@pytest.fixture(scope="session")
def cfg33_f7():
    return build_config(3, 3, FieldSpec.prime(7, 3))


@pytest.fixture(autouse=True)
def _quiet_env(monkeypatch):
    """Keep developer .env overrides out of the suite."""
    for name in ("FERMAT_FIELD", "FERMAT_ORDER", "FERMAT_MAX_DEGREE", "FERMAT_MAX_BASIS", "FERMAT_TIME_BUDGET"):
        monkeypatch.delenv(name, raising=False)
