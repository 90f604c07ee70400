from fractions import Fraction

import pytest

from qeuler.configuration import CONFIG_ENV_VAR, EvalConfig
from qeuler.qcore import QParam


@pytest.fixture(autouse=True)
def _isolated_config(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


@pytest.fixture
def config():
    return EvalConfig()


@pytest.fixture
def half():
    return QParam.exact(Fraction(1, 2))
