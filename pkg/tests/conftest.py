import pytest

from tdtsw.fuzzy_core import default_tdtsw_variables
from tdtsw.rulebase import default_tdtsw_rules


@pytest.fixture(scope="session")
def rulebase():
    return default_tdtsw_rules()


@pytest.fixture(scope="session")
def variables():
    return default_tdtsw_variables()
