import copy
import json

import pytest

from lctcert.famdb import default_data_path, load_database, load_default


@pytest.fixture(scope="session")
def db():
    return load_default()


@pytest.fixture(scope="session")
def raw_bytes():
    return default_data_path().read_bytes()


@pytest.fixture
def raw_doc(raw_bytes):
    return copy.deepcopy(json.loads(raw_bytes))


@pytest.fixture
def load_doc():
    def _load(doc):
        return load_database(json.dumps(doc).encode())
    return _load


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import CRITERIA, run_criterion

    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        terminalreporter.write_line(run_criterion(number)[1])
