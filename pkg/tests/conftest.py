import sys
from pathlib import Path

import pytest

TESTS = Path(__file__).resolve().parent
REPO = TESTS.parent
sys.path.insert(0, str(TESTS))

from geofault import (  # noqa: E402
    compile_rules,
    compile_shapes,
    graph_from_document,
    load_builtin_schema,
    materialize,
)
from geofault.fixtures import load_fixture  # noqa: E402


@pytest.fixture(scope="session")
def schema():
    return load_builtin_schema()


@pytest.fixture(scope="session")
def rules(schema):
    return compile_rules(schema)


@pytest.fixture(scope="session")
def shapes(schema):
    return compile_shapes(schema)


@pytest.fixture(scope="session")
def usecase1(schema):
    return graph_from_document(load_fixture("usecase1"), schema)


@pytest.fixture(scope="session")
def usecase2(schema):
    return graph_from_document(load_fixture("usecase2"), schema)


@pytest.fixture(scope="session")
def usecase1_mat(usecase1, rules):
    return materialize(usecase1, rules)


@pytest.fixture(scope="session")
def usecase2_mat(usecase2, rules):
    return materialize(usecase2, rules)
