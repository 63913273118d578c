from importlib import resources
from pathlib import Path

import pytest

from ottdb import builtin_schema, load_dataset

FIXTURE_DIR = Path(str(resources.files("ottdb"))) / "fixtures" / "paper"


@pytest.fixture
def schema_db():
    """Empty database with the built-in 26-table schema."""
    return builtin_schema()


@pytest.fixture
def fixture_db():
    """Database loaded with the bundled fixture dataset."""
    db = builtin_schema()
    load_dataset(db, FIXTURE_DIR)
    return db
