import json
import os
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def fixtures():
	return Path(os.environ.get("HAMFORGE_FIXTURES", ROOT / "fixtures"))


@pytest.fixture(scope="session")
def cli():
	path = Path(os.environ.get("HAMFORGE_CLI", ROOT / "build" / "hamforge"))
	if not path.exists():
		pytest.skip("command line tool not built")
	return path


@pytest.fixture(scope="session")
def schema():
	path = Path(os.environ.get("HAMFORGE_SCHEMA", ROOT / "schema" / "report.schema.json"))
	return json.loads(path.read_text())
