from __future__ import annotations

import pytest

from swkit.catalog import load_catalog
from swkit.sample_catalog import shipped_manifest_path


@pytest.fixture(scope="session")
def catalog():
    return load_catalog(shipped_manifest_path())
