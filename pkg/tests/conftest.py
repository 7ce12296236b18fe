import os
import tempfile

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache():
    # keep test runs away from the user's cache directory
    with tempfile.TemporaryDirectory() as tmp:
        old = os.environ.get("SATAKE_CACHE")
        os.environ["SATAKE_CACHE"] = tmp
        yield tmp
        if old is None:
            os.environ.pop("SATAKE_CACHE", None)
        else:
            os.environ["SATAKE_CACHE"] = old
