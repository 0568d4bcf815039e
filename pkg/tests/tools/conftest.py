import sys

import pytest
from loguru import logger


@pytest.fixture(autouse=True)
def restore_logging():
    yield

    logger.remove()
    logger.add(sys.stderr)
