from typing import TYPE_CHECKING

import pytest

from tests.utils import config

if TYPE_CHECKING:
    from collections.abc import Iterator


@pytest.fixture(autouse=True)
def isolated_settings() -> Iterator[None]:
    with config():
        yield
