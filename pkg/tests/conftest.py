import os

import pytest

os.environ["MAGCODEC_SIZE_CAP_BITS"] = str(1 << 24)
os.environ["MAGCODEC_CHUNK_BITS"] = str(1 << 12)
os.environ["MAGCODEC_LOG_LEVEL"] = "WARNING"

from magcodec.core.config import get_settings
from magcodec.mag import make_mag, tau_from_bitstring


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture()
def sample_mag():
    """tau = (2, 1, 2) with edges {0, 3}."""

    return make_mag(tau_from_bitstring("101"), [0, 3])


@pytest.fixture()
def sample_magtxt(tmp_path, sample_mag):
    path = tmp_path / "sample.magtxt"
    path.write_text("tau: 2 1 2\nedges: 0 3\n", encoding="utf-8")
    return path
