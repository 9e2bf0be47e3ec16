import numpy as np
import pytest

from twistharm.twisted import ConvGeometry


@pytest.fixture(scope="session")
def coarse_geom1():
    """Cheap n=1 grid for unit tests; acceptance uses the defaults."""
    return ConvGeometry(1, 10.0, 96)


@pytest.fixture(scope="session")
def probes1():
    rng = np.random.default_rng(42)
    pts = rng.normal(size=(5, 1)) + 1j * rng.normal(size=(5, 1))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return pts * np.linspace(0.5, 1.8, 5)[:, None]
