import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from bvpnode import disk as dk
from bvpnode import node as nd


@pytest.fixture(scope="session")
def grid24():
    return dk.RadialGrid(24)


@pytest.fixture(scope="session")
def node_small():
    """Disk node small enough for fast unit tests."""
    return nd.disk_node(8, 40, boundary_op="dtn")


@pytest.fixture(scope="session")
def node_full():
    """Disk node at the documented default resolution."""
    return nd.disk_node(32, 64, boundary_op="dtn")


@pytest.fixture()
def rng():
    return np.random.default_rng(42)
