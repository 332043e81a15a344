import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from motifph.graph import Graph

DATA_DIR = Path(__file__).parent.parent / "data"


def cycle(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


@pytest.fixture
def named_graphs():
    return {
        "K3": complete(3),
        "K4": complete(4),
        "K5": complete(5),
        "C4": cycle(4),
        "C5": cycle(5),
        "C6": cycle(6),
        "P3": path(3),
        "P4": path(4),
        "star3": star(3),
        "petersen": petersen(),
    }
