"""Session setup and shared fixtures.

The numba thread pool is pinned to 8 before anything imports numba so that
thread-count determinism tests exercise real multi-chunk scheduling even on
single-core runners.
"""
from __future__ import annotations

import os

os.environ.setdefault("NUMBA_NUM_THREADS", "8")

from pathlib import Path

import numpy as np
import pytest

from influence_rank import Graph, load_edge_list
from influence_rank import _kernels

DATA_ENV = "INFLUENCE_RANK_DATA"
LARGE_ENV = "INFLUENCE_RANK_RUN_LARGE"

# one line per acceptance criterion, emitted after the test summary
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[num])


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile everything up front so JIT time never lands inside a timed test
    _kernels.warm_up()


def data_dir() -> Path:
    env = os.environ.get(DATA_ENV)
    if env:
        return Path(env)
    return Path(__file__).resolve().parent.parent / "data"


def dataset_path(stem: str):
    for name in (f"{stem}.txt", f"{stem}.txt.gz"):
        candidate = data_dir() / name
        if candidate.exists():
            return candidate
    return None


def require_dataset(stem: str) -> Path:
    path = dataset_path(stem)
    if path is None:
        pytest.skip(f"dataset {stem} not found under {data_dir()}; fetch it "
                    f"with scripts/fetch_snap.py or point ${DATA_ENV} at it")
    return path


@pytest.fixture(scope="session")
def arxiv_graph() -> Graph:
    """Collaboration network: 5242 nodes, 14496 undirected edges."""
    return load_edge_list(require_dataset("ca-GrQc"), directed=False)


@pytest.fixture(scope="session")
def wiki_graph() -> Graph:
    """Voting network: 7115 nodes, 103689 directed arcs."""
    return load_edge_list(require_dataset("wiki-Vote"), directed=True)


@pytest.fixture
def path4() -> Graph:
    """Undirected path 0-1-2-3."""
    return Graph.from_arrays([0, 1, 2], [1, 2, 3], directed=False)


@pytest.fixture
def dipath4() -> Graph:
    """Directed path 0->1->2->3."""
    return Graph.from_arrays([0, 1, 2], [1, 2, 3], directed=True)


@pytest.fixture
def star4() -> Graph:
    """Undirected star, center 0, leaves 1..3."""
    return Graph.from_arrays([0, 0, 0], [1, 2, 3], directed=False)


@pytest.fixture
def k3() -> Graph:
    return Graph.from_arrays([0, 0, 1], [1, 2, 2], directed=False)


@pytest.fixture
def snap_file(tmp_path) -> Path:
    """Small edge list in the plain-text format: comments, a duplicate arc,
    a self-loop, and non-contiguous identifiers."""
    path = tmp_path / "toy.txt"
    path.write_text(
        "# Directed graph (each unordered pair of nodes is saved once)\n"
        "# FromNodeId\tToNodeId\n"
        "10\t20\n"
        "20\t30\n"
        "10\t20\n"
        "30\t30\n"
        "30\t50\n"
        "50\t10\n")
    return path
