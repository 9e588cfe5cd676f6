from pathlib import Path

import numpy as np
import pytest

from ganova.dataset import GroupedData, read_csv

DATA = Path(__file__).parent / "data"
TABLE4 = DATA / "table4.csv"


@pytest.fixture(scope="session")
def table4():
    return read_csv(TABLE4)


def random_dataset(rng, balanced=None):
    """Random grouped data: G in [2, 10], sizes in [2, 50], random offsets and scale."""
    G = int(rng.integers(2, 11))
    if balanced is None:
        balanced = bool(rng.integers(0, 2))
    if balanced:
        sizes = [int(rng.integers(2, 51))] * G
    else:
        sizes = [int(s) for s in rng.integers(2, 51, size=G)]
    loc = rng.normal(0, 100)
    scale = rng.uniform(0.1, 10)
    shifts = rng.normal(0, scale, size=G) * rng.integers(0, 2)
    values = [loc + shifts[g] + scale * rng.standard_normal(n) for g, n in enumerate(sizes)]
    return GroupedData(tuple(f"g{g}" for g in range(G)), tuple(values))


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(mod.RESULTS):
        terminalreporter.write_line(line)
