import math

import pytest

from ganova.dataset import GroupedData
from ganova.errors import DegenerateDataError, DesignError
from ganova.homogeneity import bartlett

from conftest import random_dataset


def test_equal_variances():
    data = GroupedData(("A", "B", "C"), ([0.0, 2.0], [10.0, 12.0], [5.0, 7.0]))
    res = bartlett(data)
    assert res.statistic == pytest.approx(0.0, abs=1e-12)
    assert res.p == pytest.approx(1.0, abs=1e-12)
    assert res.df == 2


def test_two_group_hand_case():
    # var(A) = 2, var(B) = 8, pooled 5, correction 1 + (2 - 1/2)/3 = 1.5
    stat = math.log(25 / 16) / 1.5
    res = bartlett(GroupedData(("A", "B"), ([0.0, 2.0], [0.0, 4.0])))
    assert res.statistic == pytest.approx(stat, rel=1e-13)
    # chi-square(1) upper tail via the normal: P(Z^2 > s) = erfc(sqrt(s/2))
    assert res.p == pytest.approx(math.erfc(math.sqrt(stat / 2)), rel=1e-12)
    assert res.p == pytest.approx(0.5854383667925869, rel=1e-12)


def test_scale_invariance(rng):
    for _ in range(30):
        data = random_dataset(rng)
        a = float(rng.uniform(0.01, 100))
        r0, r1 = bartlett(data), bartlett(data.map_values(lambda v: -a * v))
        assert r1.statistic == pytest.approx(r0.statistic, rel=1e-9, abs=1e-12)
        assert r0.statistic >= 0


def test_scipy_cross_check(rng):
    stats = pytest.importorskip("scipy.stats")
    for _ in range(20):
        data = random_dataset(rng)
        ref = stats.bartlett(*data.values)
        res = bartlett(data)
        assert res.statistic == pytest.approx(ref.statistic, rel=1e-10)
        assert res.p == pytest.approx(ref.pvalue, rel=1e-8, abs=1e-14)


def test_errors():
    with pytest.raises(DesignError):
        bartlett(GroupedData(("A", "B"), ([1.0], [2.0, 3.0])))
    with pytest.raises(DegenerateDataError):
        bartlett(GroupedData(("A", "B"), ([1.0, 1.0], [2.0, 3.0])))
