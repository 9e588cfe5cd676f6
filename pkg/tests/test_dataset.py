import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ganova.dataset import (
    GroupedData,
    group_summaries,
    parse_long_csv,
    read_csv,
    to_long_csv,
    transform,
)
from ganova.errors import DataError

from conftest import TABLE4


def test_basic_parse():
    data = parse_long_csv("group,value\nA,1\nA,2\nB,3")
    assert data.labels == ("A", "B")
    assert data.sizes == (2, 1)


@pytest.mark.parametrize("marker", ["NA", "na", "NaN", ""])
def test_missing_markers_dropped(marker):
    data = parse_long_csv(f"group,value\nA,1\nA,{marker}\nB,3\nB,4")
    assert data.sizes == (1, 2)


def test_first_appearance_order_and_sort():
    text = "group,value\nzeta,1\nalpha,2\nzeta,3\nalpha,4"
    assert parse_long_csv(text).labels == ("zeta", "alpha")
    assert parse_long_csv(text, sort_groups=True).labels == ("alpha", "zeta")


def test_custom_columns():
    data = parse_long_csv("site,y,other\nA,1,x\nB,2,y\nB,5,z", group_col="site", value_col="y")
    assert data.sizes == (1, 2)


@pytest.mark.parametrize(
    "text, msg",
    [
        ("", "empty"),
        ("group,value\nA,1\nA,2", "at least 2 groups"),
        ("group,value\nA,1\nB,x1", "row 3"),
        ("grp,value\nA,1\nB,2", "missing column"),
        ("group,value\nA,1\nA,NA\nB,NA", "at least 2 groups"),
    ],
)
def test_parse_errors(text, msg):
    with pytest.raises(DataError, match=msg):
        parse_long_csv(text)


def test_table4(table4):
    assert table4.labels == ("A", "B", "C", "D")
    assert table4.sizes == (15, 15, 15, 15)
    summ = group_summaries(table4)
    assert summ.n_total == 60
    column_a = [float(line.split(",")[1]) for line in TABLE4.read_text().splitlines()[1:16]]
    assert summ.groups[0].mean == pytest.approx(math.fsum(column_a) / 15, rel=1e-14)


def test_missing_file():
    with pytest.raises(DataError, match="cannot read"):
        read_csv("/nonexistent/file.csv")


def test_summaries_simple():
    summ = group_summaries(GroupedData(("A", "B"), ([2.0], [4.0])))
    assert [g.mean for g in summ.groups] == [2.0, 4.0]
    assert summ.grand_mean == 3.0
    assert math.isnan(summ.groups[0].variance)


def test_grand_mean_is_pooled_not_mean_of_means():
    summ = group_summaries(GroupedData(("A", "B"), ([0.0, 0.0, 0.0], [4.0])))
    assert summ.grand_mean == 1.0


@given(
    st.lists(
        st.lists(st.floats(-1e6, 1e6, allow_nan=False), min_size=1, max_size=20),
        min_size=2,
        max_size=8,
    )
)
def test_weighted_means_reconstruct_grand_mean(groups):
    data = GroupedData(tuple(f"g{i}" for i in range(len(groups))), tuple(groups))
    summ = group_summaries(data)
    total = math.fsum(g.n * g.mean for g in summ.groups)
    assert total == pytest.approx(summ.n_total * summ.grand_mean, rel=1e-10, abs=1e-6)


def test_serialize_round_trip(table4):
    text = to_long_csv(table4)
    again = parse_long_csv(text)
    assert again.labels == table4.labels
    for a, b in zip(again.values, table4.values):
        np.testing.assert_array_equal(a, b)
    assert to_long_csv(again) == text


class TestTransform:
    data = GroupedData(("A", "B"), ([4.0, 9.0, 16.0], [1.0, 25.0]))

    def test_identity(self):
        assert transform(self.data, "none") is self.data

    def test_sqrt(self):
        out = transform(self.data, "sqrt")
        np.testing.assert_array_equal(out.values[0], [2.0, 3.0, 4.0])
        assert out.labels == self.data.labels

    def test_log(self):
        out = transform(self.data, "log")
        np.testing.assert_allclose(out.values[1], [0.0, math.log(25.0)])

    @pytest.mark.parametrize("kind, values", [("sqrt", [-1.0]), ("log", [0.0])])
    def test_domain(self, kind, values):
        bad = GroupedData(("A", "B"), ([1.0], values))
        with pytest.raises(DataError, match="group 'B'"):
            transform(bad, kind)


def test_grouped_data_invariants():
    with pytest.raises(DataError):
        GroupedData(("A",), ([1.0],))
    with pytest.raises(DataError):
        GroupedData(("A", "A"), ([1.0], [2.0]))
    with pytest.raises(DataError):
        GroupedData(("A", "B"), ([1.0], []))
