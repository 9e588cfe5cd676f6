"""Simultaneous one-way ANOVA: per-group K statistics with exact GB2 null laws."""

__version__ = "0.1.0"

from ._accel import backend
from .adjust import adjust_p, per_test_alpha
from .anova import anova_table, decompose, k_statistics
from .dataset import GroupedData, group_summaries, parse_long_csv, read_csv, transform
from .distributions import (
    DesignDims,
    Gb2Params,
    gb2_cdf,
    gb2_pdf,
    gb2_quantile,
    gb2_sf,
    k_dist_params,
    k_moment,
)
from .errors import (
    DataError,
    DegenerateDataError,
    DesignError,
    DomainError,
    GanovaError,
    NumericError,
)
from .homogeneity import bartlett
from .plot import ChartSpec, render_chart
from .simulate import SimConfig, simulate_type1
from .simultaneous import GanovaResult, run_ganova

__all__ = [
    "ChartSpec",
    "DataError",
    "DegenerateDataError",
    "DesignDims",
    "DesignError",
    "DomainError",
    "GanovaError",
    "GanovaResult",
    "Gb2Params",
    "GroupedData",
    "NumericError",
    "SimConfig",
    "adjust_p",
    "anova_table",
    "backend",
    "bartlett",
    "decompose",
    "gb2_cdf",
    "gb2_pdf",
    "gb2_quantile",
    "gb2_sf",
    "group_summaries",
    "k_dist_params",
    "k_moment",
    "k_statistics",
    "parse_long_csv",
    "read_csv",
    "per_test_alpha",
    "render_chart",
    "run_ganova",
    "simulate_type1",
    "transform",
]
