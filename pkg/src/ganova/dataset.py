"""Grouped observations: CSV ingestion, summaries and transforms."""

import csv
from dataclasses import dataclass
import io
import math
from pathlib import Path

import numpy as np

from .errors import DataError

MISSING_TOKENS = frozenset({"", "na", "nan"})


@dataclass(frozen=True)
class GroupedData:
    """Labeled groups of real observations in first-appearance order."""

    labels: tuple
    values: tuple

    def __post_init__(self):
        labels = tuple(str(lab) for lab in self.labels)
        values = tuple(np.asarray(v, dtype=float).ravel().copy() for v in self.values)
        if len(labels) != len(values):
            raise DataError("labels and values differ in length")
        if len(labels) < 2:
            raise DataError(f"need at least 2 groups, got {len(labels)}")
        if len(set(labels)) != len(labels):
            raise DataError("group labels must be unique")
        for lab, v in zip(labels, values):
            if v.size == 0:
                raise DataError(f"group {lab!r} has no observations")
            if not np.all(np.isfinite(v)):
                raise DataError(f"group {lab!r} contains non-finite values")
            v.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, mapping):
        return cls(tuple(mapping.keys()), tuple(mapping.values()))

    @property
    def groups(self):
        return list(zip(self.labels, self.values))

    @property
    def sizes(self):
        return tuple(v.size for v in self.values)

    @property
    def n_groups(self):
        return len(self.labels)

    def sorted(self):
        """Copy with groups in lexicographic label order."""
        order = sorted(range(self.n_groups), key=lambda i: self.labels[i])
        return GroupedData(
            tuple(self.labels[i] for i in order), tuple(self.values[i] for i in order)
        )

    def map_values(self, func):
        return GroupedData(self.labels, tuple(func(v) for v in self.values))


@dataclass(frozen=True)
class GroupSummary:
    label: str
    n: int
    mean: float
    variance: float  # sample variance (divisor n - 1); NaN when n == 1


@dataclass(frozen=True)
class Summaries:
    groups: tuple
    n_total: int
    grand_mean: float


def _is_missing(token):
    return token.strip().lower() in MISSING_TOKENS


def parse_long_csv(text, group_col="group", value_col="value", sort_groups=False):
    """Parse a long-format CSV (one observation per row) into :class:`GroupedData`.

    Rows whose value is empty, ``NA`` or ``NaN`` (any case) are dropped.
    """
    if not text or not text.strip():
        raise DataError("empty document")
    reader = csv.DictReader(io.StringIO(text.lstrip("﻿")))
    fields = reader.fieldnames or []
    for col in (group_col, value_col):
        if col not in fields:
            raise DataError(f"missing column {col!r}; header has {fields}")
    buckets = {}
    # header is line 1
    for line_no, row in enumerate(reader, start=2):
        token = row.get(value_col)
        label = row.get(group_col)
        if token is None or label is None:
            raise DataError(f"row {line_no}: too few fields")
        if _is_missing(token):
            continue
        try:
            value = float(token)
        except ValueError:
            raise DataError(f"row {line_no}: cannot parse value {token!r}") from None
        if not math.isfinite(value):
            raise DataError(f"row {line_no}: non-finite value {token!r}")
        buckets.setdefault(label.strip(), []).append(value)
    if len(buckets) < 2:
        raise DataError(f"need at least 2 groups with data, got {len(buckets)}")
    data = GroupedData.from_mapping(buckets)
    return data.sorted() if sort_groups else data


def read_csv(path, group_col="group", value_col="value", sort_groups=False):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError as exc:
        raise DataError(f"{path} is not valid UTF-8: {exc}") from None
    return parse_long_csv(text, group_col, value_col, sort_groups)


def to_long_csv(data, group_col="group", value_col="value"):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([group_col, value_col])
    for label, values in data.groups:
        for v in values:
            writer.writerow([label, repr(float(v))])
    return buf.getvalue()


def group_summaries(data):
    """Per-group size, mean and sample variance plus the pooled grand mean."""
    groups = []
    for label, v in data.groups:
        mean = float(np.mean(v))
        var = float(np.sum((v - mean) ** 2) / (v.size - 1)) if v.size > 1 else math.nan
        groups.append(GroupSummary(label, int(v.size), mean, var))
    allv = np.concatenate(data.values)
    return Summaries(tuple(groups), int(allv.size), float(np.mean(allv)))


def transform(data, kind="none"):
    """Apply an element-wise variance-stabilizing transform: ``none``, ``sqrt`` or ``log``."""
    if kind == "none":
        return data
    if kind == "sqrt":
        check, func, need = (lambda v: v >= 0), np.sqrt, ">= 0"
    elif kind == "log":
        check, func, need = (lambda v: v > 0), np.log, "> 0"
    else:
        raise DataError(f"unknown transform {kind!r}")
    for label, v in data.groups:
        bad = np.flatnonzero(~check(v))
        if bad.size:
            raise DataError(
                f"{kind} transform needs values {need}: group {label!r}, "
                f"observation {bad[0] + 1} = {v[bad[0]]}"
            )
    return data.map_values(func)
