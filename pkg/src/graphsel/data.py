"""Column-typed rectangular datasets and CSV ingestion.

Discrete columns hold integer codes 1..k (every level observed, k >= 2);
continuous columns hold reals. Missing values are rejected outright. A
Dataset is immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class ColumnSpec:
    """Name, kind and (for discrete columns) the observed level labels,
    mapped to codes 1..k in sorted label order."""

    name: str
    kind: str                 # "discrete" | "continuous"
    levels: tuple = ()


@dataclass(eq=False)
class Dataset:
    values: np.ndarray                  # (n, p) float64
    num_cat: tuple = ()
    names: tuple = ()
    columns: tuple = ()                 # ColumnSpec per column, optional
    _stats_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise DataError("dataset values must be a 2-D array")
        n, p = self.values.shape
        if not self.num_cat:
            self.num_cat = (0,) * p
        self.num_cat = tuple(int(k) for k in self.num_cat)
        if len(self.num_cat) != p:
            raise DataError("num_cat length must match the number of columns")
        if not self.names:
            self.names = tuple(str(i) for i in range(1, p + 1))
        self.names = tuple(self.names)
        if len(self.names) != p:
            raise DataError("names length must match the number of columns")
        bad = np.argwhere(~np.isfinite(self.values))
        if bad.size:
            r, c = bad[0]
            raise DataError(
                f"missing or non-finite value at row {r + 1}, column "
                f"{self.names[c]!r}: missing values are not allowed")
        for j, k in enumerate(self.num_cat):
            if k == 0:
                continue
            if k < 2:
                raise DataError(
                    f"discrete column {self.names[j]!r} must have more than one level")
            col = self.values[:, j]
            codes = col.astype(int)
            if not np.array_equal(codes, col):
                raise DataError(
                    f"discrete column {self.names[j]!r} contains non-integer codes")
            present = set(codes.tolist())
            expected = set(range(1, k + 1))
            if not present <= expected:
                raise DataError(
                    f"discrete column {self.names[j]!r} has codes outside 1..{k}")
            missing = expected - present
            if missing:
                raise DataError(
                    f"level {sorted(missing)[0]} of discrete column "
                    f"{self.names[j]!r} is not represented in the sample")
        if not self.columns:
            self.columns = tuple(
                ColumnSpec(self.names[j],
                           "discrete" if self.num_cat[j] else "continuous")
                for j in range(p))

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def p(self):
        return self.values.shape[1]

    def column(self, j):
        """0-based column accessor."""
        return self.values[:, j]

    def codes(self, j):
        """Integer codes of a discrete column (0-based index)."""
        return self.values[:, j].astype(np.int64)


def from_columns(columns, names=None):
    """Build a Dataset from a mapping/sequence of per-variable vectors.

    Integer-coded vectors whose values cover 1..k (k >= 2) can be passed with
    an explicit num_cat by using :class:`Dataset` directly; this helper infers
    continuous for float vectors and discrete for integer vectors.
    """
    if isinstance(columns, dict):
        names = tuple(columns.keys())
        cols = list(columns.values())
    else:
        cols = list(columns)
        names = tuple(names) if names else tuple(str(i + 1) for i in range(len(cols)))
    arrs = [np.asarray(c) for c in cols]
    num_cat = []
    for a in arrs:
        if np.issubdtype(a.dtype, np.integer):
            num_cat.append(int(a.max()))
        else:
            num_cat.append(0)
    values = np.column_stack([a.astype(float) for a in arrs])
    return Dataset(values=values, num_cat=tuple(num_cat), names=names)


def ingest_csv(path, discrete=(), continuous=()):
    """Read a rectangular CSV with a header row into a Dataset.

    Columns whose values all parse as numbers default to continuous; anything
    else becomes discrete, with labels mapped to codes 1..k in sorted label
    order (so repeated runs agree). ``discrete`` / ``continuous`` force the
    kind of the named columns.

    Raises DataError for missing cells (with row and column), non-rectangular
    input, or single-level discrete columns.
    """
    discrete = set(discrete)
    continuous = set(continuous)
    if discrete & continuous:
        raise DataError(f"columns forced both ways: {sorted(discrete & continuous)}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("empty CSV file") from None
        header = [h.strip() for h in header]
        rows = []
        for i, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise DataError(f"row {i} has {len(row)} fields, expected {len(header)}")
            rows.append([cell.strip() for cell in row])
    if not rows:
        raise DataError("CSV has a header but no data rows")
    unknown = (discrete | continuous) - set(header)
    if unknown:
        raise DataError(f"type override names not in header: {sorted(unknown)}")

    p = len(header)
    cols = list(zip(*rows))
    values = np.empty((len(rows), p))
    num_cat = []
    specs = []
    for j, name in enumerate(header):
        raw = cols[j]
        for i, cell in enumerate(raw):
            if cell == "":
                raise DataError(f"missing value at row {i + 2}, column {name!r}")
        numeric = None
        if name not in discrete:
            try:
                numeric = np.array([float(c) for c in raw])
            except ValueError:
                numeric = None
        if numeric is not None and name not in discrete:
            values[:, j] = numeric
            num_cat.append(0)
            specs.append(ColumnSpec(name, "continuous"))
            continue
        levels = sorted(set(raw))
        if len(levels) < 2:
            raise DataError(
                f"discrete column {name!r} has a single level {levels[0]!r}; "
                "there is no gain in using such a variable")
        code = {lab: i + 1 for i, lab in enumerate(levels)}
        values[:, j] = [code[c] for c in raw]
        num_cat.append(len(levels))
        specs.append(ColumnSpec(name, "discrete", tuple(levels)))
    return Dataset(values=values, num_cat=tuple(num_cat), names=tuple(header),
                   columns=tuple(specs))
