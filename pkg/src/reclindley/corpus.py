"""Bundled lifetime datasets and the one-value-per-line text format."""

from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import CorruptionError, DataError, DatasetLookupError, ParseError

# label -> (count, exact decimal sum of the printed values)
BUILTIN_CHECKSUMS = {
    "ex1": (100, Decimal("987.7")),
    "ex2": (23, Decimal("1661.28")),
    "ex3": (20, Decimal("38.0")),
    "ex4": (31, Decimal("955.154")),
}

DESCRIPTIONS = {
    "ex1": "bank customer waiting times (minutes)",
    "ex2": "ball bearing endurance (million revolutions)",
    "ex3": "analgesic relief times (minutes)",
    "ex4": "aircraft window glass strength",
}


@dataclass(frozen=True)
class Dataset:
    label: str
    values: tuple
    source: str = ""

    @property
    def count(self):
        return len(self.values)

    @property
    def sum(self):
        return float(np.sum(self.values))

    @property
    def mean(self):
        return self.sum / self.count

    def as_array(self):
        return np.asarray(self.values, dtype=float)

    def __len__(self):
        return len(self.values)


def parse_lines(lines, label="data", source=""):
    """Parse the text format; returns the Dataset and the decimal sum."""
    values = []
    total = Decimal(0)
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            dec = Decimal(text)
            value = float(text)
        except (InvalidOperation, ValueError):
            raise ParseError(f"cannot parse {text!r} as a number", lineno) from None
        if not dec.is_finite() or value <= 0:
            raise DataError(f"line {lineno}: observation {text} is not positive")
        values.append(value)
        total += dec
    if not values:
        raise DataError(f"{label}: no observations")
    return Dataset(label, tuple(values), source), total


def load_file(path):
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        ds, _ = parse_lines(fh, label=path.stem, source=str(path))
    return ds


def load_builtin(label):
    if label not in BUILTIN_CHECKSUMS:
        raise DatasetLookupError(f"unknown builtin dataset {label!r}; choose from {sorted(BUILTIN_CHECKSUMS)}")
    text = resources.files(__package__).joinpath("data").joinpath(f"{label}.txt").read_text(encoding="utf-8")
    ds, total = parse_lines(text.splitlines(), label=label, source=f"builtin:{label}")
    count, expected = BUILTIN_CHECKSUMS[label]
    if ds.count != count or total != expected:
        raise CorruptionError(
            f"{label}: found {ds.count} values summing to {total}, expected {count} summing to {expected}")
    return ds


def load(source):
    """Resolve ``builtin:<label>`` or a filesystem path."""
    if source.startswith("builtin:"):
        return load_builtin(source.split(":", 1)[1])
    return load_file(source)


def write_file(dataset, path):
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# {dataset.label}\n")
        for v in dataset.values:
            fh.write(f"{v!r}\n")
