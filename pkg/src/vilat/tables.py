"""Count-table CSV I/O and packaged reference data."""

from __future__ import annotations

import csv
import sys
from fractions import Fraction
from importlib import resources

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .counting import (
    ALL_COLUMNS,
    PIECE_COLUMNS,
    BoundCert,
    CountTable,
    InconsistentInput,
)
from .families import Family

CSV_HEADER = (
    "n,MF,MA,MC,MX,MH,BF,BS,TF,TS,special,CF,CS,CN,pieces,compositions,vi,all"
)


def validate_table(table: CountTable) -> None:
    """Check the defining identities wherever every input cell is known."""
    for n in table.sizes():
        get = table.get
        if n < 6 and any(table.value(n, c) for c in PIECE_COLUMNS):
            raise InconsistentInput(f"nonzero piece count at size {n} < 6")
        for a, b in (("MA", "MC"), ("BF", "TF"), ("BS", "TS")):
            if get(n, a) is not None and get(n, b) is not None:
                if get(n, a) != get(n, b):
                    raise InconsistentInput(f"{a} != {b} at size {n}")
        pc = [get(n, c) for c in PIECE_COLUMNS]
        if None not in pc and get(n, "pieces") is not None:
            if sum(pc) != get(n, "pieces"):
                raise InconsistentInput(f"piece sum mismatch at size {n}")
        cc = [get(n, c) for c in ("CF", "CS", "CN")]
        if None not in cc and get(n, "compositions") is not None:
            if sum(cc) != get(n, "compositions"):
                raise InconsistentInput(f"composition sum mismatch at size {n}")
        parts = [get(n, c) for c in ("special", "pieces", "compositions")]
        if None not in parts and get(n, "vi") is not None:
            if sum(parts) != get(n, "vi"):
                raise InconsistentInput(f"vi sum mismatch at size {n}")


def write_count_csv(path, table: CountTable, max_n: int | None = None) -> None:
    top = table.max_n if max_n is None else max_n
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADER.split(","))
        for n in range(1, top + 1):
            row = [n]
            for col in ALL_COLUMNS:
                v = table.get(n, col)
                row.append("" if v is None else v)
            w.writerow(row)


def read_count_csv(path) -> CountTable:
    with open(path, newline="") as fh:
        return _read_count_rows(csv.reader(fh))


def _read_count_rows(reader) -> CountTable:
    header = next(reader, None)
    if header is None or ",".join(header) != CSV_HEADER:
        raise InconsistentInput("unexpected CSV header")
    table = CountTable()
    for row in reader:
        if not row:
            continue
        n = int(row[0])
        for col, cell in zip(ALL_COLUMNS, row[1:]):
            if cell != "":
                table.set(n, col, int(cell))
    validate_table(table)
    return table


def _data(name: str):
    return resources.files("vilat.data").joinpath(name)


def golden_counts(family: Family | str) -> CountTable:
    """Published per-class counts: modular to size 35, distributive to 60."""
    fam = Family(family) if isinstance(family, str) else family
    with _data(f"{fam.value}.csv").open(newline="") as fh:
        return _read_count_rows(csv.reader(fh))


def _cert_from_mapping(doc: dict) -> BoundCert:
    return BoundCert(
        family=doc["family"],
        base=Fraction(doc["base"]),
        c_cf=Fraction(doc["c_cf"]),
        c_cs=Fraction(doc["c_cs"]),
        c_cn=Fraction(doc["c_cn"]),
        n0=int(doc["n0"]),
        n1=int(doc["n1"]),
        window=int(doc["window"]),
    )


def load_cert(path) -> BoundCert:
    """Read a certificate from TOML; rational fields are quoted decimals
    so they parse exactly."""
    with open(path, "rb") as fh:
        return _cert_from_mapping(tomllib.load(fh))


def golden_cert(family: Family | str) -> BoundCert:
    fam = Family(family) if isinstance(family, str) else family
    with _data(f"{fam.value}_bound.toml").open("rb") as fh:
        return _cert_from_mapping(tomllib.load(fh))
