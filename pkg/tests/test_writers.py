import csv

import numpy as np
import pytest

from navier_bie.utils.writers import write_complex_csv, write_csv_rows


class _Unprintable:
    def __str__(self):
        raise RuntimeError("cannot render")


def _read(path):
    with path.open() as handle:
        return list(csv.DictReader(handle))


def test_rows_keep_full_precision(tmp_path):
    path = write_csv_rows(tmp_path / "out" / "rows.csv", ["N", "error", "plateau"], [{"N": np.int64(64), "error": 0.1}])
    row = _read(path)[0]
    assert row == {"N": "64", "error": "0.10000000000000001", "plateau": ""}
    assert float(row["error"]) == 0.1


def test_rewrite_replaces_file_without_leftovers(tmp_path):
    path = tmp_path / "rows.csv"
    write_csv_rows(path, ["a"], [{"a": 1}, {"a": 2}])
    write_csv_rows(path, ["a"], [{"a": True}])
    assert _read(path) == [{"a": "true"}]
    assert [p.name for p in tmp_path.iterdir()] == ["rows.csv"]


def test_failed_write_keeps_previous_file(tmp_path):
    path = write_csv_rows(tmp_path / "rows.csv", ["a"], [{"a": 1}])
    with pytest.raises(RuntimeError):
        write_csv_rows(path, ["a"], [{"a": 2}, {"a": _Unprintable()}])
    assert _read(path) == [{"a": "1"}]
    assert [p.name for p in tmp_path.iterdir()] == ["rows.csv"]


def test_complex_columns(tmp_path):
    path = write_complex_csv(tmp_path / "z.csv", np.array([1 + 2j, 0.25 - 0.5j]), {"point": ["a", "b"]})
    assert _read(path) == [{"point": "a", "re": "1", "im": "2"}, {"point": "b", "re": "0.25", "im": "-0.5"}]
