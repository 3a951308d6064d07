# navier_bie/utils/writers.py - CSV output helpers for experiment results
import csv
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

import numpy as np

logger = logging.getLogger(__name__)


def _format(value: Any) -> Any:
    """Render floats with 17 significant digits so values round-trip exactly"""
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    return value


def write_csv_rows(path: Path, columns: Sequence[str], rows: Iterable[Dict[str, Any]]) -> Path:
    """Write a list of dict rows under a fixed header, replacing `path` only once complete"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = list(rows)
    staging = path.with_name(f".{path.name}.tmp")
    try:
        with staging.open("w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(columns), extrasaction="ignore")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: _format(row.get(key, "")) for key in columns})
        staging.replace(path)
    except Exception:
        staging.unlink(missing_ok=True)
        raise
    logger.info(f"wrote {len(rows)} rows to {path}")
    return path


def write_complex_csv(path: Path, values: np.ndarray, extra: Dict[str, List[Any]] = None) -> Path:
    """Write complex values as (re, im) columns plus optional per-row extras"""
    values = np.asarray(values, dtype=complex).ravel()
    extra = extra or {}
    columns = list(extra.keys()) + ["re", "im"]
    rows = []
    for index, value in enumerate(values):
        row = {key: column[index] for key, column in extra.items()}
        row["re"] = float(value.real)
        row["im"] = float(value.imag)
        rows.append(row)
    return write_csv_rows(path, columns, rows)
