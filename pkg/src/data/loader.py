"""
Dataset loader for delimiter-separated sample files.
Each column holds the values of one function at the points of the measure.
"""

from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..console import console
from ..core.errors import EmptySpace, InputError
from ..core.tolerance import Field
from ..measures.integrals import SampledFunction


def _as_complex(cell: str) -> complex:
    # "a+bi" / "a - bi" / "bi"; spaces inside the cell are allowed
    text = cell.replace(" ", "").replace("\t", "")
    if text.endswith(("i", "I")) and not text.lower().endswith("inf"):
        text = text[:-1] + "j"
    return complex(text)


def parse_scalar(cell: Any, field: Field = Field.REAL,
                 row: Optional[int] = None, column: Optional[int] = None) -> complex:
    """
    Parse one cell.

    Args:
        cell: Raw cell text
        field: real accepts plain numbers only; complex also accepts "a+bi"
        row, column: 1-based file coordinates used in error messages

    Returns:
        The value as a Python complex

    Raises:
        InputError: unparsable, missing, non-finite or (in the real field) complex cell
    """
    if not isinstance(cell, str) or not cell.strip():
        raise InputError("Missing value", row, column)
    try:
        value = _as_complex(cell)
    except ValueError:
        raise InputError(f"Cannot parse {cell.strip()!r} as a number", row, column) from None
    if not (np.isfinite(value.real) and np.isfinite(value.imag)):
        raise InputError(f"Non-finite value {cell.strip()!r}", row, column)
    if field == Field.REAL and value.imag != 0.0:
        raise InputError(f"Complex value {cell.strip()!r} in a real-field dataset", row, column)
    return value


def _is_number(cell: Any) -> bool:
    if not isinstance(cell, str):
        return False
    try:
        _as_complex(cell)
    except ValueError:
        return False
    return True


class DatasetLoader:
    """Loads one SampledFunction per column (or per column pair)."""

    def __init__(self, data_path: str, field: Field = Field.REAL,
                 paired_columns: bool = False):
        """
        Initialize data loader.

        Args:
            data_path: Path to a comma- or whitespace-separated file
            field: Ground field of the values
            paired_columns: Read complex values from (re, im) column pairs
        """
        self.data_path = Path(data_path)
        self.field = field
        self.paired_columns = paired_columns
        self.header: Optional[List[str]] = None
        self.columns: Optional[List[SampledFunction]] = None

    def _read_table(self) -> pd.DataFrame:
        if not self.data_path.exists():
            raise FileNotFoundError(f"Dataset not found at {self.data_path}")
        text = self.data_path.read_text()
        # comma-delimited as soon as one comma appears, whitespace otherwise
        options = dict(sep=",", skipinitialspace=True) if "," in text else dict(sep=r"\s+")
        try:
            return pd.read_csv(self.data_path, header=None, dtype=str,
                               keep_default_na=False, **options)
        except pd.errors.EmptyDataError:
            raise EmptySpace() from None
        except pd.errors.ParserError as err:
            raise InputError(f"Malformed table: {err}") from None

    def load(self) -> List[SampledFunction]:
        """Parse the file into sampled functions."""
        table = self._read_table()
        first_data_row = 1
        if len(table) > 0 and not any(_is_number(c) for c in table.iloc[0]):
            self.header = [str(c).strip() for c in table.iloc[0]]
            table = table.iloc[1:]
            first_data_row = 2
        if len(table) == 0:
            raise EmptySpace()

        values = np.empty(table.shape, dtype=complex)
        for i, row in enumerate(table.itertuples(index=False)):
            for j, cell in enumerate(row):
                values[i, j] = parse_scalar(cell, Field.REAL if self.paired_columns else self.field,
                                            row=first_data_row + i, column=j + 1)

        if self.paired_columns:
            if values.shape[1] % 2:
                raise InputError(f"Paired columns need an even column count, got {values.shape[1]}")
            values = values[:, 0::2].real + 1j * values[:, 1::2].real

        if self.field == Field.REAL:
            values = values.real
        self.columns = [SampledFunction(values[:, j]) for j in range(values.shape[1])]

        console.log(f"Loaded {self.data_path}: {len(self.columns)} functions "
                    f"x {values.shape[0]} points ({self.field.value})")
        return self.columns

    def get_columns(self) -> List[SampledFunction]:
        if self.columns is None:
            self.load()
        return self.columns

    def get_stats(self) -> Dict[str, Any]:
        """Point count and per-column value ranges."""
        columns = self.get_columns()
        stats: Dict[str, Any] = {"points": len(columns[0]), "functions": len(columns)}
        stats["max_abs"] = [float(np.max(np.abs(c.values))) for c in columns]
        if self.header is not None:
            stats["header"] = self.header
        return stats


def ingest(path: str, field: Field = Field.REAL,
           paired_columns: bool = False) -> List[SampledFunction]:
    """Load every column of a dataset file as a SampledFunction."""
    return DatasetLoader(path, field, paired_columns).load()
