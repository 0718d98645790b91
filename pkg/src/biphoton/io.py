# -*- coding: utf-8 -*-

"""Writing curves, grids and reports to CSV and JSON.

CSV files start with ``# key=value`` lines carrying the metadata (axis names, units and the width of a curve),
followed by a header row and the samples. Every float is written with 17 significant digits so that reading a file
back reproduces the samples exactly. JSON reports are flat objects with a ``manifest`` describing the run that
produced them.
"""

import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field, is_dataclass
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
import pandas as pd
from networkx.utils import open_file

from .exceptions import EmitError, InvalidParameterError
from .numerics import Curve
from .params import PhysicalConfig
from .version import get_stack_versions, get_version

__all__ = [
    'FLOAT_FORMAT',
    'RunManifest',
    'Matrix',
    'curve_to_frame',
    'to_csv',
    'to_matrix_csv',
    'to_json',
    'emit',
    'read_csv',
    'read_matrix_csv',
    'output_path',
    'ensure_directory',
    'table',
]

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.17g'

CSV = 'csv'
JSON = 'json'


def _format(value: float) -> str:
    return FLOAT_FORMAT % value


def _jsonable(value: Any) -> Any:
    """Convert numpy scalars and arrays to plain Python, and non-finite floats to None."""
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


@dataclass
class RunManifest:
    """What was run, with which inputs, and what it wrote."""

    command: str
    config: Mapping[str, float]
    overrides: Mapping[str, Any] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    version: str = field(default_factory=get_version)
    #: Versions of the numerical stack
    stack: Dict[str, str] = field(default_factory=get_stack_versions)
    #: Wall-clock duration [s]
    duration: float = 0.0

    @classmethod
    def for_config(cls, command: str, cfg: PhysicalConfig, **overrides) -> 'RunManifest':
        """Start a manifest for a command run on a configuration."""
        return cls(command=command, config=asdict(cfg), overrides=overrides)

    def to_dict(self) -> Dict[str, Any]:
        """Get a JSON-ready dictionary."""
        return _jsonable(asdict(self))

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'RunManifest':
        """Rebuild a manifest from :meth:`to_dict` output."""
        return cls(**data)


class Matrix(NamedTuple):
    """A sampled function of two variables, ``values[i, j] = f(rows[i], columns[j])``."""

    rows: np.ndarray
    columns: np.ndarray
    values: np.ndarray
    row_label: str = 'row'
    column_label: str = 'column'


def curve_to_frame(curve: Curve) -> pd.DataFrame:
    """Get the samples of a curve as a two-column data frame named after its axes."""
    return pd.DataFrame({
        curve.meta.get('x', 'x'): curve.xs,
        curve.meta.get('y', 'y'): curve.ys,
    })


def _header_lines(meta: Mapping[str, Any]) -> List[str]:
    return [
        '# {}={}'.format(key, _format(value) if isinstance(value, float) else value)
        for key, value in sorted(meta.items())
    ]


def _curve_meta(curve: Curve) -> Dict[str, Any]:
    meta: Dict[str, Any] = dict(curve.meta)
    if curve.width is not None:
        meta.update(
            fwhm=curve.width.width,
            fwhm_left=curve.width.x_left,
            fwhm_right=curve.width.x_right,
            peak_x=curve.width.peak_x,
        )
    return meta


@open_file(1, mode='w')
def to_csv(data: Union[Curve, pd.DataFrame], path: Union[str, TextIO], meta: Optional[Mapping[str, Any]] = None):
    """Write a curve or a table as CSV with a ``# key=value`` header.

    :param data: A curve or a data frame of numbers
    :param path: A path or file-like
    :param meta: Extra header entries
    """
    if isinstance(data, Curve):
        header = _curve_meta(data)
        frame = curve_to_frame(data)
    else:
        header = {}
        frame = data
    header.update(meta or {})

    for line in _header_lines(header):
        print(line, file=path)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep='nan', lineterminator='\n')


@open_file(1, mode='w')
def to_matrix_csv(matrix: Matrix, path: Union[str, TextIO], meta: Optional[Mapping[str, Any]] = None):
    """Write a matrix as CSV: a first row of column values, then one row per row value followed by the samples."""
    header = dict(meta or {}, rows=matrix.row_label, columns=matrix.column_label)
    frame = pd.DataFrame(
        np.asarray(matrix.values),
        index=[_format(v) for v in matrix.rows],
        columns=[_format(v) for v in matrix.columns],
    )
    for line in _header_lines(header):
        print(line, file=path)
    frame.to_csv(
        path,
        float_format=FLOAT_FORMAT,
        index_label='{}/{}'.format(matrix.row_label, matrix.column_label),
        lineterminator='\n',
    )


@open_file(1, mode='w')
def to_json(payload: Mapping[str, Any], path: Union[str, TextIO], manifest: Optional[RunManifest] = None):
    """Write a flat report as JSON, with the manifest of the run under ``manifest``."""
    data = _jsonable(payload)
    if manifest is not None:
        data['manifest'] = manifest.to_dict()
    json.dump(data, path, indent=2, sort_keys=True, allow_nan=False)
    path.write('\n')


def _as_mapping(obj: Any) -> Mapping[str, Any]:
    if isinstance(obj, Mapping):
        return obj
    if hasattr(obj, 'to_dict'):
        return obj.to_dict()
    if hasattr(obj, '_asdict'):
        return obj._asdict()
    if is_dataclass(obj):
        return asdict(obj)
    raise InvalidParameterError('obj', type(obj).__name__, 'can not be written as JSON')


def emit(
    obj: Any,
    path: str,
    fmt: str = CSV,
    meta: Optional[Mapping[str, Any]] = None,
    manifest: Optional[RunManifest] = None,
) -> str:
    """Write a curve, table, matrix or report to ``path``.

    :param obj: A :class:`Curve`, a data frame or a :class:`Matrix` for ``csv``; a mapping, named tuple, dataclass
        or object with ``to_dict`` for ``json``
    :param path: The output file
    :param fmt: ``csv`` or ``json``
    :param meta: Extra CSV header entries
    :param manifest: The run manifest, for ``json``. The file name is recorded in its outputs.
    :return: The path
    :raises EmitError: if the file can not be written
    """
    if manifest is not None and os.path.basename(path) not in manifest.outputs:
        manifest.outputs.append(os.path.basename(path))
    try:
        if fmt == JSON:
            to_json(_as_mapping(obj), path, manifest=manifest)
        elif fmt != CSV:
            raise InvalidParameterError('fmt', fmt, 'must be csv or json')
        elif isinstance(obj, Matrix):
            to_matrix_csv(obj, path, meta=meta)
        else:
            to_csv(obj, path, meta=meta)
    except OSError as e:
        raise EmitError(path, e.strerror or str(e)) from e
    logger.info('wrote %s', path)
    return path


def _split_header(path: str) -> Tuple[Dict[str, str], int]:
    meta = {}
    skip = 0
    with open(path) as file:
        for line in file:
            if not line.startswith('#'):
                break
            key, _, value = line[1:].strip().partition('=')
            meta[key] = value
            skip += 1
    return meta, skip


def read_csv(path: str) -> Tuple[Dict[str, str], pd.DataFrame]:
    """Read a CSV file written by :func:`to_csv` into its header entries and its samples."""
    meta, skip = _split_header(path)
    return meta, pd.read_csv(path, skiprows=skip, float_precision='round_trip')


def read_matrix_csv(path: str) -> Tuple[Dict[str, str], Matrix]:
    """Read a CSV file written by :func:`to_matrix_csv`."""
    meta, skip = _split_header(path)
    frame = pd.read_csv(path, skiprows=skip, index_col=0, float_precision='round_trip')
    matrix = Matrix(
        rows=np.array([float(v) for v in frame.index]),
        columns=np.array([float(v) for v in frame.columns]),
        values=frame.to_numpy(dtype=float),
        row_label=meta.get('rows', 'row'),
        column_label=meta.get('columns', 'column'),
    )
    return meta, matrix


def output_path(directory: str, name: str) -> str:
    """Join an output directory and a file name."""
    return os.path.join(directory, name)


def ensure_directory(directory: str) -> None:
    """Create an output directory if needed.

    :raises EmitError: if it can not be created
    """
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise EmitError(directory, e.strerror or str(e)) from e


def table(rows: Sequence[Mapping[str, float]], columns: Sequence[str]) -> pd.DataFrame:
    """Build a data frame with a fixed column order from a list of records."""
    return pd.DataFrame.from_records(list(rows), columns=list(columns))
