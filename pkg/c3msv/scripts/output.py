"""
CSV and JSON writers for the command line tools.

Floats are written with ``DEFAULTS['float_format']`` so identical runs give byte-identical files.
CSV rows are flushed as they are produced; JSON output is a single object

    {"meta": {...}, "records": [...], "status": {"status": "ok", ...}}

written when the writer is closed, including after a failure so partial results are kept.
"""

from __future__ import division

import csv
import json
import math

import numpy as np

from c3msv import __version__
from c3msv.errors import ConfigError
from c3msv.utils import DEFAULTS

OUTPUT_FORMATS = ('csv', 'json')


def format_value(value, float_format=None):
    """String form of one cell for CSV output."""
    float_format = float_format or DEFAULTS['float_format']
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        if math.isnan(value):
            return 'nan'
        return float_format % value
    return str(value)


def _json_value(value, float_format):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return None
        return float(float_format % value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, dict):
        return {k: _json_value(v, float_format) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v, float_format) for v in value]
    return value


class TableWriter(object):
    """Writes records with a fixed set of columns.

    Parameters
    ----------
    stream : file
        Text stream opened for writing.
    columns : [str]
    fmt : str
        ``'csv'`` or ``'json'``.
    meta : dict
        Echoed in the JSON ``meta`` object (the package version is added).
    """

    def __init__(self, stream, columns, fmt='csv', meta=None, float_format=None):
        if fmt not in OUTPUT_FORMATS:
            raise ConfigError('Unknown output format "{}", use one of {}'.format(fmt, OUTPUT_FORMATS))
        self.stream = stream
        self.columns = list(columns)
        self.fmt = fmt
        self.float_format = float_format or DEFAULTS['float_format']
        self.meta = dict(meta or {})
        self.meta['version'] = __version__
        self.records = []
        self.closed = False
        if fmt == 'csv':
            self._csv = csv.writer(stream, lineterminator='\n')
            self._csv.writerow(self.columns)
            stream.flush()

    def write(self, record):
        unknown = set(record) - set(self.columns)
        if unknown:
            raise ValueError('Record has columns {} not in the table {}'.format(sorted(unknown), self.columns))
        row = [record.get(column) for column in self.columns]
        if self.fmt == 'csv':
            self._csv.writerow([format_value(v, self.float_format) for v in row])
            self.stream.flush()
        else:
            self.records.append({c: _json_value(v, self.float_format) for c, v in zip(self.columns, row)})

    def close(self, status='ok', **details):
        """Finish the table; JSON output gets its trailing status record here."""
        if self.closed:
            return
        self.closed = True
        if self.fmt == 'json':
            status_record = dict(status=status, **details)
            document = {'meta': _json_value(self.meta, self.float_format), 'records': self.records,
                        'status': _json_value(status_record, self.float_format)}
            json.dump(document, self.stream, indent=2, sort_keys=True)
            self.stream.write('\n')
        elif status != 'ok':
            self.stream.write('# status: {}{}\n'.format(
                status, ''.join(' {}={}'.format(k, v) for k, v in sorted(details.items()))))
        self.stream.flush()
