# config/output.py
# Copyright (C) 2024 mdcsim developers
#
# This module is part of mdcsim and is released under
# the MIT License: http://www.opensource.org/licenses/mit-license.php

import csv
import io
import json
import os
import sys

from mdcsim.exceptions import OutputDirError
from mdcsim.log_util import class_logger
from mdcsim.str_util import num, qname

STDOUT = '-'


def _cell(value):
    if value is None:
        return ''
    if isinstance(value, str):
        return value
    return num(value)


def _json_value(value):
    if isinstance(value, (str, bool)) or value is None:
        return value
    if isinstance(value, int):
        return value
    return float(value)


class Table(object):
    """Rows under a fixed header"""

    def __init__(self, name, header, rows=()):
        self.name = name
        self.header = tuple(header)
        self.rows = []
        for row in rows:
            self.append(row)

    def append(self, row):
        if isinstance(row, dict):
            missing = set(self.header) - set(row)
            extra = set(row) - set(self.header)
            if missing or extra:
                raise ValueError("row keys do not match header: missing %s, "
                                 "extra %s" % (sorted(missing), sorted(extra)))
            row = [row[h] for h in self.header]
        elif len(row) != len(self.header):
            raise ValueError("row has %d cells, header has %d"
                             % (len(row), len(self.header)))
        self.rows.append(tuple(row))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def column(self, name):
        i = self.header.index(name)
        return [row[i] for row in self.rows]

    def records(self):
        return [dict(zip(self.header, row)) for row in self.rows]

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator='\n')
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()

    def to_json(self):
        records = [dict((k, _json_value(v)) for k, v in rec.items())
                   for rec in self.records()]
        return json.dumps(records, indent=1) + '\n'


class OutputDir(object):
    """Writes result tables and their provenance sidecars."""

    class Impl(object):
        exists = staticmethod(os.path.exists)
        isdir = staticmethod(os.path.isdir)
        makedirs = staticmethod(os.makedirs)
        open = staticmethod(open)

    log = class_logger()

    def __init__(self, root, format='csv', stdout=None):
        self._root = root
        self._format = format
        self._impl = self.Impl()
        self._stdout = stdout

    @property
    def root(self):
        return self._root

    @property
    def to_stdout(self):
        return self._root == STDOUT

    def path(self, fname):
        return os.path.join(self._root, fname)

    def ensure(self):
        if self.to_stdout:
            return
        root = self._root
        if self._impl.exists(root):
            if not self._impl.isdir(root):
                raise OutputDirError(root, role='Output dir')
        else:
            self._impl.makedirs(root)

    def write(self, table, config=None):
        """Write table as <name>.csv or <name>.json, plus the config."""
        if self._format == 'json':
            text, ext = table.to_json(), '.json'
        else:
            text, ext = table.to_csv(), '.csv'
        if self.to_stdout:
            stream = self._stdout if self._stdout is not None else sys.stdout
            stream.write(text)
            return None
        self.ensure()
        fname = self.path(table.name + ext)
        with self._impl.open(fname, 'w', newline='') as f:
            f.write(text)
        self.log.info("Write %d rows to %s", len(table), qname(fname))
        if config is not None:
            sidecar = self.path(table.name + '.config.json')
            with self._impl.open(sidecar, 'w', newline='') as f:
                f.write(json.dumps(config, indent=1, sort_keys=True) + '\n')
        return fname
