"""
Reading and writing tableau files.  A tableau file is a JSON document with
the fields

    name, s, p_design, K_design, variant, A, Ahat, b, bhat

where K_design is a number or the string "inf", p_design is an integer or
null and the coefficient arrays are row-major.  Numbers are written with 17
significant digits so a save/load round trip is exact.
"""

import json
import logging
import math
from pathlib import Path
import numpy as np
from ssp_core.tableau import Tableau, TableauFormatError, validate
from .method_record import MethodRecord


logger = logging.getLogger(__name__)

REQUIRED_FIELDS = ('A', 'Ahat', 'b', 'bhat')


class FileMethod(MethodRecord):
    """
    A method whose tableau was read from a file.
    """
    def __init__(self, tableau, path=None):
        super().__init__()

        self.name = tableau.name
        self.description = f'Loaded from {path}.' if path else ''
        self.claimed_order = tableau.p_design
        self.source = 'external_file'
        self._tableau = tableau

    def buildTableau(self):
        return self._tableau


def _parseK(value):
    if isinstance(value, str):
        if value.strip().lower() in ('inf', 'infinity'):
            return math.inf
        raise TableauFormatError(f'Invalid K_design value: "{value}".')

    if value is None:
        return math.inf

    return float(value)


def tableau_from_dict(data):
    """
    Builds a Tableau from a parsed tableau file.
    """
    if not isinstance(data, dict):
        raise TableauFormatError('A tableau file must contain an object.')

    for field in REQUIRED_FIELDS:
        if field not in data:
            raise TableauFormatError(f'Missing tableau field: "{field}".')

    p_design = data.get('p_design')
    if p_design is not None and (
        isinstance(p_design, bool) or not isinstance(p_design, int)
    ):
        raise TableauFormatError(f'Invalid p_design value: "{p_design}".')

    t = Tableau(
        data['A'], data['Ahat'], data['b'], data['bhat'],
        variant=data.get('variant', 'external'),
        design_K=_parseK(data.get('K_design')),
        name=data.get('name', ''),
        p_design=p_design
    )

    if 's' in data and data['s'] != t.s:
        raise TableauFormatError(
            f'Dimension mismatch: s is {data["s"]}, but b has {t.s} entries.'
        )

    return t


def load(path, allow_negative=False):
    """
    Reads a tableau file and returns a FileMethod.

    path (str or Path): The file to read.
    allow_negative: If False, negative coefficients (beyond roundoff) are
        rejected.  Non-SSP baselines need this to be True.
    """
    path = Path(path)
    try:
        with open(path) as fin:
            data = json.load(fin)
    except json.JSONDecodeError as err:
        raise TableauFormatError(f'Malformed tableau file "{path}": {err}.')

    try:
        t = tableau_from_dict(data)
    except TableauFormatError:
        raise
    except ValueError as err:
        raise TableauFormatError(f'Invalid tableau file "{path}": {err}')

    report = validate(t)
    if report.negative_entries and not allow_negative:
        raise TableauFormatError(
            f'Negative coefficients in "{path}": '
            + ' '.join(report.negative_entries)
        )
    for msg in report.explicitness + report.structure:
        logger.warning('%s: %s', path, msg)

    return FileMethod(t, path)


def _formatNumber(x):
    return format(float(x), '.16e')


def _formatVector(v):
    return '[' + ', '.join(_formatNumber(x) for x in v) + ']'


def _formatMatrix(M, indent):
    rows = [indent + '  ' + _formatVector(row) for row in M]
    return '[\n' + ',\n'.join(rows) + '\n' + indent + ']'


def dumps(t):
    """
    Returns the tableau file text for a Tableau.
    """
    if math.isinf(t.design_K):
        k_str = json.dumps('inf')
    else:
        k_str = _formatNumber(t.design_K)

    fields = [
        ('name', json.dumps(t.name)),
        ('s', str(t.s)),
        ('p_design', json.dumps(t.p_design)),
        ('K_design', k_str),
        ('variant', json.dumps(t.variant)),
        ('A', _formatMatrix(t.A, '  ')),
        ('Ahat', _formatMatrix(t.Ahat, '  ')),
        ('b', _formatVector(t.b)),
        ('bhat', _formatVector(t.bhat))
    ]
    body = ',\n'.join(f'  "{key}": {val}' for key, val in fields)

    return '{\n' + body + '\n}\n'


def save(record, path):
    """
    Writes a method record (or a bare Tableau) to a tableau file.
    """
    t = record.tableau if isinstance(record, MethodRecord) else record
    with open(path, 'w') as fout:
        fout.write(dumps(t))
