import json
import math
from pathlib import Path
import numpy as np


# CSV artifacts carry full double precision.
CSV_FLOAT_FORMAT = '%.17g'


def _jsonable(val):
    # JSON has no representation of inf or NaN.
    if isinstance(val, dict):
        return {key: _jsonable(v) for key, v in val.items()}
    if isinstance(val, (list, tuple, np.ndarray)):
        return [_jsonable(v) for v in val]
    if isinstance(val, (np.bool_, bool)):
        return bool(val)
    if isinstance(val, (np.integer, int)):
        return int(val)
    if isinstance(val, (np.floating, float)):
        val = float(val)
        if math.isinf(val):
            return 'inf' if val > 0 else '-inf'
        if math.isnan(val):
            return 'nan'
        return val
    if isinstance(val, Path):
        return str(val)

    return val


class RunOutput:
    """
    Writes run artifacts to an output directory.
    """
    def __init__(self, output_dir):
        self.output_dir = Path(output_dir)

    def _path(self, fname):
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / fname

    def writeCSV(self, frame, stem):
        """
        Writes a pandas DataFrame as CSV and returns the file path.
        """
        fout_path = self._path(stem + '.csv')
        frame.to_csv(fout_path, index=False, float_format=CSV_FLOAT_FORMAT)

        return fout_path

    def writeJSON(self, data, stem):
        """
        Writes a dictionary as JSON and returns the file path.
        """
        fout_path = self._path(stem + '.json')
        with open(fout_path, 'w') as fout:
            json.dump(_jsonable(data), fout, indent=4)

        return fout_path

    def writeTableau(self, record, path=None, stem=None):
        """
        Writes a method to a tableau file, either at path or in the output
        directory.
        """
        from library.methods import save

        if path is None:
            fout_path = self._path(stem + '.json')
        else:
            fout_path = Path(path)
            fout_path.parent.mkdir(parents=True, exist_ok=True)
        save(record, fout_path)

        return fout_path
