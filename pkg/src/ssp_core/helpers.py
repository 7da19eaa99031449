import math
import re
from pathlib import Path
import numpy as np

from .experiments import make_lambda_grid


def parse_lambda_grid(grid_str):
    """
    Parses a lambda grid specification, either "start:stop:step" (stop
    included) or a comma-separated list of values.  The grid must have at
    least two positive, strictly increasing points.
    """
    grid_str = grid_str.strip()
    try:
        if ':' in grid_str:
            parts = [float(part) for part in grid_str.split(':')]
            if len(parts) != 3:
                raise ValueError()
            lambdas = make_lambda_grid(*parts)
        else:
            lambdas = np.array(
                [float(part) for part in grid_str.split(',') if part != '']
            )
    except ValueError:
        raise ValueError(f'Invalid lambda grid: "{grid_str}".')

    if (
        lambdas.shape[0] < 2 or np.any(lambdas <= 0)
        or np.any(np.diff(lambdas) <= 0)
    ):
        raise ValueError(f'Invalid lambda grid: "{grid_str}".')

    return lambdas


def parse_dt_list(dts_str):
    """
    Parses a comma-separated list of step sizes.
    """
    try:
        dts = [float(part) for part in dts_str.split(',') if part.strip() != '']
    except ValueError:
        raise ValueError(f'Invalid step size list: "{dts_str}".')

    if len(dts) < 2 or any(not dt > 0 for dt in dts):
        raise ValueError(f'Invalid step size list: "{dts_str}".')

    return dts


def parse_k(k_str):
    """
    Parses a Taylor series ratio: a positive number or "inf".
    """
    if isinstance(k_str, (int, float)):
        k = float(k_str)
    elif k_str.strip().lower() in ('inf', 'infinity'):
        k = math.inf
    else:
        try:
            k = float(k_str)
        except ValueError:
            raise ValueError(f'Invalid Taylor series ratio K: "{k_str}".')

    if not k > 0:
        raise ValueError(f'Invalid Taylor series ratio K: "{k_str}".')

    return k


def format_k(k):
    return 'inf' if math.isinf(k) else f'{k:g}'


def resolve_method(method_ref, catalog, allow_negative=False):
    """
    Returns the MethodRecord for a catalog name or a tableau file path.
    Unknown references raise KeyError; unreadable files raise
    TableauFormatError.
    """
    from library.methods import load

    if method_ref in catalog:
        return catalog[method_ref]

    path = Path(method_ref)
    if path.is_file():
        return load(path, allow_negative=allow_negative)

    raise KeyError(f'Invalid method name: "{method_ref}"')


def artifact_stem(*parts):
    """
    Joins name parts into a file name stem that is safe on all platforms.
    """
    stem = '_'.join(str(part) for part in parts if part)
    stem = re.sub(r'[^A-Za-z0-9.=-]+', '_', stem)

    return stem.strip('_')
