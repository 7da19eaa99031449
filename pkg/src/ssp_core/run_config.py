import math
import os
from pathlib import Path
import yaml

from .helpers import parse_lambda_grid, parse_k, parse_dt_list
from .optimizer import OPT_VARIANTS
from .experiments import TV_THRESHOLD


SUBCOMMANDS = (
    'order-check', 'ssp-coef', 'verify', 'optimize', 'sweep', 'positivity',
    'converge', 'list-methods'
)

# Subcommands that operate on a single method.
METHOD_SUBCOMMANDS = (
    'order-check', 'ssp-coef', 'verify', 'sweep', 'positivity', 'converge'
)

# Problems of the converge subcommand.
CONVERGENCE_PROBLEMS = ('decay', 'linear')

FTILDE_CHOICES = ('same', 'opposite')

# Environment variable with the default artifact directory.
OUTPUT_DIR_ENV = 'SSPTS_OUTPUT_DIR'
DEFAULT_OUTPUT_DIR = '../output'

# Built-in defaults.  None means "use the method's or problem's own value".
DEFAULTS = {
    'method': None,
    'problem': None,
    'm': None,
    'steps': None,
    'lambdas': None,
    'k': None,
    'ktilde': None,
    'out': None,
    'seed': 0,
    's': None,
    'p': None,
    'variant': None,
    'seeds': 32,
    'budget': 2000,
    'ftilde': 'same',
    'eps': None,
    'per_stage': False,
    'workers': 1,
    'threshold': TV_THRESHOLD,
    'dts': None,
    'allow_negative': False,
    'all': False
}


def load_config_file(path):
    """
    Reads a run configuration file.  The file is JSON (or YAML); its keys are
    the long option names with dashes replaced by underscores.
    """
    with open(path) as fin:
        data = yaml.safe_load(fin)

    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f'Invalid configuration file: "{path}".')

    unknown = [key for key in data if key not in DEFAULTS]
    if len(unknown) > 0:
        raise ValueError(
            f'Invalid configuration file option(s): "{", ".join(unknown)}".'
        )

    return data


def merge_options(flags, file_options):
    """
    Combines options with the precedence flags, then configuration file,
    then built-in defaults.  Flags that were not given are None.
    """
    options = dict(DEFAULTS)
    for source in (file_options, flags):
        for key, val in source.items():
            if key in DEFAULTS and val is not None:
                options[key] = val

    return options


class RunConfig:
    """
    Encapsulates and validates the options of a single run.
    """
    def __init__(self, subcommand, **options):
        """
        subcommand: One of SUBCOMMANDS.
        options: Option values keyed as in DEFAULTS; missing options take
            their default.
        """
        if subcommand not in SUBCOMMANDS:
            raise ValueError(f'Invalid subcommand: "{subcommand}".')
        self.subcommand = subcommand

        unknown = [key for key in options if key not in DEFAULTS]
        if len(unknown) > 0:
            raise ValueError(f'Invalid run option(s): "{", ".join(unknown)}".')
        opts = dict(DEFAULTS)
        opts.update({k: v for k, v in options.items() if v is not None})

        self.method = opts['method']
        if subcommand in METHOD_SUBCOMMANDS and self.method is None:
            raise ValueError(f'The {subcommand} command requires a method.')

        self.problem = opts['problem']
        self.m = self._positiveInt(opts['m'], 'grid point count')
        self.steps = self._positiveInt(opts['steps'], 'number of steps')
        self.seeds = self._positiveInt(opts['seeds'], 'seed count')
        self.budget = self._positiveInt(opts['budget'], 'budget')
        self.workers = self._positiveInt(opts['workers'], 'worker count')
        self.seed = int(opts['seed'])

        self.lambdas = self._parseLambdas(opts['lambdas'])
        self.k = None if opts['k'] is None else parse_k(opts['k'])
        self.ktilde = None if opts['ktilde'] is None else parse_k(
            opts['ktilde']
        )

        threshold = float(opts['threshold'])
        if not threshold >= 0:
            raise ValueError(f'Invalid threshold: "{opts["threshold"]}".')
        self.threshold = threshold

        ftilde = opts['ftilde']
        if ftilde not in FTILDE_CHOICES:
            raise ValueError(f'Invalid ftilde choice: "{ftilde}".')
        self.ftilde = ftilde

        eps = None if opts['eps'] is None else float(opts['eps'])
        if eps is not None and not eps > 0:
            raise ValueError(f'Invalid WENO regularization: "{opts["eps"]}".')
        self.eps = eps

        self.per_stage = bool(opts['per_stage'])
        self.allow_negative = bool(opts['allow_negative'])
        self.all = bool(opts['all'])

        self.dts = self._parseDts(opts['dts'])

        self.out = opts['out']
        self.output_dir = self._outputDir(subcommand, self.out)

        self._checkSubcommand(subcommand, opts)

    def _positiveInt(self, val, label):
        if val is None:
            return None
        if isinstance(val, bool) or int(val) != val or val < 1:
            raise ValueError(f'Invalid {label}: "{val}".')

        return int(val)

    def _parseLambdas(self, val):
        if val is None:
            return None
        if isinstance(val, str):
            return parse_lambda_grid(val)

        # A list from a configuration file.
        return parse_lambda_grid(','.join(str(x) for x in val))

    def _parseDts(self, val):
        if val is None:
            return None
        if isinstance(val, str):
            return parse_dt_list(val)

        return parse_dt_list(','.join(str(x) for x in val))

    def _outputDir(self, subcommand, out):
        if out is not None and subcommand != 'optimize':
            return Path(out)

        return Path(os.environ.get(OUTPUT_DIR_ENV, DEFAULT_OUTPUT_DIR))

    def _checkSubcommand(self, subcommand, opts):
        if subcommand == 'optimize':
            for key in ('s', 'p', 'variant'):
                if opts[key] is None:
                    raise ValueError(f'The optimize command requires --{key}.')
            self.s = self._positiveInt(opts['s'], 'stage count')
            self.p = self._positiveInt(opts['p'], 'order')
            if opts['variant'] not in OPT_VARIANTS:
                raise ValueError(
                    f'Invalid method variant: "{opts["variant"]}".'
                )
            self.variant = opts['variant']
            if self.k is None:
                self.k = 1.0
        else:
            self.s = self._positiveInt(opts['s'], 'stage count')
            self.p = self._positiveInt(opts['p'], 'order')
            self.variant = opts['variant']

        if subcommand in ('sweep', 'positivity') and self.problem is None:
            self.problem = (
                'shallow-water' if subcommand == 'positivity'
                else 'advection-upwind'
            )
        if subcommand == 'converge':
            if self.problem is None:
                self.problem = 'decay'
            if self.problem not in CONVERGENCE_PROBLEMS:
                raise KeyError(f'Invalid problem name: "{self.problem}"')
            if self.dts is None:
                self.dts = [0.25, 0.125, 0.0625, 0.03125]

    def kOr(self, default):
        """
        Returns the configured K, or default if none was given.
        """
        return default if self.k is None else self.k

    def getMetadata(self):
        """
        Returns a dictionary of the run options for artifact metadata.
        """
        md = {'subcommand': self.subcommand}
        for key in DEFAULTS:
            val = getattr(self, key, None)
            if key == 'lambdas' and val is not None:
                val = [float(x) for x in val]
            elif isinstance(val, float) and math.isinf(val):
                val = 'inf'
            md[key] = val

        return md
