#!/usr/bin/python

# Command line entry point of the SSP-TS toolkit.  Run from inside src/, e.g.
#
# $ python sspts_main.py ssp-coef --method 'M3(3,4,1)' --k 1
#
# Exit statuses: 0 success, 1 validation failure, 2 bad arguments, 3 unknown
# method or problem, 4 malformed tableau file, 5 no feasible method found.

import argparse
import logging
import logging.config
from pathlib import Path
import sys
import yaml

from ssp_core import (
    RunConfig, RunHandler, RunOutput, TableauFormatError,
    NoFeasibleMethodError
)
from ssp_core.run_config import load_config_file, merge_options
from ssp_core.run_handler import (
    EXIT_USAGE, EXIT_UNKNOWN, EXIT_FORMAT, EXIT_INFEASIBLE
)
from library.catalog import default_catalog


# Location of the log file unless --log-file is given.
default_log_path = Path('../logs/sspts.log')

logger = logging.getLogger('sspts_main')


def configure_logging(log_path, verbose=False):
    with open(Path(__file__).parent / 'logging_config.yaml') as fin:
        logging_conf = yaml.safe_load(fin)

    log_path = Path(log_path)
    log_path.parent.mkdir(parents=True, exist_ok=True)
    logging_conf['handlers']['file']['filename'] = str(log_path)
    if verbose:
        logging_conf['handlers']['console']['level'] = 'INFO'
    logging.config.dictConfig(logging_conf)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--config', type=str, default=None,
        help='A JSON or YAML file of option values.  Command line flags '
        'take precedence over the file.'
    )
    common.add_argument(
        '--out', type=str, default=None,
        help='The artifact directory (for optimize, the tableau file).'
    )
    common.add_argument('--log-file', type=str, default=None)
    common.add_argument(
        '-v', '--verbose', action='store_true', help='Log progress to stderr.'
    )

    method_opts = argparse.ArgumentParser(add_help=False)
    method_opts.add_argument(
        '--method', type=str, default=None,
        help='A method name from the catalog or a tableau file path.'
    )
    method_opts.add_argument(
        '--allow-negative', action='store_true', default=None,
        help='Accept tableau files with negative coefficients.'
    )

    k_opts = argparse.ArgumentParser(add_help=False)
    k_opts.add_argument(
        '--k', type=str, default=None,
        help='The Taylor series ratio K (a number or "inf").'
    )

    sweep_opts = argparse.ArgumentParser(add_help=False)
    sweep_opts.add_argument('--problem', type=str, default=None)
    sweep_opts.add_argument(
        '--m', type=int, default=None, help='The number of grid points.'
    )
    sweep_opts.add_argument(
        '--steps', type=int, default=None, help='The number of time steps.'
    )
    sweep_opts.add_argument(
        '--lambdas', type=str, default=None,
        help='The lambda grid, "start:stop:step" or a comma-separated list.'
    )
    sweep_opts.add_argument(
        '--ftilde', type=str, default=None, choices=('same', 'opposite'),
        help='The second derivative operator of the WENO problems.'
    )
    sweep_opts.add_argument(
        '--eps', type=float, default=None,
        help='The regularization of the WENO weights.'
    )
    sweep_opts.add_argument(
        '--per-stage', action='store_true', default=None,
        help='Report the per-stage lambda_obs.'
    )
    sweep_opts.add_argument('--workers', type=int, default=None)

    parser = argparse.ArgumentParser(
        description='Analysis, optimization and testing of explicit '
        'two-derivative multistage methods.'
    )
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    subparsers.add_parser(
        'order-check', parents=[common, method_opts],
        help='Evaluates the order conditions of a method.'
    )

    sp = subparsers.add_parser(
        'ssp-coef', parents=[common, method_opts, k_opts],
        help='Certifies the SSP-TS coefficient of a method.'
    )
    sp.add_argument(
        '--ktilde', type=str, default=None,
        help='Also compute the SSP-SD coefficient for this ratio.'
    )

    sp = subparsers.add_parser(
        'verify', parents=[common, method_opts, k_opts],
        help='Checks structure, order and SSP-TS coefficient of a method.'
    )
    sp.add_argument('--p', type=int, default=None)

    sp = subparsers.add_parser(
        'optimize', parents=[common, k_opts],
        help='Searches for a method with a large SSP-TS coefficient.'
    )
    sp.add_argument('--s', type=int, default=None)
    sp.add_argument('--p', type=int, default=None)
    sp.add_argument('--variant', type=str, default=None)
    sp.add_argument('--seeds', type=int, default=None)
    sp.add_argument('--budget', type=int, default=None)
    sp.add_argument('--seed', type=int, default=None)
    sp.add_argument('--workers', type=int, default=None)

    sp = subparsers.add_parser(
        'sweep', parents=[common, method_opts, sweep_opts],
        help='Measures the observed SSP coefficient on a problem.'
    )
    sp.add_argument(
        '--threshold', type=float, default=None,
        help='The allowed rise in total variation per step.'
    )

    subparsers.add_parser(
        'positivity', parents=[common, method_opts, sweep_opts],
        help='Measures the largest positivity preserving step for shallow '
        'water.'
    )

    sp = subparsers.add_parser(
        'converge', parents=[common, method_opts],
        help='Measures the temporal order of convergence.'
    )
    sp.add_argument(
        '--problem', type=str, default=None, help='"decay" or "linear".'
    )
    sp.add_argument(
        '--dts', type=str, default=None,
        help='A comma-separated list of step sizes.'
    )
    sp.add_argument('--seed', type=int, default=None)

    sp = subparsers.add_parser(
        'list-methods', parents=[common],
        help='Lists the methods in the catalog.'
    )
    sp.add_argument(
        '--all', action='store_true', default=None,
        help='Include unlisted methods.'
    )

    return parser


def make_config(args):
    flags = {
        key: val for key, val in vars(args).items()
        if key not in ('subcommand', 'config', 'log_file', 'verbose')
    }
    file_options = {}
    if args.config is not None:
        file_options = load_config_file(args.config)

    options = merge_options(flags, file_options)

    return RunConfig(args.subcommand, **options)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    log_path = default_log_path if args.log_file is None else args.log_file
    configure_logging(log_path, args.verbose)

    try:
        config = make_config(args)
        handler = RunHandler(default_catalog(), RunOutput(config.output_dir))
        result = handler.run(config)
    except TableauFormatError as err:
        logger.error('Malformed tableau: %s', err)
        print(f'Error: {err}', file=sys.stderr)
        return EXIT_FORMAT
    except KeyError as err:
        logger.error('Unknown name: %s', err)
        print(f'Error: {err.args[0]}', file=sys.stderr)
        return EXIT_UNKNOWN
    except NoFeasibleMethodError as err:
        logger.error('%s', err)
        print(f'Error: {err}', file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as err:
        logger.error('Invalid run: %s', err)
        print(f'Error: {err}', file=sys.stderr)
        return EXIT_USAGE

    for line in result.lines:
        print(line)
    logger.info(
        '%s finished with status %d; artifacts: %s', args.subcommand,
        result.status, ', '.join(str(p) for p in result.artifacts)
    )

    return result.status


if __name__ == '__main__':
    sys.exit(main())
