
# Runs the observed SSP coefficient sweeps for the linear advection and
# Burgers' equation tables.  Each (method, problem) row is an independent run
# of the command line program, so several rows run concurrently.  Rows whose
# summary file already exists are not run again.  Additional methods can be
# given as tableau file paths on the command line; their rows are always run.

from concurrent.futures import ThreadPoolExecutor
import subprocess as sp
import sys
import os.path


src_dir = os.path.normpath(
    os.path.join(os.path.dirname(os.path.realpath(__file__)), '../src')
)
sys.path.append(src_dir)

from ssp_core.helpers import artifact_stem

out_dir = os.path.abspath(
    os.environ.get('SSPTS_OUTPUT_DIR', os.path.join(src_dir, '../output'))
)

methods = [
    'FE', 'TS', 'M3(3,4,1)', 'M2(4,4,inf)', 'M2(4,5,1)', 'M3(8,6,1)'
]
method_files = [os.path.abspath(path) for path in sys.argv[1:]]
problems = ['advection-upwind', 'burgers-upwind']

# Run up to 4 sweeps concurrently.
max_threads = 4


def run_sweep(method, problem):
    fname = artifact_stem('sweep', method, problem) + '.json'
    if os.path.isfile(os.path.join(out_dir, fname)):
        print(f'{method} on {problem} already done, skipping...')
        return

    print(f'Running {method} on {problem}...')
    sp.run(
        [
            sys.executable, 'sspts_main.py', 'sweep', '--method', method,
            '--problem', problem, '--out', out_dir, '--allow-negative'
        ],
        cwd=src_dir
    )


with ThreadPoolExecutor(max_workers=max_threads) as runner:
    for problem in problems:
        for method in methods + method_files:
            runner.submit(run_sweep, method, problem)
