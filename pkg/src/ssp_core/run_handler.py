"""
Carries out the subcommands of the command line interface.  Each subcommand
composes library operations, writes its artifacts and returns the lines of a
human-readable summary together with an exit status.
"""

from collections import namedtuple
import logging
import numpy as np
import pandas as pd

from .helpers import resolve_method, artifact_stem, format_k
from .order_conditions import all_residuals, order_of, stage_order, MAX_ORDER
from .ssp_analysis import compute_cts, compute_csd, effective_coefficient
from .optimizer import (
    OptimizationSpec, optimize, verify_candidate, OPT_VARIANTS
)
from .experiments import (
    observed_cts, positivity_sweep, default_lambda_grid, convergence_study,
    decay_problem, linear_problem
)


logger = logging.getLogger(__name__)

# Exit statuses.
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3
EXIT_FORMAT = 4
EXIT_INFEASIBLE = 5

# Tolerance of the order reported by order-check and verify.
ORDER_TOL = 1e-8

# Relative tolerance when comparing a certified coefficient with a claimed one.
CTS_RTOL = 1e-3

RunResult = namedtuple('RunResult', ['status', 'lines', 'artifacts'])


class RunHandler:
    """
    Dispatches RunConfig instances to the subcommand implementations.
    """
    def __init__(self, catalog, output):
        """
        catalog (MethodCatalog): Used to resolve method names.
        output (RunOutput): Writes the artifacts.
        """
        self.catalog = catalog
        self.output = output

    def run(self, config):
        handler = getattr(self, '_' + config.subcommand.replace('-', '_'))

        return handler(config)

    def _method(self, config):
        return resolve_method(
            config.method, self.catalog, config.allow_negative
        )

    def _order_check(self, config):
        record = self._method(config)
        t = record.tableau

        order = order_of(t, ORDER_TOL)
        residuals = all_residuals(t, MAX_ORDER)
        rows = [res._asdict() for res in residuals]
        frame = pd.DataFrame(
            rows, columns=['order', 'index', 'lhs', 'rhs', 'residual']
        )
        csv_path = self.output.writeCSV(
            frame, artifact_stem('order_check', t.name)
        )

        lines = [
            f'p{res.order}#{res.index} lhs={res.lhs:.17g} '
            f'target={res.rhs:.17g} residual={res.residual:.17g}'
            for res in residuals
        ]
        lines.append(
            f'{t.name}: order {order}, stage order {stage_order(t)}.'
        )
        status = EXIT_OK
        claimed = record.claimed_order
        if claimed is not None and order < claimed:
            lines.append(f'Order {order} is below the claimed order {claimed}.')
            status = EXIT_VALIDATION

        return RunResult(status, lines, [csv_path])

    def _ssp_coef(self, config):
        record = self._method(config)
        t = record.tableau
        k = config.kOr(t.design_K)

        cert = compute_cts(t, k)
        eff = effective_coefficient(cert.r_max, t)
        summary = {
            'method': t.name, 'K': k, 'r_max': cert.r_max,
            'effective': eff, 'min_Re': cert.min_Re, 'min_P': cert.min_P,
            'min_Q': cert.min_Q
        }
        lines = [
            f'{t.name}: C_TS(K={format_k(k)}) = {cert.r_max:.6f}, effective '
            f'{eff:.6f}.',
            f'Witness minima: Re {cert.min_Re:.6g}, P {cert.min_P:.6g}, '
            f'Q {cert.min_Q:.6g}.'
        ]

        if config.ktilde is not None:
            sd = compute_csd(t, config.ktilde)
            summary.update({
                'Ktilde': config.ktilde, 'csd': sd.csd,
                'csd_r': sd.r_max, 'csd_rhat': sd.rhat_max
            })
            lines.append(
                f'C_SD(Ktilde={format_k(config.ktilde)}) = {sd.csd:.6f}.'
            )

        json_path = self.output.writeJSON(
            summary, artifact_stem('ssp_coef', t.name, format_k(k))
        )

        return RunResult(EXIT_OK, lines, [json_path])

    def _verifySpec(self, record, config):
        t = record.tableau
        p = config.p
        if p is None:
            p = record.claimed_order
        if p is None:
            p = t.p_design
        if p is None:
            p = max(order_of(t, ORDER_TOL), 1)

        variant = t.variant if t.variant in OPT_VARIANTS else 'M1'

        return OptimizationSpec(
            t.s, p, variant, config.kOr(t.design_K), tol_order=ORDER_TOL
        )

    def _verify(self, config):
        record = self._method(config)
        t = record.tableau
        spec = self._verifySpec(record, config)
        report = verify_candidate(t, spec)

        messages = report.messages()
        claimed = record.claimed_cts
        if (
            claimed is not None and claimed > 0
            and abs(report.cts - claimed) > CTS_RTOL * claimed
        ):
            messages.append(
                f'Certified C_TS {report.cts:.6f} differs from the claimed '
                f'{claimed:.6f}.'
            )

        summary = {
            'method': t.name, 'p': spec.p, 'K': spec.k,
            'order': report.order, 'cts': report.cts,
            'accepted': report.accepted and len(messages) == 0,
            'messages': messages
        }
        json_path = self.output.writeJSON(
            summary, artifact_stem('verify', t.name)
        )

        verdict = 'passes' if summary['accepted'] else 'fails'
        lines = [
            f'{t.name} {verdict} verification: order {report.order}, '
            f'C_TS(K={format_k(spec.k)}) = {report.cts:.6f}.'
        ]
        lines.extend(messages)
        status = EXIT_OK if summary['accepted'] else EXIT_VALIDATION

        return RunResult(status, lines, [json_path])

    def _optimize(self, config):
        spec = OptimizationSpec(
            config.s, config.p, config.variant, config.k, seeds=config.seeds,
            budget=config.budget, seed=config.seed, workers=config.workers
        )
        result = optimize(spec)
        t = result.record.tableau

        path = self.output.writeTableau(
            result.record, path=config.out,
            stem=artifact_stem('optimized', spec.method_name)
        )
        report = verify_candidate(t, spec)

        lines = [
            f'{spec.method_name}: certified C_TS = {result.cts:.6f}, '
            f'effective {effective_coefficient(result.cts, t):.6f}.',
            f'Tableau written to {path}.'
        ]
        lines.extend(report.messages())
        status = EXIT_OK if report.accepted else EXIT_VALIDATION

        return RunResult(status, lines, [path])

    def _sweepGrid(self, config, problem, cts_pred):
        if config.lambdas is not None:
            return config.lambdas
        if not cts_pred > 0:
            raise ValueError(
                'The method is not SSP-TS; a lambda grid (--lambdas) is '
                'required.'
            )

        return default_lambda_grid(cts_pred * problem.lambda_fe)

    def _sweepResult(self, config, report, prefix):
        stem = artifact_stem(
            prefix, report.method_name, report.problem_name
        )
        csv_path = self.output.writeCSV(report.to_frame(), stem)
        summary = report.summary()
        summary['config'] = config.getMetadata()
        json_path = self.output.writeJSON(summary, stem)

        if config.per_stage:
            lam, cts, label = (
                report.lambda_obs_stage, report.cts_obs_stage, 'per-stage'
            )
        else:
            lam, cts, label = report.lambda_obs, report.cts_obs, 'per-step'

        pred = 'n/a' if report.cts_pred is None else f'{report.cts_pred:.6f}'
        lines = [
            f'{report.method_name} on {report.problem_name} ({label}): '
            f'lambda_obs = {lam:.6f}, C_obs = {cts:.6f}, C_pred = {pred}.'
        ]
        if not report.bracketed:
            lines.append('Warning: the lambda grid does not bracket the threshold.')

        return RunResult(EXIT_OK, lines, [csv_path, json_path])

    def _buildProblem(self, config):
        from library.spatial import build_problem

        return build_problem(
            config.problem, m=config.m, ftilde=config.ftilde, eps=config.eps
        )

    def _sweep(self, config):
        record = self._method(config)
        problem = self._buildProblem(config)
        if problem.norm != 'tv':
            raise ValueError(
                f'Invalid problem for a total variation sweep: '
                f'"{problem.name}"; use the positivity command.'
            )

        cts_pred = compute_cts(record.tableau, problem.k).r_max
        report = observed_cts(
            record, problem, config.steps,
            self._sweepGrid(config, problem, cts_pred), config.threshold,
            config.workers, cts_pred
        )

        return self._sweepResult(config, report, 'sweep')

    def _positivity(self, config):
        record = self._method(config)
        problem = self._buildProblem(config)

        cts_pred = compute_cts(record.tableau, problem.k).r_max
        report = positivity_sweep(
            record, problem, config.steps,
            self._sweepGrid(config, problem, cts_pred), config.workers,
            cts_pred
        )

        return self._sweepResult(config, report, 'positivity')

    def _converge(self, config):
        record = self._method(config)
        t = record.tableau

        if config.problem == 'decay':
            problem = decay_problem()
        else:
            rng = np.random.default_rng(config.seed)
            problem = linear_problem(
                rng.standard_normal((5, 5)), rng.standard_normal(5)
            )

        report = convergence_study(t, problem, config.dts)
        frame = pd.DataFrame({'dt': report.dts, 'error': report.errors})
        csv_path = self.output.writeCSV(
            frame, artifact_stem('converge', t.name, config.problem)
        )
        lines = [
            f'{t.name} on {config.problem}: observed order '
            f'{report.order:.6f}.'
        ]

        return RunResult(EXIT_OK, lines, [csv_path])

    def _list_methods(self, config):
        entries = self.catalog.getCatalogEntries(published_only=not config.all)
        frame = pd.DataFrame(entries, columns=['id', 'name', 'order', 'cts'])
        csv_path = self.output.writeCSV(frame, 'methods')

        lines = []
        for entry in entries:
            cts = 'n/a' if entry['cts'] is None else f'{entry["cts"]:.6f}'
            lines.append(f'{entry["id"]}: order {entry["order"]}, C_TS {cts}')

        return RunResult(EXIT_OK, lines, [csv_path])
