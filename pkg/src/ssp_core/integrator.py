from collections import namedtuple
import logging
import numpy as np


logger = logging.getLogger(__name__)

# The operators of an autonomous semi-discretization u_t = F(u), with
# ftilde approximating u_tt.
RhsPair = namedtuple('RhsPair', ['f', 'ftilde'])

# Passed to integration observers.  stage runs from 1 to s for the stage
# values of a step and is s + 1 (with final True) for the new solution.
StageEvent = namedtuple('StageEvent', ['step', 'stage', 'state', 'final'])


class NonFiniteStateError(RuntimeError):
    """
    Raised when a stage value or solution contains NaN or Inf.
    """
    def __init__(self, step, stage):
        self.step = step
        self.stage = stage
        super().__init__(
            f'Non-finite state at step {step}, stage {stage}.'
        )


class CountingRhs:
    """
    Wraps an RhsPair and counts the evaluations of F and Ftilde.
    """
    def __init__(self, rhs):
        self.rhs = rhs
        self.n_f = 0
        self.n_ftilde = 0

    def f(self, u):
        self.n_f += 1
        return self.rhs.f(u)

    def ftilde(self, u):
        self.n_ftilde += 1
        return self.rhs.ftilde(u)

    def reset(self):
        self.n_f = 0
        self.n_ftilde = 0


class Trajectory:
    """
    The output of integrate().

    times: The solution times, starting with 0.
    states: The solution at each time.
    stage_snapshots: For each step, the list of stage values y_1..y_s, or None
        if stage values were not kept.
    stopped: True if the observer ended the integration early.
    """
    def __init__(self, times, states, stage_snapshots=None, stopped=False):
        self.times = times
        self.states = states
        self.stage_snapshots = stage_snapshots
        self.stopped = stopped

    @property
    def final(self):
        return self.states[-1]

    @property
    def n_steps(self):
        return len(self.states) - 1


def _ftildeStages(t):
    # Stages whose Ftilde value is used by some later stage or the update.
    return np.any(t.Ahat != 0.0, axis=0) | (t.bhat != 0.0)


def _combine(u, dt, weights, values, dt_pow):
    out = u.copy()
    for w, v in zip(weights, values):
        if w != 0.0:
            out += (w * dt**dt_pow) * v

    return out


def _checkFinite(y, step_index, stage):
    if not np.all(np.isfinite(y)):
        logger.warning(
            'Non-finite state at step %d, stage %d.', step_index, stage
        )
        raise NonFiniteStateError(step_index, stage)


def _iterStages(t, rhs, u, dt, step_index):
    """
    Generates (stage, value) pairs for y_1..y_s and finally (s + 1, u_new).
    Each F and Ftilde value is computed at most once per stage.
    """
    s = t.s
    use_ftilde = _ftildeStages(t)
    F = []
    Ft = []

    for i in range(s):
        y = _combine(u, dt, t.A[i, :i], F, 1)
        y = _combine(y, dt, t.Ahat[i, :i], Ft, 2)
        _checkFinite(y, step_index, i + 1)
        yield i + 1, y

        F.append(np.asarray(rhs.f(y)))
        Ft.append(np.asarray(rhs.ftilde(y)) if use_ftilde[i] else None)

    u_new = _combine(u, dt, t.b, F, 1)
    u_new = _combine(u_new, dt, t.bhat, Ft, 2)
    _checkFinite(u_new, step_index, s + 1)

    yield s + 1, u_new


def step(t, rhs, u, dt):
    """
    Advances u by one step of the tableau t.  Returns (u_new, stages), where
    stages lists the stage values y_1..y_s.

    t (Tableau): The method.
    rhs (RhsPair): The operators F and Ftilde.
    u: The current state (a numpy array).
    dt: The step size.
    """
    if not dt > 0:
        raise ValueError(f'Invalid step size: "{dt}".')

    u = np.asarray(u, dtype=float)
    stages = []
    for stage, y in _iterStages(t, rhs, u, dt, 1):
        if stage <= t.s:
            stages.append(y)
        else:
            u_new = y

    return u_new, stages


def integrate(
    t, rhs, u0, dt, n_steps, observer=None, keep_stages=False
):
    """
    Takes n_steps steps of the tableau t from u0.

    dt: A positive step size, or a callable dt(u) returning the step size to
        use from state u.
    observer: An optional callable that receives a StageEvent after every
        stage and every step.  Returning True stops the integration.
    keep_stages: If True, the stage values of every step are kept in the
        trajectory.

    Non-finite stage values raise NonFiniteStateError.
    """
    if n_steps < 1:
        raise ValueError(f'Invalid number of steps: "{n_steps}".')

    u = np.asarray(u0, dtype=float).copy()
    time = 0.0
    times = [time]
    states = [u]
    snapshots = [] if keep_stages else None

    for n in range(1, n_steps + 1):
        dt_n = dt(u) if callable(dt) else dt
        if not dt_n > 0:
            raise ValueError(f'Invalid step size: "{dt_n}".')

        stages = []
        for stage, y in _iterStages(t, rhs, u, dt_n, n):
            final = stage > t.s
            if not final:
                stages.append(y)
            if observer is not None and observer(
                StageEvent(n, stage, y, final)
            ):
                if final:
                    times.append(time + dt_n)
                    states.append(y)
                    if keep_stages:
                        snapshots.append(stages)
                return Trajectory(times, states, snapshots, stopped=True)

        u = y
        time += dt_n
        times.append(time)
        states.append(u)
        if keep_stages:
            snapshots.append(stages)

    return Trajectory(times, states, snapshots)
