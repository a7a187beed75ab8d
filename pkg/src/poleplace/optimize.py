"""Objectives and multi-start quasi-Newton search over the parameter space.

The placement parameter K has exactly m*n free real coordinates, so
robustness and gain objectives become unconstrained (nonconvex) functions on
R^(mn).  Gradients are central finite differences; each restart runs BFGS
with Armijo backtracking, so accepted steps never increase the objective.
Parameter draws that make V singular are a measure-zero set and are treated
as resample or step-rejection signals, never as fatal errors.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import SingularMatrixError
from .linalg import DEFAULT_TOL, fro_norm
from .metrics import departure_from_normality, kappa_2, kappa_fro
from .placement import ParameterMatrix, Placer

_ARMIJO_C1 = 1e-4
_MAX_BACKTRACKS = 60
_RESAMPLE_LIMIT = 100


@dataclass(frozen=True)
class ObjectiveSpec:
    """Which robustness measure to blend with the gain term.

    method "condition" weights ||V||_F^2 + ||V^-1||_F^2 (the smooth
    surrogate of the Frobenius condition number); method "normality" weights
    the squared departure from normality of the closed loop.  alpha = 0 is
    pure minimum gain, alpha = 1 pure robustness.
    """

    method: str = "condition"
    alpha: float = 1.0

    def __post_init__(self):
        if self.method not in ("condition", "normality"):
            raise ValueError("method must be 'condition' or 'normality'")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")


@dataclass(frozen=True)
class OptOptions:
    restarts: int = 10
    max_iters: int = 500
    grad_step: float = float(np.finfo(float).eps ** (1.0 / 3.0))
    tol_grad: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        if self.grad_step <= 0 or self.tol_grad <= 0:
            raise ValueError("grad_step and tol_grad must be positive")


@dataclass(frozen=True)
class OptResult:
    best_K: ParameterMatrix
    best_value: float
    traces: tuple
    restart_values: tuple
    placement: object
    metrics: dict = field(default_factory=dict)


def _f1_from_placement(res, alpha):
    s = np.linalg.svd(res.V, compute_uv=False)
    v2 = float(np.sum(s**2))
    vinv2 = float(np.sum(s**-2))
    return alpha * (v2 + vinv2) + (1.0 - alpha) * fro_norm(res.F) ** 2


def _f2_from_placement(res, alpha, sys):
    delta = departure_from_normality(sys.A + sys.B @ res.F)
    return alpha * delta**2 + (1.0 - alpha) * fro_norm(res.F) ** 2


def objective_f1(K, sys, spec, alpha, tol=DEFAULT_TOL):
    """alpha (||V||_F^2 + ||V^-1||_F^2) + (1 - alpha) ||F||_F^2."""
    res = Placer(sys, spec, tol).place(K)
    return _f1_from_placement(res, alpha)


def objective_f2(K, sys, spec, alpha, tol=DEFAULT_TOL):
    """alpha delta_fro^2(A + B F) + (1 - alpha) ||F||_F^2."""
    res = Placer(sys, spec, tol).place(K)
    return _f2_from_placement(res, alpha, sys)


class _Evaluator:
    """Objective as a function of the free coordinate vector.

    Returns (value, ok); singular placements yield (+inf, False) so line
    searches reject the step and move on.
    """

    def __init__(self, obj, placer):
        self.obj = obj
        self.placer = placer
        self.sys = placer.sys
        self.spec = placer.spec
        self.m = placer.sys.m

    def __call__(self, x):
        K = ParameterMatrix.from_vector(self.spec, self.m, x)
        try:
            res = self.placer.place(K)
        except SingularMatrixError:
            return float("inf"), False
        if self.obj.method == "condition":
            return _f1_from_placement(res, self.obj.alpha), True
        return _f2_from_placement(res, self.obj.alpha, self.sys), True


def _fd_gradient(evaluate, x, step, f0=None):
    """Central differences with one-sided fallback at singular probes."""
    g = np.zeros_like(x)
    flags = np.zeros(x.size, dtype=bool)
    for j in range(x.size):
        h = step * (1.0 + abs(x[j]))
        xp = x.copy()
        xp[j] += h
        xm = x.copy()
        xm[j] -= h
        fp, okp = evaluate(xp)
        fm, okm = evaluate(xm)
        if okp and okm:
            g[j] = (fp - fm) / (2.0 * h)
        else:
            flags[j] = True
            if f0 is None:
                f0, ok0 = evaluate(x)
                if not ok0:
                    raise SingularMatrixError(
                        "objective singular at the gradient base point"
                    )
            if okp:
                g[j] = (fp - f0) / h
            elif okm:
                g[j] = (f0 - fm) / h
            else:
                g[j] = 0.0
    return g, flags


def gradient(obj, K, sys, spec, opts=OptOptions(), tol=DEFAULT_TOL,
             return_flags=False):
    """Numerical gradient of the objective over the mn free coordinates.

    Central differences with relative step grad_step * (1 + |coordinate|);
    a probe that lands on a singular placement falls back to a one-sided
    difference (flag raised for that coordinate).
    """
    placer = Placer(sys, spec, tol)
    evaluate = _Evaluator(obj, placer)
    x = K.to_vector()
    f0, ok = evaluate(x)
    if not ok:
        raise SingularMatrixError("objective singular at the evaluation point")
    g, flags = _fd_gradient(evaluate, x, opts.grad_step, f0)
    return (g, flags) if return_flags else g


def _bfgs_restart(evaluate, x0, opts):
    """One monotone quasi-Newton descent; returns (x, value, trace)."""
    dim = x0.size
    eye = np.eye(dim)
    Hinv = eye.copy()
    x = x0.copy()
    fx, ok = evaluate(x)
    trace = [fx]
    g, _ = _fd_gradient(evaluate, x, opts.grad_step, fx)
    for _ in range(opts.max_iters):
        if np.linalg.norm(g, np.inf) <= opts.tol_grad:
            break
        p = -Hinv @ g
        slope = float(g @ p)
        if slope >= 0.0:
            Hinv = eye.copy()
            p = -g
            slope = -float(g @ g)
            if slope == 0.0:
                break
        t = 1.0
        accepted = False
        for _ in range(_MAX_BACKTRACKS):
            fc, okc = evaluate(x + t * p)
            if okc and fc <= fx + _ARMIJO_C1 * t * slope:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        s = t * p
        x_new = x + s
        g_new, _ = _fd_gradient(evaluate, x_new, opts.grad_step, fc)
        y = g_new - g
        sy = float(s @ y)
        if sy > 1e-10 * np.linalg.norm(s) * np.linalg.norm(y):
            rho = 1.0 / sy
            left = eye - rho * np.outer(s, y)
            Hinv = left @ Hinv @ left.T + rho * np.outer(s, s)
        x, fx, g = x_new, fc, g_new
        trace.append(fx)
    return x, fx, trace


def minimize(obj, sys, spec, opts=OptOptions(), tol=DEFAULT_TOL):
    """Multi-start minimization of the chosen objective.

    Each restart draws standard-normal free coordinates (resampling the
    rare singular starts), runs BFGS with backtracking, and the best
    restart wins.  Deterministic for a fixed seed.
    """
    placer = Placer(sys, spec, tol)
    evaluate = _Evaluator(obj, placer)
    dim = sys.m * sys.n
    streams = np.random.SeedSequence(opts.seed).spawn(opts.restarts)

    traces = []
    finals = []
    best_x, best_val = None, float("inf")
    for stream in streams:
        rng = np.random.default_rng(stream)
        x0 = None
        for _ in range(_RESAMPLE_LIMIT):
            cand = rng.standard_normal(dim)
            if evaluate(cand)[1]:
                x0 = cand
                break
        if x0 is None:
            continue
        x, val, trace = _bfgs_restart(evaluate, x0, opts)
        traces.append(tuple(trace))
        finals.append(val)
        if val < best_val:
            best_x, best_val = x, val
    if best_x is None:
        raise SingularMatrixError(
            "all restarts produced singular placements at initialization"
        )

    best_K = ParameterMatrix.from_vector(spec, sys.m, best_x)
    res = placer.place(best_K)
    metrics = {
        "kappa_fro": kappa_fro(res.V, tol),
        "kappa_2": kappa_2(res.V, tol),
        "kappa_fro_X": kappa_fro(res.X, tol),
        "delta_fro": departure_from_normality(sys.A + sys.B @ res.F),
        "gain_fro": fro_norm(res.F),
    }
    return OptResult(best_K, best_val, tuple(traces), tuple(finals), res, metrics)
