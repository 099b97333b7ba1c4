"""Three-level time-split steppers for the model equation.

Two compositions are provided, selected by SchemeConfig.stepper:

"coupled" (default)
    Two-level trapezoidal half-steps chained through a three-level window.
    Every implicit solve keeps the full mass operator I - a*Lap4 (both
    directions), which is what makes the composition converge: the mixed
    time-space term couples the directions globally, and splitting the mass
    per direction changes the dynamics at leading order (each directional
    sub-flow of the first benchmark decays at rate 0.954 instead of the
    two composing to rate 1).  The solve is direct at line-solve cost: the
    symmetric x-operator is diagonalized once and each x-eigenmode yields
    one pentadiagonal y-line system.

        startup   (M - (k/4)G) U^{1/2} = (M + s(k/4)G) U^0
                                         + (k/4)[f(t_{1/2}) + f(t_0)]
        chain     (M - (k/2)G) U^{q+1/2} = (M + s(k/2)G) U^{q-1/2}
                                           + k f(t_q, U^q, wide_first U^q)

    with M = I - a*Lap4, G = gamma*Lap4 - beta*(wide_first_x + wide_first_y),
    f = f1 + f2, s = +1 ("derived") or -1 ("paper").  The chain advances by
    half-steps; each update spans k with the source at the centered level
    (the leapfrog part) and the trapezoid across the outer levels (the
    Crank-Nicolson part).

"split"
    The literal directional composition: an x-direction trapezoidal
    half-step with f1, a y-direction one with f2, then a cycle of explicit
    x-leapfrog and implicit y half-steps, each sub-step using only its own
    direction's mass I - a*wide_second_z.  Kept for fidelity experiments;
    it does not converge (the y-direction physics cancels between
    consecutive cycles), which the convergence harness demonstrates.

Boundary layers {0,1,M-1,M} are filled at each sub-step's target time,
either from the reference solution ("exact") or by the copy rule
("paper_copy": outer layer from g, second layer copied outward).
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field, replace
from typing import Optional

import numpy as np

from .errors import BlowUpError, ConfigurationError, PicardError
from .grid import Field, Grid2D, TimeGrid, sample
from .norms import RunningMax, h2_norm, l2_norm
from .penta import (PentaBands, TensorLineSolver, assemble_line_operator,
                    boundary_moveout, factor, solve_line)
from .problems import ProblemSpec
from .stencils import (Axis, WIDE_FIRST_W, WIDE_SECOND_W,
                       wide_first_values)

STEPPERS = ("coupled", "split")
RHS_SIGNS = ("derived", "paper")
BOUNDARY_MODES = ("exact", "paper_copy")


@dataclass(frozen=True)
class SchemeConfig:
    stepper: str = "coupled"
    rhs_sign: str = "derived"
    leapfrog_alpha: str = "on"
    boundary_mode: str = "exact"
    picard_tol: float = 1e-12
    picard_max_iters: int = 50
    k_rule: object = "auto"     # "auto" or an explicit time step (float)

    def __post_init__(self):
        if self.stepper not in STEPPERS:
            raise ConfigurationError(f"stepper must be one of {STEPPERS}")
        if self.rhs_sign not in RHS_SIGNS:
            raise ConfigurationError(f"rhs_sign must be one of {RHS_SIGNS}")
        if self.leapfrog_alpha not in ("on", "off"):
            raise ConfigurationError("leapfrog_alpha must be 'on' or 'off'")
        if self.boundary_mode not in BOUNDARY_MODES:
            raise ConfigurationError(f"boundary_mode must be one of {BOUNDARY_MODES}")
        if self.picard_tol <= 0 or self.picard_max_iters < 1:
            raise ConfigurationError("picard_tol must be > 0 and picard_max_iters >= 1")


@dataclass
class StepDiagnostics:
    picard_iterations: list = dc_field(default_factory=list)
    max_update: float = 0.0
    wall_times: list = dc_field(default_factory=list)

    def record(self, iterations: int, update: float, wall: float) -> None:
        self.picard_iterations.append(iterations)
        self.max_update = max(self.max_update, update)
        self.wall_times.append(wall)


@dataclass(frozen=True)
class SchemeState:
    """Chain window: the two newest levels, at t_{n-1/2} and t_n."""

    n: int
    U_half: Field
    U_int: Field


def time_step_rule(hx: float, hy: float) -> float:
    """Benchmark time step k = min(hx, hy)^(4/3)."""
    if hx <= 0 or hy <= 0:
        raise ConfigurationError("mesh steps must be positive")
    return min(hx, hy) ** (4.0 / 3.0)


def make_time_grid(T: float, k_raw: float) -> TimeGrid:
    """Round k so an integer number of steps lands exactly on T."""
    if k_raw <= 0:
        raise ConfigurationError(f"time step must be positive, got {k_raw}")
    N = max(1, round(T / k_raw))
    return TimeGrid(T=float(T), N=int(N))


def resolve_time_grid(grid: Grid2D, cfg: SchemeConfig, T: float) -> TimeGrid:
    if cfg.k_rule == "auto":
        return make_time_grid(T, time_step_rule(grid.hx, grid.hy))
    return make_time_grid(T, float(cfg.k_rule))


def fill_boundary_layers(values: np.ndarray, t: float, problem: ProblemSpec,
                         grid: Grid2D, mode: str) -> np.ndarray:
    """Return a copy with node layers {0,1,M-1,M} set for time t."""
    M = grid.M
    X, Y = grid.mesh()
    out = np.array(values, dtype=float, copy=True)
    if mode == "exact":
        if problem.exact is not None:
            E = np.asarray(problem.exact(X, Y, t), dtype=float)
        elif problem.g_extends:
            E = np.broadcast_to(np.asarray(problem.g(X, Y, t), float), X.shape)
        else:
            raise ConfigurationError(
                "boundary_mode='exact' needs a reference solution or a g "
                "defined on the whole closure (g_extends)")
        for l in (0, 1, M - 1, M):
            out[l, :] = E[l, :]
            out[:, l] = E[:, l]
        return out
    if mode == "paper_copy":
        G = np.broadcast_to(np.asarray(problem.g(X, Y, t), float), X.shape)
        out[0, :] = G[0, :]
        out[M, :] = G[M, :]
        out[1, :] = out[0, :]
        out[M - 1, :] = out[M, :]
        out[:, 0] = G[:, 0]
        out[:, M] = G[:, M]
        out[:, 1] = out[:, 0]
        out[:, M - 1] = out[:, M]
        return out
    raise ConfigurationError(f"unknown boundary mode {mode!r}")


def _dir_coeffs(h: float, a: float, beta: float, gamma: float, theta: float) -> np.ndarray:
    """Stencil of  -(a + theta*gamma)*wide_second + theta*beta*wide_first  (no identity)."""
    return (-(a + theta * gamma) / (12.0 * h * h)) * WIDE_SECOND_W \
        + (theta * beta / (12.0 * h)) * WIDE_FIRST_W


def _toeplitz(c: np.ndarray, n: int) -> np.ndarray:
    A = np.zeros((n, n))
    for off, v in zip(range(-2, 3), c):
        A += v * np.eye(n, k=off)
    return A


class _Engine:
    """Precomputed machinery for one (problem, grid, cfg, k) combination."""

    def __init__(self, problem: ProblemSpec, grid: Grid2D, cfg: SchemeConfig, k: float):
        if grid.n_interior < 1:
            raise ConfigurationError("grid has no interior nodes")
        self.problem = problem
        self.grid = grid
        self.cfg = cfg
        self.k = k
        self.M = grid.M
        self.n = grid.n_interior
        self.X, self.Y = grid.mesh()
        self.s = +1.0 if cfg.rhs_sign == "derived" else -1.0
        self.a_mass = problem.alpha if cfg.leapfrog_alpha == "on" else 1.0
        self.diagnostics = StepDiagnostics()
        if cfg.stepper == "coupled":
            self._build_coupled()
        else:
            self._build_split()

    # -- shared helpers ----------------------------------------------------

    def _interior(self, values: np.ndarray) -> np.ndarray:
        s = self.grid.interior
        return values[s, s]

    def _apply_dir(self, cx: np.ndarray, cy: np.ndarray, U: np.ndarray) -> np.ndarray:
        """Directional five-point sums of a full field, on the interior block."""
        M = self.M
        V = (cx[0] * U[0:M - 3, 2:M - 1] + cx[1] * U[1:M - 2, 2:M - 1]
             + cx[2] * U[2:M - 1, 2:M - 1] + cx[3] * U[3:M, 2:M - 1]
             + cx[4] * U[4:M + 1, 2:M - 1])
        W = (cy[0] * U[2:M - 1, 0:M - 3] + cy[1] * U[2:M - 1, 1:M - 2]
             + cy[2] * U[2:M - 1, 2:M - 1] + cy[3] * U[2:M - 1, 3:M]
             + cy[4] * U[2:M - 1, 4:M + 1])
        return V + W

    def _apply_x(self, cx: np.ndarray, U: np.ndarray) -> np.ndarray:
        M = self.M
        return (cx[0] * U[0:M - 3, :] + cx[1] * U[1:M - 2, :]
                + cx[2] * U[2:M - 1, :] + cx[3] * U[3:M, :]
                + cx[4] * U[4:M + 1, :])[:, 2:M - 1]

    def _apply_y(self, cy: np.ndarray, U: np.ndarray) -> np.ndarray:
        M = self.M
        return (cy[0] * U[:, 0:M - 3] + cy[1] * U[:, 1:M - 2]
                + cy[2] * U[:, 2:M - 1] + cy[3] * U[:, 3:M]
                + cy[4] * U[:, 4:M + 1])[2:M - 1, :]

    def f_total(self, t: float, U: np.ndarray) -> np.ndarray:
        ux = wide_first_values(U, self.grid.hx, Axis.X)
        uy = wide_first_values(U, self.grid.hy, Axis.Y)
        p = self.problem
        return np.asarray(p.f1(self.X, self.Y, t, U, ux)
                          + p.f2(self.X, self.Y, t, U, uy), dtype=float)

    def fill(self, values: np.ndarray, t: float) -> np.ndarray:
        return fill_boundary_layers(values, t, self.problem, self.grid,
                                    self.cfg.boundary_mode)

    def _check_finite(self, values: np.ndarray, t: float) -> None:
        if not np.isfinite(values).all():
            raise BlowUpError(f"non-finite values at t={t:g}", level=t)

    # -- coupled stepper ---------------------------------------------------

    def _build_coupled(self):
        g, p, k = self.grid, self.problem, self.k
        self._coupled = {}
        for tag, theta in (("startup", k / 4.0), ("chain", k / 2.0)):
            cax = _dir_coeffs(g.hx, self.a_mass, p.beta, p.gamma, theta)
            cay = _dir_coeffs(g.hy, self.a_mass, p.beta, p.gamma, theta)
            crx = _dir_coeffs(g.hx, self.a_mass, p.beta, p.gamma, -self.s * theta)
            cry = _dir_coeffs(g.hy, self.a_mass, p.beta, p.gamma, -self.s * theta)
            # symmetric x part (wide_second only) is diagonalized; the skew
            # beta part along x is iterated, along y it sits in the bands.
            sym_x = (-(self.a_mass + theta * p.gamma) / (12 * g.hx ** 2)) * WIDE_SECOND_W
            ax_bands = PentaBands(*sym_x, n=self.n)
            ay_bands = PentaBands(*cay, n=self.n)
            solver = TensorLineSolver(ax_bands, ay_bands)
            skew = theta * p.beta / (12 * g.hx) * WIDE_FIRST_W
            skew_x = _toeplitz(skew, self.n) if p.beta != 0.0 else None
            self._coupled[tag] = dict(theta=theta, cax=cax, cay=cay,
                                      crx=crx, cry=cry, solver=solver,
                                      skew_x=skew_x)

    def _coupled_solve(self, tag: str, rhs_int: np.ndarray, frame: np.ndarray,
                       guess_int: np.ndarray, t: float):
        """Solve (I + Ax + Ay) V = rhs - frame coupling, lagging the x-skew part."""
        op = self._coupled[tag]
        rhs = rhs_int - self._apply_dir(op["cax"], op["cay"], frame)
        if op["skew_x"] is None:
            return op["solver"].solve(rhs), 1
        trace = []
        cur = guess_int
        for it in range(self.cfg.picard_max_iters):
            new = op["solver"].solve(rhs - op["skew_x"] @ cur)
            upd = float(np.abs(new - cur).max())
            trace.append(upd)
            cur = new
            if upd <= self.cfg.picard_tol * (1.0 + float(np.abs(new).max())):
                return cur, it + 1
        raise PicardError(
            f"transport lag iteration did not converge at t={t:g}", trace=trace)

    def coupled_startup(self, U0: np.ndarray) -> np.ndarray:
        """Trapezoidal half-step 0 -> k/2 with the source iterated implicitly."""
        k, cfg = self.k, self.cfg
        t0, t1 = 0.0, k / 2.0
        op = self._coupled["startup"]
        Un = self.fill(U0, t1)
        frame = Un.copy()
        frame[self.grid.interior, self.grid.interior] = 0.0
        base = (self._interior(U0) + self._apply_dir(op["crx"], op["cry"], U0)
                + (k / 4.0) * self._interior(self.f_total(t0, U0)))
        trace = []
        start = time.perf_counter()
        total_inner = 0
        cur = np.array(Un)
        for it in range(cfg.picard_max_iters):
            rhs = base + (k / 4.0) * self._interior(self.f_total(t1, cur))
            new_int, inner = self._coupled_solve("startup", rhs, frame,
                                                 self._interior(cur), t1)
            total_inner += inner
            upd = float(np.abs(new_int - self._interior(cur)).max())
            trace.append(upd)
            cur[self.grid.interior, self.grid.interior] = new_int
            if upd <= cfg.picard_tol * (1.0 + float(np.abs(new_int).max())):
                break
        else:
            raise PicardError(f"startup iteration did not converge "
                              f"(last updates {trace[-3:]})", trace=trace)
        self._check_finite(cur, t1)
        self.diagnostics.record(len(trace), trace[-1] if trace else 0.0,
                                time.perf_counter() - start)
        return cur

    def coupled_chain_step(self, base: np.ndarray, mid: np.ndarray,
                           t_mid: float) -> np.ndarray:
        """Three-level update spanning k, centered at t_mid."""
        k = self.k
        t_next = t_mid + k / 2.0
        op = self._coupled["chain"]
        Un = self.fill(base, t_next)
        frame = Un.copy()
        frame[self.grid.interior, self.grid.interior] = 0.0
        start = time.perf_counter()
        rhs = (self._interior(base) + self._apply_dir(op["crx"], op["cry"], base)
               + k * self._interior(self.f_total(t_mid, mid)))
        new_int, inner = self._coupled_solve("chain", rhs, frame,
                                             self._interior(mid), t_next)
        Un[self.grid.interior, self.grid.interior] = new_int
        self._check_finite(Un, t_next)
        self.diagnostics.record(inner, 0.0, time.perf_counter() - start)
        return Un

    # -- split (literal directional) stepper --------------------------------

    def _build_split(self):
        g, p, k = self.grid, self.problem, self.k
        th = k / 4.0
        self._split = {}
        for axis, h in ((Axis.X, g.hx), (Axis.Y, g.hy)):
            cn_bands = assemble_line_operator(g, axis, p.alpha, p.beta, p.gamma, th)
            c_rhs = _dir_coeffs(h, p.alpha, p.beta, p.gamma, -self.s * th)
            self._split[axis] = dict(cn_bands=cn_bands, cn_fact=factor(cn_bands),
                                     c_rhs=c_rhs)
        lf_bands = assemble_line_operator(g, Axis.X, self.a_mass, 0.0, 0.0, 0.0)
        self._split["leapfrog"] = dict(bands=lf_bands, fact=factor(lf_bands))
        # +(gamma*wide_second - beta*wide_first), the explicit middle term
        self._split["c_mid"] = -_dir_coeffs(g.hx, 0.0, p.beta, p.gamma, 1.0)

    def _split_cn(self, axis: Axis, U_from: np.ndarray, t_from: float) -> np.ndarray:
        """Directional trapezoidal half-step (x carries f1, y carries f2)."""
        g, p, k, cfg = self.grid, self.problem, self.k, self.cfg
        M = self.M
        t_next = t_from + k / 2.0
        op = self._split[axis]
        Un = self.fill(U_from, t_next)
        h = g.hx if axis is Axis.X else g.hy
        fsrc = p.f1 if axis is Axis.X else p.f2

        def source(t, U):
            d = wide_first_values(U, h, axis)
            return np.asarray(fsrc(self.X, self.Y, t, U, d), dtype=float)

        if axis is Axis.X:
            base = (self._interior(U_from) + self._apply_x(op["c_rhs"], U_from)
                    + (k / 4.0) * self._interior(source(t_from, U_from)))
        else:
            base = (self._interior(U_from) + self._apply_y(op["c_rhs"], U_from)
                    + (k / 4.0) * self._interior(source(t_from, U_from)))
        trace = []
        start = time.perf_counter()
        for it in range(cfg.picard_max_iters):
            rhs = base + (k / 4.0) * self._interior(source(t_next, Un))
            if axis is Axis.X:
                corr = boundary_moveout(op["cn_bands"],
                                        (Un[0, 2:M - 1], Un[1, 2:M - 1]),
                                        (Un[M - 1, 2:M - 1], Un[M, 2:M - 1]))
                new = solve_line(op["cn_fact"], rhs + corr)
            else:
                corr = boundary_moveout(op["cn_bands"],
                                        (Un[2:M - 1, 0], Un[2:M - 1, 1]),
                                        (Un[2:M - 1, M - 1], Un[2:M - 1, M]))
                new = solve_line(op["cn_fact"], rhs.T + corr).T
            upd = float(np.abs(new - self._interior(Un)).max())
            trace.append(upd)
            Un[self.grid.interior, self.grid.interior] = new
            if upd <= cfg.picard_tol * (1.0 + float(np.abs(new).max())):
                break
        else:
            raise PicardError(
                f"directional implicit step along {axis.name} did not "
                f"converge at t={t_next:g} (last updates {trace[-3:]})", trace=trace)
        self._check_finite(Un, t_next)
        self.diagnostics.record(len(trace), trace[-1], time.perf_counter() - start)
        return Un

    def split_leapfrog(self, U_half_prev: np.ndarray, U_int: np.ndarray,
                       t_n: float) -> np.ndarray:
        """Explicit-midpoint x-direction update spanning k."""
        g, p, k = self.grid, self.problem, self.k
        M = self.M
        t_next = t_n + k / 2.0
        op = self._split["leapfrog"]
        Un = self.fill(U_half_prev, t_next)
        ux = wide_first_values(U_int, g.hx, Axis.X)
        fmid = np.asarray(p.f1(self.X, self.Y, t_n, U_int, ux), dtype=float)
        rhs = (self._interior(U_half_prev)
               + self._apply_x(_dir_coeffs(g.hx, self.a_mass, 0.0, 0.0, 0.0), U_half_prev)
               + k * self._apply_x(self._split["c_mid"], U_int)
               + k * self._interior(fmid))
        if not np.isfinite(rhs).all():
            raise BlowUpError(f"non-finite right-hand side at t={t_next:g}",
                              level=t_next)
        corr = boundary_moveout(op["bands"],
                                (Un[0, 2:M - 1], Un[1, 2:M - 1]),
                                (Un[M - 1, 2:M - 1], Un[M, 2:M - 1]))
        start = time.perf_counter()
        Un[self.grid.interior, self.grid.interior] = solve_line(op["fact"], rhs + corr)
        self._check_finite(Un, t_next)
        self.diagnostics.record(0, 0.0, time.perf_counter() - start)
        return Un


# ---------------------------------------------------------------------------
# public operations (spec surface); each wraps an engine call


def init_half_step(U0: Field, problem: ProblemSpec, k: float,
                   cfg: SchemeConfig = SchemeConfig()) -> Field:
    """First half-step U^0 -> U^{1/2}.

    coupled: full-operator trapezoidal half-step; split: the literal
    x-direction half-step carrying f1.
    """
    eng = _Engine(problem, U0.grid, cfg, k)
    if cfg.stepper == "coupled":
        return Field(U0.grid, eng.coupled_startup(np.array(U0.values)))
    return Field(U0.grid, eng._split_cn(Axis.X, np.array(U0.values), 0.0))


def cn_y_step(U_from: Field, t_from: float, k: float, problem: ProblemSpec,
              cfg: SchemeConfig = SchemeConfig()) -> Field:
    """Directional y-trapezoid half-step t_from -> t_from + k/2 (carries f2)."""
    eng = _Engine(problem, U_from.grid,
                  cfg if cfg.stepper == "split" else replace(cfg, stepper="split"), k)
    return Field(U_from.grid, eng._split_cn(Axis.Y, np.array(U_from.values), t_from))


def cn_x_step(U_from: Field, t_from: float, k: float, problem: ProblemSpec,
              cfg: SchemeConfig = SchemeConfig()) -> Field:
    """Directional x-trapezoid half-step t_from -> t_from + k/2 (carries f1)."""
    eng = _Engine(problem, U_from.grid,
                  cfg if cfg.stepper == "split" else replace(cfg, stepper="split"), k)
    return Field(U_from.grid, eng._split_cn(Axis.X, np.array(U_from.values), t_from))


def leapfrog_x_step(U_half_prev: Field, U_int: Field, t_n: float, k: float,
                    problem: ProblemSpec, cfg: SchemeConfig = SchemeConfig()) -> Field:
    """Explicit-midpoint x-direction update t_{n-1/2} -> t_{n+1/2}."""
    U_half_prev.same_grid(U_int)
    eng = _Engine(problem, U_int.grid,
                  cfg if cfg.stepper == "split" else replace(cfg, stepper="split"), k)
    return Field(U_int.grid, eng.split_leapfrog(np.array(U_half_prev.values),
                                                np.array(U_int.values), t_n))


def advance(state: SchemeState, problem: ProblemSpec, k: float,
            cfg: SchemeConfig = SchemeConfig()) -> SchemeState:
    """Advance the (t_{n-1/2}, t_n) window one full step to (t_{n+1/2}, t_{n+1})."""
    eng = _Engine(problem, state.U_int.grid, cfg, k)
    return _advance_with_engine(eng, state)


def _advance_with_engine(eng: _Engine, state: SchemeState) -> SchemeState:
    n, k = state.n, eng.k
    half = np.array(state.U_half.values)
    mid = np.array(state.U_int.values)
    if eng.cfg.stepper == "coupled":
        new_half = eng.coupled_chain_step(half, mid, n * k)
        new_int = eng.coupled_chain_step(mid, new_half, (n + 0.5) * k)
    else:
        new_half = eng.split_leapfrog(half, mid, n * k)
        new_int = eng._split_cn(Axis.Y, new_half, (n + 0.5) * k)
    g = state.U_int.grid
    return SchemeState(n=n + 1, U_half=Field(g, new_half), U_int=Field(g, new_int))


@dataclass
class SolutionRecord:
    """Per-integer-level norms, running maxima, and the final field."""

    problem_name: str
    M: int
    k: float
    N: int
    cfg: SchemeConfig
    times: list = dc_field(default_factory=list)
    l2_u: list = dc_field(default_factory=list)
    l2_U: list = dc_field(default_factory=list)
    l2_err: list = dc_field(default_factory=list)
    sup_u: float = 0.0
    sup_U: float = 0.0
    sup_err: float = 0.0
    sup_h2_u: float = 0.0
    sup_h2_U: float = 0.0
    sup_h2_err: float = 0.0
    final: Optional[Field] = None
    snapshots: dict = dc_field(default_factory=dict)
    diagnostics: Optional[StepDiagnostics] = None
    failed: bool = False
    failure: str = ""


def run(problem: ProblemSpec, grid: Grid2D, cfg: SchemeConfig = SchemeConfig(),
        T: Optional[float] = None, dump_times=()) -> SolutionRecord:
    """Integrate to T, tracking norms over the integer levels n = 0..N."""
    T = problem.T if T is None else float(T)
    tg = resolve_time_grid(grid, cfg, T)
    k, N = tg.k, tg.N
    eng = _Engine(problem, grid, cfg, k)
    rec = SolutionRecord(problem_name=problem.name, M=grid.M, k=k, N=N, cfg=cfg,
                         diagnostics=eng.diagnostics)
    X, Y = grid.mesh()
    have_exact = problem.exact is not None
    max_u, max_U, max_e = RunningMax(), RunningMax(), RunningMax()
    max_h2u, max_h2U, max_h2e = RunningMax(), RunningMax(), RunningMax()
    dump_left = sorted(float(t) for t in dump_times)

    def observe(level_n: int, values: np.ndarray):
        t = level_n * k
        f = Field(grid, values)
        rec.times.append(t)
        lU = l2_norm(f)
        rec.l2_U.append(lU)
        max_U.update(lU)
        max_h2U.update(h2_norm(f, problem.alpha).h2)
        if have_exact:
            ex = Field(grid, np.asarray(problem.exact(X, Y, t), float))
            err = Field(grid, ex.values - f.values)
            lu, le = l2_norm(ex), l2_norm(err)
            rec.l2_u.append(lu)
            rec.l2_err.append(le)
            max_u.update(lu)
            max_e.update(le)
            max_h2u.update(h2_norm(ex, problem.alpha).h2)
            max_h2e.update(h2_norm(err, problem.alpha).h2)
        while dump_left and t >= dump_left[0] - 0.25 * k:
            rec.snapshots[dump_left.pop(0)] = (t, f)

    U0 = sample(grid, lambda X_, Y_, t_: problem.u0(X_, Y_), 0.0).values
    try:
        observe(0, U0)
        if cfg.stepper == "coupled":
            half = eng.coupled_startup(np.array(U0))
            cur = eng.coupled_chain_step(np.array(U0), half, 0.5 * k)
        else:
            half = eng._split_cn(Axis.X, np.array(U0), 0.0)
            cur = eng._split_cn(Axis.Y, half, 0.5 * k)
        observe(1, cur)
        for n in range(1, N):
            if cfg.stepper == "coupled":
                new_half = eng.coupled_chain_step(half, cur, n * k)
                new_int = eng.coupled_chain_step(cur, new_half, (n + 0.5) * k)
            else:
                new_half = eng.split_leapfrog(half, cur, n * k)
                new_int = eng._split_cn(Axis.Y, new_half, (n + 0.5) * k)
            half, cur = new_half, new_int
            observe(n + 1, cur)
        rec.final = Field(grid, cur)
    except (BlowUpError, PicardError) as exc:
        rec.failed = True
        rec.failure = f"{type(exc).__name__}: {exc}"
    rec.sup_u, rec.sup_U, rec.sup_err = max_u.max, max_U.max, max_e.max
    rec.sup_h2_u, rec.sup_h2_U, rec.sup_h2_err = max_h2u.max, max_h2U.max, max_h2e.max
    return rec
