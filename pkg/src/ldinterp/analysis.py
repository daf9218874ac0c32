"""Lebesgue constants and convergence experiments.

The Lebesgue function ``sum_A |L_A(x, y)|`` is evaluated on tensor grids.
Writing ``L_A(x, y) = w_A sum_j T̂_j(y) T̂_j(y_A) S_j(x; x_A)`` with
``S_j(x; x_A) = sum_i M_ij T̂_i(x) T̂_i(x_A)`` turns the whole grid into a
batch of small matrix products, one per grid column.  Nodes split by the
parity of their grid indices so each product only touches nodes that exist.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, Sequence

import numpy as np

from . import _backend
from .chebyshev import cgl_points, cheb_t_hat_matrix
from .domain import UNIT_SQUARE, AffineMap, Rect, affine_map
from .errors import DomainError
from .interp import interpolate, mask
from .nodes import IndexVariant, LissajousParams, NodeSet, format_real, generate_nodes

__all__ = [
    "EvaluationGrid",
    "ExperimentRecord",
    "ExperimentResult",
    "FIGURES",
    "LebesgueEstimate",
    "OMEGA1",
    "OMEGA2",
    "Rect",
    "Schedule",
    "TestFunction",
    "affine_map",
    "budget_comparison",
    "error_grid",
    "interpolation_error",
    "lebesgue_constant",
    "lebesgue_experiment",
    "lebesgue_function",
    "max_error_experiment",
    "n_list_for_budget",
    "pn_schedule",
    "run_figure",
    "test_function",
]

log = logging.getLogger(__name__)

OMEGA1 = Rect(0.0, 1.0, 0.0, 1.0)
OMEGA2 = Rect(0.0, 2.0, 0.0, 1.0)

DEFAULT_LEBESGUE_GRID = 201
ERROR_GRID_BASE = 100


@dataclass(frozen=True)
class EvaluationGrid:
    """Uniform ``nx x ny`` tensor grid on ``rect``."""

    rect: Rect
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise DomainError(f"grid sizes must be positive, got {self.nx}x{self.ny}")

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.rect.x0, self.rect.x1, self.nx) if self.nx > 1 else np.array([self.rect.x0])

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.rect.y0, self.rect.y1, self.ny) if self.ny > 1 else np.array([self.rect.y0])

    @property
    def points(self) -> np.ndarray:
        """All ``nx * ny`` points, x varying slowest; shape ``(nx * ny, 2)``."""
        gx, gy = np.meshgrid(self.xs, self.ys, indexing="ij")
        return np.column_stack([gx.ravel(), gy.ravel()])

    @classmethod
    def square(cls, size: int, rect: Rect = UNIT_SQUARE) -> "EvaluationGrid":
        return cls(rect, size, size)


def error_grid(rect: Rect, base: int = ERROR_GRID_BASE) -> EvaluationGrid:
    """Uniform grid with ``base`` points along the shorter side, same spacing along the longer."""
    short = min(rect.width, rect.height)
    return EvaluationGrid(rect, int(round(base * rect.width / short)), int(round(base * rect.height / short)))


# --- Lebesgue constant -------------------------------------------------------


@dataclass(frozen=True)
class LebesgueEstimate:
    value: float
    argmax: tuple
    grid_shape: tuple

    def __float__(self):
        return self.value


def _parity_blocks(nodeset: NodeSet):
    """Per parity, the x/y grid indices present and the weight matrix ``W[b, a]``."""
    params = nodeset.params
    gi, gj, w = nodeset.grid_i, nodeset.grid_j, nodeset.weights
    blocks = []
    for par in (0, 1):
        a_idx = np.arange(par, params.m + 1, 2)
        b_idx = np.arange(par, params.n + 1, 2)
        if a_idx.size == 0 or b_idx.size == 0:
            continue
        W = np.zeros((b_idx.size, a_idx.size))
        sel = gi % 2 == par
        if np.any(gj[sel] % 2 != par):
            raise AssertionError("node grid indices must share parity")
        W[(gj[sel] - par) // 2, (gi[sel] - par) // 2] = w[sel]
        blocks.append((a_idx, b_idx, W))
    return blocks


def lebesgue_function(params: LissajousParams, xs, ys, variant=IndexVariant.GAMMA_L,
                      backend: str | None = None, nodeset: NodeSet | None = None) -> np.ndarray:
    """``sum_A |L_A(x, y)|`` on the tensor grid ``xs x ys`` in ``[-1, 1]^2``; shape ``(len(xs), len(ys))``."""
    xs = np.ascontiguousarray(np.ravel(xs), dtype=float)
    ys = np.ascontiguousarray(np.ravel(ys), dtype=float)
    if xs.size == 0 or ys.size == 0:
        raise DomainError("evaluation grid is empty")
    kern = _backend.get_kernels(backend) if backend else _backend.kernels
    if nodeset is None:
        nodeset = generate_nodes(params)
    M = mask(params, variant)
    rows, cols = M.shape
    zx = cgl_points(params.m)
    zy = cgl_points(params.n)
    txg = cheb_t_hat_matrix(xs, rows - 1)
    tyg = cheb_t_hat_matrix(ys, cols - 1)
    out = np.zeros((xs.size, ys.size))
    for a_idx, b_idx, W in _parity_blocks(nodeset):
        txa = cheb_t_hat_matrix(zx[a_idx], rows - 1)
        tyb = cheb_t_hat_matrix(zy[b_idx], cols - 1)
        S = np.empty((xs.size, cols, a_idx.size))
        for j in range(cols):
            np.matmul(txg * M[:, j], txa.T, out=S[:, j, :])
        Q = np.ascontiguousarray((tyg[:, None, :] * tyb[None, :, :]).reshape(-1, cols))
        kern.lebesgue_tensor(S, Q, np.ascontiguousarray(W.ravel()), out, b_idx.size)
    return out


def _default_axes(params: LissajousParams, size: int):
    g = np.linspace(-1.0, 1.0, size)
    xs = np.unique(np.concatenate([g, cgl_points(params.m)]))
    ys = np.unique(np.concatenate([g, cgl_points(params.n)]))
    return xs, ys


def lebesgue_constant(params: LissajousParams, grid: EvaluationGrid | int | None = None,
                      variant=IndexVariant.GAMMA_L, backend: str | None = None) -> LebesgueEstimate:
    """Estimate ``max sum_A |L_A|`` over a grid on ``[-1, 1]^2``.

    Parameters
    ----------
    params : LissajousParams
    grid : EvaluationGrid or int, optional
        An explicit grid is used as given.  An integer ``G`` (default 201)
        selects a ``G x G`` uniform grid merged with the Chebyshev-Gauss-Lobatto
        lines of both coordinates, which contain every node and the corners.
    variant : IndexVariant
    backend : {"compiled", "python"}, optional

    Returns
    -------
    LebesgueEstimate
        Maximum value, the grid point attaining it and the grid shape.
    """
    if grid is None:
        grid = DEFAULT_LEBESGUE_GRID
    if isinstance(grid, EvaluationGrid):
        to_unit = AffineMap(grid.rect).to_unit
        xs = np.atleast_1d(to_unit(grid.xs, 0.0)[0])
        ys = np.atleast_1d(to_unit(0.0, grid.ys)[1])
    else:
        if int(grid) < 1:
            raise DomainError(f"grid size must be positive, got {grid}")
        xs, ys = _default_axes(params, int(grid))
    values = lebesgue_function(params, xs, ys, variant=variant, backend=backend)
    k = int(np.argmax(values))
    iu, iv = divmod(k, values.shape[1])
    return LebesgueEstimate(float(values[iu, iv]), (float(xs[iu]), float(ys[iv])), values.shape)


# --- schedules and test functions --------------------------------------------


class Schedule(enum.Enum):
    ONE = "one"
    NPLUS1 = "nplus1"
    SQRTN = "sqrtn"


def pn_schedule(schedule, n: int) -> int:
    """Parameter ``p_n``: ``1``, ``n + 1`` or ``floor(sqrt(n)) n + 1``."""
    schedule = Schedule(schedule)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if schedule is Schedule.ONE:
        return 1
    if schedule is Schedule.NPLUS1:
        return n + 1
    return math.isqrt(n) * n + 1


class TestFunction(enum.Enum):
    __test__ = False

    F1 = "f1"
    F2 = "f2"
    F3 = "f3"


def _gauss_bumps(x, y):
    sx = (5.0 - 10.0 * x) ** 2
    sy = (5.0 - 10.0 * y) ** 2
    return np.exp(-sx / 2.0) + 0.75 * np.exp(-sy / 2.0) + 0.75 * np.exp(-(sx + sy) / 2.0)


def _ramp_step(x, y):
    ramp = np.where((x >= 0.25) & (x < 0.75), x - 0.25, 0.0)
    step = np.where(x >= 0.75, 1.0, 0.0)
    return (ramp + step) * np.exp(-((y - 0.5) ** 2) / 2.0)


_FUNCTIONS = {
    TestFunction.F1: _gauss_bumps,
    TestFunction.F2: _ramp_step,
    TestFunction.F3: lambda x, y: _ramp_step(y, x),
}


def test_function(fid, x, y):
    """Evaluate a built-in test function (vectorized)."""
    f = _FUNCTIONS[TestFunction(fid)]
    value = f(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    return float(value) if np.ndim(value) == 0 else value


test_function.__test__ = False


# --- experiments ---------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentRecord:
    n: int
    p: int
    nodes: int
    value: float


@dataclass
class ExperimentResult:
    """One series ``(n, p_n, |LD|, value)`` per schedule."""

    kind: str
    series: dict
    metadata: dict = field(default_factory=dict)

    def records(self, schedule) -> list:
        return self.series[Schedule(schedule)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["schedule", "n", "p", "nodes", "value"])
        for schedule, records in self.series.items():
            for r in records:
                writer.writerow([schedule.value, r.n, r.p, r.nodes, format_real(r.value)])
        return buf.getvalue()

    def sidecar(self, timestamp: str | None = None) -> dict:
        if timestamp is None:
            timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return {"kind": self.kind, **self.metadata, "timestamp": timestamp}

    def sidecar_json(self, timestamp: str | None = None) -> str:
        return json.dumps(self.sidecar(timestamp), indent=2) + "\n"


def _num_threads() -> int:
    raw = os.environ.get("LDINTERP_NUM_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise DomainError(f"LDINTERP_NUM_THREADS must be an integer, got {raw!r}") from None


def _run_series(schedule, n_list: Sequence[int], job: Callable[[LissajousParams], float],
                threads: int | None = None) -> list:
    """Evaluate ``job`` for each valid ``n``; the result is sorted by ``n``."""
    jobs = []
    for n in sorted(set(int(n) for n in n_list)):
        p = pn_schedule(schedule, n) if isinstance(schedule, (Schedule, str)) else int(schedule(n))
        if n < 1 or p < 1 or math.gcd(n, n + p) != 1:
            log.info("skipping n=%d, p=%d: n and n+p are not coprime", n, p)
            continue
        jobs.append(LissajousParams(n, p))
    threads = threads or _num_threads()
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(job, jobs))
    else:
        values = [job(params) for params in jobs]
    return [ExperimentRecord(q.n, q.p, q.node_count, float(v)) for q, v in zip(jobs, values)]


def lebesgue_experiment(schedules=tuple(Schedule), n_list=range(1, 51), grid: int = DEFAULT_LEBESGUE_GRID,
                        backend: str | None = None, threads: int | None = None) -> ExperimentResult:
    """Lebesgue constants along each schedule."""

    def job(params):
        return lebesgue_constant(params, grid, backend=backend).value

    series = {Schedule(s): _run_series(Schedule(s), n_list, job, threads) for s in schedules}
    meta = {"grid": [grid, grid], "grid_augmented": "chebyshev-gauss-lobatto lines", "rect": [-1.0, 1.0, -1.0, 1.0],
            "n_list": sorted(set(int(n) for n in n_list))}
    return ExperimentResult("lebesgue", series, meta)


def interpolation_error(params: LissajousParams, f: Callable, rect: Rect, grid: EvaluationGrid | None = None) -> float:
    """Max ``|L f - f|`` over a uniform grid on ``rect``."""
    grid = grid or error_grid(rect)
    interp = interpolate(params, f, rect)
    xs, ys = grid.xs, grid.ys
    approx = interp.on_grid(xs, ys)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    exact = np.broadcast_to(np.asarray(f(gx, gy), dtype=float), gx.shape)
    return float(np.max(np.abs(approx - exact)))


def max_error_experiment(fid, rect: Rect, schedule, n_list, grid: EvaluationGrid | None = None,
                         threads: int | None = None) -> ExperimentResult:
    """Interpolation error of a test function along one schedule.

    ``fid`` may be a `TestFunction` id or any vectorized callable.
    """
    f = fid if callable(fid) else _FUNCTIONS[TestFunction(fid)]
    grid = grid or error_grid(rect)

    def job(params):
        return interpolation_error(params, f, rect, grid)

    schedule = Schedule(schedule)
    records = _run_series(schedule, n_list, job, threads)
    meta = {
        "function": TestFunction(fid).value if not callable(fid) else getattr(fid, "__name__", "custom"),
        "rect": list(rect.as_tuple()),
        "grid": [grid.nx, grid.ny],
        "n_list": sorted(set(int(n) for n in n_list)),
    }
    return ExperimentResult("max_error", {schedule: records}, meta)


def node_count(n: int, p: int) -> int:
    return (n + p + 1) * (n + 1) // 2


def n_list_for_budget(schedule, max_nodes: int) -> list:
    """All ``n >= 1`` whose node count along ``schedule`` stays within ``max_nodes``."""
    out = []
    n = 1
    while node_count(n, pn_schedule(schedule, n)) <= max_nodes:
        out.append(n)
        n += 1
    return out


def budget_comparison(result: ExperimentResult, first, second) -> dict:
    """Compare two series at their largest common node budget.

    The budget is the smaller of the two largest node counts; each series
    contributes its record with the most nodes not exceeding it.
    """
    a = result.records(first)
    b = result.records(second)
    if not a or not b:
        raise DomainError("both series need at least one record")
    budget = min(a[-1].nodes, b[-1].nodes)
    ra = max((r for r in a if r.nodes <= budget), key=lambda r: r.nodes)
    rb = max((r for r in b if r.nodes <= budget), key=lambda r: r.nodes)
    return {"budget": budget, Schedule(first): ra, Schedule(second): rb}


# figure id -> (test function, rect); figure 5 is the Lebesgue series
FIGURES = {
    "5": None,
    "6a": (TestFunction.F1, OMEGA1),
    "6b": (TestFunction.F1, OMEGA2),
    "7a": (TestFunction.F2, OMEGA1),
    "7b": (TestFunction.F3, OMEGA1),
}

#: node budget of the error figures
ERROR_NODE_BUDGET = 2000


def run_figure(figure: str, max_nodes: int = ERROR_NODE_BUDGET, n_max: int = 50,
               threads: int | None = None, backend: str | None = None) -> ExperimentResult:
    """Data series of one figure: Lebesgue constants ("5") or interpolation errors."""
    if figure not in FIGURES:
        raise DomainError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")
    if figure == "5":
        return lebesgue_experiment(n_list=range(1, n_max + 1), threads=threads, backend=backend)
    fid, rect = FIGURES[figure]
    grid = error_grid(rect)
    series = {}
    for schedule in Schedule:
        series[schedule] = max_error_experiment(fid, rect, schedule, n_list_for_budget(schedule, max_nodes),
                                                grid, threads).records(schedule)
    meta = {"function": fid.value, "rect": list(rect.as_tuple()), "grid": [grid.nx, grid.ny],
            "max_nodes": max_nodes}
    return ExperimentResult("max_error", series, meta)
