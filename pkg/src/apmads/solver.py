"""Optimization loops for adaptive-precision direct search.

One iteration: an optional search step re-estimates cached points that
plausibly beat the incumbent, the poll step evaluates a positive basis of
mesh candidates around the (possibly re-centred) incumbent to the target
standard deviation rho(r), and the outcome's p-value drives the frame and
precision updates. A fixed-precision baseline shares the mesh mechanics
but treats one observation per point as exact.

A run is strictly sequential. Independent runs (across seeds, problems or
variants) share no state and may execute in parallel.
"""

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .blackbox import DrawLedger, NoisyBlackbox, Point, as_point
from .estimation import EvaluationCache, sigma_to_reach
from .exceptions import (
    ConfigError,
    InfeasibleStartError,
    InvalidInputError,
    InvalidSigmaError,
)
from .mesh import IterationStatus, PollSet, generate_poll, update_frame
from .normal import p_value, phi_inv
from .precision import PrecisionPolicy, RhoParams, rho, update_r
from .problems import ProblemDef

VARIANT_DEFAULTS = {
    "mp": {"beta_l": 0.0003, "beta_u": 0.997, "search_enabled": False},
    "dp": {"beta_l": 0.15, "beta_u": 0.85, "search_enabled": True},
}


@dataclass
class SolverConfig:
    """Run parameters. Unset policy fields default per variant.

    The monotone variant disables the search step and uses the tight
    comparison thresholds (0.03%, 99.7%); the dynamic variant enables it
    and uses (15%, 85%). A disabled search requires sigma_min = 0, since
    the poll alone can then never push an estimate below sigma_min.
    """

    variant: str = "dp"
    rho_params: RhoParams = field(default_factory=RhoParams)
    beta_l: float | None = None
    beta_u: float | None = None
    dp_decrease_threshold: float = 0.05
    search_enabled: bool | None = None
    r_s: float = -5.0
    tau: float = 0.25
    delta_p0: float = 1.0
    r_init: float = 0.0
    stop_delta_p: float | None = None
    stop_draws: float = math.inf
    max_iterations: int = 1_000_000
    seed: int = 0

    def __post_init__(self):
        if self.variant not in VARIANT_DEFAULTS:
            raise ConfigError(f"variant must be 'mp' or 'dp', got {self.variant!r}")
        defaults = VARIANT_DEFAULTS[self.variant]
        if self.beta_l is None:
            self.beta_l = defaults["beta_l"]
        if self.beta_u is None:
            self.beta_u = defaults["beta_u"]
        if self.search_enabled is None:
            self.search_enabled = defaults["search_enabled"]
        if not self.search_enabled and self.rho_params.sigma_min != 0.0:
            raise ConfigError(
                "sigma_min must be 0 when the search step is disabled "
                f"(got sigma_min={self.rho_params.sigma_min})"
            )
        if not 0.0 < self.tau < 1.0:
            raise ConfigError(f"tau must lie in (0, 1), got {self.tau}")
        if not self.delta_p0 > 0:
            raise ConfigError(f"delta_p0 must be positive, got {self.delta_p0}")
        if self.stop_delta_p is not None and not self.stop_delta_p > 0:
            raise ConfigError(f"stop_delta_p must be positive, got {self.stop_delta_p}")
        if self.stop_draws < 0:
            raise ConfigError(f"stop_draws must be >= 0, got {self.stop_draws}")
        self.policy()  # validates the beta ranges

    def policy(self) -> PrecisionPolicy:
        return PrecisionPolicy(
            variant=self.variant,
            beta_l=self.beta_l,
            beta_u=self.beta_u,
            dp_decrease_threshold=self.dp_decrease_threshold,
            r=self.r_init,
        )


@dataclass
class IterationRecord:
    """One row of the run log.

    ``delta_p``, ``delta_m`` and ``r`` are the values used during the
    iteration; ``draws`` and the incumbent fields are taken at its end.
    """

    k: int
    draws: float
    incumbent: Point
    f_inc: float
    sig_inc: float
    delta_p: float
    delta_m: float
    r: float
    p: float
    status: IterationStatus
    cache_size: int


@dataclass
class RunOutput:
    """Result of one run: the incumbent, the full log and the run state."""

    incumbent: Point
    records: list[IterationRecord]
    cache: EvaluationCache
    ledger: DrawLedger


def _tighten(cache, blackbox, x, sigma_target, rng) -> None:
    # One observation per point per poll: if the exact sigma solving the
    # target is clamped at sigma_max, the next iteration resumes tightening.
    hist = cache.history(x)
    if hist is not None and not hist.feasible:
        return
    _, sigk = cache.estimate(x)
    if sigk <= sigma_target:
        return
    sigma = sigma_to_reach(sigk, sigma_target, blackbox.sigma_max)
    if sigma is None:
        return
    cache.record(x, blackbox.observe(x, sigma, rng))


def poll_step(
    center: Point,
    delta_p: float,
    r: float,
    rho_params: RhoParams,
    cache: EvaluationCache,
    blackbox: NoisyBlackbox,
    rng,
) -> tuple[Point | None, IterationStatus, PollSet]:
    """One poll around ``center`` at precision target rho(r).

    The center and every feasible candidate whose estimate is looser than
    the target receive new observations. Returns the best candidate (None
    exactly when no candidate is feasible), the iteration status, and the
    generated poll set.
    """
    sigma_target = rho(rho_params, r)
    poll = generate_poll(center, delta_p, rng)
    _tighten(cache, blackbox, center, sigma_target, rng)
    for x in poll.points:
        _tighten(cache, blackbox, x, sigma_target, rng)

    best = None
    best_f = math.inf
    for x in poll.points:
        f, _ = cache.estimate(x)
        if f < best_f:
            best, best_f = x, f
    if best is None:
        return None, IterationStatus.BARRIER, poll
    f_center, _ = cache.estimate(center)
    if best_f < f_center:
        return best, IterationStatus.SUCCESS, poll
    return best, IterationStatus.FAILURE, poll


def search_step(
    cache: EvaluationCache,
    incumbent: Point,
    r: float,
    rho_params: RhoParams,
    r_s: float,
    tau: float,
    blackbox: NoisyBlackbox,
    rng,
    enabled: bool = True,
) -> Point:
    """Re-estimate promising cached points, then return the cache minimiser.

    A cached point qualifies when the plausibility that it beats the
    incumbent is at least ``tau`` on the pre-search estimates; each
    qualifying point receives one observation at rho(r - r_s). The
    incumbent compares against itself with plausibility exactly 0.5, so
    for tau <= 0.5 its own estimate is re-audited every call; this is what
    flushes out incumbents whose low estimates were lucky noise. Disabled,
    the step returns the incumbent untouched.
    """
    if not enabled or not cache.has_incumbent:
        return incumbent
    f_inc, sig_inc = cache.estimate(incumbent)
    if not math.isfinite(f_inc):
        return incumbent
    sigma_s = rho(rho_params, r - r_s)
    fk, sigk, defined = cache.estimate_arrays()
    idx = np.flatnonzero(defined)
    if idx.size == 0:
        return incumbent
    # p_value(x, incumbent) >= tau is equivalent to this z threshold
    z = (f_inc - fk[idx]) / np.hypot(sigk[idx], sig_inc)
    selected = idx[z >= phi_inv(tau)]
    for i in selected:
        x = cache.point_at(int(i))
        cache.record(x, blackbox.observe(x, sigma_s, rng))
    return cache.incumbent()


def run(problem: ProblemDef, config: SolverConfig, iteration_hook=None) -> RunOutput:
    """Adaptive-precision minimisation of ``problem``.

    Stops when the frame size falls below the stopping threshold (the
    problem default unless the config overrides it), the cumulative draw
    budget is exhausted, or the iteration cap is hit. ``iteration_hook``,
    when given, is called after each iteration with
    (record, poll_set, poll_center, cache); it exists for validation
    instrumentation and does not affect the run.
    """
    if config.rho_params.sigma_max > problem.sigma_max:
        raise ConfigError(
            f"rho sigma_max {config.rho_params.sigma_max} exceeds the problem's "
            f"observable cap {problem.sigma_max}"
        )
    blackbox = problem.blackbox()
    start = as_point(problem.start)
    if not blackbox.feasible(start):
        raise InfeasibleStartError(f"start point {start} is infeasible")

    rng = np.random.default_rng(config.seed)
    cache = EvaluationCache()
    policy = config.policy()
    delta_p = config.delta_p0
    stop_delta_p = (
        config.stop_delta_p if config.stop_delta_p is not None else problem.stop_delta_p
    )
    records: list[IterationRecord] = []
    incumbent = start
    k = 1
    while (
        delta_p >= stop_delta_p
        and blackbox.ledger.total_draws < config.stop_draws
        and k <= config.max_iterations
    ):
        r = policy.r
        if config.search_enabled and cache.has_incumbent:
            x_s = search_step(
                cache, incumbent, r, config.rho_params, config.r_s, config.tau,
                blackbox, rng,
            )
        else:
            x_s = incumbent
        x_c, status, poll = poll_step(
            x_s, delta_p, r, config.rho_params, cache, blackbox, rng
        )
        if status is IterationStatus.BARRIER:
            p = 0.0
            new_r = r
        else:
            p = p_value(cache, x_c, x_s)
            new_r = update_r(policy, p)
        new_delta_p = update_frame(delta_p, status, p, policy.beta_l, policy.beta_u)

        incumbent = cache.incumbent()
        f_inc, sig_inc = cache.estimate(incumbent)
        record = IterationRecord(
            k=k,
            draws=blackbox.ledger.total_draws,
            incumbent=incumbent,
            f_inc=f_inc,
            sig_inc=sig_inc,
            delta_p=delta_p,
            delta_m=poll.delta_m,
            r=r,
            p=p,
            status=status,
            cache_size=len(cache),
        )
        records.append(record)
        if iteration_hook is not None:
            iteration_hook(record, poll, x_s, cache)
        policy.r = new_r
        delta_p = new_delta_p
        k += 1
    return RunOutput(incumbent=incumbent, records=records, cache=cache, ledger=blackbox.ledger)


def _observe_once(cache, blackbox, x, sigma, rng) -> None:
    if cache.history(x) is not None:
        return
    cache.record(x, blackbox.observe(x, sigma, rng))


def run_fixed_precision_baseline(
    problem: ProblemDef, sigma_fixed: float, config: SolverConfig
) -> RunOutput:
    """Plain direct search treating one observation per point as exact.

    Every point is evaluated once at ``sigma_fixed``; success means strict
    decrease of the single-observation values, doubling the frame, and any
    other outcome halves it. Shares the stopping rules and log format with
    the adaptive runs (the precision column is constantly 0 and the p
    column records 1.0 on success, 0.0 otherwise).
    """
    if not 0.0 < sigma_fixed <= problem.sigma_max:
        raise InvalidSigmaError(
            f"sigma_fixed must lie in (0, {problem.sigma_max}], got {sigma_fixed}"
        )
    blackbox = problem.blackbox()
    start = as_point(problem.start)
    if not blackbox.feasible(start):
        raise InfeasibleStartError(f"start point {start} is infeasible")

    rng = np.random.default_rng(config.seed)
    cache = EvaluationCache()
    delta_p = config.delta_p0
    stop_delta_p = (
        config.stop_delta_p if config.stop_delta_p is not None else problem.stop_delta_p
    )
    records: list[IterationRecord] = []
    incumbent = start
    k = 1
    while (
        delta_p >= stop_delta_p
        and blackbox.ledger.total_draws < config.stop_draws
        and k <= config.max_iterations
    ):
        _observe_once(cache, blackbox, incumbent, sigma_fixed, rng)
        poll = generate_poll(incumbent, delta_p, rng)
        for x in poll.points:
            _observe_once(cache, blackbox, x, sigma_fixed, rng)

        best = None
        best_f = math.inf
        for x in poll.points:
            f, _ = cache.estimate(x)
            if f < best_f:
                best, best_f = x, f
        if best is None:
            status = IterationStatus.BARRIER
        elif best_f < cache.estimate(incumbent)[0]:
            status = IterationStatus.SUCCESS
        else:
            status = IterationStatus.FAILURE

        p = 1.0 if status is IterationStatus.SUCCESS else 0.0
        new_delta_p = 2.0 * delta_p if status is IterationStatus.SUCCESS else delta_p / 2.0

        incumbent = cache.incumbent()
        f_inc, sig_inc = cache.estimate(incumbent)
        records.append(
            IterationRecord(
                k=k,
                draws=blackbox.ledger.total_draws,
                incumbent=incumbent,
                f_inc=f_inc,
                sig_inc=sig_inc,
                delta_p=delta_p,
                delta_m=poll.delta_m,
                r=0.0,
                p=p,
                status=status,
                cache_size=len(cache),
            )
        )
        delta_p = new_delta_p
        k += 1
    return RunOutput(incumbent=incumbent, records=records, cache=cache, ledger=blackbox.ledger)


# --- run-log serialisation ---------------------------------------------------
#
# Fixed header: k,draws,inc0..inc{n-1},f_inc,sig_inc,delta_p,delta_m,r,p,status,
# cache_size. Floats use 17 significant digits so a parsed log replays the
# original values exactly.

_FIXED_COLUMNS_AFTER_COORDS = 8


def _fmt(x: float) -> str:
    return format(x, ".17g")


def log_header(dimension: int) -> str:
    coords = ",".join(f"inc{i}" for i in range(dimension))
    return f"k,draws,{coords},f_inc,sig_inc,delta_p,delta_m,r,p,status,cache_size"


def format_record(rec: IterationRecord) -> str:
    coords = ",".join(_fmt(c) for c in rec.incumbent)
    return (
        f"{rec.k},{_fmt(rec.draws)},{coords},{_fmt(rec.f_inc)},{_fmt(rec.sig_inc)},"
        f"{_fmt(rec.delta_p)},{_fmt(rec.delta_m)},{_fmt(rec.r)},{_fmt(rec.p)},"
        f"{rec.status.value},{rec.cache_size}"
    )


def log_to_csv(records: list[IterationRecord], dimension: int | None = None) -> str:
    if dimension is None:
        if not records:
            raise InvalidInputError("cannot infer dimension from an empty log")
        dimension = len(records[0].incumbent)
    lines = [log_header(dimension)]
    lines.extend(format_record(rec) for rec in records)
    return "\n".join(lines) + "\n"


def write_log(records: list[IterationRecord], path, dimension: int | None = None) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(log_to_csv(records, dimension))


def parse_log(text: str) -> list[IterationRecord]:
    """Parse a run-log CSV back into records, losslessly."""
    lines = [ln for ln in io.StringIO(text).read().splitlines() if ln]
    if not lines:
        raise InvalidInputError("empty log")
    header = lines[0].split(",")
    n = len(header) - 2 - _FIXED_COLUMNS_AFTER_COORDS
    if n < 1 or header[:2] != ["k", "draws"] or header[-1] != "cache_size":
        raise InvalidInputError(f"unrecognised log header: {lines[0]!r}")
    records = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(header):
            raise InvalidInputError(f"malformed log row: {line!r}")
        records.append(
            IterationRecord(
                k=int(parts[0]),
                draws=float(parts[1]),
                incumbent=tuple(float(c) for c in parts[2 : 2 + n]),
                f_inc=float(parts[2 + n]),
                sig_inc=float(parts[3 + n]),
                delta_p=float(parts[4 + n]),
                delta_m=float(parts[5 + n]),
                r=float(parts[6 + n]),
                p=float(parts[7 + n]),
                status=IterationStatus(parts[8 + n]),
                cache_size=int(parts[9 + n]),
            )
        )
    return records


def read_log(path) -> list[IterationRecord]:
    with open(path, "r", newline="") as fh:
        return parse_log(fh.read())
