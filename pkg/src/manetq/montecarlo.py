"""Seeded Monte Carlo estimates of every metric.

Random streams
--------------
Trials are grouped in fixed blocks of :func:`block_size` ``(n)`` trials.  Block
``b`` draws from ``numpy.random.Generator(PCG64(SeedSequence(seed,
spawn_key=(b,))))``: first, in varying-node mode, an ``(m, n)`` array of
uniforms for the on/off draws, then an ``(m, n)`` array of node positions.
The block layout depends only on the configuration, and results are reduced
in block order, so estimates are bit-identical for any number of workers.

Conventions
-----------
Gaps are ``x[i+1] - x[i]`` for sorted positions plus the wrap gap
``x[0] + 1 - x[-1]`` last.  A break is a gap ``>= rho``; on the interval the
wrap gap never links, so only interior breaks are counted.  Coverage always
uses the circular gaps unless ``coverage_clip`` is set.  A network with no
active node scores 0 everywhere; a lone node is one unconnected segment
with coverage ``min(2 rho, 1)`` and zero reachability and vulnerability.
"""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidParameterError
from .params import SystemParams, parse_rational
from .varying import on_probability

__all__ = [
    "Boundary",
    "TrialConfig",
    "TrialOutcome",
    "Estimate",
    "block_size",
    "block_rng",
    "sample_gaps",
    "eval_trial",
    "evaluate_batch",
    "run",
    "METRICS",
]

METRICS = (
    "connectedness",
    "coveredness",
    "coverage",
    "segmentation",
    "vulnerability",
    "reachability",
)

_MAX_BLOCK = 8192
_BLOCK_CELLS = 1 << 20


class Boundary(str, enum.Enum):
    PERIODIC = "periodic"
    DISCONNECTED = "disconnected"


@dataclass(frozen=True)
class TrialConfig:
    params: SystemParams
    boundary: Boundary = Boundary.PERIODIC
    trials: int = 100_000
    seed: int = 0
    on_probability: Fraction | None = None
    coverage_clip: bool = False
    max_k: int = 3

    def __post_init__(self):
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        if self.trials < 1:
            raise InvalidParameterError("trials must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise InvalidParameterError("seed must be an unsigned 64-bit integer")
        if self.on_probability is not None:
            object.__setattr__(self, "on_probability", on_probability(self.on_probability))
        if self.max_k < 0:
            raise InvalidParameterError("max_k must be >= 0")


@dataclass(frozen=True)
class TrialOutcome:
    disconnect_count: int
    connected: bool
    covered: bool
    coverage: float
    segmentation: float
    vulnerability: float
    reachability: float
    active_count: int


@dataclass(frozen=True)
class Estimate:
    mean: float
    stderr: float
    trials: int
    seed: int

    def to_record(self, metric: str) -> dict:
        return {
            "metric": metric,
            "mean": self.mean,
            "stderr": self.stderr,
            "trials": self.trials,
            "seed": self.seed,
        }


def block_size(n: int) -> int:
    """Trials per random-stream block for ``n`` nodes."""
    return max(1, min(_MAX_BLOCK, _BLOCK_CELLS // max(n, 1)))


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _gaps_from_positions(x: np.ndarray) -> np.ndarray:
    gaps = np.empty_like(x)
    gaps[:, :-1] = np.diff(x, axis=1)
    gaps[:, -1] = x[:, 0] + 1.0 - x[:, -1]
    return gaps


def sample_gaps(n: int, rng: np.random.Generator, size: int | None = None):
    """Sorted uniform positions and their ``n`` circular next-neighbour gaps.

    With ``size`` given, returns ``(size, n)`` arrays, one trial per row.
    """
    if n < 1:
        raise InvalidParameterError("n must be >= 1")
    x = np.sort(rng.random((1 if size is None else size, n)), axis=1)
    gaps = _gaps_from_positions(x)
    if size is None:
        return x[0], gaps[0]
    return x, gaps


def _segment_square_sums(breaks: np.ndarray) -> np.ndarray:
    """Per row, ``sum b_i (b_i - 1)`` over the circular runs delimited by ``breaks``.

    Gap ``i`` sits between node ``i`` and node ``i+1``; rows without any break
    get 0.
    """
    m, n = breaks.shape
    rows, cols = np.nonzero(breaks)
    out = np.zeros(m)
    if rows.size == 0:
        return out
    sizes = np.diff(cols).astype(float)
    same = rows[1:] == rows[:-1]
    np.add.at(out, rows[1:][same], sizes[same] * (sizes[same] - 1))
    first = np.r_[True, ~same]
    last = np.r_[~same, True]
    wrap = (cols[first] + n - cols[last]).astype(float)
    out[rows[first]] += wrap * (wrap - 1)
    return out


def evaluate_batch(gaps, rho: float, boundary=Boundary.PERIODIC, positions=None, coverage_clip=False) -> dict:
    """Vectorized metric evaluation for an ``(m, n)`` array of gaps."""
    gaps = np.atleast_2d(np.asarray(gaps, dtype=float))
    boundary = Boundary(boundary)
    m, n = gaps.shape
    rho = float(rho)
    if n <= 1:
        cov = np.full(m, min(2 * rho, 1.0))
        return {
            "k": np.ones(m, dtype=np.int64),
            "connected": np.zeros(m, dtype=bool),
            "covered": np.zeros(m, dtype=bool),
            "coverage": cov,
            "segmentation": np.ones(m),
            "vulnerability": np.zeros(m),
            "reachability": np.zeros(m),
        }
    big = gaps >= rho
    if boundary is Boundary.DISCONNECTED:
        big[:, -1] = True
        k = big[:, :-1].sum(axis=1)
    else:
        k = big.sum(axis=1)
    connected = k == 0

    if coverage_clip:
        if positions is None:
            raise InvalidParameterError("coverage_clip needs node positions")
        pos = np.atleast_2d(positions)
        holes = np.maximum(gaps[:, :-1] - 2 * rho, 0.0).sum(axis=1)
        holes += np.maximum(pos[:, 0] - rho, 0.0) + np.maximum(1.0 - pos[:, -1] - rho, 0.0)
        coverage = 1.0 - holes
    else:
        coverage = 1.0 - np.maximum(gaps - 2 * rho, 0.0).sum(axis=1)
    covered = (gaps < 2 * rho).all(axis=1)

    # node i has gap i-1 on its left and gap i on its right
    left = np.roll(gaps, 1, axis=1)
    important = (left < rho) & (gaps < rho) & (left + gaps >= rho)
    if boundary is Boundary.DISCONNECTED:
        important[:, 0] = False
        important[:, -1] = False
    vulnerability = important.mean(axis=1)

    reach = _segment_square_sums(big) / float(n * n)
    reach[connected] = 1.0

    return {
        "k": k,
        "connected": connected,
        "covered": covered,
        "coverage": coverage,
        "segmentation": k / n,
        "vulnerability": vulnerability,
        "reachability": reach,
    }


def eval_trial(gaps, rho, boundary=Boundary.PERIODIC, positions=None, coverage_clip=False) -> TrialOutcome:
    """Evaluate every metric on one configuration given by its gaps."""
    gaps = np.asarray(gaps, dtype=float)
    res = evaluate_batch(
        gaps[None, :], float(rho), boundary,
        None if positions is None else np.asarray(positions, dtype=float)[None, :],
        coverage_clip,
    )
    return TrialOutcome(
        disconnect_count=int(res["k"][0]),
        connected=bool(res["connected"][0]),
        covered=bool(res["covered"][0]),
        coverage=float(res["coverage"][0]),
        segmentation=float(res["segmentation"][0]),
        vulnerability=float(res["vulnerability"][0]),
        reachability=float(res["reachability"][0]),
        active_count=gaps.size,
    )


def _block_values(config: TrialConfig, block: int, size: int) -> dict:
    n = config.params.n
    rho = float(config.params.rho)
    rng = block_rng(config.seed, block)
    if config.on_probability is None:
        x, gaps = sample_gaps(n, rng, size)
        res = evaluate_batch(gaps, rho, config.boundary, x, config.coverage_clip)
        res["active"] = np.full(size, n, dtype=np.int64)
        return res

    on = rng.random((size, n)) < float(config.on_probability)
    x_all = rng.random((size, n))
    active = on.sum(axis=1)
    res = {
        "k": np.zeros(size, dtype=np.int64),
        "connected": np.zeros(size, dtype=bool),
        "covered": np.zeros(size, dtype=bool),
        "coverage": np.zeros(size),
        "segmentation": np.zeros(size),
        "vulnerability": np.zeros(size),
        "reachability": np.zeros(size),
        "active": active,
    }
    for m in np.unique(active):
        if m == 0:
            continue
        rows = np.flatnonzero(active == m)
        # row-major boolean indexing keeps each trial's survivors contiguous
        x = np.sort(x_all[rows][on[rows]].reshape(rows.size, m), axis=1)
        sub = evaluate_batch(_gaps_from_positions(x), rho, config.boundary, x, config.coverage_clip)
        for key, val in sub.items():
            res[key][rows] = val
    return res


def _workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get("MANETQ_THREADS")
        try:
            workers = int(env) if env else (os.cpu_count() or 1)
        except ValueError:
            raise InvalidParameterError(f"MANETQ_THREADS must be an integer, got {env!r}") from None
    return max(1, workers)


def _estimate(values: np.ndarray, config: TrialConfig) -> Estimate:
    values = values.astype(float)
    mean = float(values.mean())
    se = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
    return Estimate(mean, se, config.trials, config.seed)


def run(config: TrialConfig, workers: int | None = None) -> dict[str, Estimate]:
    """Estimate every metric, plus ``disc:0 .. disc:max_k``, from ``config.trials`` trials."""
    bs = block_size(config.params.n)
    nblocks = -(-config.trials // bs)
    sizes = [min(bs, config.trials - b * bs) for b in range(nblocks)]
    nw = min(_workers(workers), nblocks)
    if nw == 1:
        parts = [_block_values(config, b, s) for b, s in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=nw) as pool:
            parts = list(pool.map(lambda bs_: _block_values(config, *bs_), enumerate(sizes)))
    cat = {key: np.concatenate([p[key] for p in parts]) for key in parts[0]}

    alive = cat["active"] > 0
    out = {
        "connectedness": _estimate(cat["connected"], config),
        "coveredness": _estimate(cat["covered"], config),
        "coverage": _estimate(cat["coverage"], config),
        "segmentation": _estimate(cat["segmentation"], config),
        "vulnerability": _estimate(cat["vulnerability"], config),
        "reachability": _estimate(cat["reachability"], config),
    }
    for k in range(config.max_k + 1):
        out[f"disc:{k}"] = _estimate((cat["k"] == k) & alive, config)
    return out


def make_config(n, rho, boundary="periodic", trials=100_000, seed=0, p_on=None, **kw) -> TrialConfig:
    """Build a :class:`TrialConfig` from loose inputs (rationals accepted as strings)."""
    return TrialConfig(SystemParams(n, parse_rational(rho)), Boundary(boundary), trials, seed,
                       None if p_on is None else parse_rational(p_on), **kw)
