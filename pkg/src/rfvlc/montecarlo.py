"""Monte Carlo estimation of outage and end-to-end BER.

Determinism contract: results are a pure function of (config, trials,
seed).  Trials are processed in fixed chunks of 65536; chunk i draws from
Philox seeded with SeedSequence(seed, spawn_key=(i,)), and chunk partials
are reduced in chunk order with exact summation.  The worker count only
changes how chunks are scheduled, never the result.

Two interchangeable chunk kernels exist: a compiled one (rfvlc._mc_cython,
built at install time) and a numpy fallback consuming the identical random
stream.  Selection happens at import; RFVLC_MC_BACKEND=numpy|cython forces
a choice, and every simulate_* call accepts backend= to override per call.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import vlc_channel
from .e2e import SystemConfig

try:
    from . import _mc_cython
except ImportError:
    _mc_cython = None
from . import _mc_numpy

__all__ = [
    "CHUNK_SIZE",
    "EstimateWithError",
    "McOptions",
    "available_backends",
    "default_backend",
    "simulate_outage",
    "simulate_ber",
]

CHUNK_SIZE = 65536
MIN_TRIALS = 1000


def available_backends() -> tuple[str, ...]:
    return ("cython", "numpy") if _mc_cython is not None else ("numpy",)


def default_backend() -> str:
    forced = os.environ.get("RFVLC_MC_BACKEND", "").strip().lower()
    if forced:
        if forced not in ("cython", "numpy"):
            raise ValueError(
                f"RFVLC_MC_BACKEND must be 'cython' or 'numpy', got {forced!r}"
            )
        if forced == "cython" and _mc_cython is None:
            raise RuntimeError("RFVLC_MC_BACKEND=cython but the compiled kernel is absent")
        return forced
    return "cython" if _mc_cython is not None else "numpy"


@dataclass(frozen=True)
class EstimateWithError:
    """A Monte Carlo estimate with its standard error and provenance."""

    estimate: float
    std_error: float
    trials: int
    seed: int

    @property
    def reliable(self) -> bool:
        """False when fewer than ~100 expected events back the estimate."""
        return self.estimate * self.trials >= 100.0


@dataclass(frozen=True)
class McOptions:
    """Simulation settings carried alongside a config."""

    trials: int = 1_000_000
    seed: int = 0
    workers: int = 1
    enabled: bool = True

    def __post_init__(self):
        _validate_run(self.trials, self.seed, self.workers)


def _validate_run(trials, seed, workers):
    if not isinstance(trials, (int, np.integer)) or trials < MIN_TRIALS:
        raise ValueError(f"trials must be an integer >= {MIN_TRIALS}, got {trials!r}")
    if not isinstance(seed, (int, np.integer)) or not (0 <= seed < 2**64):
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    if not isinstance(workers, (int, np.integer)) or workers < 1:
        raise ValueError(f"workers must be an integer >= 1, got {workers!r}")


def _kernel(backend):
    if backend is None:
        backend = default_backend()
    if backend == "cython":
        if _mc_cython is None:
            raise RuntimeError("compiled kernel not available; use backend='numpy'")
        return _mc_cython.chunk_stats
    if backend == "numpy":
        return _mc_numpy.chunk_stats
    raise ValueError(f"unknown backend {backend!r}")


def _accumulate(cfg: SystemConfig, trials: int, seed: int, workers: int, backend):
    """Run all chunks and reduce their partials in chunk order."""
    kernel = _kernel(backend)
    rf = cfg.rf
    d = vlc_channel.derive(cfg.vlc)
    args = (
        rf.avg_snr,
        math.sqrt(rf.k_factor / (rf.k_factor + 1.0)),
        math.sqrt(0.5 / (rf.k_factor + 1.0)),
        rf.branches,
        d.mu_vlc * d.upsilon**2,
        -(d.lambert_order + 3.0),
        d.cell_radius**2,
        d.height**2,
        cfg.outage_threshold,
    )
    sizes = [CHUNK_SIZE] * (trials // CHUNK_SIZE)
    if trials % CHUNK_SIZE:
        sizes.append(trials % CHUNK_SIZE)

    def run_chunk(idx_size):
        idx, size = idx_size
        bitgen = np.random.Philox(np.random.SeedSequence(seed, spawn_key=(idx,)))
        return kernel(bitgen, size, *args)

    if workers == 1:
        partials = [run_chunk(t) for t in enumerate(sizes)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run_chunk, enumerate(sizes)))

    count = sum(p[0] for p in partials)
    sums = [math.fsum(p[j] for p in partials) for j in range(1, 5)]
    return count, *sums


def simulate_outage(cfg: SystemConfig, trials: int, seed: int, *,
                    workers: int = 1, backend: str | None = None) -> EstimateWithError:
    """Estimate the outage probability by counting trials whose min-hop SNR
    falls below the threshold; binomial standard error."""
    _validate_run(trials, seed, workers)
    count, _, _, _, _ = _accumulate(cfg, trials, seed, workers, backend)
    p = count / trials
    se = math.sqrt(p * (1.0 - p) / trials)
    return EstimateWithError(estimate=p, std_error=se, trials=trials, seed=seed)


def simulate_ber(cfg: SystemConfig, trials: int, seed: int, *,
                 workers: int = 1, backend: str | None = None) -> EstimateWithError:
    """Estimate the end-to-end BER with the conditional-error estimator.

    Each trial contributes erfc(sqrt(snr))/2 per hop (the exact conditional
    bit error probability given that hop's SNR), and the hop means combine
    through p = p_rf + p_vlc - 2 p_rf p_vlc.  This needs no bit flipping,
    so the variance per trial is far below the Bernoulli estimator's.  The
    standard error follows by first-order propagation through the combining
    formula, using the independence of the two hops.
    """
    _validate_run(trials, seed, workers)
    _, s_rf, q_rf, s_vlc, q_vlc = _accumulate(cfg, trials, seed, workers, backend)
    n = trials
    m_rf = s_rf / n
    m_vlc = s_vlc / n
    var_rf = max(q_rf - n * m_rf * m_rf, 0.0) / (n - 1)
    var_vlc = max(q_vlc - n * m_vlc * m_vlc, 0.0) / (n - 1)
    estimate = m_rf + m_vlc - 2.0 * m_rf * m_vlc
    se = math.sqrt(
        (1.0 - 2.0 * m_vlc) ** 2 * var_rf / n + (1.0 - 2.0 * m_rf) ** 2 * var_vlc / n
    )
    return EstimateWithError(estimate=estimate, std_error=se, trials=trials, seed=seed)
