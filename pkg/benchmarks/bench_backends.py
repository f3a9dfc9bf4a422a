"""Compare the compiled and pure-numpy Monte Carlo kernels.

Usage: python benchmarks/bench_backends.py [--trials N] [--repeats R]

Reports wall time and throughput for each available backend and the
thread-scaling behaviour of the compiled kernel (the numpy kernel holds
the GIL for most of its time, so threads mostly serialize there).
"""

import argparse
import os
import time

from rfvlc.config import db_to_linear
from rfvlc.e2e import SystemConfig
from rfvlc.montecarlo import available_backends, simulate_ber, simulate_outage
from rfvlc.rf_channel import RfParams
from rfvlc.vlc_channel import VlcParams


def reference_config() -> SystemConfig:
    return SystemConfig(
        rf=RfParams(k_factor=db_to_linear(5.0), branches=2, avg_snr=db_to_linear(7.0)),
        vlc=VlcParams(
            semi_angle=60.0,
            height=2.0,
            area=1e-4,
            fov=60.0,
            refractive_index=1.5,
            filter_gain=1.0,
            responsivity=0.4,
            conv_efficiency=0.8,
            noise_psd=1e-21,
            bandwidth=2e7,
            optical_power=0.25,
        ),
        outage_threshold=1.0,
    )


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2_000_000)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    cfg = reference_config()
    backends = available_backends()
    print(f"backends available: {', '.join(backends)}")
    print(f"cpus: {os.cpu_count()} (thread scaling is bounded by this)")
    print(f"trials per run: {args.trials:,}, best of {args.repeats}\n")

    print(f"{'kernel':<22} {'outage':>10} {'ber':>10} {'Mtrials/s':>11}")
    baseline = None
    for backend in backends:
        t_out, est_o = best_of(
            lambda: simulate_outage(cfg, args.trials, seed=0, backend=backend),
            args.repeats,
        )
        t_ber, est_b = best_of(
            lambda: simulate_ber(cfg, args.trials, seed=0, backend=backend),
            args.repeats,
        )
        rate = args.trials / min(t_out, t_ber) / 1e6
        if baseline is None:
            baseline = min(t_out, t_ber)
        print(f"{backend:<22} {t_out:>9.3f}s {t_ber:>9.3f}s {rate:>11.1f}")
    if len(backends) > 1:
        slow = max(
            best_of(lambda: simulate_outage(cfg, args.trials, seed=0, backend=b), 1)[0]
            for b in backends
        )
        print(f"\nspeedup fastest/slowest ~ {slow / baseline:.1f}x")

    if "cython" in backends:
        print("\ncompiled kernel thread scaling (outage):")
        print(f"{'workers':<10} {'time':>10} {'speedup':>9}")
        t1 = None
        for workers in (1, 2, 4, 8):
            t, est = best_of(
                lambda: simulate_outage(
                    cfg, args.trials, seed=0, workers=workers, backend="cython"
                ),
                args.repeats,
            )
            t1 = t1 or t
            print(f"{workers:<10} {t:>9.3f}s {t1 / t:>8.2f}x")
        print("\nresults are identical for every worker count by construction;")
        print("see tests/test_montecarlo.py::TestDeterminism.")


if __name__ == "__main__":
    main()
