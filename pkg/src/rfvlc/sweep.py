"""Parameter sweeps over the end-to-end metrics, and their CSV form."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from .config import SweepSpec, db_to_linear
from .e2e import (
    SystemConfig,
    ber_floor,
    e2e_avg_ber,
    outage_floor,
    outage_probability,
)
from .montecarlo import McOptions, simulate_ber, simulate_outage
from .specfun import ConvergenceError
from .vlc_channel import VlcParams

__all__ = ["ResultRecord", "CSV_HEADER", "axis_grid", "apply_axis", "run_sweep", "emit_csv"]

CSV_HEADER = "axis,analytic,mc_estimate,mc_std_error,floor"


@dataclass(frozen=True)
class ResultRecord:
    """One sweep point: the axis value, the closed-form value, the Monte
    Carlo estimate when simulation ran (None otherwise), and the limiting
    floor of the swept quantity."""

    axis_value: float
    analytic: float
    mc_estimate: float | None
    mc_std_error: float | None
    floor: float


def axis_grid(spec: SweepSpec) -> np.ndarray:
    """Ascending evaluation grid; geometric for log scale."""
    if spec.scale == "log":
        grid = np.geomspace(spec.start, spec.stop, spec.points)
    else:
        grid = np.linspace(spec.start, spec.stop, spec.points)
    if spec.axis == "branches":
        rounded = np.round(grid)
        if np.any(np.abs(grid - rounded) > 1e-9) or np.any(rounded < 1):
            raise ValueError(
                "branches axis requires a grid of integers >= 1; "
                f"start={spec.start}, stop={spec.stop}, points={spec.points} does not"
            )
    return grid


def _replace_vlc(vlc: VlcParams, **changes) -> VlcParams:
    """dataclasses.replace for VlcParams with the resolved optical power
    carried over (the led pair, once folded in, stays folded)."""
    fields = {
        "semi_angle": vlc.semi_angle,
        "height": vlc.height,
        "area": vlc.area,
        "fov": vlc.fov,
        "refractive_index": vlc.refractive_index,
        "filter_gain": vlc.filter_gain,
        "responsivity": vlc.responsivity,
        "conv_efficiency": vlc.conv_efficiency,
        "noise_psd": vlc.noise_psd,
        "bandwidth": vlc.bandwidth,
        "optical_power": vlc.optical_power,
    }
    fields.update(changes)
    return VlcParams(**fields)


def apply_axis(cfg: SystemConfig, axis: str, value: float) -> SystemConfig:
    """Return cfg with one swept parameter replaced."""
    if axis == "rf_avg_snr_db":
        rf = dataclasses.replace(cfg.rf, avg_snr=db_to_linear(value))
        return dataclasses.replace(cfg, rf=rf)
    if axis == "branches":
        rf = dataclasses.replace(cfg.rf, branches=int(round(value)))
        return dataclasses.replace(cfg, rf=rf)
    if axis == "optical_power_w":
        return dataclasses.replace(cfg, vlc=_replace_vlc(cfg.vlc, optical_power=value))
    if axis == "semi_angle_deg":
        return dataclasses.replace(cfg, vlc=_replace_vlc(cfg.vlc, semi_angle=value))
    raise ValueError(f"unknown sweep axis {axis!r}")


def run_sweep(cfg: SystemConfig, spec: SweepSpec, mc: McOptions) -> list[ResultRecord]:
    """Evaluate the swept quantity over the grid.

    Every point uses the same (trials, seed), so the whole sweep is a pure
    function of (cfg, spec, mc) regardless of worker count.  Errors gain
    the offending axis value without losing their type.
    """
    records = []
    for value in axis_grid(spec):
        value = float(value)
        try:
            point = apply_axis(cfg, spec.axis, value)
            if spec.quantity == "outage":
                analytic = outage_probability(point)
                floor = outage_floor(point)
                est = (
                    simulate_outage(point, mc.trials, mc.seed, workers=mc.workers)
                    if mc.enabled
                    else None
                )
            else:
                analytic = e2e_avg_ber(point)
                floor = ber_floor(point)
                est = (
                    simulate_ber(point, mc.trials, mc.seed, workers=mc.workers)
                    if mc.enabled
                    else None
                )
        except ConvergenceError as exc:
            raise ConvergenceError(f"at {spec.axis} = {value:g}: {exc}") from None
        except ValueError as exc:
            raise ValueError(f"at {spec.axis} = {value:g}: {exc}") from None
        records.append(
            ResultRecord(
                axis_value=value,
                analytic=analytic,
                mc_estimate=est.estimate if est is not None else None,
                mc_std_error=est.std_error if est is not None else None,
                floor=floor,
            )
        )
    return records


def _cell(x: float | None) -> str:
    return "" if x is None else format(x, ".12g")


def emit_csv(records: list[ResultRecord]) -> str:
    """CSV text: header then one row per record, 12 significant digits,
    empty cells where no simulation ran, LF line endings."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    _cell(r.axis_value),
                    _cell(r.analytic),
                    _cell(r.mc_estimate),
                    _cell(r.mc_std_error),
                    _cell(r.floor),
                )
            )
        )
    return "\n".join(lines) + "\n"
