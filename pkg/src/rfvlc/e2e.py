"""End-to-end metrics of the two-hop decode-and-forward link.

The relay decodes the radio hop and re-encodes onto the optical hop, so the
equivalent SNR is the minimum of the two hop SNRs and a bit is wrong end to
end when exactly one hop flips it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import vlc_channel
from .rf_channel import RfParams, mrc_snr_cdf, rf_avg_ber
from .specfun import Accuracy, DEFAULT_ACCURACY
from .vlc_channel import VlcParams, vlc_avg_ber, vlc_snr_cdf

__all__ = [
    "SystemConfig",
    "e2e_cdf",
    "outage_probability",
    "e2e_avg_ber",
    "outage_floor",
    "ber_floor",
]


@dataclass(frozen=True)
class SystemConfig:
    """Full link description: both hops plus the outage SNR threshold."""

    rf: RfParams
    vlc: VlcParams
    outage_threshold: float

    def __post_init__(self):
        if not (self.outage_threshold > 0.0) or not math.isfinite(self.outage_threshold):
            raise ValueError(
                f"outage_threshold must be finite and > 0, got {self.outage_threshold}"
            )


def e2e_cdf(gamma, cfg: SystemConfig, acc: Accuracy = DEFAULT_ACCURACY):
    """Distribution of min(snr_rf, snr_vlc) for independent hops:
    F = F_rf + F_vlc - F_rf * F_vlc.  Vectorized."""
    d = vlc_channel.derive(cfg.vlc)
    f_rf = mrc_snr_cdf(gamma, cfg.rf, acc)
    f_vlc = vlc_snr_cdf(gamma, d)
    # sum-minus-product keeps relative accuracy for tiny tails; rounding
    # can overshoot 1 by an ulp once a factor saturates, so clamp
    out = np.minimum(f_rf + f_vlc - f_rf * f_vlc, 1.0)
    return float(out) if np.ndim(gamma) == 0 else out


def outage_probability(cfg: SystemConfig, acc: Accuracy = DEFAULT_ACCURACY) -> float:
    """Probability that the equivalent SNR falls below the threshold."""
    return float(e2e_cdf(cfg.outage_threshold, cfg, acc))


def e2e_avg_ber(cfg: SystemConfig, acc: Accuracy = DEFAULT_ACCURACY) -> float:
    """End-to-end average BER of the decode-and-forward chain:
    P = P_rf (1 - P_vlc) + P_vlc (1 - P_rf)."""
    p_rf = rf_avg_ber(cfg.rf, acc)
    p_vlc = vlc_avg_ber(vlc_channel.derive(cfg.vlc))
    return p_rf + p_vlc - 2.0 * p_rf * p_vlc


def outage_floor(cfg: SystemConfig) -> float:
    """Outage limit as the radio hop becomes noiseless: the optical hop's
    own CDF at the threshold."""
    return float(vlc_snr_cdf(cfg.outage_threshold, vlc_channel.derive(cfg.vlc)))


def ber_floor(cfg: SystemConfig, acc: Accuracy = DEFAULT_ACCURACY) -> float:
    """BER limit as the optical hop becomes error-free: the radio hop's own
    average BER."""
    return rf_avg_ber(cfg.rf, acc)
