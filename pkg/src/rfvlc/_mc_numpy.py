"""Pure-numpy Monte Carlo chunk kernel.

Stream contract shared with the compiled kernel (consume order per chunk):
first n*branches*2 standard normals laid out as (trial, branch, re/im),
then n uniforms for the user position.  Any change here must be mirrored
in _mc_cython.pyx or the two backends stop being interchangeable.
"""
from __future__ import annotations

import numpy as np
from scipy import special as sc


def chunk_stats(bitgen, n, rf_mu, rf_los, rf_sd, branches,
                vlc_scale, vlc_expo, vlc_r2, vlc_l2, gamma_th):
    """Simulate one chunk of n trials; return the five chunk partials
    (outage count, sum and sum-of-squares of the per-trial conditional bit
    error probability for each hop)."""
    gen = np.random.Generator(bitgen)
    z = gen.standard_normal((n, branches, 2))
    u = gen.random(n)

    # branch loop kept sequential so the compiled kernel's per-trial
    # accumulation order matches bit for bit
    snr_rf = np.zeros(n)
    for b in range(branches):
        re = rf_los + rf_sd * z[:, b, 0]
        im = rf_sd * z[:, b, 1]
        snr_rf += re * re + im * im
    snr_rf *= rf_mu

    snr_vlc = vlc_scale * (vlc_r2 * u + vlc_l2) ** vlc_expo

    count = int(np.count_nonzero(np.minimum(snr_rf, snr_vlc) < gamma_th))
    x_rf = 0.5 * sc.erfc(np.sqrt(snr_rf))
    x_vlc = 0.5 * sc.erfc(np.sqrt(snr_vlc))
    return (
        count,
        float(x_rf.sum()),
        float((x_rf * x_rf).sum()),
        float(x_vlc.sum()),
        float((x_vlc * x_vlc).sum()),
    )
