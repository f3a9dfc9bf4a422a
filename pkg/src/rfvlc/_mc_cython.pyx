# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo chunk kernel.

Consumes the bit-generator stream in exactly the order of the numpy
fallback (_mc_numpy.chunk_stats): n*branches*2 standard normals in
(trial, branch, re/im) order, then n uniforms.  Keep the two in lockstep.
"""
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport pow as c_pow, sqrt as c_sqrt
from libc.stdlib cimport free, malloc

from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport (
    random_standard_normal,
    random_standard_uniform,
)
from scipy.special.cython_special cimport erfc as c_erfc


def chunk_stats(bitgen, Py_ssize_t n, double rf_mu, double rf_los,
                double rf_sd, int branches, double vlc_scale,
                double vlc_expo, double vlc_r2, double vlc_l2,
                double gamma_th):
    """Mirror of _mc_numpy.chunk_stats running as a nogil loop."""
    cdef bitgen_t *rng = <bitgen_t *> PyCapsule_GetPointer(
        bitgen.capsule, "BitGenerator")
    cdef double *snr_rf = <double *> malloc(n * sizeof(double))
    if snr_rf == NULL:
        raise MemoryError()

    cdef Py_ssize_t i
    cdef int b
    cdef long count = 0
    cdef double s_rf = 0.0, q_rf = 0.0, s_vlc = 0.0, q_vlc = 0.0
    cdef double acc, re, im, g, x

    try:
        with nogil:
            for i in range(n):
                acc = 0.0
                for b in range(branches):
                    re = rf_los + rf_sd * random_standard_normal(rng)
                    im = rf_sd * random_standard_normal(rng)
                    acc += re * re + im * im
                snr_rf[i] = rf_mu * acc

            for i in range(n):
                g = vlc_scale * c_pow(
                    vlc_r2 * random_standard_uniform(rng) + vlc_l2, vlc_expo)
                if (snr_rf[i] if snr_rf[i] < g else g) < gamma_th:
                    count += 1
                x = 0.5 * c_erfc(c_sqrt(snr_rf[i]))
                s_rf += x
                q_rf += x * x
                x = 0.5 * c_erfc(c_sqrt(g))
                s_vlc += x
                q_vlc += x * x
    finally:
        free(snr_rf)

    return count, s_rf, q_rf, s_vlc, q_vlc
