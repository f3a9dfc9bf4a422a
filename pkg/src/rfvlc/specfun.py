"""Special functions behind the link-performance closed forms.

Everything accepts floats and, where noted, numpy arrays.  Series are
truncated under an explicit accuracy budget (`Accuracy`); running out of
terms raises `ConvergenceError` rather than returning a silently wrong
number.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sc

__all__ = [
    "Accuracy",
    "DEFAULT_ACCURACY",
    "ConvergenceError",
    "bessel_i_int",
    "erfc",
    "upper_inc_gamma",
    "marcum_q",
    "erfc_moment",
    "meijer_g_2122",
]

_SQRT_PI = math.sqrt(math.pi)


class ConvergenceError(RuntimeError):
    """A truncated series failed to reach its tolerance within max_terms."""


@dataclass(frozen=True)
class Accuracy:
    """Truncation budget for series evaluation.

    rel_tol is the target relative error contributed by truncation,
    max_terms caps the number of series terms considered.
    """

    rel_tol: float = 1e-10
    max_terms: int = 512

    def __post_init__(self):
        if not (0.0 < self.rel_tol <= 1e-3):
            raise ValueError(f"rel_tol must be in (0, 1e-3], got {self.rel_tol}")
        if self.max_terms < 16:
            raise ValueError(f"max_terms must be >= 16, got {self.max_terms}")


DEFAULT_ACCURACY = Accuracy()


def poisson_weighted_sum(lam, term, acc=DEFAULT_ACCURACY, absolute=False):
    """Evaluate sum_{k>=0} pois(k; lam) * term(k) for term values in [0, 1].

    Terms are accumulated outward from the Poisson mode, so large `lam`
    costs O(sqrt(lam)) evaluations instead of O(lam) and the weights never
    underflow prematurely.  The remaining tail is bounded through the
    frontier weights themselves (geometric-ratio bound), which keeps the
    stopping rule meaningful even when the sum is many orders of magnitude
    below 1.  With absolute=True the bound is compared against acc.rel_tol
    directly (suitable for probabilities); otherwise against
    acc.rel_tol * |partial sum|.

    term(k) may return a float or an ndarray of a fixed shape.
    """
    if lam < 0.0:
        raise ValueError(f"Poisson rate must be >= 0, got {lam}")
    if lam == 0.0:
        return term(0)

    k0 = int(lam)
    p0 = math.exp(k0 * math.log(lam) - lam - math.lgamma(k0 + 1))
    total = p0 * term(k0)
    k_lo = k_hi = k0
    p_lo = p_hi = p0

    for _ in range(acc.max_terms):
        # Tail bound: remaining right terms decay at least geometrically with
        # ratio lam/(k_hi+2) once that ratio is < 1; the left side similarly
        # with ratio k_lo/lam, and terminates at k = 0 regardless.
        ratio_hi = lam / (k_hi + 2.0)
        bound = math.inf
        if ratio_hi < 1.0:
            bound = p_hi * (lam / (k_hi + 1.0)) / (1.0 - ratio_hi)
            if k_lo > 0:
                ratio_lo = k_lo / lam
                if ratio_lo < 1.0:
                    bound += p_lo * ratio_lo / (1.0 - ratio_lo)
                else:
                    bound = math.inf
        if bound < math.inf:
            if absolute:
                scale = acc.rel_tol
            else:
                mags = np.atleast_1d(np.abs(np.asarray(total, dtype=float)))
                nonzero = mags[mags > 0.0]
                scale = acc.rel_tol * float(nonzero.min()) if nonzero.size else 0.0
            if bound <= scale or bound < 1e-300:
                return total

        p_hi = p_hi * lam / (k_hi + 1.0)
        k_hi += 1
        total = total + p_hi * term(k_hi)
        if k_lo > 0:
            p_lo = p_lo * k_lo / lam
            k_lo -= 1
            total = total + p_lo * term(k_lo)

    raise ConvergenceError(
        f"Poisson-weighted series did not converge: rate={lam:g}, "
        f"max_terms={acc.max_terms}, rel_tol={acc.rel_tol:g}"
    )


def bessel_i_int(order: int, x):
    """Modified Bessel function of the first kind, integer order >= 0.

    Vectorized over x (x >= 0).
    """
    if not isinstance(order, (int, np.integer)):
        raise ValueError(f"order must be an integer, got {order!r}")
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise ValueError("x must be >= 0")
    out = sc.iv(order, x_arr)
    return float(out) if np.isscalar(x) or x_arr.ndim == 0 else out


def erfc(x):
    """Complementary error function, vectorized."""
    out = sc.erfc(np.asarray(x, dtype=float))
    return float(out) if np.ndim(x) == 0 else out


def upper_inc_gamma(s: float, x):
    """Upper incomplete gamma Gamma(s, x) for s > 0, x >= 0 (non-regularized)."""
    if s <= 0.0:
        raise ValueError(f"s must be > 0, got {s}")
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0):
        raise ValueError("x must be >= 0")
    out = sc.gammaincc(s, x_arr) * sc.gamma(s)
    return float(out) if np.ndim(x) == 0 else out


def marcum_q(order: int, a: float, b, acc: Accuracy = DEFAULT_ACCURACY):
    """Generalized Marcum Q-function Q_order(a, b), vectorized over b.

    Evaluated as the noncentral chi-square survival probability,
    sum_k pois(k; a^2/2) * Q(order+k, b^2/2) with Q the regularized upper
    incomplete gamma. The result is a probability; truncation keeps the
    absolute error below acc.rel_tol.  Q_order(a, 0) is exactly 1.
    """
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise ValueError(f"order must be an integer >= 1, got {order!r}")
    if a < 0.0:
        raise ValueError(f"a must be >= 0, got {a}")
    b_arr = np.asarray(b, dtype=float)
    if np.any(b_arr < 0.0):
        raise ValueError("b must be >= 0")

    y = 0.5 * b_arr * b_arr
    if a == 0.0:
        out = sc.gammaincc(order, y)
    else:
        out = poisson_weighted_sum(
            0.5 * a * a, lambda k: sc.gammaincc(order + k, y), acc, absolute=True
        )
    out = np.where(b_arr == 0.0, 1.0, out)  # exact at b = 0
    return float(out) if np.ndim(b) == 0 else out


def erfc_moment(n: float, a: float) -> float:
    """Integral of g^(n-1) * exp(-a g) * erfc(sqrt(g)) over g in (0, inf).

    Closed form for n > 0, a > 0:

        Gamma(n)/a^n
        - 2 Gamma(n + 1/2) / sqrt(pi) * (1+a)^-(n+1/2) * 2F1(1, n+1/2; 3/2; 1/(1+a))

    obtained by writing erfc as its Gaussian tail integral and integrating
    g first.  Accurate for moderate n (a few digits degrade beyond n ~ 20
    because the two terms approach each other); the linear-argument 2F1
    keeps scipy's hyp2f1 on its stable branch.
    """
    if n <= 0.0:
        raise ValueError(f"n must be > 0, got {n}")
    if a <= 0.0:
        raise ValueError(f"a must be > 0, got {a}")
    w = 1.0 / (1.0 + a)
    head = math.gamma(n) * a ** (-n)
    tail = (
        2.0
        * math.gamma(n + 0.5)
        / _SQRT_PI
        * (1.0 + a) ** (-(n + 0.5))
        * float(sc.hyp2f1(1.0, n + 0.5, 1.5, w))
    )
    return head - tail


def meijer_g_2122(shift: float, z: float) -> float:
    """Meijer G of kind G^{2,1}_{2,2}[z | (shift, 1); (0, 1/2)] for shift = 1 - n.

    Only the family with integer n >= 1 is supported; it is the one that
    appears in the average-error closed forms.  For that family

        G = sqrt(pi) * Gamma(n) * I(n, 1/2; 1/(1+z))

    where I is the regularized incomplete beta function.  Derivation: the
    G-function equals sqrt(pi) a^n * integral of t^(n-1) e^(-a t) erfc(sqrt t)
    with a = 1/z; substituting erfc(sqrt t) = (2/sqrt(pi)) * integral over
    s > 1 of sqrt(t) e^(-t s^2) ds and integrating t first gives
    2 Gamma(n+1/2)/sqrt(pi) * integral of (a+s^2)^-(n+1/2) ds, which the
    substitution u = s^2/(a+s^2) turns into the incomplete beta above.  The
    direct two-term hypergeometric difference cancels catastrophically for
    large n, while this form is a single positive term.
    """
    n_float = 1.0 - shift
    n = int(round(n_float))
    if n < 1 or abs(n_float - n) > 1e-9:
        raise ValueError(
            f"shift must equal 1 - n for an integer n >= 1, got {shift!r}"
        )
    if z <= 0.0:
        raise ValueError(f"z must be > 0, got {z}")
    return _SQRT_PI * math.gamma(n) * float(sc.betainc(n, 0.5, 1.0 / (1.0 + z)))
