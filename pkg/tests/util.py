"""Shared test helpers: deterministic point sets and independent oracles."""

import math
from fractions import Fraction

import numpy as np

# plastic-constant (R2) low-discrepancy sequence: deterministic quasi-random
_R2_A = 0.7548776662466927
_R2_B = 0.5698402909980532


def lattice_points(n, log_r_range=(-2.0, 2.0), theta_range=(-2.0, 2.0)):
    """n quasi-random chart points (log r, theta), reproducible."""
    pts = []
    for i in range(1, n + 1):
        u = (0.5 + i * _R2_A) % 1.0
        v = (0.5 + i * _R2_B) % 1.0
        x = log_r_range[0] + (log_r_range[1] - log_r_range[0]) * u
        th = theta_range[0] + (theta_range[1] - theta_range[0]) * v
        pts.append((x, th))
    return pts


def brute_force_stirling(c, k):
    """Independent oracle for the generalized Stirling row S_c(k, .).

    The defining identity: applying (x d/dx + c) k times to x^a multiplies it
    by (a + c)^k, while the claimed expansion gives
    sum_j S_c(k, j) * falling(a, j).  Solving that linear system over
    a = 0..k in exact Fraction arithmetic (it is lower-triangular, since
    falling(a, j) = 0 for j > a) determines the row uniquely.
    """
    c = Fraction(c)

    def falling(a, j):
        out = Fraction(1)
        for i in range(j):
            out *= a - i
        return out

    coeffs = [Fraction(0)] * (k + 1)
    for a in range(k + 1):
        target = (Fraction(a) + c) ** k
        acc = sum((coeffs[j] * falling(a, j) for j in range(a)), Fraction(0))
        coeffs[a] = (target - acc) / falling(a, a)  # falling(a, a) = a! != 0
    return coeffs


def loglog_slope(ns, errs):
    ns = np.asarray(ns, dtype=float)
    errs = np.asarray(errs, dtype=float)
    return float(np.polyfit(np.log(ns), np.log(errs), 1)[0])
