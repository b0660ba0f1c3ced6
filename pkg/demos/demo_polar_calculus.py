"""A walk through the polar calculus on the half-plane.

The half-plane H = {(r, theta): r > 0} treats theta as a free real
coordinate, so single-valued "multivalued" functions like the logarithm
live on it comfortably.  This script differentiates a few of them, checks
the analyticity criterion, and expands a function in the natural variable
log(r/r0) + i(theta - theta0).
"""

import cmath
import math

import numpy as np

from mellin_polar import (
    PolarFunction,
    PolarPoint,
    cauchy_riemann_residual,
    higher_mellin_derivative,
    make_mellin_sine,
    make_power,
    mellin_derivative,
    polar_derivative_fd,
    stirling_table,
    taylor_expand,
)

print("== the logarithm as a single-valued function ==")
L = PolarFunction(lambda x, th: np.asarray(x) + 1j * np.asarray(th), name="log")
p = PolarPoint(1.0, 0.0)
print(f"derivative of log at (1, 0): {polar_derivative_fd(L, p):.12f}  (exact: 1)")
p_wrapped = PolarPoint(1.0, 2.0 * math.pi)
print(f"log at (1, 0):      {L(p):.4f}")
print(f"log at (1, 2*pi):   {L(p_wrapped):.4f}   <- theta is not reduced mod 2*pi")

print()
print("== analyticity residuals |df/dtheta - i r df/dr| ==")
conj = PolarFunction(lambda x, th: np.exp(np.asarray(x) - 1j * np.asarray(th)))
print(f"log function:       {cauchy_riemann_residual(L, PolarPoint(math.e, 1.0)):.2e}")
print(f"conjugate witness:  {cauchy_riemann_residual(conj, PolarPoint(1.0, 0.0)):.2e}"
      "   <- not polar-analytic")

print()
print("== the weighted derivative r e^{i theta} D_pol + c ==")
a, c = 2.0 + 1.0j, 0.5
f = make_power(a)
p = PolarPoint(1.3, 0.4)
print(f"power function (r e^(i theta))^a is an eigenfunction: eigenvalue a + c")
print(f"  computed: {mellin_derivative(f, p, c) / f(p):.10f}")
print(f"  expected: {a + c:.10f}")
for k in (2, 3):
    ratio = higher_mellin_derivative(f, p, c, k) / f(p)
    print(f"  order {k}: {ratio:.8f}  vs  (a+c)^{k} = {(a + c) ** k:.8f}")

print()
print("== generalized Stirling coefficients (weight c = 0.5) ==")
table = stirling_table(0.5, 4)
for k in range(5):
    row = [table.value(k, j) for j in range(k + 1)]
    print(f"  k={k}: {row}")

print()
print("== Taylor expansion in w = log(r/r0) + i(theta - theta0) ==")
m = make_mellin_sine(0.5, 1.0)
expansion = taylor_expand(m.f, PolarPoint(1.0, 0.0), 0.5, 20)
for rho in (0.1, 0.3, 0.5):
    q = PolarPoint(math.exp(rho / math.sqrt(2.0)), rho / math.sqrt(2.0))
    err = abs(expansion.partial_sum(q) - expansion.weighted_target(m.f, q))
    print(f"  |w| = {rho:.1f}: partial-sum error {err:.2e}")
