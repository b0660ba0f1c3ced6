"""Differential calculus for polar-analytic functions on the half-plane.

The half-plane is H = {(r, theta) : r > 0, theta real}.  theta is a free
real coordinate and is never reduced modulo 2*pi: H stands in for the
Riemann surface of the logarithm, and the natural chart is
(x, y) = (log r, theta).  A function f on H is polar-analytic at a point
when the difference quotient against r*e^{i*theta} has a direction-free
limit there; equivalently d f/d theta = i r d f/d r (the polar form of
the Cauchy-Riemann equations).  That limit is the polar derivative

    (D_pol f)(r, theta) = e^{-i theta} df/dr = e^{-i theta}/(i r) df/dtheta,

and the weighted first-order operator built on it,

    (Theta_c f)(r, theta) = r e^{i theta} (D_pol f)(r, theta) + c f(r, theta),

is the half-plane analogue of the Mellin operator x d/dx + c.  Its k-th
power expands over pure polar derivatives with generalized Stirling
coefficients S_c(k, j), and drives a Taylor-type expansion in the variable
log(r/r0) + i(theta - theta0).

Everything here is double precision; all objects are immutable after
construction and every operation is pure.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

__all__ = [
    "ConditioningWarning",
    "DegenerateInputError",
    "Domain",
    "DomainError",
    "GeneralizedStirlingTable",
    "PolarFunction",
    "PolarPoint",
    "PreconditionError",
    "TaylorExpansion",
    "ToleranceNotMetError",
    "WHOLE_PLANE",
    "add",
    "cauchy_riemann_residual",
    "constant",
    "divide",
    "higher_mellin_derivative",
    "mellin_derivative",
    "mellin_op",
    "multiply",
    "polar_derivative_fd",
    "scale",
    "stirling_table",
    "taylor_expand",
]

DEFAULT_FD_STEP = 1e-3


class DomainError(ValueError):
    """Evaluation point outside a function's domain (or too close to it)."""


class PreconditionError(ValueError):
    """An operation's stated precondition is violated."""


class DegenerateInputError(ValueError):
    """Input is degenerate for the requested operation (e.g. f == 0 on a grid)."""


class ToleranceNotMetError(RuntimeError):
    """Adaptive quadrature could not meet the requested tolerance.

    Carries the best estimate and the residual gap so callers can decide
    whether the partial answer is still useful.
    """

    def __init__(self, message: str, best_estimate: complex, gap: float):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.gap = gap


class ConditioningWarning(UserWarning):
    """Result computed through an ill-conditioned numerical route."""


@dataclass(frozen=True)
class PolarPoint:
    """A point (r, theta) of the half-plane H, r > 0, theta unrestricted."""

    r: float
    theta: float

    def __post_init__(self):
        if not (self.r > 0.0) or not math.isfinite(self.r):
            raise DomainError(f"radial coordinate must be positive and finite, got {self.r}")
        if not math.isfinite(self.theta):
            raise DomainError(f"angular coordinate must be finite, got {self.theta}")

    @property
    def z(self) -> complex:
        """The associated complex number r*e^{i*theta} (not injective on H)."""
        return self.r * cmath.exp(1j * self.theta)

    @property
    def log_z(self) -> complex:
        """Chart coordinate log r + i*theta (injective on H)."""
        return complex(math.log(self.r), self.theta)


@dataclass(frozen=True)
class Domain:
    """Sub-domain of H: an open theta-strip minus finitely many points.

    Distances are measured in the (log r, theta) chart, the natural metric
    of the calculus.  The default is the whole half-plane.
    """

    theta_min: float = -math.inf
    theta_max: float = math.inf
    excluded: tuple[PolarPoint, ...] = ()

    def __post_init__(self):
        if not self.theta_min < self.theta_max:
            raise PreconditionError("empty theta-strip")

    def margin(self, p: PolarPoint) -> float:
        """Chart distance from p to the nearest boundary piece or puncture."""
        m = min(self.theta_max - p.theta, p.theta - self.theta_min)
        w0 = p.log_z
        for q in self.excluded:
            m = min(m, abs(w0 - q.log_z))
        return m

    def contains(self, p: PolarPoint, margin: float = 0.0) -> bool:
        return self.margin(p) > margin

    def require(self, p: PolarPoint, margin: float = 0.0) -> None:
        if not self.contains(p, margin):
            raise DomainError(
                f"point (r={p.r}, theta={p.theta}) outside domain "
                f"(or within margin {margin} of its boundary/singularities)"
            )


WHOLE_PLANE = Domain()


def _thunk(value):
    """Resolve a lazily constructed attribute (value, callable or None)."""
    return value() if callable(value) and not isinstance(value, PolarFunction) else value


class PolarFunction:
    """Evaluatable complex-valued function on a sub-domain of H.

    The evaluator works in the chart: ``log_fn(x, theta)`` with x = log r,
    vectorized over numpy arrays.  Optional closed-form metadata:

    ``dpol``        the polar derivative as another PolarFunction (may be a
                    zero-argument thunk, resolved lazily; chains of these
                    give higher polar derivatives),
    ``dpol_order``  ``(x, theta, j) -> value`` for the j-th polar derivative,
    ``theta_chain`` ``c -> PolarFunction`` producing Theta_c f in closed form
                    (structurally, so the chain can be iterated stably).

    When present, closed forms must agree with the finite-difference oracle;
    that is a tested contract, not an assumption.
    """

    __slots__ = ("log_fn", "domain", "_dpol", "dpol_order", "theta_chain", "name", "kernel")

    def __init__(self, log_fn, domain=WHOLE_PLANE, dpol=None, dpol_order=None,
                 theta_chain=None, name=""):
        self.log_fn = log_fn
        self.domain = domain
        self._dpol = dpol
        self.dpol_order = dpol_order
        self.theta_chain = theta_chain
        self.name = name
        self.kernel = None  # set by function_library factories for profiled forms

    @property
    def dpol(self) -> Optional["PolarFunction"]:
        """Closed-form polar derivative, or None."""
        resolved = _thunk(self._dpol)
        self._dpol = resolved  # cache; idempotent, safe under concurrent reads
        return resolved

    def __call__(self, p: PolarPoint) -> complex:
        return complex(self.log_fn(math.log(p.r), p.theta))

    def values(self, r, theta):
        """Vectorized evaluation at radii/angles (broadcast like numpy)."""
        return self.values_log(np.log(np.asarray(r, dtype=float)), theta)

    def values_log(self, x, theta):
        """Vectorized evaluation in the chart, x = log r."""
        return np.asarray(self.log_fn(np.asarray(x, dtype=float), np.asarray(theta, dtype=float)),
                          dtype=complex)

    def __repr__(self):
        return f"PolarFunction({self.name or 'anonymous'})"


# ---------------------------------------------------------------------------
# Algebra of functions with derivative chains.  D_pol obeys the familiar
# sum/product/quotient rules, which is what makes these combinators exact.
# ---------------------------------------------------------------------------

def constant(value: complex, name: str = "") -> PolarFunction:
    value = complex(value)
    f = PolarFunction(lambda x, th: np.full(np.broadcast(x, th).shape, value, dtype=complex)
                      if np.ndim(x) or np.ndim(th) else value,
                      name=name or f"const({value})")
    if value == 0.0:
        f._dpol = f
        f.theta_chain = lambda c: f
    else:
        f._dpol = constant(0.0)
        f.theta_chain = lambda c: constant(c * value)
    return f


def scale(f: PolarFunction, alpha: complex, name: str = "") -> PolarFunction:
    alpha = complex(alpha)
    g = PolarFunction(lambda x, th: alpha * f.log_fn(x, th), domain=f.domain,
                      name=name or f"{alpha}*{f.name}")
    g._dpol = (lambda: scale(f.dpol, alpha)) if f._dpol is not None else None
    if f.dpol_order is not None:
        g.dpol_order = lambda x, th, j: alpha * f.dpol_order(x, th, j)
    if f.theta_chain is not None:
        g.theta_chain = lambda c: scale(f.theta_chain(c), alpha)
    return g


def add(f: PolarFunction, g: PolarFunction, name: str = "") -> PolarFunction:
    dom = _intersect(f.domain, g.domain)
    h = PolarFunction(lambda x, th: f.log_fn(x, th) + g.log_fn(x, th), domain=dom,
                      name=name or f"({f.name}+{g.name})")
    if f._dpol is not None and g._dpol is not None:
        h._dpol = lambda: add(f.dpol, g.dpol)
    if f.theta_chain is not None and g.theta_chain is not None:
        h.theta_chain = lambda c: add(f.theta_chain(c), g.theta_chain(c))
    return h


def multiply(f: PolarFunction, g: PolarFunction, name: str = "") -> PolarFunction:
    dom = _intersect(f.domain, g.domain)
    h = PolarFunction(lambda x, th: f.log_fn(x, th) * g.log_fn(x, th), domain=dom,
                      name=name or f"({f.name}*{g.name})")
    if f._dpol is not None and g._dpol is not None:
        h._dpol = lambda: add(multiply(f.dpol, g), multiply(f, g.dpol))
    return h


def divide(f: PolarFunction, g: PolarFunction, name: str = "") -> PolarFunction:
    """Quotient f/g.  Zeros of g are the caller's responsibility."""
    dom = _intersect(f.domain, g.domain)
    h = PolarFunction(lambda x, th: f.log_fn(x, th) / g.log_fn(x, th), domain=dom,
                      name=name or f"({f.name}/{g.name})")
    if f._dpol is not None and g._dpol is not None:
        h._dpol = lambda: divide(
            add(multiply(f.dpol, g), scale(multiply(f, g.dpol), -1.0)),
            multiply(g, g))
    return h


def mellin_op(f: PolarFunction, c: float, name: str = "") -> PolarFunction:
    """Theta_c f in closed form, built from f's polar-derivative chain.

    D_pol(Theta_c f) = Theta_{c+1}(D_pol f), so the result carries its own
    derivative chain and the construction can be iterated.
    """
    if f.dpol is None:
        raise PreconditionError("mellin_op needs a closed-form polar derivative")
    d = f.dpol

    def log_fn(x, th):
        return np.exp(x + 1j * np.asarray(th)) * d.log_fn(x, th) + c * f.log_fn(x, th)

    g = PolarFunction(log_fn, domain=f.domain, name=name or f"Theta_{c}[{f.name}]")
    g._dpol = (lambda: mellin_op(d, c + 1.0)) if d._dpol is not None else None
    return g


def _intersect(a: Domain, b: Domain) -> Domain:
    if a is b or b == WHOLE_PLANE:
        return a
    if a == WHOLE_PLANE:
        return b
    return Domain(max(a.theta_min, b.theta_min), min(a.theta_max, b.theta_max),
                  tuple(dict.fromkeys(a.excluded + b.excluded)))


# ---------------------------------------------------------------------------
# Finite-difference oracles
# ---------------------------------------------------------------------------

def polar_derivative_fd(f: PolarFunction, p: PolarPoint, h: float = DEFAULT_FD_STEP) -> complex:
    """Central-difference estimate of the polar derivative D_pol f at p.

    The difference is taken in log r, so the step is scale-invariant:

        D(h) = e^{-i theta} [f(r e^h, th) - f(r e^{-h}, th)] / (r (e^h - e^{-h}))

    followed by one Richardson step combining D(h) and D(h/2), which removes
    the O(h^2) term and leaves an O(h^4) error.
    """
    if not (h > 0.0):
        raise PreconditionError("step h must be positive")
    f.domain.require(p, margin=h)
    x, th = math.log(p.r), p.theta
    rot = cmath.exp(-1j * th)

    def diff(step: float) -> complex:
        num = complex(f.log_fn(x + step, th)) - complex(f.log_fn(x - step, th))
        return rot * num / (p.r * (math.exp(step) - math.exp(-step)))

    d1 = diff(h)
    d2 = diff(h / 2.0)
    return (4.0 * d2 - d1) / 3.0


def _polar_derivative_fd_grid(f: PolarFunction, x, theta, h: float = DEFAULT_FD_STEP):
    """Vectorized form of :func:`polar_derivative_fd` over chart arrays."""
    x = np.asarray(x, dtype=float)
    theta = np.asarray(theta, dtype=float)
    rot = np.exp(-1j * theta) * np.exp(-x)

    def diff(step):
        num = f.values_log(x + step, theta) - f.values_log(x - step, theta)
        return rot * num / (math.exp(step) - math.exp(-step))

    return (4.0 * diff(h / 2.0) - diff(h)) / 3.0


def mellin_derivative(f: PolarFunction, p: PolarPoint, c: float) -> complex:
    """(Theta_c f)(p) = r e^{i theta} (D_pol f)(p) + c f(p).

    Uses the closed-form polar derivative when the function carries one,
    the finite-difference oracle otherwise.
    """
    if f.dpol is not None:
        f.domain.require(p)
        d = f.dpol(p)
    else:
        d = polar_derivative_fd(f, p)
    return p.z * d + c * f(p)


def cauchy_riemann_residual(f: PolarFunction, p: PolarPoint, h: float = 1e-5) -> float:
    """|df/dtheta - i r df/dr| at p via central differences.

    Near zero certifies polar analyticity at p; an O(1) value is a witness
    of non-analyticity.  r df/dr is differenced in log r.  The default step
    balances O(h^2) truncation against roundoff for function values up to
    a few hundred in magnitude.
    """
    if not (h > 0.0):
        raise PreconditionError("step h must be positive")
    f.domain.require(p, margin=h)
    x, th = math.log(p.r), p.theta
    d_theta = (complex(f.log_fn(x, th + h)) - complex(f.log_fn(x, th - h))) / (2.0 * h)
    r_d_r = (complex(f.log_fn(x + h, th)) - complex(f.log_fn(x - h, th))) / (2.0 * h)
    return abs(d_theta - 1j * r_d_r)


# ---------------------------------------------------------------------------
# Generalized Stirling numbers and higher Mellin derivatives
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneralizedStirlingTable:
    """Coefficients S_c(k, j) expanding Theta_c^k over pure polar derivatives:

        Theta_c^k f = sum_{j=0}^{k} S_c(k, j) r^j e^{i j theta} D_pol^j f.

    Built from S_c(0,0) = 1 by the recurrence

        S_c(k+1, j) = S_c(k, j-1) + (c + j) S_c(k, j),

    which follows from Theta_c = (r e^{i theta}) D_pol + c and the product
    rule.  Entries are kept as exact Fractions in c (every float is a dyadic
    rational, so this is lossless); ``value`` gives the float view.
    """

    c: float
    max_order: int
    rows: tuple[tuple[Fraction, ...], ...]

    def exact(self, k: int, j: int) -> Fraction:
        if j < 0 or j > k:
            return Fraction(0)
        return self.rows[k][j]

    def value(self, k: int, j: int) -> float:
        return float(self.exact(k, j))


def stirling_table(c: float, k_max: int) -> GeneralizedStirlingTable:
    if k_max < 0:
        raise PreconditionError("k_max must be >= 0")
    cf = Fraction(c)
    rows = [(Fraction(1),)]
    for k in range(k_max):
        prev = rows[k]
        row = []
        for j in range(k + 2):
            left = prev[j - 1] if 1 <= j <= k + 1 and j - 1 <= k else Fraction(0)
            diag = (cf + j) * prev[j] if j <= k else Fraction(0)
            row.append(left + diag)
        rows.append(tuple(row))
    return GeneralizedStirlingTable(c=float(c), max_order=k_max, rows=tuple(rows))


_NESTED_FD_STEPS = (1e-3, 3e-3, 1e-2, 3e-2)


def _fd_derivative_function(f: PolarFunction, h: float) -> PolarFunction:
    """D_pol f as a PolarFunction backed by the finite-difference oracle."""
    shrunk = Domain(f.domain.theta_min, f.domain.theta_max, f.domain.excluded)
    return PolarFunction(lambda x, th: _polar_derivative_fd_grid(f, x, th, h),
                         domain=shrunk, name=f"fd_dpol({f.name})")


def higher_mellin_derivative(f: PolarFunction, p: PolarPoint, c: float, k: int) -> complex:
    """(Theta_c^k f)(p).

    Route, in order of preference:
      * the function's structural Theta-chain (exact, stable at any order);
      * closed-form D_pol^j metadata through the Stirling expansion;
      * a chain of closed-form first derivatives, iterating Theta_c;
      * nested finite differences (central, widening steps).  This last route
        is ill-conditioned: beyond order 4 a ConditioningWarning is emitted
        and the digits decay quickly.
    """
    if k < 0:
        raise PreconditionError("derivative order k must be >= 0")
    if k == 0:
        f.domain.require(p)
        return f(p)
    if f.theta_chain is not None:
        g = f
        for _ in range(k):
            g = g.theta_chain(c)
        return g(p)
    if f.dpol_order is not None:
        table = stirling_table(c, k)
        x, th = math.log(p.r), p.theta
        zj = 1.0 + 0j
        total = 0.0 + 0j
        for j in range(k + 1):
            total += table.value(k, j) * zj * complex(f.dpol_order(x, th, j))
            zj *= p.z
        return total
    if f.dpol is not None:
        chain, depth = f, 0
        while depth < k and chain.dpol is not None:
            chain, depth = chain.dpol, depth + 1
        if depth == k:  # closed first derivatives available to the needed depth
            g = f
            for _ in range(k):
                g = mellin_op(g, c)
            return g(p)
    # Nested finite differences: build D_pol^j numerically, then Stirling-sum.
    if k > 4:
        warnings.warn(
            f"nested finite-difference polar derivatives of order {k} > 4 are "
            "ill-conditioned; supply closed-form derivatives for trustworthy digits",
            ConditioningWarning, stacklevel=2)
    table = stirling_table(c, k)
    x, th = math.log(p.r), p.theta
    derivs = [complex(f.log_fn(x, th))]
    g = f
    for j in range(1, k + 1):
        h = _NESTED_FD_STEPS[min(j - 1, len(_NESTED_FD_STEPS) - 1)]
        g = _fd_derivative_function(g, h)
        derivs.append(complex(g.log_fn(x, th)))
    zj = 1.0 + 0j
    total = 0.0 + 0j
    for j in range(k + 1):
        total += table.value(k, j) * zj * derivs[j]
        zj *= p.z
    return total


# ---------------------------------------------------------------------------
# Taylor-type expansion in w = log(r/r0) + i (theta - theta0)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TaylorExpansion:
    """Finite Taylor expansion of (r e^{i theta})^c f around a center:

        (r e^{i th})^c f(r, th)
            ~ (r0 e^{i th0})^c * sum_k a_k (log(r/r0) + i(th - th0))^k,

    with a_k = (Theta_c^k f)(r0, th0) / k!.  ``partial_sum`` evaluates the
    truncated right-hand side; compare it against (r e^{i th})^c f(r, th).
    """

    center: PolarPoint
    c: float
    coefficients: tuple[complex, ...]
    order: int

    def partial_sum(self, p: PolarPoint, order: int | None = None) -> complex:
        if order is None:
            order = self.order
        if order < 0 or order > self.order:
            raise PreconditionError(f"partial-sum order must be in [0, {self.order}]")
        w = p.log_z - self.center.log_z
        acc = 0.0 + 0j
        for k in range(order, -1, -1):  # Horner
            acc = acc * w + self.coefficients[k]
        return cmath.exp(self.c * self.center.log_z) * acc

    def weighted_target(self, f: PolarFunction, p: PolarPoint) -> complex:
        """(r e^{i theta})^c f(r, theta), the quantity the sum approximates."""
        return cmath.exp(self.c * p.log_z) * f(p)


def taylor_expand(f: PolarFunction, p0: PolarPoint, c: float, K: int) -> TaylorExpansion:
    """Expansion coefficients a_k = (Theta_c^k f)(p0)/k! for k = 0..K.

    Inherits the conditioning limits of :func:`higher_mellin_derivative`;
    orders beyond ~4 need structural closed forms on f.
    """
    if K < 0:
        raise PreconditionError("expansion order K must be >= 0")
    f.domain.require(p0)
    coeffs = []
    fact = 1.0
    for k in range(K + 1):
        if k > 0:
            fact *= k
        coeffs.append(higher_mellin_derivative(f, p0, c, k) / fact)
    return TaylorExpansion(center=p0, c=c, coefficients=tuple(coeffs), order=K)
