"""Integration against the invariant measure dy / sqrt(1 + lam*y^2).

A change of variable flattens the measure exactly in both regimes:

* negative deformation: y = sin(theta)/sqrt(|lam|) turns the integral
  into a plain theta-integral over (-pi/2, pi/2), scaled by
  1/sqrt(|lam|);
* positive deformation: y = sinh(u*sqrt(lam))/sqrt(lam) flattens the
  measure on the whole line; the u-integral is truncated at a
  half-width chosen from the integrand's analytic decay rate;
* zero deformation: the measure is already flat.

Gauss-Legendre on the transformed interval, with node doubling until
two successive estimates agree.  Nodes are applied in symmetric pairs,
so integrands that are odd in exact arithmetic cancel exactly in
floating point as well.
"""

import math
from dataclasses import dataclass

import numpy as np

SCHEME_THETA = "gauss_legendre_theta"
SCHEME_U_TRUNCATED = "gauss_legendre_u_truncated"

_NODE_CACHE: dict[int, tuple] = {}


class NonConvergenceError(RuntimeError):
    """Node doubling hit the cap; carries the last two estimates."""

    def __init__(self, message, last=None, previous=None):
        super().__init__(message)
        self.last = last
        self.previous = previous


class DivergentTailError(ValueError):
    """The transformed integrand fails to decay toward the truncation edge."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Parameters of one measure integral.

    ``half_width`` is the truncation half-width U of the flattening
    coordinate (ignored for negative deformation, where the interval is
    fixed by the walls).
    """

    lam: float
    nodes: int = 32
    scheme: str = ""
    half_width: float = 0.0
    rtol: float = 1e-10
    node_cap: int = 1 << 15

    def __post_init__(self):
        if self.nodes < 8:
            raise ValueError("at least 8 nodes")
        scheme = self.scheme or (
            SCHEME_THETA if self.lam < 0 else SCHEME_U_TRUNCATED
        )
        object.__setattr__(self, "scheme", scheme)
        if scheme == SCHEME_U_TRUNCATED and not self.half_width > 0:
            raise ValueError("positive truncation half-width required")


def spec_for(lam: float, half_width: float = 0.0, rtol: float = 1e-10,
             nodes: int = 32) -> QuadratureSpec:
    if lam < 0:
        return QuadratureSpec(lam=lam, nodes=nodes, rtol=rtol)
    return QuadratureSpec(lam=lam, nodes=nodes, half_width=half_width, rtol=rtol)


def overlap_halfwidth(lam: float, degree: int, tail_tol: float = 1e-14) -> float:
    """Truncation half-width for a polynomial-pair measure integrand.

    For positive deformation the flattened integrand behaves like
    cosh(u*sqrt(lam))^(degree - 2/lam) with degree the combined
    polynomial degree, so it decays like exp(-kappa*u) with
    kappa = (2/lam - degree)*sqrt(lam); the half-width makes the tail
    bound fall below ``tail_tol`` relative to the integrand peak.
    For zero deformation the Gaussian envelope dominates.
    """
    if lam < 0:
        return 0.0
    if lam == 0:
        # envelope exp(-u^2): solve exp(-U^2) * U^degree ~ tail_tol
        u = math.sqrt(-math.log(tail_tol) + 4.0)
        for _ in range(20):
            u = math.sqrt(-math.log(tail_tol) + max(degree, 1) * math.log(u + 2.0))
        return u + 2.0
    kappa = (2.0 / lam - degree) * math.sqrt(lam)
    if kappa <= 0:
        raise DivergentTailError(
            f"combined degree {degree} is not normalizable at deformation {lam}"
        )
    # peak of y^degree * envelope sits near where the exponent balances
    u_peak = (math.asinh(math.sqrt(degree * lam / 2.0)) / math.sqrt(lam)
              if degree > 0 else 0.0)
    u = u_peak + (-math.log(tail_tol) + degree * math.log(2.0) + 5.0) / kappa
    # keep sinh within floating-point range
    return min(u, 600.0 / math.sqrt(lam))


def _paired_nodes(n: int):
    """Positive Gauss-Legendre nodes with weights, plus the center term.

    Returns (x_pos, w_pos, w_center); the rule on (-1, 1) is recovered
    by summing w*(f(x) + f(-x)) over the pairs plus w_center*f(0).
    Pairing enforces exact cancellation for odd integrands.
    """
    cached = _NODE_CACHE.get(n)
    if cached is not None:
        return cached
    x, w = np.polynomial.legendre.leggauss(n)
    pos = x > 1e-14
    center = np.abs(x) <= 1e-14
    out = (x[pos], w[pos], float(w[center].sum()))
    _NODE_CACHE[n] = out
    return out


def _estimate(f_of_t, half_len: float, n: int):
    """Gauss-Legendre estimate on (-half_len, half_len) by symmetric pairs.

    Returns (integral, integral of |f|, max |f| at the two edgemost nodes).
    """
    xp, wp, wc = _paired_nodes(n)
    t = xp * half_len
    fp = np.asarray(f_of_t(t), dtype=float)
    fm = np.asarray(f_of_t(-t), dtype=float)
    total = float(np.sum(wp * (fp + fm)) * half_len)
    total_abs = float(np.sum(wp * (np.abs(fp) + np.abs(fm))) * half_len)
    if wc:
        f0 = float(np.asarray(f_of_t(np.array([0.0]))).ravel()[0])
        total += wc * f0 * half_len
        total_abs += wc * abs(f0) * half_len
    edge = max(abs(float(fp[-1])), abs(float(fm[-1])))
    return total, total_abs, edge


def integrate_measure(f, spec: QuadratureSpec) -> float:
    """Integral of f against the invariant measure over the full domain.

    ``f`` must accept ndarray arguments in the original coordinate.
    Raises DivergentTailError when the truncated integrand visibly fails
    to decay, and NonConvergenceError when node doubling exhausts the cap.
    """
    lam = float(spec.lam)
    if spec.scheme == SCHEME_THETA:
        root = math.sqrt(-lam)
        half_len = math.pi / 2.0

        def transformed(t):
            return f(np.sin(t) / root) / root

    else:
        half_len = float(spec.half_width)
        if lam > 0:
            root = math.sqrt(lam)

            def transformed(t):
                return f(np.sinh(root * t) / root)

        else:
            transformed = f

    n = spec.nodes
    prev = None
    while True:
        est, est_abs, edge = _estimate(transformed, half_len, n)
        scale = max(est_abs, 1e-300)
        if spec.scheme == SCHEME_U_TRUNCATED and edge * half_len > 1e3 * spec.rtol * scale:
            raise DivergentTailError(
                f"integrand does not decay at the truncation edge "
                f"(edge value {edge:.3e} vs integral scale {scale:.3e})"
            )
        if prev is not None and abs(est - prev) <= spec.rtol * scale:
            return est
        if 2 * n > spec.node_cap:
            raise NonConvergenceError(
                f"no convergence with {n} nodes "
                f"(last {est:.17g}, previous {prev!r})",
                last=est,
                previous=prev,
            )
        prev = est
        n *= 2


def measure_total(lam: float) -> float:
    """Total measure of the domain for negative deformation:
    pi / sqrt(|lam|)."""
    if not lam < 0:
        raise ValueError("total measure is finite only for negative deformation")
    return math.pi / math.sqrt(-lam)


def sl_weights(y, lam):
    """Self-adjoint-form weights (p, r) of the deformed equation.

    p = (1 + lam*y^2)^(1/2 - 1/lam) and r = p / (1 + lam*y^2); both are
    positive on the open domain.
    """
    lam_f = float(lam)
    if lam_f == 0:
        raise ValueError("weights are defined for nonzero deformation")
    y = np.asarray(y, dtype=float)
    z = 1.0 + lam_f * y * y
    if np.any(z < 0):
        raise ValueError("coordinate outside the domain")
    expo = 0.5 - 1.0 / lam_f
    p = np.exp(expo * np.log1p(lam_f * y * y))
    r = p / z
    if y.ndim == 0:
        return float(p), float(r)
    return p, r
