"""Eigenfunctions: polynomial factor times the envelope (1+lam*y^2)^(-1/(2 lam)).

Unnormalized functions are the primitive; normalization constants are
derived by quadrature against the invariant measure and cached on first
use (the convention is unit measure-norm).  The polynomial factor uses
the generating-function normalization throughout.
"""

import math
from fractions import Fraction

import numpy as np

from . import quadrature
from .exact import exact_rational
from .hermite import generating_coeffs
from .params import classify
from .polynomials import LadderFunction, LambdaPoly, horner_compensated
from .spectrum import energy

# below this the envelope switches to its analytic limit exp(-y^2/2);
# the direct power form loses about half the digits as lam -> 0
ENVELOPE_SWITCH = 1e-8


def envelope(y, lam) -> float:
    """The decay factor (1 + lam*y^2)^(-1/(2 lam)) on the domain.

    Near zero deformation the analytically-equal Gaussian limit is used
    to avoid catastrophic cancellation.
    """
    lam_f = float(lam)
    y = np.asarray(y, dtype=float)
    if abs(lam_f) < ENVELOPE_SWITCH:
        out = np.exp(-0.5 * y * y)
    else:
        with np.errstate(divide="ignore"):
            out = np.exp(-np.log1p(lam_f * y * y) / (2.0 * lam_f))
    return float(out) if out.ndim == 0 else out


class WaveFunction:
    """Eigenfunction data for index m at one deformation value.

    ``lam`` may be a float or an exact Fraction; exactness propagates to
    the polynomial factor.  The domain is the open interval between the
    walls for negative deformation and the whole line otherwise.
    """

    def __init__(self, m: int, lam, poly: LambdaPoly | None = None):
        if m < 0:
            raise ValueError("index must be nonnegative")
        dp = classify(lam)
        if dp.n_max is not None and m > dp.n_max:
            raise ValueError(
                f"index {m} is not normalizable at deformation {lam} "
                f"(cutoff {dp.cutoff})"
            )
        self.m = m
        self.lam = lam
        self.deformation = dp
        if poly is None:
            if isinstance(lam, (Fraction, int)):
                poly = generating_coeffs(m, Fraction(lam))[m]
            else:
                poly = generating_coeffs(m)[m]  # generic; evaluated at float lam
        self.poly = poly
        self._coeffs = None
        self._norm = None

    @property
    def half_width(self):
        return self.deformation.half_width

    @property
    def envelope_exponent(self):
        """Exponent of z in the decay factor, -1/(2 lam)."""
        lam = self.lam
        if isinstance(lam, (Fraction, int)) and lam != 0:
            return -1 / (2 * Fraction(lam))
        return None if lam == 0 else -1.0 / (2.0 * float(lam))

    def poly_values(self, y):
        if self._coeffs is None:
            if self.poly.generic:
                self._coeffs = self.poly.float_coeffs(float(self.lam))
            else:
                self._coeffs = self.poly.float_coeffs()
        return horner_compensated(self._coeffs, y)

    def __call__(self, y):
        """Unnormalized value (scalar or ndarray, assumed in-domain)."""
        return self.poly_values(y) * envelope(y, self.lam)


def wavefunction(m: int, lam) -> WaveFunction:
    """Construct the index-m eigenfunction at a deformation value."""
    return WaveFunction(m, lam)


def evaluate(w: WaveFunction, y: float) -> float:
    """Value at a single point, with domain checking."""
    a = w.half_width
    if a is not None and not -a < y < a:
        raise ValueError(f"coordinate {y} outside the open domain (+-{a})")
    return float(w(np.asarray(y, dtype=float)))


def nodes(w: WaveFunction, tol: float = 1e-12) -> list[float]:
    """The m simple zeros of the polynomial factor, symmetric under
    negation, located by bisection on sign changes."""
    m = w.m
    if m == 0:
        return []
    cs = (
        w.poly.float_coeffs(float(w.lam))
        if w.poly.generic
        else w.poly.float_coeffs()
    )

    def p(y):
        return horner_compensated(cs, y)

    # positive roots; odd index contributes the origin
    want = m // 2
    out = [0.0] if m % 2 else []
    if want == 0:
        return out
    if w.half_width is not None:
        hi = w.half_width * (1 - 1e-13)
    else:
        # Cauchy bound on root magnitude
        lead = cs[-1]
        hi = 1.0 + max(abs(c / lead) for c in cs[:-1])
    grid_n = 1 << 12
    found = []
    while True:
        ys = np.linspace(0.0, hi, grid_n)
        vals = p(ys)
        sign = np.sign(vals)
        idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
        found = []
        for i in idx:
            a, b = ys[i], ys[i + 1]
            fa = p(a)
            for _ in range(200):
                mid = 0.5 * (a + b)
                fm = p(mid)
                if fm == 0.0 or (b - a) < tol:
                    a = b = mid
                    break
                if (fa < 0) == (fm < 0):
                    a, fa = mid, fm
                else:
                    b = mid
            found.append(0.5 * (a + b))
        if len(found) >= want or grid_n >= (1 << 16):
            break
        grid_n *= 4
    if len(found) != want:
        raise RuntimeError(
            f"expected {want} positive zeros for index {m}, found {len(found)}"
        )
    roots = sorted(found)
    return sorted([-r for r in roots] + out + roots)


def mu_inner(w1: WaveFunction, w2: WaveFunction, rtol: float = 1e-10) -> float:
    """Inner product against the invariant measure (symmetric).

    For positive deformation both indices must be normalizable, which
    the constructor already enforces; the truncation half-width comes
    from the combined polynomial degree.
    """
    if float(w1.lam) != float(w2.lam):
        raise ValueError("deformation values differ")
    lam = float(w1.lam)
    if lam < 0:
        spec = quadrature.spec_for(lam, rtol=rtol)
    else:
        u = quadrature.overlap_halfwidth(
            lam, w1.poly.degree + w2.poly.degree, tail_tol=min(rtol, 1e-12) * 1e-2
        )
        spec = quadrature.spec_for(lam, half_width=u, rtol=rtol)
    return quadrature.integrate_measure(lambda y: w1(y) * w2(y), spec)


def norm_constant(w: WaveFunction, rtol: float = 1e-10) -> float:
    """1/sqrt(<w, w>): multiplying by it makes the measure-norm one.

    Cached after the first quadrature (idempotent single assignment).
    """
    if w._norm is None:
        w._norm = 1.0 / math.sqrt(mu_inner(w, w, rtol=rtol))
    return w._norm


def gram_matrix(lam, max_index: int | None = None, rtol: float = 1e-10):
    """Normalized overlap matrix of the bound functions up to an index.

    Entries are <psi_i, psi_j> / sqrt(<psi_i,psi_i><psi_j,psi_j>); the
    parity-odd pairs are exact zeros by the symmetric quadrature design.
    """
    dp = classify(lam)
    top = max_index
    if dp.n_max is not None:
        top = dp.n_max if top is None else min(top, dp.n_max)
    if top is None:
        raise ValueError("an index bound is required for this deformation")
    ws = [wavefunction(m, lam) for m in range(top + 1)]
    n = top + 1
    out = np.eye(n)
    norms = [math.sqrt(mu_inner(w, w, rtol=rtol)) for w in ws]
    for i in range(n):
        for j in range(i + 1, n):
            raw = mu_inner(ws[i], ws[j], rtol=rtol)
            out[i, j] = out[j, i] = raw / (norms[i] * norms[j])
    return out


def eigen_equation_residual(m: int, lam, ys) -> float:
    """Largest relative residual of the adimensional eigenvalue equation
    (1+lam*y^2) psi'' + lam*y psi' - (1+lam) y^2/(1+lam*y^2) psi + 2e psi = 0
    over the sample points, with derivatives taken analytically on the
    closed z^s * Q family (exact coefficients, float evaluation)."""
    lam = exact_rational(lam)
    if lam == 0:
        raise ValueError("use the classical oscillator for zero deformation")
    poly = generating_coeffs(m, lam)[m]
    psi = LadderFunction(lam, -1 / (2 * lam), poly)
    dpsi = psi.differentiate()
    ddpsi = dpsi.differentiate()
    e = float(energy(lam, m))
    ys = np.asarray(ys, dtype=float)
    lam_f = float(lam)
    z = 1.0 + lam_f * ys * ys
    t1 = z * ddpsi(ys)
    t2 = lam_f * ys * dpsi(ys)
    t3 = -(1.0 + lam_f) * ys * ys / z * psi(ys)
    t4 = 2.0 * e * psi(ys)
    resid = np.abs(t1 + t2 + t3 + t4)
    scale = np.maximum.reduce([np.abs(t1), np.abs(t2), np.abs(t3), np.abs(t4)])
    scale = np.where(scale == 0, 1.0, scale)
    return float(np.max(resid / scale))
