"""Polynomials in the oscillator coordinate, exact in both deformation modes.

A ``LambdaPoly`` is a dense univariate polynomial in the adimensional
coordinate y.  Its coefficients live in one of two exact rings:

* fixed mode -- ``Fraction`` coefficients for a fixed rational
  deformation value (``poly.lam`` holds that value);
* generic mode -- ``LamPoly`` coefficients, i.e. exact polynomials in
  the deformation parameter itself (``poly.lam is None``).

The same arithmetic code serves both rings.  ``LadderFunction``
represents members of the closed family z^s * Q(y) with z = 1 + lam*y^2,
on which differentiation and the ladder operators act exactly; that
family requires a fixed rational deformation.  At lam = 0 the family
degenerates and the envelope is taken to be the Gaussian exp(-y^2/2),
which is its analytic limit.
"""

from fractions import Fraction

import numpy as np

from .exact import LamPoly, exact_rational

GENERIC = None  # sentinel for poly.lam in generic mode


def _ring_zero(generic: bool):
    return LamPoly.ZERO if generic else Fraction(0)


def _coerce_elem(c, generic: bool):
    if generic:
        return c if isinstance(c, LamPoly) else LamPoly.const(c)
    return c if isinstance(c, Fraction) else Fraction(c)


class LambdaPoly:
    """Dense exact polynomial in y with a deformation mode tag.

    ``n`` is the nominal family index (parity bookkeeping); the true
    degree is reported by ``degree`` and can drop below ``n`` when
    leading factors vanish at special deformation values.
    """

    __slots__ = ("coeffs", "lam", "normalization", "n")

    def __init__(self, coeffs, lam=GENERIC, normalization=None, n=None):
        generic = lam is GENERIC
        if lam is not GENERIC:
            lam = exact_rational(lam)
        cs = [_coerce_elem(c, generic) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "normalization", normalization)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("LambdaPoly is immutable")

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, lam=GENERIC):
        return cls((), lam=lam)

    @classmethod
    def one(cls, lam=GENERIC):
        return cls((1,), lam=lam)

    def replace(self, normalization=None, n=None):
        return LambdaPoly(
            self.coeffs,
            lam=self.lam,
            normalization=normalization or self.normalization,
            n=self.n if n is None else n,
        )

    # -- queries --------------------------------------------------------
    @property
    def generic(self):
        return self.lam is GENERIC

    @property
    def degree(self):
        """True degree: index of the last exactly-nonzero coefficient."""
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, k):
        if k < len(self.coeffs):
            return self.coeffs[k]
        return _ring_zero(self.generic)

    @property
    def leading(self):
        if not self.coeffs:
            return _ring_zero(self.generic)
        return self.coeffs[-1]

    @property
    def parity(self):
        """'even' or 'odd' from the nominal index (true degree if unset)."""
        k = self.n if self.n is not None else max(self.degree, 0)
        return "even" if k % 2 == 0 else "odd"

    def parity_clean(self):
        """All coefficients of the opposite parity vanish exactly."""
        k = self.n if self.n is not None else max(self.degree, 0)
        return all(
            not c for i, c in enumerate(self.coeffs) if (i - k) % 2 != 0
        )

    def _lam_elem(self):
        """The deformation parameter as an element of the coefficient ring."""
        return LamPoly.LAM if self.generic else self.lam

    def _check_mode(self, other):
        if self.lam != other.lam:
            raise ValueError("mixed deformation modes in polynomial arithmetic")

    # -- arithmetic -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self.lam == other.lam and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.lam, self.coeffs))

    def __add__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        self._check_mode(other)
        m = max(len(self.coeffs), len(other.coeffs))
        return LambdaPoly(
            [self.coefficient(k) + other.coefficient(k) for k in range(m)],
            lam=self.lam,
        )

    def __neg__(self):
        return LambdaPoly([-c for c in self.coeffs], lam=self.lam)

    def __sub__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LambdaPoly):
            return NotImplemented
        self._check_mode(other)
        if self.is_zero() or other.is_zero():
            return LambdaPoly.zero(self.lam)
        out = [_ring_zero(self.generic)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return LambdaPoly(out, lam=self.lam)

    def scale(self, c):
        """Multiply by a scalar from the coefficient ring."""
        c = _coerce_elem(c, self.generic)
        return LambdaPoly([a * c for a in self.coeffs], lam=self.lam)

    def shift_y(self, k=1):
        """Multiply by y^k."""
        if self.is_zero():
            return self
        return LambdaPoly(
            [_ring_zero(self.generic)] * k + list(self.coeffs), lam=self.lam
        )

    def derivative(self):
        return LambdaPoly(
            [k * c for k, c in enumerate(self.coeffs)][1:], lam=self.lam
        )

    def times_z(self):
        """Multiply by z = 1 + lam*y^2 (works in both modes)."""
        lam = self._lam_elem()
        z = LambdaPoly((1, _ring_zero(self.generic), lam), lam=self.lam)
        return self * z

    def divmod_poly(self, other):
        """Exact division (fixed mode only; coefficients form a field)."""
        if self.generic or other.generic:
            raise ValueError("exact polynomial division requires fixed mode")
        self._check_mode(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return LambdaPoly.zero(self.lam), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            top = rem[k + len(other.coeffs) - 1]
            if top == 0:
                continue
            q = top / lead
            quot[k] = q
            for j, b in enumerate(other.coeffs):
                rem[k + j] -= q * b
        return (
            LambdaPoly(quot, lam=self.lam),
            LambdaPoly(rem, lam=self.lam),
        )

    # -- evaluation -------------------------------------------------------
    def evaluate_exact(self, y):
        """Horner evaluation with exact coefficients (y a Fraction/int)."""
        acc = _ring_zero(self.generic)
        y = Fraction(y)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def substitute_lambda(self, lam):
        """Specialise a generic polynomial at a rational deformation value."""
        if not self.generic:
            raise ValueError("polynomial already has a fixed deformation value")
        lam = exact_rational(lam)
        return LambdaPoly(
            [c(lam) for c in self.coeffs],
            lam=lam,
            normalization=self.normalization,
            n=self.n,
        )

    def float_coeffs(self, lam=None):
        """Coefficients as floats; generic mode needs a deformation value."""
        if self.generic:
            if lam is None:
                raise ValueError("generic polynomial needs a deformation value")
            return np.array([c(float(lam)) for c in self.coeffs], dtype=float)
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def __call__(self, y, lam=None):
        """Float evaluation by compensated Horner (scalar or ndarray y)."""
        cs = self.float_coeffs(lam)
        if cs.size == 0:
            return np.zeros_like(np.asarray(y, dtype=float)) if np.ndim(y) else 0.0
        return horner_compensated(cs, y)

    # -- serialization ------------------------------------------------------
    def to_json_dict(self):
        return {
            "n": self.n if self.n is not None else max(self.degree, 0),
            "normalization": self.normalization or "raw",
            "lambda": "generic" if self.generic else str(self.lam),
            "coeffs": [str(c) for c in self.coeffs],
        }

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            cs = str(c)
            if self.generic and c.degree > 0:
                cs = f"({cs})"
            if k == 0:
                parts.append(cs)
            elif k == 1:
                parts.append(f"{cs}*y")
            else:
                parts.append(f"{cs}*y^{k}")
        return (" + ".join(parts)).replace("+ -", "- ")

    def __repr__(self):
        tag = "generic" if self.generic else str(self.lam)
        return f"LambdaPoly({str(self)!r}, lam={tag})"


# -- compensated Horner -------------------------------------------------------

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ah = _SPLITTER * a
    ah = ah - (ah - a)
    al = a - ah
    bh = _SPLITTER * b
    bh = bh - (bh - b)
    bl = b - bh
    err = al * bl - (((p - ah * bh) - al * bh) - ah * bl)
    return p, err


def horner_compensated(coeffs, y):
    """Compensated Horner scheme (error-free transformations).

    Achieves close to twice working precision for the polynomial value,
    which matters when locating nodes near the domain edge.  ``coeffs``
    is ascending by power; ``y`` may be a scalar or an ndarray.
    """
    y = np.asarray(y, dtype=float)
    scalar = y.ndim == 0
    s = np.full(y.shape, coeffs[-1], dtype=float)
    comp = np.zeros(y.shape, dtype=float)
    for c in coeffs[-2::-1]:
        p, perr = _two_prod(s, y)
        s, serr = _two_sum(p, c)
        comp = comp * y + (perr + serr)
    out = s + comp
    return float(out) if scalar else out


# -- the closed z^s * Q family ------------------------------------------------


class LadderFunction:
    """A function z^s * Q(y), z = 1 + lam*y^2, closed under d/dy.

    The exponent ``s`` is an exact rational and ``Q`` a fixed-mode
    ``LambdaPoly``, so repeated differentiation and the ladder operators
    stay in exact arithmetic.  The degenerate value lam = 0 is supported
    with the analytic-limit envelope exp(-y^2/2) in place of z^s (there
    ``s`` is unused and differentiation follows the Gaussian rule).

    Instances are kept canonical: all full z factors are pulled out of Q
    into the exponent, so equality is plain field comparison.
    """

    __slots__ = ("lam", "s", "poly")

    def __init__(self, lam, s, poly: LambdaPoly):
        lam = exact_rational(lam)
        s = exact_rational(s)
        if poly.generic:
            raise ValueError("ladder family requires a fixed deformation value")
        if poly.lam != lam:
            raise ValueError("polynomial deformation value disagrees")
        if poly.is_zero():
            s = Fraction(0)
        elif lam != 0:
            z = LambdaPoly((1, 0, lam), lam=lam)
            while True:
                q, r = poly.divmod_poly(z)
                if r.is_zero() and not q.is_zero():
                    poly, s = q, s + 1
                else:
                    break
        else:
            s = Fraction(0)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "poly", poly)

    def __setattr__(self, name, value):
        raise AttributeError("LadderFunction is immutable")

    @classmethod
    def from_poly(cls, poly: LambdaPoly, s=0):
        return cls(poly.lam, s, poly)

    def is_zero(self):
        return self.poly.is_zero()

    def __eq__(self, other):
        if not isinstance(other, LadderFunction):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return (
            self.lam == other.lam
            and self.s == other.s
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.lam, self.s, self.poly))

    # -- exact operations -----------------------------------------------
    def differentiate(self):
        """d/dy [z^s Q] = z^(s-1) (2*lam*s*y*Q + z*Q'); Gaussian rule at 0."""
        if self.lam == 0:
            q = self.poly.derivative() - self.poly.shift_y()
            return LadderFunction(0, 0, q)
        q = self.poly.shift_y().scale(2 * self.lam * self.s) + (
            self.poly.derivative().times_z()
        )
        return LadderFunction(self.lam, self.s - 1, q)

    def times_z_power(self, k):
        """Multiply by z^k for rational k (no-op at lam = 0 where z = 1)."""
        if self.lam == 0 or self.is_zero():
            return self
        return LadderFunction(self.lam, self.s + Fraction(k), self.poly)

    def times_poly(self, poly: LambdaPoly):
        return LadderFunction(self.lam, self.s, self.poly * poly)

    def times_y(self):
        return LadderFunction(self.lam, self.s, self.poly.shift_y())

    def scale(self, c):
        return LadderFunction(self.lam, self.s, self.poly.scale(c))

    def __add__(self, other):
        if not isinstance(other, LadderFunction):
            return NotImplemented
        if self.lam != other.lam:
            raise ValueError("mixed deformation values")
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.lam == 0:
            return LadderFunction(0, 0, self.poly + other.poly)
        d = self.s - other.s
        if d.denominator != 1:
            raise ValueError(
                "cannot add family members with non-integer exponent gap"
            )
        # rebase onto the smaller exponent
        if d >= 0:
            lo, hi, k = other, self, int(d)
        else:
            lo, hi, k = self, other, int(-d)
        p = hi.poly
        for _ in range(k):
            p = p.times_z()
        return LadderFunction(self.lam, lo.s, lo.poly + p)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    # -- evaluation -------------------------------------------------------
    def __call__(self, y):
        """Float evaluation (scalar or ndarray y)."""
        y = np.asarray(y, dtype=float)
        pv = self.poly(y) if not self.poly.is_zero() else np.zeros_like(y)
        lam = float(self.lam)
        if self.lam == 0:
            env = np.exp(-0.5 * y * y)
        else:
            env = np.exp(float(self.s) * np.log1p(lam * y * y))
        out = pv * env
        return float(out) if out.ndim == 0 else out

    def __repr__(self):
        if self.lam == 0:
            return f"LadderFunction(({self.poly}) * exp(-y^2/2))"
        return f"LadderFunction(z^({self.s}) * ({self.poly}), lam={self.lam})"
