"""Exact scalar arithmetic for the deformation parameter.

Polynomial coefficients come in two flavours: plain rationals (a fixed
rational deformation value) and exact univariate polynomials in the
deformation parameter itself (the generic route).  ``LamPoly`` is the
second flavour; it is deliberately tiny -- dense coefficients over
``fractions.Fraction``, with just the ring operations the polynomial
constructions need.  ``LamRatio`` holds a reduced ratio of two such
polynomials, which is what a proportionality constant between two
polynomial families can turn into in generic mode.
"""

from fractions import Fraction


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def exact_rational(x) -> Fraction:
    """Coerce to Fraction, refusing floats.

    The exact pathways never convert binary floats implicitly; callers
    choose the rational they mean (Fraction('0.3') or Fraction(3, 10)).
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(
        "exact arithmetic needs an exact rational deformation value; "
        "convert floats explicitly, e.g. Fraction(3, 10)"
    )


class LamPoly:
    """Exact polynomial in the dimensionless deformation parameter.

    Coefficients are ``Fraction``s, stored densely; ``coeffs[k]``
    multiplies the k-th power.  Instances are immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LamPoly is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c):
        return cls((c,))

    # -- queries ------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def coefficient(self, k):
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    # -- ring operations ----------------------------------------------
    def _coerce(self, other):
        if isinstance(other, LamPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LamPoly((other,))
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return LamPoly(
            [self.coefficient(k) + other.coefficient(k) for k in range(n)]
        )

    __radd__ = __add__

    def __neg__(self):
        return LamPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LamPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = LamPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, lam):
        """Evaluate at a deformation value (exact arguments stay exact)."""
        exact = isinstance(lam, (Fraction, int))
        acc = Fraction(0) if exact else lam * 0
        for c in reversed(self.coeffs):
            acc = acc * lam + (c if exact else float(c))
        return acc

    def divmod(self, other):
        """Exact polynomial division; coefficients stay rational."""
        other = self._coerce(other)
        if other is None or other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return LamPoly(), self
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
        return LamPoly(quot), LamPoly(rem)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*L" if c != 1 else "L")
            else:
                parts.append(f"{c}*L^{k}" if c != 1 else f"L^{k}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"LamPoly({list(self.coeffs)!r})"


LamPoly.ZERO = LamPoly()
LamPoly.ONE = LamPoly((1,))
LamPoly.LAM = LamPoly((0, 1))


def lam_gcd(a: LamPoly, b: LamPoly) -> LamPoly:
    """Monic gcd of two exact polynomials (Euclid over the rationals)."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    lead = a.coeffs[-1]
    return LamPoly([c / lead for c in a.coeffs])


class LamRatio:
    """Reduced ratio of two deformation polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: LamPoly, den: LamPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = lam_gcd(num, den)
        if not g.is_zero():
            num, _ = num.divmod(g)
            den, _ = den.divmod(g)
        # normalise so the denominator has a positive leading coefficient
        if den.coeffs and den.coeffs[-1] < 0:
            num, den = -num, -den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("LamRatio is immutable")

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, LamRatio):
            return self.num * other.den == other.num * self.den
        if isinstance(other, (int, Fraction, LamPoly)):
            other = other if isinstance(other, LamPoly) else LamPoly((other,))
            return self.num == other * self.den
        return NotImplemented

    def __call__(self, lam):
        return self.num(lam) / self.den(lam)

    def __str__(self):
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"LamRatio({self.num!r}, {self.den!r})"


def simplify_ratio(num: LamPoly, den: LamPoly):
    """num/den as a LamPoly when the division is exact, else a LamRatio.

    Constant polynomials collapse to plain Fractions.
    """
    q, r = num.divmod(den)
    if r.is_zero():
        if q.degree <= 0:
            return q.coefficient(0)
        return q
    return LamRatio(num, den)
