"""Ladder operators, partner potentials, and the shape-invariance chain.

All operator algebra runs exactly on the closed z^s * Q family; floats
appear only at evaluation edges.  The adimensional operators (per unit
sqrt(hbar*alpha/2)) are

    lower(b):  z^p Q  ->  z^(p-1/2) [ (b + 2*lam*p) y Q + z Q' ]
    raise(b):  z^p Q  ->  z^(p-1/2) [ (b - 2*lam*p) y Q - z Q' ]

with b the chain parameter 1 - k*lam (the frequency ratio alpha_k/alpha).
The factorized Hamiltonian per (hbar*alpha) is (1/2) raise(b) lower(b);
the full oscillator Hamiltonian sits 1/2 above the b = 1 member.  At
zero deformation the family envelope degenerates to the Gaussian and the
operators reduce to the classical -d/dy + y and d/dy + y forms.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import exact_rational
from .params import PhysicalParams, classify
from .polynomials import LadderFunction, LambdaPoly
from .spectrum import chain_parameter, chain_remainder
from .wavefunctions import WaveFunction

KIND_LOWER = "lower"
KIND_RAISE = "raise"


@dataclass(frozen=True)
class LadderOperator:
    """One ladder operator at a chain parameter.

    ``b`` is the adimensional chain parameter; the physical overall
    scale sqrt(hbar*alpha/2) multiplies every application and is kept
    out of the exact algebra.
    """

    kind: str
    lam: Fraction
    b: Fraction

    def __post_init__(self):
        if self.kind not in (KIND_LOWER, KIND_RAISE):
            raise ValueError(f"unknown operator kind {self.kind!r}")
        object.__setattr__(self, "lam", exact_rational(self.lam))
        object.__setattr__(self, "b", exact_rational(self.b))


def lowering(lam, b=1) -> LadderOperator:
    return LadderOperator(KIND_LOWER, exact_rational(lam), exact_rational(b))


def raising(lam, b=1) -> LadderOperator:
    return LadderOperator(KIND_RAISE, exact_rational(lam), exact_rational(b))


def chain_b(k: int, lam) -> Fraction:
    """Adimensional chain parameter b_k = 1 - k*lam."""
    return 1 - k * exact_rational(lam)


def apply(op: LadderOperator, f: LadderFunction) -> LadderFunction:
    """Apply a ladder operator exactly within the closed family."""
    if f.lam != op.lam:
        raise ValueError("operator and function deformation values differ")
    lam, b = op.lam, op.b
    if lam == 0:
        # Gaussian envelope: sqrt(z) d/dy degenerates to d/dy
        q = f.poly
        dq = q.derivative() - q.shift_y()  # (Q e^{-y^2/2})' / e^{-y^2/2}
        by_q = q.shift_y().scale(b)
        out = dq + by_q if op.kind == KIND_LOWER else -dq + by_q
        return LadderFunction(0, 0, out)
    p, q = f.s, f.poly
    if op.kind == KIND_LOWER:
        out = q.shift_y().scale(b + 2 * lam * p) + q.derivative().times_z()
    else:
        out = q.shift_y().scale(b - 2 * lam * p) - q.derivative().times_z()
    return LadderFunction(lam, p - Fraction(1, 2), out)


def ground_function(lam, b=1) -> LadderFunction:
    """Chain ground state z^(-b/(2 lam)) (Gaussian at zero deformation),
    annihilated exactly by lowering(lam, b)."""
    lam = exact_rational(lam)
    if lam == 0:
        return LadderFunction(0, 0, LambdaPoly.one(Fraction(0)))
    return LadderFunction(lam, -exact_rational(b) / (2 * lam), LambdaPoly.one(lam))


def build_state(n: int, lam) -> WaveFunction:
    """n-th eigenfunction by composing raising operators down the chain.

    Applies raise(b_0) ... raise(b_{n-1}) to the ground state of the
    chain endpoint (exponent -(1 - n*lam)/(2*lam)); the polynomial
    factor comes out proportional to the generating-normalization
    polynomial of the same index.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    lam = exact_rational(lam)
    dp = classify(lam)
    if dp.n_max is not None and n > dp.n_max:
        raise ValueError(
            f"index {n} is not normalizable at deformation {lam} "
            f"(cutoff {dp.cutoff})"
        )
    f = ground_function(lam, chain_b(n, lam))
    for k in range(n - 1, -1, -1):
        f = apply(raising(lam, chain_b(k, lam)), f)
    poly = f.poly.replace(normalization="ladder", n=n)
    return WaveFunction(n, lam, poly)


# -- Hamiltonians on the family ----------------------------------------------


def hamiltonian_chain(f: LadderFunction, b=1) -> LadderFunction:
    """(1/2) raise(b) lower(b) applied to f: the factorized Hamiltonian
    at chain parameter b, per (hbar*alpha)."""
    lam = f.lam
    return apply(raising(lam, b), apply(lowering(lam, b), f)).scale(
        Fraction(1, 2)
    )


def hamiltonian_chain_partner(f: LadderFunction, b=1) -> LadderFunction:
    """(1/2) lower(b) raise(b) applied to f (the partner ordering)."""
    lam = f.lam
    return apply(lowering(lam, b), apply(raising(lam, b), f)).scale(
        Fraction(1, 2)
    )


def hamiltonian_full(f: LadderFunction) -> LadderFunction:
    """The oscillator Hamiltonian per (hbar*alpha) as a differential
    expression: -(1/2)(z f'' + lam*y f') + (1/2)(1+lam) y^2 z^-1 f."""
    lam = f.lam
    df = f.differentiate()
    ddf = df.differentiate()
    kinetic = ddf.times_z_power(1) + df.times_y().scale(lam)
    if lam == 0:
        potential = f.times_poly(LambdaPoly((0, 0, 1), lam=Fraction(0)))
    else:
        potential = f.times_y().times_y().times_z_power(-1).scale(1 + lam)
    return kinetic.scale(Fraction(-1, 2)) + potential.scale(Fraction(1, 2))


def hamiltonian_diff_form(f: LadderFunction, b=1) -> LadderFunction:
    """The chain Hamiltonian written out as a differential expression:
    -(1/2)(z f'' + lam*y f') + [(1/2) b (b + lam) y^2 z^-1 - b/2] f.

    Independent of the operator-composition route; used to verify the
    factorization identity exactly.
    """
    lam = f.lam
    b = Fraction(b)
    df = f.differentiate()
    ddf = df.differentiate()
    kinetic = ddf.times_z_power(1) + df.times_y().scale(lam)
    if lam == 0:
        ysq = f.times_poly(LambdaPoly((0, 0, 1), lam=Fraction(0)))
    else:
        ysq = f.times_y().times_y().times_z_power(-1)
    return (
        kinetic.scale(Fraction(-1, 2))
        + ysq.scale(b * (b + lam) / 2)
        - f.scale(b / 2)
    )


def partner_relation_residual(f: LadderFunction, b=1) -> LadderFunction:
    """Exact residual of the partner relation on f:

        (1/2) lower(b) raise(b) f - (1/2) raise(b) lower(b) f - b * z^-1 f

    The difference of the two orderings is the commutator, which is the
    non-constant b/z per (hbar*alpha); in particular the partner
    Hamiltonian is NOT a constant shift of the factorized one away from
    zero deformation.
    """
    lam = f.lam
    b = Fraction(b)
    comm = hamiltonian_chain_partner(f, b) - hamiltonian_chain(f, b)
    if lam == 0:
        return comm - f.scale(b)
    return comm - f.times_z_power(-1).scale(b)


def shape_invariance_residual(f: LadderFunction, b=1) -> LadderFunction:
    """Exact residual of the shape-invariance condition on f:

        (1/2) lower(b) raise(b) f
      - (1/2) raise(b-lam) lower(b-lam) f  -  (b - lam/2) f

    which is the zero function when the condition holds (the remainder
    per (hbar*alpha) at the shifted parameter is b - lam + lam/2).
    """
    lam = f.lam
    b = Fraction(b)
    b1 = b - lam
    lhs = hamiltonian_chain_partner(f, b)
    rhs = hamiltonian_chain(f, b1) + f.scale(b1 + lam / 2)
    return lhs - rhs


def conjugation_residual(p, g: LadderFunction) -> LadderFunction:
    """Exact residual of the conjugation identity

        z^p sqrt(z) d/dy [ z^-p g ]  +  [ -sqrt(z) d/dy + 2*p*lam*y/sqrt(z) ] g

    (both sides stay inside the family; the sum vanishes identically).
    """
    lam = g.lam
    if lam == 0:
        raise ValueError("conjugation identity needs a nonzero deformation")
    p = Fraction(p)
    lhs = g.times_z_power(-p).differentiate().times_z_power(p + Fraction(1, 2))
    rhs = (
        g.differentiate().times_z_power(Fraction(1, 2)).scale(-1)
        + g.times_y().times_z_power(Fraction(-1, 2)).scale(2 * p * lam)
    )
    return lhs + rhs


def conjugation_check(p, g: LadderFunction) -> bool:
    """True iff the conjugation identity holds exactly on g."""
    return conjugation_residual(p, g).is_zero()


# -- physical-unit surfaces ---------------------------------------------------


def superpotential(x, params: PhysicalParams) -> float:
    """W = x / sqrt(1 + lam*x^2) in physical units."""
    return float(x) / math.sqrt(1.0 + float(params.lam) * float(x) ** 2)


def partner_potentials(params: PhysicalParams):
    """The two partner potentials as functions of the physical coordinate:

        U1 = (1/2) m*alpha*(alpha + hbar*lam/m) W^2 - (1/2) hbar*alpha
        U2 = (1/2) m*alpha*(alpha - hbar*lam/m) W^2 + (1/2) hbar*alpha

    They satisfy U1 + U2 = m*alpha^2 W^2, i.e. U2 = 2*Ws^2 - U1 with the
    scaled superpotential Ws = sqrt(m/2)*alpha*W.
    """
    m, alpha, hbar, lam = (
        float(params.m),
        float(params.alpha),
        float(params.hbar),
        float(params.lam),
    )
    half_ha = 0.5 * hbar * alpha
    c1 = 0.5 * m * alpha * (alpha + hbar * lam / m)
    c2 = 0.5 * m * alpha * (alpha - hbar * lam / m)

    def u1(x):
        w = superpotential(x, params)
        return c1 * w * w - half_ha

    def u2(x):
        w = superpotential(x, params)
        return c2 * w * w + half_ha

    return u1, u2


def commutator_closed_form(x, params: PhysicalParams) -> float:
    """[lower, raise] at a point: (1 - lam*x^2/(1+lam*x^2)) hbar*alpha,
    i.e. hbar*alpha / (1 + lam*x^2)."""
    lam = float(params.lam)
    z = 1.0 + lam * float(x) ** 2
    if z <= 0:
        raise ValueError("coordinate outside the domain")
    return float(params.hbar) * float(params.alpha) / z


def commutator_via_operators(x, params: PhysicalParams,
                             g: LadderFunction | None = None) -> float:
    """The same commutator evaluated by operator composition on a test
    function: ((lower raise - raise lower) g)(y) / g(y) times the
    physical scale.  The test function must not vanish at the point."""
    lam = Fraction(params.lam_adim)
    if g is None:
        g = LadderFunction(lam, Fraction(1), LambdaPoly.one(lam))
    if g.lam != lam:
        raise ValueError("test function deformation value disagrees")
    beta = float(params.beta)  # y = sqrt(beta) x
    y = float(x) * beta**0.5
    comm = apply(lowering(lam, 1), apply(raising(lam, 1), g)) - apply(
        raising(lam, 1), apply(lowering(lam, 1), g)
    )
    gy = g(y)
    if gy == 0:
        raise ValueError("test function vanishes at the sample point")
    scale = 0.5 * float(params.hbar) * float(params.alpha)
    return scale * comm(y) / gy


@dataclass(frozen=True)
class ShapeChain:
    """Materialized shape-invariance chain in physical units."""

    params: PhysicalParams
    alphas: tuple
    remainders: tuple

    @property
    def b_values(self):
        return tuple(a / self.params.alpha for a in self.alphas)


def shape_chain(params: PhysicalParams, n: int) -> ShapeChain:
    """Chain parameters alpha_k and remainders R(alpha_k) for k = 0..n."""
    alphas = tuple(chain_parameter(params, k) for k in range(n + 1))
    remainders = tuple(chain_remainder(params, a) for a in alphas)
    return ShapeChain(params=params, alphas=alphas, remainders=remainders)
