"""Exactly solvable structures of the deformed quantum nonlinear oscillator.

The package provides the deformed Hermite polynomial family (three
independent exact constructions), closed-form spectra for both signs of
the deformation, orthogonality under the invariant measure, the
factorization/shape-invariance ladder, an independent finite-difference
eigensolver, and the classical amplitude-frequency law, together with a
command-line tool (``lambda-osc``) that exports tables and runs the
cross-validation suite.
"""

from .classical import ClassicalState, OrbitParams, measure_period
from .exact import LamPoly, LamRatio
from .factorization import (
    LadderOperator,
    ShapeChain,
    apply,
    build_state,
    commutator_closed_form,
    partner_potentials,
    conjugation_check,
)
from .hermite import (
    derivative_relation_check,
    generating_coeffs,
    leading_coefficient,
    proportionality,
    rodrigues,
    series_solution,
    three_term_next,
)
from .params import (
    AdimMap,
    DeformationParam,
    PhysicalParams,
    classify,
    to_adimensional,
)
from .polynomials import LadderFunction, LambdaPoly
from .quadrature import QuadratureSpec, integrate_measure, sl_weights
from .spectrum import (
    EnergyLevel,
    SpectrumTable,
    bound_count,
    energies,
    energy,
    ladder_energies,
)
from .sturm_liouville import SLDiscretization, assemble, eigenvalues, refine
from .wavefunctions import (
    WaveFunction,
    envelope,
    evaluate,
    gram_matrix,
    mu_inner,
    nodes,
    norm_constant,
    wavefunction,
)

__version__ = "0.1.0"

__all__ = [
    "AdimMap",
    "ClassicalState",
    "DeformationParam",
    "EnergyLevel",
    "LadderFunction",
    "LadderOperator",
    "LamPoly",
    "LamRatio",
    "LambdaPoly",
    "OrbitParams",
    "PhysicalParams",
    "QuadratureSpec",
    "SLDiscretization",
    "ShapeChain",
    "SpectrumTable",
    "WaveFunction",
    "apply",
    "assemble",
    "bound_count",
    "build_state",
    "classify",
    "commutator_closed_form",
    "derivative_relation_check",
    "eigenvalues",
    "energies",
    "energy",
    "envelope",
    "evaluate",
    "generating_coeffs",
    "gram_matrix",
    "integrate_measure",
    "ladder_energies",
    "leading_coefficient",
    "measure_period",
    "mu_inner",
    "nodes",
    "norm_constant",
    "partner_potentials",
    "proportionality",
    "conjugation_check",
    "refine",
    "rodrigues",
    "series_solution",
    "sl_weights",
    "three_term_next",
    "to_adimensional",
    "wavefunction",
]
